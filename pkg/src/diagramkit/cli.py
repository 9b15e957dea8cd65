"""Command-line interface: machine-readable reports over the library.

Every subcommand prints one JSON document with sorted keys (byte-stable
across runs and thread counts) except ``blowup``, which emits the graph
file format itself.  Exit codes: 0 success, 2 usage or parse error,
3 enumeration budget exceeded, 4 singular linear system, 5 infinite
family tail in a threshold query.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .dcc import (
    CoefficientSet,
    Family,
    InfiniteTailError,
    below_threshold,
    contains,
    hurwitz_quotient_transform,
    min_positive,
)
from .diagrams import (
    GraphKind,
    PreconditionError,
    classify_graph,
    e9_tower_report,
    enumerate_minimal_elliptic_star,
    lanner_blowup_search,
    nikulin_bound,
    pair_bound_audit,
    pair_bound_constants,
    vertex_blowup_horizon,
)
from .discrepancy import BudgetExceededError, classify_singularity, log_discrepancies
from .exact import SingularSystemError, format_rational, parse_rational
from .graphio import GraphParseError, graph_to_json, parse_graph, serialize_graph
from .graphs import WeightedGraph, blowup_edge, blowup_vertex, chain
from .star import check_star, star_closure_blowdown, star_closure_subgraph
from .graphs import contractible

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_SINGULAR = 4
EXIT_INFINITE_TAIL = 5


class UsageError(ValueError):
    pass


def _read_graph(path: str) -> WeightedGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_graph(fh.read())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None


def _epsilon(text: str) -> Fraction:
    eps = parse_rational(text)
    if not 0 < eps <= 1:
        raise UsageError(f"epsilon must lie in (0, 1], got {text}")
    return eps


def _emit(command: str, inputs: dict, result: dict) -> None:
    report = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "version": __version__,
    }
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _rat(x) -> str:
    return format_rational(Fraction(x))


# -- subcommands ----------------------------------------------------------


def _cmd_classify(args) -> int:
    g = _read_graph(args.file)
    cls = classify_graph(g)
    _emit(
        "classify",
        {"file": args.file},
        {
            "signature": {
                "n_plus": cls.signature.n_plus,
                "n_zero": cls.signature.n_zero,
                "n_minus": cls.signature.n_minus,
            },
            "class": cls.kind.value,
            "lanner": cls.lanner,
            "graph": graph_to_json(g),
        },
    )
    return EXIT_OK


def _cmd_discrepancies(args) -> int:
    g = _read_graph(args.file)
    inputs: dict = {"file": args.file}
    try:
        disc = log_discrepancies(g)
    except SingularSystemError as exc:
        report = {
            "command": "discrepancies",
            "error": {
                "kind": "singular_system",
                "rank": exc.rank,
                "consistent": exc.consistent,
                "kernel_vector": [_rat(x) for x in exc.kernel_vector],
            },
            "inputs": inputs,
            "version": __version__,
        }
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        print("error: intersection matrix is singular", file=sys.stderr)
        return EXIT_SINGULAR
    result: dict = {
        "f": {vid: _rat(f) for vid, f in disc.as_dict().items()},
        "b": {vid: _rat(1 - f) for vid, f in disc.as_dict().items()},
        "min_f": _rat(disc.min_f) if disc.min_f is not None else None,
    }
    if args.epsilon is not None:
        eps = _epsilon(args.epsilon)
        inputs["epsilon"] = _rat(eps)
        cls = classify_singularity(g, eps, convention=args.convention)
        result["class"] = cls.strongest.value
        result["classes"] = sorted(c.value for c in cls.classes)
    _emit("discrepancies", inputs, result)
    return EXIT_OK


def _cmd_star(args) -> int:
    g = _read_graph(args.file)
    eps = _epsilon(args.epsilon)
    cert = check_star(g, eps)
    _emit(
        "star",
        {"file": args.file, "epsilon": _rat(eps)},
        {
            "feasible": cert.feasible,
            "witness": (
                {vid: _rat(b) for vid, b in sorted(cert.witness.items())}
                if cert.witness is not None
                else None
            ),
        },
    )
    return EXIT_OK


def _cmd_blowup(args) -> int:
    g = _read_graph(args.file)
    if args.vertex is not None and args.edge is not None:
        raise UsageError("choose either --vertex or --edge, not both")
    try:
        if args.vertex is not None:
            out = blowup_vertex(g, args.vertex, args.new)
        elif args.edge is not None:
            out = blowup_edge(g, args.edge[0], args.edge[1], args.new)
        else:
            raise UsageError("one of --vertex or --edge is required")
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(serialize_graph(out))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    eps = _epsilon(args.epsilon)
    if args.mode == "minimal-elliptic":
        if args.max_vertices is None:
            raise UsageError("--max-vertices is required for minimal-elliptic")
        result = enumerate_minimal_elliptic_star(
            eps, args.max_vertices, threads=args.threads
        )
        # the thread count steers execution, not the result, and is kept out
        # of the report so runs are byte-identical for any worker count
        inputs = {
            "mode": args.mode,
            "epsilon": _rat(eps),
            "max_vertices": args.max_vertices,
        }
        payload = {
            "count": result.count,
            "s1_empirical": result.s1_empirical,
            "max_weight": result.max_weight,
            "graphs": [graph_to_json(g) for g in result.graphs],
        }
    else:
        if args.seed is None or args.max_steps is None:
            raise UsageError("--seed and --max-steps are required for lanner-closure")
        seed = _read_graph(args.seed)
        try:
            result = lanner_blowup_search(
                seed, eps, args.max_steps, threads=args.threads
            )
        except PreconditionError as exc:
            raise UsageError(str(exc)) from None
        inputs = {
            "mode": args.mode,
            "epsilon": _rat(eps),
            "seed": args.seed,
            "max_steps": args.max_steps,
        }
        payload = {
            "count": result.count,
            "exhausted": result.exhausted,
            "depth": result.depth,
            "max_weight": result.max_weight,
            "graphs": [graph_to_json(g) for g in result.graphs],
        }
    _emit("enumerate", inputs, payload)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    has_case = args.case is not None
    has_pair = args.epsilon is not None or args.d is not None
    if not has_case and not has_pair:
        raise UsageError("provide --case with --c1/--c2, or --epsilon with --d")
    inputs: dict = {}
    result: dict = {}
    c1 = c2 = None
    if has_pair:
        if args.epsilon is None or args.d is None:
            raise UsageError("--epsilon and --d go together")
        eps = parse_rational(args.epsilon)
        if args.d < 1:
            raise UsageError("--d must be a positive integer")
        try:
            c1, c2 = pair_bound_constants(eps, args.d)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        inputs.update({"epsilon": _rat(eps), "d": args.d})
        result.update({"c1": _rat(c1), "c2": _rat(c2)})
    if has_case:
        if c1 is None:
            if args.c1 is None or args.c2 is None:
                raise UsageError("--case needs --c1 and --c2 (or --epsilon/--d)")
            c1 = parse_rational(args.c1)
            c2 = parse_rational(args.c2)
        try:
            report = nikulin_bound(args.case, c1, c2, args.d)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        inputs.update({"case": args.case, "c1": _rat(c1), "c2": _rat(c2)})
        result.update({"bound": _rat(report.bound)})
    _emit("bounds", inputs, result)
    return EXIT_OK


def _default_lanner_seed() -> WeightedGraph:
    return chain([1, 1, 1], prefix="L")


def _cmd_verify(args) -> int:
    if args.suite == "e9":
        report = e9_tower_report()
        _emit(
            "verify",
            {"suite": "e9"},
            {
                "status": "pass" if report.passed else "fail",
                "log_terminal_by_k": {str(k): v for k, v in report.log_terminal_by_k.items()},
                "witness_k6": list(report.witness_k6) if report.witness_k6 else None,
            },
        )
        return EXIT_OK
    if args.suite == "star-closure":
        eps = _epsilon(args.epsilon or "1/2")
        corpus = enumerate_minimal_elliptic_star(eps, args.max_vertices).graphs
        rng = random.Random(7)
        failures = []
        checked = 0
        for g in corpus:
            ids = list(g.ids)
            for _ in range(min(8, 2 ** len(ids))):
                subset = sorted(rng.sample(ids, rng.randint(1, len(ids))))
                checked += 1
                if not star_closure_subgraph(g, eps, subset):
                    failures.append({"graph": graph_to_json(g), "subset": subset})
            for v in ids:
                if contractible(g, v):
                    checked += 1
                    if not star_closure_blowdown(g, eps, v):
                        failures.append({"graph": graph_to_json(g), "blowdown": v})
        _emit(
            "verify",
            {"suite": "star-closure", "epsilon": _rat(eps), "max_vertices": args.max_vertices},
            {
                "status": "pass" if not failures else "fail",
                "corpus_size": len(corpus),
                "checked": checked,
                "failures": failures,
            },
        )
        return EXIT_OK
    if args.suite == "pair-bounds":
        eps = _epsilon(args.epsilon or "1/2")
        if args.d < 1:
            raise UsageError("--d must be a positive integer")
        corpus = enumerate_minimal_elliptic_star(eps, args.max_vertices).graphs
        failures = [
            graph_to_json(g) for g in corpus if not pair_bound_audit(g, eps, args.d)
        ]
        _emit(
            "verify",
            {
                "suite": "pair-bounds",
                "epsilon": _rat(eps),
                "d": args.d,
                "max_vertices": args.max_vertices,
            },
            {
                "status": "pass" if not failures else "fail",
                "corpus_size": len(corpus),
                "failures": failures,
            },
        )
        return EXIT_OK
    # lanner-horizon
    seed = _read_graph(args.seed) if args.seed else _default_lanner_seed()
    vertex = args.vertex or seed.ids[0]
    try:
        report = vertex_blowup_horizon(seed, vertex, args.k_max)
    except (PreconditionError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    _emit(
        "verify",
        {
            "suite": "lanner-horizon",
            "seed": args.seed or "builtin chain (1,1,1)",
            "vertex": vertex,
            "k_max": args.k_max,
        },
        {
            "status": "found" if report.found else "not-found",
            "horizon": report.k,
            "persistent": report.persistent,
        },
    )
    return EXIT_OK


def _parse_set(spec: str) -> CoefficientSet:
    if spec.strip() == "standard":
        return CoefficientSet.standard()
    finite: list[Fraction] = []
    families: list[Family] = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.startswith("family:"):
            body = part[len("family:"):]
            pieces = [p.strip() for p in body.split(",")]
            if len(pieces) != 3:
                raise UsageError(f"family spec needs c,a,kmin: {part!r}")
            try:
                families.append(
                    Family(parse_rational(pieces[0]), parse_rational(pieces[1]), int(pieces[2]))
                )
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        else:
            for item in part.split(","):
                item = item.strip()
                if item:
                    finite.append(parse_rational(item))
    try:
        return CoefficientSet(tuple(finite), tuple(families))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _set_to_json(s: CoefficientSet) -> dict:
    return {
        "finite_part": [_rat(x) for x in s.finite_part],
        "families": [
            {"c": _rat(f.c), "a": _rat(f.a), "k_min": f.k_min} for f in s.families
        ],
    }


def _cmd_dcc(args) -> int:
    s = _parse_set(args.set)
    inputs: dict = {"set": args.set, "op": args.op}
    if args.op == "min-positive":
        value = min_positive(s)
        result = {"min_positive": _rat(value) if value is not None else None}
    elif args.op == "contains":
        if args.value is None:
            raise UsageError("--value is required for contains")
        x = parse_rational(args.value)
        inputs["value"] = _rat(x)
        result = {"contains": contains(s, x)}
    elif args.op == "below":
        if args.threshold is None:
            raise UsageError("--threshold is required for below")
        t = parse_rational(args.threshold)
        inputs["threshold"] = _rat(t)
        elements = below_threshold(s, t)
        result = {"count": len(elements), "elements": [_rat(x) for x in elements]}
    else:  # quotient
        image = hurwitz_quotient_transform(
            s, args.max_m, args.max_terms, args.max_n, family_depth=args.family_depth
        )
        inputs.update(
            {
                "max_m": args.max_m,
                "max_terms": args.max_terms,
                "max_n": args.max_n,
                "family_depth": args.family_depth,
            }
        )
        result = {
            "complete": image.complete,
            "values": [_rat(x) for x in image.values.finite_part],
        }
    _emit("dcc", inputs, result)
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diagramkit",
        description="Exact calculus of weighted exceptional-curve graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="signature class and Lanner flag")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("discrepancies", help="log discrepancies and classes")
    p.add_argument("file")
    p.add_argument("--epsilon", help="exact rational p/q for the eps-classes")
    p.add_argument(
        "--convention",
        choices=("discrepancy", "literal"),
        default="discrepancy",
        help="reading of terminal/canonical thresholds",
    )
    p.set_defaults(fn=_cmd_discrepancies)

    p = sub.add_parser("star", help="coefficient-condition feasibility")
    p.add_argument("file")
    p.add_argument("--epsilon", required=True, help="exact rational p/q")
    p.set_defaults(fn=_cmd_star)

    p = sub.add_parser("blowup", help="blow up a vertex or a simple edge")
    p.add_argument("file")
    p.add_argument("--vertex", help="vertex id to blow up")
    p.add_argument("--edge", nargs=2, metavar=("U", "V"), help="simple edge to blow up")
    p.add_argument("--new", required=True, help="id for the new vertex")
    p.set_defaults(fn=_cmd_blowup)

    p = sub.add_parser("enumerate", help="graph enumeration engines")
    p.add_argument("--mode", choices=("minimal-elliptic", "lanner-closure"), required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--seed", help="seed graph file (lanner-closure)")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("bounds", help="rank-bound and pair-count constants")
    p.add_argument("--case", choices=("nu2", "nu1", "nu0"))
    p.add_argument("--c1")
    p.add_argument("--c2")
    p.add_argument("--epsilon")
    p.add_argument("--d", type=int)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("verify", help="built-in verification suites")
    p.add_argument(
        "--suite",
        choices=("e9", "star-closure", "pair-bounds", "lanner-horizon"),
        required=True,
    )
    p.add_argument("--epsilon")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=5)
    p.add_argument("--seed")
    p.add_argument("--vertex")
    p.add_argument("--k-max", type=int, default=20)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("dcc", help="descending-chain-condition set utilities")
    p.add_argument("--set", required=True, help='"standard" or e.g. "1/12,5/12;family:1,1,2"')
    p.add_argument("--op", choices=("min-positive", "contains", "below", "quotient"), required=True)
    p.add_argument("--value")
    p.add_argument("--threshold")
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--max-terms", type=int, default=2)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--family-depth", type=int, default=8)
    p.set_defaults(fn=_cmd_dcc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SingularSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except InfiniteTailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFINITE_TAIL
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
