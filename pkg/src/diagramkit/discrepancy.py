"""Log discrepancies of weighted graphs and singularity-class decisions.

The log discrepancies f_i of a graph solve, when the intersection matrix is
invertible, the linear system (K + sum_i (1 - f_i) F_i) . F_j = 0 for every
vertex F_j.  Writing b_i = 1 - f_i for the codiscrepancies this is
M b = -K with M the intersection matrix, which is how the solver sees it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exact import Signature, SingularSystemError, signature, solve_linear
from .graphs import (
    WeightedGraph,
    canonical_class,
    canonical_form,
    connected_vertex_subsets,
    intersection_matrix,
)

DEFAULT_SUBGRAPH_BUDGET = 1 << 20
_BUDGET_ENV = "DIAGRAMKIT_BUDGET"


def subgraph_budget() -> int:
    """Enumeration budget, overridable through DIAGRAMKIT_BUDGET."""
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None:
        return DEFAULT_SUBGRAPH_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{_BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{_BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


class BudgetExceededError(Exception):
    """Subgraph enumeration hit its budget; no answer is implied."""

    def __init__(self, budget: int):
        super().__init__(f"subgraph enumeration budget {budget} exceeded")
        self.budget = budget


@dataclass(frozen=True)
class DiscrepancyVector:
    """Per-vertex log discrepancies f_i and codiscrepancies b_i = 1 - f_i."""

    ids: tuple[str, ...]
    f: tuple[Fraction, ...]

    @property
    def b(self) -> tuple[Fraction, ...]:
        return tuple(1 - x for x in self.f)

    @property
    def min_f(self) -> Fraction | None:
        return min(self.f) if self.f else None

    def f_of(self, vid: str) -> Fraction:
        return self.f[self.ids.index(vid)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.ids, self.f))


def log_discrepancies(g: WeightedGraph) -> DiscrepancyVector:
    """Solve for the log discrepancies; SingularSystemError when not unique.

    The system is always solvable for elliptic and hyperbolic graphs
    (invertible intersection form); parabolic graphs raise, with the rank,
    a kernel vector and a consistency flag attached to the exception.
    """
    m = intersection_matrix(g)
    k = canonical_class(g)
    rhs = [Fraction(-k[vid]) for vid in g.ids]
    b = solve_linear(m, rhs)
    return DiscrepancyVector(g.ids, tuple(1 - x for x in b))


class SingularityClass(Enum):
    TERMINAL = "terminal"
    CANONICAL = "canonical"
    KAWAMATA_LOG_TERMINAL = "kawamata_log_terminal"
    LOG_CANONICAL = "log_canonical"
    EPS_LOG_TERMINAL = "eps_log_terminal"
    EPS_LOG_CANONICAL = "eps_log_canonical"
    NONE_OF_THESE = "none_of_these"


_LADDER = (
    SingularityClass.EPS_LOG_TERMINAL,
    SingularityClass.EPS_LOG_CANONICAL,
    SingularityClass.KAWAMATA_LOG_TERMINAL,
    SingularityClass.LOG_CANONICAL,
)


@dataclass(frozen=True)
class Classification:
    """Threshold decisions on the minimal log discrepancy.

    ``strongest`` is the best class among the epsilon ladder
    (eps-log-terminal > eps-log-canonical > klt > lc > none);
    ``classes`` additionally contains TERMINAL/CANONICAL when they apply
    under the chosen convention.
    """

    eps: Fraction
    min_f: Fraction | None
    strongest: SingularityClass
    classes: frozenset[SingularityClass]
    convention: str

    @property
    def is_terminal(self) -> bool:
        return SingularityClass.TERMINAL in self.classes

    @property
    def is_canonical(self) -> bool:
        return SingularityClass.CANONICAL in self.classes


def classify_singularity(
    g: WeightedGraph,
    eps: Fraction,
    *,
    convention: str = "discrepancy",
) -> Classification:
    """Compare min f against 0 and eps; report the strongest class.

    ``convention`` fixes what terminal/canonical mean: "discrepancy"
    compares the usual discrepancies a_i = f_i - 1 against 0 (terminal
    iff min f > 1, canonical iff min f >= 1); "literal" compares f itself
    against 0, which collapses them onto klt/lc.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if convention not in ("discrepancy", "literal"):
        raise ValueError(f"unknown convention {convention!r}")
    disc = log_discrepancies(g)
    mf = disc.min_f
    classes: set[SingularityClass] = set()
    if mf is None:
        classes = set(SingularityClass) - {SingularityClass.NONE_OF_THESE}
        return Classification(eps, None, SingularityClass.EPS_LOG_TERMINAL,
                              frozenset(classes), convention)
    if mf >= 0:
        classes.add(SingularityClass.LOG_CANONICAL)
    if mf > 0:
        classes.add(SingularityClass.KAWAMATA_LOG_TERMINAL)
    if mf >= eps:
        classes.add(SingularityClass.EPS_LOG_CANONICAL)
    if mf > eps:
        classes.add(SingularityClass.EPS_LOG_TERMINAL)
    canonical_floor = Fraction(1) if convention == "discrepancy" else Fraction(0)
    if mf >= canonical_floor:
        classes.add(SingularityClass.CANONICAL)
    if mf > canonical_floor:
        classes.add(SingularityClass.TERMINAL)
    strongest = next(
        (c for c in _LADDER if c in classes), SingularityClass.NONE_OF_THESE
    )
    if not classes:
        classes.add(SingularityClass.NONE_OF_THESE)
    return Classification(eps, mf, strongest, frozenset(classes), convention)


@dataclass(frozen=True)
class LogTerminalReport:
    ok: bool
    witness: tuple[str, ...] | None
    witness_min_f: Fraction | None
    subgraphs_checked: int

    def __bool__(self) -> bool:
        return self.ok


# Elliptic verdicts keyed by canonical form: (is_elliptic, min_f or None).
_elliptic_min_f_cache: dict[bytes, tuple[bool, Fraction | None]] = {}


def _elliptic_min_f(sub: WeightedGraph) -> tuple[bool, Fraction | None]:
    key = canonical_form(sub)
    hit = _elliptic_min_f_cache.get(key)
    if hit is not None:
        return hit
    sig = signature(intersection_matrix(sub))
    if sig.n_plus == 0 and sig.n_zero == 0:
        verdict = (True, log_discrepancies(sub).min_f)
    else:
        verdict = (False, None)
    if len(_elliptic_min_f_cache) < 1 << 18:
        _elliptic_min_f_cache[key] = verdict
    return verdict


def is_log_terminal_graph(
    g: WeightedGraph, budget: int | None = None
) -> LogTerminalReport:
    """Every elliptic subgraph must have strictly positive log discrepancies.

    Only connected vertex subsets are tested: the discrepancy system is
    block-diagonal across connected components, so a disconnected elliptic
    subgraph violates positivity iff one of its components does.  The
    first violating subgraph in the fixed enumeration order is returned
    as witness; exceeding ``budget`` subgraph evaluations raises rather
    than guessing.
    """
    limit = subgraph_budget() if budget is None else budget
    checked = 0
    for subset in connected_vertex_subsets(g):
        checked += 1
        if checked > limit:
            raise BudgetExceededError(limit)
        sub = g.induced(subset)
        elliptic, mf = _elliptic_min_f(sub)
        if elliptic and mf is not None and mf <= 0:
            return LogTerminalReport(False, subset, mf, checked)
    return LogTerminalReport(True, None, None, checked)
