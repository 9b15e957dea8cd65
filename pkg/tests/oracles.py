"""Independent oracles used to cross-check the library.

Nothing here shares code with the implementation paths it checks:
inertia comes from Sturm chains over the characteristic polynomial,
log-terminality from an all-subsets sweep, tree shapes from networkx,
and LP infeasibility from a rational grid scan.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx

from diagramkit import SymMatrix, WeightedGraph, intersection_matrix, log_discrepancies
from diagramkit.exact import SingularSystemError

# -- polynomials as ascending coefficient lists -------------------------


def poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_deriv(p: list[Fraction]) -> list[Fraction]:
    return [k * c for k, c in enumerate(p)][1:]


def poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(poly_trim(a)) >= len(b):
        a = poly_trim(a)
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
    return poly_trim(q), poly_trim(a)


def poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def char_poly(m: SymMatrix) -> list[Fraction]:
    """det(xI - M) by Faddeev-LeVerrier, ascending coefficients."""
    n = m.n
    rows = [list(r) for r in m.rows]
    coeffs_desc = [Fraction(1)]
    aux = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        prod = [
            [sum(rows[i][t] * aux[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        c = -sum(prod[i][i] for i in range(n)) / k
        coeffs_desc.append(c)
        aux = [
            [prod[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)
        ]
    return list(reversed(coeffs_desc))


def _variations(signs: list[int]) -> int:
    seq = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(seq, seq[1:]) if a * b < 0)


def _sign_at_zero(p: list[Fraction]) -> int:
    for c in p:
        if c != 0:
            return 1 if c > 0 else -1
    return 0


def _sign_at_inf(p: list[Fraction], positive: bool) -> int:
    lead = p[-1]
    s = 1 if lead > 0 else -1
    if not positive and (len(p) - 1) % 2 == 1:
        s = -s
    return s


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [poly_trim(p), poly_trim(poly_deriv(p))]
    while chain[-1]:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _count_roots(p: list[Fraction], positive: bool) -> int:
    """Distinct real roots of square-free p in (0, inf) or (-inf, 0)."""
    if len(p) <= 1:
        return 0
    chain = _sturm_chain(p)
    at_zero = [_sign_at_zero(f) for f in chain]
    if positive:
        at_inf = [_sign_at_inf(f, True) for f in chain]
        return _variations(at_zero) - _variations(at_inf)
    at_minf = [_sign_at_inf(f, False) for f in chain]
    return _variations(at_minf) - _variations(at_zero)


def sturm_inertia(m: SymMatrix) -> tuple[int, int, int]:
    """Inertia of a symmetric matrix via its characteristic polynomial.

    Zero eigenvalues are the multiplicity of the root 0; the positive and
    negative counts accumulate Sturm counts of the square-free layers, so
    multiple roots are counted with multiplicity.
    """
    p = char_poly(m)
    n_zero = 0
    while p and p[0] == 0:
        n_zero += 1
        p = p[1:]
    n_pos = n_neg = 0
    q = poly_trim(p)
    while len(q) > 1:
        sf, _ = poly_divmod(q, poly_gcd(q, poly_deriv(q)))
        n_pos += _count_roots(sf, True)
        n_neg += _count_roots(sf, False)
        q, _ = poly_divmod(q, sf)
    return (n_pos, n_zero, n_neg)


# -- brute-force checks ---------------------------------------------------


def brute_force_log_terminal(g: WeightedGraph) -> bool:
    """All-subsets sweep: every elliptic induced subgraph has min f > 0.

    Independent of the library's decision path in the ways that matter:
    it walks every vertex subset (no connectivity reduction, no caching).
    Ellipticity uses `signature`, which is itself validated against the
    Sturm oracle elsewhere in the suite.
    """
    from diagramkit import signature

    ids = list(g.ids)
    for r in range(1, len(ids) + 1):
        for subset in itertools.combinations(ids, r):
            sub = g.induced(subset)
            sig = signature(intersection_matrix(sub))
            if (sig.n_plus, sig.n_zero) != (0, 0):
                continue
            try:
                disc = log_discrepancies(sub)
            except SingularSystemError:  # pragma: no cover - elliptic solves
                continue
            if disc.min_f is not None and disc.min_f <= 0:
                return False
    return True


def all_trees_weight_assignments(n: int, weights):
    """Every tree shape on n vertices (networkx), every weight assignment."""
    weights = list(weights)
    if n == 1:
        for w in weights:
            yield WeightedGraph([("t0", w, 0)])
        return
    for tree in nx.nonisomorphic_trees(n):
        edges = [(f"t{u}", f"t{v}", 1) for u, v in tree.edges()]
        for combo in itertools.product(weights, repeat=n):
            yield WeightedGraph([(f"t{i}", w, 0) for i, w in enumerate(combo)], edges)


def grid_feasible_point(constraints, box, max_den: int = 16):
    """Search rational grid points (denominator <= max_den) for a witness."""
    axes = []
    for lo, hi in box:
        points = set()
        for q in range(1, max_den + 1):
            start = -(-lo.numerator * q // lo.denominator)  # ceil(lo*q)
            stop = hi.numerator * q // hi.denominator  # floor(hi*q)
            for p in range(start, stop + 1):
                points.add(Fraction(p, q))
        axes.append(sorted(points))
    for candidate in itertools.product(*axes):
        if all(
            sum(c * x for c, x in zip(coeffs, candidate)) <= bound
            for coeffs, bound in constraints
        ):
            return candidate
    return None
