"""Exact rational linear algebra.

Everything in this module works over arbitrary-precision rationals
(`fractions.Fraction`); no floating point enters any decision.  The three
engines here are:

* :func:`signature` -- inertia of a symmetric rational matrix by congruence
  diagonalization (exact, pivot-order independent by Sylvester's law),
* :func:`solve_linear` -- exact Gaussian elimination with a structured
  report on singular systems,
* :func:`feasible_box_lp` -- Fourier-Motzkin feasibility for systems
  ``coeffs . x <= bound`` over a box, returning an exact witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as ``p/q`` or ``p``.

    Decimal notation is rejected: a string like ``0.5`` silently suggests
    rounding, and every consumer of this function needs exactness.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"decimal notation rejected, write a ratio p/q: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}: {exc}") from None


def format_rational(value: Fraction | int) -> str:
    """Canonical ``p/q`` form (lowest terms, positive denominator)."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Signature:
    """Inertia triple of a symmetric matrix: positive, zero, negative counts."""

    n_plus: int
    n_zero: int
    n_minus: int

    def __post_init__(self) -> None:
        if min(self.n_plus, self.n_zero, self.n_minus) < 0:
            raise ValueError("signature counts must be nonnegative")

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_zero + self.n_minus

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


class SymMatrix:
    """Immutable symmetric matrix with exact rational entries."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable[Fraction | int]]):
        converted = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(converted)
        for row in converted:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if converted[i][j] != converted[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", converted)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("SymMatrix is immutable")

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def submatrix(self, indices: Sequence[int]) -> "SymMatrix":
        return SymMatrix(tuple(tuple(self.rows[i][j] for j in indices) for i in indices))

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SymMatrix({[list(map(str, row)) for row in self.rows]})"


def signature(m: SymMatrix) -> Signature:
    """Exact inertia by symmetric congruence elimination.

    The form is first scaled to integer entries (a positive scaling, so
    inertia is unchanged) and all elimination arithmetic stays in native
    integers.  A nonzero diagonal pivot p gives the Schur update scaled
    by p itself, T = p * S: congruent to S when p > 0 and to -S when
    p < 0, which a flip flag tracks.  When the whole remaining diagonal
    vanishes but some off-diagonal entry m[i][j] does not, adding row and
    column j into i produces the pivot 2*m[i][j] (the standard rank-1
    congruence fix; valid in characteristic 0).  A fully zero block
    contributes only zero eigenvalues.
    """
    den = math.lcm(*(x.denominator for row in m.rows for x in row)) if m.n else 1
    block = [[int(x * den) for x in row] for row in m.rows]
    n_plus = n_zero = n_minus = 0
    flipped = False
    while block:
        k = len(block)
        pivot_at = next((i for i in range(k) if block[i][i] != 0), None)
        if pivot_at is None:
            hot = next(
                ((i, j) for i in range(k) for j in range(i + 1, k) if block[i][j] != 0),
                None,
            )
            if hot is None:
                n_zero += k
                break
            i, j = hot
            for c in range(k):
                block[i][c] += block[j][c]
            for r in range(k):
                block[r][i] += block[r][j]
            pivot_at = i
        p = block[pivot_at][pivot_at]
        if (p > 0) != flipped:
            n_plus += 1
        else:
            n_minus += 1
        rest = [r for r in range(k) if r != pivot_at]
        col = [block[r][pivot_at] for r in rest]
        row = [block[pivot_at][c] for c in rest]
        block = [
            [p * block[r][c] - col[ri] * row[ci] for ci, c in enumerate(rest)]
            for ri, r in enumerate(rest)
        ]
        if p < 0:
            flipped = not flipped
        if block:
            g = math.gcd(*(abs(x) for brow in block for x in brow))
            if g > 1:
                block = [[x // g for x in brow] for brow in block]
    return Signature(n_plus, n_zero, n_minus)


class SingularSystemError(Exception):
    """Raised when a linear system has no unique solution.

    Carries the rank of the coefficient matrix, whether the system is
    consistent (the right-hand side lies in the column space), and one
    nonzero kernel vector.
    """

    def __init__(self, rank: int, consistent: bool, kernel_vector: tuple[Fraction, ...]):
        super().__init__(
            f"singular system: rank {rank}, "
            f"{'consistent' if consistent else 'inconsistent'}"
        )
        self.rank = rank
        self.consistent = consistent
        self.kernel_vector = kernel_vector


def solve_linear(m: SymMatrix, rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve ``m . x = rhs`` exactly; unique solution or SingularSystemError."""
    n = m.n
    if len(rhs) != n:
        raise ValueError(f"rhs length {len(rhs)} does not match dimension {n}")
    aug = [list(row) + [Fraction(rhs[i])] for i, row in enumerate(m.rows)]
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            continue
        aug[row], aug[pivot_row] = aug[pivot_row], aug[row]
        p = aug[row][col]
        aug[row] = [x / p for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
    rank = len(pivot_cols)
    if rank < n:
        consistent = all(aug[r][n] == 0 for r in range(rank, n))
        free_col = next(c for c in range(n) if c not in pivot_cols)
        kernel = [Fraction(0)] * n
        kernel[free_col] = Fraction(1)
        for r, col in enumerate(pivot_cols):
            kernel[col] = -aug[r][free_col]
        raise SingularSystemError(rank, consistent, tuple(kernel))
    return [aug[r][n] for r in range(n)]


class DegenerateInputError(ValueError):
    """Zero-variable feasibility input whose constant constraints contradict."""


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None

    def __bool__(self) -> bool:
        return self.feasible


Constraint = tuple[Sequence[Fraction], Fraction]
# Internal row: gcd-normalized integer coefficients with an exact rational
# bound, meaning coeffs . y <= bound over rescaled variables y_i = D x_i.
_Row = tuple[tuple[int, ...], Fraction]


def _box_implied(coeffs: tuple[int, ...], bound: Fraction,
                 lob: Sequence[int], hib: Sequence[int]) -> bool:
    # Strict comparison: rows met with equality at a box corner (notably the
    # box rows themselves) must stay in the system for elimination to see them.
    worst = 0
    for i, c in enumerate(coeffs):
        if c:
            worst += c * (hib[i] if c > 0 else lob[i])
    return worst < bound


def _tidy(rows: Iterable[_Row], lob, hib) -> list[_Row] | None:
    """Dedupe rows (keep tightest bound), drop box-implied ones.

    Returns None as an early infeasibility verdict from a constant row.
    """
    best: dict[tuple[int, ...], Fraction] = {}
    for coeffs, bound in rows:
        g = math.gcd(*coeffs)
        if g == 0:
            if bound < 0:
                return None
            continue
        key = tuple(c // g for c in coeffs)
        scaled = bound / g
        if key not in best or scaled < best[key]:
            best[key] = scaled
    kept = [(k, b) for k, b in best.items() if not _box_implied(k, b, lob, hib)]
    kept.sort()
    return kept


def feasible_box_lp(
    constraints: Sequence[Constraint],
    box: Sequence[tuple[Fraction | int, Fraction | int]],
) -> FeasibilityResult:
    """Decide whether some x with lo_i <= x_i <= hi_i meets every constraint.

    Fourier-Motzkin elimination.  Internally the box is rescaled so that
    all row arithmetic happens over native integers; the answer and the
    witness are exact.  On success the witness is deterministic:
    back-substitution assigns each variable the smallest value its
    remaining constraints allow.
    """
    nvars = len(box)
    boxq = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
    for i, (lo, hi) in enumerate(boxq):
        if lo > hi:
            raise ValueError(f"box for variable {i} is empty: {lo} > {hi}")
    for coeffs, _ in constraints:
        if len(coeffs) != nvars:
            raise ValueError("constraint arity does not match box length")
    if nvars == 0:
        contradictory = any(Fraction(bound) < 0 for _, bound in constraints)
        if contradictory:
            raise DegenerateInputError(
                "no variables but contradictory constant constraints"
            )
        return FeasibilityResult(True, ())

    scale = math.lcm(*(q.denominator for pair in boxq for q in pair))
    lob = [int(lo * scale) for lo, _ in boxq]
    hib = [int(hi * scale) for _, hi in boxq]

    rows: list[_Row] = []
    for coeffs, bound in constraints:
        cq = [Fraction(c) for c in coeffs]
        mult = math.lcm(*(c.denominator for c in cq)) if cq else 1
        rows.append(
            (tuple(int(c * mult) for c in cq), Fraction(bound) * scale * mult)
        )
    for i in range(nvars):
        unit = tuple(int(j == i) for j in range(nvars))
        rows.append((unit, Fraction(hib[i])))
        rows.append((tuple(-u for u in unit), Fraction(-lob[i])))

    tidied = _tidy(rows, lob, hib)
    if tidied is None:
        return FeasibilityResult(False, None)

    # Dynamic elimination order: always remove the variable with the fewest
    # upper*lower combinations.  The constraint systems seen here mirror a
    # graph's adjacency, so this is leaf-first elimination and intermediate
    # systems stay small where a fixed order can blow up exponentially.
    stages: dict[int, list[_Row]] = {}
    order: list[int] = []
    remaining = set(range(nvars))
    current = tidied
    while remaining:
        def cost(k: int) -> tuple[int, int]:
            ups = sum(1 for r in current if r[0][k] > 0)
            downs = sum(1 for r in current if r[0][k] < 0)
            return (ups * downs, k)

        k = min(remaining, key=cost)
        remaining.discard(k)
        order.append(k)
        stages[k] = current
        uppers = [r for r in current if r[0][k] > 0]
        lowers = [r for r in current if r[0][k] < 0]
        passed = [r for r in current if r[0][k] == 0]
        combined: list[_Row] = []
        for uc, ub in uppers:
            uk = uc[k]
            for lc, lb in lowers:
                lk = -lc[k]
                coeffs = tuple(lk * u + uk * l for u, l in zip(uc, lc))
                combined.append((coeffs, lk * ub + uk * lb))
        current = _tidy(passed + combined, lob, hib)
        if current is None:
            return FeasibilityResult(False, None)
    if any(b < 0 for coeffs, b in current if not any(coeffs)):
        return FeasibilityResult(False, None)

    # Back-substitution in reverse elimination order; every nonzero
    # coefficient in stages[k] besides k itself belongs to a variable
    # eliminated later, hence already assigned here.
    witness: dict[int, Fraction] = {}
    for k in reversed(order):
        low = Fraction(lob[k])
        for coeffs, bound in stages[k]:
            ck = coeffs[k]
            if ck >= 0:
                continue
            partial = sum(
                coeffs[j] * witness[j] for j in range(nvars) if j != k and coeffs[j]
            )
            low = max(low, (bound - partial) / ck)
        witness[k] = low
    values = [witness[k] for k in range(nvars)]
    for coeffs, bound in tidied:
        total = sum(c * y for c, y in zip(coeffs, values))
        if total > bound:  # pragma: no cover - elimination guarantees this
            raise AssertionError("internal error: witness violates a constraint")
    return FeasibilityResult(True, tuple(y / scale for y in values))
