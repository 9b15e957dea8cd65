"""Descending-chain-condition sets of rational coefficients in [0, 1].

A set is described symbolically as a finite part plus families
{c - a/k : k >= k_min} whose elements increase toward the supremum c.
Every representable set satisfies the descending chain condition by
construction, and membership, minima, and finite threshold slices are
all decidable exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class InfiniteTailError(ValueError):
    """A threshold query touched infinitely many family elements."""


@dataclass(frozen=True)
class Family:
    """The set {c - a/k : integer k >= k_min}, intersected with [0, 1]."""

    c: Fraction
    a: Fraction
    k_min: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "a", Fraction(self.a))
        if self.a <= 0:
            raise ValueError("family step a must be positive")
        if self.k_min < 1:
            raise ValueError("k_min must be a positive integer")

    def value(self, k: int) -> Fraction:
        return self.c - self.a / k

    def contains(self, x: Fraction) -> bool:
        if not 0 <= x <= 1 or x >= self.c:
            return False
        k = self.a / (self.c - x)
        return k.denominator == 1 and k >= self.k_min


@dataclass(frozen=True)
class CoefficientSet:
    finite_part: tuple[Fraction, ...]
    families: tuple[Family, ...] = ()

    def __post_init__(self):
        finite = tuple(sorted({Fraction(x) for x in self.finite_part}))
        for x in finite:
            if not 0 <= x <= 1:
                raise ValueError(f"finite element {x} outside [0, 1]")
        object.__setattr__(self, "finite_part", finite)
        object.__setattr__(self, "families", tuple(self.families))

    @classmethod
    def standard(cls) -> "CoefficientSet":
        """{1/12, ..., 11/12} together with {1 - 1/k : k >= 1}."""
        return cls(
            tuple(Fraction(i, 12) for i in range(1, 12)),
            (Family(Fraction(1), Fraction(1), 1),),
        )


def contains(s: CoefficientSet, x: Fraction) -> bool:
    x = Fraction(x)
    if not 0 <= x <= 1:
        return False
    return x in s.finite_part or any(f.contains(x) for f in s.families)


def min_positive(s: CoefficientSet) -> Fraction | None:
    """Exact minimum of the set intersected with (0, 1], or None."""
    candidates = [x for x in s.finite_part if x > 0]
    for fam in s.families:
        if fam.c <= 0:
            continue
        k0 = max(fam.k_min, math.floor(fam.a / fam.c) + 1)
        if fam.c > 1:
            # elements exceed 1 for large k; the admissible k are bounded
            k_hi = math.floor(fam.a / (fam.c - 1))
            if k0 > k_hi:
                continue
        candidates.append(fam.value(k0))
    return min(candidates, default=None)


def below_threshold(s: CoefficientSet, t: Fraction) -> list[Fraction]:
    """The finite sorted slice s intersect [0, t].

    Requires t strictly below every family supremum; otherwise a family
    contributes infinitely many elements and the query is rejected.
    """
    t = Fraction(t)
    out = {x for x in s.finite_part if x <= t}
    for fam in s.families:
        if t >= fam.c:
            raise InfiniteTailError(
                f"threshold {t} reaches the supremum {fam.c} of a family"
            )
        k_hi = math.floor(fam.a / (fam.c - t))
        for k in range(fam.k_min, k_hi + 1):
            v = fam.value(k)
            if 0 <= v <= t:
                out.add(v)
    return sorted(out)


@dataclass(frozen=True)
class QuotientImage:
    values: CoefficientSet
    complete: bool


def _sum_pool(s: CoefficientSet, family_depth: int) -> list[Fraction]:
    pool = set(s.finite_part)
    for fam in s.families:
        for k in range(fam.k_min, fam.k_min + family_depth):
            v = fam.value(k)
            if 0 <= v <= 1:
                pool.add(v)
    return sorted(pool)


def _quotient_values(
    s: CoefficientSet, max_m: int, max_terms: int, max_n: int, family_depth: int
) -> set[Fraction]:
    pool = _sum_pool(s, family_depth)
    sums: set[Fraction] = set()

    def extend(start: int, terms: int, total: Fraction) -> None:
        sums.add(total)
        if terms == max_terms:
            return
        for i in range(start, len(pool)):
            b = pool[i]
            if b == 0:
                extend(i + 1, terms + 1, total)
                continue
            for mult in range(1, max_n + 1):
                t = total + mult * b
                if t > 1:
                    break
                extend(i + 1, terms + 1, t)

    extend(0, 0, Fraction(0))
    values = set()
    for total in sums:
        for m in range(1, max_m + 1):
            v = 1 - (1 - total) / m
            if 0 <= v <= 1:
                values.add(v)
    return values


def hurwitz_quotient_transform(
    s: CoefficientSet,
    max_m: int,
    max_terms: int,
    max_n: int,
    *,
    family_depth: int = 8,
) -> QuotientImage:
    """Bounded image of s under b -> 1 - (1 - sum n_j b_j)/m.

    Sums run over at most ``max_terms`` distinct pool elements with
    integer multiplicities up to ``max_n``; the empty sum is included
    (it produces the pure quotient values 1 - 1/m).  The divisor m runs
    to ``max_m``.  Family elements enter the pool up to ``family_depth``
    terms each.  The completeness flag is computed by probing one step
    beyond every bound: the full image is infinite whenever m is
    unbounded, so expect it to be False.
    """
    if min(max_m, max_terms, max_n, family_depth) < 1:
        raise ValueError("all enumeration bounds must be at least 1")
    values = _quotient_values(s, max_m, max_terms, max_n, family_depth)
    probe = _quotient_values(s, max_m + 1, max_terms + 1, max_n + 1, family_depth + 1)
    return QuotientImage(
        CoefficientSet(tuple(sorted(values))), complete=probe == values
    )


def longest_strictly_decreasing_chain(values: Sequence[Fraction]) -> int:
    """Length of the longest strictly decreasing subsequence.

    Patience sorting on the reversed order: tails[i] holds the largest
    possible last element of a decreasing subsequence of length i + 1.
    """
    tails: list[Fraction] = []
    for raw in values:
        x = Fraction(raw)
        lo, hi = 0, len(tails)
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] > x:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(tails):
            tails.append(x)
        else:
            tails[lo] = x
    return len(tails)


def is_dcc_witnessed(values: Sequence[Fraction], chain_len: int) -> bool:
    """True when no strictly decreasing chain longer than chain_len occurs.

    A desk-scale harness check for sampling pipelines; the companion
    :func:`longest_strictly_decreasing_chain` reports the length found.
    """
    return longest_strictly_decreasing_chain(values) <= chain_len
