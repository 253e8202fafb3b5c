"""Depth-n interval covers of the subsum set of a positive summable spec.

The depth-n cover is the union over all subsets of the first n terms of the
closed interval [s, s + tail], where s is the subset's sum. Left endpoints
are carried exactly through the doubling recursion (each new term translates
the endpoint set) and the union is fattened by the tail enclosure at the
end. The covers are nested and their intersection is the subsum set.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CapExceeded, DivergentTail, WrongKind
from .intervals import ClosedInterval, IntervalUnion, normalize
from .rational import as_fraction
from .sequences import (
    MultiGeometricTail,
    SequenceSpec,
    TailEnclosure,
    TermTailRelation,
    compare_term_tail,
    is_nonincreasing,
)

DEFAULT_ENDPOINT_CAP = 1 << 22
CAP_ENV_VAR = "SUBSUMS_ENDPOINT_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ENDPOINT_CAP
    value = int(raw)
    if value < 1:
        raise ValueError(f"{CAP_ENV_VAR} must be positive")
    return value


@dataclass(frozen=True)
class CnResult:
    """Depth-n cover: exact subset-sum left endpoints plus fattened unions.

    fattened widens each left endpoint by the upper tail bound and always
    contains the subsum set; inner (present only when the tail enclosure
    is inexact) widens by the lower bound and is contained in the true
    cover.
    """

    depth: int
    left_endpoints: tuple
    fattened: IntervalUnion
    inner: Optional[IntervalUnion]
    tail_used: TailEnclosure

    @property
    def tail_exact(self) -> bool:
        return self.tail_used.exact


def subset_sum_starts(spec: SequenceSpec, depth: int, cap: Optional[int] = None) -> tuple:
    """Sorted distinct sums of subsets of the first `depth` terms."""
    if spec.negated:
        raise ValueError("covers are defined for positive specs")
    if cap is None:
        cap = default_cap()
    sums = {Fraction(0)}
    count = spec.term_count()
    steps = depth if count is None else min(depth, count)
    for i, x in enumerate(itertools.islice(spec.terms(), steps), start=1):
        sums |= {s + x for s in sums}
        if len(sums) > cap:
            raise CapExceeded(
                f"endpoint cap {cap} exceeded at depth {i} of {depth}"
            )
    return tuple(sorted(sums))


def build_cn(
    spec: SequenceSpec, depth: int, cap: Optional[int] = None
) -> CnResult:
    """Build the depth-n cover of the subsum set.

    Requires a positive summable spec. Raises DivergentTail otherwise and
    CapExceeded when the endpoint count passes the cap (default 2^22,
    overridable via the SUBSUMS_ENDPOINT_CAP environment variable).
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if spec.negated:
        raise ValueError("covers are defined for positive specs")
    if spec.total().hi is None:
        raise DivergentTail("the sequence is not summable")
    starts = subset_sum_starts(spec, depth, cap=cap)
    tail = spec.tail_sum(depth)
    fattened = normalize(ClosedInterval(s, s + tail.hi) for s in starts)
    inner = None
    if not tail.exact:
        inner = normalize(ClosedInterval(s, s + tail.lo) for s in starts)
    return CnResult(depth, starts, fattened, inner, tail)


def word_interval(spec: SequenceSpec, bits: Sequence[int]) -> ClosedInterval:
    """The cover interval selected by an inclusion word over the first terms.

    bits[k] = 1 includes term k+1 in the start sum; the interval runs from
    that sum to the sum plus the upper tail bound at depth len(bits).
    """
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0 or 1")
    start = sum(
        (spec.term(i + 1) for i, b in enumerate(bits) if b), start=Fraction(0)
    )
    tail = spec.tail_sum(len(bits))
    if tail.hi is None:
        raise DivergentTail("the sequence is not summable")
    return ClosedInterval(start, start + tail.hi)


@dataclass(frozen=True)
class AffineMap:
    """x -> offset + factor * x."""

    factor: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "factor", as_fraction(self.factor))
        object.__setattr__(self, "offset", as_fraction(self.offset))

    def apply(self, x):
        return self.offset + self.factor * as_fraction(x)

    def apply_interval(self, iv: ClosedInterval) -> ClosedInterval:
        a = self.apply(iv.left)
        b = self.apply(iv.right)
        return ClosedInterval(min(a, b), max(a, b))

    def apply_union(self, u: IntervalUnion) -> IntervalUnion:
        return normalize(self.apply_interval(iv) for iv in u)


def ifs_maps(spec: SequenceSpec) -> tuple:
    """The four affine maps whose images tile consecutive even-depth covers.

    Defined for prefix-free two-ratio multi-geometric specs. With
    proportions (a, b) and total T, every two steps scale the cover by
    lam = (1-a)(1-b) and translate it by one of 0, x_2, x_1, x_1 + x_2.
    """
    kind = spec.tail
    if spec.prefix or not isinstance(kind, MultiGeometricTail) or len(kind.ratios) != 2:
        raise WrongKind("IFS maps need a prefix-free two-ratio multi-geometric spec")
    if spec.negated:
        raise ValueError("IFS maps are defined for positive specs")
    lam = kind.period_factor
    x1 = kind.term(1)
    x2 = kind.term(2)
    return (
        AffineMap(lam, Fraction(0)),
        AffineMap(lam, x2),
        AffineMap(lam, x1),
        AffineMap(lam, x1 + x2),
    )


def leftmost_gap_check(spec: SequenceSpec, depth: int, cap: Optional[int] = None) -> bool:
    """Whether term `depth` exceeds its tail, verified on the covers.

    When it does and the tail is exact, every depth-(n-1) component [a, b]
    splits: [a, a + X_n] and [b - X_n, b] are checked to be distinct
    components of the depth-n cover. Returns False without construction
    when the tail bounds the term; inexact tails skip the structural
    verification (the enclosure identities do not telescope).
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not is_nonincreasing(spec):
        raise ValueError("the gap check needs a non-increasing spec")
    relation = compare_term_tail(spec, depth)
    if relation is not TermTailRelation.TERM_EXCEEDS_TAIL:
        return False
    tail = spec.tail_sum(depth)
    if not tail.exact:
        return True
    coarse = build_cn(spec, depth - 1, cap=cap)
    fine = build_cn(spec, depth, cap=cap)
    fine_components = set(fine.fattened.intervals)
    for piece in coarse.fattened:
        low = ClosedInterval(piece.left, piece.left + tail.hi)
        high = ClosedInterval(piece.right - tail.hi, piece.right)
        if low == high or low not in fine_components or high not in fine_components:
            raise AssertionError(
                f"gap structure violated at depth {depth} for {piece}"
            )
    return True
