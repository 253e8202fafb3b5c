"""Symbolic positive null sequences with exact terms and rigorous tail sums.

A sequence is an explicit finite prefix followed by a structured tail:
geometric, power-sum (1/k^p), multi-geometric (periodic tail proportions), or
a descending merge of such streams. Terms are exact Fractions. Tail sums are
returned as enclosures that are either exact or rigorous rational brackets
(power sums use the integral test and can be refined by summing more terms
explicitly).

Signed sequences are merges of single-signed parts; see MergedSpec,
sign_split and summability_class.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import (
    IndexBeyondFinite,
    IndeterminateComparison,
    UnsupportedExponent,
    UnsupportedKind,
)
from .rational import as_fraction

ZERO = Fraction(0)

# Extra explicit terms summed on each refinement attempt of an inexact
# comparison, in order.
REFINEMENT_STEPS = (8, 32, 128)


@dataclass(frozen=True)
class TailEnclosure:
    """Closed rational bracket [lo, hi] around a (possibly infinite) sum.

    None marks an infinite endpoint: hi=None means the sum diverges to
    +infinity, lo=None means -infinity. The bracket is exact when lo == hi.
    """

    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def __post_init__(self):
        lo = None if self.lo is None else as_fraction(self.lo)
        hi = None if self.hi is None else as_fraction(self.hi)
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"enclosure out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value) -> TailEnclosure:
        value = as_fraction(value)
        return cls(value, value)

    @classmethod
    def plus_infinity(cls) -> TailEnclosure:
        return cls(ZERO, None)

    @property
    def exact(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def finite(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError("enclosure is not exact")
        return self.lo

    @property
    def width(self) -> Fraction:
        if not self.finite:
            raise ValueError("enclosure is unbounded")
        return self.hi - self.lo

    def __add__(self, other: TailEnclosure) -> TailEnclosure:
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return TailEnclosure(lo, hi)

    def shift(self, offset) -> TailEnclosure:
        offset = as_fraction(offset)
        lo = None if self.lo is None else self.lo + offset
        hi = None if self.hi is None else self.hi + offset
        return TailEnclosure(lo, hi)

    def negate(self) -> TailEnclosure:
        lo = None if self.hi is None else -self.hi
        hi = None if self.lo is None else -self.lo
        return TailEnclosure(lo, hi)

    def clamp_nonnegative(self) -> TailEnclosure:
        # Intersect with [0, +inf); used where the enclosed sum is known
        # nonnegative but interval arithmetic lost that.
        lo = ZERO if self.lo is None or self.lo < 0 else self.lo
        return TailEnclosure(lo, self.hi)


class FiniteTail:
    """No generated terms after the prefix."""

    divergent = False

    def term(self, index: int) -> Fraction:
        raise IndexBeyondFinite(f"finite sequence has no term {index}")

    def term_count(self) -> int:
        return 0

    def enclosure(self, skip: int, extra: int = 0) -> TailEnclosure:
        return TailEnclosure.point(ZERO)

    def __repr__(self):
        return "FiniteTail()"

    def __eq__(self, other):
        return isinstance(other, FiniteTail)

    def __hash__(self):
        return hash(FiniteTail)


@dataclass(frozen=True)
class GeometricTail:
    """Terms first * ratio^(i-1), i >= 1."""

    first: Fraction
    ratio: Fraction

    divergent = False

    def __post_init__(self):
        first = as_fraction(self.first)
        ratio = as_fraction(self.ratio)
        if first <= 0:
            raise ValueError("geometric first term must be positive")
        if not 0 < ratio < 1:
            raise ValueError("geometric ratio must lie strictly between 0 and 1")
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "ratio", ratio)

    def term(self, index: int) -> Fraction:
        return self.first * self.ratio ** (index - 1)

    def term_count(self) -> None:
        return None

    def enclosure(self, skip: int, extra: int = 0) -> TailEnclosure:
        return TailEnclosure.point(self.first * self.ratio**skip / (1 - self.ratio))


@dataclass(frozen=True)
class PowerSumTail:
    """Terms 1/k^exponent for k = start, start+1, ...

    exponent 1 is the harmonic case; its tail sum is the divergent
    enclosure. For exponent >= 2 the tail sum is bracketed by the integral
    test and refined by summing explicit terms.
    """

    exponent: int
    start: int = 1

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int):
            raise UnsupportedExponent(f"exponent must be an integer, got {self.exponent!r}")
        if self.exponent < 1:
            raise UnsupportedExponent("exponent must be at least 1")
        if not isinstance(self.start, int) or self.start < 1:
            raise ValueError("start must be a positive integer")

    @property
    def divergent(self) -> bool:
        return self.exponent == 1

    def term(self, index: int) -> Fraction:
        return Fraction(1, (self.start + index - 1) ** self.exponent)

    def term_count(self) -> None:
        return None

    def enclosure(self, skip: int, extra: int = 0) -> TailEnclosure:
        if self.exponent == 1:
            return TailEnclosure.plus_infinity()
        p = self.exponent
        # The integral test needs a positive base index; sum one explicit
        # term first when the tail starts at k = 1.
        explicit = max(extra, 1 - (self.start + skip - 1))
        summed = sum(
            (self.term(skip + j + 1) for j in range(explicit)), start=ZERO
        )
        base = self.start + skip + explicit - 1
        lo = summed + Fraction(1, (p - 1) * (base + 1) ** (p - 1))
        hi = summed + Fraction(1, (p - 1) * base ** (p - 1))
        return TailEnclosure(lo, hi)


@dataclass(frozen=True)
class MultiGeometricTail:
    """Tail driven by periodic proportions: x_{i+1} = r_j X_i with j = i mod m.

    total is the whole tail sum X_0; each step removes the proportion
    r_(i mod m) of what remains, so all terms and tail sums are exact.
    """

    ratios: tuple
    total: Fraction

    divergent = False

    def __post_init__(self):
        ratios = tuple(as_fraction(r) for r in self.ratios)
        total = as_fraction(self.total)
        if not ratios:
            raise ValueError("at least one proportion is required")
        if any(not 0 < r < 1 for r in ratios):
            raise ValueError("proportions must lie strictly between 0 and 1")
        if total <= 0:
            raise ValueError("total must be positive")
        object.__setattr__(self, "ratios", ratios)
        object.__setattr__(self, "total", total)

    @property
    def period_factor(self) -> Fraction:
        out = Fraction(1)
        for r in self.ratios:
            out *= 1 - r
        return out

    def remaining(self, count: int) -> Fraction:
        # Exact tail sum after the first `count` terms.
        m = len(self.ratios)
        whole, part = divmod(count, m)
        out = self.total * self.period_factor**whole
        for j in range(part):
            out *= 1 - self.ratios[j]
        return out

    def term(self, index: int) -> Fraction:
        return self.ratios[(index - 1) % len(self.ratios)] * self.remaining(index - 1)

    def term_count(self) -> None:
        return None

    def enclosure(self, skip: int, extra: int = 0) -> TailEnclosure:
        return TailEnclosure.point(self.remaining(skip))

    def strands(self) -> tuple:
        """Decompose into geometric strands, one per residue class mod m.

        x_{i+m} = period_factor * x_i exactly, so strand j is geometric with
        first term x_{j+1} and ratio period_factor.
        """
        return tuple(
            SequenceSpec((), GeometricTail(self.term(j + 1), self.period_factor))
            for j in range(len(self.ratios))
        )


@dataclass(frozen=True)
class MergeTail:
    """Descending merge of non-increasing positive part streams.

    Used for the non-increasing reordering of multi-geometric tails (one
    geometric strand per residue class) and for combining same-signed parts
    of a merged spec. Nested merges are flattened.
    """

    parts: tuple

    def __post_init__(self):
        flat = []
        for part in self.parts:
            if not isinstance(part, SequenceSpec):
                raise TypeError("merge parts must be sequence specs")
            if part.negated:
                raise ValueError("merge parts must be positive")
            if not part.prefix and isinstance(part.tail, MergeTail):
                flat.extend(part.tail.parts)
            else:
                flat.append(part)
        for part in flat:
            if not is_nonincreasing(part):
                raise ValueError("merge parts must be non-increasing")
        object.__setattr__(self, "parts", tuple(flat))

    @property
    def divergent(self) -> bool:
        return any(part.divergent for part in self.parts)

    def terms(self) -> Iterator[Fraction]:
        heap = []
        streams = []
        for idx, part in enumerate(self.parts):
            stream = part.terms()
            streams.append(stream)
            head = next(stream, None)
            if head is not None:
                heapq.heappush(heap, (-head, idx))
        while heap:
            value, idx = heapq.heappop(heap)
            yield -value
            head = next(streams[idx], None)
            if head is not None:
                heapq.heappush(heap, (-head, idx))

    def term(self, index: int) -> Fraction:
        for i, value in enumerate(self.terms(), start=1):
            if i == index:
                return value
        raise IndexBeyondFinite(f"merged sequence has no term {index}")

    def term_count(self) -> Optional[int]:
        counts = [part.term_count() for part in self.parts]
        if any(c is None for c in counts):
            return None
        return sum(counts)

    def enclosure(self, skip: int, extra: int = 0) -> TailEnclosure:
        total = TailEnclosure.point(ZERO)
        for part in self.parts:
            total = total + part.tail_sum(0, extra=extra)
        consumed = sum(itertools.islice(self.terms(), skip), start=ZERO)
        return total.shift(-consumed).clamp_nonnegative()

    def merged_positions(self) -> tuple:
        """Position at which each part emits its first term."""
        heap = []
        streams = []
        for idx, part in enumerate(self.parts):
            stream = part.terms()
            streams.append(stream)
            head = next(stream, None)
            if head is not None:
                heap.append((-head, idx))
        heapq.heapify(heap)
        first_pos = {}
        pos = 0
        while heap and len(first_pos) < len(self.parts):
            _, idx = heapq.heappop(heap)
            pos += 1
            first_pos.setdefault(idx, pos)
            head = next(streams[idx], None)
            if head is not None:
                heapq.heappush(heap, (-head, idx))
        return tuple(first_pos.get(i) for i in range(len(self.parts)))


TailKind = Union[FiniteTail, GeometricTail, PowerSumTail, MultiGeometricTail, MergeTail]


@dataclass(frozen=True)
class SequenceSpec:
    """An explicit prefix of positive terms followed by a structured tail.

    negated=True flips the sign of every term; a spec is always
    single-signed. Signed sequences are built by merging specs of opposite
    signs (MergedSpec).
    """

    prefix: tuple = ()
    tail: TailKind = FiniteTail()
    negated: bool = False

    def __post_init__(self):
        prefix = tuple(as_fraction(v) for v in self.prefix)
        if any(v <= 0 for v in prefix):
            raise ValueError("prefix terms must be positive before negation")
        object.__setattr__(self, "prefix", prefix)

    @property
    def divergent(self) -> bool:
        return self.tail.divergent

    @property
    def is_finite(self) -> bool:
        return isinstance(self.tail, FiniteTail)

    def absolute(self) -> SequenceSpec:
        if not self.negated:
            return self
        return SequenceSpec(self.prefix, self.tail, negated=False)

    def term(self, index: int) -> Fraction:
        """Exact index-th term (1-based), including sign."""
        if index < 1:
            raise ValueError("term indices start at 1")
        if index <= len(self.prefix):
            value = self.prefix[index - 1]
        else:
            value = self.tail.term(index - len(self.prefix))
        return -value if self.negated else value

    def terms(self) -> Iterator[Fraction]:
        sign = -1 if self.negated else 1
        for value in self.prefix:
            yield sign * value
        count = self.tail.term_count()
        if count == 0:
            return
        if isinstance(self.tail, MergeTail):
            for value in self.tail.terms():
                yield sign * value
        else:
            for i in itertools.count(1):
                try:
                    yield sign * self.tail.term(i)
                except IndexBeyondFinite:
                    return

    def term_count(self) -> Optional[int]:
        tail_count = self.tail.term_count()
        if tail_count is None:
            return None
        return len(self.prefix) + tail_count

    def tail_sum(self, skip: int, extra: int = 0) -> TailEnclosure:
        """Enclosure of the sum of all terms after the first `skip`.

        Defined for positive specs; take .absolute() first and negate the
        enclosure for negated ones.
        """
        if self.negated:
            raise ValueError("tail sums are defined on positive specs")
        if skip < 0:
            raise ValueError("skip must be nonnegative")
        if skip < len(self.prefix):
            rest = sum(self.prefix[skip:], start=ZERO)
            return self.tail.enclosure(0, extra=extra).shift(rest)
        return self.tail.enclosure(skip - len(self.prefix), extra=extra)

    def total(self, extra: int = 0) -> TailEnclosure:
        return self.tail_sum(0, extra=extra)


@dataclass(frozen=True)
class MergedSpec:
    """Interleaving of single-signed specs, positive parts first."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not all(isinstance(p, SequenceSpec) for p in parts):
            raise TypeError("merged parts must be sequence specs")
        object.__setattr__(self, "parts", parts)

    def terms(self) -> Iterator[Fraction]:
        ordered = [p for p in self.parts if not p.negated]
        ordered += [p for p in self.parts if p.negated]
        streams = [p.terms() for p in ordered]
        while streams:
            alive = []
            for stream in streams:
                value = next(stream, None)
                if value is not None:
                    yield value
                    alive.append(stream)
            streams = alive


def as_merged(spec) -> MergedSpec:
    if isinstance(spec, MergedSpec):
        return spec
    if isinstance(spec, SequenceSpec):
        return MergedSpec((spec,))
    raise TypeError(f"not a sequence spec: {type(spec).__name__}")


# --- factories ---------------------------------------------------------------


def geometric(first, ratio, prefix=(), negated=False) -> SequenceSpec:
    return SequenceSpec(tuple(prefix), GeometricTail(as_fraction(first), as_fraction(ratio)), negated)


def power_sum(exponent: int, start: int = 1, prefix=(), negated=False) -> SequenceSpec:
    return SequenceSpec(tuple(prefix), PowerSumTail(exponent, start), negated)


def multi_geometric(ratios, total, prefix=(), negated=False) -> SequenceSpec:
    kind = MultiGeometricTail(tuple(as_fraction(r) for r in ratios), as_fraction(total))
    return SequenceSpec(tuple(prefix), kind, negated)


def finite(terms, negated=False) -> SequenceSpec:
    return SequenceSpec(tuple(terms), FiniteTail(), negated)


EMPTY = SequenceSpec((), FiniteTail())


# --- monotonicity and reordering ---------------------------------------------


def _first_tail_term(kind: TailKind) -> Optional[Fraction]:
    try:
        return kind.term(1)
    except IndexBeyondFinite:
        return None


def _tail_nonincreasing(kind: TailKind) -> bool:
    if isinstance(kind, (FiniteTail, GeometricTail, PowerSumTail)):
        return True
    if isinstance(kind, MultiGeometricTail):
        # x_{i+1} <= x_i iff r_i <= r_{i-1} / (1 - r_{i-1}); the pattern is
        # periodic, so the cyclic conditions cover every i.
        rs = kind.ratios
        m = len(rs)
        return all(rs[(j + 1) % m] <= rs[j] / (1 - rs[j]) for j in range(m))
    if isinstance(kind, MergeTail):
        return True
    raise UnsupportedKind(f"unknown tail kind {type(kind).__name__}")


def is_nonincreasing(spec: SequenceSpec) -> bool:
    """Whether the term stream is non-increasing, decided analytically."""
    values = spec.prefix
    if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
        return False
    first = _first_tail_term(spec.tail)
    if values and first is not None and values[-1] < first:
        return False
    return _tail_nonincreasing(spec.tail)


def drop_first(spec: SequenceSpec, count: int) -> SequenceSpec:
    """The spec with its first `count` terms removed (positive specs)."""
    if spec.negated:
        raise ValueError("drop_first is defined on positive specs")
    if count <= 0:
        return spec
    if count < len(spec.prefix):
        return SequenceSpec(spec.prefix[count:], spec.tail)
    count -= len(spec.prefix)
    kind = spec.tail
    if isinstance(kind, FiniteTail):
        return EMPTY
    if isinstance(kind, GeometricTail):
        return SequenceSpec((), GeometricTail(kind.first * kind.ratio**count, kind.ratio))
    if isinstance(kind, PowerSumTail):
        return SequenceSpec((), PowerSumTail(kind.exponent, kind.start + count))
    if isinstance(kind, MultiGeometricTail):
        m = len(kind.ratios)
        rotated = tuple(kind.ratios[(count + j) % m] for j in range(m))
        return SequenceSpec((), MultiGeometricTail(rotated, kind.remaining(count)))
    if isinstance(kind, MergeTail):
        consumed = [0] * len(kind.parts)
        heap = []
        streams = []
        for idx, part in enumerate(kind.parts):
            stream = part.terms()
            streams.append(stream)
            head = next(stream, None)
            if head is not None:
                heap.append((-head, idx))
        heapq.heapify(heap)
        for _ in range(count):
            if not heap:
                break
            _, idx = heapq.heappop(heap)
            consumed[idx] += 1
            head = next(streams[idx], None)
            if head is not None:
                heapq.heappush(heap, (-head, idx))
        parts = [
            drop_first(part, used)
            for part, used in zip(kind.parts, consumed)
        ]
        parts = [p for p in parts if p.term_count() != 0]
        return _wrap_merge(parts)
    raise UnsupportedKind(f"unknown tail kind {type(kind).__name__}")


def _wrap_merge(parts) -> SequenceSpec:
    parts = [p for p in parts if not (p.is_finite and not p.prefix)]
    if not parts:
        return EMPTY
    if len(parts) == 1 and not parts[0].prefix:
        return parts[0]
    return SequenceSpec((), MergeTail(tuple(parts)))


def nonincreasing_reorder(spec: SequenceSpec) -> SequenceSpec:
    """A spec generating the same multiset of terms in non-increasing order.

    Positive specs only. Geometric and power-sum tails are already sorted;
    multi-geometric tails become a descending merge of their geometric
    strands; an out-of-order prefix absorbs every tail term at least as large
    as its smallest entry.
    """
    if spec.negated:
        raise ValueError("reordering is defined on positive specs")
    if is_nonincreasing(spec):
        return spec
    sorted_prefix = SequenceSpec(tuple(sorted(spec.prefix, reverse=True)), spec.tail)
    if is_nonincreasing(sorted_prefix):
        return sorted_prefix
    kind = spec.tail
    if isinstance(kind, PowerSumTail):
        raise UnsupportedKind("cannot interleave a prefix into a power-sum tail")
    if isinstance(kind, GeometricTail):
        body = SequenceSpec((), kind)
    elif isinstance(kind, MultiGeometricTail):
        body = _wrap_merge(list(kind.strands()))
    elif isinstance(kind, MergeTail):
        body = SequenceSpec((), kind)
    else:
        raise UnsupportedKind(f"unknown tail kind {type(kind).__name__}")
    if not spec.prefix:
        return body
    return _absorb_prefix(spec.prefix, body)


def _absorb_prefix(prefix, body: SequenceSpec) -> SequenceSpec:
    """Merge prefix terms into a non-increasing body spec."""
    threshold = min(prefix)
    taken = []
    for value in body.terms():
        if value >= threshold:
            taken.append(value)
        else:
            break
    rest = drop_first(body, len(taken))
    new_prefix = tuple(sorted(list(prefix) + taken, reverse=True))
    if rest.prefix:
        # Keep a single structured tail: hoist the remainder's own prefix.
        new_prefix = new_prefix + rest.prefix
        rest = SequenceSpec((), rest.tail)
    return SequenceSpec(new_prefix, rest.tail)


# --- summability and sign handling -------------------------------------------


class SummabilityClass(Enum):
    ABSOLUTELY_SUMMABLE = "absolutely-summable"
    CONDITIONALLY_SUMMABLE = "conditionally-summable"
    UNCONDITIONALLY_UNSUMMABLE = "unconditionally-unsummable"


def _combine_parts(parts) -> SequenceSpec:
    """One positive spec carrying all terms of the given positive parts."""
    parts = [p for p in parts if not (p.is_finite and not p.prefix)]
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return _wrap_merge([nonincreasing_reorder(p) for p in parts])


def sign_split(spec) -> tuple:
    """Split into (positive part, negative part, positive sum, negative sum).

    The sums are enclosures; the negative sum is <= 0 and may be the
    -infinity enclosure for divergent negative parts.
    """
    merged = as_merged(spec)
    pos_parts = [p for p in merged.parts if not p.negated]
    neg_parts = [p.absolute() for p in merged.parts if p.negated]
    pos = _combine_parts(pos_parts)
    neg_abs = _combine_parts(neg_parts)
    plus = pos.total()
    minus = neg_abs.total().negate()
    neg = SequenceSpec(neg_abs.prefix, neg_abs.tail, negated=True)
    return pos, neg, plus, minus


def summability_class(spec) -> SummabilityClass:
    _, _, plus, minus = sign_split(spec)
    plus_finite = plus.hi is not None
    minus_finite = minus.lo is not None
    if plus_finite and minus_finite:
        return SummabilityClass.ABSOLUTELY_SUMMABLE
    if plus_finite or minus_finite:
        return SummabilityClass.UNCONDITIONALLY_UNSUMMABLE
    return SummabilityClass.CONDITIONALLY_SUMMABLE


# --- term/tail comparisons ----------------------------------------------------


class TermTailRelation(Enum):
    TERM_EXCEEDS_TAIL = "exceed"
    TAIL_BOUNDS_TERM = "bound"
    INDETERMINATE = "indeterminate"


def _compare_once(term: Fraction, tail: TailEnclosure) -> TermTailRelation:
    if tail.hi is None:
        # hi=None marks genuine divergence, and an infinite tail bounds
        # any term.
        return TermTailRelation.TAIL_BOUNDS_TERM
    if term > tail.hi:
        return TermTailRelation.TERM_EXCEEDS_TAIL
    if term <= tail.lo:
        return TermTailRelation.TAIL_BOUNDS_TERM
    return TermTailRelation.INDETERMINATE


def compare_term_tail(
    spec: SequenceSpec, index: int, refinement=REFINEMENT_STEPS
) -> TermTailRelation:
    """Resolve term(index) vs tail(index), refining inexact enclosures.

    Raises IndeterminateComparison when the refinement budget is spent.
    """
    term = spec.term(index)
    relation = _compare_once(term, spec.tail_sum(index))
    if relation is not TermTailRelation.INDETERMINATE:
        return relation
    for extra in refinement:
        relation = _compare_once(term, spec.tail_sum(index, extra=extra))
        if relation is not TermTailRelation.INDETERMINATE:
            return relation
    raise IndeterminateComparison(index)
