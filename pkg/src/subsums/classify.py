"""Classification of subsum sets with explicit certificates.

The driving facts, all phrased for positive summable sequences in
non-increasing order with exact term/tail comparisons:

* tail bounds term from some index on  -> finite union of closed intervals
  (the cover stabilizes; component count between 2^(#gap events) and
  2^(last gap index));
* term exceeds tail at every index     -> Cantor set;
* two-ratio periodic tails whose two-step contraction is below 1/4
  -> Cantor set (cover component lengths die out geometrically);
* integer digit strands over a base whose subset sums cover every residue,
  plus a periodic gap pattern -> symmetric Cantorval.

Signed sequences are reduced by splitting signs: the subsum set is the
absolute-value subsum set translated by the sum of the negative part, and
non-absolutely-summable sequences give the whole line or a half line.
Anything not certified is reported Undetermined, never guessed.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .construction import build_cn
from .errors import CapExceeded, NotApplicable, NotDigitForm
from .sequences import (
    GeometricTail,
    MergeTail,
    MultiGeometricTail,
    PowerSumTail,
    SequenceSpec,
    SummabilityClass,
    TermTailRelation,
    as_merged,
    compare_term_tail,
    is_nonincreasing,
    nonincreasing_reorder,
    sign_split,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
DEFAULT_HORIZON = 24

# Depths tried past the stabilization index when pinning an exact component
# count with inexact tails.
COUNT_DEPTH_SLACK = 6

# Digit-string injectivity is brute-checked on all strings up to this many
# combinations.
INJECTIVITY_SAMPLE_LIMIT = 1024


class EventualKind(Enum):
    ALL_EXCEED = "all-exceed"
    ALL_BOUND = "all-bound"
    EVENTUALLY_BOUND = "eventually-bound"
    EXCEEDS_INFINITELY_OFTEN = "exceeds-infinitely-often"


@dataclass(frozen=True)
class EventualVerdict:
    """Analytic description of the term/tail comparison pattern.

    after: for EVENTUALLY_BOUND, the last index whose term exceeds its
    tail (0 when none ever does, which is reported as ALL_BOUND).
    exceed_count: total number of exceed events, when finite.
    """

    kind: EventualKind
    proof: str
    after: Optional[int] = None
    exceed_count: Optional[int] = None


@dataclass(frozen=True)
class TermTailProfile:
    """Pointwise term/tail comparisons on the non-increasing reordering."""

    horizon: int
    comparisons: tuple
    eventual: Optional[EventualVerdict]
    reordered: SequenceSpec
    pseries_exceed_through: Optional[int] = None
    pseries_bound_from: Optional[int] = None


def _pointwise(spec: SequenceSpec, indices) -> dict:
    return {n: compare_term_tail(spec, n) for n in indices}


def _pseries_bound_threshold(exponent: int) -> int:
    """Least N with (N+1) * (N/(N+1))^p >= p - 1.

    The left side is strictly increasing in N, so tails bound terms for
    every index >= N.
    """
    p = exponent
    n = 1
    while (n + 1) * Fraction(n, n + 1) ** p < p - 1:
        n += 1
    return n


def _region_verdict(
    spec: SequenceSpec,
    head_count: int,
    region_exceed,
    proof: str,
) -> EventualVerdict:
    """Combine pointwise head comparisons with an analytic periodic region.

    region_exceed maps a full-sequence index > head_count to True (term
    exceeds tail), False (tail bounds term) or None (resolve pointwise);
    the pattern must be eventually periodic so that scanning one period
    decides the infinite behaviour.
    """
    head = _pointwise(spec, range(1, head_count + 1))
    head_exceeds = [
        n for n, rel in head.items() if rel is TermTailRelation.TERM_EXCEEDS_TAIL
    ]
    region_has_exceed, region_all_exceed, middle_exceeds = region_exceed
    if region_has_exceed:
        if region_all_exceed and len(head_exceeds) == head_count:
            return EventualVerdict(EventualKind.ALL_EXCEED, proof, exceed_count=None)
        return EventualVerdict(EventualKind.EXCEEDS_INFINITELY_OFTEN, proof)
    exceeds = sorted(head_exceeds + middle_exceeds)
    if not exceeds:
        return EventualVerdict(EventualKind.ALL_BOUND, proof, after=0, exceed_count=0)
    return EventualVerdict(
        EventualKind.EVENTUALLY_BOUND,
        proof,
        after=max(exceeds),
        exceed_count=len(exceeds),
    )


def _analytic_eventual(spec: SequenceSpec):
    """Eventual verdict for a reordered spec, or None when unavailable.

    Returns (verdict, pseries thresholds) so the profile can expose the
    power-sum constants.
    """
    prefix_len = len(spec.prefix)
    kind = spec.tail
    if isinstance(kind, GeometricTail):
        exceed_forever = kind.ratio < HALF
        region = (exceed_forever, exceed_forever, [])
        return _region_verdict(spec, prefix_len, region, "geometric-ratio"), None
    if isinstance(kind, PowerSumTail):
        if kind.divergent:
            # An infinite tail bounds every term, but divergent specs are
            # classified by summability, not by gap analysis.
            return None, None
        p = kind.exponent
        guaranteed = p - 1
        threshold = _pseries_bound_threshold(p)
        middle = []
        for k in range(max(kind.start, guaranteed + 1), threshold):
            n = prefix_len + (k - kind.start) + 1
            if compare_term_tail(spec, n) is TermTailRelation.TERM_EXCEEDS_TAIL:
                middle.append(n)
        for k in range(kind.start, min(guaranteed, threshold - 1) + 1):
            middle.append(prefix_len + (k - kind.start) + 1)
        region = (False, False, middle)
        verdict = _region_verdict(spec, prefix_len, region, "pseries-monotone")
        return verdict, (guaranteed, threshold)
    if isinstance(kind, MultiGeometricTail):
        pattern = [r > HALF for r in kind.ratios]
        return _periodic_region(spec, prefix_len, pattern), None
    if isinstance(kind, MergeTail):
        strands = kind.parts
        if not all(
            not s.prefix and isinstance(s.tail, GeometricTail) for s in strands
        ):
            return None, None
        ratios = {s.tail.ratio for s in strands}
        if len(ratios) != 1:
            return None, None
        # Scaling the merged multiset by the common ratio reproduces it
        # minus the strand heads, so comparisons repeat with period m once
        # every strand has emitted its first term.
        m = len(strands)
        stable_from = max(1, max(kind.merged_positions()) - m + 1)
        window = [
            compare_term_tail(spec, prefix_len + stable_from + j)
            is TermTailRelation.TERM_EXCEEDS_TAIL
            for j in range(m)
        ]
        head_count = prefix_len + stable_from - 1
        return _periodic_region(spec, head_count, window), None
    return None, None


def _periodic_region(spec, head_count, pattern):
    """Region verdict when exceed events repeat with the pattern's period."""
    region = (any(pattern), all(pattern), [])
    return _region_verdict(spec, head_count, region, "multigeometric-period")


def term_tail_profile(
    spec: SequenceSpec, horizon: int = DEFAULT_HORIZON
) -> TermTailProfile:
    """Compare each term against its tail on the non-increasing reordering."""
    if spec.negated:
        raise ValueError("profiles are defined on positive specs")
    reordered = nonincreasing_reorder(spec)
    count = reordered.term_count()
    scan = horizon if count is None else min(horizon, count)
    comparisons = tuple(
        compare_term_tail(reordered, n) for n in range(1, scan + 1)
    )
    eventual, thresholds = _analytic_eventual(reordered)
    exceed_through = bound_from = None
    if thresholds is not None:
        exceed_through, bound_from = thresholds
    return TermTailProfile(
        horizon=horizon,
        comparisons=comparisons,
        eventual=eventual,
        reordered=reordered,
        pseries_exceed_through=exceed_through,
        pseries_bound_from=bound_from,
    )


# --- digit certificates --------------------------------------------------------


@dataclass(frozen=True)
class CoverageCertificate:
    """Subset sums of the strand numerators cover every residue mod base.

    representatives holds one digit per residue class; finite digit strings
    over them were brute-checked to have pairwise distinct fractional
    parts up to injectivity_depth places.
    """

    base: int
    numerators: tuple
    digits: tuple
    representatives: tuple
    injectivity_depth: int


def digit_form(spec: SequenceSpec) -> tuple:
    """Reduce a spec to integer digit strands over a base.

    Works when the terms split into geometric strands with a common ratio
    1/base: strand j contributes p_j / base^k for k >= 1. The numerators
    are scaled to integers with content 1, which preserves residue
    coverage. Raises NotDigitForm otherwise.
    """
    if spec.negated or spec.prefix:
        raise NotDigitForm("digit strands need a prefix-free positive spec")
    kind = spec.tail
    if isinstance(kind, GeometricTail):
        heads = (kind.first,)
        ratio = kind.ratio
    elif isinstance(kind, MultiGeometricTail):
        heads = tuple(kind.term(j + 1) for j in range(len(kind.ratios)))
        ratio = kind.period_factor
    elif isinstance(kind, MergeTail):
        strands = kind.parts
        if not all(
            not s.prefix and isinstance(s.tail, GeometricTail) for s in strands
        ):
            raise NotDigitForm("merged strands are not geometric")
        ratios = {s.tail.ratio for s in strands}
        if len(ratios) != 1:
            raise NotDigitForm("strand ratios differ")
        heads = tuple(s.tail.first for s in strands)
        ratio = ratios.pop()
    else:
        raise NotDigitForm(f"no digit reduction for {type(kind).__name__}")
    if ratio.numerator != 1 or ratio.denominator < 2:
        raise NotDigitForm(f"strand ratio {ratio} is not 1/base")
    base = ratio.denominator
    scaled = [h * base for h in heads]
    content = Fraction(
        math.gcd(*(q.numerator for q in scaled)),
        math.lcm(*(q.denominator for q in scaled)),
    )
    numerators = tuple(int(q / content) for q in scaled)
    return base, numerators


def digit_coverage_test(base: int, numerators) -> Optional[CoverageCertificate]:
    """Certificate that subset sums of the numerators cover Z/base.

    Returns None when some residue is missed. Coverage plus the distinct
    fractional parts of finite digit strings force the subsum set to have
    nonempty interior.
    """
    if base < 2:
        raise ValueError("base must be at least 2")
    numerators = tuple(int(n) for n in numerators)
    if any(n <= 0 for n in numerators):
        raise ValueError("numerators must be positive integers")
    sums = {0}
    for q in numerators:
        sums |= {s + q for s in sums}
    digits = tuple(sorted(sums))
    residues = {d % base for d in digits}
    if len(residues) < base:
        return None
    representatives = tuple(
        min(d for d in digits if d % base == r) for r in range(base)
    )
    depth = 1
    while base ** (depth + 1) <= INJECTIVITY_SAMPLE_LIMIT:
        depth += 1
    seen = set()
    for word in itertools.product(representatives, repeat=depth):
        value = sum(
            Fraction(digit, base**place)
            for place, digit in enumerate(word, start=1)
        )
        fractional = value - (value.numerator // value.denominator)
        seen.add(fractional)
    if len(seen) != base**depth:
        return None
    return CoverageCertificate(base, numerators, digits, representatives, depth)


# --- verdicts -------------------------------------------------------------------


class VerdictKind(Enum):
    FINITE_UNION = "FiniteUnion"
    CANTOR_SET = "CantorSet"
    SYMMETRIC_CANTORVAL = "SymmetricCantorval"
    UNBOUNDED_INTERVAL = "UnboundedInterval"
    WHOLE_LINE = "WholeLine"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class Verdict:
    """Classification outcome with the certificate that produced it.

    hull endpoints use None for an infinite side. translation is the sum
    of the negative part (the subsum set is the absolute-value subsum set
    shifted by it); None when that sum has no exact rational value.
    """

    kind: VerdictKind
    summability: SummabilityClass
    certificate: Optional[str] = None
    strength: Optional[str] = None
    hull_lo: Optional[Fraction] = None
    hull_hi: Optional[Fraction] = None
    hull_exact: bool = True
    component_lower: Optional[int] = None
    component_upper: Optional[int] = None
    component_count: Optional[int] = None
    translation: Optional[Fraction] = None
    known_infinitely_many: bool = False
    profile: Optional[TermTailProfile] = None
    digit_certificate: Optional[CoverageCertificate] = None


def _shift(value: Optional[Fraction], offset: Optional[Fraction]) -> Optional[Fraction]:
    if value is None or offset is None:
        return None
    return value + offset


def _exact_component_count(spec, stabilized_depth, cap) -> Optional[int]:
    """Component count of the stabilized cover, when it can be pinned.

    The cover stops splitting after the last gap index, so its component
    count at that depth is the true one. With inexact tails the lower and
    upper fattenings sandwich the count; equality at some nearby depth
    pins it.
    """
    for depth in range(stabilized_depth, stabilized_depth + COUNT_DEPTH_SLACK + 1):
        try:
            cover = build_cn(spec, depth, cap=cap)
        except CapExceeded:
            return None
        if cover.tail_exact:
            return cover.fattened.components
        if cover.inner is not None and cover.inner.components == cover.fattened.components:
            return cover.fattened.components
    return None


def classify(
    spec,
    horizon: int = DEFAULT_HORIZON,
    count_cap: int = 1 << 18,
    digit_base_limit: Optional[int] = None,
) -> Verdict:
    """Classify the subsum set of a (possibly signed, merged) spec.

    digit_base_limit, when set, skips the digit-coverage certificate for
    bases above it (parameter sweeps cap the denominators they try).
    """
    merged = as_merged(spec)
    pos, neg, plus, minus = sign_split(merged)
    plus_finite = plus.hi is not None
    minus_finite = minus.lo is not None
    if not plus_finite and not minus_finite:
        return Verdict(
            VerdictKind.WHOLE_LINE,
            SummabilityClass.CONDITIONALLY_SUMMABLE,
            hull_lo=None,
            hull_hi=None,
        )
    if not plus_finite or not minus_finite:
        if not plus_finite:
            hull_lo, hull_hi = minus.lo, None
            hull_exact = minus.exact
        else:
            hull_lo, hull_hi = None, plus.hi
            hull_exact = plus.exact
        return Verdict(
            VerdictKind.UNBOUNDED_INTERVAL,
            SummabilityClass.UNCONDITIONALLY_UNSUMMABLE,
            hull_lo=hull_lo,
            hull_hi=hull_hi,
            hull_exact=hull_exact,
        )

    summability = SummabilityClass.ABSOLUTELY_SUMMABLE
    translation = minus.value if minus.exact else None
    hull_lo = minus.lo
    hull_hi = plus.hi
    hull_exact = minus.exact and plus.exact
    abs_spec = _combine_absolute(pos, neg.absolute())

    finite_count = abs_spec.term_count()
    if finite_count is not None:
        cover = build_cn(abs_spec, finite_count, cap=count_cap)
        count = cover.fattened.components
        return Verdict(
            VerdictKind.FINITE_UNION,
            summability,
            hull_lo=hull_lo,
            hull_hi=hull_hi,
            hull_exact=hull_exact,
            component_lower=count,
            component_upper=count,
            component_count=count,
            translation=translation,
        )

    profile = term_tail_profile(abs_spec, horizon)
    reordered = profile.reordered
    eventual = profile.eventual

    if eventual is not None and eventual.kind in (
        EventualKind.ALL_BOUND,
        EventualKind.EVENTUALLY_BOUND,
    ):
        after = eventual.after or 0
        exceed_count = eventual.exceed_count or 0
        if (
            isinstance(reordered.tail, PowerSumTail)
            and not reordered.prefix
            and reordered.tail.start == 1
        ):
            # Report the analytic power-sum bounds rather than the sharper
            # pointwise ones.
            lower_exp = profile.pseries_exceed_through
            upper_exp = profile.pseries_bound_from
        else:
            lower_exp = exceed_count
            upper_exp = after
        count = _exact_component_count(reordered, after, count_cap)
        return Verdict(
            VerdictKind.FINITE_UNION,
            summability,
            hull_lo=hull_lo,
            hull_hi=hull_hi,
            hull_exact=hull_exact,
            component_lower=2**lower_exp,
            component_upper=2**upper_exp,
            component_count=count,
            translation=translation,
            profile=profile,
        )

    if eventual is not None and eventual.kind is EventualKind.ALL_EXCEED:
        return Verdict(
            VerdictKind.CANTOR_SET,
            summability,
            certificate="AllExceed",
            hull_lo=hull_lo,
            hull_hi=hull_hi,
            hull_exact=hull_exact,
            translation=translation,
            known_infinitely_many=True,
            profile=profile,
        )

    analytic_io = (
        eventual is not None
        and eventual.kind is EventualKind.EXCEEDS_INFINITELY_OFTEN
    )

    lam = _two_ratio_contraction(abs_spec)
    if analytic_io and lam is not None and lam < QUARTER:
        return Verdict(
            VerdictKind.CANTOR_SET,
            summability,
            certificate="LambdaBelowQuarter",
            hull_lo=hull_lo,
            hull_hi=hull_hi,
            hull_exact=hull_exact,
            translation=translation,
            known_infinitely_many=True,
            profile=profile,
        )

    if analytic_io:
        try:
            base, numerators = digit_form(reordered)
        except NotDigitForm:
            base = None
        if base is not None and digit_base_limit is not None and base > digit_base_limit:
            base = None
        if base is not None:
            certificate = digit_coverage_test(base, numerators)
            if certificate is not None:
                strength = "Proven" if reordered == abs_spec else "PaperPresumed"
                return Verdict(
                    VerdictKind.SYMMETRIC_CANTORVAL,
                    summability,
                    certificate="DigitCoverage",
                    strength=strength,
                    hull_lo=hull_lo,
                    hull_hi=hull_hi,
                    hull_exact=hull_exact,
                    translation=translation,
                    known_infinitely_many=True,
                    profile=profile,
                    digit_certificate=certificate,
                )

    return Verdict(
        VerdictKind.UNDETERMINED,
        summability,
        hull_lo=hull_lo,
        hull_hi=hull_hi,
        hull_exact=hull_exact,
        translation=translation,
        known_infinitely_many=analytic_io,
        profile=profile,
    )


def _combine_absolute(pos: SequenceSpec, neg_abs: SequenceSpec) -> SequenceSpec:
    if neg_abs.term_count() == 0:
        return pos
    if pos.term_count() == 0:
        return neg_abs
    return SequenceSpec(
        (),
        MergeTail(
            (nonincreasing_reorder(pos), nonincreasing_reorder(neg_abs))
        ),
    )


def _two_ratio_contraction(spec: SequenceSpec) -> Optional[Fraction]:
    """Two-step contraction of a feasible mixed two-ratio spec, else None."""
    kind = spec.tail
    if spec.prefix or not isinstance(kind, MultiGeometricTail) or len(kind.ratios) != 2:
        return None
    if not is_nonincreasing(spec):
        return None
    a, b = kind.ratios
    mixed = (a > HALF) != (b > HALF)
    if not mixed:
        return None
    return kind.period_factor


def one_point_components(
    spec: SequenceSpec, depth: int, horizon: int = DEFAULT_HORIZON
) -> tuple:
    """Endpoints of the depth-n cover components, each a one-point component.

    Needs a gap pattern that recurs forever (term exceeds tail infinitely
    often on the reordering); then no endpoint ever gets absorbed into an
    interval, so each is a degenerate component of the subsum set.
    """
    if spec.negated:
        raise ValueError("one-point components are defined on positive specs")
    profile = term_tail_profile(spec, horizon)
    eventual = profile.eventual
    recurs = eventual is not None and eventual.kind in (
        EventualKind.ALL_EXCEED,
        EventualKind.EXCEEDS_INFINITELY_OFTEN,
    )
    if not recurs:
        raise NotApplicable("no recurring gap pattern was established")
    cover = build_cn(profile.reordered, depth)
    if not cover.tail_exact:
        raise NotApplicable("cover endpoints need exact tails")
    points = set()
    for piece in cover.fattened:
        points.add(piece.left)
        points.add(piece.right)
    return tuple(sorted(points))
