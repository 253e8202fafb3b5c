"""Greedy subsequence packing for divergent positive sequences.

Any target r > 0 is a subsequence sum when the terms are positive, tend
to zero and diverge. Rounds work on the exact residual gap g: start at
the first unused index whose term fits in g, then take consecutive terms
while they fit. The term poking out past the run bounds the new gap, and
a two-case argument (start term above or below g/2) shows each round at
least halves the gap, so finitely many rounds reach any eps.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotDivergent
from .rational import as_fraction
from .sequences import SequenceSpec, is_nonincreasing

DEFAULT_MAX_ROUNDS = 64


@dataclass(frozen=True)
class FillResult:
    """Certified packing of a target by runs of consecutive terms.

    runs holds inclusive index pairs (start, end), strictly increasing
    and disjoint. gaps holds the exact residual after each round, so
    achieved + gaps[-1] == target and consecutive gaps at least halve.
    hit_round_limit marks a result cut off by max_rounds before the gap
    dropped below eps.
    """

    runs: tuple
    gaps: tuple
    achieved: Fraction
    target: Fraction
    hit_round_limit: bool = False


def _first_index_fitting(spec: SequenceSpec, lowest: int, gap: Fraction) -> int:
    """Smallest index >= lowest whose term is at most gap.

    Terms are non-increasing and tend to zero, so the predicate is
    monotone and a doubling search plus bisection finds the boundary.
    """
    if spec.term(lowest) <= gap:
        return lowest
    hi = lowest + 1
    while spec.term(hi) > gap:
        hi = 2 * hi
    lo = lowest
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if spec.term(mid) <= gap:
            hi = mid
        else:
            lo = mid
    return hi


def fill(
    spec: SequenceSpec,
    target,
    eps,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> FillResult:
    """Pack target to within eps by greedy runs of consecutive terms."""
    target = as_fraction(target)
    eps = as_fraction(eps)
    if target <= 0:
        raise ValueError("target must be positive")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    if spec.negated:
        raise ValueError("fill needs a positive spec")
    if not spec.divergent:
        raise NotDivergent("fill needs a divergent positive sequence")
    if not is_nonincreasing(spec):
        raise ValueError("fill needs a non-increasing spec")

    runs = []
    gaps = []
    achieved = Fraction(0)
    gap = target
    next_free = 1
    while gap >= eps and len(runs) < max_rounds:
        start = _first_index_fitting(spec, next_free, gap)
        index = start
        run_sum = Fraction(0)
        while True:
            term = spec.term(index)
            if run_sum + term > gap:
                break
            run_sum += term
            index += 1
        end = index - 1
        achieved += run_sum
        gap -= run_sum
        runs.append((start, end))
        gaps.append(gap)
        next_free = end + 1
        if gap == 0:
            break
    return FillResult(
        runs=tuple(runs),
        gaps=tuple(gaps),
        achieved=achieved,
        target=target,
        hit_round_limit=gap >= eps,
    )
