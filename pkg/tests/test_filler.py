"""Greedy representation of targets by divergent series."""
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import subsums as S


def test_fill_harmonic_examples():
    result = S.fill(S.PRESETS["harmonic"], F(5, 6), F(1, 10**6))
    assert result.runs == ((2, 3),)
    assert result.gaps == (F(0),)
    assert result.achieved == F(5, 6)
    assert not result.hit_round_limit

    result = S.fill(S.PRESETS["harmonic"], F(1, 2), F(1, 10**6))
    assert result.runs == ((2, 2),)
    assert result.gaps == (F(0),)


def test_fill_harmonic_unit_target():
    result = S.fill(S.PRESETS["harmonic"], F(1), F(1, 10**6))
    assert result.runs[0] == (1, 1)
    assert result.gaps[0] == F(0)
    assert result.achieved == F(1)


def test_fill_gap_halves_each_round():
    result = S.fill(S.PRESETS["harmonic"], F(7, 9), F(1, 10**9))
    gap = F(7, 9)
    for next_gap in result.gaps:
        assert next_gap < gap / 2 or next_gap == 0
        gap = next_gap
        if gap == 0:
            break
    assert result.gaps[-1] < F(1, 10**9)


def test_fill_exact_bookkeeping():
    target = F(113, 355)
    result = S.fill(S.PRESETS["harmonic"], target, F(1, 10**8))
    total = sum(
        (sum(F(1, k) for k in range(lo, hi + 1)) for lo, hi in result.runs),
        F(0),
    )
    assert total == result.achieved
    assert target - result.achieved == result.gaps[-1]
    assert result.gaps[-1] >= 0


def test_fill_runs_are_disjoint_and_increasing():
    result = S.fill(S.PRESETS["harmonic"], F(3, 2), F(1, 10**8))
    last_hi = 0
    for lo, hi in result.runs:
        assert lo > last_hi
        assert hi >= lo
        last_hi = hi


def test_fill_first_index_maximal():
    # each run starts at the first unused index whose term fits the gap
    spec = S.PRESETS["harmonic"]
    result = S.fill(spec, F(5, 7), F(1, 10**6))
    gap = F(5, 7)
    lowest = 1
    for lo, hi in result.runs:
        assert F(1, lo) <= gap
        if lo > lowest:
            assert F(1, lo - 1) > gap
        run = sum(F(1, k) for k in range(lo, hi + 1))
        assert run <= gap
        assert run + F(1, hi + 1) > gap
        gap -= run
        lowest = hi + 1


def test_fill_rejects_convergent():
    with pytest.raises(S.NotDivergent):
        S.fill(S.PRESETS["thirds"], F(1, 4), F(1, 100))


def test_fill_rejects_bad_inputs():
    with pytest.raises(ValueError):
        S.fill(S.PRESETS["harmonic"], F(0), F(1, 100))
    with pytest.raises(ValueError):
        S.fill(S.PRESETS["harmonic"], F(1, 2), F(0))
    with pytest.raises(ValueError):
        S.fill(S.power_sum(1, negated=True), F(1, 2), F(1, 100))


def test_fill_round_limit_flag():
    result = S.fill(S.PRESETS["harmonic"], F(355, 113), F(1, 10**30), max_rounds=3)
    assert result.hit_round_limit
    assert len(result.runs) == 3
    assert result.gaps[-1] >= F(1, 10**30)


def test_fill_shifted_harmonic():
    spec = S.power_sum(1, start=3)
    result = S.fill(spec, F(3, 2), F(1, 1000))
    assert result.gaps[-1] < F(1, 1000)
    assert result.runs[0][0] == 1
    assert spec.term(1) == F(1, 3)
    total = sum(
        (sum(spec.term(k) for k in range(lo, hi + 1)) for lo, hi in result.runs),
        F(0),
    )
    assert total == result.achieved


@settings(max_examples=25, deadline=None)
@given(
    st.fractions(min_value=F(1, 100), max_value=F(9, 2), max_denominator=100),
)
def test_fill_hits_tolerance(target):
    result = S.fill(S.PRESETS["harmonic"], target, F(1, 10**6))
    assert not result.hit_round_limit
    assert 0 <= target - result.achieved < F(1, 10**6)
