"""Classification: profiles, verdicts, certificates, digit machinery."""
from fractions import Fraction as F

import pytest

import subsums as S
from subsums.classify import EventualKind

EX = S.TermTailRelation.TERM_EXCEEDS_TAIL
BD = S.TermTailRelation.TAIL_BOUNDS_TERM


def test_profile_geometric_all_exceed():
    profile = S.term_tail_profile(S.PRESETS["thirds"], horizon=10)
    assert all(rel is EX for rel in profile.comparisons)
    assert profile.eventual.kind is EventualKind.ALL_EXCEED
    assert profile.eventual.proof == "geometric-ratio"


def test_profile_geometric_all_bound():
    profile = S.term_tail_profile(S.PRESETS["halves"], horizon=10)
    assert all(rel is BD for rel in profile.comparisons)
    assert profile.eventual.kind is EventualKind.ALL_BOUND
    assert profile.eventual.exceed_count == 0


def test_profile_prefixed_geometric_eventually_bound():
    spec = S.geometric(F(1, 2), F(1, 2), prefix=(F(2),))
    profile = S.term_tail_profile(spec, horizon=8)
    assert profile.comparisons[0] is EX
    assert all(rel is BD for rel in profile.comparisons[1:])
    assert profile.eventual.kind is EventualKind.EVENTUALLY_BOUND
    assert profile.eventual.after == 1
    assert profile.eventual.exceed_count == 1


def test_profile_pseries_thresholds():
    profile = S.term_tail_profile(S.power_sum(2), horizon=8)
    assert profile.pseries_exceed_through == 1
    assert profile.pseries_bound_from == 2
    assert profile.eventual.kind is EventualKind.EVENTUALLY_BOUND
    assert profile.eventual.after == 1
    assert profile.comparisons[0] is EX
    assert all(rel is BD for rel in profile.comparisons[1:])
    assert profile.eventual.proof == "pseries-monotone"


def test_pseries_threshold_brackets_direct_comparisons():
    # f_p is strictly increasing; N is the first index where it clears
    # p - 1, and direct comparisons agree around the boundary.
    for p in (2, 3, 4, 5):
        profile = S.term_tail_profile(S.power_sum(p), horizon=12)
        n_threshold = profile.pseries_bound_from
        k_threshold = profile.pseries_exceed_through
        assert k_threshold == p - 1

        def f(x):
            return (x + 1) * F(x, x + 1) ** p

        assert f(n_threshold) >= p - 1
        if n_threshold > 1:
            assert f(n_threshold - 1) < p - 1
        for n, rel in enumerate(profile.comparisons, start=1):
            if n <= k_threshold:
                assert rel is EX
            if n >= n_threshold:
                assert rel is BD


def test_profile_multigeometric_period():
    profile = S.term_tail_profile(S.PRESETS["gn"], horizon=12)
    assert profile.eventual.kind is EventualKind.EXCEEDS_INFINITELY_OFTEN
    assert profile.eventual.proof == "multigeometric-period"
    for n, rel in enumerate(profile.comparisons, start=1):
        assert rel is (EX if n % 2 == 0 else BD)


def test_profile_merge_window_matches_pointwise():
    reordered = S.nonincreasing_reorder(S.PRESETS["kenyon"])
    profile = S.term_tail_profile(reordered, horizon=12)
    assert profile.eventual.kind is EventualKind.EXCEEDS_INFINITELY_OFTEN
    assert profile.eventual.proof == "multigeometric-period"
    # odd positions hold the big strand: 3/2, then 3/8 vs 11/24 bounds,
    # 1/4 vs 5/24 exceeds, repeating with period 2
    assert profile.comparisons[0] is EX
    for n in range(2, 13):
        expected = BD if n % 2 == 0 else EX
        assert profile.comparisons[n - 1] is expected


def test_profile_merged_all_bound():
    spec = S.SequenceSpec(
        (),
        S.MergeTail((S.geometric(F(1, 4), F(1, 4)), S.geometric(F(1, 2), F(1, 4)))),
    )
    profile = S.term_tail_profile(spec, horizon=10)
    assert profile.eventual.kind is EventualKind.ALL_BOUND
    assert all(rel is BD for rel in profile.comparisons)


def test_profile_rejects_negated():
    with pytest.raises(ValueError):
        S.term_tail_profile(S.geometric(F(1, 2), F(1, 2), negated=True))


def test_classify_thirds_cantor():
    verdict = S.classify(S.PRESETS["thirds"])
    assert verdict.kind is S.VerdictKind.CANTOR_SET
    assert verdict.certificate == "AllExceed"
    assert (verdict.hull_lo, verdict.hull_hi) == (F(0), F(1, 2))
    assert verdict.known_infinitely_many


def test_classify_halves_single_interval():
    verdict = S.classify(S.PRESETS["halves"])
    assert verdict.kind is S.VerdictKind.FINITE_UNION
    assert verdict.component_count == 1
    assert (verdict.component_lower, verdict.component_upper) == (1, 1)
    assert (verdict.hull_lo, verdict.hull_hi) == (F(0), F(1))


def test_classify_prefixed_halves():
    verdict = S.classify(S.geometric(F(1, 2), F(1, 2), prefix=(F(2),)))
    assert verdict.kind is S.VerdictKind.FINITE_UNION
    assert verdict.component_count == 2
    assert (verdict.hull_lo, verdict.hull_hi) == (F(0), F(3))
    assert verdict.hull_exact


def test_classify_bigeometric_lambda_certificate():
    verdict = S.classify(S.PRESETS["ratios-2-5-3-5"])
    assert verdict.kind is S.VerdictKind.CANTOR_SET
    assert verdict.certificate == "LambdaBelowQuarter"


def test_classify_gn_cantorval_proven():
    verdict = S.classify(S.PRESETS["gn"])
    assert verdict.kind is S.VerdictKind.SYMMETRIC_CANTORVAL
    assert verdict.certificate == "DigitCoverage"
    assert verdict.strength == "Proven"
    assert verdict.digit_certificate.base == 4
    assert verdict.digit_certificate.numerators == (3, 2)
    assert verdict.digit_certificate.digits == (0, 2, 3, 5)


def test_classify_kenyon_cantorval_presumed():
    verdict = S.classify(S.PRESETS["kenyon"])
    assert verdict.kind is S.VerdictKind.SYMMETRIC_CANTORVAL
    assert verdict.strength == "PaperPresumed"
    assert verdict.digit_certificate.digits == (0, 1, 6, 7)


def test_classify_kenyon_lambda_quarter_no_cantor_certificate():
    verdict = S.classify(S.PRESETS["kenyon"])
    assert verdict.certificate != "LambdaBelowQuarter"
    gn = S.classify(S.PRESETS["gn"])
    assert gn.certificate != "LambdaBelowQuarter"


def test_classify_pseries_bounds():
    verdict = S.classify(S.power_sum(2))
    assert verdict.kind is S.VerdictKind.FINITE_UNION
    assert (verdict.component_lower, verdict.component_upper) == (2, 4)
    assert verdict.component_count == 2
    assert not verdict.hull_exact
    assert verdict.hull_lo == 0
    # enclosure bound, not the true sum: must dominate zeta(2)
    assert F(8, 5) < verdict.hull_hi <= F(2)


def test_classify_harmonic_half_line():
    verdict = S.classify(S.PRESETS["harmonic"])
    assert verdict.kind is S.VerdictKind.UNBOUNDED_INTERVAL
    assert (verdict.hull_lo, verdict.hull_hi) == (F(0), None)


def test_classify_negative_divergent_half_line():
    merged = S.MergedSpec((
        S.geometric(F(1, 2), F(1, 2)),
        S.power_sum(1, negated=True),
    ))
    verdict = S.classify(merged)
    assert verdict.kind is S.VerdictKind.UNBOUNDED_INTERVAL
    assert (verdict.hull_lo, verdict.hull_hi) == (None, F(1))


def test_classify_conditionally_summable_whole_line():
    merged = S.MergedSpec((S.power_sum(1), S.power_sum(1, start=2, negated=True)))
    verdict = S.classify(merged)
    assert verdict.kind is S.VerdictKind.WHOLE_LINE
    assert (verdict.hull_lo, verdict.hull_hi) == (None, None)


def test_classify_signed_halves():
    signed = S.MergedSpec((
        S.geometric(F(1, 4), F(1, 4)),
        S.geometric(F(1, 2), F(1, 4), negated=True),
    ))
    verdict = S.classify(signed)
    assert verdict.kind is S.VerdictKind.FINITE_UNION
    assert verdict.component_count == 1
    assert (verdict.hull_lo, verdict.hull_hi) == (F(-2, 3), F(1, 3))
    assert verdict.translation == F(-2, 3)


def test_classify_finite_specs():
    verdict = S.classify(S.finite((F(1), F(1, 2))))
    assert verdict.kind is S.VerdictKind.FINITE_UNION
    assert verdict.component_count == 4
    verdict = S.classify(S.EMPTY)
    assert verdict.kind is S.VerdictKind.FINITE_UNION
    assert verdict.component_count == 1
    assert (verdict.hull_lo, verdict.hull_hi) == (F(0), F(0))


def test_classify_undetermined_in_open_region():
    spec = S.multi_geometric((F(4, 11), F(6, 11)), F(1))
    verdict = S.classify(spec)
    assert verdict.kind is S.VerdictKind.UNDETERMINED
    assert verdict.known_infinitely_many
    lam = (1 - F(4, 11)) * (1 - F(6, 11))
    assert lam > F(1, 4)


def test_classify_scaling_invariance():
    for c in (F(3), F(1, 7), F(22, 7)):
        assert (
            S.classify(S.geometric(F(1, 3) * c, F(1, 3))).kind
            is S.VerdictKind.CANTOR_SET
        )
        assert (
            S.classify(S.multi_geometric((F(9, 20), F(6, 11)), F(5, 3) * c)).kind
            is S.VerdictKind.SYMMETRIC_CANTORVAL
        )
        assert (
            S.classify(S.multi_geometric((F(2, 5), F(3, 5)), c)).kind
            is S.VerdictKind.CANTOR_SET
        )


def test_classify_propagates_indeterminate():
    near_total = F(16449340668482264365, 10**19)
    spec = S.power_sum(2, prefix=(near_total,))
    with pytest.raises(S.IndeterminateComparison):
        S.classify(spec)


def test_digit_form_reductions():
    assert S.digit_form(S.PRESETS["gn"]) == (4, (3, 2))
    assert S.digit_form(S.nonincreasing_reorder(S.PRESETS["kenyon"])) == (4, (6, 1))
    assert S.digit_form(S.PRESETS["thirds"]) == (3, (1,))
    with pytest.raises(S.NotDigitForm):
        S.digit_form(S.PRESETS["ratios-2-5-3-5"])  # 6/25 is not 1/base
    with pytest.raises(S.NotDigitForm):
        S.digit_form(S.power_sum(2))


def test_digit_coverage_examples():
    cert = S.digit_coverage_test(4, (6, 1))
    assert cert is not None
    assert cert.digits == (0, 1, 6, 7)
    assert sorted(d % 4 for d in cert.digits) == [0, 1, 2, 3]

    cert = S.digit_coverage_test(4, (3, 2))
    assert cert is not None
    assert cert.digits == (0, 2, 3, 5)

    assert S.digit_coverage_test(3, (1,)) is None

    with pytest.raises(ValueError):
        S.digit_coverage_test(1, (1,))
    with pytest.raises(ValueError):
        S.digit_coverage_test(4, (0,))


def test_digit_base_limit_downgrades_to_undetermined():
    verdict = S.classify(S.PRESETS["gn"], digit_base_limit=3)
    assert verdict.kind is S.VerdictKind.UNDETERMINED
    assert verdict.known_infinitely_many


def test_one_point_components_thirds():
    points = S.one_point_components(S.PRESETS["thirds"], 1)
    assert points == (F(0), F(1, 6), F(1, 3), F(1, 2))
    for x in points:
        assert S.membership_probe(S.PRESETS["thirds"], x, 10).in_all_tested


def test_one_point_components_gn_extremes():
    points = S.one_point_components(S.PRESETS["gn"], 2)
    assert F(0) in points
    assert F(5, 3) in points


def test_one_point_components_not_applicable():
    with pytest.raises(S.NotApplicable):
        S.one_point_components(S.PRESETS["halves"], 2)


def test_cascade_soundness_cantor_counts():
    # AllExceed certificates mean every depth splits fully.
    for spec in (S.PRESETS["thirds"], S.geometric(F(2, 5), F(2, 5))):
        verdict = S.classify(spec)
        assert verdict.kind is S.VerdictKind.CANTOR_SET
        assert verdict.certificate == "AllExceed"
        for n in range(0, 17, 4):
            assert S.build_cn(spec, n).fattened.components == 2**n


def test_finite_union_counts_stay_constant():
    checks = [
        (S.PRESETS["halves"], 1),
        (S.geometric(F(1, 2), F(1, 2), prefix=(F(2),)), 2),
    ]
    for spec, expected in checks:
        for n in range(2, 11, 2):
            assert S.build_cn(spec, n).fattened.components == expected


def test_pseries_component_count_within_bounds():
    # inner and outer agree from depth 2 on, pinning the count within
    # the analytic 2^K..2^N bracket
    for n in (2, 3, 4):
        result = S.build_cn(S.power_sum(2), n)
        assert result.inner.components == result.fattened.components == 2
        assert 2 <= result.fattened.components <= 4
