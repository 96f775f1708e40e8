"""Growth records, Lyapunov surrogates, class verdicts, witnesses, duality."""

import math

import numpy as np
import pytest

from shiftorbits import (
    GrowthClass,
    GrowthVerdict,
    Mode,
    ScaledVector,
    Verdict,
    WeightSequence,
    classify_growth,
    duality_check,
    krein_witness,
    lyapunov_estimate,
    orbit_lognorm,
    orbit_profile,
    slope_fit,
)
from shiftorbits.growth import window_lognorm_subadditive
from shiftorbits.vectors import random_scaled_vector

LN2 = math.log(2.0)
LN3 = math.log(3.0)

GEO = WeightSequence.geometric(1.0)
MIXED = WeightSequence.mixed()
KREIN = WeightSequence.krein(1.0)
ALL = [KREIN, GEO, MIXED]
FLAT = WeightSequence.custom(lambda n: 0.0, ratio_bound=0.0)  # unitary-like


def b(n):
    return ScaledVector.basis(n)


class TestOrbitProfile:
    def test_geometric_linear_decay(self):
        record = orbit_profile(GEO, b(0), 0, 10)
        np.testing.assert_allclose(record.lognorms, -record.times * LN2, atol=1e-13)

    def test_krein_checkpoints(self):
        record = orbit_profile(KREIN, b(0), 0, 127)
        assert record.lognorm_at(31) == pytest.approx(31 * LN3, rel=1e-12)
        assert record.lognorm_at(127) == pytest.approx(-127 * LN3, rel=1e-12)

    def test_zero_time_sample_is_vector_lognorm(self):
        f = ScaledVector.make([0, 2], [1.0, 1.0])
        record = orbit_profile(MIXED, f, -5, 5)
        assert record.lognorm_at(0) == pytest.approx(f.lognorm(), rel=1e-14)

    def test_strictly_increasing_times(self):
        record = orbit_profile(GEO, b(0), -10, 10, stride=3)
        assert (np.diff(record.times) > 0).all()

    def test_one_sided_needs_flag(self):
        with pytest.raises(ValueError):
            orbit_profile(GEO, b(0), 5, 10)
        record = orbit_profile(GEO, b(0), 5, 10, one_sided=True)
        assert not record.two_sided


class TestLyapunov:
    def test_geometric_exact_decay_rate(self):
        record = orbit_profile(GEO, b(0), 0, 200)
        lam_plus, _ = lyapunov_estimate(record, fit_window=0.5)
        assert lam_plus == pytest.approx(-LN2, rel=1e-12)

    def test_two_sided_geometric(self):
        record = orbit_profile(GEO, b(0), -200, 200)
        lam_plus, lam_minus = lyapunov_estimate(record, fit_window=0.5)
        assert lam_plus == pytest.approx(-LN2, rel=1e-12)
        assert lam_minus == pytest.approx(-LN2, rel=1e-12)

    def test_fast_growth_vector_rate(self):
        record = orbit_profile(GEO, ScaledVector.harmonic(10**4), 0, 50)
        lam_plus, _ = lyapunov_estimate(record, fit_window=0.5)
        assert lam_plus >= LN2 - math.log(51.0) / 100.0

    def test_constant_orbit(self):
        record = orbit_profile(FLAT, b(0), -50, 50)
        assert lyapunov_estimate(record) == (0.0, 0.0)

    def test_insufficient_samples(self):
        record = orbit_profile(GEO, b(0), -2, 200)
        with pytest.raises(ValueError):
            lyapunov_estimate(record)

    def test_slope_diagnostic(self):
        record = orbit_profile(GEO, b(0), 0, 100)
        assert slope_fit(record) == pytest.approx(-LN2, rel=1e-10)


class TestClassify:
    def test_mixed_forward_tends_to_zero(self):
        record = orbit_profile(MIXED, b(0), 0, 200)
        verdict = classify_growth(record, GrowthClass.S_ZERO, slack=1.0)
        assert verdict.verdict == Verdict.CONSISTENT
        assert verdict.margin <= 0

    def test_mixed_adjoint_inverse_unbounded(self):
        record = orbit_profile(MIXED, b(0), 0, 200, mode=Mode.ADJOINT_INVERSE)
        verdict = classify_growth(record, GrowthClass.S_BOUNDED, slack=1.0)
        assert verdict.verdict == Verdict.VIOLATED
        assert verdict.margin == pytest.approx(math.log(201.0) - 1.0, rel=1e-12)
        assert verdict.witness_time == 200

    def test_krein_splus_violated(self):
        record = orbit_profile(KREIN, b(0), 0, 511)
        verdict = classify_growth(record, GrowthClass.S_PLUS, rate=2.0, slack=10.0)
        assert verdict.verdict == Verdict.VIOLATED
        assert verdict.margin == pytest.approx(511 * (LN3 - LN2) - 10.0, rel=1e-9)
        assert verdict.witness_time == 511

    def test_splus_requires_rate(self):
        record = orbit_profile(GEO, b(0), 0, 100)
        with pytest.raises(ValueError):
            classify_growth(record, GrowthClass.S_PLUS)

    def test_verdict_margin_sign_invariant(self):
        with pytest.raises(ValueError):
            GrowthVerdict(
                GrowthClass.S_BOUNDED, None, Verdict.CONSISTENT, 1.0, 0, (0.0, 0.0), 10, 1.0
            )

    def test_needs_time_zero_sample(self):
        record = orbit_profile(GEO, b(0), 1, 50, one_sided=True)
        with pytest.raises(ValueError):
            classify_growth(record, GrowthClass.S_BOUNDED)

    def test_flat_orbit_not_s_zero_but_bounded(self):
        record = orbit_profile(FLAT, b(0), 0, 100)
        assert classify_growth(record, GrowthClass.S_ZERO, slack=1.0).verdict == Verdict.VIOLATED
        assert (
            classify_growth(record, GrowthClass.S_BOUNDED, slack=1.0).verdict
            == Verdict.CONSISTENT
        )

    @pytest.mark.parametrize("seq", ALL)
    @pytest.mark.parametrize("mode", list(Mode))
    @pytest.mark.parametrize("n", [-1, 0, 1])
    @pytest.mark.parametrize("slack", [1.0, 10.0])
    def test_coherence_chain_on_basis_battery(self, seq, mode, n, slack):
        # S0 consistent => S consistent => S+(a) consistent for every a > 1
        record = orbit_profile(seq, b(n), 0, 200, mode=mode)
        s0 = classify_growth(record, GrowthClass.S_ZERO, slack=slack)
        sb = classify_growth(record, GrowthClass.S_BOUNDED, slack=slack)
        if s0.verdict == Verdict.CONSISTENT:
            assert sb.verdict == Verdict.CONSISTENT
        for rate in (1.1, 2.0, 4.0):
            sp = classify_growth(record, GrowthClass.S_PLUS, rate=rate, slack=slack)
            if sb.verdict == Verdict.CONSISTENT:
                assert sp.verdict == Verdict.CONSISTENT

    @pytest.mark.parametrize("seq", ALL)
    def test_margin_ordering_universal(self, seq):
        # margin(S+, a) <= margin(S) for every record and every a > 1
        rng = np.random.default_rng(2)
        for _ in range(5):
            f = random_scaled_vector(rng)
            for mode in Mode:
                record = orbit_profile(seq, f, 0, 150, mode=mode)
                mb = classify_growth(record, GrowthClass.S_BOUNDED, slack=1.0).margin
                for rate in (1.5, 3.0):
                    mp = classify_growth(record, GrowthClass.S_PLUS, rate=rate, slack=1.0).margin
                    assert mp <= mb + 1e-12


class TestKreinWitness:
    def test_first_margins(self):
        rows = krein_witness(KREIN, 2)
        assert rows[0].margin == pytest.approx(31 * (LN3 - LN2), rel=1e-12)
        assert rows[1].margin == pytest.approx(511 * (LN3 - LN2), rel=1e-12)
        assert rows[0].trough_pos == pytest.approx(127 * (LN3 - LN2), rel=1e-12)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_four_sided_positive_and_increasing(self, c):
        rows = krein_witness(WeightSequence.krein(c), 4)
        margins = np.array(
            [[r.peak_pos, r.trough_pos, r.peak_neg, r.trough_neg] for r in rows]
        )
        assert (margins > 0).all()
        assert (np.diff(margins, axis=0) > 0).all()

    def test_requires_krein_family(self):
        with pytest.raises(ValueError):
            krein_witness(GEO, 2)

    def test_custom_rate_parameter(self):
        rows = krein_witness(KREIN, 1, c=0.5)
        assert rows[0].peak_pos == pytest.approx(31 * (LN3 - math.log(1.5)), rel=1e-12)


class TestDuality:
    def test_basis_diagonal_equality(self):
        report = duality_check(GEO, b(0), b(0), 20)
        assert report.holds
        assert report.lhs_log == 0.0
        assert abs(report.tightest_bound) <= 1e-12

    def test_orthogonal_pair_trivial(self):
        report = duality_check(MIXED, b(0), b(1), 20)
        assert report.holds and report.lhs_log == -math.inf

    def test_mixed_plus_state(self):
        f = ScaledVector.make([0, 1], [2**-0.5, 2**-0.5])
        report = duality_check(MIXED, f, f, 50)
        assert report.holds
        # brute-force check of the reported tightest bound
        n = report.tightest_time
        direct = orbit_lognorm(MIXED, f, n, Mode.FORWARD) + orbit_lognorm(
            MIXED, f, n, Mode.ADJOINT_INVERSE
        )
        assert report.tightest_bound == pytest.approx(direct, rel=1e-14)
        assert report.tightest_bound > 0  # strict gap for this pair

    @pytest.mark.parametrize("seq", ALL)
    def test_random_pairs(self, seq):
        rng = np.random.default_rng(6)
        for _ in range(25):
            x, y = random_scaled_vector(rng), random_scaled_vector(rng)
            assert duality_check(seq, x, y, 50).holds


class TestWindowSubadditivity:
    @pytest.mark.parametrize("seq", [GEO, MIXED])
    @pytest.mark.parametrize("mode", list(Mode))
    def test_exact_window_families(self, seq, mode):
        # windowed values equal the true norms for these families, so
        # submultiplicativity must hold
        window = (-300, 300)
        for n, m in ((1, 1), (3, 17), (40, 60), (25, 25)):
            assert window_lognorm_subadditive(seq, n, m, window, mode)


class TestExactnessOnGeometric:
    @pytest.mark.parametrize("c", [1.0, 2.0])
    def test_every_sample_matches_closed_form(self, c):
        seq = WeightSequence.geometric(c)
        rate = math.log(2 * c)
        for n in (-17, 0, 23):
            record = orbit_profile(seq, b(n), -100, 100)
            expected = (abs(n) - np.abs(n + record.times)) * rate
            np.testing.assert_allclose(record.lognorms, expected, atol=1e-12)
