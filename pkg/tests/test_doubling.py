"""Doubled systems: form values, preservation sweeps, component growth."""

import math

import numpy as np
import pytest

from shiftorbits import (
    Component,
    DoubledVector,
    FormKind,
    Mode,
    ScaledVector,
    UndefinedNormError,
    WeightSequence,
    apply_doubled,
    component_growth_profile,
    evaluate_form,
    orbit_lognorm,
    verify_form_preservation,
)
from shiftorbits.kernels import logsumexp
from shiftorbits.shift import power_sweep_lognorms
from shiftorbits.vectors import allclose, random_scaled_vector

LN2 = math.log(2.0)

GEO = WeightSequence.geometric(1.0)
MIXED = WeightSequence.mixed()
KREIN = WeightSequence.krein(1.0)
ALL = [KREIN, GEO, MIXED]


def b(n):
    return ScaledVector.basis(n)


class TestApplyDoubled:
    def test_geometric_one_step(self):
        out = apply_doubled(GEO, DoubledVector(b(0), b(0)), 1)
        assert out.x.coeff_at(1) == pytest.approx(0.5, rel=1e-14)
        assert out.y.coeff_at(1) == pytest.approx(2.0, rel=1e-14)

    def test_identity(self):
        v = DoubledVector(b(2), b(-1))
        out = apply_doubled(MIXED, v, 0)
        assert allclose(out.x, v.x, rtol=0) and allclose(out.y, v.y, rtol=0)

    def test_mixed_second_component(self):
        out = apply_doubled(MIXED, DoubledVector(ScaledVector.zero(), b(0)), 9)
        assert out.x.is_zero
        assert out.y.coeff_at(9) == pytest.approx(10.0, rel=1e-14)


class TestForms:
    def test_j_form_diagonal(self):
        v = DoubledVector(b(0), b(0))
        assert evaluate_form(FormKind.J_FORM, v, v) == 2.0

    def test_j_neutral_first_component(self):
        v = DoubledVector(b(0), ScaledVector.zero())
        assert evaluate_form(FormKind.J_FORM, v, v) == 0

    def test_j_neutrality_random(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            v = DoubledVector(random_scaled_vector(rng), ScaledVector.zero())
            assert evaluate_form(FormKind.J_FORM, v, v) == 0

    def test_symplectic_vanishes_on_real_diagonal(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            v = DoubledVector(random_scaled_vector(rng), random_scaled_vector(rng))
            assert evaluate_form(FormKind.SYMPLECTIC, v, v) == 0

    def test_zero_vector_form(self):
        z = DoubledVector(ScaledVector.zero(), ScaledVector.zero())
        for kind in FormKind:
            assert evaluate_form(kind, z, z) == 0
            out = apply_doubled(GEO, z, 17)
            assert evaluate_form(kind, out, out) == 0


class TestFormPreservation:
    @pytest.mark.parametrize("seq", ALL)
    @pytest.mark.parametrize("kind", [FormKind.J_FORM, FormKind.SYMPLECTIC])
    def test_sweep(self, seq, kind):
        report = verify_form_preservation(seq, kind, samples=30, n_max=50, seed=8)
        assert report.passed, report
        assert report.max_violation <= 1e-10

    def test_sweep_agrees_with_direct_application(self):
        # the batched check must see exactly what stepwise evolution sees
        rng = np.random.default_rng(12)
        v = DoubledVector(random_scaled_vector(rng), random_scaled_vector(rng))
        w = DoubledVector(random_scaled_vector(rng), random_scaled_vector(rng))
        base = evaluate_form(FormKind.J_FORM, v, w)
        for n_steps in (-19, -1, 6, 33):
            ev = apply_doubled(GEO, v, n_steps)
            ew = apply_doubled(GEO, w, n_steps)
            assert evaluate_form(FormKind.J_FORM, ev, ew) == pytest.approx(
                base, rel=1e-12, abs=1e-12
            )

    def test_samples_validation(self):
        with pytest.raises(ValueError):
            verify_form_preservation(GEO, FormKind.J_FORM, samples=0, n_max=5, seed=1)


class TestSplitting:
    @pytest.mark.parametrize("seq", ALL)
    def test_doubled_norm_splits_into_component_orbits(self, seq):
        rng = np.random.default_rng(31)
        times = np.arange(-30, 31)
        for _ in range(5):
            v = DoubledVector(random_scaled_vector(rng), random_scaled_vector(rng))
            a = power_sweep_lognorms(seq, v.x, times, Mode.FORWARD)
            bb = power_sweep_lognorms(seq, v.y, times, Mode.ADJOINT_INVERSE)
            for n_steps, la, lb in zip(times, a, bb):
                evolved = apply_doubled(seq, v, int(n_steps))
                expected = 0.5 * logsumexp(np.array([2 * la, 2 * lb]))
                assert evolved.lognorm() == pytest.approx(expected, rel=1e-12, abs=1e-12)


class TestComponentGrowth:
    def test_first_component_matches_forward_orbit(self):
        record = component_growth_profile(MIXED, Component.FIRST, b(0), np.arange(0, 21))
        assert record.lognorm_at(9) == pytest.approx(-math.log(10.0), rel=1e-13)
        assert record.lognorm_at(0) == 0.0

    def test_second_component_matches_adjoint_inverse_orbit(self):
        record = component_growth_profile(MIXED, Component.SECOND, b(0), np.arange(0, 21))
        assert record.lognorm_at(9) == pytest.approx(math.log(10.0), rel=1e-13)

    @pytest.mark.parametrize("seq", ALL)
    @pytest.mark.parametrize(
        "component,mode", [(Component.FIRST, Mode.FORWARD), (Component.SECOND, Mode.ADJOINT_INVERSE)]
    )
    def test_unitary_equivalence_with_plain_shift(self, seq, component, mode):
        rng = np.random.default_rng(17)
        f = random_scaled_vector(rng)
        times = np.arange(-40, 41, 5)
        record = component_growth_profile(seq, component, f, times)
        for n_steps in times:
            assert record.lognorm_at(int(n_steps)) == pytest.approx(
                orbit_lognorm(seq, f, int(n_steps), mode), rel=1e-12, abs=1e-12
            )

    def test_zero_vector_rejected(self):
        with pytest.raises(UndefinedNormError):
            component_growth_profile(GEO, Component.FIRST, ScaledVector.zero(), np.arange(3))
