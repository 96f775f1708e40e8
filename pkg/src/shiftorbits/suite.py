"""Acceptance battery: every verifiable claim at its pinned tolerance.

Each criterion function measures its own wall-clock time against the stated
budget and returns a CriterionResult; ``run_all`` executes the full battery.
tests/test_acceptance.py asserts these results one by one and the CLI
``suite`` subcommand prints them, so both front ends run identical checks.
"""

import math
import time
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .continuous import (
    ContinuousWeight,
    evolve,
    gaussian_bump,
    generator_consistency,
)
from .doubling import (
    Component,
    DoubledVector,
    FormKind,
    component_growth_profile,
    evaluate_form,
    verify_form_preservation,
)
from .growth import (
    GrowthClass,
    Verdict,
    classify_growth,
    duality_check,
    krein_witness,
    orbit_profile,
)
from .shift import (
    Mode,
    _power_logmults,
    orbit_lognorm,
    power_sweep_lognorms,
    spectral_radius_estimate,
    window_operator_lognorm,
)
from .vectors import ScaledVector, random_scaled_vector
from .weights import RATIO_ALPHA, CheckpointKind, FamilyKind, WeightSequence, checkpoint_indices

#: seed used by every stochastic acceptance check (and the CLI default)
DEFAULT_SEED = 1729

LN2 = math.log(2.0)
LN3 = math.log(3.0)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:02d} {self.name}: {status} ({self.seconds:.3f} s) {self.detail}"


def _result(number, name, budget, started, ok, detail):
    elapsed = time.perf_counter() - started
    return CriterionResult(
        number=number,
        name=name,
        passed=bool(ok) and elapsed < budget,
        detail=detail if elapsed < budget else detail + f" [over budget {budget} s]",
        seconds=elapsed,
        budget=budget,
    )


def criterion_01_peak_trough_identities():
    t0 = time.perf_counter()
    seq = WeightSequence.krein(1.0)
    peaks = checkpoint_indices(CheckpointKind.PEAK, 3)
    troughs = checkpoint_indices(CheckpointKind.TROUGH, 3)
    worst = 0.0
    ok = peaks == [31, 511, 8191] and troughs == [127, 2047, 32767]
    for nk in peaks:
        rel = abs(seq.log_weight(nk) - nk * LN3) / (nk * LN3)
        worst = max(worst, rel)
    for mk in troughs:
        rel = abs(seq.log_weight(mk) + mk * LN3) / (mk * LN3)
        worst = max(worst, rel)
    ok = ok and worst <= 1e-9
    return _result(1, "peak/trough identities", 0.1, t0, ok, f"max rel err {worst:.2e}")


def criterion_02_ratio_bound():
    t0 = time.perf_counter()
    seq = WeightSequence.krein(1.0)
    ns = np.arange(-100000, 100001 + 1, dtype=np.int64)
    ls = seq.log_weights(ns)
    max_ratio = float(np.abs(np.diff(ls)).max())
    bound = RATIO_ALPHA * LN3 + 1e-9
    ok = max_ratio <= bound
    return _result(
        2, "ratio bound", 0.5, t0, ok, f"max |dL| {max_ratio:.6f} <= {bound:.6f}"
    )


def criterion_03_splus_witness():
    t0 = time.perf_counter()
    seq = WeightSequence.krein(1.0)
    record = orbit_profile(seq, ScaledVector.basis(0), 0, 8191)
    verdict = classify_growth(record, GrowthClass.S_PLUS, rate=2.0, slack=10.0)
    ok = verdict.verdict == Verdict.VIOLATED and verdict.margin >= 3000.0
    rows = krein_witness(seq, 3)
    margins = np.array(
        [[r.peak_pos, r.trough_pos, r.peak_neg, r.trough_neg] for r in rows]
    )
    ok = ok and bool((margins > 0).all())
    ok = ok and bool((np.diff(margins, axis=0) > 0).all())
    return _result(
        3,
        "S+ violation witness",
        1.0,
        t0,
        ok,
        f"margin {verdict.margin:.1f} at N={verdict.witness_time}; "
        f"witness margins {['%.1f' % r.margin for r in rows]}",
    )


def criterion_04_geometric_closed_form():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for c in (1.0, 2.0):
        seq = WeightSequence.geometric(c)
        ns = np.arange(-50, 51, dtype=np.int64)
        n_values = np.arange(-100, 101, dtype=np.int64)
        dl = _power_logmults(seq, ns, n_values, Mode.FORWARD)
        expected = (np.abs(ns)[None, :] - np.abs(ns[None, :] + n_values[:, None])) * math.log(
            2 * c
        )
        worst = max(worst, float(np.abs(dl - expected).max()))
        est = spectral_radius_estimate(seq, 50, (-200, 200), Mode.FORWARD)
        ok = ok and abs(est - 2 * c) <= 1e-12 * (2 * c)
    ok = ok and worst <= 1e-12
    return _result(
        4, "geometric closed form", 1.0, t0, ok, f"max |dL - closed form| {worst:.2e}"
    )


def criterion_05_fast_growth_vector():
    t0 = time.perf_counter()
    seq = WeightSequence.geometric(1.0)
    f = ScaledVector.harmonic(10000)
    times = np.arange(-60, 61, dtype=np.int64)
    lognorms = power_sweep_lognorms(seq, f, times, Mode.FORWARD)
    at = {int(n): float(v) for n, v in zip(times, lognorms)}
    ok = True
    worst_sym = 0.0
    for n in range(1, 61):
        bound = n * LN2 - 0.5 * math.log(n + 1)
        ok = ok and at[n] >= bound
        sym = abs(at[n] - at[-n]) / max(1.0, abs(at[n]))
        worst_sym = max(worst_sym, sym)
    ok = ok and worst_sym <= 1e-12
    return _result(
        5,
        "fast-growth vector",
        1.0,
        t0,
        ok,
        f"symmetry err {worst_sym:.2e}; lognorm(60)={at[60]:.3f}",
    )


def criterion_06_mixed_norms():
    t0 = time.perf_counter()
    seq = WeightSequence.mixed()
    window = (-300, 300)
    worst = 0.0
    for n in range(1, 101):
        adj = window_operator_lognorm(seq, n, window, Mode.ADJOINT_INVERSE)
        fwd = window_operator_lognorm(seq, n, window, Mode.FORWARD)
        worst = max(worst, abs(adj - math.log(n + 1)), abs(fwd - n * LN2))
    est_fwd = spectral_radius_estimate(seq, 100, window, Mode.FORWARD)
    est_adj = spectral_radius_estimate(seq, 100, window, Mode.ADJOINT_INVERSE)
    ok = worst <= 1e-12
    ok = ok and abs(est_fwd - 2.0) <= 1e-12
    ok = ok and est_adj <= 1.05 and abs(est_adj - 101.0 ** 0.01) <= 1e-12
    return _result(
        6,
        "mixed-family norms",
        1.0,
        t0,
        ok,
        f"max log err {worst:.2e}; r_fwd {est_fwd:.12f}, r_adj {est_adj:.4f}",
    )


def criterion_07_doubled_growth_classes():
    t0 = time.perf_counter()
    seq = WeightSequence.mixed()
    times = np.arange(0, 501, dtype=np.int64)
    slack = 1.0
    ok = True
    for n in range(-5, 6):
        record = component_growth_profile(seq, Component.FIRST, ScaledVector.basis(n), times)
        verdict = classify_growth(record, GrowthClass.S_ZERO, slack=slack)
        ok = ok and verdict.verdict == Verdict.CONSISTENT
    record = component_growth_profile(seq, Component.SECOND, ScaledVector.basis(0), times)
    verdict = classify_growth(record, GrowthClass.S_BOUNDED, slack=slack)
    required = math.log(501.0) - slack
    ok = (
        ok
        and verdict.verdict == Verdict.VIOLATED
        and verdict.margin >= required - 1e-9
    )
    return _result(
        7,
        "doubled growth classes",
        1.0,
        t0,
        ok,
        f"S margin {verdict.margin:.4f} >= {required:.4f}",
    )


def criterion_08_form_preservation():
    t0 = time.perf_counter()
    families = [WeightSequence.krein(1.0), WeightSequence.geometric(1.0), WeightSequence.mixed()]
    worst = 0.0
    ok = True
    for seq in families:
        for kind in (FormKind.J_FORM, FormKind.SYMPLECTIC):
            report = verify_form_preservation(seq, kind, samples=100, n_max=50, seed=DEFAULT_SEED)
            worst = max(worst, report.max_violation)
            ok = ok and report.passed
    # J-neutrality of H + {0}: exact zeros
    rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(20):
        v = DoubledVector(random_scaled_vector(rng), ScaledVector.zero())
        ok = ok and evaluate_form(FormKind.J_FORM, v, v) == 0
    return _result(
        8, "form preservation", 2.0, t0, ok, f"max rel violation {worst:.2e}"
    )


def criterion_09_duality():
    t0 = time.perf_counter()
    families = [WeightSequence.krein(1.0), WeightSequence.geometric(1.0), WeightSequence.mixed()]
    ok = True
    worst = -math.inf
    for seq in families:
        rng = np.random.default_rng(DEFAULT_SEED)
        for _ in range(100):
            x = random_scaled_vector(rng)
            y = random_scaled_vector(rng)
            report = duality_check(seq, x, y, n_max=50)
            ok = ok and report.holds
            worst = max(worst, report.max_violation)
    return _result(
        9, "duality inequality", 1.0, t0, ok, f"max log-form violation {worst:.2e}"
    )


def criterion_10_continuous_model():
    t0 = time.perf_counter()
    ok = True
    worst_cocycle = 0.0
    for w in (ContinuousWeight.oscillating(), ContinuousWeight.geometric(), ContinuousWeight.mixed()):
        f = gaussian_bump(-5.0, 0.6, -20.0, 20.0, 2.0 ** -7)
        for t, tau in ((1.25, -0.75), (2.0, 1.5), (-1.0, 0.5)):
            g1 = evolve(w, evolve(w, f, tau), t)
            g2 = evolve(w, f, t + tau)
            lo = max(g1.data_lo, g2.data_lo)
            hi = min(g1.data_hi, g2.data_hi)
            a = g1.materialized()[lo:hi]
            b = g2.materialized()[lo:hi]
            ref = max(float(np.abs(a).max()), float(np.abs(b).max()))
            rel = float(np.abs(a - b).max()) / ref
            worst_cocycle = max(worst_cocycle, rel)
        residuals = []
        for level in range(5):
            dx = 2.0 ** (-4 - level)
            bump = gaussian_bump(-5.0, 0.6, -12.0, 2.0, dx)
            residuals.append(generator_consistency(w, bump, dx, dx))
        ratios = [residuals[i] / residuals[i + 1] for i in range(4)]
        ok = ok and all(1.7 <= r <= 2.3 for r in ratios)
    ok = ok and worst_cocycle <= 1e-12
    return _result(
        10,
        "continuous model",
        5.0,
        t0,
        ok,
        f"cocycle rel err {worst_cocycle:.2e}; last ratios {['%.2f' % r for r in ratios]}",
    )


def _oracle_log_weight(kind, c, n):
    """Independent extended-precision weight: direct formula, no kernels."""
    a = mp.mpf(abs(n))
    if kind == FamilyKind.KREIN:
        return mp.power(c + 2, a * mp.sin(mp.pi / 2 * mp.log(a + 1) / mp.log(2)))
    if kind == FamilyKind.GEOMETRIC:
        return mp.power(2 * c, -a)
    if n <= 0:
        return mp.power(2, n)
    return 1 / mp.mpf(n + 1)


def dense_orbit_lognorm(kind, c, f: ScaledVector, n_steps: int, mode: Mode) -> float:
    """Brute-force oracle for ln ||U^N f||: dense coefficient array over the
    support hull, direct weight products in extended precision."""
    lo, hi = int(f.support.min()), int(f.support.max())
    dense = {n: 0j for n in range(lo, hi + 1)}
    for n, coef in zip(f.support, f.coeffs):
        dense[int(n)] = complex(coef)
    with mp.workdps(40):
        total = mp.mpf(0)
        for n, coef in dense.items():
            if coef == 0:
                continue
            u_n = _oracle_log_weight(kind, c, n)
            u_shift = _oracle_log_weight(kind, c, n + n_steps)
            ratio = u_shift / u_n if mode == Mode.FORWARD else u_n / u_shift
            total += abs(coef) ** 2 * ratio**2
        return float(0.5 * mp.log(total)) + f.log_scale


def criterion_11_oracle_equivalence():
    t0 = time.perf_counter()
    ok = True
    worst = 0.0
    families = [
        (FamilyKind.KREIN, 1.0, WeightSequence.krein(1.0)),
        (FamilyKind.GEOMETRIC, 1.0, WeightSequence.geometric(1.0)),
        (FamilyKind.MIXED, 1.0, WeightSequence.mixed()),
    ]
    for kind, c, seq in families:
        rng = np.random.default_rng(DEFAULT_SEED)
        for _ in range(50):
            f = random_scaled_vector(rng, index_range=(-20, 20))
            for n_steps in (-20, -7, -1, 0, 1, 7, 20):
                for mode in (Mode.FORWARD, Mode.ADJOINT_INVERSE):
                    got = orbit_lognorm(seq, f, n_steps, mode)
                    want = dense_orbit_lognorm(kind, c, f, n_steps, mode)
                    err = abs(got - want) / max(1.0, abs(want))
                    worst = max(worst, err)
        ok = ok and worst <= 1e-10
    return _result(
        11, "oracle equivalence", 2.0, t0, ok, f"max rel err vs oracle {worst:.2e}"
    )


ALL_CRITERIA = [
    criterion_01_peak_trough_identities,
    criterion_02_ratio_bound,
    criterion_03_splus_witness,
    criterion_04_geometric_closed_form,
    criterion_05_fast_growth_vector,
    criterion_06_mixed_norms,
    criterion_07_doubled_growth_classes,
    criterion_08_form_preservation,
    criterion_09_duality,
    criterion_10_continuous_model,
    criterion_11_oracle_equivalence,
]


def run_all():
    return [fn() for fn in ALL_CRITERIA]
