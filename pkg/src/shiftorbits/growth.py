"""Orbit growth profiling, Lyapunov surrogates and growth-class evidence.

The growth classes of an invertible operator T are

    S0(T) = {x : ||T^N x|| -> 0},
    S(T)  = {x : sup_N ||T^N x|| < inf},
    S+(T) = {x : for every a > 1 there is C with ||T^N x|| <= C a^N},

all over N >= 0.  None of them is decidable from finitely many samples, so
verdicts here are explicitly finite-horizon *evidence*: a VIOLATED verdict is
conclusive against the fixed bound C = e^slack * ||f|| (one witness sample
suffices), a CONSISTENT verdict is not a membership proof.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .shift import Mode, power_sweep_lognorms, window_operator_lognorm
from .vectors import ScaledVector, inner
from .weights import CheckpointKind, FamilyKind, WeightSequence, checkpoint_indices

#: default evidence slack in natural-log units: generous against constant
#: factors, negligible against checkpoint margins of order 1e3
DEFAULT_SLACK = 10.0


@dataclass(frozen=True, eq=False)
class OrbitRecord:
    """Sampled map N -> ln ||T^N f|| with provenance metadata."""

    system: str
    vector: str
    times: np.ndarray  # int64, strictly increasing
    lognorms: np.ndarray
    two_sided: bool

    def __post_init__(self):
        if self.times.size != self.lognorms.size:
            raise ValueError("times and lognorms must have equal length")
        if self.times.size and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    def lognorm_at(self, n) -> float:
        idx = np.searchsorted(self.times, n)
        if idx >= self.times.size or self.times[idx] != n:
            raise KeyError(f"no sample at N={n}")
        return float(self.lognorms[idx])

    def side(self, positive=True):
        """(times, lognorms) restricted to N > 0 or N < 0."""
        mask = self.times > 0 if positive else self.times < 0
        return self.times[mask], self.lognorms[mask]


class GrowthClass(Enum):
    S_ZERO = "s0"
    S_BOUNDED = "s"
    S_PLUS = "s+"


class Verdict(Enum):
    CONSISTENT = "consistent"
    VIOLATED = "violated"


@dataclass(frozen=True)
class GrowthVerdict:
    """Finite-horizon evidence outcome for one growth-class test.

    margin > 0 iff verdict is VIOLATED; for S_PLUS/S_BOUNDED the margin is
    the witness excess over the e^slack bound, in log units.
    """

    kind: GrowthClass
    rate: Optional[float]
    verdict: Verdict
    margin: float
    witness_time: Optional[int]
    fitted: tuple
    horizon: int
    slack: float

    def __post_init__(self):
        if (self.margin > 0) != (self.verdict == Verdict.VIOLATED):
            raise ValueError("margin must be positive exactly for VIOLATED verdicts")


def orbit_profile(
    seq: WeightSequence,
    f: ScaledVector,
    n_min: int,
    n_max: int,
    stride: int = 1,
    mode: Mode = Mode.FORWARD,
    one_sided: bool = False,
    label: Optional[str] = None,
) -> OrbitRecord:
    """Sample ln ||T^N f|| over N = n_min, n_min+stride, ..., <= n_max.

    Uses the closed-form diagonal path (cost O(support) per sample), never
    iterated application.
    """
    if n_min > n_max:
        raise ValueError("n_min must be <= n_max")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    two_sided = n_min <= 0 <= n_max
    if not two_sided and not one_sided:
        raise ValueError("one-sided range requires one_sided=True")
    times = np.arange(n_min, n_max + 1, stride, dtype=np.int64)
    lognorms = power_sweep_lognorms(seq, f, times, mode)
    return OrbitRecord(
        system=label or f"{seq.label}/{mode.value}",
        vector=f"support[{f.support.min()},{f.support.max()}]" if not f.is_zero else "0",
        times=times,
        lognorms=lognorms,
        two_sided=two_sided,
    )


def lyapunov_estimate(record: OrbitRecord, fit_window: float = 0.25):
    """Finite-horizon Lyapunov surrogate (lam_plus, lam_minus).

    lam_plus is the max of lognorm(N)/N over the last ``fit_window`` fraction
    of positive-time samples (a limsup surrogate, per the definition of the
    upper growth index); lam_minus mirrors it over negative times with |N| in
    the denominator.  A side that is absent yields nan; a requested side with
    fewer than 3 samples raises.
    """
    if not 0 < fit_window <= 1:
        raise ValueError("fit_window must be in (0, 1]")
    out = []
    for positive in (True, False):
        times, lognorms = record.side(positive)
        if times.size == 0:
            out.append(math.nan)
            continue
        if times.size < 3:
            raise ValueError("need at least 3 samples per covered side")
        count = max(1, int(math.ceil(fit_window * times.size)))
        sl = slice(-count, None) if positive else slice(None, count)
        t, v = times[sl], lognorms[sl]
        out.append(float(np.max(v / np.abs(t))))
    return out[0], out[1]


def slope_fit(record: OrbitRecord, positive=True) -> float:
    """Least-squares slope of lognorm vs N over one side (diagnostic only)."""
    times, lognorms = record.side(positive)
    if times.size < 2:
        raise ValueError("need at least 2 samples for a slope")
    t = times.astype(np.float64)
    return float(np.polyfit(t, lognorms, 1)[0])


def classify_growth(
    record: OrbitRecord,
    kind: GrowthClass,
    rate: Optional[float] = None,
    slack: float = DEFAULT_SLACK,
) -> GrowthVerdict:
    """Evidence test of one growth class over the record's N >= 0 samples.

    S_PLUS(a): VIOLATED iff max_N [lognorm(N) - N ln a] exceeds
    lognorm(0) + slack.  S_BOUNDED: same with a = 1.  S_ZERO: CONSISTENT iff
    the last quarter of the samples sits below lognorm(0) - slack and trends
    downward.
    """
    mask = record.times >= 0
    times = record.times[mask]
    lognorms = record.lognorms[mask]
    if times.size < 4 or times[0] != 0:
        raise ValueError("record must cover N >= 0 with a sample at N = 0")
    ln0 = float(lognorms[0])
    horizon = int(times[-1])
    try:
        fitted = lyapunov_estimate(record)
    except ValueError:  # a covered side with too few samples for the fit
        fitted = (math.nan, math.nan)

    if kind in (GrowthClass.S_PLUS, GrowthClass.S_BOUNDED):
        if kind == GrowthClass.S_PLUS:
            if rate is None or not rate > 1:
                raise ValueError("S_PLUS requires a rate a > 1")
            shifted = lognorms - times * math.log(rate)
        else:
            rate = None
            shifted = lognorms
        idx = int(np.argmax(shifted))
        margin = float(shifted[idx]) - ln0 - slack
        verdict = Verdict.VIOLATED if margin > 0 else Verdict.CONSISTENT
        return GrowthVerdict(
            kind, rate, verdict, margin, int(times[idx]), fitted, horizon, slack
        )

    # S_ZERO: level and trend of the tail
    tail = slice(3 * times.size // 4, None)
    t_tail, v_tail = times[tail], lognorms[tail]
    idx = int(np.argmax(v_tail))
    level_margin = float(v_tail[idx]) - (ln0 - slack)
    slope = float(np.polyfit(t_tail.astype(float), v_tail, 1)[0]) if t_tail.size >= 2 else 0.0
    violated = level_margin > 0 or slope > 1e-9
    margin = max(level_margin, slope) if violated else level_margin
    return GrowthVerdict(
        GrowthClass.S_ZERO,
        None,
        Verdict.VIOLATED if violated else Verdict.CONSISTENT,
        margin,
        int(t_tail[idx]),
        fitted,
        horizon,
        slack,
    )


@dataclass(frozen=True)
class WitnessRow:
    """Checkpoint margins against the rate ln(c+1) at one k.

    The four margins witness in one stroke that none of |u_N|, |u_N|^{-1},
    |u_{-N}|, |u_{-N}|^{-1} admits a bound M (c+1)^N: peaks beat the rate at
    +-n_k, troughs at +-m_k.  ``margin`` is the binding (smallest) one.
    """

    k: int
    peak_index: int
    trough_index: int
    peak_pos: float
    trough_pos: float
    peak_neg: float
    trough_neg: float

    @property
    def margin(self) -> float:
        return min(self.peak_pos, self.trough_pos, self.peak_neg, self.trough_neg)


def krein_witness(seq: WeightSequence, k_max: int, c: Optional[float] = None) -> list[WitnessRow]:
    """Per-checkpoint margins showing the oscillating family escapes every
    exponential envelope of rate c+1 (c defaults to the family parameter)."""
    if seq.family.kind != FamilyKind.KREIN:
        raise ValueError("krein_witness requires a KREIN family")
    if c is None:
        c = seq.family.c
    rate = math.log(c + 1.0)
    peaks = checkpoint_indices(CheckpointKind.PEAK, k_max)
    troughs = checkpoint_indices(CheckpointKind.TROUGH, k_max)
    rows = []
    for k, (nk, mk) in enumerate(zip(peaks, troughs), start=1):
        lp_pos, lp_neg = seq.log_weight(nk), seq.log_weight(-nk)
        lt_pos, lt_neg = seq.log_weight(mk), seq.log_weight(-mk)
        rows.append(
            WitnessRow(
                k=k,
                peak_index=nk,
                trough_index=mk,
                peak_pos=lp_pos - nk * rate,
                trough_pos=-lt_pos - mk * rate,
                peak_neg=lp_neg - nk * rate,
                trough_neg=-lt_neg - mk * rate,
            )
        )
    return rows


@dataclass(frozen=True)
class DualityReport:
    """Outcome of the orbit-duality inequality sweep
    ln|(x,y)| <= ln||U^N x|| + ln||U^{*-N} y|| over 0 <= N <= n_max."""

    holds: bool
    lhs_log: float
    tightest_bound: float
    tightest_time: int
    max_violation: float


def duality_check(
    seq: WeightSequence, x: ScaledVector, y: ScaledVector, n_max: int, tol: float = 1e-10
) -> DualityReport:
    """Verify |(x,y)| <= ||U^N x|| ||U^{*-N} y|| in log form for all N."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    val = inner(x, y)
    lhs = -math.inf if val == 0 else math.log(abs(val))
    times = np.arange(0, n_max + 1, dtype=np.int64)
    if x.is_zero or y.is_zero:
        bounds = np.full(times.size, math.inf)
    else:
        bounds = power_sweep_lognorms(seq, x, times, Mode.FORWARD) + power_sweep_lognorms(
            seq, y, times, Mode.ADJOINT_INVERSE
        )
    idx = int(np.argmin(bounds))
    max_violation = float(lhs - bounds.min())
    return DualityReport(
        holds=bool(max_violation <= tol),
        lhs_log=lhs,
        tightest_bound=float(bounds[idx]),
        tightest_time=int(times[idx]),
        max_violation=max_violation,
    )


def window_lognorm_subadditive(seq, n, m, window, mode: Mode, tol: float = 1e-9) -> bool:
    """Submultiplicativity of the windowed norms (exact-window families)."""
    lhs = window_operator_lognorm(seq, n + m, window, mode)
    return lhs <= (
        window_operator_lognorm(seq, n, window, mode)
        + window_operator_lognorm(seq, m, window, mode)
        + tol
    )
