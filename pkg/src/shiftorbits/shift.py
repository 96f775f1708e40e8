"""Weighted bilateral shift powers and their diagonal norm formulas.

The shift sends b_n to (u_{n+1}/u_n) b_{n+1}; its powers and adjoint-inverse
powers act diagonally on the basis,

    U^N     : b_n -> (u_{n+N}/u_n)   b_{n+N}
    U^{*-N} : b_n -> (u_n/u_{n+N})*  b_{n+N}

so every orbit quantity reduces to log-weight differences.  All built-in
weights are positive reals, which makes the conjugation in the adjoint
formula the identity; a CUSTOM family also supplies a real log-weight, so
phases of vector coefficients pass through untouched in either mode.

Operator norms over all of Z are not computable; ``window_operator_lognorm``
returns the exact maximum over a finite index window, and
``window_covers_supremum`` reports whether the family's closed form
guarantees that the window contains the true supremum.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import IndexRangeError, UndefinedNormError
from .vectors import ScaledVector, _normalized
from .weights import INDEX_LIMIT, FamilyKind, WeightSequence


class Mode(Enum):
    FORWARD = "forward"  # powers of U
    ADJOINT_INVERSE = "adjoint-inverse"  # powers of U^{*-1}


@dataclass(frozen=True)
class PowerAction:
    n_steps: int
    mode: Mode = Mode.FORWARD


def _check_shift(support, n_steps):
    if support.size == 0:
        return
    if abs(int(support.max()) + n_steps) > INDEX_LIMIT or abs(int(support.min()) + n_steps) > INDEX_LIMIT:
        raise IndexRangeError(f"shifted index magnitude exceeds {INDEX_LIMIT}")


def _power_logmults(seq: WeightSequence, support, n_values, mode: Mode) -> np.ndarray:
    """Log-magnitudes of the diagonal multipliers, shape (len(n_values), k).

    Row j holds sgn * (L(n + N_j) - L(n)) over the support, with sgn = +1 for
    FORWARD and -1 for ADJOINT_INVERSE.
    """
    n_values = np.asarray(n_values, dtype=np.int64).reshape(-1)
    base = seq.log_weights(support)
    shifted = seq.log_weights((n_values[:, None] + support[None, :]).ravel())
    dl = shifted.reshape(n_values.size, support.size) - base[None, :]
    return dl if mode == Mode.FORWARD else -dl


def apply_power(seq: WeightSequence, f: ScaledVector, action: PowerAction) -> ScaledVector:
    """U^N f or U^{*-N} f as a fresh ScaledVector.

    The largest log-multiplier is folded into the scale before
    exponentiating, so coefficients stay near 1 no matter how steep the
    weight profile is.
    """
    if f.is_zero:
        return ScaledVector.zero()
    _check_shift(f.support, action.n_steps)
    dl = _power_logmults(seq, f.support, [action.n_steps], action.mode)[0]
    m = float(dl.max())
    coeffs = f.coeffs * np.exp(dl - m)
    return _normalized(f.support + action.n_steps, coeffs, f.log_scale + m)


def basis_power_lognorm(seq: WeightSequence, n: int, n_steps: int, mode: Mode) -> float:
    """ln ||U^N b_n|| (or adjoint-inverse), straight from the closed form."""
    out = seq.log_weights(np.array([n, n + n_steps]))
    dl = float(out[1] - out[0])
    return dl if mode == Mode.FORWARD else -dl


def orbit_lognorm(seq: WeightSequence, f: ScaledVector, n_steps: int, mode: Mode) -> float:
    """ln ||U^N f|| via the diagonal norm series.

    Shifted basis vectors stay orthogonal, so the squared norm is the sum of
    squared coefficient magnitudes times squared multipliers; evaluated as a
    log-sum-exp over 2 ln|f_n| + 2 sgn (L(n+N) - L(n)).
    """
    if f.is_zero:
        raise UndefinedNormError("orbit of the zero vector has no log-norm")
    _check_shift(f.support, n_steps)
    dl = _power_logmults(seq, f.support, [n_steps], mode)[0]
    terms = 2.0 * (np.log(np.abs(f.coeffs)) + dl)
    return 0.5 * kernels.logsumexp(terms) + f.log_scale


def power_sweep_lognorms(seq: WeightSequence, f: ScaledVector, n_values, mode: Mode) -> np.ndarray:
    """orbit_lognorm for many powers at once (one kernel call per sweep)."""
    if f.is_zero:
        raise UndefinedNormError("orbit of the zero vector has no log-norm")
    n_values = np.asarray(n_values, dtype=np.int64).reshape(-1)
    for n_steps in (int(n_values.min()), int(n_values.max())):
        _check_shift(f.support, n_steps)
    dl = _power_logmults(seq, f.support, n_values, mode)
    terms = 2.0 * (np.log(np.abs(f.coeffs))[None, :] + dl)
    return np.array([0.5 * kernels.logsumexp(row) for row in terms]) + f.log_scale


def power_sweep_coeffs(seq: WeightSequence, f: ScaledVector, n_values, mode: Mode):
    """Batched apply_power: coefficient matrix (len(n_values), k) plus the
    per-power log-scales.  Row j equals apply_power(..., N_j) up to the
    shared support shift."""
    n_values = np.asarray(n_values, dtype=np.int64).reshape(-1)
    if f.is_zero:
        return np.zeros((n_values.size, 0), dtype=np.complex128), np.zeros(n_values.size)
    for n_steps in (int(n_values.min()), int(n_values.max())):
        _check_shift(f.support, n_steps)
    dl = _power_logmults(seq, f.support, n_values, mode)
    m = dl.max(axis=1)
    coeffs = f.coeffs[None, :] * np.exp(dl - m[:, None])
    return coeffs, f.log_scale + m


def window_operator_lognorm(seq: WeightSequence, n_steps: int, window, mode: Mode) -> float:
    """max over n in [lo, hi] of the single-basis-vector log-growth.

    Always a lower bound for ln ||U^N||; exact whenever
    ``window_covers_supremum`` is True for the same arguments.
    """
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise ValueError("window must be a nonempty interval (lo <= hi)")
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    _check_shift(ns, n_steps)
    dl = seq.log_weights(ns + n_steps) - seq.log_weights(ns)
    if mode == Mode.ADJOINT_INVERSE:
        dl = -dl
    return float(dl.max())


def window_covers_supremum(seq: WeightSequence, n_steps: int, window, mode: Mode) -> bool:
    """Whether the closed-form case analysis places the true supremum of the
    basis growth inside the window.

    GEOMETRIC attains its supremum on a half-line of indices and MIXED on a
    half-line (growing direction) or a single index (decaying direction).
    The oscillating family only approaches its supremum as |n| grows, so no
    finite window ever contains it; CUSTOM families carry no analysis.
    """
    lo, hi = int(window[0]), int(window[1])
    if n_steps == 0:
        return True
    kind = seq.family.kind
    if kind == FamilyKind.GEOMETRIC:
        # forward: argmax where the whole hop [n, n+N] sits on the rising
        # side; adjoint-inverse: mirrored
        if mode == Mode.FORWARD:
            return lo <= -n_steps if n_steps > 0 else hi >= -n_steps
        return hi >= 0 if n_steps > 0 else lo <= 0
    if kind == FamilyKind.MIXED:
        if mode == Mode.FORWARD:
            # N>0: sup 2^N on the half-line n <= -N; N<0: sup |N|+1 at n=|N|
            return lo <= -n_steps if n_steps > 0 else lo <= -n_steps <= hi
        # adjoint-inverse.  N>0: sup N+1 at n=0; N<0: sup 2^|N| on n <= 0
        return lo <= 0 <= hi if n_steps > 0 else lo <= 0
    return False


def spectral_radius_estimate(seq: WeightSequence, n_max: int, window, mode: Mode) -> float:
    """Gelfand-formula estimate ||U^N||^(1/N) from the windowed norm."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return math.exp(window_operator_lognorm(seq, n_max, window, mode) / n_max)
