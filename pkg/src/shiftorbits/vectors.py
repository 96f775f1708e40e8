"""Sparse integer-indexed vectors with a shared log-scale.

A ScaledVector represents e^{log_scale} * sum_i coeffs[i] * b_{support[i]}
with respect to the two-sided orthonormal basis {b_n}.  Keeping the scale in
the exponent lets orbits wander thousands of log-units up or down without the
stored coefficients ever leaving the comfortable range around 1.

Coefficient housekeeping folds only exact powers of two into the scale, so
repeated renormalization introduces no rounding of its own.  Components more
than ~745 log-units below the running peak underflow to zero and are dropped;
the norm effect is below double precision in every such case.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import IndexRangeError, UndefinedNormError
from .weights import INDEX_LIMIT


@dataclass(frozen=True, eq=False)
class ScaledVector:
    support: np.ndarray  # int64, strictly increasing
    coeffs: np.ndarray  # complex128, no zeros
    log_scale: float = 0.0

    def __post_init__(self):
        if self.support.size != self.coeffs.size:
            raise ValueError("support and coeffs must have equal length")
        if self.support.size:
            if np.any(np.diff(self.support) <= 0):
                raise ValueError("support must be strictly increasing")
            if np.any(self.coeffs == 0):
                raise ValueError("stored coefficients must be nonzero")
            if not np.all(np.isfinite(self.coeffs)):
                raise ValueError("coefficients must be finite")
        if not math.isfinite(self.log_scale):
            raise ValueError("log_scale must be finite")
        self.support.flags.writeable = False
        self.coeffs.flags.writeable = False

    # -- constructors ------------------------------------------------------

    @staticmethod
    def make(support, coeffs, log_scale=0.0):
        """Build from parallel index/coefficient data; sorts, drops zeros,
        renormalizes."""
        try:
            support = np.asarray(support, dtype=np.int64).reshape(-1)
        except OverflowError as exc:
            raise IndexRangeError(str(exc)) from None
        coeffs = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
        if support.size != coeffs.size:
            raise ValueError("support and coeffs must have equal length")
        if support.size and max(abs(int(support.max())), abs(int(support.min()))) > INDEX_LIMIT:
            raise IndexRangeError(f"index magnitude exceeds {INDEX_LIMIT}")
        order = np.argsort(support, kind="stable")
        support, coeffs = support[order], coeffs[order]
        if support.size and np.any(np.diff(support) == 0):
            raise ValueError("duplicate support indices")
        return _normalized(support, coeffs, log_scale)

    @staticmethod
    def basis(n):
        """The basis vector b_n."""
        return ScaledVector.make([n], [1.0])

    @staticmethod
    def zero():
        return ScaledVector(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.complex128), 0.0)

    @staticmethod
    def harmonic(k_max):
        """Truncation of sum_{n != 0} |n|^{-1} b_n to 0 < |n| <= k_max."""
        if k_max < 1:
            raise ValueError("k_max must be >= 1")
        ns = np.concatenate([np.arange(-k_max, 0), np.arange(1, k_max + 1)])
        return ScaledVector.make(ns, 1.0 / np.abs(ns))

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self):
        return self.support.size == 0

    def lognorm(self) -> float:
        """ln of the Euclidean norm."""
        if self.is_zero:
            raise UndefinedNormError("the zero vector has no log-norm")
        return 0.5 * kernels.logsumexp(2.0 * np.log(np.abs(self.coeffs))) + self.log_scale

    def coeff_at(self, n) -> complex:
        """Coefficient of b_n including the scale (may over/underflow)."""
        idx = np.searchsorted(self.support, n)
        if idx < self.support.size and self.support[idx] == n:
            return complex(self.coeffs[idx] * math.exp(self.log_scale))
        return 0j

    def scaled_by(self, factor):
        """The vector multiplied by a nonzero scalar."""
        if factor == 0:
            return ScaledVector.zero()
        return _normalized(self.support.copy(), self.coeffs * factor, self.log_scale)

    def __repr__(self):
        return (
            f"ScaledVector(support={self.support.tolist()}, "
            f"coeffs={self.coeffs.tolist()}, log_scale={self.log_scale!r})"
        )


def _normalized(support, coeffs, log_scale):
    """Drop zero coefficients and fold an exact power of two into the scale
    so that max|coeff| lands in [1/2, 2]."""
    keep = coeffs != 0
    if not keep.all():
        support, coeffs = support[keep], coeffs[keep]
    if support.size == 0:
        return ScaledVector(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.complex128), 0.0)
    m = float(np.abs(coeffs).max())
    if not (0.5 <= m <= 2.0):
        e = int(round(math.log2(m)))
        coeffs = coeffs * (2.0 ** (-e))  # exact: scaling by a power of two
        log_scale = log_scale + e * math.log(2.0)
    return ScaledVector(
        np.ascontiguousarray(support), np.ascontiguousarray(coeffs), float(log_scale)
    )


#: relative size under which an inner-product sum is reported as exact zero
CANCELLATION_EPS = 1e-15


def inner(x: ScaledVector, y: ScaledVector) -> complex:
    """Inner product (x, y), conjugate-linear in the first argument.

    Accumulates the merged-support products at the combined log-scale and
    snaps results below CANCELLATION_EPS of the largest term to exact zero,
    so neutrality checks see clean zeros.  The returned complex materializes
    e^{scale_x + scale_y}; callers keep that moderate by construction.
    """
    if x.is_zero or y.is_zero:
        return 0j
    common, ix, iy = np.intersect1d(x.support, y.support, assume_unique=True, return_indices=True)
    if common.size == 0:
        return 0j
    terms = np.conj(x.coeffs[ix]) * y.coeffs[iy]
    total = complex(terms.sum())
    if abs(total) < CANCELLATION_EPS * float(np.abs(terms).max()):
        return 0j
    return total * math.exp(x.log_scale + y.log_scale)


def allclose(x: ScaledVector, y: ScaledVector, rtol=1e-12) -> bool:
    """Scale-aware comparison: coefficients agree to rtol relative to the
    larger vector's peak magnitude."""
    if x.is_zero and y.is_zero:
        return True
    sup = np.union1d(x.support, y.support)
    ref = max(
        -math.inf if x.is_zero else x.log_scale + float(np.log(np.abs(x.coeffs)).max()),
        -math.inf if y.is_zero else y.log_scale + float(np.log(np.abs(y.coeffs)).max()),
    )
    dx = _dense_on(x, sup, ref)
    dy = _dense_on(y, sup, ref)
    return bool(np.max(np.abs(dx - dy)) <= rtol)


def _dense_on(v, sup, ref_log):
    out = np.zeros(sup.size, dtype=np.complex128)
    if not v.is_zero:
        pos = np.searchsorted(sup, v.support)
        out[pos] = v.coeffs * math.exp(v.log_scale - ref_log)
    return out


def random_scaled_vector(rng, size=None, index_range=(-30, 30), mag_range=(0.5, 2.0)):
    """Deterministic sample vector: support size uniform in [1, 8] (unless
    given), distinct indices from index_range, signed magnitudes in mag_range."""
    if size is None:
        size = int(rng.integers(1, 9))
    lo, hi = index_range
    if size > hi - lo + 1:
        raise ValueError("support size exceeds the index range")
    support = rng.choice(np.arange(lo, hi + 1), size=size, replace=False)
    mags = rng.uniform(mag_range[0], mag_range[1], size=size)
    signs = rng.choice([-1.0, 1.0], size=size)
    return ScaledVector.make(support, mags * signs)
