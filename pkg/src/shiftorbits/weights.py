"""Weight families for bilateral shifts, accessed exclusively as log-weights.

Three built-in families:

* ``KREIN``     u_n = (c+2)^(|n| sin((pi/2) log2(1+|n|))), any c > 0.  The
  exponent oscillates between +|n| and -|n|; at the checkpoint indices
  n_k = 2^(1+4k)-1 and m_k = 2^(3+4k)-1 it hits the exact peak (c+2)^{n_k}
  and trough (c+2)^{-m_k}.
* ``GEOMETRIC`` u_n = (2c)^(-|n|), c >= 1.
* ``MIXED``     u_n = 2^n for n <= 0 and 1/(n+1) for n > 0.

Raw weights overflow every float format at the index ranges of interest
(3^8191 at the third checkpoint), so nothing here ever exponentiates: all
consumers work with L(n) = ln u_n.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import IndexRangeError, InvalidWeightError

LN2 = math.log(2.0)

#: largest |index| accepted anywhere; leaves headroom so n+1 and n+N cannot
#: wrap int64 inside the kernels.
INDEX_LIMIT = 2**62

#: slope bound of the KREIN exponent |n|*sin((pi/2)*log2(1+|n|)), from the
#: mean value theorem: |L(n+1)-L(n)| <= RATIO_ALPHA * ln(c+2).
RATIO_ALPHA = 1.0 + math.pi / (2.0 * LN2)


class FamilyKind(Enum):
    KREIN = "krein"
    GEOMETRIC = "geometric"
    MIXED = "mixed"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WeightFamily:
    """A named weight family plus its parameters.

    ``c`` is meaningful for KREIN (any c > 0) and GEOMETRIC (c >= 1) only.
    CUSTOM families supply the log-weight directly — never the weight — so the
    overflow-safety contract stays uniform.
    """

    kind: FamilyKind
    c: float = 1.0
    custom_log_weight: Optional[Callable[[int], float]] = None
    custom_ratio_bound: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise ValueError("family parameter c must be finite")
        if self.kind == FamilyKind.KREIN and not self.c > 0:
            raise ValueError("KREIN requires c > 0")
        if self.kind == FamilyKind.GEOMETRIC and not self.c >= 1:
            raise ValueError("GEOMETRIC requires c >= 1")
        if self.kind == FamilyKind.CUSTOM and self.custom_log_weight is None:
            raise ValueError("CUSTOM requires a log-weight function")
        if self.kind != FamilyKind.CUSTOM and self.custom_log_weight is not None:
            raise ValueError("custom_log_weight is only valid for CUSTOM")


class WeightSequence:
    """Immutable log-weight sequence L(n) = ln u_n over the integers.

    All operations are pure; instances are safe to share across threads.
    """

    def __init__(self, family: WeightFamily):
        self.family = family
        self._ratio_bound = self._closed_form_ratio_bound()

    # -- constructors ------------------------------------------------------

    @classmethod
    def krein(cls, c=1.0):
        return cls(WeightFamily(FamilyKind.KREIN, c=c))

    @classmethod
    def geometric(cls, c=1.0):
        return cls(WeightFamily(FamilyKind.GEOMETRIC, c=c))

    @classmethod
    def mixed(cls):
        return cls(WeightFamily(FamilyKind.MIXED))

    @classmethod
    def custom(cls, log_weight, ratio_bound=None):
        return cls(
            WeightFamily(
                FamilyKind.CUSTOM,
                custom_log_weight=log_weight,
                custom_ratio_bound=ratio_bound,
            )
        )

    # -- core evaluation ---------------------------------------------------

    def log_weights(self, ns) -> np.ndarray:
        """L(n) for an array of integer indices (the vectorized hot path)."""
        ns = self._checked_indices(ns)
        kind = self.family.kind
        if kind == FamilyKind.KREIN:
            return kernels.krein_log_weights(ns, math.log(self.family.c + 2.0))
        if kind == FamilyKind.GEOMETRIC:
            return kernels.geometric_log_weights(ns, math.log(2.0 * self.family.c))
        if kind == FamilyKind.MIXED:
            return kernels.mixed_log_weights(ns)
        fn = self.family.custom_log_weight
        out = np.array([float(fn(int(n))) for n in ns], dtype=np.float64)
        if not np.all(np.isfinite(out)):
            bad = int(ns[np.flatnonzero(~np.isfinite(out))[0]])
            raise InvalidWeightError(f"custom log-weight is not finite at n={bad}")
        return out

    def log_weight(self, n: int) -> float:
        """L(n) = ln u_n for a single index."""
        return float(self.log_weights(np.array([n]))[0])

    def ratio_log(self, n: int) -> float:
        """One-step multiplier of the shift in log form: L(n+1) - L(n)."""
        out = self.log_weights(np.array([n, n + 1]))
        return float(out[1] - out[0])

    # -- metadata ----------------------------------------------------------

    @property
    def ratio_bound(self) -> Optional[float]:
        """sup_n |L(n+1) - L(n)| when a closed form exists, else None."""
        return self._ratio_bound

    @property
    def label(self) -> str:
        kind = self.family.kind
        if kind in (FamilyKind.KREIN, FamilyKind.GEOMETRIC):
            return f"{kind.value}(c={self.family.c:g})"
        return kind.value

    def _closed_form_ratio_bound(self):
        kind = self.family.kind
        if kind == FamilyKind.KREIN:
            return RATIO_ALPHA * math.log(self.family.c + 2.0)
        if kind == FamilyKind.GEOMETRIC:
            return math.log(2.0 * self.family.c)
        if kind == FamilyKind.MIXED:
            return LN2
        return self.family.custom_ratio_bound

    def _checked_indices(self, ns) -> np.ndarray:
        try:
            arr = np.ascontiguousarray(ns, dtype=np.int64)
        except OverflowError as exc:
            raise IndexRangeError(str(exc)) from None
        if arr.size and (abs(int(arr.max())) > INDEX_LIMIT or abs(int(arr.min())) > INDEX_LIMIT):
            raise IndexRangeError(f"index magnitude exceeds {INDEX_LIMIT}")
        return arr

    def __repr__(self):
        return f"WeightSequence({self.label})"


class CheckpointKind(Enum):
    PEAK = "peak"
    TROUGH = "trough"


def checkpoint_indices(kind: CheckpointKind, k_max: int) -> list[int]:
    """Checkpoint sequences of the oscillating family.

    PEAK returns n_k = 2^(1+4k) - 1 and TROUGH returns m_k = 2^(3+4k) - 1 for
    k = 1..k_max.  At these indices log2(1+n) is an odd integer, so the sine
    factor is exactly +1 (peaks) or -1 (troughs) and L(n_k) = n_k ln(c+2),
    L(m_k) = -m_k ln(c+2).
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    shift = 1 if kind == CheckpointKind.PEAK else 3
    if 2 ** (shift + 4 * k_max) - 1 > INDEX_LIMIT:
        raise IndexRangeError(f"checkpoint k_max={k_max} exceeds the index range")
    return [2 ** (shift + 4 * k) - 1 for k in range(1, k_max + 1)]
