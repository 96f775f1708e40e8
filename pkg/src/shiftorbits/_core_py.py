"""Pure-Python (numpy) implementations of the log-domain kernels.

Fallback backend for :mod:`shiftorbits.kernels`; the compiled extension
``shiftorbits._core`` implements the same four functions with identical
semantics.  Everything here works on plain float64/int64 arrays and stays in
the log domain: raw weights like 3^8191 are never materialized.
"""

import math

import numpy as np

LN2 = math.log(2.0)
HALF_PI = 0.5 * math.pi


def krein_log_weights(ns, log_base):
    """log-weights |n|*sin((pi/2)*log2(1+|n|))*log_base for an int64 array.

    log2 is evaluated as ln(1+|n|)/ln 2 with 1+|n| formed in integer
    arithmetic, so the argument is exact for |n| < 2**53.
    """
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    a = np.abs(ns).astype(np.float64)
    m = (np.abs(ns) + 1).astype(np.float64)
    return a * np.sin(HALF_PI * (np.log(m) / LN2)) * log_base


def geometric_log_weights(ns, log_rate):
    """log-weights -|n|*log_rate (log_rate = ln of the one-step decay base)."""
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    return -np.abs(ns).astype(np.float64) * log_rate


def mixed_log_weights(ns):
    """log-weights n*ln2 for n <= 0 and -ln(n+1) for n > 0."""
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    out = ns.astype(np.float64) * LN2
    pos = ns > 0
    if pos.any():
        out[pos] = -np.log((ns[pos] + 1).astype(np.float64))
    return out


def logsumexp(xs):
    """ln(sum exp(xs)) in the running-max form, accumulated largest-first.

    -inf entries contribute nothing; an empty input yields -inf.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if xs.size == 0:
        return -math.inf
    order = np.sort(xs)[::-1]
    m = float(order[0])
    if not math.isfinite(m):
        return m
    return m + math.log(float(np.exp(order - m).sum()))
