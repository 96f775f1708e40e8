"""Doubled systems U + U^{*-1} on H + H and their invariant forms.

For any bounded invertible V, the direct sum V + V^{*-1} preserves both

* the indefinite form of the exchange involution J : x+y -> y+x, and
* the symplectic form of the rotation  Js : x+y -> y+(-x),

which makes every weighted-shift doubling a J-unitary operator and a
symplectic automorphism at once.  The sign convention for Js follows the
x+y -> y+(-x) orientation; the opposite sign is an equally valid symplectic
structure and changes no verification outcome.

Forms are sesquilinear with the conjugation on the first slot:

    J-form(v, w)      = (x_v, y_w) + (y_v, x_w)
    symplectic(v, w)  = (x_v, y_w) - (y_v, x_w)
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import UndefinedNormError
from .growth import OrbitRecord
from .shift import Mode, PowerAction, apply_power, power_sweep_coeffs, power_sweep_lognorms
from .vectors import ScaledVector, inner, random_scaled_vector
from .weights import WeightSequence


@dataclass(frozen=True)
class DoubledVector:
    """x + y in H + H; the components carry independent log-scales."""

    x: ScaledVector
    y: ScaledVector

    @property
    def is_zero(self):
        return self.x.is_zero and self.y.is_zero

    def lognorm(self) -> float:
        """ln ||x + y|| = (1/2) ln(e^{2a} + e^{2b}) from component log-norms."""
        if self.is_zero:
            raise UndefinedNormError("the zero doubled vector has no log-norm")
        parts = [
            2.0 * v.lognorm() for v in (self.x, self.y) if not v.is_zero
        ]
        return 0.5 * kernels.logsumexp(np.array(parts))


class FormKind(Enum):
    J_FORM = "j"
    SYMPLECTIC = "symplectic"


class Component(Enum):
    FIRST = "first"  # H + {0}
    SECOND = "second"  # {0} + H


def apply_doubled(seq: WeightSequence, v: DoubledVector, n_steps: int) -> DoubledVector:
    """(U^N x) + (U^{*-N} y), each side via its diagonal closed form."""
    return DoubledVector(
        apply_power(seq, v.x, PowerAction(n_steps, Mode.FORWARD)),
        apply_power(seq, v.y, PowerAction(n_steps, Mode.ADJOINT_INVERSE)),
    )


def evaluate_form(kind: FormKind, v: DoubledVector, w: DoubledVector) -> complex:
    """Indefinite (J) or symplectic form value, log-scale aware."""
    first = inner(v.x, w.y)
    second = inner(v.y, w.x)
    return first + second if kind == FormKind.J_FORM else first - second


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a seeded invariance sweep; serializes to the CLI report CSV."""

    check: str
    system: str
    samples: int
    n_max: int
    tolerance: float
    max_violation: float
    passed: bool
    worst_sample: int
    worst_time: int


def random_doubled_vector(rng) -> DoubledVector:
    return DoubledVector(random_scaled_vector(rng), random_scaled_vector(rng))


def _form_sweep(seq, kind, v, w, times):
    """form(U-hat^N v, U-hat^N w) for all N at once.

    The evolved supports of paired components shift together, so the merge
    pattern is computed once and the per-N values reduce to row sums of the
    batched coefficient matrices.
    """

    def pair_values(p, q, mode_p, mode_q):
        if p.is_zero or q.is_zero:
            return np.zeros(times.size, dtype=np.complex128)
        common, ip, iq = np.intersect1d(
            p.support, q.support, assume_unique=True, return_indices=True
        )
        if common.size == 0:
            return np.zeros(times.size, dtype=np.complex128)
        cp, sp = power_sweep_coeffs(seq, p, times, mode_p)
        cq, sq = power_sweep_coeffs(seq, q, times, mode_q)
        sums = (np.conj(cp[:, ip]) * cq[:, iq]).sum(axis=1)
        return sums * np.exp(sp + sq)

    first = pair_values(v.x, w.y, Mode.FORWARD, Mode.ADJOINT_INVERSE)
    second = pair_values(v.y, w.x, Mode.ADJOINT_INVERSE, Mode.FORWARD)
    return first + second if kind == FormKind.J_FORM else first - second


def verify_form_preservation(
    seq: WeightSequence,
    kind: FormKind,
    samples: int,
    n_max: int,
    seed: int,
    tolerance: float = 1e-10,
) -> VerificationReport:
    """Check form(U-hat^N v, U-hat^N w) = form(v, w) on seeded random pairs.

    Violations are measured relative to 1 + |form(v, w)| and reported, never
    thrown; all |N| <= n_max are tested for every drawn pair.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    times = np.arange(-n_max, n_max + 1, dtype=np.int64)
    worst = (-math.inf, 0, 0)
    for i in range(samples):
        v = random_doubled_vector(rng)
        w = random_doubled_vector(rng)
        base = evaluate_form(kind, v, w)
        values = _form_sweep(seq, kind, v, w, times)
        rel = np.abs(values - base) / (1.0 + abs(base))
        j = int(np.argmax(rel))
        if float(rel[j]) > worst[0]:
            worst = (float(rel[j]), i, int(times[j]))
    return VerificationReport(
        check=f"{kind.value}-form-preservation",
        system=seq.label,
        samples=samples,
        n_max=n_max,
        tolerance=tolerance,
        max_violation=worst[0],
        passed=worst[0] <= tolerance,
        worst_sample=worst[1],
        worst_time=worst[2],
    )


def component_growth_profile(
    seq: WeightSequence, component: Component, f: ScaledVector, times
) -> OrbitRecord:
    """Orbit record of f+0 (FIRST) or 0+f (SECOND) under the doubling.

    By unitary equivalence of the restrictions this matches the plain orbit
    of f under U resp. U^{*-1}; the record is computed through the doubled
    norm so that equivalence stays a checkable statement.
    """
    if f.is_zero:
        raise UndefinedNormError("component orbit of the zero vector")
    times = np.asarray(times, dtype=np.int64).reshape(-1)
    mode = Mode.FORWARD if component == Component.FIRST else Mode.ADJOINT_INVERSE
    comp_lognorms = power_sweep_lognorms(seq, f, times, mode)
    # doubled norm of a one-component vector: logsumexp over that single part
    lognorms = np.array([0.5 * kernels.logsumexp(np.array([2.0 * a])) for a in comp_lognorms])
    return OrbitRecord(
        system=f"{seq.label}/doubled-{component.value}",
        vector=f"support[{f.support.min()},{f.support.max()}]",
        times=times,
        lognorms=lognorms,
        two_sided=bool(times.min() <= 0 <= times.max()),
    )
