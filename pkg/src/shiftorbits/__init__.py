"""Orbit growth, indefinite-form dynamics and transport semigroups of
weighted bilateral shifts.

Everything runs in the log domain: weights such as 3^8191 are handled as
log-weights, vectors carry a shared log-scale, and norms are log-sum-exp
accumulations.  The hot kernels live in a compiled extension when available
(``shiftorbits.kernels.get_backend()`` tells which backend is active).
"""

from .continuous import (
    ContinuousKind,
    ContinuousWeight,
    GridFunction,
    evolve,
    evolve_inverse,
    gaussian_bump,
    generator_apply,
    generator_consistency,
    grid_function,
    l2_lognorm,
)
from .doubling import (
    Component,
    DoubledVector,
    FormKind,
    VerificationReport,
    apply_doubled,
    component_growth_profile,
    evaluate_form,
    random_doubled_vector,
    verify_form_preservation,
)
from .errors import (
    IndexRangeError,
    InvalidWeightError,
    ShiftOrbitsError,
    UndefinedNormError,
)
from .growth import (
    DualityReport,
    GrowthClass,
    GrowthVerdict,
    OrbitRecord,
    Verdict,
    WitnessRow,
    classify_growth,
    duality_check,
    krein_witness,
    lyapunov_estimate,
    orbit_profile,
    slope_fit,
)
from .kernels import get_backend
from .shift import (
    Mode,
    PowerAction,
    apply_power,
    basis_power_lognorm,
    orbit_lognorm,
    power_sweep_lognorms,
    spectral_radius_estimate,
    window_covers_supremum,
    window_operator_lognorm,
)
from .vectors import ScaledVector, allclose, inner, random_scaled_vector
from .weights import (
    CheckpointKind,
    FamilyKind,
    WeightFamily,
    WeightSequence,
    checkpoint_indices,
)

__version__ = "0.1.0"
