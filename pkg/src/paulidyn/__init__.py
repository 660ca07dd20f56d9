"""Divisibility analysis of qubit Pauli dynamical maps.

Construct eigenvalue trajectories of Pauli maps (closed-form presets,
samples, convex mixtures of phase dampings), classify them into the
divisibility hierarchy Indivisible < Divisible < PDivisible < CPDivisible
with certificates, extract and integrate time-local generator rates, and
cross-check every analytic criterion against a brute-force propagator
oracle.
"""

from .channels import (
    DEFAULT_TOL,
    BlochState,
    PauliChannel,
    ProbVector,
    apply,
    cp_mask,
    eigs_from_probs,
    is_cp,
    is_positive,
    is_valid_state,
    positivity_mask,
    probs_from_eigs,
    trace_norm,
)
from .divisibility import (
    Certificate,
    DivClass,
    DivisibilityVerdict,
    IndivisibleAt,
    Propagator,
    WitnessHit,
    check_cp_divisible,
    check_divisible,
    check_p_divisible,
    classify,
    oracle_classify,
    propagator,
    trace_norm_witness,
)
from .generator import (
    RateSumLimit,
    RateTriple,
    SingularGenerator,
    eigs_from_rates,
    ode_roundtrip,
    rate_sum_limit,
    rates_from_eigs,
)
from .mixtures import (
    Mixture,
    prop1_p_divisible,
    prop2_cp_bound,
    prop2_cp_divisible,
    prop3_preserves_nonP,
    prop4_divisible_condition,
)
from .profiles import (
    AbsCosProfile,
    AffineProfile,
    ConstantProfile,
    CosProfile,
    CubicProfile,
    DampedCosProfile,
    ExpProfile,
    SampledProfile,
    ScalarProfile,
    TruncCosProfile,
)
from .specio import SpecError, load_spec, parse_profile, resolve_grid, trajectory_from_spec
from .trajectory import (
    ZERO_TOL_CLOSED_FORM,
    ZERO_TOL_SAMPLED,
    CPViolation,
    EigTrajectory,
    Grid,
    SingularPoints,
    ZeroEvent,
    find_singular_points,
    find_zero_events,
    phase_damping,
    scan_zero_events,
    validate,
)
from .verification import (
    CheckFailure,
    SuiteReport,
    random_rate_triple,
    run_equivalence_suite,
    run_proposition_suite,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # channels
    "DEFAULT_TOL", "PauliChannel", "ProbVector", "BlochState",
    "eigs_from_probs", "probs_from_eigs", "is_cp", "is_positive",
    "cp_mask", "positivity_mask", "apply", "trace_norm", "is_valid_state",
    # profiles
    "ScalarProfile", "ExpProfile", "CosProfile", "AbsCosProfile",
    "DampedCosProfile", "TruncCosProfile", "CubicProfile", "SampledProfile",
    "ConstantProfile", "AffineProfile",
    # trajectory
    "Grid", "EigTrajectory", "phase_damping", "ZeroEvent", "SingularPoints",
    "CPViolation", "scan_zero_events", "find_zero_events",
    "find_singular_points", "validate", "ZERO_TOL_CLOSED_FORM",
    "ZERO_TOL_SAMPLED",
    # divisibility
    "DivClass", "Certificate", "DivisibilityVerdict", "IndivisibleAt",
    "Propagator", "check_divisible", "check_p_divisible", "check_cp_divisible",
    "classify", "propagator", "oracle_classify", "WitnessHit",
    "trace_norm_witness",
    # generator
    "SingularGenerator", "RateTriple", "RateSumLimit", "rates_from_eigs",
    "eigs_from_rates", "ode_roundtrip", "rate_sum_limit",
    # mixtures
    "Mixture", "prop1_p_divisible", "prop2_cp_bound", "prop2_cp_divisible",
    "prop3_preserves_nonP", "prop4_divisible_condition",
    # spec files
    "SpecError", "load_spec", "parse_profile", "resolve_grid",
    "trajectory_from_spec",
    # verification
    "CheckFailure", "SuiteReport", "run_equivalence_suite",
    "run_proposition_suite", "random_rate_triple",
]
