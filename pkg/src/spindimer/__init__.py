"""Thermal quantum-resource toolkit for a spin-1 Heisenberg dimer.

Closed-form Gibbs states, coherence and entanglement quantifiers, an
entropic steering criterion, and deterministic two-parameter sweeps, with
every closed form cross-checked against an independent numerical route.
"""

from ._version import __version__
from .linalg import (
    EigenSystem,
    partial_transpose_a,
    shannon_entropy_bits,
    spectral_map,
    symmetric_eig,
    trace_norm,
    validate_density,
)
from .measures import (
    Phase,
    ResourceReport,
    classify_phase,
    coherence_l1,
    coherence_l1_closed_form,
    coherence_relative,
    coherence_relative_closed_form,
    gibbs_eigenvalues,
    negativity,
    negativity_closed_form,
    resource_report,
)
from .model import (
    AnalyticSpectrum,
    ModelParams,
    SpinOperators,
    analytic_spectrum,
    build_hamiltonian,
    spin_operators,
)
from .steering import (
    AXES,
    STEERING_BOUND,
    MeasurementBasis,
    SteeringBreakdown,
    eur_bound,
    joint_probabilities,
    joint_probabilities_closed_form,
    marginal_probabilities_a,
    measurement_bases,
    steering_value,
)
from .sweep import (
    CSV_HEADER,
    QUANTITIES,
    GridResult,
    GridSpec,
    SweepAxis,
    SweepError,
    canonical_spec_json,
    run_sweep,
    spec_seed,
    write_table,
)
from .thermal import (
    ThermalState,
    gibbs_closed_form,
    gibbs_oracle,
    ground_state,
    partition_function,
    thermal_state,
)
from .verify import DEFAULT_SEED, CheckResult, VerificationReport, run_verification

__all__ = [
    "__version__",
    "EigenSystem",
    "symmetric_eig",
    "partial_transpose_a",
    "trace_norm",
    "shannon_entropy_bits",
    "spectral_map",
    "validate_density",
    "ModelParams",
    "SpinOperators",
    "spin_operators",
    "build_hamiltonian",
    "AnalyticSpectrum",
    "analytic_spectrum",
    "ThermalState",
    "partition_function",
    "gibbs_closed_form",
    "gibbs_oracle",
    "ground_state",
    "thermal_state",
    "Phase",
    "ResourceReport",
    "coherence_l1",
    "coherence_relative",
    "negativity",
    "coherence_l1_closed_form",
    "coherence_relative_closed_form",
    "gibbs_eigenvalues",
    "negativity_closed_form",
    "classify_phase",
    "resource_report",
    "AXES",
    "STEERING_BOUND",
    "MeasurementBasis",
    "measurement_bases",
    "joint_probabilities",
    "joint_probabilities_closed_form",
    "marginal_probabilities_a",
    "SteeringBreakdown",
    "steering_value",
    "eur_bound",
    "SweepAxis",
    "GridSpec",
    "GridResult",
    "SweepError",
    "run_sweep",
    "write_table",
    "canonical_spec_json",
    "spec_seed",
    "QUANTITIES",
    "CSV_HEADER",
    "DEFAULT_SEED",
    "CheckResult",
    "VerificationReport",
    "run_verification",
]
