"""Entropic distinguishability measures and quantum-speed-limit times.

The library covers three layers:

- `linalg`, `states`: hermitian eigensolver, Schatten norms, matrix logs
  by two routes, density matrices and Bloch parametrization.
- `divergences`: relative entropy (closed form and matrix route), Jeffreys
  and Jensen-Shannon combinations, their square-root distances, bounds.
- `channels`, `qsl`: unitary drives and three qubit channels with exact
  evolution speeds, averaged cost integrals and the resulting speed-limit
  times, with closed forms cross-checked against matrix-route oracles.

Hot grid evaluations run through a compiled kernel when the extension is
available and fall back to a numpy implementation otherwise; see
`entroqsl.BACKEND_NAME`.
"""

from ._backend import BACKEND_NAME
from .channels import (
    ChannelKind,
    KrausChannel,
    Trajectory,
    UnitaryDrive,
    analytic_nu,
    analytic_radius,
    apply_channel,
    depolarizing,
    evolve,
    generalized_amplitude_damping,
    kraus_operators,
    kraus_speed_sum,
    phase_damping,
    schatten_speed,
    unitary_commutator_norm,
)
from .divergences import (
    asymmetry_bound,
    entropy_rate_identity_check,
    jeffreys,
    jensen_shannon,
    qjpd,
    qjsd,
    qre_bounds,
    qubit_relative_entropy_closed_form,
    relative_entropy,
    von_neumann_entropy,
)
from .errors import (
    BoundViolation,
    ChannelMismatch,
    ConfigError,
    DimensionMismatch,
    DomainError,
    InvalidBloch,
    InvalidParameter,
    NegativeDivergence,
    NoConvergence,
    NotHermitian,
    QuadratureFailure,
    SingularState,
    ToolkitError,
    UnsupportedForDrive,
)
from .linalg import (
    hermitian_eig,
    matrix_log_integral,
    matrix_log_spectral,
    schatten_norm,
)
from .qsl import (
    QslReport,
    TauEstimate,
    averaged_weighted_speed,
    channel_closed_forms,
    evaluate_report,
    integral_upper_bound,
    mt_variance_floor,
    normalize_over_grid,
    relative_error,
    tau_qsl,
    tau_qsl_bounds_J,
    tau_qsl_unitary,
)
from .states import (
    BlochQubit,
    DensityMatrix,
    bloch_vector,
    from_bloch,
    kappa_min_max,
    mix,
    to_bloch,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BACKEND_NAME",
    # states
    "BlochQubit",
    "DensityMatrix",
    "bloch_vector",
    "from_bloch",
    "to_bloch",
    "mix",
    "kappa_min_max",
    # linalg
    "hermitian_eig",
    "schatten_norm",
    "matrix_log_spectral",
    "matrix_log_integral",
    # divergences
    "relative_entropy",
    "qubit_relative_entropy_closed_form",
    "von_neumann_entropy",
    "jeffreys",
    "qjpd",
    "jensen_shannon",
    "qjsd",
    "qre_bounds",
    "asymmetry_bound",
    "entropy_rate_identity_check",
    # channels
    "ChannelKind",
    "KrausChannel",
    "UnitaryDrive",
    "Trajectory",
    "depolarizing",
    "phase_damping",
    "generalized_amplitude_damping",
    "kraus_operators",
    "apply_channel",
    "evolve",
    "analytic_radius",
    "analytic_nu",
    "kraus_speed_sum",
    "schatten_speed",
    "unitary_commutator_norm",
    # qsl
    "QslReport",
    "TauEstimate",
    "averaged_weighted_speed",
    "tau_qsl",
    "tau_qsl_bounds_J",
    "tau_qsl_unitary",
    "integral_upper_bound",
    "mt_variance_floor",
    "channel_closed_forms",
    "relative_error",
    "normalize_over_grid",
    "evaluate_report",
    # errors
    "ToolkitError",
    "NotHermitian",
    "NoConvergence",
    "SingularState",
    "QuadratureFailure",
    "DimensionMismatch",
    "InvalidBloch",
    "InvalidParameter",
    "UnsupportedForDrive",
    "DomainError",
    "NegativeDivergence",
    "ChannelMismatch",
    "BoundViolation",
    "ConfigError",
]
