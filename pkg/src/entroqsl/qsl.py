"""Speed-limit times built from entropic distinguishability measures.

The estimate for each measure is the final divergence divided by the
time-averaged product of a spectral cost function and a state speed.  Two
speed sources exist: the exact trace-norm speed and the looser Kraus-sum
bound.  Two evaluation engines exist: a fast closed-form route on Bloch
coordinates (backed by the kernel in ``_backend``) and a slow matrix route
that recomputes everything from evolved density matrices.  The engines are
independent on purpose and are tested against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ._backend import weighted_speeds
from .channels import (
    ChannelKind,
    KrausChannel,
    Trajectory,
    UnitaryDrive,
    coherence_cross_norm,
    evolve,
    hamiltonian_std,
    kraus_speed_sum,
    unitary_commutator_norm,
)
from .divergences import (
    jeffreys,
    jensen_shannon,
    log_odds_ratio,
    neg_binary_entropy,
)
from .errors import BoundViolation, ChannelMismatch, UnsupportedForDrive
from .linalg import schatten_norm
from .states import DensityMatrix, kappa_min_max, mix

__all__ = [
    "MEASURES",
    "SPEED_MODES",
    "QslReport",
    "TauEstimate",
    "cost_J",
    "cost_JS",
    "averaged_weighted_speed",
    "integral_upper_bound",
    "tau_qsl",
    "tau_qsl_bounds_J",
    "tau_qsl_unitary",
    "mt_variance_floor",
    "channel_closed_forms",
    "relative_error",
    "normalize_over_grid",
    "evaluate_report",
    "divergence_rate_check",
    "log_trace_rate_check",
]

MEASURES = ("J", "JS")
SPEED_MODES = ("exact", "kraus-bound")

# Averages below this are treated as frozen dynamics: the state never moves,
# so the speed-limit time is reported as zero with a flag.
FROZEN_AVERAGE = 1e-14
# Default Simpson resolution for time averages.
QUADRATURE_PANELS = 2000
# Relative spread between full- and half-resolution Simpson sums above which
# the quadrature is flagged as not converged.
RICHARDSON_FLAG_RTOL = 1e-8
# Relative errors below this are a hard failure: the estimate exceeded the
# true duration by more than roundoff allows.
DELTA_ABORT = -1e-9

_MEASURE_CODES = {"J": 0, "JS": 1}
_SPEED_CODES = {"exact": 0, "kraus-bound": 1, "none": 2}
_KIND_CODES = {
    ChannelKind.DEPOLARIZING: 1,
    ChannelKind.PHASE_DAMPING: 2,
    ChannelKind.GAD: 3,
}


def _check_measure(measure: str):
    if measure not in _MEASURE_CODES:
        raise ValueError("measure must be one of %r, got %r" % (MEASURES, measure))


def _check_mode(speed_mode: str):
    if speed_mode not in _SPEED_CODES:
        raise ValueError(
            "speed_mode must be one of %r, got %r" % (SPEED_MODES + ("none",), speed_mode)
        )


def _effective_panels(panels: int) -> int:
    if panels < 4 or panels % 2:
        raise ValueError("panels must be an even integer >= 4, got %r" % (panels,))
    # The convergence flag embeds a half-resolution Simpson sum, which needs
    # a panel count divisible by four.
    return panels if panels % 4 == 0 else panels + 2


def _simpson(values: np.ndarray, h: float) -> float:
    n = values.shape[0] - 1
    total = values[0] + values[n] + 4.0 * values[1:n:2].sum() + 2.0 * values[2 : n - 1 : 2].sum()
    return float(h / 3.0 * total)


def _refined_average(values: np.ndarray, tau: float) -> Tuple[float, bool]:
    """Richardson-refined Simpson average of sampled values over [0, tau]."""
    n = values.shape[0] - 1
    h = tau / n
    fine = _simpson(values, h)
    coarse = _simpson(values[::2], 2.0 * h)
    refined = fine + (fine - coarse) / 15.0
    converged = abs(fine - coarse) <= RICHARDSON_FLAG_RTOL * max(abs(fine), 1e-300)
    return refined / tau, converged


def _kernel_profile(
    traj: Trajectory, tau: float, measure: str, speed_mode: str, panels: int
) -> np.ndarray:
    drive = traj.drive
    q = traj.initial
    if isinstance(drive, UnitaryDrive):
        kind = 0
        gamma = 0.0
        n_norm = drive.strength
        cross = coherence_cross_norm(drive, q)
        alpha = 0.0
    else:
        kind = _KIND_CODES[drive.kind]
        gamma = drive.gamma
        n_norm = 0.0
        cross = 0.0
        alpha = drive.alpha if drive.alpha is not None else 0.0
    nodes = np.linspace(0.0, tau, panels + 1)
    return weighted_speeds(
        kind,
        _MEASURE_CODES[measure],
        _SPEED_CODES[speed_mode],
        q.r,
        q.theta,
        alpha,
        gamma,
        n_norm,
        cross,
        nodes,
    )


def cost_J(rho0: DensityMatrix, rho_t: DensityMatrix) -> float:
    """Spectral cost for the symmetrized measure at one instant.

    Half of |ln of the product of minimum eigenvalues| plus half the
    condition-style ratio of the initial maximum to the current minimum.
    """
    k0_min, k0_max = kappa_min_max(rho0)
    kt_min, _ = kappa_min_max(rho_t)
    return 0.5 * (abs(math.log(k0_min * kt_min)) + k0_max / kt_min)


def cost_JS(rho0: DensityMatrix, rho_t: DensityMatrix) -> float:
    """Spectral cost for the Jensen-Shannon measure at one instant."""
    kt_min, _ = kappa_min_max(rho_t)
    km_min, _ = kappa_min_max(mix(rho0, rho_t, 0.5))
    return 0.5 * abs(math.log(kt_min * km_min))


def _matrix_profile(
    traj: Trajectory, tau: float, measure: str, speed_mode: str, panels: int
) -> np.ndarray:
    rho0 = traj.rho0
    nodes = np.linspace(0.0, tau, panels + 1)
    out = np.empty(nodes.shape[0])
    for i, ti in enumerate(nodes):
        rho_t = evolve(traj, float(ti))
        f = cost_J(rho0, rho_t) if measure == "J" else cost_JS(rho0, rho_t)
        if speed_mode == "exact":
            speed = schatten_norm(traj.state_derivative(float(ti)), 1)
        elif speed_mode == "kraus-bound":
            speed = 2.0 * kraus_speed_sum(traj, float(ti), route="numeric")
        else:
            speed = 1.0
        out[i] = f * speed
    return out


def averaged_weighted_speed(
    traj: Trajectory,
    tau: float,
    measure: str = "J",
    speed_mode: str = "exact",
    panels: int = QUADRATURE_PANELS,
    engine: str = "bloch",
) -> Tuple[float, bool]:
    """Time average over [0, tau] of cost times speed.

    Returns:
        (average, converged flag).

    Raises:
        UnsupportedForDrive: Kraus-sum mode with a unitary drive.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive, got %r" % (tau,))
    _check_measure(measure)
    _check_mode(speed_mode)
    if engine not in ("bloch", "matrix"):
        raise ValueError("engine must be 'bloch' or 'matrix', got %r" % (engine,))
    if speed_mode == "kraus-bound" and isinstance(traj.drive, UnitaryDrive):
        raise UnsupportedForDrive("Kraus-sum speed needs a dissipative channel")
    panels = _effective_panels(panels)
    if engine == "bloch":
        profile = _kernel_profile(traj, tau, measure, speed_mode, panels)
    else:
        profile = _matrix_profile(traj, tau, measure, speed_mode, panels)
    return _refined_average(profile, tau)


def _bloch_divergence_sq(traj: Trajectory, tau: float, measure: str) -> float:
    v0 = traj.bloch0
    vt = traj.bloch_at(tau)
    r0 = float(np.linalg.norm(v0))
    rt = float(np.linalg.norm(vt))
    dot = float(np.dot(v0, vt))
    if measure == "J":
        total = 0.0
        if r0 > 0.0:
            total += (r0 * r0 - dot) / r0 * log_odds_ratio(r0)
        if rt > 0.0:
            total += (rt * rt - dot) / rt * log_odds_ratio(min(rt, 1.0 - 1e-16))
        return max(0.25 * total, 0.0)
    nu = 0.5 * float(np.linalg.norm(v0 + vt))
    total = (
        0.5 * neg_binary_entropy(0.5 * (1.0 - r0))
        + 0.5 * neg_binary_entropy(0.5 * (1.0 - rt))
        - neg_binary_entropy(0.5 * (1.0 - min(nu, 1.0)))
    )
    return max(total, 0.0)


def _matrix_divergence_sq(traj: Trajectory, tau: float, measure: str) -> float:
    rho_tau = evolve(traj, tau)
    if measure == "J":
        return jeffreys(traj.rho0, rho_tau)
    return jensen_shannon(traj.rho0, rho_tau)


def _divergence_sq(traj: Trajectory, tau: float, measure: str, engine: str) -> float:
    if engine == "bloch":
        return _bloch_divergence_sq(traj, tau, measure)
    return _matrix_divergence_sq(traj, tau, measure)


@dataclass(frozen=True)
class TauEstimate:
    """One speed-limit evaluation: the time plus its ingredients."""

    value: float
    frozen: bool
    divergence_sq: float
    speed_average: float
    converged: bool


def tau_qsl(
    traj: Trajectory,
    tau: float,
    measure: str = "J",
    speed_mode: str = "exact",
    panels: int = QUADRATURE_PANELS,
    engine: str = "bloch",
) -> TauEstimate:
    """Speed-limit time: final divergence over the averaged weighted speed.

    Dynamics whose average falls below ``FROZEN_AVERAGE`` are flagged frozen
    and get a zero estimate instead of a division by zero.
    """
    _check_measure(measure)
    d2 = _divergence_sq(traj, tau, measure, engine)
    avg, converged = averaged_weighted_speed(traj, tau, measure, speed_mode, panels, engine)
    if avg < FROZEN_AVERAGE:
        return TauEstimate(0.0, True, d2, avg, converged)
    return TauEstimate(d2 / avg, False, d2, avg, converged)


def integral_upper_bound(
    traj: Trajectory,
    tau: float,
    measure: str = "J",
    panels: int = QUADRATURE_PANELS,
    engine: str = "bloch",
) -> float:
    """Square root of the integrated cost-times-exact-speed over [0, tau].

    Upper-bounds the distance-like divergence reached at tau, since the
    squared divergence grows no faster than the integrand.
    """
    avg, _ = averaged_weighted_speed(traj, tau, measure, "exact", panels, engine)
    return math.sqrt(max(tau * avg, 0.0))


def tau_qsl_bounds_J(
    traj: Trajectory,
    tau: float,
    speed_mode: str = "exact",
    panels: int = QUADRATURE_PANELS,
    engine: str = "bloch",
) -> Tuple[float, float]:
    """Norm-based bracket (below, above) around the symmetrized estimate.

    Shares the denominator with :func:`tau_qsl`; the numerators replace the
    divergence with its trace-norm lower and Frobenius upper bounds.
    """
    avg, _ = averaged_weighted_speed(traj, tau, "J", speed_mode, panels, engine)
    if avg < FROZEN_AVERAGE:
        return 0.0, 0.0
    if engine == "bloch":
        v0 = traj.bloch0
        vt = traj.bloch_at(tau)
        diff = float(np.linalg.norm(v0 - vt))
        trace_sq = diff * diff
        frob_sq = 0.5 * diff * diff
        k0 = 0.5 * (1.0 - float(np.linalg.norm(v0)))
        kt = 0.5 * (1.0 - float(np.linalg.norm(vt)))
    else:
        rho_tau = evolve(traj, tau)
        delta = traj.rho0.matrix - rho_tau.matrix
        trace_sq = schatten_norm(delta, 1) ** 2
        frob_sq = schatten_norm(delta, 2) ** 2
        k0 = kappa_min_max(traj.rho0)[0]
        kt = kappa_min_max(rho_tau)[0]
    below = 0.5 * trace_sq / avg
    above = (k0 + kt) * frob_sq / (2.0 * k0 * kt * avg)
    return below, above


def _unitary_js_cost_average(
    drive: UnitaryDrive, r: float, cross: float, tau: float, panels: int
) -> float:
    """Average over [0, tau] of |ln((1-r)(1-nu_t)/4)| for a unitary drive."""
    nodes = np.linspace(0.0, tau, panels + 1)
    sin_sq = np.sin(drive.strength * nodes) ** 2
    nu = r * np.sqrt(np.maximum(1.0 - cross * cross * sin_sq, 0.0))
    values = np.abs(np.log((1.0 - r) * (1.0 - nu) * 0.25))
    avg, _ = _refined_average(values, tau)
    return avg


def tau_qsl_unitary(
    drive: UnitaryDrive,
    q,
    tau: float,
    measure: str = "J",
    panels: int = QUADRATURE_PANELS,
) -> float:
    """Closed-form speed-limit time under a constant Hamiltonian drive.

    The symmetrized variant is fully explicit; the Jensen-Shannon variant
    keeps one scalar time average of a logarithmic cost.  An aligned axis
    and Bloch vector give zero (nothing evolves).
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive, got %r" % (tau,))
    _check_measure(measure)
    r = q.r
    cross = coherence_cross_norm(drive, q)
    if cross == 0.0 or r == 0.0:
        return 0.0
    omega = drive.strength
    if measure == "J":
        denominator = omega * (2.0 * abs(math.log(0.5 * (1.0 - r))) + (1.0 + r) / (1.0 - r))
        return cross * log_odds_ratio(r) * math.sin(omega * tau) ** 2 / denominator
    panels = _effective_panels(panels)
    sin_tau = math.sin(omega * tau)
    nu_tau = r * math.sqrt(max(1.0 - cross * cross * sin_tau * sin_tau, 0.0))
    numerator = neg_binary_entropy(0.5 * (1.0 - r)) - neg_binary_entropy(0.5 * (1.0 - nu_tau))
    cost_avg = _unitary_js_cost_average(drive, r, cross, tau, panels)
    return numerator / (r * omega * cross * cost_avg)


def mt_variance_floor(
    drive: UnitaryDrive,
    q,
    tau: float,
    measure: str = "J",
    panels: int = QUADRATURE_PANELS,
) -> float:
    """Energy-variance floor below the speed-limit time for a drive.

    Replaces the commutator speed with twice the Hamiltonian standard
    deviation, which can only shrink the estimate.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive, got %r" % (tau,))
    _check_measure(measure)
    r = q.r
    cross = coherence_cross_norm(drive, q)
    if cross == 0.0 or r == 0.0:
        return 0.0
    dev = hamiltonian_std(drive, q)
    omega = drive.strength
    sin_sq = math.sin(omega * tau) ** 2
    if measure == "J":
        d2 = r * log_odds_ratio(r) * cross * cross * sin_sq
        return d2 / ((2.0 * abs(math.log(0.5 * (1.0 - r))) + (1.0 + r) / (1.0 - r)) * dev)
    panels = _effective_panels(panels)
    nu_tau = r * math.sqrt(max(1.0 - cross * cross * sin_sq, 0.0))
    d2 = neg_binary_entropy(0.5 * (1.0 - r)) - neg_binary_entropy(0.5 * (1.0 - nu_tau))
    cost_avg = _unitary_js_cost_average(drive, r, cross, tau, panels)
    return d2 / (cost_avg * dev)


def _depolarizing_forms(r: float, gamma_tau: float) -> Dict[str, float]:
    decay = math.exp(-gamma_tau)
    r_tau = r * decay
    nu_tau = 0.5 * (1.0 + decay) * r
    log_r = log_odds_ratio(r)
    log_rt = log_odds_ratio(r_tau)
    d_j_sq = 0.25 * (r - r_tau) * (log_r - log_rt)
    ratio_j_den = (
        (1.0 + decay) * math.log1p(-r * decay)
        - (3.0 - decay) * math.log1p(-r)
        + (1.0 - decay) * (2.0 * math.log(2.0) + 1.0)
    )
    h_sum = (
        neg_binary_entropy(0.5 * (1.0 - r))
        + neg_binary_entropy(0.5 * (1.0 - r_tau))
        - 2.0 * neg_binary_entropy(0.5 * (1.0 - nu_tau))
    )
    ratio_js_den = (
        (2.0 + math.log(2.0)) * (r - r_tau)
        - (1.0 - r_tau) * math.log(0.25 * (1.0 - r_tau))
        - (2.0 - r - r_tau) * math.log(2.0 - r - r_tau)
        + 3.0 * (1.0 - r) * math.log1p(-r)
    )
    return {
        "qjpd": math.sqrt(max(d_j_sq, 0.0)),
        "qsl_ratio_j": (r / 3.0) * (1.0 - decay) * (log_r - log_rt) / ratio_j_den,
        "qjsd": math.sqrt(max(0.5 * h_sum, 0.0)),
        "qsl_ratio_js": (2.0 * r / 3.0) * h_sum / ratio_js_den,
    }


def _phase_damping_forms(r: float, theta: float, gamma_tau: float) -> Dict[str, float]:
    lam = -math.expm1(-gamma_tau)
    root = math.sqrt(1.0 - lam)
    sin_th = math.sin(theta)
    r_tau = r * math.sqrt(1.0 - lam * sin_th * sin_th)
    inner = 1.0 - 0.25 * (lam + 2.0 * (1.0 - root)) * sin_th * sin_th
    nu_tau = r * math.sqrt(max(inner, 0.0))
    if r_tau > 0.0:
        bracket = log_odds_ratio(r) - (r * root / r_tau) * log_odds_ratio(r_tau)
    else:
        bracket = log_odds_ratio(r)
    d_j_sq = 0.25 * sin_th * sin_th * r * (1.0 - root) * bracket
    h_sum = (
        neg_binary_entropy(0.5 * (1.0 - r_tau))
        + neg_binary_entropy(0.5 * (1.0 - r))
        - 2.0 * neg_binary_entropy(0.5 * (1.0 - nu_tau))
    )
    return {
        "qjpd": math.sqrt(max(d_j_sq, 0.0)),
        "qjsd": math.sqrt(max(0.5 * h_sum, 0.0)),
    }


def _gad_forms(r: float, theta: float, alpha: float, gamma_tau: float) -> Dict[str, float]:
    lam = -math.expm1(-gamma_tau)
    decay = 1.0 - lam
    root = math.sqrt(decay)
    cos_th = math.cos(theta)
    sin_th = math.sin(theta)
    shift = (2.0 * alpha - 1.0) * lam
    axial = shift + decay * r * cos_th
    r_tau = math.sqrt(axial * axial + decay * r * r * sin_th * sin_th)
    two_less = 2.0 - lam
    nu_inner = shift * (2.0 * two_less * r * cos_th + shift)
    nu_inner += r * r * (two_less * two_less + (2.0 - two_less * root) * root * sin_th * sin_th)
    nu_tau = 0.5 * math.sqrt(max(nu_inner, 0.0))
    xi = r * (1.0 - root) * (1.0 + root * cos_th * cos_th) - shift * cos_th
    if r_tau > 0.0:
        second = (r_tau + r * (xi - r) / r_tau) * log_odds_ratio(min(r_tau, 1.0 - 1e-16))
    else:
        second = 0.0
    d_j_sq = 0.25 * (xi * log_odds_ratio(r) + second)
    h_sum = (
        neg_binary_entropy(0.5 * (1.0 - r_tau))
        + neg_binary_entropy(0.5 * (1.0 - r))
        - 2.0 * neg_binary_entropy(0.5 * (1.0 - nu_tau))
    )
    return {
        "qjpd": math.sqrt(max(d_j_sq, 0.0)),
        "qjsd": math.sqrt(max(0.5 * h_sum, 0.0)),
    }


def channel_closed_forms(traj: Trajectory, tau: float, which: Optional[str] = None):
    """Printed closed forms for the supported channels at duration tau.

    The depolarizing kind exposes ``qjpd``, ``qsl_ratio_j`` (the Kraus-sum
    mode estimate over tau), ``qjsd`` and ``qsl_ratio_js``; phase damping
    and gad expose ``qjpd`` and ``qjsd``.

    Args:
        which: a single key to extract, or None for the full dict.

    Raises:
        ChannelMismatch: for unitary drives or a key the channel lacks.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive, got %r" % (tau,))
    drive = traj.drive
    if not isinstance(drive, KrausChannel):
        raise ChannelMismatch("closed forms exist only for dissipative channels")
    q = traj.initial
    gamma_tau = drive.gamma * tau
    if drive.kind is ChannelKind.DEPOLARIZING:
        forms = _depolarizing_forms(q.r, gamma_tau)
    elif drive.kind is ChannelKind.PHASE_DAMPING:
        forms = _phase_damping_forms(q.r, q.theta, gamma_tau)
    else:
        forms = _gad_forms(q.r, q.theta, drive.alpha, gamma_tau)
    if which is None:
        return forms
    if which not in forms:
        raise ChannelMismatch(
            "%r has no closed form %r (available: %s)"
            % (drive.kind.value, which, ", ".join(sorted(forms)))
        )
    return forms[which]


def relative_error(tau_qsl_value: float, tau: float) -> float:
    """Tightness 1 - tau_qsl / tau of an estimate against the true duration.

    Raises:
        BoundViolation: if the estimate exceeds tau beyond roundoff; such a
            value is never clipped into range.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive, got %r" % (tau,))
    delta = 1.0 - tau_qsl_value / tau
    if delta < DELTA_ABORT:
        raise BoundViolation(
            "speed-limit estimate %.12e exceeds duration %.12e (delta=%.3e); "
            "this breaks a proven inequality, results are not trustworthy"
            % (tau_qsl_value, tau, delta)
        )
    return delta


def normalize_over_grid(values) -> Tuple[np.ndarray, bool]:
    """Min-max rescaling of a value grid onto [0, 1].

    Returns zeros with a degenerate flag when the spread vanishes (all
    values equal) or any value is not finite.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return arr.copy(), True
    if not np.all(np.isfinite(arr)):
        return np.zeros_like(arr), True
    vmin = float(arr.min())
    vmax = float(arr.max())
    span = vmax - vmin
    if span <= 1e-12 * max(1.0, abs(vmax), abs(vmin)):
        return np.zeros_like(arr), True
    return (arr - vmin) / span, False


@dataclass(frozen=True)
class QslReport:
    """Everything computed for one (state, drive, duration) scenario.

    Fields for a measure that was not requested stay None.  The ``exact``
    and ``kraus_bound`` estimate pairs are reported side by side whenever
    the drive supports both; ``tau_qsl_J``/``tau_qsl_JS`` repeat the value
    for the configured ``speed_mode``.
    """

    tau: float
    speed_mode: str
    divergence_J: Optional[float] = None
    speed_avg_J: Optional[float] = None
    tau_qsl_J: Optional[float] = None
    tau_qsl_J_exact: Optional[float] = None
    tau_qsl_J_kraus_bound: Optional[float] = None
    tau_J_below: Optional[float] = None
    tau_J_above: Optional[float] = None
    delta_J: Optional[float] = None
    frozen_J: Optional[bool] = None
    converged_J: Optional[bool] = None
    divergence_JS: Optional[float] = None
    speed_avg_JS: Optional[float] = None
    tau_qsl_JS: Optional[float] = None
    tau_qsl_JS_exact: Optional[float] = None
    tau_qsl_JS_kraus_bound: Optional[float] = None
    delta_JS: Optional[float] = None
    frozen_JS: Optional[bool] = None
    converged_JS: Optional[bool] = None


def evaluate_report(
    traj: Trajectory,
    tau: float,
    measures: Tuple[str, ...] = MEASURES,
    speed_mode: str = "exact",
    panels: int = QUADRATURE_PANELS,
    engine: str = "bloch",
) -> QslReport:
    """Full speed-limit report for one scenario.

    A zero duration freezes every field at zero with delta one.  For
    dissipative drives both speed modes are evaluated; the configured mode
    fills the canonical fields and the norm bracket.  The default engine
    evaluates integrand nodes through the Bloch kernel; "matrix" rebuilds
    each node from evolved density matrices as an independent cross-check.
    """
    if tau < 0.0:
        raise ValueError("tau must be nonnegative, got %r" % (tau,))
    _check_mode(speed_mode)
    if speed_mode == "none":
        raise ValueError("speed_mode 'none' is internal to cost averages")
    for measure in measures:
        _check_measure(measure)
    is_unitary = isinstance(traj.drive, UnitaryDrive)
    if is_unitary and speed_mode == "kraus-bound":
        raise UnsupportedForDrive("Kraus-sum speed needs a dissipative channel")

    fields: Dict[str, object] = {"tau": tau, "speed_mode": speed_mode}
    for measure in measures:
        tag = measure
        if tau == 0.0:
            fields["divergence_%s" % tag] = 0.0
            fields["speed_avg_%s" % tag] = 0.0
            fields["tau_qsl_%s" % tag] = 0.0
            fields["tau_qsl_%s_exact" % tag] = 0.0
            if not is_unitary:
                fields["tau_qsl_%s_kraus_bound" % tag] = 0.0
            fields["delta_%s" % tag] = 1.0
            fields["frozen_%s" % tag] = True
            fields["converged_%s" % tag] = True
            if measure == "J":
                fields["tau_J_below"] = 0.0
                fields["tau_J_above"] = 0.0
            continue
        d2 = _divergence_sq(traj, tau, measure, engine)
        estimates: Dict[str, TauEstimate] = {}
        modes = ("exact",) if is_unitary else SPEED_MODES
        for mode in modes:
            avg, converged = averaged_weighted_speed(
                traj, tau, measure, mode, panels, engine
            )
            frozen = avg < FROZEN_AVERAGE
            value = 0.0 if frozen else d2 / avg
            estimates[mode] = TauEstimate(value, frozen, d2, avg, converged)
        chosen = estimates[speed_mode]
        fields["divergence_%s" % tag] = math.sqrt(max(d2, 0.0))
        fields["speed_avg_%s" % tag] = chosen.speed_average
        fields["tau_qsl_%s" % tag] = chosen.value
        fields["tau_qsl_%s_exact" % tag] = estimates["exact"].value
        if not is_unitary:
            fields["tau_qsl_%s_kraus_bound" % tag] = estimates["kraus-bound"].value
        fields["delta_%s" % tag] = relative_error(chosen.value, tau)
        fields["frozen_%s" % tag] = chosen.frozen
        fields["converged_%s" % tag] = chosen.converged
        if measure == "J":
            if chosen.frozen:
                fields["tau_J_below"] = 0.0
                fields["tau_J_above"] = 0.0
            else:
                below, above = tau_qsl_bounds_J(traj, tau, speed_mode, panels, engine)
                fields["tau_J_below"] = below
                fields["tau_J_above"] = above
    return QslReport(**fields)


def divergence_rate_check(traj: Trajectory, t: float, measure: str = "J") -> Dict[str, float]:
    """Checks |d(divergence^2)/dt| <= cost * speed at one instant.

    The left side is a symmetric finite difference of the matrix-route
    squared divergence between the initial and evolved states; the right
    side is the instantaneous weighted speed.  Returns lhs, rhs and their
    signed margin (rhs - lhs, nonnegative when the inequality holds).
    """
    _check_measure(measure)
    h = 1e-5 / traj.rate_scale
    if t < h:
        raise ValueError("need t >= %g for the symmetric stencil" % h)
    d2 = lambda s: _matrix_divergence_sq(traj, s, measure)
    lhs = abs((d2(t + h) - d2(t - h)) / (2.0 * h))
    rho_t = evolve(traj, t)
    f = cost_J(traj.rho0, rho_t) if measure == "J" else cost_JS(traj.rho0, rho_t)
    speed = schatten_norm(traj.state_derivative(t), 1)
    rhs = f * speed
    return {"lhs": lhs, "rhs": rhs, "margin": rhs - lhs}


def log_trace_rate_check(traj: Trajectory, t: float) -> Dict[str, float]:
    """Checks |d/dt Tr(rho_0 ln rho_t)| <= ratio * speed at one instant.

    The ratio is the initial maximum eigenvalue over the current minimum.
    Returns lhs, rhs and their signed margin.
    """
    from .linalg import matrix_log_spectral

    h = 1e-5 / traj.rate_scale
    if t < h:
        raise ValueError("need t >= %g for the symmetric stencil" % h)
    rho0 = traj.rho0.matrix

    def overlap(s: float) -> float:
        return float(np.trace(rho0 @ matrix_log_spectral(evolve(traj, s).matrix)).real)

    lhs = abs((overlap(t + h) - overlap(t - h)) / (2.0 * h))
    _, k0_max = kappa_min_max(traj.rho0)
    kt_min, _ = kappa_min_max(evolve(traj, t))
    speed = schatten_norm(traj.state_derivative(t), 1)
    rhs = k0_max / kt_min * speed
    return {"lhs": lhs, "rhs": rhs, "margin": rhs - lhs}
