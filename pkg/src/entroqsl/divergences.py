"""Entropic distinguishability measures between density matrices.

Includes the directed relative entropy, its symmetrized and Jensen-Shannon
variants, the distance-like square roots of both, two-sided bounds, and an
identity check for the entropy production rate along a trajectory.  Matrix
and closed-form qubit routes are kept separate on purpose so each can verify
the other.
"""

from __future__ import annotations

import math
from typing import Dict, Optional

import numpy as np

from .errors import DimensionMismatch, DomainError, NegativeDivergence
from .linalg import hermitian_eig, matrix_log_spectral, schatten_norm
from .states import BlochQubit, DensityMatrix, kappa_min_max, mix

__all__ = [
    "von_neumann_entropy",
    "relative_entropy",
    "qubit_relative_entropy_closed_form",
    "jeffreys",
    "qjpd",
    "jensen_shannon",
    "qjsd",
    "qre_bounds",
    "asymmetry_bound",
    "entropy_rate_identity_check",
    "qjpd_triangle_report",
    "neg_binary_entropy",
    "log_odds_ratio",
]

# Negative divergence values above this threshold are treated as roundoff
# and clamped to zero; anything below it raises.
NEGATIVE_CLAMP = -1e-10


def _clamped(value: float, label: str) -> float:
    if value < NEGATIVE_CLAMP:
        raise NegativeDivergence("%s evaluated to %.3e" % (label, value))
    return max(value, 0.0)


def _check_same_dim(a: DensityMatrix, b: DensityMatrix):
    if a.dim != b.dim:
        raise DimensionMismatch("states differ in dimension: %d vs %d" % (a.dim, b.dim))


def neg_binary_entropy(x: float) -> float:
    """x*ln(x) + (1-x)*ln(1-x) with the 0*ln(0) = 0 convention."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("argument must lie in [0, 1], got %r" % (x,))
    total = 0.0
    if x > 0.0:
        total += x * math.log(x)
    if x < 1.0:
        total += (1.0 - x) * math.log1p(-x)
    return total


def log_odds_ratio(r: float) -> float:
    """ln((1+r)/(1-r)) for a Bloch radius 0 <= r < 1."""
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must lie in [0, 1), got %r" % (r,))
    return math.log1p(r) - math.log1p(-r)


def von_neumann_entropy(state: DensityMatrix) -> float:
    """Entropy -Tr(rho ln rho) in nats, with 0*ln(0) = 0."""
    evals = state.eigenvalues
    positive = evals[evals > 0.0]
    return _clamped(float(-np.sum(positive * np.log(positive))), "entropy")


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Directed divergence Tr rho (ln rho - ln sigma) via spectral logs.

    Raises:
        SingularState: if either argument has an eigenvalue at the log floor.
        DimensionMismatch: if the states differ in dimension.
    """
    _check_same_dim(rho, sigma)
    log_rho = matrix_log_spectral(rho.matrix)
    log_sigma = matrix_log_spectral(sigma.matrix)
    value = float(np.trace(rho.matrix @ (log_rho - log_sigma)).real)
    return _clamped(value, "relative entropy")


def qubit_relative_entropy_closed_form(a: BlochQubit, b: BlochQubit) -> float:
    """Directed qubit divergence straight from Bloch coordinates.

    Independent of the matrix route in :func:`relative_entropy`; the two are
    required to agree to high accuracy and are tested against each other.
    """
    cos_gamma = math.cos(a.theta) * math.cos(b.theta) + math.sin(a.theta) * math.sin(
        b.theta
    ) * math.cos(a.phi - b.phi)
    value = 0.5 * (math.log1p(-a.r * a.r) - math.log1p(-b.r * b.r))
    value += 0.5 * a.r * (log_odds_ratio(a.r) - cos_gamma * log_odds_ratio(b.r))
    return _clamped(value, "closed-form relative entropy")


def jeffreys(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Symmetrized divergence: mean of the two directed relative entropies."""
    return 0.5 * (relative_entropy(rho, sigma) + relative_entropy(sigma, rho))


def qjpd(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Square root of the symmetrized divergence; behaves like a distance."""
    return math.sqrt(jeffreys(rho, sigma))


def jensen_shannon(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Mean divergence of each state from the equal-weight mixture.

    Computed through two directed relative entropies.  Bounded by ln(2) for
    a pair and by 1 in general; the distance form in :func:`qjsd` evaluates
    the same quantity through entropies instead.
    """
    midpoint = mix(rho, sigma, 0.5)
    return 0.5 * (relative_entropy(rho, midpoint) + relative_entropy(sigma, midpoint))


def qjsd(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Distance form: sqrt of the mixture-entropy excess.

    Uses S(midpoint) - (S(rho) + S(sigma)) / 2, an algebraically equal but
    numerically independent route from :func:`jensen_shannon`.
    """
    midpoint = mix(rho, sigma, 0.5)
    excess = von_neumann_entropy(midpoint) - 0.5 * (
        von_neumann_entropy(rho) + von_neumann_entropy(sigma)
    )
    return math.sqrt(_clamped(excess, "Jensen-Shannon excess"))


def qre_bounds(rho: DensityMatrix, sigma: DensityMatrix) -> Dict[str, float]:
    """Two-sided bracket of the directed relative entropy S(rho || sigma).

    Returns:
        dict with keys ``pinsker_lower`` (half squared trace norm),
        ``two_norm_upper`` (squared Frobenius norm over the smallest
        eigenvalue of sigma), ``s_min`` (support-projection lower witness),
        and ``s_max`` (scaling upper witness found by bisection).
    """
    _check_same_dim(rho, sigma)
    diff = rho.matrix - sigma.matrix
    trace_norm = schatten_norm(diff, 1)
    frob = schatten_norm(diff, 2)
    kmin_sigma, _ = kappa_min_max(sigma)
    _, kmax_rho = kappa_min_max(rho)

    # Support projector of rho applied to sigma.
    decomp = hermitian_eig(rho.matrix)
    keep = decomp.eigenvalues > 1e-12
    basis = decomp.eigenvectors[:, keep]
    overlap = float(np.trace(basis.conj().T @ sigma.matrix @ basis).real)
    s_min = -math.log(min(max(overlap, 1e-300), 1.0))

    # Smallest scale factor lam with lam * sigma - rho positive semidefinite.
    def is_psd(lam: float) -> bool:
        evals = hermitian_eig(lam * sigma.matrix - rho.matrix).eigenvalues
        return float(evals[0]) >= 0.0

    lo = 1.0
    hi = max(1.0, kmax_rho / kmin_sigma)
    if not is_psd(hi):
        hi *= 1.0 + 1e-12
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if is_psd(mid):
            hi = mid
        else:
            lo = mid
    return {
        "pinsker_lower": 0.5 * trace_norm * trace_norm,
        "two_norm_upper": frob * frob / kmin_sigma,
        "s_min": s_min,
        "s_max": math.log(hi),
    }


def asymmetry_bound(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Upper bound on |S(rho || sigma) - S(sigma || rho)|.

    Built from the smaller of the two minimum eigenvalues and the trace
    distance through a classical two-outcome comparison function.

    Raises:
        DomainError: if the (eigenvalue, distance) pair leaves the validity
            region of the bound.
    """
    _check_same_dim(rho, sigma)
    u = min(kappa_min_max(rho)[0], kappa_min_max(sigma)[0])
    v = 0.5 * schatten_norm(rho.matrix - sigma.matrix, 1)
    if not -1.0 <= v <= 1.0:
        raise DomainError("trace distance %r outside [-1, 1]" % (v,))
    if not max(0.0, -v) <= u <= min(1.0, 1.0 - v):
        raise DomainError(
            "eigenvalue %r incompatible with distance %r in the bound domain" % (u, v)
        )

    def g(p: float, q: float) -> float:
        if not (0.0 < q < 1.0):
            raise DomainError("comparison function needs interior second argument")
        total = 0.0
        if p > 0.0:
            total += p * math.log(p / q)
        if p < 1.0:
            total += (1.0 - p) * math.log((1.0 - p) / (1.0 - q))
        return total

    if v == 0.0:
        return 0.0
    return g(u + v, u) - g(u, u + v)


def entropy_rate_identity_check(
    trajectory, t: float, step: Optional[float] = None
) -> Dict[str, float]:
    """Compares two routes to the entropy production rate at time t.

    The left side differentiates the entropy numerically with a symmetric
    stencil (one-sided near t = 0); the right side evaluates
    -Tr(ln(rho_t) drho_t/dt) with the analytic state derivative.  Any object
    exposing ``state(t)``, ``state_derivative(t)`` and ``rate_scale`` works.

    Returns:
        dict with keys ``lhs``, ``rhs`` and ``gap``.
    """
    if t < 0.0:
        raise ValueError("time must be nonnegative, got %r" % (t,))
    h = step if step is not None else 1e-5 / trajectory.rate_scale
    if t >= h:
        s_plus = von_neumann_entropy(trajectory.state(t + h))
        s_minus = von_neumann_entropy(trajectory.state(t - h))
        lhs = (s_plus - s_minus) / (2.0 * h)
    else:
        s0 = von_neumann_entropy(trajectory.state(t))
        s1 = von_neumann_entropy(trajectory.state(t + h))
        s2 = von_neumann_entropy(trajectory.state(t + 2.0 * h))
        lhs = (-3.0 * s0 + 4.0 * s1 - s2) / (2.0 * h)
    rho_t = trajectory.state(t)
    log_rho = matrix_log_spectral(rho_t.matrix)
    rhs = -float(np.trace(log_rho @ trajectory.state_derivative(t)).real)
    return {"lhs": lhs, "rhs": rhs, "gap": abs(lhs - rhs)}


def qjpd_triangle_report(
    n_triples: int = 1000, seed: int = 7, dim: int = 2
) -> Dict[str, float]:
    """Monte-Carlo survey of the triangle inequality for the qjpd distance.

    No general proof of the triangle property is assumed for this quantity,
    so the result is reported rather than asserted.  Every cyclic labeling of
    each random triple is examined.

    Returns:
        dict with the number of triples, the largest observed excess
        D(a, c) - D(a, b) - D(b, c) across labelings (negative means the
        inequality held), and the count of violations beyond 1e-10.
    """
    from .sampling import random_full_rank_state

    rng = np.random.default_rng(seed)
    worst = -math.inf
    violations = 0
    for _ in range(n_triples):
        states = [random_full_rank_state(rng, dim, 1e-3) for _ in range(3)]
        d01 = qjpd(states[0], states[1])
        d12 = qjpd(states[1], states[2])
        d02 = qjpd(states[0], states[2])
        for excess in (d02 - d01 - d12, d01 - d02 - d12, d12 - d01 - d02):
            worst = max(worst, excess)
            if excess > 1e-10:
                violations += 1
    return {
        "triples": float(n_triples),
        "max_excess": worst,
        "violations": violations,
    }
