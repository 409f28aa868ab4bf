"""Qubit noise channels, unitary drives, and evolved trajectories.

Every channel carries two independent descriptions: a Kraus operator sum and
a closed-form affine map on the Bloch vector.  The pair is redundant on
purpose; agreement between the two routes is part of the verification suite.
Time dependence enters through the decay weight lam(t) = 1 - exp(-gamma*t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import List, Optional, Tuple, Union

import numpy as np

from .errors import InvalidParameter, UnsupportedForDrive
from .linalg import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    commutator,
    schatten_norm,
)
from .states import BlochQubit, DensityMatrix, bloch_vector, from_bloch

__all__ = [
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
    "unitary_commutator_norm",
    "hamiltonian_std",
    "schatten_speed",
]

# Numeric Kraus-derivative products are evaluated with the decay weight
# floored here; the sqrt(lam) factors cancel exactly, so this reproduces the
# finite right-limit at t = 0 without dividing by zero.
LAMBDA_FLOOR = 1e-250


class ChannelKind(Enum):
    DEPOLARIZING = "depolarizing"
    PHASE_DAMPING = "phase-damping"
    GAD = "gad"


@dataclass(frozen=True)
class KrausChannel:
    """Markovian qubit channel with rate gamma.

    Attributes:
        kind: which noise process the channel applies.
        gamma: decay rate, strictly positive.
        alpha: asymmetry weight in [0, 1]; required for the generalized
            amplitude damping kind and forbidden otherwise.
    """

    kind: ChannelKind
    gamma: float
    alpha: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.kind, ChannelKind):
            raise InvalidParameter("kind must be a ChannelKind, got %r" % (self.kind,))
        if not (math.isfinite(self.gamma) and self.gamma > 0.0):
            raise InvalidParameter("gamma must be finite and positive, got %r" % (self.gamma,))
        if self.kind is ChannelKind.GAD:
            if self.alpha is None or not (
                math.isfinite(self.alpha) and 0.0 <= self.alpha <= 1.0
            ):
                raise InvalidParameter(
                    "generalized amplitude damping needs alpha in [0, 1], got %r"
                    % (self.alpha,)
                )
        elif self.alpha is not None:
            raise InvalidParameter("alpha only applies to the gad kind")

    def lam(self, t: float) -> float:
        """Decay weight 1 - exp(-gamma*t), evaluated without cancellation."""
        if t < 0.0:
            raise InvalidParameter("time must be nonnegative, got %r" % (t,))
        return -math.expm1(-self.gamma * t)


def depolarizing(gamma: float) -> KrausChannel:
    return KrausChannel(ChannelKind.DEPOLARIZING, gamma)


def phase_damping(gamma: float) -> KrausChannel:
    return KrausChannel(ChannelKind.PHASE_DAMPING, gamma)


def generalized_amplitude_damping(gamma: float, alpha: float) -> KrausChannel:
    return KrausChannel(ChannelKind.GAD, gamma, alpha)


@dataclass(frozen=True)
class UnitaryDrive:
    """Constant Hamiltonian drive n . sigma described by its axis vector."""

    axis: Tuple[float, float, float]

    def __post_init__(self):
        ax = tuple(float(c) for c in self.axis)
        if len(ax) != 3 or not all(math.isfinite(c) for c in ax):
            raise InvalidParameter("axis must be three finite components, got %r" % (self.axis,))
        if ax == (0.0, 0.0, 0.0):
            raise InvalidParameter("axis must be nonzero")
        object.__setattr__(self, "axis", ax)

    @cached_property
    def axis_vector(self) -> np.ndarray:
        return np.array(self.axis)

    @cached_property
    def strength(self) -> float:
        """Euclidean norm of the axis vector; sets the rotation rate."""
        return float(np.linalg.norm(self.axis_vector))

    @cached_property
    def unit_axis(self) -> np.ndarray:
        return self.axis_vector / self.strength

    @cached_property
    def hamiltonian(self) -> np.ndarray:
        n = self.axis_vector
        return n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z

    def propagator(self, t: float) -> np.ndarray:
        """exp(-i H t) written in closed form for a traceless qubit H."""
        angle = self.strength * t
        return math.cos(angle) * IDENTITY_2 - 1j * math.sin(angle) * (
            self.hamiltonian / self.strength
        )


Drive = Union[KrausChannel, UnitaryDrive]


@dataclass(frozen=True)
class Trajectory:
    """An initial interior qubit state under a channel or unitary drive."""

    initial: BlochQubit
    drive: Drive

    def __post_init__(self):
        if not isinstance(self.initial, BlochQubit):
            raise InvalidParameter("initial must be a BlochQubit")
        if not isinstance(self.drive, (KrausChannel, UnitaryDrive)):
            raise InvalidParameter("drive must be a KrausChannel or UnitaryDrive")

    @cached_property
    def rho0(self) -> DensityMatrix:
        return from_bloch(self.initial)

    @cached_property
    def bloch0(self) -> np.ndarray:
        return bloch_vector(self.initial)

    @property
    def rate_scale(self) -> float:
        """Inverse time scale of the dynamics: gamma or the drive strength."""
        if isinstance(self.drive, UnitaryDrive):
            return self.drive.strength
        return self.drive.gamma

    def bloch_at(self, t: float) -> np.ndarray:
        """Bloch vector at time t from the closed-form affine map."""
        if t < 0.0:
            raise InvalidParameter("time must be nonnegative, got %r" % (t,))
        v = self.bloch0
        drive = self.drive
        if isinstance(drive, UnitaryDrive):
            angle = 2.0 * drive.strength * t
            n = drive.unit_axis
            return (
                v * math.cos(angle)
                + np.cross(n, v) * math.sin(angle)
                + n * float(np.dot(n, v)) * (1.0 - math.cos(angle))
            )
        lam = drive.lam(t)
        decay = 1.0 - lam
        root = math.sqrt(decay)
        if drive.kind is ChannelKind.DEPOLARIZING:
            return decay * v
        if drive.kind is ChannelKind.PHASE_DAMPING:
            return np.array([root * v[0], root * v[1], v[2]])
        shift = (2.0 * drive.alpha - 1.0) * lam
        return np.array([root * v[0], root * v[1], decay * v[2] + shift])

    def bloch_velocity(self, t: float) -> np.ndarray:
        """Time derivative of the Bloch vector, in closed form."""
        if t < 0.0:
            raise InvalidParameter("time must be nonnegative, got %r" % (t,))
        v = self.bloch0
        drive = self.drive
        if isinstance(drive, UnitaryDrive):
            angle = 2.0 * drive.strength * t
            n = drive.unit_axis
            rate = 2.0 * drive.strength
            return rate * (
                -v * math.sin(angle)
                + np.cross(n, v) * math.cos(angle)
                + n * float(np.dot(n, v)) * math.sin(angle)
            )
        lam = drive.lam(t)
        decay = 1.0 - lam
        lam_dot = drive.gamma * decay
        root_dot = -0.5 * lam_dot / math.sqrt(decay)
        if drive.kind is ChannelKind.DEPOLARIZING:
            return -lam_dot * v
        if drive.kind is ChannelKind.PHASE_DAMPING:
            return np.array([root_dot * v[0], root_dot * v[1], 0.0])
        shift_dot = (2.0 * drive.alpha - 1.0) * lam_dot
        return np.array([root_dot * v[0], root_dot * v[1], -lam_dot * v[2] + shift_dot])

    def state(self, t: float) -> DensityMatrix:
        """Evolved density matrix through the operator-sum route."""
        return evolve(self, t)

    def state_derivative(self, t: float) -> np.ndarray:
        """Analytic drho/dt as a complex matrix."""
        drive = self.drive
        if isinstance(drive, UnitaryDrive):
            rho_t = self.state(t).matrix
            return -1j * commutator(drive.hamiltonian, rho_t)
        dv = self.bloch_velocity(t)
        return 0.5 * (dv[0] * PAULI_X + dv[1] * PAULI_Y + dv[2] * PAULI_Z)


def _kraus_pairs(
    channel: KrausChannel, lam: float, lam_dot: float
) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Kraus operators and their time derivatives at a given decay weight.

    Entries proportional to d sqrt(lam)/dt are infinite at lam = 0; callers
    that need the t -> 0 limit floor lam first.
    """
    root = math.sqrt(1.0 - lam)
    # lam_dot carries a (1 - lam) factor, so d(root)/dt vanishes as lam -> 1.
    root_dot = -0.5 * lam_dot / root if root > 0.0 else 0.0
    sqrt_lam = math.sqrt(lam)
    sqrt_lam_dot = 0.5 * lam_dot / sqrt_lam if sqrt_lam > 0.0 else math.inf

    def mat(a, b, c, d):
        return np.array([[a, b], [c, d]], dtype=np.complex128)

    if channel.kind is ChannelKind.DEPOLARIZING:
        keep = math.sqrt(1.0 - 0.75 * lam)
        keep_dot = -0.375 * lam_dot / keep
        half = math.sqrt(0.25 * lam)
        half_dot = 0.125 * lam_dot / half if half > 0.0 else math.inf
        ops = [keep * IDENTITY_2, half * PAULI_X, half * PAULI_Y, half * PAULI_Z]
        # Built entrywise so an infinite half_dot never multiplies a
        # structural zero of the Pauli pattern.
        derivs = [
            keep_dot * IDENTITY_2,
            mat(0.0, half_dot, half_dot, 0.0),
            mat(0.0, complex(0.0, -half_dot), complex(0.0, half_dot), 0.0),
            mat(half_dot, 0.0, 0.0, -half_dot),
        ]
        return ops, derivs
    if channel.kind is ChannelKind.PHASE_DAMPING:
        ops = [mat(1.0, 0.0, 0.0, root), mat(0.0, 0.0, 0.0, sqrt_lam)]
        derivs = [mat(0.0, 0.0, 0.0, root_dot), mat(0.0, 0.0, 0.0, sqrt_lam_dot)]
        return ops, derivs
    a = channel.alpha
    sa = math.sqrt(a)
    sb = math.sqrt(1.0 - a)
    ops = [
        sa * mat(1.0, 0.0, 0.0, root),
        sa * mat(0.0, sqrt_lam, 0.0, 0.0),
        sb * mat(root, 0.0, 0.0, 1.0),
        sb * mat(0.0, 0.0, sqrt_lam, 0.0),
    ]
    # A zero branch weight makes the whole operator vanish, so its
    # derivative is zero even where sqrt_lam_dot diverges.
    jump_up = sa * sqrt_lam_dot if sa > 0.0 else 0.0
    jump_down = sb * sqrt_lam_dot if sb > 0.0 else 0.0
    derivs = [
        sa * mat(0.0, 0.0, 0.0, root_dot),
        mat(0.0, jump_up, 0.0, 0.0),
        sb * mat(root_dot, 0.0, 0.0, 0.0),
        mat(0.0, 0.0, jump_down, 0.0),
    ]
    return ops, derivs


def kraus_operators(
    channel: KrausChannel, t: float
) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Operator-sum representation and its analytic time derivative.

    Returns:
        (operators, derivatives), each a list of 2x2 complex matrices.  The
        operators satisfy the completeness relation at every t >= 0.  At
        t = 0 the derivative entries carrying d sqrt(lam)/dt are infinite.

    Raises:
        InvalidParameter: for negative t.
    """
    if not isinstance(channel, KrausChannel):
        raise UnsupportedForDrive("operator-sum form exists only for channels")
    lam = channel.lam(t)
    lam_dot = channel.gamma * (1.0 - lam)
    return _kraus_pairs(channel, lam, lam_dot)


def apply_channel(channel: KrausChannel, state: DensityMatrix, t: float) -> DensityMatrix:
    """Applies the operator sum at time t to an arbitrary qubit state."""
    if state.dim != 2:
        raise InvalidParameter("channels act on qubits, got dim %d" % state.dim)
    ops, _ = kraus_operators(channel, t)
    total = np.zeros((2, 2), dtype=np.complex128)
    for k in ops:
        total += k @ state.matrix @ k.conj().T
    return DensityMatrix(total)


def evolve(traj: Trajectory, t: float) -> DensityMatrix:
    """State at time t: operator sum for channels, conjugation for drives."""
    drive = traj.drive
    if isinstance(drive, UnitaryDrive):
        if t < 0.0:
            raise InvalidParameter("time must be nonnegative, got %r" % (t,))
        u = drive.propagator(t)
        return DensityMatrix(u @ traj.rho0.matrix @ u.conj().T)
    return apply_channel(drive, traj.rho0, t)


def analytic_radius(traj: Trajectory, t: float) -> float:
    """Evolved Bloch radius in closed form.

    Algebraically reduced per channel rather than taking the norm of the
    affine map, so it can cross-check the matrix route.
    """
    drive = traj.drive
    q = traj.initial
    if isinstance(drive, UnitaryDrive):
        if t < 0.0:
            raise InvalidParameter("time must be nonnegative, got %r" % (t,))
        return q.r
    lam = drive.lam(t)
    decay = 1.0 - lam
    sin_sq = math.sin(q.theta) ** 2
    if drive.kind is ChannelKind.DEPOLARIZING:
        return decay * q.r
    if drive.kind is ChannelKind.PHASE_DAMPING:
        return q.r * math.sqrt(1.0 - lam * sin_sq)
    axial = (2.0 * drive.alpha - 1.0) * lam + decay * q.r * math.cos(q.theta)
    return math.sqrt(axial * axial + decay * q.r * q.r * sin_sq)


def analytic_nu(traj: Trajectory, t: float) -> float:
    """Bloch radius of the equal mixture of the initial and evolved states."""
    drive = traj.drive
    q = traj.initial
    r = q.r
    if isinstance(drive, UnitaryDrive):
        if t < 0.0:
            raise InvalidParameter("time must be nonnegative, got %r" % (t,))
        cross = coherence_cross_norm(drive, q)
        s = math.sin(drive.strength * t)
        inner = 1.0 - cross * cross * s * s
        return r * math.sqrt(max(inner, 0.0))
    lam = drive.lam(t)
    root = math.sqrt(1.0 - lam)
    sin_sq = math.sin(q.theta) ** 2
    if drive.kind is ChannelKind.DEPOLARIZING:
        return (1.0 - 0.5 * lam) * r
    if drive.kind is ChannelKind.PHASE_DAMPING:
        inner = 1.0 - 0.25 * (lam + 2.0 * (1.0 - root)) * sin_sq
        return r * math.sqrt(max(inner, 0.0))
    shift = (2.0 * drive.alpha - 1.0) * lam
    two_less = 2.0 - lam
    inner = shift * (2.0 * two_less * r * math.cos(q.theta) + shift)
    inner += r * r * (two_less * two_less + (2.0 - two_less * root) * root * sin_sq)
    return 0.5 * math.sqrt(max(inner, 0.0))


def coherence_cross_norm(drive: UnitaryDrive, q: BlochQubit) -> float:
    """Norm of the cross product between the unit axis and unit Bloch vector."""
    if q.r == 0.0:
        return 0.0
    v = bloch_vector(q) / q.r
    return float(np.linalg.norm(np.cross(drive.unit_axis, v)))


def kraus_speed_sum(traj: Trajectory, t: float, route: str = "analytic") -> float:
    """Sum over Kraus terms of the trace norm of K_j rho_0 dK_j^dag/dt.

    Twice this value upper-bounds the state speed.  The analytic route uses
    per-channel reductions; the numeric route assembles the matrices, with
    the decay weight floored so the t = 0 right-limit is finite.

    Raises:
        UnsupportedForDrive: for unitary drives, which have no decay.
    """
    drive = traj.drive
    if isinstance(drive, UnitaryDrive):
        raise UnsupportedForDrive("Kraus-sum speed needs a dissipative channel")
    if route not in ("analytic", "numeric"):
        raise ValueError("route must be 'analytic' or 'numeric', got %r" % (route,))
    lam = drive.lam(t)
    if route == "numeric":
        lam_num = max(lam, LAMBDA_FLOOR)
        lam_dot = drive.gamma * (1.0 - lam_num)
        ops, derivs = _kraus_pairs(drive, lam_num, lam_dot)
        rho = traj.rho0.matrix
        return float(
            sum(schatten_norm(k @ rho @ dk.conj().T, 1) for k, dk in zip(ops, derivs))
        )
    q = traj.initial
    r = q.r
    gamma = drive.gamma
    decay = 1.0 - lam
    if drive.kind is ChannelKind.DEPOLARIZING:
        return 0.75 * gamma * decay
    axial = r * math.cos(q.theta)
    planar_sq = r * r * math.sin(q.theta) ** 2
    if drive.kind is ChannelKind.PHASE_DAMPING:
        lower = 1.0 - axial
        radical = math.sqrt(decay * decay * lower * lower + decay * planar_sq)
        return 0.25 * gamma * (decay * lower + radical)
    a = drive.alpha
    lower = 1.0 - axial
    upper = 1.0 + axial
    rad_lower = math.sqrt(decay * decay * lower * lower + decay * planar_sq)
    rad_upper = math.sqrt(decay * decay * upper * upper + decay * planar_sq)
    return 0.25 * gamma * (
        a * (decay * lower + rad_lower) + (1.0 - a) * (decay * upper + rad_upper)
    )


def unitary_commutator_norm(drive: UnitaryDrive, q: BlochQubit) -> float:
    """Trace norm of -i[H, rho_0]: the constant speed under a drive."""
    if not isinstance(drive, UnitaryDrive):
        raise UnsupportedForDrive("commutator speed needs a unitary drive")
    return 2.0 * q.r * drive.strength * coherence_cross_norm(drive, q)


def hamiltonian_std(drive: UnitaryDrive, q: BlochQubit) -> float:
    """Standard deviation of the drive Hamiltonian in the initial state."""
    if not isinstance(drive, UnitaryDrive):
        raise UnsupportedForDrive("energy deviation needs a unitary drive")
    if q.r == 0.0:
        return drive.strength
    cos_align = float(np.dot(drive.unit_axis, bloch_vector(q))) / q.r
    variance = drive.strength**2 * (1.0 - (q.r * cos_align) ** 2)
    return math.sqrt(max(variance, 0.0))


def schatten_speed(traj: Trajectory, t: float, route: str = "analytic") -> float:
    """Trace-norm speed of the state at time t.

    The analytic route evaluates per-drive closed forms; the
    finite-difference route differentiates the evolved matrices with a
    symmetric stencil of width 1e-5 over the dynamics rate (one-sided near
    t = 0) and takes the trace norm of the quotient.
    """
    if t < 0.0:
        raise InvalidParameter("time must be nonnegative, got %r" % (t,))
    if route == "finite-difference":
        h = 1e-5 / traj.rate_scale
        if t >= h:
            diff = traj.state(t + h).matrix - traj.state(t - h).matrix
            return schatten_norm(diff / (2.0 * h), 1)
        stencil = (
            -3.0 * traj.state(t).matrix
            + 4.0 * traj.state(t + h).matrix
            - traj.state(t + 2.0 * h).matrix
        )
        return schatten_norm(stencil / (2.0 * h), 1)
    if route != "analytic":
        raise ValueError("route must be 'analytic' or 'finite-difference', got %r" % (route,))
    drive = traj.drive
    q = traj.initial
    if isinstance(drive, UnitaryDrive):
        return unitary_commutator_norm(drive, q)
    gamma = drive.gamma
    lam = drive.lam(t)
    decay = 1.0 - lam
    r = q.r
    if drive.kind is ChannelKind.DEPOLARIZING:
        return gamma * decay * r
    if drive.kind is ChannelKind.PHASE_DAMPING:
        return 0.5 * gamma * math.sqrt(decay) * r * math.sin(q.theta)
    span = (2.0 * drive.alpha - 1.0) - r * math.cos(q.theta)
    inner = 0.25 * r * r * math.sin(q.theta) ** 2 + decay * span * span
    return gamma * math.sqrt(decay) * math.sqrt(inner)
