"""Density matrices and the Bloch-ball parametrization of qubit states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import DimensionMismatch, InvalidBloch, NotHermitian
from .linalg import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    as_complex_matrix,
    hermitian_eig,
)

__all__ = [
    "BlochQubit",
    "DensityMatrix",
    "bloch_vector",
    "from_bloch",
    "to_bloch",
    "mix",
    "kappa_min_max",
]

# Construction tolerances for density matrices.
TRACE_TOL = 1e-8
PSD_TOL = -1e-12
HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class BlochQubit:
    """Spherical Bloch coordinates of a strictly mixed qubit state.

    Attributes:
        r: radial coordinate, 0 <= r < 1.  Pure states are excluded because
            every divergence in this package needs full-rank arguments.
        theta: polar angle in [0, pi].
        phi: azimuthal angle in [0, 2*pi).
    """

    r: float
    theta: float
    phi: float

    def __post_init__(self):
        for name, value in (("r", self.r), ("theta", self.theta), ("phi", self.phi)):
            if not math.isfinite(value):
                raise InvalidBloch("%s must be finite, got %r" % (name, value))
        if not 0.0 <= self.r < 1.0:
            raise InvalidBloch("radius must satisfy 0 <= r < 1, got %r" % (self.r,))
        if not 0.0 <= self.theta <= math.pi:
            raise InvalidBloch("theta must lie in [0, pi], got %r" % (self.theta,))
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise InvalidBloch("phi must lie in [0, 2*pi), got %r" % (self.phi,))


class DensityMatrix:
    """Validated full-rank-tolerant density matrix of any finite dimension.

    Construction symmetrizes the input, checks Hermiticity, trace and
    positive semidefiniteness, then rescales the trace to exactly one.
    The ascending eigenvalue list is computed once and cached.
    """

    __slots__ = ("_matrix", "_eigenvalues")

    def __init__(self, matrix):
        m = as_complex_matrix(matrix)
        deviation = float(np.max(np.abs(m - m.conj().T)))
        if deviation > HERMITICITY_TOL:
            raise NotHermitian(
                "density matrix deviates from Hermitian by %.3e" % deviation
            )
        m = 0.5 * (m + m.conj().T)
        trace = float(np.trace(m).real)
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError("trace must equal one within %g, got %r" % (TRACE_TOL, trace))
        m = m / trace
        decomp = hermitian_eig(m)
        if decomp.eigenvalues[0] < PSD_TOL:
            raise ValueError(
                "matrix has negative eigenvalue %.3e" % decomp.eigenvalues[0]
            )
        m.setflags(write=False)
        object.__setattr__(self, "_matrix", m)
        object.__setattr__(self, "_eigenvalues", decomp.eigenvalues)

    @property
    def matrix(self) -> np.ndarray:
        """Read-only complex matrix with unit trace."""
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        """Cached eigenvalues in ascending order."""
        return self._eigenvalues

    def __repr__(self):
        return "DensityMatrix(dim=%d, eigenvalues=%s)" % (
            self.dim,
            np.array2string(self._eigenvalues, precision=6),
        )


def bloch_vector(q: BlochQubit) -> np.ndarray:
    """Cartesian Bloch vector for spherical coordinates."""
    st = math.sin(q.theta)
    return np.array(
        [
            q.r * st * math.cos(q.phi),
            q.r * st * math.sin(q.phi),
            q.r * math.cos(q.theta),
        ]
    )


def from_bloch(q: BlochQubit) -> DensityMatrix:
    """Builds the qubit density matrix (I + v . sigma) / 2 for Bloch point q."""
    v = bloch_vector(q)
    m = 0.5 * (IDENTITY_2 + v[0] * PAULI_X + v[1] * PAULI_Y + v[2] * PAULI_Z)
    return DensityMatrix(m)


def to_bloch(state: DensityMatrix) -> Tuple[BlochQubit, np.ndarray]:
    """Extracts spherical and Cartesian Bloch coordinates from a qubit state.

    Degenerate angles collapse to zero: the maximally mixed state maps to
    theta = phi = 0, and points on the z axis map to phi = 0.

    Returns:
        (BlochQubit, length-3 Cartesian vector).

    Raises:
        DimensionMismatch: if the state is not two-dimensional.
        InvalidBloch: if the state sits on or outside the Bloch sphere
            boundary (r >= 1), which has no strictly mixed representation.
    """
    if state.dim != 2:
        raise DimensionMismatch("Bloch coordinates need a qubit, got dim %d" % state.dim)
    m = state.matrix
    v = np.array(
        [
            2.0 * m[1, 0].real,
            2.0 * m[1, 0].imag,
            (m[0, 0] - m[1, 1]).real,
        ]
    )
    r = float(np.linalg.norm(v))
    if r >= 1.0:
        raise InvalidBloch("state radius %r is not strictly inside the Bloch ball" % r)
    if r == 0.0:
        return BlochQubit(0.0, 0.0, 0.0), v
    theta = math.acos(min(1.0, max(-1.0, v[2] / r)))
    phi = math.atan2(v[1], v[0])
    if phi < 0.0:
        phi += 2.0 * math.pi
    if phi >= 2.0 * math.pi:
        phi = 0.0
    if v[0] == 0.0 and v[1] == 0.0:
        phi = 0.0
    return BlochQubit(r, theta, phi), v


def mix(a: DensityMatrix, b: DensityMatrix, weight: float) -> DensityMatrix:
    """Convex combination weight * a + (1 - weight) * b.

    Raises:
        DimensionMismatch: if operand dimensions differ.
        ValueError: if weight lies outside [0, 1].
    """
    if a.dim != b.dim:
        raise DimensionMismatch("cannot mix dim %d with dim %d" % (a.dim, b.dim))
    if not 0.0 <= weight <= 1.0:
        raise ValueError("weight must lie in [0, 1], got %r" % (weight,))
    return DensityMatrix(weight * a.matrix + (1.0 - weight) * b.matrix)


def kappa_min_max(state: Union[DensityMatrix, BlochQubit]) -> Tuple[float, float]:
    """Extreme eigenvalues (smallest, largest) of a state.

    Bloch inputs use the closed qubit spectrum (1 -+ r) / 2 without building
    the matrix.
    """
    if isinstance(state, BlochQubit):
        return (1.0 - state.r) / 2.0, (1.0 + state.r) / 2.0
    evals = state.eigenvalues
    return float(evals[0]), float(evals[-1])
