"""Dense Hermitian linear algebra used by the divergence calculations.

All decompositions route through an in-package cyclic Jacobi eigensolver so
that the numerical behaviour of the library does not depend on which LAPACK
build happens to be installed.  The integral-representation logarithm is kept
deliberately independent of the spectral one: the two serve as mutual checks.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Union

import numpy as np

from .errors import NoConvergence, NotHermitian, QuadratureFailure, SingularState

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "IDENTITY_2",
    "EigenDecomposition",
    "as_complex_matrix",
    "is_hermitian",
    "hermitian_eig",
    "schatten_norm",
    "matrix_log_spectral",
    "matrix_log_integral",
    "commutator",
]

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

# Absolute off-diagonal magnitude at which a Jacobi sweep is considered done.
OFF_DIAGONAL_THRESHOLD = 1e-13
# Hard cap on full cyclic sweeps before giving up.
MAX_JACOBI_SWEEPS = 100
# Hermiticity tolerance on max |A - A^dag| entries.
HERMITICITY_TOL = 1e-12
# Eigenvalues at or below this floor make a logarithm ill defined.
EIGENVALUE_FLOOR = 1e-12


class EigenDecomposition(NamedTuple):
    """Spectral decomposition of a Hermitian matrix.

    Attributes:
        eigenvalues: real eigenvalues sorted ascending.
        eigenvectors: unitary matrix whose k-th column is the eigenvector
            belonging to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_complex_matrix(a) -> np.ndarray:
    """Coerces input to a square complex128 array.

    Raises:
        ValueError: if the input is not a square two-dimensional matrix.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix, got shape %r" % (m.shape,))
    return m


def is_hermitian(a, tol: float = HERMITICITY_TOL) -> bool:
    """Checks max-entry deviation of a matrix from its conjugate transpose."""
    m = as_complex_matrix(a)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def hermitian_eig(a, max_sweeps: int = MAX_JACOBI_SWEEPS) -> EigenDecomposition:
    """Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation annihilates one off-diagonal pivot; sweeps repeat until the
    largest off-diagonal magnitude drops below ``OFF_DIAGONAL_THRESHOLD``
    relative to the largest entry of the input.

    Args:
        a: Hermitian matrix of any dimension.
        max_sweeps: sweep budget before the solver signals failure.

    Returns:
        EigenDecomposition with ascending eigenvalues.

    Raises:
        NotHermitian: if the input breaks the symmetry tolerance.
        NoConvergence: if the sweep budget is exhausted.
    """
    m = as_complex_matrix(a)
    if not is_hermitian(m):
        raise NotHermitian(
            "matrix deviates from Hermitian symmetry by more than %g" % HERMITICITY_TOL
        )
    d = m.shape[0]
    # Symmetrize exactly so accumulated rotations stay unitary.
    work = 0.5 * (m + m.conj().T)
    vecs = np.eye(d, dtype=np.complex128)
    if d == 1:
        return EigenDecomposition(np.array([work[0, 0].real]), vecs)

    # Iterate on a unit-scaled copy so the pivot threshold acts relative to
    # the matrix magnitude; against an absolute cutoff, a matrix far below
    # unit scale would skip every rotation and return its raw diagonal.
    scale = float(np.abs(work).max())
    if scale == 0.0:
        return EigenDecomposition(np.zeros(d), vecs)
    work /= scale

    for _ in range(max_sweeps):
        off = np.abs(work - np.diag(np.diagonal(work)))
        if float(off.max()) <= OFF_DIAGONAL_THRESHOLD:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                pivot = work[p, q]
                mag = abs(pivot)
                if mag <= OFF_DIAGONAL_THRESHOLD:
                    continue
                phase = pivot / mag
                app = work[p, p].real
                aqq = work[q, q].real
                theta = (app - aqq) / (2.0 * mag)
                # Smaller-magnitude root of t^2 + 2*theta*t - 1 = 0.
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Right-multiply by the rotation: mix columns p and q.
                col_p = work[:, p].copy()
                col_q = work[:, q].copy()
                work[:, p] = c * col_p + s * np.conj(phase) * col_q
                work[:, q] = -s * phase * col_p + c * col_q
                # Left-multiply by its adjoint: mix rows p and q.
                row_p = work[p, :].copy()
                row_q = work[q, :].copy()
                work[p, :] = c * row_p + s * phase * row_q
                work[q, :] = -s * np.conj(phase) * row_p + c * row_q
                # Pivot is zero by construction; clear roundoff residue.
                work[p, q] = 0.0
                work[q, p] = 0.0
                vcol_p = vecs[:, p].copy()
                vcol_q = vecs[:, q].copy()
                vecs[:, p] = c * vcol_p + s * np.conj(phase) * vcol_q
                vecs[:, q] = -s * phase * vcol_p + c * vcol_q
    else:
        raise NoConvergence(
            "Jacobi eigensolver failed to converge in %d sweeps" % max_sweeps
        )

    values = np.diagonal(work).real * scale
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], vecs[:, order])


def schatten_norm(a, p: Union[int, float, str]) -> float:
    """Schatten p-norm of a square matrix for p in {1, 2, inf}.

    Singular values come from the Hermitian eigenvalues of ``a^dag a``; the
    p = 2 case short-circuits to the Frobenius sum.

    Raises:
        ValueError: for unsupported p.
    """
    m = as_complex_matrix(a)
    if p == 2:
        return float(np.sqrt(np.sum(np.abs(m) ** 2)))
    if p != 1 and p not in ("inf", math.inf):
        raise ValueError("p must be one of 1, 2, inf; got %r" % (p,))
    gram = m.conj().T @ m
    evals = hermitian_eig(gram).eigenvalues
    sing = np.sqrt(np.clip(evals, 0.0, None))
    if p == 1:
        return float(np.sum(sing))
    return float(sing[-1])


def matrix_log_spectral(rho, floor: float = EIGENVALUE_FLOOR) -> np.ndarray:
    """Hermitian matrix logarithm through the spectral decomposition.

    Args:
        rho: Hermitian positive definite matrix.
        floor: smallest admissible eigenvalue.

    Raises:
        NotHermitian: if the input is not Hermitian.
        SingularState: if any eigenvalue is at or below ``floor``.
    """
    m = as_complex_matrix(rho)
    decomp = hermitian_eig(m)
    if decomp.eigenvalues[0] <= floor:
        raise SingularState(
            "eigenvalue %.3e at or below floor %.3e; logarithm undefined"
            % (decomp.eigenvalues[0], floor)
        )
    v = decomp.eigenvectors
    log_m = (v * np.log(decomp.eigenvalues)) @ v.conj().T
    return 0.5 * (log_m + log_m.conj().T)


def matrix_log_integral(
    rho,
    panels: int = 4096,
    tol: float = 1e-8,
    floor: float = EIGENVALUE_FLOOR,
    max_refinements: int = 5,
) -> np.ndarray:
    """Hermitian matrix logarithm by resolvent-integral quadrature.

    Evaluates the identity log(rho) = integral over u in [0, inf) of
    (1+u)^{-1} I - (rho + u I)^{-1} du, mapped to the unit interval through
    u = s/(1-s) and integrated with composite Simpson panels.  The mapped
    integrand has the finite endpoint value rho - I at s = 1, which is used
    analytically.  Panel count doubles until the Richardson error estimate
    meets ``tol``.  Serves as an independent cross-check of
    :func:`matrix_log_spectral`; not a hot path.

    Raises:
        NotHermitian: if the input is not Hermitian.
        SingularState: if any eigenvalue is at or below ``floor``.
        QuadratureFailure: if the error estimate still exceeds ``tol`` after
            all refinements.
    """
    m = as_complex_matrix(rho)
    if not is_hermitian(m):
        raise NotHermitian("integral logarithm requires a Hermitian matrix")
    min_eig = float(hermitian_eig(m).eigenvalues[0])
    if min_eig <= floor:
        raise SingularState(
            "eigenvalue %.3e at or below floor %.3e; logarithm undefined"
            % (min_eig, floor)
        )
    if panels < 4 or panels % 2:
        raise ValueError("panels must be an even integer >= 4")

    d = m.shape[0]
    eye = np.eye(d, dtype=np.complex128)

    def mapped_integrand(s: np.ndarray) -> np.ndarray:
        # s strictly inside [0, 1); the s = 1 node is handled analytically.
        u = s / (1.0 - s)
        shifted = m[None, :, :] + u[:, None, None] * eye[None, :, :]
        inv = np.linalg.inv(shifted)
        direct = (1.0 / (1.0 + u))[:, None, None] * eye[None, :, :]
        jac = 1.0 / (1.0 - s) ** 2
        return jac[:, None, None] * (direct - inv)

    def simpson(n: int) -> np.ndarray:
        s_nodes = np.linspace(0.0, 1.0, n + 1)
        g = np.empty((n + 1, d, d), dtype=np.complex128)
        g[:n] = mapped_integrand(s_nodes[:n])
        g[n] = m - eye
        h = 1.0 / n
        total = g[0] + g[n] + 4.0 * g[1:n:2].sum(axis=0) + 2.0 * g[2 : n - 1 : 2].sum(axis=0)
        return (h / 3.0) * total

    n = panels
    coarse = simpson(n // 2)
    for _ in range(max_refinements + 1):
        fine = simpson(n)
        err = float(np.max(np.abs(fine - coarse))) / 15.0
        if err <= tol:
            result = fine
            return 0.5 * (result + result.conj().T)
        coarse = fine
        n *= 2
    raise QuadratureFailure(
        "integral logarithm error estimate %.3e above tolerance %.3e at %d panels"
        % (err, tol, n // 2)
    )


def commutator(a, b) -> np.ndarray:
    """Matrix commutator a @ b - b @ a."""
    ma = as_complex_matrix(a)
    mb = as_complex_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError("commutator operands differ in shape: %r vs %r" % (ma.shape, mb.shape))
    return ma @ mb - mb @ ma
