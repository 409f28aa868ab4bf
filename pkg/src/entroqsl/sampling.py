"""Random state and unitary generation for property checks."""

from __future__ import annotations

import math

import numpy as np

from .states import BlochQubit, DensityMatrix

__all__ = ["random_unitary", "random_full_rank_state", "random_bloch"]


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a Ginibre draw."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    # Fix the phase convention so the distribution is exactly Haar.
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    return q


def random_full_rank_state(
    rng: np.random.Generator, dim: int, min_eigenvalue: float = 1e-3
) -> DensityMatrix:
    """Random density matrix with every eigenvalue at least ``min_eigenvalue``.

    Eigenvalues are a floored Dirichlet draw, the eigenbasis is Haar random.
    """
    if not 0.0 < min_eigenvalue < 1.0 / dim:
        raise ValueError(
            "min_eigenvalue must lie in (0, 1/dim), got %r" % (min_eigenvalue,)
        )
    weights = rng.dirichlet(np.ones(dim))
    evals = min_eigenvalue + (1.0 - dim * min_eigenvalue) * weights
    u = random_unitary(rng, dim)
    return DensityMatrix((u * evals) @ u.conj().T)


def random_bloch(
    rng: np.random.Generator, r_min: float = 0.02, r_max: float = 0.98
) -> BlochQubit:
    """Random interior Bloch point, uniform in each spherical coordinate."""
    return BlochQubit(
        float(rng.uniform(r_min, r_max)),
        float(rng.uniform(0.0, math.pi)),
        float(rng.uniform(0.0, 2.0 * math.pi)),
    )
