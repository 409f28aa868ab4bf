"""Eigensolver, Schatten norms and the two matrix-log routes.

Closed-form expectations come from the 2x2 characteristic polynomial and
hand-reduced examples; larger cases are checked against LAPACK, which shares
no code with the Jacobi solver under test.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entroqsl.errors import NoConvergence, NotHermitian, SingularState
from entroqsl.linalg import (
    commutator,
    hermitian_eig,
    is_hermitian,
    matrix_log_integral,
    matrix_log_spectral,
    schatten_norm,
)
from entroqsl.sampling import random_full_rank_state, random_unitary

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def random_hermitian(rng, dim):
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return raw + raw.conj().T


class TestHermitianEig:
    def test_known_two_level_mixture(self):
        eigs = hermitian_eig(0.5 * (np.eye(2) + 0.6 * SIGMA_X)).eigenvalues
        assert eigs == pytest.approx([0.2, 0.8], abs=1e-13)

    def test_characteristic_polynomial_2x2(self):
        # [[1, 2-0.5i], [2+0.5i, -1]]: eigenvalues are +-sqrt(1 + |2-0.5i|^2)
        matrix = np.array([[1.0, 2.0 - 0.5j], [2.0 + 0.5j, -1.0]])
        expected = math.sqrt(1.0 + 4.25)
        eigs = hermitian_eig(matrix).eigenvalues
        assert eigs == pytest.approx([-expected, expected], abs=1e-12)

    def test_reconstruction_and_orthonormality(self, rng):
        for dim in (2, 3, 4, 5):
            matrix = random_hermitian(rng, dim)
            decomp = hermitian_eig(matrix)
            recon = decomp.eigenvectors @ np.diag(decomp.eigenvalues) @ decomp.eigenvectors.conj().T
            assert np.max(np.abs(recon - matrix)) < 1e-10 * max(1.0, schatten_norm(matrix, 2))
            gram = decomp.eigenvectors.conj().T @ decomp.eigenvectors
            assert np.max(np.abs(gram - np.eye(dim))) < 1e-10

    def test_agrees_with_lapack(self, rng):
        for dim in (2, 3, 4, 6):
            matrix = random_hermitian(rng, dim)
            ours = hermitian_eig(matrix).eigenvalues
            lapack = np.linalg.eigvalsh(matrix)
            assert np.max(np.abs(ours - lapack)) < 1e-10

    def test_eigenvalues_sorted_ascending(self, rng):
        eigs = hermitian_eig(random_hermitian(rng, 5)).eigenvalues
        assert np.all(np.diff(eigs) >= 0.0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_diagonal_input_is_fixed_point(self):
        eigs = hermitian_eig(np.diag([3.0, -1.0, 0.5]).astype(complex)).eigenvalues
        assert eigs == pytest.approx([-1.0, 0.5, 3.0], abs=1e-15)

    def test_convergence_failure_is_reported(self, rng):
        with pytest.raises(NoConvergence):
            hermitian_eig(random_hermitian(rng, 4), max_sweeps=0)


class TestSchattenNorms:
    def test_pauli_x(self):
        assert schatten_norm(SIGMA_X, 1) == pytest.approx(2.0, abs=1e-13)
        assert schatten_norm(SIGMA_X, 2) == pytest.approx(math.sqrt(2.0), abs=1e-13)
        assert schatten_norm(SIGMA_X, math.inf) == pytest.approx(1.0, abs=1e-13)

    def test_sign_indefinite_diagonal(self):
        matrix = np.diag([0.3, -0.5]).astype(complex)
        assert schatten_norm(matrix, 1) == pytest.approx(0.8, abs=1e-13)
        assert schatten_norm(matrix, 2) == pytest.approx(math.sqrt(0.34), abs=1e-13)
        assert schatten_norm(matrix, "inf") == pytest.approx(0.5, abs=1e-13)

    def test_rejects_unsupported_order(self):
        with pytest.raises(ValueError):
            schatten_norm(SIGMA_X, 3)

    def test_ordering_and_unitary_invariance(self, rng):
        for _ in range(25):
            dim = int(rng.integers(2, 6))
            matrix = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            one = schatten_norm(matrix, 1)
            two = schatten_norm(matrix, 2)
            top = schatten_norm(matrix, math.inf)
            assert one + 1e-12 >= two >= top - 1e-12
            unitary = random_unitary(rng, dim)
            rotated = unitary @ matrix @ unitary.conj().T
            for p in (1, 2, math.inf):
                assert schatten_norm(rotated, p) == pytest.approx(
                    schatten_norm(matrix, p), abs=1e-10
                )

    def test_triangle_inequality(self, rng):
        for _ in range(10):
            a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            for p in (1, 2, math.inf):
                assert schatten_norm(a + b, p) <= schatten_norm(a, p) + schatten_norm(b, p) + 1e-10

    @given(st.floats(-5.0, 5.0), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0))
    @settings(max_examples=50, deadline=None)
    def test_hermitian_trace_norm_is_abs_eigenvalue_sum(self, a, d, b):
        matrix = np.array([[a, b], [b, d]], dtype=complex)
        half_gap = math.hypot(0.5 * (a - d), b)
        expected = abs(0.5 * (a + d) + half_gap) + abs(0.5 * (a + d) - half_gap)
        assert schatten_norm(matrix, 1) == pytest.approx(expected, abs=1e-10)


class TestMatrixLog:
    def test_diagonal_value(self):
        log = matrix_log_spectral(np.diag([0.25, 0.75]).astype(complex))
        assert np.allclose(log, np.diag([math.log(0.25), math.log(0.75)]), atol=1e-13)

    def test_routes_agree_on_random_states(self, rng):
        worst = 0.0
        for dim in (2, 3, 4):
            for _ in range(5):
                rho = random_full_rank_state(rng, dim).matrix
                gap = np.max(np.abs(matrix_log_spectral(rho) - matrix_log_integral(rho)))
                worst = max(worst, float(gap))
        assert worst < 1e-7

    def test_routes_agree_near_singularity(self):
        # kappa_min = 1e-3 stresses the boundary layer of the resolvent form
        rho_diag = np.diag([1e-3, 0.999]).astype(complex)
        angle = 0.7
        basis = np.array(
            [
                [math.cos(angle), -math.sin(angle)],
                [math.sin(angle), math.cos(angle)],
            ],
            dtype=complex,
        )
        rho = basis @ rho_diag @ basis.conj().T
        gap = np.max(np.abs(matrix_log_spectral(rho) - matrix_log_integral(rho)))
        assert gap < 1e-7

    def test_exp_roundtrip(self, rng):
        rho = random_full_rank_state(rng, 3).matrix
        decomp = hermitian_eig(matrix_log_spectral(rho))
        back = decomp.eigenvectors @ np.diag(np.exp(decomp.eigenvalues)) @ decomp.eigenvectors.conj().T
        assert np.max(np.abs(back - rho)) < 1e-9

    def test_singular_state_rejected(self):
        pure = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(SingularState):
            matrix_log_spectral(pure)
        with pytest.raises(SingularState):
            matrix_log_integral(pure)

    def test_integral_route_validates_input(self):
        with pytest.raises(NotHermitian):
            matrix_log_integral(np.array([[0.5, 1.0], [0.0, 0.5]]))
        with pytest.raises(ValueError):
            matrix_log_integral(np.diag([0.4, 0.6]).astype(complex), panels=5)

    def test_log_of_identity_is_zero(self):
        # trace 1 is not required by the log routes themselves
        log = matrix_log_spectral(np.eye(3, dtype=complex))
        assert np.max(np.abs(log)) < 1e-12


class TestHelpers:
    def test_is_hermitian(self):
        assert is_hermitian(SIGMA_X)
        assert not is_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_commutator_antisymmetry(self, rng):
        a = random_hermitian(rng, 3)
        b = random_hermitian(rng, 3)
        assert np.allclose(commutator(a, b), -commutator(b, a), atol=1e-12)

    def test_commutator_shape_mismatch(self):
        with pytest.raises(ValueError):
            commutator(np.eye(2), np.eye(3))
