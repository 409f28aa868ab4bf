"""Density matrices, Bloch parametrization and the conversions between them."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entroqsl.errors import DimensionMismatch, InvalidBloch, NotHermitian
from entroqsl.sampling import random_bloch, random_full_rank_state
from entroqsl.states import (
    BlochQubit,
    DensityMatrix,
    bloch_vector,
    from_bloch,
    kappa_min_max,
    mix,
    to_bloch,
)

bloch_strategy = st.builds(
    BlochQubit,
    st.floats(0.0, 0.999),
    st.floats(0.0, math.pi),
    st.floats(0.0, 2.0 * math.pi, exclude_max=True),
)


class TestBlochQubit:
    def test_cartesian_components(self):
        q = BlochQubit(0.8, math.pi / 2.0, 0.0)
        assert bloch_vector(q) == pytest.approx([0.8, 0.0, 0.0], abs=1e-15)

    @pytest.mark.parametrize(
        "r,theta,phi",
        [
            (1.0, 0.0, 0.0),
            (1.1, 0.0, 0.0),
            (-0.2, 0.0, 0.0),
            (0.5, -0.1, 0.0),
            (0.5, math.pi + 0.1, 0.0),
            (0.5, 0.0, -0.1),
            (0.5, 0.0, 2.0 * math.pi),
            (math.nan, 0.0, 0.0),
        ],
    )
    def test_rejects_out_of_range(self, r, theta, phi):
        with pytest.raises(InvalidBloch):
            BlochQubit(r, theta, phi)

    def test_from_bloch_matrix(self):
        q = BlochQubit(0.6, 0.0, 0.0)
        expected = np.array([[0.8, 0.0], [0.0, 0.2]], dtype=complex)
        assert np.allclose(from_bloch(q).matrix, expected, atol=1e-15)

    def test_from_bloch_equatorial(self):
        q = BlochQubit(0.5, math.pi / 2.0, math.pi / 2.0)
        expected = 0.5 * np.array([[1.0, -0.5j], [0.5j, 1.0]])
        assert np.allclose(from_bloch(q).matrix, expected, atol=1e-15)


class TestDensityMatrix:
    def test_accepts_and_caches_spectrum(self):
        state = DensityMatrix(np.diag([0.2, 0.8]).astype(complex))
        assert state.dim == 2
        assert state.eigenvalues == pytest.approx([0.2, 0.8], abs=1e-13)

    def test_matrix_is_read_only(self):
        state = DensityMatrix(np.diag([0.5, 0.5]).astype(complex))
        with pytest.raises(ValueError):
            state.matrix[0, 0] = 2.0

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([0.7, 0.7]))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            DensityMatrix(np.array([[0.5, 0.3], [0.0, 0.5]]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([1.2, -0.2]))

    def test_small_trace_drift_is_renormalized(self):
        state = DensityMatrix((1.0 + 5e-9) * np.diag([0.3, 0.7]))
        assert float(np.trace(state.matrix).real) == pytest.approx(1.0, abs=1e-14)


class TestConversions:
    @given(bloch_strategy)
    @settings(max_examples=100, deadline=None)
    def test_roundtrip(self, q):
        again, vec = to_bloch(from_bloch(q))
        assert again.r == pytest.approx(q.r, abs=1e-10)
        assert np.max(np.abs(vec - bloch_vector(q))) < 1e-10
        if q.r > 1e-9:
            assert again.theta == pytest.approx(q.theta, abs=1e-8)
            if abs(math.sin(q.theta)) > 1e-9:
                wrapped = math.remainder(again.phi - q.phi, 2.0 * math.pi)
                assert abs(wrapped) < 1e-8

    def test_maximally_mixed_convention(self):
        q, vec = to_bloch(DensityMatrix(0.5 * np.eye(2)))
        assert (q.r, q.theta, q.phi) == (0.0, 0.0, 0.0)
        assert np.all(vec == 0.0)

    def test_rejects_higher_dimensions(self, rng):
        with pytest.raises(DimensionMismatch):
            to_bloch(random_full_rank_state(rng, 3))

    def test_pure_state_rejected(self):
        pure = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(InvalidBloch):
            to_bloch(DensityMatrix(pure))


class TestMixAndKappa:
    def test_mix_convention(self, rng):
        a = from_bloch(random_bloch(rng))
        b = from_bloch(random_bloch(rng))
        blend = mix(a, b, 0.25)
        assert np.allclose(blend.matrix, 0.25 * a.matrix + 0.75 * b.matrix, atol=1e-14)

    def test_mix_endpoint_weights(self, rng):
        a = from_bloch(random_bloch(rng))
        b = from_bloch(random_bloch(rng))
        assert np.allclose(mix(a, b, 1.0).matrix, a.matrix, atol=1e-15)
        assert np.allclose(mix(a, b, 0.0).matrix, b.matrix, atol=1e-15)

    def test_mix_validation(self, rng):
        a = from_bloch(random_bloch(rng))
        with pytest.raises(ValueError):
            mix(a, a, 1.5)
        with pytest.raises(DimensionMismatch):
            mix(a, random_full_rank_state(rng, 3), 0.5)

    @given(st.floats(0.0, 0.999))
    @settings(max_examples=50, deadline=None)
    def test_kappa_closed_form(self, r):
        q = BlochQubit(r, 1.0, 2.0)
        low, high = kappa_min_max(q)
        assert low == pytest.approx((1.0 - r) / 2.0, abs=1e-14)
        assert high == pytest.approx((1.0 + r) / 2.0, abs=1e-14)

    def test_kappa_matrix_route_matches(self, rng):
        q = random_bloch(rng)
        fast = kappa_min_max(q)
        slow = kappa_min_max(from_bloch(q))
        assert fast == pytest.approx(slow, abs=1e-13)

    def test_kappa_higher_dimension(self, rng):
        state = random_full_rank_state(rng, 4)
        low, high = kappa_min_max(state)
        assert low == pytest.approx(float(state.eigenvalues[0]), abs=1e-14)
        assert high == pytest.approx(float(state.eigenvalues[-1]), abs=1e-14)
