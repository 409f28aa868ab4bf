"""Relative entropy, its symmetric combinations, bounds and identities.

Reference numbers are hand-reduced: antiparallel equal radii give
S = (r/2) ln[(1+r)/(1-r)] routed through the closed form, orthogonal axes
drop the cross term, and the distance to the maximally mixed state equals
ln 2 minus the von Neumann entropy.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entroqsl.channels import ChannelKind, KrausChannel, Trajectory, UnitaryDrive
from entroqsl.divergences import (
    asymmetry_bound,
    entropy_rate_identity_check,
    jeffreys,
    jensen_shannon,
    log_odds_ratio,
    neg_binary_entropy,
    qjpd,
    qjpd_triangle_report,
    qjsd,
    qre_bounds,
    qubit_relative_entropy_closed_form,
    relative_entropy,
    von_neumann_entropy,
)
from entroqsl.errors import DimensionMismatch, SingularState
from entroqsl.sampling import random_bloch, random_full_rank_state
from entroqsl.states import BlochQubit, DensityMatrix, from_bloch

radius = st.floats(0.05, 0.9)
angle = st.floats(0.0, math.pi)


class TestScalarHelpers:
    def test_neg_binary_entropy_values(self):
        assert neg_binary_entropy(0.0) == 0.0
        assert neg_binary_entropy(1.0) == 0.0
        assert neg_binary_entropy(0.5) == pytest.approx(-math.log(2.0), abs=1e-15)
        assert neg_binary_entropy(0.2) == pytest.approx(
            0.2 * math.log(0.2) + 0.8 * math.log(0.8), abs=1e-15
        )

    def test_log_odds_ratio_values(self):
        assert log_odds_ratio(0.0) == 0.0
        assert log_odds_ratio(0.6) == pytest.approx(math.log(4.0), abs=1e-14)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            neg_binary_entropy(-0.1)
        with pytest.raises(ValueError):
            log_odds_ratio(1.0)


class TestVonNeumannEntropy:
    def test_known_mixture(self):
        state = DensityMatrix(np.diag([0.2, 0.8]))
        expected = -(0.2 * math.log(0.2) + 0.8 * math.log(0.8))
        assert von_neumann_entropy(state) == pytest.approx(expected, abs=1e-13)

    def test_maximally_mixed(self):
        for dim in (2, 3, 4):
            state = DensityMatrix(np.eye(dim) / dim)
            assert von_neumann_entropy(state) == pytest.approx(math.log(dim), abs=1e-12)


class TestRelativeEntropy:
    def test_antiparallel_half_radius(self):
        a = BlochQubit(0.5, 0.0, 0.0)
        b = BlochQubit(0.5, math.pi, 0.0)
        value = qubit_relative_entropy_closed_form(a, b)
        assert value == pytest.approx(0.5 * math.log(3.0), abs=1e-13)
        assert qubit_relative_entropy_closed_form(b, a) == pytest.approx(value, abs=1e-13)

    def test_orthogonal_axes(self):
        a = BlochQubit(0.6, 0.0, 0.0)
        b = BlochQubit(0.6, math.pi / 2.0, 0.0)
        assert qubit_relative_entropy_closed_form(a, b) == pytest.approx(
            0.3 * math.log(4.0), abs=1e-13
        )

    def test_vanishes_on_equal_states(self, rng):
        q = random_bloch(rng)
        assert qubit_relative_entropy_closed_form(q, q) == pytest.approx(0.0, abs=1e-12)
        state = from_bloch(q)
        assert relative_entropy(state, state) == pytest.approx(0.0, abs=1e-12)

    def test_distance_to_maximally_mixed(self, rng):
        state = from_bloch(random_bloch(rng))
        mixed = DensityMatrix(0.5 * np.eye(2))
        expected = math.log(2.0) - von_neumann_entropy(state)
        assert relative_entropy(state, mixed) == pytest.approx(expected, abs=1e-11)

    @given(radius, radius, angle)
    @settings(max_examples=60, deadline=None)
    def test_closed_form_matches_matrix_route(self, r1, r2, gamma):
        a = BlochQubit(r1, gamma, 0.0)
        b = BlochQubit(r2, 0.0, 0.0)
        closed = qubit_relative_entropy_closed_form(a, b)
        numeric = relative_entropy(from_bloch(a), from_bloch(b))
        assert closed == pytest.approx(numeric, abs=1e-9)

    def test_nonnegative_on_random_pairs(self, rng):
        for _ in range(20):
            dim = int(rng.integers(2, 5))
            value = relative_entropy(
                random_full_rank_state(rng, dim), random_full_rank_state(rng, dim)
            )
            assert value >= 0.0

    def test_dimension_mismatch(self, rng):
        with pytest.raises(DimensionMismatch):
            relative_entropy(random_full_rank_state(rng, 2), random_full_rank_state(rng, 3))

    def test_singular_second_argument(self):
        pure = DensityMatrix(np.array([[1.0, 0.0], [0.0, 0.0]]))
        mixed = DensityMatrix(0.5 * np.eye(2))
        with pytest.raises(SingularState):
            relative_entropy(mixed, pure)


class TestSymmetricCombinations:
    def test_jeffreys_is_symmetric_mean(self, full_rank_pair):
        rho, sigma = full_rank_pair
        expected = 0.5 * (relative_entropy(rho, sigma) + relative_entropy(sigma, rho))
        assert jeffreys(rho, sigma) == pytest.approx(expected, abs=1e-12)
        assert jeffreys(sigma, rho) == pytest.approx(expected, abs=1e-12)

    def test_qjpd_is_square_root(self, full_rank_pair):
        rho, sigma = full_rank_pair
        assert qjpd(rho, sigma) ** 2 == pytest.approx(jeffreys(rho, sigma), abs=1e-12)

    def test_jensen_shannon_two_routes(self, rng):
        # jensen_shannon averages relative entropies to the midpoint while
        # qjsd combines von Neumann entropies; they must coincide.
        for _ in range(15):
            dim = int(rng.integers(2, 4))
            rho = random_full_rank_state(rng, dim)
            sigma = random_full_rank_state(rng, dim)
            assert qjsd(rho, sigma) ** 2 == pytest.approx(
                jensen_shannon(rho, sigma), abs=1e-10
            )

    def test_jensen_shannon_bounded_by_ln2(self, rng):
        for _ in range(15):
            rho = from_bloch(random_bloch(rng))
            sigma = from_bloch(random_bloch(rng))
            assert jensen_shannon(rho, sigma) <= math.log(2.0) + 1e-12

    def test_zero_on_identical_states(self, rng):
        state = random_full_rank_state(rng, 3)
        assert jeffreys(state, state) == pytest.approx(0.0, abs=1e-12)
        assert jensen_shannon(state, state) == pytest.approx(0.0, abs=1e-12)


class TestBounds:
    def test_qre_bracket(self, rng):
        for _ in range(25):
            dim = int(rng.integers(2, 5))
            rho = random_full_rank_state(rng, dim)
            sigma = random_full_rank_state(rng, dim)
            value = relative_entropy(rho, sigma)
            bounds = qre_bounds(rho, sigma)
            assert bounds["pinsker_lower"] <= value + 1e-10
            assert value <= bounds["two_norm_upper"] + 1e-10
            assert bounds["s_min"] <= value + 1e-10
            assert value <= bounds["s_max"] + 1e-10
            assert bounds["s_min"] <= bounds["s_max"] + 1e-12

    def test_bounds_collapse_on_equal_states(self, rng):
        state = random_full_rank_state(rng, 2)
        bounds = qre_bounds(state, state)
        assert bounds["pinsker_lower"] == pytest.approx(0.0, abs=1e-12)
        assert bounds["s_max"] == pytest.approx(0.0, abs=1e-8)

    def test_asymmetry_bound_holds(self, rng):
        for _ in range(25):
            dim = int(rng.integers(2, 4))
            rho = random_full_rank_state(rng, dim)
            sigma = random_full_rank_state(rng, dim)
            gap = abs(relative_entropy(rho, sigma) - relative_entropy(sigma, rho))
            assert gap <= asymmetry_bound(rho, sigma) + 1e-10


class TestRateIdentity:
    @pytest.mark.parametrize(
        "kind,alpha",
        [
            (ChannelKind.DEPOLARIZING, None),
            (ChannelKind.PHASE_DAMPING, None),
            (ChannelKind.GAD, 0.3),
        ],
    )
    def test_channel_rates(self, kind, alpha):
        channel = KrausChannel(kind, 1.0, alpha) if alpha is not None else KrausChannel(kind, 1.0)
        traj = Trajectory(BlochQubit(0.6, 1.0, 0.3), channel)
        for t in (0.2, 1.0, 2.5):
            result = entropy_rate_identity_check(traj, t)
            assert result["gap"] < 1e-6
            assert result["lhs"] == pytest.approx(result["rhs"], abs=1e-6)

    def test_unitary_rate_is_zero(self):
        traj = Trajectory(BlochQubit(0.7, 1.2, 0.4), UnitaryDrive((0.3, -0.8, 0.5)))
        result = entropy_rate_identity_check(traj, 0.9)
        assert abs(result["lhs"]) < 1e-6
        assert abs(result["rhs"]) < 1e-9

    def test_near_zero_time_uses_one_sided_stencil(self):
        traj = Trajectory(BlochQubit(0.5, 0.9, 0.0), KrausChannel(ChannelKind.DEPOLARIZING, 1.0))
        result = entropy_rate_identity_check(traj, 1e-7)
        assert result["gap"] < 1e-4


class TestTriangleReport:
    def test_report_shape(self):
        report = qjpd_triangle_report(n_triples=50, seed=3)
        assert report["triples"] == 50
        assert isinstance(report["violations"], int)
        assert report["violations"] >= 0
        assert math.isfinite(report["max_excess"])

    def test_report_is_deterministic(self):
        first = qjpd_triangle_report(n_triples=30, seed=11)
        second = qjpd_triangle_report(n_triples=30, seed=11)
        assert first == second
