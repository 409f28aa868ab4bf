"""Self-check suites behind the `verify` CLI subcommand.

Each suite is a list of quick invariant checks; every check returns a dict
with `name`, `passed` and `detail`.  The acceptance tests exercise the same
contracts at full grid sizes; these runs are sized for interactive use.
"""

from __future__ import annotations

import configparser
import math
import os
import tempfile
from typing import Callable, Dict, List

import numpy as np

from . import _backend
from .channels import (
    ChannelKind,
    KrausChannel,
    Trajectory,
    UnitaryDrive,
    analytic_nu,
    analytic_radius,
    apply_channel,
    evolve,
    hamiltonian_std,
    kraus_operators,
    kraus_speed_sum,
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
from .errors import ConfigError, ToolkitError
from .linalg import (
    hermitian_eig,
    matrix_log_integral,
    matrix_log_spectral,
    schatten_norm,
)
from .qsl import (
    channel_closed_forms,
    divergence_rate_check,
    evaluate_report,
    integral_upper_bound,
    log_trace_rate_check,
    mt_variance_floor,
    normalize_over_grid,
    tau_qsl,
    tau_qsl_bounds_J,
    tau_qsl_unitary,
)
from .sampling import random_bloch, random_full_rank_state, random_unitary
from .states import BlochQubit, DensityMatrix, bloch_vector, from_bloch, kappa_min_max, mix, to_bloch

__all__ = ["SUITES", "run"]


def _check(name: str, passed: bool, detail: str = "") -> Dict[str, object]:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _random_channel(rng: np.random.Generator) -> KrausChannel:
    pick = rng.integers(0, 3)
    gamma = float(rng.uniform(0.3, 2.0))
    if pick == 0:
        return KrausChannel(ChannelKind.DEPOLARIZING, gamma)
    if pick == 1:
        return KrausChannel(ChannelKind.PHASE_DAMPING, gamma)
    return KrausChannel(ChannelKind.GAD, gamma, float(rng.uniform(0.0, 1.0)))


def _random_trajectory(rng: np.random.Generator, unitary_share: float = 0.25) -> Trajectory:
    state = random_bloch(rng)
    if rng.uniform() < unitary_share:
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        drive = UnitaryDrive(tuple(axis * rng.uniform(0.5, 2.0)))
    else:
        drive = _random_channel(rng)
    return Trajectory(state, drive)


def suite_linalg(seed: int = 0) -> List[Dict[str, object]]:
    rng = np.random.default_rng(seed)
    checks: List[Dict[str, object]] = []

    sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
    norms = (schatten_norm(sigma_x, 1), schatten_norm(sigma_x, 2), schatten_norm(sigma_x, math.inf))
    expected = (2.0, math.sqrt(2.0), 1.0)
    worst = max(abs(a - b) for a, b in zip(norms, expected))
    diag = np.diag([0.3, -0.5]).astype(complex)
    worst = max(worst, abs(schatten_norm(diag, 1) - 0.8))
    checks.append(_check("pauli_and_diagonal_norms", worst <= 1e-12, "max err %.2e" % worst))

    state = DensityMatrix(0.5 * (np.eye(2) + 0.6 * sigma_x))
    eig_err = float(np.max(np.abs(state.eigenvalues - np.array([0.2, 0.8]))))
    checks.append(_check("known_mixture_eigenvalues", eig_err <= 1e-12, "max err %.2e" % eig_err))

    worst_recon = 0.0
    worst_orth = 0.0
    for _ in range(30):
        dim = int(rng.integers(2, 6))
        raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        herm = raw + raw.conj().T
        decomp = hermitian_eig(herm)
        recon = decomp.eigenvectors @ np.diag(decomp.eigenvalues) @ decomp.eigenvectors.conj().T
        scale = max(schatten_norm(herm, 2), 1e-30)
        worst_recon = max(worst_recon, schatten_norm(recon - herm, 2) / scale)
        gram = decomp.eigenvectors.conj().T @ decomp.eigenvectors
        worst_orth = max(worst_orth, float(np.max(np.abs(gram - np.eye(dim)))))
    checks.append(_check("eig_reconstruction", worst_recon <= 1e-10, "max rel err %.2e" % worst_recon))
    checks.append(_check("eigvec_orthonormality", worst_orth <= 1e-10, "max dev %.2e" % worst_orth))

    worst_gap = -math.inf
    for _ in range(50):
        dim = int(rng.integers(2, 6))
        raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        one = schatten_norm(raw, 1)
        two = schatten_norm(raw, 2)
        inf_norm = schatten_norm(raw, math.inf)
        worst_gap = max(worst_gap, two - one, inf_norm - two)
    checks.append(_check("norm_ordering", worst_gap <= 1e-12, "max violation %.2e" % worst_gap))

    worst_log = 0.0
    for _ in range(20):
        dim = int(rng.integers(2, 5))
        rho = random_full_rank_state(rng, dim).matrix
        gap = np.max(np.abs(matrix_log_spectral(rho) - matrix_log_integral(rho)))
        worst_log = max(worst_log, float(gap))
    checks.append(_check("log_route_agreement", worst_log <= 1e-7, "max dev %.2e" % worst_log))

    worst_inv = 0.0
    for _ in range(20):
        dim = int(rng.integers(2, 5))
        raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        unitary = random_unitary(rng, dim)
        rotated = unitary @ raw @ unitary.conj().T
        for p in (1, 2, math.inf):
            worst_inv = max(worst_inv, abs(schatten_norm(raw, p) - schatten_norm(rotated, p)))
    checks.append(_check("unitary_norm_invariance", worst_inv <= 1e-10, "max dev %.2e" % worst_inv))

    worst_exp = 0.0
    for _ in range(10):
        rho = random_full_rank_state(rng, 3).matrix
        log = matrix_log_spectral(rho)
        decomp = hermitian_eig(log)
        back = decomp.eigenvectors @ np.diag(np.exp(decomp.eigenvalues)) @ decomp.eigenvectors.conj().T
        worst_exp = max(worst_exp, float(np.max(np.abs(back - rho))))
    checks.append(_check("log_exp_roundtrip", worst_exp <= 1e-9, "max dev %.2e" % worst_exp))
    return checks


def suite_states(seed: int = 0) -> List[Dict[str, object]]:
    rng = np.random.default_rng(seed)
    checks: List[Dict[str, object]] = []

    worst = 0.0
    for _ in range(100):
        q = random_bloch(rng)
        again, vec = to_bloch(from_bloch(q))
        worst = max(
            worst,
            abs(again.r - q.r),
            abs(again.theta - q.theta),
            float(np.max(np.abs(vec - bloch_vector(q)))),
        )
        if q.r > 1e-12:
            worst = max(worst, abs(math.remainder(again.phi - q.phi, 2.0 * math.pi)))
    checks.append(_check("bloch_roundtrip", worst <= 1e-10, "max dev %.2e" % worst))

    mixed, _vec = to_bloch(DensityMatrix(0.5 * np.eye(2)))
    degenerate_ok = mixed.r == 0.0 and mixed.theta == 0.0 and mixed.phi == 0.0
    checks.append(_check("maximally_mixed_convention", degenerate_ok))

    rejected = 0
    attempts = 0

    def _expect_raise(fn) -> None:
        nonlocal rejected, attempts
        attempts += 1
        try:
            fn()
        except (ToolkitError, ValueError):
            rejected += 1

    _expect_raise(lambda: BlochQubit(1.0, 0.0, 0.0))
    _expect_raise(lambda: BlochQubit(-0.1, 0.0, 0.0))
    _expect_raise(lambda: BlochQubit(0.5, 4.0, 0.0))
    _expect_raise(lambda: BlochQubit(0.5, 0.0, -1.0))
    _expect_raise(lambda: DensityMatrix(np.diag([0.7, 0.7])))
    _expect_raise(lambda: DensityMatrix(np.array([[0.5, 0.3], [0.0, 0.5]])))
    _expect_raise(lambda: DensityMatrix(np.diag([1.2, -0.2])))
    _expect_raise(lambda: mix(from_bloch(random_bloch(rng)), from_bloch(random_bloch(rng)), 1.5))
    checks.append(
        _check("invalid_inputs_rejected", rejected == attempts, "%d/%d raised" % (rejected, attempts))
    )

    worst_kappa = 0.0
    for _ in range(50):
        q = random_bloch(rng)
        fast = kappa_min_max(q)
        slow = kappa_min_max(from_bloch(q))
        worst_kappa = max(worst_kappa, abs(fast[0] - slow[0]), abs(fast[1] - slow[1]))
    checks.append(_check("kappa_fast_path", worst_kappa <= 1e-12, "max dev %.2e" % worst_kappa))

    worst_mix = 0.0
    for _ in range(20):
        a = from_bloch(random_bloch(rng))
        b = from_bloch(random_bloch(rng))
        w = float(rng.uniform())
        blend = mix(a, b, w)
        direct = w * a.matrix + (1.0 - w) * b.matrix
        worst_mix = max(worst_mix, float(np.max(np.abs(blend.matrix - direct))))
    checks.append(_check("mix_is_affine", worst_mix <= 1e-12, "max dev %.2e" % worst_mix))
    return checks


def suite_divergences(seed: int = 0) -> List[Dict[str, object]]:
    rng = np.random.default_rng(seed)
    checks: List[Dict[str, object]] = []

    a = BlochQubit(0.5, 0.0, 0.0)
    b = BlochQubit(0.5, math.pi, 0.0)
    anti = qubit_relative_entropy_closed_form(a, b)
    err_anti = abs(anti - 0.5 * math.log(3.0))
    checks.append(_check("antiparallel_half_radius_value", err_anti <= 1e-12, "err %.2e" % err_anti))

    c = BlochQubit(0.6, 0.0, 0.0)
    d = BlochQubit(0.6, 0.5 * math.pi, 0.0)
    ortho = qubit_relative_entropy_closed_form(c, d)
    err_ortho = abs(ortho - 0.3 * math.log(4.0))
    checks.append(_check("orthogonal_axes_value", err_ortho <= 1e-12, "err %.2e" % err_ortho))

    worst_closed = 0.0
    for r1 in np.linspace(0.05, 0.9, 7):
        for r2 in np.linspace(0.05, 0.9, 7):
            for angle in np.linspace(0.0, math.pi, 7):
                qa = BlochQubit(float(r1), float(angle), 0.0)
                qb = BlochQubit(float(r2), 0.0, 0.0)
                closed = qubit_relative_entropy_closed_form(qa, qb)
                matrix = relative_entropy(from_bloch(qa), from_bloch(qb))
                worst_closed = max(worst_closed, abs(closed - matrix))
    checks.append(
        _check("closed_form_vs_matrix_route", worst_closed <= 1e-9, "max dev %.2e" % worst_closed)
    )

    worst_mixed = 0.0
    half = DensityMatrix(0.5 * np.eye(2))
    for _ in range(20):
        rho = from_bloch(random_bloch(rng))
        gap = abs(relative_entropy(rho, half) - (math.log(2.0) - von_neumann_entropy(rho)))
        worst_mixed = max(worst_mixed, gap)
    checks.append(
        _check("distance_to_maximally_mixed", worst_mixed <= 1e-10, "max dev %.2e" % worst_mixed)
    )

    worst_sym = 0.0
    worst_route = 0.0
    worst_js_cap = -math.inf
    for _ in range(30):
        dim = int(rng.integers(2, 4))
        rho = random_full_rank_state(rng, dim)
        sigma = random_full_rank_state(rng, dim)
        worst_sym = max(
            worst_sym,
            abs(jeffreys(rho, sigma) - jeffreys(sigma, rho)),
            abs(jensen_shannon(rho, sigma) - jensen_shannon(sigma, rho)),
        )
        worst_route = max(worst_route, abs(qjsd(rho, sigma) ** 2 - jensen_shannon(rho, sigma)))
        worst_js_cap = max(worst_js_cap, jensen_shannon(rho, sigma) - math.log(2.0))
    checks.append(_check("symmetry", worst_sym <= 1e-12, "max dev %.2e" % worst_sym))
    checks.append(
        _check("qjsd_route_agreement", worst_route <= 1e-10, "max dev %.2e" % worst_route)
    )
    checks.append(
        _check("jensen_shannon_below_ln2", worst_js_cap <= 1e-10, "max excess %.2e" % worst_js_cap)
    )

    bracket_ok = True
    detail = ""
    for index in range(50):
        dim = int(rng.integers(2, 5))
        rho = random_full_rank_state(rng, dim)
        sigma = random_full_rank_state(rng, dim)
        value = relative_entropy(rho, sigma)
        bounds = qre_bounds(rho, sigma)
        if not (
            bounds["pinsker_lower"] <= value + 1e-10
            and value <= bounds["two_norm_upper"] + 1e-10
            and bounds["s_min"] <= value + 1e-10
            and value <= bounds["s_max"] + 1e-10
        ):
            bracket_ok = False
            detail = "violated at draw %d" % index
            break
    checks.append(_check("qre_bracket", bracket_ok, detail))

    worst_asym = -math.inf
    for _ in range(50):
        dim = int(rng.integers(2, 4))
        rho = random_full_rank_state(rng, dim)
        sigma = random_full_rank_state(rng, dim)
        gap = abs(relative_entropy(rho, sigma) - relative_entropy(sigma, rho))
        worst_asym = max(worst_asym, gap - asymmetry_bound(rho, sigma))
    checks.append(
        _check("asymmetry_bound", worst_asym <= 1e-10, "max excess %.2e" % worst_asym)
    )

    worst_rate = 0.0
    for kind in (ChannelKind.DEPOLARIZING, ChannelKind.PHASE_DAMPING, ChannelKind.GAD):
        channel = (
            KrausChannel(kind, 1.0, 0.3) if kind is ChannelKind.GAD else KrausChannel(kind, 1.0)
        )
        traj = Trajectory(BlochQubit(0.6, 1.1, 0.4), channel)
        for t in (0.2, 1.0, 3.0):
            report = entropy_rate_identity_check(traj, t)
            worst_rate = max(worst_rate, report["gap"])
    checks.append(_check("entropy_rate_identity", worst_rate <= 1e-6, "max gap %.2e" % worst_rate))

    worst_unitary = 0.0
    for _ in range(20):
        dim = int(rng.integers(2, 4))
        rho = random_full_rank_state(rng, dim)
        sigma = random_full_rank_state(rng, dim)
        u = random_unitary(rng, dim)
        rotated = abs(
            relative_entropy(rho, sigma)
            - relative_entropy(
                DensityMatrix(u @ rho.matrix @ u.conj().T),
                DensityMatrix(u @ sigma.matrix @ u.conj().T),
            )
        )
        worst_unitary = max(worst_unitary, rotated)
    checks.append(
        _check("unitary_invariance", worst_unitary <= 1e-10, "max dev %.2e" % worst_unitary)
    )

    worst_triangle = -math.inf
    for _ in range(200):
        states = [random_full_rank_state(rng, 2) for _ in range(3)]
        d01 = qjsd(states[0], states[1])
        d12 = qjsd(states[1], states[2])
        d02 = qjsd(states[0], states[2])
        worst_triangle = max(worst_triangle, d02 - d01 - d12, d01 - d02 - d12, d12 - d01 - d02)
    checks.append(
        _check("qjsd_triangle", worst_triangle <= 1e-10, "max excess %.2e" % worst_triangle)
    )

    worst_contract = -math.inf
    for _ in range(50):
        rho = from_bloch(random_bloch(rng))
        sigma = from_bloch(random_bloch(rng))
        channel = _random_channel(rng)
        t = float(rng.uniform(0.05, 3.0))
        before = relative_entropy(rho, sigma)
        after = relative_entropy(apply_channel(channel, rho, t), apply_channel(channel, sigma, t))
        worst_contract = max(worst_contract, after - before)
    checks.append(
        _check("qre_contractivity", worst_contract <= 1e-10, "max excess %.2e" % worst_contract)
    )

    worst_qjpd_triangle = -math.inf
    for _ in range(200):
        states = [random_full_rank_state(rng, 2) for _ in range(3)]
        d01 = qjpd(states[0], states[1])
        d12 = qjpd(states[1], states[2])
        d02 = qjpd(states[0], states[2])
        worst_qjpd_triangle = max(
            worst_qjpd_triangle, d02 - d01 - d12, d01 - d02 - d12, d12 - d01 - d02
        )
    checks.append(
        _check(
            "qjpd_triangle_report",
            True,
            "report only: max excess %.2e over 200 triples" % worst_qjpd_triangle,
        )
    )
    return checks


def suite_channels(seed: int = 0) -> List[Dict[str, object]]:
    rng = np.random.default_rng(seed)
    checks: List[Dict[str, object]] = []

    channels = [
        KrausChannel(ChannelKind.DEPOLARIZING, 1.3),
        KrausChannel(ChannelKind.PHASE_DAMPING, 0.7),
        KrausChannel(ChannelKind.GAD, 1.0, 0.0),
        KrausChannel(ChannelKind.GAD, 1.0, 0.35),
        KrausChannel(ChannelKind.GAD, 1.0, 1.0),
    ]
    times = (0.0, 0.01, 0.5, 2.0, 8.0)

    worst_complete = 0.0
    for channel in channels:
        for t in times:
            ops, _derivs = kraus_operators(channel, t)
            total = sum(op.conj().T @ op for op in ops)
            worst_complete = max(worst_complete, float(np.max(np.abs(total - np.eye(2)))))
    checks.append(
        _check("kraus_completeness", worst_complete <= 1e-10, "max dev %.2e" % worst_complete)
    )

    worst_routes = 0.0
    for channel in channels:
        for _ in range(5):
            q = random_bloch(rng)
            traj = Trajectory(q, channel)
            for t in times:
                via_kraus = apply_channel(channel, traj.rho0, t).matrix
                via_affine = from_bloch_vector_matrix(traj.bloch_at(t))
                worst_routes = max(worst_routes, float(np.max(np.abs(via_kraus - via_affine))))
    checks.append(
        _check("kraus_vs_affine_evolution", worst_routes <= 1e-10, "max dev %.2e" % worst_routes)
    )

    gad_full = Trajectory(BlochQubit(0.5, 0.0, 0.0), KrausChannel(ChannelKind.GAD, 1.0, 1.0))
    t_half = math.log(2.0)
    radius = float(np.linalg.norm(gad_full.bloch_at(t_half)))
    nu_err = abs(analytic_nu(gad_full, t_half) - 0.625)
    checks.append(
        _check(
            "gad_half_decay_example",
            abs(radius - 0.75) <= 1e-12 and nu_err <= 1e-12,
            "radius err %.2e, nu err %.2e" % (abs(radius - 0.75), nu_err),
        )
    )

    worst_geom = 0.0
    for channel in channels:
        for _ in range(4):
            q = random_bloch(rng)
            traj = Trajectory(q, channel)
            for t in (0.0, 0.3, 1.7, 6.0):
                vec = traj.bloch_at(t)
                worst_geom = max(
                    worst_geom, abs(analytic_radius(traj, t) - float(np.linalg.norm(vec)))
                )
                mid = 0.5 * (traj.bloch0 + vec)
                worst_geom = max(
                    worst_geom, abs(analytic_nu(traj, t) - float(np.linalg.norm(mid)))
                )
    checks.append(
        _check("radius_and_nu_closed_forms", worst_geom <= 1e-9, "max dev %.2e" % worst_geom)
    )

    worst_speed_routes = 0.0
    worst_speed_order = -math.inf
    worst_fd = 0.0
    for channel in channels:
        for _ in range(3):
            q = random_bloch(rng)
            traj = Trajectory(q, channel)
            for t in (0.0, 0.25, 1.2, 4.0):
                analytic = kraus_speed_sum(traj, t, route="analytic")
                numeric = kraus_speed_sum(traj, t, route="numeric")
                worst_speed_routes = max(worst_speed_routes, abs(analytic - numeric))
                exact = schatten_speed(traj, t, route="analytic")
                worst_speed_order = max(worst_speed_order, exact - 2.0 * analytic)
                if t > 0.0:
                    fd = schatten_speed(traj, t, route="finite-difference")
                    worst_fd = max(worst_fd, abs(exact - fd))
    checks.append(
        _check(
            "kraus_speed_route_agreement",
            worst_speed_routes <= 1e-9,
            "max dev %.2e" % worst_speed_routes,
        )
    )
    checks.append(
        _check(
            "exact_speed_below_kraus_bound",
            worst_speed_order <= 1e-9,
            "max excess %.2e" % worst_speed_order,
        )
    )
    checks.append(
        _check("schatten_speed_vs_finite_difference", worst_fd <= 1e-6, "max dev %.2e" % worst_fd)
    )

    worst_comm = 0.0
    worst_std = -math.inf
    for _ in range(20):
        q = random_bloch(rng)
        axis = rng.normal(size=3)
        drive = UnitaryDrive(tuple(axis))
        formula = unitary_commutator_norm(drive, q)
        rho = from_bloch(q).matrix
        ham = drive.hamiltonian
        matrix_norm = schatten_norm(ham @ rho - rho @ ham, 1)
        worst_comm = max(worst_comm, abs(formula - matrix_norm))
        worst_std = max(worst_std, formula - 2.0 * hamiltonian_std(drive, q))
    checks.append(
        _check("unitary_commutator_norm", worst_comm <= 1e-10, "max dev %.2e" % worst_comm)
    )
    checks.append(
        _check("commutator_below_two_std", worst_std <= 1e-12, "max excess %.2e" % worst_std)
    )

    worst_unitary_geom = 0.0
    for _ in range(10):
        traj = Trajectory(random_bloch(rng), UnitaryDrive(tuple(rng.normal(size=3))))
        for t in (0.0, 0.4, 1.9):
            state = evolve(traj, t)
            _, vec = to_bloch(state)
            worst_unitary_geom = max(
                worst_unitary_geom,
                float(np.max(np.abs(vec - traj.bloch_at(t)))),
                abs(analytic_nu(traj, t) - float(np.linalg.norm(0.5 * (traj.bloch0 + vec)))),
            )
    checks.append(
        _check(
            "unitary_rotation_geometry",
            worst_unitary_geom <= 1e-10,
            "max dev %.2e" % worst_unitary_geom,
        )
    )
    return checks


def from_bloch_vector_matrix(vec: np.ndarray) -> np.ndarray:
    """Density matrix for an arbitrary Bloch vector with norm <= 1."""
    x, y, z = (float(vec[0]), float(vec[1]), float(vec[2]))
    return 0.5 * np.array(
        [[1.0 + z, x - 1j * y], [x + 1j * y, 1.0 - z]], dtype=complex
    )


def suite_qsl(seed: int = 0) -> List[Dict[str, object]]:
    rng = np.random.default_rng(seed)
    checks: List[Dict[str, object]] = []

    validity_ok = True
    hierarchy_ok = True
    detail = ""
    worst_delta = math.inf
    for index in range(30):
        traj = _random_trajectory(rng)
        rate = traj.rate_scale
        tau = float(rng.uniform(0.1, 5.0)) / rate
        unitary = isinstance(traj.drive, UnitaryDrive)
        mode = "exact" if unitary else ("exact", "kraus-bound")[index % 2]
        try:
            report = evaluate_report(traj, tau, speed_mode=mode, panels=800)
        except ToolkitError as exc:
            validity_ok = False
            detail = "draw %d raised %s" % (index, type(exc).__name__)
            break
        for measure in ("J", "JS"):
            delta = getattr(report, "delta_%s" % measure)
            worst_delta = min(worst_delta, delta)
            if delta < -1e-9:
                validity_ok = False
                detail = "draw %d delta_%s=%.3e" % (index, measure, delta)
        if not report.frozen_J:
            if not (
                report.tau_J_below <= report.tau_qsl_J + 1e-9
                and report.tau_qsl_J <= report.tau_J_above + 1e-9
            ):
                hierarchy_ok = False
                detail = "draw %d bracket" % index
    checks.append(_check("report_validity", validity_ok, detail or "min delta %.3e" % worst_delta))
    checks.append(_check("tau_bracket_hierarchy", hierarchy_ok, detail if not hierarchy_ok else ""))

    bound_ok = True
    detail = ""
    for index in range(20):
        traj = _random_trajectory(rng)
        tau = float(rng.uniform(0.2, 4.0)) / traj.rate_scale
        report = evaluate_report(traj, tau, measures=("J",), panels=800)
        upper = integral_upper_bound(traj, tau, panels=800)
        rho_t = evolve(traj, tau)
        lower = schatten_norm(traj.rho0.matrix - rho_t.matrix, 1) / math.sqrt(2.0)
        if not (lower <= report.divergence_J + 1e-9 and report.divergence_J <= upper + 1e-9):
            bound_ok = False
            detail = "draw %d: %.3e <= %.3e <= %.3e" % (
                index,
                lower,
                report.divergence_J,
                upper,
            )
            break
    checks.append(_check("divergence_bracket", bound_ok, detail))

    worst_rate_margin = math.inf
    for kind_index in range(4):
        traj = _random_trajectory(rng, unitary_share=1.0 if kind_index == 3 else 0.0)
        for t in (0.4, 1.3):
            for measure in ("J", "JS"):
                result = divergence_rate_check(traj, t / traj.rate_scale, measure)
                worst_rate_margin = min(worst_rate_margin, result["margin"])
    checks.append(
        _check(
            "divergence_rate_bound",
            worst_rate_margin >= -1e-6,
            "min margin %.2e" % worst_rate_margin,
        )
    )

    worst_log_margin = math.inf
    for _ in range(4):
        traj = _random_trajectory(rng)
        result = log_trace_rate_check(traj, 0.8 / traj.rate_scale)
        worst_log_margin = min(worst_log_margin, result["margin"])
    checks.append(
        _check(
            "log_trace_rate_bound",
            worst_log_margin >= -1e-6,
            "min margin %.2e" % worst_log_margin,
        )
    )

    worst_unitary_closed = 0.0
    for _ in range(6):
        q = random_bloch(rng)
        axis = tuple(rng.normal(size=3))
        drive = UnitaryDrive(axis)
        traj = Trajectory(q, drive)
        tau = float(rng.uniform(0.3, 2.5)) / drive.strength
        for measure in ("J", "JS"):
            closed = tau_qsl_unitary(drive, q, tau, measure=measure)
            numeric = tau_qsl(traj, tau, measure=measure, panels=1200, engine="matrix").value
            scale = max(abs(closed), 1e-9)
            worst_unitary_closed = max(worst_unitary_closed, abs(closed - numeric) / scale)
    checks.append(
        _check(
            "unitary_closed_form_vs_matrix_engine",
            worst_unitary_closed <= 1e-6,
            "max rel dev %.2e" % worst_unitary_closed,
        )
    )

    worst_depol = 0.0
    depol = KrausChannel(ChannelKind.DEPOLARIZING, 1.0)
    for r in (0.2, 0.6, 0.9):
        for gamma_tau in (0.4, 1.5, 4.0):
            traj = Trajectory(BlochQubit(r, 0.7, 0.1), depol)
            forms = channel_closed_forms(traj, gamma_tau)
            report = evaluate_report(traj, gamma_tau, speed_mode="kraus-bound", panels=4000)
            pairs = (
                (forms["qjpd"], report.divergence_J),
                (forms["qjsd"], report.divergence_JS),
                (forms["qsl_ratio_j"], report.tau_qsl_J / gamma_tau),
                (forms["qsl_ratio_js"], report.tau_qsl_JS / gamma_tau),
            )
            for closed, numeric in pairs:
                scale = max(abs(closed), 1e-9)
                worst_depol = max(worst_depol, abs(closed - numeric) / scale)
    checks.append(
        _check(
            "depolarizing_closed_forms",
            worst_depol <= 1e-6,
            "max rel dev %.2e" % worst_depol,
        )
    )

    worst_floor = -math.inf
    for _ in range(30):
        q = random_bloch(rng)
        drive = UnitaryDrive(tuple(rng.normal(size=3)))
        tau = float(rng.uniform(0.2, 2.8)) / drive.strength
        for measure in ("J", "JS"):
            floor = mt_variance_floor(drive, q, tau, measure=measure)
            value = tau_qsl_unitary(drive, q, tau, measure=measure)
            worst_floor = max(worst_floor, floor - value)
    checks.append(
        _check("mt_floor_below_tau", worst_floor <= 1e-12, "max excess %.2e" % worst_floor)
    )

    frozen_traj = Trajectory(BlochQubit(0.5, 0.0, 0.0), KrausChannel(ChannelKind.PHASE_DAMPING, 1.0))
    frozen_report = evaluate_report(frozen_traj, 1.0)
    frozen_ok = frozen_report.frozen_J and frozen_report.tau_qsl_J == 0.0
    aligned = tau_qsl_unitary(UnitaryDrive((0.0, 0.0, 1.0)), BlochQubit(0.5, 0.0, 0.0), 1.0)
    checks.append(
        _check("frozen_scenarios", frozen_ok and aligned == 0.0)
    )

    worst_engine = 0.0
    for _ in range(5):
        traj = _random_trajectory(rng, unitary_share=0.0)
        tau = float(rng.uniform(0.3, 3.0)) / traj.rate_scale
        for measure in ("J", "JS"):
            fast = tau_qsl(traj, tau, measure=measure, panels=1200, engine="bloch").value
            slow = tau_qsl(traj, tau, measure=measure, panels=1200, engine="matrix").value
            scale = max(abs(fast), 1e-9)
            worst_engine = max(worst_engine, abs(fast - slow) / scale)
    checks.append(
        _check("engine_agreement", worst_engine <= 1e-6, "max rel dev %.2e" % worst_engine)
    )

    grid = np.array([0.3, 0.1, 0.7, 0.7, 0.0])
    normalized, degenerate = normalize_over_grid(grid)
    flat, flat_degenerate = normalize_over_grid(np.full(4, 2.5))
    norm_ok = (
        not degenerate
        and abs(float(normalized.min())) == 0.0
        and abs(float(normalized.max()) - 1.0) == 0.0
        and flat_degenerate
        and float(np.max(np.abs(flat))) == 0.0
    )
    checks.append(_check("grid_normalization", norm_ok))

    t_axis = np.linspace(0.05, 3.0, 64)
    out_backend = _backend.weighted_speeds(1, 0, 0, 0.6, 0.8, 0.0, 1.0, 0.0, 0.0, t_axis)
    from . import _kernels_py

    out_py = np.empty_like(t_axis)
    _kernels_py.weighted_speeds(1, 0, 0, 0.6, 0.8, 0.0, 1.0, 0.0, 0.0, t_axis, out_py)
    backend_gap = float(np.max(np.abs(out_backend - out_py)))
    checks.append(
        _check(
            "kernel_backend_parity",
            backend_gap <= 1e-12,
            "backend %s, max dev %.2e" % (_backend.BACKEND_NAME, backend_gap),
        )
    )
    return checks


def suite_cli(seed: int = 0) -> List[Dict[str, object]]:
    from . import cli

    checks: List[Dict[str, object]] = []
    ini = (
        "[drive]\n"
        "kind = depolarizing\n"
        "gamma = 1.0\n"
        "[state]\n"
        "r = 0.2,0.8\n"
        "[time]\n"
        "gamma_tau = 0:2:3\n"
        "[run]\n"
        "measures = J,JS\n"
        "panels = 200\n"
    )

    with tempfile.TemporaryDirectory() as workdir:
        config_path = os.path.join(workdir, "scenario.ini")
        with open(config_path, "w", encoding="utf-8") as handle:
            handle.write(ini)
        config = cli.parse_config(config_path)
        shape_ok = (
            config.kind == "depolarizing"
            and config.r_values == (0.2, 0.8)
            and len(config.time_values) == 3
            and config.cell_count == 6
        )
        checks.append(_check("config_parsing", shape_ok))

        grid = cli.run_scenario(config)
        out_a = os.path.join(workdir, "a.csv")
        out_b = os.path.join(workdir, "b.csv")
        cli.export_csv(grid, out_a)
        cli.export_csv(cli.run_scenario(config), out_b)
        with open(out_a, "rb") as fa, open(out_b, "rb") as fb:
            identical = fa.read() == fb.read()
        checks.append(_check("deterministic_output", identical))

        meta, columns, rows = cli.read_csv(out_a)
        roundtrip_ok = (
            meta.get("kind") == "depolarizing"
            and len(rows) == grid.cell_count
            and "tau_qsl_J" in columns
            and "delta_J_normalized" in columns
        )
        if roundtrip_ok:
            for row, original in zip(rows, grid.rows):
                for name in columns:
                    formatted = cli._format_cell(name, original[name])
                    if float(formatted) != row[name]:
                        roundtrip_ok = False
                        break
        checks.append(_check("csv_roundtrip", roundtrip_ok))

        deltas = [row["delta_J_normalized"] for row in rows]
        extremes_ok = min(deltas) == 0.0 and max(deltas) == 1.0
        checks.append(_check("normalized_extremes", extremes_ok))

        exit_code = cli.main(["run", config_path, "--output", os.path.join(workdir, "c.csv")])
        checks.append(_check("run_exit_code", exit_code == 0))

        missing = cli.main(["run", os.path.join(workdir, "missing.ini")])
        checks.append(_check("missing_config_exit_code", missing == 2))

    rejected = 0
    bad_configs = [
        ini.replace("kind = depolarizing", "kind = bogus"),
        ini.replace("gamma = 1.0", "gamma = -2"),
        ini.replace("r = 0.2,0.8", "r = 1.5"),
        ini.replace("[time]\ngamma_tau = 0:2:3\n", "[time]\nn_tau = 1\n"),
        ini + "speed_mode = sideways\n",
    ]
    for text in bad_configs:
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        parser.read_string(text)
        try:
            cli.build_config(parser)
        except ConfigError:
            rejected += 1
    checks.append(
        _check(
            "invalid_configs_rejected",
            rejected == len(bad_configs),
            "%d/%d raised" % (rejected, len(bad_configs)),
        )
    )
    return checks


SUITES: Dict[str, Callable[[int], List[Dict[str, object]]]] = {
    "linalg": suite_linalg,
    "states": suite_states,
    "divergences": suite_divergences,
    "channels": suite_channels,
    "qsl": suite_qsl,
    "cli": suite_cli,
}


def run(suite: str = "all", seed: int = 0) -> Dict[str, object]:
    """Runs one suite or all of them; returns a JSON-friendly summary."""
    if suite == "all":
        names = sorted(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise ConfigError(
            "unknown suite %r; expected one of %s or 'all'" % (suite, ", ".join(sorted(SUITES)))
        )
    summary: Dict[str, object] = {"suites": {}, "seed": seed}
    total_passed = 0
    total_failed = 0
    for name in names:
        checks = SUITES[name](seed)
        passed = sum(1 for c in checks if c["passed"])
        failed = len(checks) - passed
        total_passed += passed
        total_failed += failed
        summary["suites"][name] = {"checks": checks, "passed": passed, "failed": failed}
    summary["total_passed"] = total_passed
    summary["total_failed"] = total_failed
    summary["ok"] = total_failed == 0
    return summary
