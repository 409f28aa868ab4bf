"""Pure-Python kernel for weighted-speed profiles along a trajectory.

Mirrors the compiled extension in ``_kernels.pyx``; the two are exchanged
behind ``_backend`` and must produce matching results.  Everything here is
vectorized numpy over the time nodes.

Codes shared with the compiled kernel:
    kind:       0 unitary, 1 depolarizing, 2 phase damping, 3 gad
    measure:    0 symmetrized (J), 1 Jensen-Shannon (JS)
    speed_mode: 0 exact trace-norm speed, 1 Kraus-sum bound (twice the
                norm sum), 2 no speed factor (cost profile only)
"""

from __future__ import annotations

import numpy as np

__all__ = ["weighted_speeds"]


def weighted_speeds(
    kind: int,
    measure: int,
    speed_mode: int,
    r: float,
    theta: float,
    alpha: float,
    gamma: float,
    n_norm: float,
    cross: float,
    t: np.ndarray,
    out: np.ndarray,
) -> None:
    """Fills ``out[i]`` with cost(t_i) * speed(t_i) for the requested mode."""
    t = np.asarray(t, dtype=np.float64)
    cos_th = np.cos(theta)
    sin_th = np.sin(theta)
    planar_sq = r * r * sin_th * sin_th
    axial = r * cos_th

    if kind == 0:
        rt = np.full(t.shape, r)
        if measure == 1:
            sin_sq = np.sin(n_norm * t) ** 2
            nu = r * np.sqrt(np.maximum(1.0 - cross * cross * sin_sq, 0.0))
        if speed_mode == 0:
            speed = np.full(t.shape, 2.0 * r * n_norm * cross)
        elif speed_mode == 2:
            speed = np.ones(t.shape)
        else:
            raise ValueError("Kraus-sum speed is undefined for unitary drives")
    else:
        lam = -np.expm1(-gamma * t)
        decay = 1.0 - lam
        root = np.sqrt(decay)
        shift = (2.0 * alpha - 1.0) * lam
        if kind == 1:
            rt = decay * r
            if measure == 1:
                nu = (1.0 - 0.5 * lam) * r
        elif kind == 2:
            rt = r * np.sqrt(1.0 - lam * sin_th * sin_th)
            if measure == 1:
                inner = 1.0 - 0.25 * (lam + 2.0 * (1.0 - root)) * sin_th * sin_th
                nu = r * np.sqrt(np.maximum(inner, 0.0))
        elif kind == 3:
            z = shift + decay * axial
            rt = np.sqrt(z * z + decay * planar_sq)
            if measure == 1:
                two_less = 2.0 - lam
                inner = shift * (2.0 * two_less * axial + shift)
                inner += r * r * (
                    two_less * two_less + (2.0 - two_less * root) * root * sin_th * sin_th
                )
                nu = 0.5 * np.sqrt(np.maximum(inner, 0.0))
        else:
            raise ValueError("unknown kind code %r" % (kind,))

        if speed_mode == 0:
            if kind == 1:
                speed = gamma * decay * r
            elif kind == 2:
                speed = 0.5 * gamma * root * r * sin_th
            else:
                span = (2.0 * alpha - 1.0) - axial
                speed = gamma * root * np.sqrt(0.25 * planar_sq + decay * span * span)
        elif speed_mode == 1:
            if kind == 1:
                speed = 1.5 * gamma * decay
            elif kind == 2:
                lower = 1.0 - axial
                radical = np.sqrt(decay * decay * lower * lower + decay * planar_sq)
                speed = 0.5 * gamma * (decay * lower + radical)
            else:
                lower = 1.0 - axial
                upper = 1.0 + axial
                rad_lower = np.sqrt(decay * decay * lower * lower + decay * planar_sq)
                rad_upper = np.sqrt(decay * decay * upper * upper + decay * planar_sq)
                speed = 0.5 * gamma * (
                    alpha * (decay * lower + rad_lower)
                    + (1.0 - alpha) * (decay * upper + rad_upper)
                )
        elif speed_mode == 2:
            speed = np.ones(t.shape)
        else:
            raise ValueError("unknown speed mode %r" % (speed_mode,))

    if measure == 0:
        cost = 0.5 * (
            np.abs(np.log((1.0 - r) * (1.0 - rt) * 0.25)) + (1.0 + r) / (1.0 - rt)
        )
    elif measure == 1:
        cost = 0.5 * np.abs(np.log((1.0 - rt) * (1.0 - nu) * 0.25))
    else:
        raise ValueError("unknown measure code %r" % (measure,))
    out[:] = cost * speed
