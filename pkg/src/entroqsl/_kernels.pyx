# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for weighted-speed profiles along a trajectory.

Scalar twin of ``_kernels_py.weighted_speeds``; the code layout follows the
pure-Python version so the two stay reviewable side by side.  Codes:
kind 0 unitary / 1 depolarizing / 2 phase damping / 3 gad; measure 0 J /
1 JS; speed_mode 0 exact / 1 Kraus-sum bound / 2 cost only.
"""

from libc.math cimport cos, expm1, fabs, log, sin, sqrt


def weighted_speeds(
    int kind,
    int measure,
    int speed_mode,
    double r,
    double theta,
    double alpha,
    double gamma,
    double n_norm,
    double cross,
    double[::1] t,
    double[::1] out,
):
    """Fills ``out[i]`` with cost(t_i) * speed(t_i) for the requested mode."""
    cdef Py_ssize_t i, n = t.shape[0]
    cdef double cos_th = cos(theta)
    cdef double sin_th = sin(theta)
    cdef double planar_sq = r * r * sin_th * sin_th
    cdef double axial = r * cos_th
    cdef double lam, decay, root, shift, z, rt, nu, inner, two_less
    cdef double span, lower, upper, radical, rad_lower, rad_upper
    cdef double speed, cost, sin_sq

    if out.shape[0] != n:
        raise ValueError("output buffer length mismatch")
    if kind == 0 and speed_mode == 1:
        raise ValueError("Kraus-sum speed is undefined for unitary drives")
    if kind < 0 or kind > 3:
        raise ValueError("unknown kind code %r" % (kind,))
    if measure < 0 or measure > 1:
        raise ValueError("unknown measure code %r" % (measure,))
    if speed_mode < 0 or speed_mode > 2:
        raise ValueError("unknown speed mode %r" % (speed_mode,))

    for i in range(n):
        nu = 0.0
        if kind == 0:
            rt = r
            if measure == 1:
                sin_sq = sin(n_norm * t[i])
                sin_sq = sin_sq * sin_sq
                inner = 1.0 - cross * cross * sin_sq
                nu = r * sqrt(inner if inner > 0.0 else 0.0)
            if speed_mode == 0:
                speed = 2.0 * r * n_norm * cross
            else:
                speed = 1.0
        else:
            lam = -expm1(-gamma * t[i])
            decay = 1.0 - lam
            root = sqrt(decay)
            shift = (2.0 * alpha - 1.0) * lam
            if kind == 1:
                rt = decay * r
                if measure == 1:
                    nu = (1.0 - 0.5 * lam) * r
            elif kind == 2:
                rt = r * sqrt(1.0 - lam * sin_th * sin_th)
                if measure == 1:
                    inner = 1.0 - 0.25 * (lam + 2.0 * (1.0 - root)) * sin_th * sin_th
                    nu = r * sqrt(inner if inner > 0.0 else 0.0)
            else:
                z = shift + decay * axial
                rt = sqrt(z * z + decay * planar_sq)
                if measure == 1:
                    two_less = 2.0 - lam
                    inner = shift * (2.0 * two_less * axial + shift)
                    inner += r * r * (
                        two_less * two_less
                        + (2.0 - two_less * root) * root * sin_th * sin_th
                    )
                    nu = 0.5 * sqrt(inner if inner > 0.0 else 0.0)

            if speed_mode == 0:
                if kind == 1:
                    speed = gamma * decay * r
                elif kind == 2:
                    speed = 0.5 * gamma * root * r * sin_th
                else:
                    span = (2.0 * alpha - 1.0) - axial
                    speed = gamma * root * sqrt(0.25 * planar_sq + decay * span * span)
            elif speed_mode == 1:
                if kind == 1:
                    speed = 1.5 * gamma * decay
                elif kind == 2:
                    lower = 1.0 - axial
                    radical = sqrt(decay * decay * lower * lower + decay * planar_sq)
                    speed = 0.5 * gamma * (decay * lower + radical)
                else:
                    lower = 1.0 - axial
                    upper = 1.0 + axial
                    rad_lower = sqrt(decay * decay * lower * lower + decay * planar_sq)
                    rad_upper = sqrt(decay * decay * upper * upper + decay * planar_sq)
                    speed = 0.5 * gamma * (
                        alpha * (decay * lower + rad_lower)
                        + (1.0 - alpha) * (decay * upper + rad_upper)
                    )
            else:
                speed = 1.0

        if measure == 0:
            cost = 0.5 * (
                fabs(log((1.0 - r) * (1.0 - rt) * 0.25)) + (1.0 + r) / (1.0 - rt)
            )
        else:
            cost = 0.5 * fabs(log((1.0 - rt) * (1.0 - nu) * 0.25))
        out[i] = cost * speed
