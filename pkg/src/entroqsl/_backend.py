"""Selects the compiled kernel when available, the numpy one otherwise.

Set ENTROQSL_BACKEND=python or ENTROQSL_BACKEND=cython to force a choice;
forcing cython raises if the extension was not built.
"""

from __future__ import annotations

import os

import numpy as np

_FORCED = os.environ.get("ENTROQSL_BACKEND", "").strip().lower()

if _FORCED == "python":
    from . import _kernels_py as _impl

    BACKEND_NAME = "python"
elif _FORCED == "cython":
    from . import _kernels as _impl  # type: ignore[attr-defined]

    BACKEND_NAME = "cython"
elif _FORCED:
    raise ValueError(
        "ENTROQSL_BACKEND must be 'python' or 'cython', got %r" % (_FORCED,)
    )
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND_NAME = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND_NAME = "python"

__all__ = ["BACKEND_NAME", "weighted_speeds"]


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
) -> np.ndarray:
    """Cost-times-speed profile at the given time nodes via the active kernel."""
    nodes = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty(nodes.shape[0], dtype=np.float64)
    _impl.weighted_speeds(
        kind, measure, speed_mode, r, theta, alpha, gamma, n_norm, cross, nodes, out
    )
    return out
