"""Timing comparison of the compiled kernel against the numpy fallback.

Run from the repository root:

    python3 benchmarks/kernel_benchmark.py [--nodes 2001] [--repeat 200]

Each case evaluates the weighted-speed integrand over a full quadrature
axis, which is the hot path of a CLI sweep (one call per grid cell).
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from entroqsl import _kernels_py

CASES = [
    ("unitary J exact", dict(kind=0, measure=0, mode=0, r=0.6, theta=0.9, alpha=0.0, gamma=0.0, n_norm=1.3, cross=0.7)),
    ("depolarizing J exact", dict(kind=1, measure=0, mode=0, r=0.8, theta=0.4, alpha=0.0, gamma=1.0, n_norm=0.0, cross=0.0)),
    ("depolarizing JS kraus", dict(kind=1, measure=1, mode=1, r=0.8, theta=0.4, alpha=0.0, gamma=1.0, n_norm=0.0, cross=0.0)),
    ("phase damping J exact", dict(kind=2, measure=0, mode=0, r=0.5, theta=1.2, alpha=0.0, gamma=0.7, n_norm=0.0, cross=0.0)),
    ("gad JS exact", dict(kind=3, measure=1, mode=0, r=0.7, theta=2.1, alpha=0.3, gamma=1.4, n_norm=0.0, cross=0.0)),
]


def run_case(module, case, t, out, repeat):
    args = (
        case["kind"],
        case["measure"],
        case["mode"],
        case["r"],
        case["theta"],
        case["alpha"],
        case["gamma"],
        case["n_norm"],
        case["cross"],
        t,
        out,
    )
    module.weighted_speeds(*args)
    start = time.perf_counter()
    for _ in range(repeat):
        module.weighted_speeds(*args)
    return (time.perf_counter() - start) / repeat


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=2001, help="quadrature nodes per call")
    parser.add_argument("--repeat", type=int, default=200, help="timed repetitions per case")
    args = parser.parse_args()

    try:
        _kernels = importlib.import_module("entroqsl._kernels")
    except ImportError:
        _kernels = None

    t = np.linspace(0.0, 6.0, args.nodes)
    out = np.empty_like(t)

    print("nodes per call: %d, repetitions: %d" % (args.nodes, args.repeat))
    if _kernels is None:
        print("compiled kernel not built; timing the numpy fallback only")
    header = "%-24s %12s %12s %8s" % ("case", "numpy [us]", "cython [us]", "speedup")
    print(header)
    print("-" * len(header))
    for label, case in CASES:
        py_time = run_case(_kernels_py, case, t, out, args.repeat)
        if _kernels is None:
            print("%-24s %12.1f %12s %8s" % (label, py_time * 1e6, "-", "-"))
            continue
        cy_time = run_case(_kernels, case, t, out, args.repeat)
        check = np.empty_like(t)
        _kernels_py.weighted_speeds(
            case["kind"], case["measure"], case["mode"], case["r"], case["theta"],
            case["alpha"], case["gamma"], case["n_norm"], case["cross"], t, check,
        )
        _kernels.weighted_speeds(
            case["kind"], case["measure"], case["mode"], case["r"], case["theta"],
            case["alpha"], case["gamma"], case["n_norm"], case["cross"], t, out,
        )
        gap = float(np.max(np.abs(out - check)))
        if gap > 1e-12:
            raise AssertionError("backends disagree by %.3e on %s" % (gap, label))
        print(
            "%-24s %12.1f %12.1f %7.1fx"
            % (label, py_time * 1e6, cy_time * 1e6, py_time / cy_time)
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
