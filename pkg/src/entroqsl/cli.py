"""Command-line front end: scenario sweeps, verification, formula reference.

Scenarios are INI files with [drive], [state], [time], [run] and [output]
sections.  A sweep produces one CSV whose rows walk the parameter panels in
a fixed order (alpha, then theta, then the time axis, then r), so identical
configurations yield byte-identical files.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .channels import (
    ChannelKind,
    KrausChannel,
    Trajectory,
    UnitaryDrive,
)
from .errors import (
    BoundViolation,
    ConfigError,
    NegativeDivergence,
    NoConvergence,
    QuadratureFailure,
    ToolkitError,
)
from .qsl import (
    MEASURES,
    SPEED_MODES,
    QslReport,
    evaluate_report,
    normalize_over_grid,
)
from .states import BlochQubit

__all__ = [
    "ScenarioConfig",
    "SweepGrid",
    "parse_config",
    "run_scenario",
    "export_csv",
    "main",
]

OUTPUT_DIR_ENV = "ENTROQSL_OUTPUT_DIR"
FLOAT_FORMAT = "%.11e"

_CHANNEL_KINDS = {
    "depolarizing": ChannelKind.DEPOLARIZING,
    "phase-damping": ChannelKind.PHASE_DAMPING,
    "gad": ChannelKind.GAD,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated sweep description.

    Time values are dimensionless (rate times duration); they are divided by
    the drive rate when trajectories are built.
    """

    kind: str
    gamma: Optional[float]
    axis: Optional[Tuple[float, float, float]]
    alpha_values: Tuple[float, ...]
    theta_values: Tuple[float, ...]
    phi: float
    r_values: Tuple[float, ...]
    time_values: Tuple[float, ...]
    measures: Tuple[str, ...]
    speed_mode: str
    panels: int
    output: Optional[str]
    label: str = ""

    @property
    def time_name(self) -> str:
        return "n_tau" if self.kind == "unitary" else "gamma_tau"

    @property
    def is_unitary(self) -> bool:
        return self.kind == "unitary"

    @property
    def has_alpha(self) -> bool:
        return self.kind == "gad"

    @property
    def cell_count(self) -> int:
        return (
            len(self.alpha_values)
            * len(self.theta_values)
            * len(self.time_values)
            * len(self.r_values)
        )


@dataclass
class SweepGrid:
    """Evaluated sweep: per-cell reports plus per-panel normalized deltas."""

    config: ScenarioConfig
    columns: Tuple[str, ...]
    rows: List[Dict[str, float]] = field(default_factory=list)

    @property
    def cell_count(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise KeyError("no column %r" % (name,))
        return np.array([row[name] for row in self.rows])


def _parse_values(text: str, *, context: str) -> Tuple[float, ...]:
    """Parses 'start:stop:count', a comma list, or a single number."""
    text = text.strip()
    if not text:
        raise ConfigError("%s: empty value" % context)
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError("ranges use start:stop:count")
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
            if count < 1:
                raise ValueError("count must be >= 1")
            if count == 1:
                values = (start,)
            else:
                values = tuple(float(v) for v in np.linspace(start, stop, count))
        elif "," in text:
            values = tuple(float(v) for v in text.split(","))
        else:
            values = (float(text),)
    except ValueError as exc:
        raise ConfigError("%s: %s" % (context, exc)) from None
    if any(not math.isfinite(v) for v in values):
        raise ConfigError("%s: values must be finite" % context)
    return values


def _get(parser: configparser.ConfigParser, section: str, key: str, default=None):
    if parser.has_option(section, key):
        return parser.get(section, key)
    return default


def build_config(parser: configparser.ConfigParser) -> ScenarioConfig:
    """Validates a parsed INI structure into a ScenarioConfig."""
    for section in ("drive", "state", "time"):
        if not parser.has_section(section):
            raise ConfigError("missing [%s] section" % section)

    kind = (_get(parser, "drive", "kind") or "").strip().lower()
    if kind not in tuple(_CHANNEL_KINDS) + ("unitary",):
        raise ConfigError(
            "[drive] kind must be one of depolarizing, phase-damping, gad, unitary; got %r"
            % (kind,)
        )

    gamma = None
    axis = None
    alpha_values: Tuple[float, ...] = (math.nan,)
    if kind == "unitary":
        axis_text = _get(parser, "drive", "axis")
        if axis_text is None:
            raise ConfigError("[drive] axis is required for a unitary drive")
        parts = _parse_values(axis_text, context="[drive] axis")
        if len(parts) != 3:
            raise ConfigError("[drive] axis needs three components")
        if parts == (0.0, 0.0, 0.0):
            raise ConfigError("[drive] axis must be nonzero")
        axis = parts
        if parser.has_option("drive", "gamma"):
            raise ConfigError("[drive] gamma does not apply to a unitary drive")
        if parser.has_option("drive", "alpha"):
            raise ConfigError("[drive] alpha does not apply to a unitary drive")
    else:
        gamma_text = _get(parser, "drive", "gamma")
        if gamma_text is None:
            raise ConfigError("[drive] gamma is required for a channel")
        try:
            gamma = float(gamma_text)
        except ValueError:
            raise ConfigError("[drive] gamma must be a number, got %r" % (gamma_text,)) from None
        if not (math.isfinite(gamma) and gamma > 0.0):
            raise ConfigError("[drive] gamma must be finite and positive")
        if kind == "gad":
            alpha_text = _get(parser, "drive", "alpha")
            if alpha_text is None:
                raise ConfigError("[drive] alpha is required for the gad kind")
            alpha_values = _parse_values(alpha_text, context="[drive] alpha")
            for a in alpha_values:
                if not 0.0 <= a <= 1.0:
                    raise ConfigError("[drive] alpha values must lie in [0, 1]")
        elif parser.has_option("drive", "alpha"):
            raise ConfigError("[drive] alpha only applies to the gad kind")

    r_text = _get(parser, "state", "r")
    if r_text is None:
        raise ConfigError("[state] r is required")
    r_values = _parse_values(r_text, context="[state] r")
    for r in r_values:
        if not 0.0 <= r < 1.0:
            raise ConfigError("[state] r values must satisfy 0 <= r < 1, got %r" % (r,))

    theta_values = _parse_values(
        _get(parser, "state", "theta", "0"), context="[state] theta"
    )
    for theta in theta_values:
        if not 0.0 <= theta <= math.pi:
            raise ConfigError("[state] theta values must lie in [0, pi]")
    phi_values = _parse_values(_get(parser, "state", "phi", "0"), context="[state] phi")
    if len(phi_values) != 1:
        raise ConfigError("[state] phi must be a single value")
    phi = phi_values[0]
    if not 0.0 <= phi < 2.0 * math.pi:
        raise ConfigError("[state] phi must lie in [0, 2*pi)")

    time_key = "n_tau" if kind == "unitary" else "gamma_tau"
    time_text = _get(parser, "time", time_key)
    if time_text is None:
        raise ConfigError("[time] %s is required for this drive" % time_key)
    time_values = _parse_values(time_text, context="[time] %s" % time_key)
    for tv in time_values:
        if tv < 0.0:
            raise ConfigError("[time] %s values must be nonnegative" % time_key)

    measures_text = _get(parser, "run", "measures", "J,JS") if parser.has_section("run") else "J,JS"
    measures = tuple(m.strip() for m in measures_text.split(",") if m.strip())
    if not measures or any(m not in MEASURES for m in measures):
        raise ConfigError("[run] measures must be a subset of %s" % (",".join(MEASURES)))

    speed_mode = (
        (_get(parser, "run", "speed_mode", "exact") or "exact").strip().lower()
        if parser.has_section("run")
        else "exact"
    )
    if speed_mode not in SPEED_MODES:
        raise ConfigError("[run] speed_mode must be one of %s" % ", ".join(SPEED_MODES))
    if speed_mode == "kraus-bound" and kind == "unitary":
        raise ConfigError("[run] speed_mode kraus-bound does not apply to a unitary drive")

    panels_text = _get(parser, "run", "panels", "2000") if parser.has_section("run") else "2000"
    try:
        panels = int(panels_text)
    except ValueError:
        raise ConfigError("[run] panels must be an integer, got %r" % (panels_text,)) from None
    if panels < 4 or panels % 2:
        raise ConfigError("[run] panels must be an even integer >= 4")

    output = _get(parser, "output", "path") if parser.has_section("output") else None
    label = (_get(parser, "output", "label", "") or "") if parser.has_section("output") else ""

    return ScenarioConfig(
        kind=kind,
        gamma=gamma,
        axis=axis,
        alpha_values=alpha_values,
        theta_values=theta_values,
        phi=phi,
        r_values=r_values,
        time_values=time_values,
        measures=measures,
        speed_mode=speed_mode,
        panels=panels,
        output=output,
        label=label,
    )


def parse_config(path: str) -> ScenarioConfig:
    """Reads and validates a scenario INI file."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(path)
    if not read:
        raise ConfigError("cannot read config file %r" % (path,))
    return build_config(parser)


def _columns_for(config: ScenarioConfig) -> Tuple[str, ...]:
    cols: List[str] = [config.time_name, "tau", "r", "theta"]
    if config.has_alpha:
        cols.append("alpha")
    for measure in config.measures:
        cols.append("divergence_%s" % measure)
        cols.append("speed_avg_%s" % measure)
        cols.append("tau_qsl_%s" % measure)
        cols.append("tau_qsl_%s_exact" % measure)
        if not config.is_unitary:
            cols.append("tau_qsl_%s_kraus_bound" % measure)
        if measure == "J":
            cols.append("tau_J_below")
            cols.append("tau_J_above")
        cols.append("delta_%s" % measure)
        cols.append("delta_%s_normalized" % measure)
        cols.append("norm_degenerate_%s" % measure)
        cols.append("frozen_%s" % measure)
        cols.append("converged_%s" % measure)
    return tuple(cols)


def _drive_for(config: ScenarioConfig, alpha: float):
    if config.is_unitary:
        return UnitaryDrive(config.axis)
    channel_kind = _CHANNEL_KINDS[config.kind]
    if channel_kind is ChannelKind.GAD:
        return KrausChannel(channel_kind, config.gamma, alpha)
    return KrausChannel(channel_kind, config.gamma)


def run_scenario(config: ScenarioConfig) -> SweepGrid:
    """Evaluates every grid cell and attaches per-panel normalized deltas.

    Panels are (alpha, theta) combinations; inside a panel rows walk the
    time axis slowly and the radius quickly.  Failures are re-raised with
    the offending cell coordinates attached.
    """
    grid = SweepGrid(config=config, columns=_columns_for(config))
    rate = None
    for alpha in config.alpha_values:
        drive = _drive_for(config, alpha)
        if rate is None:
            rate = drive.strength if config.is_unitary else config.gamma
        panel_rows: List[Dict[str, float]] = []
        for theta in config.theta_values:
            for time_value in config.time_values:
                tau = time_value / rate
                for r in config.r_values:
                    try:
                        traj = Trajectory(BlochQubit(r, theta, config.phi), drive)
                        report = evaluate_report(
                            traj,
                            tau,
                            measures=config.measures,
                            speed_mode=config.speed_mode,
                            panels=config.panels,
                        )
                    except ToolkitError as exc:
                        coords = "%s=%g, r=%g, theta=%g" % (
                            config.time_name,
                            time_value,
                            r,
                            theta,
                        )
                        if config.has_alpha:
                            coords += ", alpha=%g" % alpha
                        raise type(exc)("at cell (%s): %s" % (coords, exc)) from exc
                    row = _row_from_report(config, report, time_value, r, theta, alpha)
                    panel_rows.append(row)
            _attach_normalized(config, panel_rows)
            grid.rows.extend(panel_rows)
            panel_rows = []
    _check_grid_finite(grid)
    return grid


def _row_from_report(
    config: ScenarioConfig,
    report: QslReport,
    time_value: float,
    r: float,
    theta: float,
    alpha: float,
) -> Dict[str, float]:
    row: Dict[str, float] = {
        config.time_name: time_value,
        "tau": report.tau,
        "r": r,
        "theta": theta,
    }
    if config.has_alpha:
        row["alpha"] = alpha
    for measure in config.measures:
        for base in ("divergence", "speed_avg", "tau_qsl", "delta", "frozen", "converged"):
            name = "%s_%s" % (base, measure)
            value = getattr(report, name)
            row[name] = float(value)
        row["tau_qsl_%s_exact" % measure] = float(
            getattr(report, "tau_qsl_%s_exact" % measure)
        )
        if not config.is_unitary:
            row["tau_qsl_%s_kraus_bound" % measure] = float(
                getattr(report, "tau_qsl_%s_kraus_bound" % measure)
            )
        if measure == "J":
            row["tau_J_below"] = float(report.tau_J_below)
            row["tau_J_above"] = float(report.tau_J_above)
    return row


def _attach_normalized(config: ScenarioConfig, panel_rows: List[Dict[str, float]]):
    for measure in config.measures:
        deltas = np.array([row["delta_%s" % measure] for row in panel_rows])
        normalized, degenerate = normalize_over_grid(deltas)
        for row, value in zip(panel_rows, normalized):
            row["delta_%s_normalized" % measure] = float(value)
            row["norm_degenerate_%s" % measure] = float(degenerate)


def _check_grid_finite(grid: SweepGrid):
    for index, row in enumerate(grid.rows):
        for name in grid.columns:
            value = row[name]
            if not math.isfinite(value):
                raise BoundViolation(
                    "non-finite value %r in column %s at row %d" % (value, name, index)
                )


_INT_COLUMNS = ("frozen_", "converged_", "norm_degenerate_")


def _format_cell(name: str, value: float) -> str:
    if any(name.startswith(prefix) for prefix in _INT_COLUMNS):
        return "%d" % int(value)
    return FLOAT_FORMAT % value


def export_csv(grid: SweepGrid, destination, include_timestamp: bool = False) -> None:
    """Writes the sweep as CSV with a commented metadata header.

    The timestamp is omitted by default so identical configurations produce
    byte-identical files.
    """
    config = grid.config
    close = False
    if isinstance(destination, (str, os.PathLike)):
        handle = open(destination, "w", encoding="utf-8", newline="")
        close = True
    else:
        handle = destination
    try:
        meta: List[Tuple[str, str]] = [
            ("generator", "entroqsl %s" % __version__),
            ("label", config.label),
            ("kind", config.kind),
        ]
        if config.is_unitary:
            meta.append(("axis", ",".join("%.17g" % c for c in config.axis)))
        else:
            meta.append(("gamma", "%.17g" % config.gamma))
        if config.has_alpha:
            meta.append(("alpha", ",".join("%.17g" % a for a in config.alpha_values)))
        meta.extend(
            [
                ("theta", ",".join("%.17g" % v for v in config.theta_values)),
                ("phi", "%.17g" % config.phi),
                ("r", ",".join("%.17g" % v for v in config.r_values)),
                (
                    config.time_name,
                    ",".join("%.17g" % v for v in config.time_values),
                ),
                ("measures", ",".join(config.measures)),
                ("speed_mode", config.speed_mode),
                ("panels", "%d" % config.panels),
                ("normalization", "min-max per (alpha, theta) panel"),
            ]
        )
        if include_timestamp:
            meta.append(("timestamp", datetime.now(timezone.utc).isoformat()))
        for key, value in meta:
            handle.write("# %s = %s\n" % (key, value))
        handle.write(",".join(grid.columns) + "\n")
        for row in grid.rows:
            handle.write(
                ",".join(_format_cell(name, row[name]) for name in grid.columns) + "\n"
            )
    finally:
        if close:
            handle.close()


def read_csv(path: str) -> Tuple[Dict[str, str], Tuple[str, ...], List[Dict[str, float]]]:
    """Parses a file written by :func:`export_csv`.

    Returns:
        (metadata dict, column names, list of row dicts with float values).
    """
    meta: Dict[str, str] = {}
    columns: Tuple[str, ...] = ()
    rows: List[Dict[str, float]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            if not columns:
                columns = tuple(line.split(","))
                continue
            parts = line.split(",")
            rows.append({name: float(part) for name, part in zip(columns, parts)})
    return meta, columns, rows


def resolve_output_path(name: str) -> str:
    """Relative outputs land in ENTROQSL_OUTPUT_DIR when it is set."""
    if os.path.isabs(name):
        return name
    base = os.environ.get(OUTPUT_DIR_ENV, "").strip()
    if base:
        return os.path.join(base, name)
    return name


FORMULA_REFERENCE = """\
entroqsl formula reference (all logarithms natural; k_min/k_max are extreme
eigenvalues; r is a Bloch radius, r_t the evolved one, nu_t the radius of
the midpoint mixture (rho_0 + rho_t)/2)

divergences
  relative_entropy(rho, sigma)        S = Tr rho (ln rho - ln sigma)
  qubit closed form                   S = (1/2) ln[(1-r1^2)/(1-r2^2)]
                                          + (r1/2)[L(r1) - cos(g) L(r2)]
                                      with L(r) = ln((1+r)/(1-r))
  jeffreys / qjpd                     S_J = (S(rho||sigma) + S(sigma||rho))/2,
                                      D_J = sqrt(S_J)
  jensen_shannon / qjsd               S_JS vs the mixture; D_JS = sqrt(S_JS)
  qre_bounds                          (1/2)||rho-sigma||_1^2 <= S
                                      <= ||rho-sigma||_2^2 / k_min(sigma)

costs and speeds
  cost_J(t)   = (|ln(k_min(rho_0) k_min(rho_t))| + k_max(rho_0)/k_min(rho_t))/2
  cost_JS(t)  = |ln(k_min(rho_t) k_min(midpoint_t))| / 2
  exact speed = ||drho_t/dt||_1
  kraus bound = 2 sum_j ||K_j rho_0 dK_j^dag/dt||_1  (>= exact speed)
  unitary     = ||[H, rho_0]||_1 = 2 r |n| |n_hat x r_hat|  (constant)

speed-limit times
  tau_qsl     = divergence^2 / <<cost * speed>>_tau
  bracket     = trace-norm and Frobenius replacements of the numerator
  delta       = 1 - tau_qsl / tau  (in [0, 1]; negative values abort)
  mt floor    = divergence^2 / (spectral factor * DeltaH)

channels (lam = 1 - exp(-gamma t))
  depolarizing   r_t = (1-lam) r;       nu_t = (1-lam/2) r
  phase damping  r_t = r sqrt(1 - lam sin^2 th)
  gad            r_t = sqrt([(2a-1)lam + (1-lam) r cos th]^2
                             + (1-lam) r^2 sin^2 th)
closed forms: channel_closed_forms(trajectory, tau) -> qjpd, qjsd and, for
depolarizing, the speed-limit ratios in Kraus-bound mode.
"""


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    grid = run_scenario(config)
    output = args.output or config.output
    if not output:
        raise ConfigError("no output path: set [output] path or pass --output")
    path = resolve_output_path(output)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    export_csv(grid, path, include_timestamp=args.timestamp)
    print(
        "wrote %s (%d rows, %d columns, %d panels)"
        % (
            path,
            grid.cell_count,
            len(grid.columns),
            len(config.alpha_values) * len(config.theta_values),
        )
    )
    return 0


def _cmd_verify(args) -> int:
    from . import verification

    summary = verification.run(args.suite, seed=args.seed)
    for suite_name in sorted(summary["suites"]):
        suite = summary["suites"][suite_name]
        for check in suite["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            line = "[%s] %s :: %s" % (status, suite_name, check["name"])
            if check["detail"]:
                line += " (%s)" % check["detail"]
            print(line)
    print(json.dumps(summary, sort_keys=True))
    return 0 if summary["ok"] else 1


def _cmd_show_formulas(_args) -> int:
    print(FORMULA_REFERENCE)
    return 0


def build_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entroqsl",
        description="Entropic distinguishability measures and speed-limit times",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="evaluate a scenario sweep to CSV")
    run_parser.add_argument("config", help="scenario INI file")
    run_parser.add_argument("--output", help="override the configured output path")
    run_parser.add_argument(
        "--timestamp",
        action="store_true",
        help="include a timestamp line (breaks byte determinism)",
    )
    run_parser.set_defaults(handler=_cmd_run)

    verify_parser = sub.add_parser("verify", help="run the invariant suites")
    verify_parser.add_argument(
        "suite",
        nargs="?",
        default="all",
        help="suite name (linalg, states, divergences, channels, qsl, cli) or 'all'",
    )
    verify_parser.add_argument("--seed", type=int, default=0)
    verify_parser.set_defaults(handler=_cmd_verify)

    formulas_parser = sub.add_parser("show-formulas", help="print the formula reference")
    formulas_parser.set_defaults(handler=_cmd_show_formulas)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_argument_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except (BoundViolation, NegativeDivergence, NoConvergence, QuadratureFailure) as exc:
        print("numerical contract violation: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
