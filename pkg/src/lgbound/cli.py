"""Command-line interface: scan configs in, delimited tables out.

Commands mirror the library's analyses one-to-one.  Options may come
from a flat JSON config file (--config) or flags; flags win.  Output is
CSV (RFC-4180-style, 15 significant digits) or JSON with a config echo,
the records and a summary block.  A matplotlib figure can be rendered
alongside the table with --figure.

Exit codes: 0 success, 2 usage or config error, 3 numerical-quality
failure (a truncation target that could not be met).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import plotting
from .correlators import (
    SeriesKernel,
    TruncationTargetError,
    classical_correlator,
    exact_qho_correlator,
    superposition_correlator,
    superposition_moments,
    three_term_correlator,
    EXACT_MAX_STATE,
)
from .eigensystems import MorseSystem, QhoSystem, SuperpositionState
from .lg import LG2_LABELS, LG3_LABELS, LG4_LABELS, VIOLATION_TOL, build_report
from .overlaps import TruncationWarning
from .parity import parity_kernel, parity_min
from .scans import (
    Axis,
    ScanResult,
    classicalization_scan,
    scan_eigenstate_violation,
    scan_morse,
    scan_region,
    scan_smoothing,
    scan_superposition,
)

THREADS_ENV = "LGBOUND_THREADS"


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    """Resolved options for one command; round-trips through flat JSON."""

    command: str
    system: str = "qho"
    lam: float | None = None
    state: str = "n=0"
    theta: float | None = None
    phi: float | None = None
    tau_min: float = 0.0
    tau_max: float = 2.0 * math.pi
    tau_count: int = 512
    truncation: float | None = None
    format: str = "csv"
    output: str | None = None
    figure: str | None = None
    threads: int | None = None
    approx: str = "auto"
    q: float | None = None
    sigma: float | None = None
    max_n: int = 50
    tau: float = 2.77
    c_min: float = -3.0
    c_max: float = 5.0
    c_count: int = 201
    d_min: float = -3.0
    d_max: float = 5.0
    d_count: int = 201
    a_min: float = 1e-3
    a_max: float = 2.0
    a_count: int = 40
    theta_count: int = 181
    phi_count: int = 361

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def resolve(cls, command, file_values: dict, cli_values: dict) -> "RunConfig":
        merged = {}
        names = {f.name for f in dataclasses.fields(cls)}
        for src in (file_values, cli_values):
            for key, val in src.items():
                key = key.replace("-", "_")
                if key == "command":
                    continue
                if key not in names:
                    raise ConfigError(f"unknown config key: {key}")
                if val is not None:
                    merged[key] = val
        return cls(command=command, **merged)

    def parse_state(self):
        """-> ('eigenstate', n) or ('superposition', SuperpositionState)."""
        s = self.state.strip()
        if s.startswith("n="):
            try:
                return "eigenstate", int(s[2:])
            except ValueError as exc:
                raise ConfigError(f"bad eigenstate spec {s!r}") from exc
        if s == "superposition":
            if self.system != "qho":
                raise ConfigError("superposition states are defined for the oscillator only")
            if self.theta is None:
                raise ConfigError("superposition state requires --theta")
            return "superposition", SuperpositionState(self.theta, self.phi or 0.0)
        raise ConfigError(f"unrecognized state spec {self.state!r}")

    def build_system(self):
        if self.system == "qho":
            return QhoSystem()
        if self.system == "morse":
            if self.lam is None:
                raise ConfigError("--lambda is required for the morse system")
            return MorseSystem(self.lam)
        raise ConfigError(f"unknown system {self.system!r}")

    def tau_values(self):
        if self.tau_count < 2 or not self.tau_max > self.tau_min:
            raise ConfigError("bad tau grid")
        return np.linspace(self.tau_min, self.tau_max, self.tau_count)

    def tau_axis(self):
        return Axis("tau", self.tau_min, self.tau_max, self.tau_count)

    def resolve_threads(self):
        if self.threads is not None:
            return self.threads
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                return int(env)
            except ValueError as exc:
                raise ConfigError(f"bad {THREADS_ENV} value {env!r}") from exc
        return None


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.15g}"
    return str(value)


def write_csv(records, stream):
    writer = csv.writer(stream)
    if not records:
        return
    header = list(records[0].keys())
    writer.writerow(header)
    for rec in records:
        writer.writerow([_fmt(rec[k]) for k in header])


def _jsonable(obj):
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def emit(config: RunConfig, records, summary, figure_fn=None):
    if config.figure and figure_fn is not None:
        figure_fn(config.figure)
    payload_stream = open(config.output, "w", newline="") if config.output else sys.stdout
    try:
        if config.format == "json":
            doc = {"config": _jsonable(config.to_dict()),
                   "records": _jsonable(records),
                   "summary": _jsonable(summary)}
            json.dump(doc, payload_stream, indent=2)
            payload_stream.write("\n")
        else:
            write_csv(records, payload_stream)
    finally:
        if config.output:
            payload_stream.close()


# ---------------------------------------------------------------- commands

def _correlator_trace(config: RunConfig, taus):
    """-> (C array, q(+,+) array) for the configured system and state."""
    kind, state = config.parse_state()
    system = config.build_system()
    strict = config.truncation is not None
    if kind == "superposition":
        if config.approx not in ("auto", "exact"):
            raise ConfigError("superposition traces use the exact correlators")
        c = superposition_correlator(state.theta,
                                     exact_qho_correlator(0, taus),
                                     exact_qho_correlator(1, taus))
        q = np.array([superposition_moments(state.theta, state.phi, 0.0, t).q_table[0]
                      for t in taus])
        return c, q
    n = state
    system.check_index(n)
    if config.approx == "three-term":
        if config.system != "qho":
            raise ConfigError("the three-term approximation is oscillator-specific")
        c = three_term_correlator(taus)
        return c, 0.25 * (1.0 + c)
    use_exact = (config.system == "qho"
                 and config.approx in ("auto", "exact")
                 and n <= EXACT_MAX_STATE)
    if config.approx == "exact" and not use_exact:
        raise ConfigError(f"closed forms cover n <= {EXACT_MAX_STATE} oscillator states")
    if use_exact:
        c = exact_qho_correlator(n, taus)
        return c, 0.25 * (1.0 + c)
    kern = SeriesKernel(system, n, delta_target=config.truncation, strict=strict)
    return kern.correlator(taus), kern.quasiprob(taus)


def cmd_correlator(config: RunConfig) -> tuple[list, dict]:
    taus = config.tau_values()
    c, q = _correlator_trace(config, taus)
    ccl = classical_correlator(taus)
    records = [{"tau": float(t), "C": float(cv), "C_classical": float(clv),
                "q(+,+)": float(qv)}
               for t, cv, clv, qv in zip(taus, c, ccl, q)]
    i_min = int(np.argmin(c))
    summary = {"min_C": float(np.min(c)), "max_C": float(np.max(c)),
               "argmin_tau": float(taus[i_min]), "min_q_pp": float(np.min(q))}
    return records, summary


def _lg_report(config: RunConfig):
    kind, state = config.parse_state()
    strict = config.truncation is not None
    taus = config.tau_values()
    if kind == "superposition":
        corr = lambda t: superposition_correlator(
            state.theta, exact_qho_correlator(0, t), exact_qho_correlator(1, t))
        amp = math.sqrt(2.0 / math.pi) * math.sin(state.theta)
        avg = lambda t: amp * np.cos(state.phi + np.asarray(t, dtype=float))
        return build_report(taus, corr, average_fn=avg)
    n = state
    system = config.build_system()
    system.check_index(n)
    if config.system == "qho" and n <= EXACT_MAX_STATE:
        return build_report(taus, lambda t: exact_qho_correlator(n, t))
    kern = SeriesKernel(system, n, delta_target=config.truncation, strict=strict)
    if system.is_symmetric():
        return build_report(taus, kern.correlator)
    avg = kern.single_time_average
    return build_report(taus, kern.correlator,
                        average_fn=lambda t: np.full_like(np.asarray(t, float), avg))


def _report_records(report):
    records = []
    for i, t in enumerate(report.taus):
        rec = {"tau": float(t)}
        for j, label in enumerate(LG3_LABELS):
            rec[label] = float(report.lg3[j, i])
        for j, label in enumerate(LG2_LABELS):
            rec[label] = float(report.lg2[j, i])
        for j, label in enumerate(LG4_LABELS):
            rec[label] = float(report.lg4[j, i])
        rec["lg2_viol"] = bool(report.lg2[:, i].min() < -VIOLATION_TOL)
        rec["lg3_viol"] = bool(report.lg3[:, i].min() < -VIOLATION_TOL)
        rec["lg4_viol"] = bool(report.lg4[:, i].max() > 2.0 + VIOLATION_TOL)
        records.append(rec)
    summary = {
        "min_lg2": report.min_lg2,
        "min_lg3": report.min_lg3,
        "max_lg4": report.max_lg4,
        "argmin_lg3_tau": float(report.taus[report.lg3.min(axis=0).argmin()]),
        "argmax_lg4_tau": float(report.taus[report.lg4.max(axis=0).argmax()]),
        "lg2_violated": report.lg2_violated,
        "lg3_violated": report.lg3_violated,
        "lg4_violated": report.lg4_violated,
        "regime": report.regime,
        "luders_fraction": report.luders_fraction,
    }
    return records, summary


def cmd_lg(config: RunConfig):
    return _report_records(_lg_report(config))


def cmd_morse_lg(config: RunConfig):
    kind, state = config.parse_state()
    if kind != "eigenstate":
        raise ConfigError("morse-lg expects an eigenstate spec like n=1")
    if config.lam is None:
        raise ConfigError("--lambda is required for morse-lg")
    report = scan_morse(config.lam, state, tau_axis=config.tau_axis(),
                        delta_target=config.truncation,
                        strict=config.truncation is not None)
    return _report_records(report)


def _scan_payload(result: ScanResult):
    return result.records, dict(result.summary, grid=result.grid)


def cmd_scan_superposition(config: RunConfig):
    result = scan_superposition(
        Axis("theta", 0.0, math.pi, config.theta_count),
        Axis("phi", 0.0, 2.0 * math.pi, config.phi_count),
        config.tau_axis(),
        threads=config.resolve_threads(),
    )
    return _scan_payload(result) + (result,)


def cmd_scan_eigenstates(config: RunConfig):
    result = scan_eigenstate_violation(config.max_n, tau_axis=config.tau_axis(),
                                       threads=config.resolve_threads())
    return _scan_payload(result) + (result,)


def cmd_scan_region(config: RunConfig):
    result = scan_region(
        Axis("c", config.c_min, config.c_max, config.c_count),
        Axis("d", config.d_min, config.d_max, config.d_count),
        tau=config.tau,
        threads=config.resolve_threads(),
    )
    return _scan_payload(result) + (result,)


def cmd_scan_smoothing(config: RunConfig):
    result = scan_smoothing(
        Axis("a", config.a_min, config.a_max, config.a_count, scale="log"),
        tau_axis=config.tau_axis(),
    )
    return _scan_payload(result) + (result,)


def cmd_classicalization(config: RunConfig):
    result = classicalization_scan(config.max_n, threads=config.resolve_threads())
    return _scan_payload(result) + (result,)


def cmd_parity(config: RunConfig):
    ratios = np.linspace(0.0, 5.0, 501)
    records = [{"q_over_sigma": float(r), "lg2": float(parity_kernel(r))}
               for r in ratios]
    argmin, value = parity_min()
    summary = {"argmin_q_over_sigma": argmin, "min_lg2": value}
    if config.q is not None:
        if config.sigma is None or config.sigma <= 0:
            raise ConfigError("--q requires a positive --sigma")
        summary["point_value"] = parity_kernel(config.q / config.sigma)
    return records, summary


# ---------------------------------------------------------------- wiring

def build_parser():
    parser = argparse.ArgumentParser(
        prog="lgbound",
        description="Temporal correlators and Leggett-Garg inequality scans "
                    "for bound quantum systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, tau_grid=True):
        p.add_argument("--config", help="flat JSON config file; flags override it")
        p.add_argument("--truncation", type=float,
                       help="required truncation error of eigenbasis series")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--figure", help="also render a figure to this path")
        p.add_argument("--threads", type=int,
                       help=f"worker threads (default ${THREADS_ENV} or serial)")
        if tau_grid:
            p.add_argument("--tau-min", type=float, dest="tau_min")
            p.add_argument("--tau-max", type=float, dest="tau_max")
            p.add_argument("--tau-count", type=int, dest="tau_count")

    def add_state(p):
        p.add_argument("--system", choices=("qho", "morse"))
        p.add_argument("--lambda", type=float, dest="lam",
                       help="Morse well parameter")
        p.add_argument("--state", help="eigenstate 'n=K' or 'superposition'")
        p.add_argument("--theta", type=float)
        p.add_argument("--phi", type=float)

    p = sub.add_parser("correlator", help="temporal correlator trace")
    add_common(p)
    add_state(p)
    p.add_argument("--approx", choices=("auto", "exact", "series", "three-term"))

    p = sub.add_parser("lg", help="all LG kernel traces for one state")
    add_common(p)
    add_state(p)

    p = sub.add_parser("scan-superposition", help="violation map over superpositions")
    add_common(p)
    p.add_argument("--theta-count", type=int, dest="theta_count")
    p.add_argument("--phi-count", type=int, dest="phi_count")

    p = sub.add_parser("scan-eigenstates", help="max violation per eigenstate")
    add_common(p)
    p.add_argument("--max-n", type=int, dest="max_n")

    p = sub.add_parser("scan-region", help="quasi-probability over second windows")
    add_common(p, tau_grid=False)
    p.add_argument("--tau", type=float)
    p.add_argument("--c-min", type=float, dest="c_min")
    p.add_argument("--c-max", type=float, dest="c_max")
    p.add_argument("--c-count", type=int, dest="c_count")
    p.add_argument("--d-min", type=float, dest="d_min")
    p.add_argument("--d-max", type=float, dest="d_max")
    p.add_argument("--d-count", type=int, dest="d_count")

    p = sub.add_parser("scan-smoothing", help="violation vs projector smearing width")
    add_common(p)
    p.add_argument("--a-min", type=float, dest="a_min")
    p.add_argument("--a-max", type=float, dest="a_max")
    p.add_argument("--a-count", type=int, dest="a_count")

    p = sub.add_parser("classicalization", help="gap to the classical correlator per state")
    add_common(p, tau_grid=False)
    p.add_argument("--max-n", type=int, dest="max_n")

    p = sub.add_parser("parity", help="two-time test with the parity operator")
    add_common(p, tau_grid=False)
    p.add_argument("--q", type=float, help="gaussian mean position")
    p.add_argument("--sigma", type=float, help="gaussian width")

    p = sub.add_parser("morse-lg", help="LG kernel traces for a Morse eigenstate")
    add_common(p)
    add_state(p)
    return parser


_FIGURES = {
    "scan-superposition": plotting.save_superposition_figure,
    "scan-eigenstates": plotting.save_eigenstate_figure,
    "scan-region": plotting.save_region_figure,
    "scan-smoothing": plotting.save_smoothing_figure,
    "classicalization": plotting.save_classicalization_figure,
}


def run(config: RunConfig) -> int:
    records: list
    summary: dict
    figure_fn = None
    if config.command == "correlator":
        records, summary = cmd_correlator(config)
        figure_fn = lambda path: plotting.save_correlator_figure(records, path)
    elif config.command == "lg":
        records, summary = cmd_lg(config)
        figure_fn = lambda path: plotting.save_lg_figure(records, path)
    elif config.command == "morse-lg":
        records, summary = cmd_morse_lg(config)
        figure_fn = lambda path: plotting.save_lg_figure(records, path)
    elif config.command == "parity":
        records, summary = cmd_parity(config)
        figure_fn = lambda path: plotting.save_parity_figure(
            records, path, argmin=summary["argmin_q_over_sigma"])
    elif config.command in ("scan-superposition", "scan-eigenstates", "scan-region",
                            "scan-smoothing", "classicalization"):
        fn = {
            "scan-superposition": cmd_scan_superposition,
            "scan-eigenstates": cmd_scan_eigenstates,
            "scan-region": cmd_scan_region,
            "scan-smoothing": cmd_scan_smoothing,
            "classicalization": cmd_classicalization,
        }[config.command]
        records, summary, result = fn(config)
        saver = _FIGURES[config.command]
        figure_fn = lambda path: saver(result, path)
    else:
        raise ConfigError(f"unknown command {config.command!r}")
    emit(config, records, summary, figure_fn=figure_fn)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cli_values = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        file_values = {}
        if args.config:
            with open(args.config) as fh:
                file_values = json.load(fh)
            if not isinstance(file_values, dict):
                raise ConfigError("config file must hold a flat JSON object")
        config = RunConfig.resolve(args.command, file_values, cli_values)
    except (ConfigError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", TruncationWarning)
            return run(config)
    except TruncationWarning as exc:
        print(f"numerical quality: {exc}", file=sys.stderr)
        return 3
    except TruncationTargetError as exc:
        print(f"numerical quality: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, IndexError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
