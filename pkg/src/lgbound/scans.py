"""Parameter sweeps over states, regions and smoothing widths.

Each scan walks a fixed grid, stores one record per point (never a
running accumulator, so output is bit-identical across runs and thread
counts) and returns a ScanResult carrying the grid definition, the
records and a summary with global extrema.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf

from .correlators import (
    SeriesKernel,
    classical_correlator,
    exact_qho_correlator,
    series_correlator,
)
from .eigensystems import MorseSystem, QhoSystem
from .lg import VIOLATION_TOL, LGReport, build_report, lg3_set, _regime
from .overlaps import smoothed_overlap_row, wronskian_primitive_table

__all__ = [
    "Axis",
    "ScanResult",
    "default_tau_axis",
    "scan_superposition",
    "scan_eigenstate_violation",
    "classicalization_delta",
    "classicalization_scan",
    "scan_region",
    "scan_smoothing",
    "scan_morse",
]


@dataclass(frozen=True)
class Axis:
    """One scan axis: count points from start to stop, linear or log spaced."""

    name: str
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("axis needs at least two points")
        if not self.stop > self.start:
            raise ValueError("axis stop must exceed start")
        if self.scale not in ("linear", "log"):
            raise ValueError("scale must be 'linear' or 'log'")

    @property
    def values(self):
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def describe(self):
        return {"name": self.name, "start": self.start, "stop": self.stop,
                "count": self.count, "scale": self.scale}


@dataclass
class ScanResult:
    """Grid echo, per-point records and global summary of one sweep."""

    grid: dict
    records: list
    summary: dict
    columns: tuple = field(default=())

    def __post_init__(self):
        if not self.columns and self.records:
            self.columns = tuple(self.records[0].keys())


def default_tau_axis(count=512):
    return Axis("tau", 0.0, 2.0 * math.pi, count)


def _chunked(items, workers, fn):
    """Map fn over items preserving order; thread count only affects speed."""
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def scan_superposition(theta_axis=None, phi_axis=None, tau_axis=None, threads=None):
    """Violation map over all two-state superpositions.

    For each (theta, phi): minimum three- and two-time kernel values over
    the time grid, per-pair two-time minima, violation flags and the
    regime label.  Three-time kernels depend on theta alone (they are
    population mixtures), so they are computed once per theta row.
    """
    theta_axis = theta_axis or Axis("theta", 0.0, math.pi, 181)
    phi_axis = phi_axis or Axis("phi", 0.0, 2.0 * math.pi, 361)
    tau_axis = tau_axis or default_tau_axis()
    taus = tau_axis.values
    c0_1, c1_1 = exact_qho_correlator(0, taus), exact_qho_correlator(1, taus)
    c0_2, c1_2 = exact_qho_correlator(0, 2 * taus), exact_qho_correlator(1, 2 * taus)
    phis = phi_axis.values
    amp_base = math.sqrt(2.0 / math.pi)

    def theta_row(theta):
        w0 = math.cos(0.5 * theta) ** 2
        c12 = w0 * c0_1 + (1 - w0) * c1_1
        c13 = w0 * c0_2 + (1 - w0) * c1_2
        min_lg3 = float(lg3_set(c12, c12, c13).min())
        amp = amp_base * math.sin(theta)
        # (phi, tau) grids for the three measurement times 0, tau, 2 tau
        q1 = amp * np.cos(phis)[:, None] * np.ones_like(taus)[None, :]
        q2 = amp * np.cos(phis[:, None] + taus[None, :])
        q3 = amp * np.cos(phis[:, None] + 2 * taus[None, :])
        rows = []
        pair_mins = []
        for (qa, qb, cab) in ((q1, q2, c12), (q2, q3, c12), (q1, q3, c13)):
            vals = [1.0 + s1 * qa + s2 * qb + s1 * s2 * cab
                    for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1))]
            pair_mins.append(np.minimum.reduce(vals).min(axis=1))
        pair_mins = np.stack(pair_mins)          # (3, n_phi)
        min_lg2 = pair_mins.min(axis=0)
        for j, phi in enumerate(phis):
            lg2_viol = bool(min_lg2[j] < -VIOLATION_TOL)
            lg3_viol = bool(min_lg3 < -VIOLATION_TOL)
            rows.append({
                "theta": float(theta),
                "phi": float(phi),
                "min_lg3": min_lg3,
                "min_lg2": float(min_lg2[j]),
                "min_lg2_12": float(pair_mins[0, j]),
                "min_lg2_23": float(pair_mins[1, j]),
                "min_lg2_13": float(pair_mins[2, j]),
                "lg3_violated": lg3_viol,
                "lg2_violated": lg2_viol,
                "regime": _regime(lg3_viol, lg2_viol),
            })
        return rows

    records = [r for rows in _chunked(list(theta_axis.values), threads, theta_row)
               for r in rows]
    regimes = sorted({r["regime"] for r in records})
    summary = {
        "min_lg3": min(r["min_lg3"] for r in records),
        "min_lg2": min(r["min_lg2"] for r in records),
        "regimes_present": regimes,
    }
    grid = {"axes": [theta_axis.describe(), phi_axis.describe(), tau_axis.describe()]}
    return ScanResult(grid=grid, records=records, summary=summary)


def scan_eigenstate_violation(n_max: int, tau_axis=None, threads=None):
    """Strongest three-time violation per oscillator eigenstate.

    Reported as a fraction of the quantum bound -1/2.  States with a
    closed-form correlator use it; higher states fall back to the series.
    """
    if n_max > 50:
        raise ValueError("eigenstate scan supported for n <= 50")
    tau_axis = tau_axis or default_tau_axis()
    taus = tau_axis.values
    qho = QhoSystem()

    def one(n):
        if n <= 8:
            corr = lambda t: exact_qho_correlator(n, t)
        else:
            kern = SeriesKernel(qho, n, delta_target=1e-3)
            corr = kern.correlator
        c1, c2 = corr(taus), corr(2 * taus)
        min_lg3 = float(lg3_set(c1, c1, c2).min())
        return {
            "n": int(n),
            "parity": "odd" if n % 2 else "even",
            "min_lg3": min_lg3,
            "luders_fraction": max(0.0, min_lg3 / -0.5),
        }

    records = _chunked(list(range(n_max + 1)), threads, one)
    odd = [r for r in records if r["parity"] == "odd"]
    even = [r for r in records if r["parity"] == "even"]
    summary = {
        "max_luders_fraction": max(r["luders_fraction"] for r in records),
        "argmax_n": max(records, key=lambda r: r["luders_fraction"])["n"],
        "odd_min_fraction": min(r["luders_fraction"] for r in odd) if odd else None,
        "even_max_fraction": max(r["luders_fraction"] for r in even) if even else None,
    }
    grid = {"axes": [{"name": "n", "start": 0, "stop": n_max, "count": n_max + 1,
                      "scale": "linear"}, (tau_axis.describe())]}
    return ScanResult(grid=grid, records=records, summary=summary)


def classicalization_delta(n: int, num_points: int = 2048) -> float:
    """Mean absolute gap between eigenstate and classical correlators.

    Composite midpoint rule over one period with num_points >= 1024
    samples; the eigenstate trace uses the closed form when available
    and a tightly truncated series otherwise.
    """
    if num_points < 1024:
        raise ValueError("use at least 1024 quadrature points")
    taus = (np.arange(num_points) + 0.5) * (2.0 * math.pi / num_points)
    if n <= 8:
        c = exact_qho_correlator(n, taus)
    else:
        c = series_correlator(QhoSystem(), n, taus, delta_target=1e-4)
    return float(np.mean(np.abs(classical_correlator(taus) - c)))


def classicalization_scan(n_max: int, num_points: int = 2048, threads=None):
    """classicalization_delta for every eigenstate up to n_max."""

    def one(n):
        return {"n": int(n), "parity": "odd" if n % 2 else "even",
                "delta": classicalization_delta(n, num_points)}

    records = _chunked(list(range(n_max + 1)), threads, one)
    summary = {"delta_first": records[0]["delta"], "delta_last": records[-1]["delta"]}
    grid = {"axes": [{"name": "n", "start": 0, "stop": n_max, "count": n_max + 1,
                      "scale": "linear"}]}
    return ScanResult(grid=grid, records=records, summary=summary)


def scan_region(c_axis=None, d_axis=None, tau: float = 2.77, m_max: int = 300,
                threads=None):
    """Ground-state quasi-probability with the second projector on [c, d].

    First measurement fixed to the right half-line; grid points with
    c >= d are skipped.  The interval overlaps come from one Wronskian
    boundary table per axis, so the whole grid costs one matrix product
    per row.
    """
    c_axis = c_axis or Axis("c", -3.0, 5.0, 201)
    d_axis = d_axis or Axis("d", -3.0, 5.0, 201)
    qho = QhoSystem()
    cs, ds = c_axis.values, d_axis.values
    k = np.arange(m_max + 1)
    half_row = qho.split_overlap_row(0, m_max)
    weights = half_row * np.cos(k * tau)           # J_0k(0,inf) cos(k tau)
    bc = wronskian_primitive_table(qho, 0, m_max, cs)
    bd = wronskian_primitive_table(qho, 0, m_max, ds)
    erf_c, erf_d = erf(cs), erf(ds)
    denom = 2.0 * np.where(k == 0, 1.0, k.astype(float))[:, None]

    def c_row(i):
        keep = ds > cs[i]
        if not np.any(keep):
            return []
        j_cd = (bd[:, keep] - bc[:, i:i + 1]) / denom
        j_cd[0] = 0.5 * (erf_d[keep] - erf_c[i])   # gaussian diagonal mass
        q = weights @ j_cd
        return [{"c": float(cs[i]), "d": float(dv), "q_pp": float(qv)}
                for dv, qv in zip(ds[keep], q)]

    records = [r for rows in _chunked(list(range(len(cs))), threads, c_row)
               for r in rows]
    best = min(records, key=lambda r: r["q_pp"])
    summary = {"min_q_pp": best["q_pp"], "argmin_c": best["c"], "argmin_d": best["d"],
               "tau": tau}
    grid = {"axes": [c_axis.describe(), d_axis.describe()], "tau": tau}
    return ScanResult(grid=grid, records=records, summary=summary)


def scan_smoothing(a_axis=None, n: int = 1, m_max: int = 56, tau_axis=None):
    """Minimum three-time kernel as the projector smearing width grows.

    Rebuilds the smeared overlap row for each width, extracts the
    correlator trace and minimizes the four kernels over the grid.
    """
    a_axis = a_axis or Axis("a", 1e-3, 2.0, 40, scale="log")
    tau_axis = tau_axis or default_tau_axis()
    taus = tau_axis.values
    gaps = (n - np.arange(m_max + 1)).astype(float)
    records = []
    for a in a_axis.values:
        row = smoothed_overlap_row(n, m_max, a)
        w = row**2
        c1 = 4.0 * (np.cos(np.outer(taus, gaps)) @ w) - 1.0
        c2 = 4.0 * (np.cos(np.outer(2.0 * taus, gaps)) @ w) - 1.0
        min_lg3 = float(lg3_set(c1, c1, c2).min())
        records.append({"a": float(a), "min_lg3": min_lg3})
    summary = {"min_lg3": min(r["min_lg3"] for r in records),
               "first": records[0]["min_lg3"], "last": records[-1]["min_lg3"]}
    grid = {"axes": [a_axis.describe(), tau_axis.describe()], "state": n}
    return ScanResult(grid=grid, records=records, summary=summary)


def scan_morse(lam: float, n: int, tau_axis=None, delta_target=None,
               strict=False) -> LGReport:
    """Kernel traces for a Morse eigenstate over the dimensionless time grid.

    The coarse-graining splits the well at its minimum; the asymmetry
    makes the single-time averages nonzero, so two-time kernels differ
    between sign choices.  The series runs over every bound state.
    """
    tau_axis = tau_axis or default_tau_axis()
    sys = MorseSystem(lam)
    kern = SeriesKernel(sys, n, delta_target=delta_target, strict=strict)
    avg = kern.single_time_average
    return build_report(tau_axis.values, kern.correlator,
                        average_fn=lambda t: np.full_like(np.asarray(t, float), avg))
