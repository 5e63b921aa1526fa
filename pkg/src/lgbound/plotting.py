"""Render scan and trace tables as matplotlib figures.

Each CLI command can save a figure next to its delimited output; these
helpers own the figure layouts.  The Agg backend is forced so rendering
works headless, and files are written wherever the caller points.
"""

from __future__ import annotations

import math

import numpy as np

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = [
    "save_correlator_figure",
    "save_lg_figure",
    "save_superposition_figure",
    "save_eigenstate_figure",
    "save_classicalization_figure",
    "save_region_figure",
    "save_smoothing_figure",
    "save_parity_figure",
]


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_correlator_figure(records, path, title="temporal correlator"):
    taus = [r["tau"] for r in records]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(taus, [r["C"] for r in records], lw=1.6, label="quantum")
    ax.plot(taus, [r["C_classical"] for r in records], "k--", lw=1.0, label="classical")
    ax.set_xlabel(r"$\omega\tau$")
    ax.set_ylabel(r"$C_{12}$")
    ax.set_title(title)
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.legend(frameon=False)
    return _finish(fig, path)


def save_lg_figure(records, path, title="LG inequality kernels"):
    taus = np.array([r["tau"] for r in records])
    fig, axes = plt.subplots(1, 3, figsize=(12.5, 3.8))
    for i in range(1, 5):
        axes[0].plot(taus, [r[f"L{i}"] for r in records], lw=1.2, label=f"L{i}")
    axes[0].axhline(0.0, color="k", lw=0.6)
    axes[0].axhline(-0.5, color="r", lw=0.6, ls=":")
    axes[0].set_title("three-time")
    axes[0].set_xlabel(r"$\omega\tau$")
    axes[0].legend(frameon=False, fontsize=8)
    lg2_cols = [c for c in records[0] if c.startswith("lg2_")]
    for c in lg2_cols:
        axes[1].plot(taus, [r[c] for r in records], lw=0.8)
    axes[1].axhline(0.0, color="k", lw=0.6)
    axes[1].set_title("two-time (twelve kernels)")
    axes[1].set_xlabel(r"$\omega\tau$")
    lg4_cols = [c for c in records[0] if c.startswith("lg4_")]
    for c in lg4_cols:
        axes[2].plot(taus, [r[c] for r in records], lw=0.8)
    axes[2].axhline(2.0, color="k", lw=0.6)
    axes[2].axhline(2.0 * math.sqrt(2.0), color="r", lw=0.6, ls=":")
    axes[2].set_title("four-time (eight kernels)")
    axes[2].set_xlabel(r"$\omega\tau$")
    fig.suptitle(title)
    return _finish(fig, path)


def save_superposition_figure(result, path):
    thetas = sorted({r["theta"] for r in result.records})
    phis = sorted({r["phi"] for r in result.records})
    lg3 = np.zeros((len(phis), len(thetas)))
    lg2 = np.zeros_like(lg3)
    ti = {v: i for i, v in enumerate(thetas)}
    pi_ = {v: i for i, v in enumerate(phis)}
    for r in result.records:
        lg3[pi_[r["phi"]], ti[r["theta"]]] = r["lg3_violated"]
        lg2[pi_[r["phi"]], ti[r["theta"]]] = r["lg2_violated"]
    fig, ax = plt.subplots(figsize=(6.4, 4.6))
    extent = (thetas[0], thetas[-1], phis[0], phis[-1])
    ax.imshow(lg3, origin="lower", extent=extent, aspect="auto",
              cmap="Oranges", alpha=0.8, vmin=0, vmax=1.6)
    ax.contourf(thetas, phis, lg2, levels=[0.5, 1.5], colors="none",
                hatches=["xx"])
    ax.contour(thetas, phis, lg2, levels=[0.5], colors="steelblue", linewidths=1.0)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$\phi$")
    ax.set_title("violation map: shaded = three-time, hatched = two-time")
    return _finish(fig, path)


def save_eigenstate_figure(result, path):
    odd = [(r["n"], r["luders_fraction"]) for r in result.records if r["parity"] == "odd"]
    even = [(r["n"], r["luders_fraction"]) for r in result.records if r["parity"] == "even"]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if odd:
        ax.plot(*zip(*odd), "o--", ms=4, label="odd states")
    if even:
        ax.plot(*zip(*even), "s:", ms=4, label="even states")
    ax.set_xlabel("eigenstate index")
    ax.set_ylabel("violation / quantum bound")
    ax.legend(frameon=False)
    return _finish(fig, path)


def save_classicalization_figure(result, path):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ns = [r["n"] for r in result.records]
    ax.semilogy(ns, [max(r["delta"], 1e-12) for r in result.records], "o-", ms=3)
    ax.set_xlabel("eigenstate index")
    ax.set_ylabel("mean gap to classical correlator")
    return _finish(fig, path)


def save_region_figure(result, path):
    cs = sorted({r["c"] for r in result.records})
    ds = sorted({r["d"] for r in result.records})
    grid = np.full((len(ds), len(cs)), np.nan)
    ci = {v: i for i, v in enumerate(cs)}
    di = {v: i for i, v in enumerate(ds)}
    for r in result.records:
        grid[di[r["d"]], ci[r["c"]]] = r["q_pp"]
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    lim = np.nanmax(np.abs(grid))
    im = ax.imshow(grid, origin="lower", aspect="auto",
                   extent=(cs[0], cs[-1], ds[0], ds[-1]),
                   cmap="RdBu", vmin=-lim, vmax=lim)
    fig.colorbar(im, ax=ax, label=r"$q(+,+)$")
    ax.set_xlabel("c")
    ax.set_ylabel("d")
    ax.set_title(f"quasi-probability, second window [c, d], tau={result.grid.get('tau')}")
    return _finish(fig, path)


def save_smoothing_figure(result, path):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.semilogx([r["a"] for r in result.records],
                [r["min_lg3"] for r in result.records], "o-", ms=3)
    ax.axhline(0.0, color="k", lw=0.6)
    ax.set_xlabel("smoothing width a")
    ax.set_ylabel("minimum three-time kernel")
    return _finish(fig, path)


def save_parity_figure(records, path, argmin=None):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot([r["q_over_sigma"] for r in records], [r["lg2"] for r in records], lw=1.4)
    ax.axhline(0.0, color="k", lw=0.6)
    if argmin is not None:
        ax.axvline(argmin, color="r", lw=0.8, ls=":")
    ax.set_xlabel(r"$q/\sigma$")
    ax.set_ylabel("two-time kernel")
    return _finish(fig, path)
