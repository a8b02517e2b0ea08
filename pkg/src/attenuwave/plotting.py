"""Figure rendering for the CLI report paths.

Each report command can drop a PNG next to its delimited output.  All
figures use the Agg backend so rendering works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .certify import CausalityReport
from .grids import TimeSignal

_DPI = 130


def _finish(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def plot_dispersion(
    omega: np.ndarray,
    att: np.ndarray,
    speed: np.ndarray,
    title: str,
    path: Path,
) -> Path:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    pos = omega > 0
    ax1.loglog(omega[pos], np.where(att[pos] > 0, att[pos], np.nan))
    ax1.set_xlabel(r"$\omega$ [rad/s]")
    ax1.set_ylabel(r"attenuation [1/m]")
    ax2.semilogx(omega[pos], speed[pos])
    ax2.set_xlabel(r"$\omega$ [rad/s]")
    ax2.set_ylabel("phase speed [m/s]")
    fig.suptitle(title)
    return _finish(fig, path)


def plot_signals(
    signals: list[TimeSignal],
    labels: list[str],
    title: str,
    path: Path,
    xlim: tuple[float, float] | None = None,
) -> Path:
    fig, ax = plt.subplots(figsize=(7, 3.6))
    for sig, lab in zip(signals, labels):
        ax.plot(sig.times(), sig.samples, label=lab, lw=0.9)
    ax.set_xlabel("t [s]")
    ax.set_ylabel("amplitude")
    if xlim:
        ax.set_xlim(*xlim)
    if len(signals) > 1:
        ax.legend(fontsize=8)
    ax.set_title(title)
    return _finish(fig, path)


def plot_growth_fits(report: CausalityReport, title: str, path: Path) -> Path:
    fits = report.growth_fits
    fig, ax = plt.subplots(figsize=(6.5, 3.6))
    phis = [f.phi for f in fits]
    slopes = [f.slope_or_n for f in fits]
    kinds = [f.fit_kind for f in fits]
    colors = ["tab:red" if k == "power" else "tab:blue" for k in kinds]
    ax.scatter(phis, slopes, c=colors, s=22)
    ax.axhline(0.5, color="k", lw=0.6, ls="--")
    ax.set_xlabel(r"ray angle $\varphi$")
    ax.set_ylabel("fitted exponent / log coefficient")
    ax.set_title(f"{title}: {report.verdict.value}")
    return _finish(fig, path)


def plot_kk(
    omega: np.ndarray,
    c_kk: np.ndarray,
    c_closed: np.ndarray,
    mask: np.ndarray,
    title: str,
    path: Path,
) -> Path:
    fig, ax = plt.subplots(figsize=(7, 3.6))
    pos = (omega > 0) & mask
    ax.semilogx(omega[pos], c_closed[pos], label="closed form", lw=1.2)
    ax.semilogx(omega[pos], c_kk[pos], label="reconstructed", lw=0.9, ls="--")
    ax.set_xlabel(r"$\omega$ [rad/s]")
    ax.set_ylabel("phase speed [m/s]")
    ax.legend(fontsize=8)
    ax.set_title(title)
    return _finish(fig, path)
