"""Figures written next to the CLI reports.

Figures are built with :class:`matplotlib.figure.Figure` directly, so nothing
here touches pyplot's global state or needs a display.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from fuzzalloc.capm import MarketParams, cml_return
from fuzzalloc.control import Trajectory
from fuzzalloc.fuzzy import FuzzySubset

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
STYLE = {"linewidth": 1.5}


def new_figure(width: float = 6.0, height: float | None = None, nrows: int = 1):
    height = height or width * GOLDEN * (1.0 if nrows == 1 else 1.4)
    fig = Figure(figsize=(width, height), dpi=100)
    FigureCanvasAgg(fig)
    axes = fig.subplots(nrows=nrows, ncols=1, sharex=True, squeeze=False)[:, 0]
    return fig, axes


def save(fig: Figure, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed metadata keeps repeated runs byte-identical for PNG
    metadata = {"Software": None} if path.suffix.lower() == ".png" else None
    fig.savefig(path, bbox_inches="tight", metadata=metadata)
    return path


def plot_trajectory(integrated: Trajectory, analytic: Trajectory, path) -> Path:
    """Allocation path (top) and absolute integrator error (bottom)."""
    fig, (ax, ax_err) = new_figure(nrows=2)
    ax.plot(integrated.t, integrated.x, label="x (market)", **STYLE)
    ax.plot(integrated.t, integrated.y, label="y (risk-free)", **STYLE)
    ax.plot(analytic.t, analytic.x, "k--", linewidth=0.8, label="x closed form")
    ax.axhline(0.0, color="0.6", linewidth=0.6)
    ax.set_ylabel("fraction of funds")
    ax.legend(frameon=False, fontsize="small")

    err = np.abs(integrated.x - analytic.x)
    ax_err.plot(integrated.t, err, color="C3", **STYLE)
    if np.any(err > 0):
        ax_err.set_yscale("symlog", linthresh=1e-16)
    ax_err.set_xlabel("t")
    ax_err.set_ylabel("|x - x closed form|")
    return save(fig, path)


def plot_membership(f: FuzzySubset, path, title: str | None = None) -> Path:
    """Membership degrees as bars, with the fully ambiguous level 0.5 marked."""
    fig, (ax,) = new_figure()
    pos = np.arange(len(f))
    ax.bar(pos, f.degrees, color="C0", width=0.6)
    ax.axhline(0.5, color="0.4", linestyle=":", linewidth=1.0)
    ax.set_xticks(pos, f.labels)
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel("membership degree")
    if title:
        ax.set_title(title, fontsize="medium")
    return save(fig, path)


def plot_cml(market: MarketParams, portfolio_stdev: float, expected_return: float, path, label: str = "") -> Path:
    """Capital Market Line with the market portfolio and the investor's optimum."""
    fig, (ax,) = new_figure()
    s_max = max(1.5 * market.market_stdev, 1.2 * portfolio_stdev)
    s = np.linspace(0.0, s_max, 200)
    ax.plot(s, [cml_return(v, market) for v in s], color="C0", label="CML", **STYLE)
    ax.plot([market.market_stdev], [market.expected_market_return], "s", color="k", label="market")
    ax.plot([portfolio_stdev], [expected_return], "o", color="C3", label=label or "optimum")
    ax.set_xlabel("portfolio standard deviation")
    ax.set_ylabel("expected return")
    ax.legend(frameon=False, fontsize="small")
    return save(fig, path)
