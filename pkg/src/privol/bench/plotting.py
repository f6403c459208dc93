"""Figure style and the two figure kinds the bench renders."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

golden_mean = (math.sqrt(5) - 1.0) / 2.0
fig_width = 4.5
fig_size = (fig_width, fig_width * golden_mean)
colors = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"]

params = {
    "axes.prop_cycle": matplotlib.cycler(color=colors),
    "axes.labelsize": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 8,
    "font.family": "sans-serif",
    "legend.fontsize": 7,
    "legend.frameon": False,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": fig_size,
    "figure.dpi": 150,
    "savefig.bbox": "tight",
    "lines.linewidth": 1.2,
    "lines.markersize": 4,
    "errorbar.capsize": 2,
}


def curve_figure(curves, *, xlabel, ylabel, title=None, logx=True):
    """``curves`` maps a legend label to (xs, ys, errs)."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        for label, (xs, ys, errs) in curves.items():
            ax.errorbar(xs, ys, yerr=errs, marker="o", label=label)
        if logx:
            ax.set_xscale("log", base=2)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if curves:
            ax.legend()
    return fig


def fit_figure(series, *, title=None):
    """Mean mistakes against ln T with the fitted line for each regime.

    ``series`` maps a label to (Ts, means, halfwidths, slope, intercept).
    """
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        for k, (label, (Ts, ys, errs, slope, icpt)) in enumerate(series.items()):
            c = colors[k % len(colors)]
            x = [math.log(t) for t in Ts]
            ax.errorbar(x, ys, yerr=errs, marker="o", linestyle="none", color=c, label=label)
            if slope is not None:
                ax.plot([min(x), max(x)], [icpt + slope * min(x), icpt + slope * max(x)],
                        color=c, linestyle="--", linewidth=0.8)
        ax.set_xlabel("ln T")
        ax.set_ylabel("mean mistakes")
        if title:
            ax.set_title(title)
        ax.legend()
    return fig


def save(fig, path):
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
