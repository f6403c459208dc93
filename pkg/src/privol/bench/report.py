"""Bounded vs unbounded mistake growth across regimes."""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from dataclasses import asdict, dataclass
from pathlib import Path

from ..errors import ConfigurationError
from .config import ExperimentConfig
from .outputs import _curve_slug, _mkdir, _open, emit_sweep, write_plot_tsv
from .runner import run_sweep
from .stats import fit_log_slope, hoeffding_halfwidth, slope_lower_bound

REPORT_FIELDS = ("regime", "learner", "adversary", "epsilon", "d", "points",
                 "slope", "intercept", "r_squared", "slope_lower", "growth")


@dataclass
class SeparationConfig:
    experiments: list
    cutoff: float = 0.0
    confidence: float = 0.95
    out: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "SeparationConfig":
        if not isinstance(d, dict) or "experiments" not in d:
            raise ConfigurationError("separation config needs an 'experiments' list")
        extra = set(d) - {"experiments", "cutoff", "confidence", "out"}
        if extra:
            raise ConfigurationError(f"unknown separation config fields: {', '.join(sorted(extra))}")
        exps = [e if isinstance(e, ExperimentConfig) else ExperimentConfig.from_dict(e)
                for e in d["experiments"]]
        if not exps:
            raise ConfigurationError("separation config has no experiments")
        for e in exps:
            if len(set(e.T)) < 3:
                raise ConfigurationError(f"experiment {e.name!r} needs >= 3 distinct T values")
        return cls(exps, float(d.get("cutoff", 0.0)), float(d.get("confidence", 0.95)), d.get("out"))

    def to_dict(self):
        return {"experiments": [e.to_dict() for e in self.experiments], "cutoff": self.cutoff,
                "confidence": self.confidence, "out": self.out}


def load_separation_config(path) -> SeparationConfig:
    try:
        with open(path) as f:
            return SeparationConfig.from_dict(json.load(f))
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config is not valid JSON: {exc}") from None


@dataclass
class RegimeRow:
    regime: str
    learner: str
    adversary: str
    epsilon: float
    d: int | None
    points: int
    slope: float
    intercept: float
    r_squared: float
    slope_lower: float
    growth: str


def classify(stats, regime: str, cutoff: float = 0.0, confidence: float = 0.95):
    """Fit mean vs ln T per d and mark growth "unbounded" when the slope's lower bound beats ``cutoff``.

    Each mean gets a Hoeffding half-width at a per-point confidence split over
    the K points (union bound), using the summary's own range.
    """
    groups = defaultdict(list)
    for s in stats:
        groups[(s.learner, s.adversary, s.epsilon, s.d)].append(s)
    rows = []
    for (lrn, adv, eps, d), ss in groups.items():
        ss.sort(key=lambda s: s.T)
        fit = fit_log_slope([(s.T, s.mean) for s in ss])
        per = 1 - (1 - confidence) / len(ss)
        hws = [hoeffding_halfwidth(s.n, s.range, per) if s.range > 0 else 0.0 for s in ss]
        lb = slope_lower_bound(fit, hws)
        rows.append(RegimeRow(regime, lrn, adv, eps, d, len(ss), fit.slope, fit.intercept,
                              fit.r_squared, lb, "unbounded" if lb > cutoff else "bounded"))
    return rows


def render_matrix(rows) -> str:
    head = ["regime", "d", "slope", "r^2", "slope lower", "growth"]
    body = [[r.regime, "-" if r.d is None else str(r.d), f"{r.slope:.3f}", f"{r.r_squared:.3f}",
             f"{r.slope_lower:.3f}", r.growth] for r in rows]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(head), line(["-" * w for w in widths])]
    out += [line(b) for b in body]
    return "\n".join(out) + "\n"


def separation_report(cfg: SeparationConfig, out=None, render=True, workers=None):
    """Run every experiment, classify growth, and write report.txt / report.tsv / figure."""
    out = Path(out or cfg.out or "separation")
    _mkdir(out)
    rows, series = [], {}
    for k, exp in enumerate(cfg.experiments):
        res = run_sweep(exp, workers=workers)
        emit_sweep(res, out / f"exp{k}", render=render)
        regime_rows = classify(res.stats, exp.name, cfg.cutoff, cfg.confidence)
        rows += regime_rows
        for r in regime_rows:
            ss = sorted((s for s in res.stats if s.d == r.d), key=lambda s: s.T)
            label = r.regime + ("" if r.d is None else f", d={r.d}")
            series[label] = ([s.T for s in ss], [s.mean for s in ss], [s.halfwidth for s in ss],
                             r.slope, r.intercept)
    text = render_matrix(rows)
    with _open(out / "report.txt") as f:
        f.write(text)
    with _open(out / "report.tsv") as f:
        w = csv.writer(f, delimiter="\t", lineterminator="\n")
        w.writerow(REPORT_FIELDS)
        for r in rows:
            d = asdict(r)
            w.writerow(["" if d[k] is None else d[k] for k in REPORT_FIELDS])
    for label, (Ts, ys, errs, _, _) in series.items():
        write_plot_tsv(out / f"fit_{_curve_slug(label)}.tsv", Ts, ys, errs)
    if render and series:
        from . import plotting

        plotting.save(plotting.fit_figure(series, title="mistake growth"), out / "separation.png")
    return rows, text
