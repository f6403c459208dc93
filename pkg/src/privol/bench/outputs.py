"""Write sweep results: per-round CSV, JSON summaries, TSV plot data and figures."""

from __future__ import annotations

import csv
import json
import os
from collections import defaultdict
from pathlib import Path

from ..errors import OutputError
from ..game import write_transcript_csv
from .stats import SUMMARY_FIELDS

PLOT_FIELDS = ("x", "y", "err")


def _open(path, mode="w"):
    try:
        return open(path, mode, newline="")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}", path) from None


def _mkdir(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create {path}: {exc.strerror}", path) from None


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_summary_tsv(path, stats):
    with _open(path) as f:
        w = csv.writer(f, delimiter="\t", lineterminator="\n")
        w.writerow(SUMMARY_FIELDS)
        for s in stats:
            d = s.to_dict()
            w.writerow([_fmt(d[k]) for k in SUMMARY_FIELDS])


def read_summary_tsv(path) -> list[dict]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f, delimiter="\t"))


def write_plot_tsv(path, xs, ys, errs):
    with _open(path) as f:
        w = csv.writer(f, delimiter="\t", lineterminator="\n")
        w.writerow(PLOT_FIELDS)
        for row in zip(xs, ys, errs):
            w.writerow([_fmt(v) for v in row])


def curves_by_d(stats):
    """Group summary rows into mistakes-vs-T curves, one per (learner, adversary, epsilon, d)."""
    groups = defaultdict(list)
    for s in stats:
        groups[(s.learner, s.adversary, s.epsilon, s.d)].append(s)
    curves = {}
    for (lrn, adv, eps, d), rows in groups.items():
        rows.sort(key=lambda s: s.T)
        label = f"{lrn} vs {adv}, eps={eps:g}" + ("" if d is None else f", d={d}")
        curves[label] = ([s.T for s in rows], [s.mean for s in rows], [s.halfwidth for s in rows])
    return curves


def _curve_slug(label):
    return "".join(c if c.isalnum() or c in "-=." else "_" for c in label).strip("_")


def emit_outputs(stats, transcripts, config, out=None, *, games=None, render=True) -> dict:
    """Write all outputs under ``out`` (default ``config.out``); returns the written paths.

    ``transcripts`` maps a file stem to the list of GameResults of one cell.
    """
    out = Path(out if out is not None else (config.out or "."))
    _mkdir(out)
    written = {}
    summary = {"config": config.to_dict() if config is not None else None,
               "summary": [s.to_dict() for s in stats]}
    p = out / "summary.json"
    with _open(p) as f:
        json.dump(summary, f, indent=1, sort_keys=True)
    written["summary_json"] = p
    p = out / "summary.tsv"
    write_summary_tsv(p, stats)
    written["summary_tsv"] = p
    if games is not None:
        p = out / "games.json"
        with _open(p) as f:
            json.dump(games, f, indent=1, sort_keys=True)
        written["games"] = p
    rounds = []
    if transcripts:
        _mkdir(out / "rounds")
        for stem, results in transcripts.items():
            if all(r.transcript is None for r in results):
                continue
            p = out / "rounds" / f"{stem}.csv"
            try:
                write_transcript_csv(p, results)
            except OSError as exc:
                raise OutputError(f"cannot write {p}: {exc.strerror}", p) from None
            rounds.append(p)
    written["rounds"] = rounds
    curves = curves_by_d(stats)
    _mkdir(out / "plots")
    plots = []
    for label, (xs, ys, errs) in curves.items():
        p = out / "plots" / f"{_curve_slug(label)}.tsv"
        write_plot_tsv(p, xs, ys, errs)
        plots.append(p)
    written["plots"] = plots
    if render and curves:
        from . import plotting

        fig = plotting.curve_figure(curves, xlabel="T", ylabel="mean mistakes",
                                    title=getattr(config, "name", None))
        p = out / "plots" / "mistakes_vs_T.png"
        try:
            plotting.save(fig, p)
        except OSError as exc:
            raise OutputError(f"cannot write {p}: {exc.strerror}", p) from None
        written["figure"] = p
    return written


def emit_sweep(result, out=None, render=True) -> dict:
    transcripts = {c.cell.slug: c.games for c in result.cells} if result.config.record_rounds else {}
    return emit_outputs(result.stats, transcripts, result.config, out,
                        games=result.game_rows(), render=render)
