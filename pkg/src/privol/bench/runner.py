"""Grid sweeps with derived per-replication seeds."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from ..game import GameResult, run_game, run_ope_game
from ..noise import NoiseSource, derive_seed
from .config import ExperimentConfig
from .descriptors import EXPERTS, check_pairing, parse_adversary, parse_learner
from .stats import SummaryStats, summarize


@dataclass(frozen=True)
class Cell:
    learner: str
    adversary: str
    epsilon: float
    T: int
    d: int | None

    @property
    def key(self) -> str:
        d = "-" if self.d is None else self.d
        return f"{self.learner}|{self.adversary}|eps={self.epsilon:g}|T={self.T}|d={d}"

    @property
    def slug(self) -> str:
        keep = "".join(c if c.isalnum() or c in "-=." else "_" for c in self.key)
        return keep.replace("|", "_")


@dataclass
class CellResult:
    cell: Cell
    games: list = field(default_factory=list)  # GameResult per replication
    info: list = field(default_factory=list)  # adversary info per replication
    stats: SummaryStats | None = None


@dataclass
class SweepResult:
    config: ExperimentConfig
    cells: list

    @property
    def stats(self) -> list[SummaryStats]:
        return [c.stats for c in self.cells]

    def game_rows(self) -> list[dict]:
        rows = []
        for c in self.cells:
            for rep, (g, info) in enumerate(zip(c.games, c.info)):
                row = g.summary(learner=c.cell.learner, adversary=c.cell.adversary,
                                epsilon=c.cell.epsilon, delta=self.config.delta,
                                d=c.cell.d)
                row.update(rep=rep, **info)
                rows.append(row)
        return rows


def grid(config: ExperimentConfig) -> list[Cell]:
    ds = config.d or [None]
    return [Cell(config.learner, config.adversary, float(config.epsilon), T, d)
            for T, d in product(config.T, ds)]


def rep_seed(master: int, cell: Cell, rep: int) -> int:
    return derive_seed(master, cell.key, rep)


def play(cell: Cell, rep: int, master: int, *, zero_noise=False, record=True):
    """One replication of one cell; returns (GameResult, adversary info)."""
    lspec, aspec = parse_learner(cell.learner), parse_adversary(cell.adversary)
    seed = rep_seed(master, cell, rep)
    lrng = NoiseSource(derive_seed(seed, "learner"), zero_noise=zero_noise)
    arng = NoiseSource(derive_seed(seed, "adversary"))
    d = aspec.dimension(lspec.dimension(cell.d))
    learner = lspec.build(cell.T, d, cell.epsilon, lrng)
    adversary, info = aspec.build(cell.T, d, arng)
    if lspec.kind == EXPERTS:
        res = run_ope_game(learner, adversary, d, cell.T, record=record, seed=seed)
    else:
        res = run_game(learner, adversary, cell.T, record=record, seed=seed)
    return res, info


def _play_job(args):
    cell, rep, master, zero_noise, record = args
    return play(cell, rep, master, zero_noise=zero_noise, record=record)


def run_sweep(config: ExperimentConfig, workers: int | None = None) -> SweepResult:
    """Run every (T, d) cell ``config.replications`` times.

    Seeds depend only on (master seed, cell, replication), so results are
    identical for any worker count and adding cells or replications leaves
    existing ones unchanged.
    """
    lspec, aspec = parse_learner(config.learner), parse_adversary(config.adversary)
    check_pairing(lspec, aspec)
    cells = grid(config)
    for c in cells:
        aspec.dimension(lspec.dimension(c.d))
    jobs = [(c, r, config.seed, config.zero_noise, config.record_rounds)
            for c in cells for r in range(config.replications)]
    workers = config.workers if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outs = list(ex.map(_play_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        outs = [_play_job(j) for j in jobs]
    results = []
    it = iter(outs)
    for c in cells:
        cr = CellResult(c)
        for _ in range(config.replications):
            g, info = next(it)
            cr.games.append(g)
            cr.info.append(info)
        cr.stats = summarize([g.mistake_count for g in cr.games], learner=c.learner,
                             adversary=c.adversary, epsilon=c.epsilon, delta=config.delta,
                             T=c.T, d=c.d, value_range=config.hoeffding_range,
                             confidence=config.confidence)
        results.append(cr)
    return SweepResult(config, results)


__all__ = ["Cell", "CellResult", "GameResult", "SweepResult", "grid", "play", "rep_seed", "run_sweep"]
