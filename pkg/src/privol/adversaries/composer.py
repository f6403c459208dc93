"""Chain packing constructions down a shattered tree into one long stream."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from ..errors import ConstructionFailed, ParameterError, UnsupportedError
from ..hypotheses import FiniteClass, LabeledExample, find_non_complementary_pair
from ..littlestone import TreeNode, is_shattered
from .packing import MonteCarloOracle, PackingOutput, build_packing_streams, wlog_filter


@dataclass
class Segment:
    start: int  # 1-based first round of the segment in the full stream
    length: int
    u0: int
    u1: int
    label: int  # label revealed at u1 (or the reference label if nothing was inserted)
    packing: PackingOutput
    chosen: int  # 1-based index of the stream used from the packing output


@dataclass
class ComposedStream:
    stream: list
    segments: list = field(default_factory=list)

    @property
    def insertions(self) -> int:
        return sum(len(s.packing.insertions(s.chosen)) for s in self.segments)


def _pick(out: PackingOutput) -> int:
    if out.kind == "witness":
        return out.witness_index
    counts = [len(out.insertions(i)) for i in range(1, out.m + 1)]
    return counts.index(max(counts)) + 1


def _segment(oracle, alive, T, k, u0, u1, prefix):
    f1 = next((h for h in alive if h(u0) == 0 and h(u1) == 0), None)
    f2 = next((h for h in alive if h(u0) == 0 and h(u1) == 1), None)
    if f1 is None or f2 is None:
        raise UnsupportedError(f"tree is not shattered at ({u0}, {u1})")
    f1, f2, kept, swapped = wlog_filter(oracle, T, f1, f2, u0, u1, prefix)
    try:
        out = build_packing_streams(oracle, T, k, f1, f2, u0, u1, prefix=prefix,
                                    kept_rounds=kept, swapped=swapped)
    except ConstructionFailed as exc:
        out = exc.partial
        if out is None or not out.streams:
            raise
    return out


def compose_ld_sequences(cls: FiniteClass, tree: TreeNode | None, T: int, *, oracle=None,
                         learner_factory=None, epsilon: float = 1.0, k: int | None = None,
                         runs: int = 200, seed: int = 0, horizon_exponent: float = 1.0) -> ComposedStream:
    """Concatenate one packing stream per pair of tree levels.

    The tree is consumed two levels at a time: (u0, u1) with u1 below u0 on
    label 0. After each segment the class is cut down to the hypotheses
    consistent with what was revealed and the walk continues from u1 along
    the label it was shown. Trees of depth < 2 fall back to a single segment
    on a non-complementary pair of the class.

    Give either an ``oracle`` or a ``learner_factory`` (Monte Carlo with
    ``runs`` learners). The last segment absorbs the remainder of T.
    ``k`` defaults to ceil(ln T' / epsilon). A warning is raised, not an
    error, when T <= depth^(1 + horizon_exponent).
    """
    if oracle is None:
        if learner_factory is None:
            raise ParameterError("need an oracle or a learner factory")
        oracle = MonteCarloOracle(learner_factory, runs=runs, seed=seed)
    depth = tree.depth if tree is not None else 0
    if tree is not None and not is_shattered(tree, cls):
        raise UnsupportedError("tree is not shattered by the class")
    alive = list(cls)
    pairs = []
    if depth < 2:
        found = find_non_complementary_pair(cls)
        if found is None:
            raise UnsupportedError("class has no distinguishing tuple")
        f1, f2, u0, u1 = found
        pairs.append((u0, u1, (f1, f2)))
        n_seg = 1
    else:
        n_seg = depth // 2
    if depth >= 2 and T <= depth ** (1 + horizon_exponent):
        warnings.warn(f"T={T} is short for tree depth {depth}; the lower bound needs "
                      f"T > depth^(1+c) (checked at c={horizon_exponent:g})", stacklevel=2)
    seg_len = T // n_seg
    if seg_len < 2:
        raise ParameterError(f"T={T} too short for {n_seg} segments")
    if k is None:
        k = max(1, math.ceil(math.log(seg_len) / epsilon))
    k = min(k, seg_len - 1)

    stream: list = []
    segments = []
    node = tree
    for s in range(n_seg):
        length = seg_len if s < n_seg - 1 else T - seg_len * (n_seg - 1)
        prefix = tuple(stream)
        if pairs:
            u0, u1, (f1, f2) = pairs[0]
            f1, f2, kept, swapped = wlog_filter(oracle, length, f1, f2, u0, u1, prefix)
            out = build_packing_streams(oracle, length, k, f1, f2, u0, u1, prefix=prefix,
                                        kept_rounds=kept, swapped=swapped)
        else:
            u0, u1 = node.x, node.left.x
            out = _segment(oracle, alive, length, k, u0, u1, prefix)
        chosen = _pick(out)
        seg_stream = [LabeledExample(*ex) for ex in out.streams[chosen - 1]]
        inserted = bool(out.insertions(chosen))
        b = out.insert[1] if inserted else out.ref_label
        revealed = set(seg_stream)
        alive = [h for h in alive if all(h(x) == y for x, y in revealed)]
        segments.append(Segment(len(stream) + 1, length, u0, u1, b, out, chosen))
        stream.extend(seg_stream)
        if not pairs:
            nxt = node.left.child(b)
            node = nxt
            if node is None or node.left is None:
                # ran out of tree; any remaining segments would have no fresh pair
                if s < n_seg - 1:
                    raise UnsupportedError("tree too shallow for the requested segments")
    return ComposedStream(stream, segments)
