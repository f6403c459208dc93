"""Littlestone dimension and shattered trees for finite classes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ParameterError, UnsupportedError
from .hypotheses import FiniteClass


@dataclass(frozen=True)
class TreeNode:
    """Node of a full binary example tree; ``left`` follows label 0."""

    x: int
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def depth(self) -> int:
        return 1 + (self.left.depth if self.left is not None else 0)

    def child(self, label: int) -> "TreeNode | None":
        return self.right if label else self.left


def _masks(cls: FiniteClass) -> tuple[int, list[int]]:
    if cls.domain is None:
        raise UnsupportedError("Littlestone dimension needs a finite domain")
    m = cls.matrix
    ones = []
    for j in range(m.shape[1]):
        mask = 0
        for i in range(m.shape[0]):
            if m[i, j]:
                mask |= 1 << i
        ones.append(mask)
    return (1 << len(cls)) - 1, ones


def littlestone_dimension(cls: FiniteClass) -> int:
    """Exact LD via LD(H) = max_x 1 + min(LD(H_{x,0}), LD(H_{x,1}))."""
    full, ones = _masks(cls)

    @lru_cache(maxsize=None)
    def ld(mask: int) -> int:
        size = bin(mask).count("1")
        if size <= 1:
            return 0
        cap = int(math.floor(math.log2(size)))
        best = 0
        for m1 in ones:
            a = mask & m1
            if a == 0 or a == mask:
                continue
            val = 1 + min(ld(a), ld(mask & ~m1))
            if val > best:
                best = val
                if best == cap:
                    break
        return best

    return ld(full)


def is_shattered(tree: TreeNode | None, cls: FiniteClass) -> bool:
    """Check the definition: every root-to-leaf labeling is realized by some h."""
    if tree is None:
        return len(cls) > 0
    depth = tree.depth
    for labels in itertools.product((0, 1), repeat=depth):
        node, path = tree, []
        for y in labels:
            path.append((node.x, y))
            node = node.child(y)
        if not any(all(h(x) == y for x, y in path) for h in cls):
            return False
    return True


def _trees(depth: int, domain: tuple, used: frozenset) -> Iterator[TreeNode | None]:
    if depth == 0:
        yield None
        return
    for x in domain:
        if x in used:
            continue
        # a point repeated along a path can never be labeled both ways
        subs = list(_trees(depth - 1, domain, used | {x}))
        for left in subs:
            for right in subs:
                yield TreeNode(x, left, right)


def littlestone_dimension_bruteforce(cls: FiniteClass, max_depth: int | None = None) -> int:
    """LD by enumerating explicit trees and checking the shattering definition.

    Exponential; meant as an independent check on tiny domains.
    """
    if cls.domain is None:
        raise UnsupportedError("needs a finite domain")
    limit = min(len(cls.domain), int(math.floor(math.log2(len(cls)))))
    if max_depth is not None:
        limit = min(limit, max_depth)
    best = 0
    for depth in range(1, limit + 1):
        if any(is_shattered(t, cls) for t in _trees(depth, cls.domain, frozenset())):
            best = depth
        else:
            break
    return best


def threshold_shattered_tree(d: int) -> TreeNode:
    """Tree of depth floor(log2(d+1)) shattered by thresholds over [d].

    Built by bisecting the set of cuts still consistent with the path.
    """
    if d < 1:
        raise ParameterError("d must be >= 1")
    depth = int(math.floor(math.log2(d + 1)))

    def build(lo: int, hi: int, k: int) -> TreeNode | None:
        if k == 0:
            return None
        n = hi - lo + 1
        x = lo + n // 2
        # label 0 at x keeps cuts [x, hi]; label 1 keeps [lo, x - 1]
        return TreeNode(x, build(x, hi, k - 1), build(lo, x - 1, k - 1))

    return build(0, d, depth)
