"""Extremal counts for binary trees avoiding complete-tree subdivisions.

``extremal_count(l, d)`` is the largest vertex count of a rooted binary
tree with at most l layers containing no subdivision of the complete
binary tree with d+1 layers as a compatible subgraph.  The module carries
the defining recursion, its closed form, an explicit extremal tree
construction, the containment test, and a brute-force oracle that simply
enumerates every slot-labelled tree up to five layers.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Optional

from .graphs import RootedBinaryTree

BRUTE_FORCE_LAYER_LIMIT = 5


@lru_cache(maxsize=None)
def extremal_count(l: int, d: int) -> int:
    """A(l, d) by the recursion with its two base cases."""
    if l < 0 or d < 0:
        raise ValueError("layers and depth must be non-negative")
    if d == 0:
        return 0
    if d >= l:
        return 2 ** l - 1
    return extremal_count(l - 1, d - 1) + extremal_count(l - 1, d) + 1


def extremal_count_closed(l: int, d: int) -> int:
    """The closed form, valid for l > d >= 0; exact integer arithmetic."""
    if not l > d >= 0:
        raise ValueError("closed form requires l > d >= 0")
    total = sum((2 ** i - 1) * comb(l - i - 1, l - d - 1) for i in range(d + 1))
    return total + comb(l, d) - 1


# ---------------------------------------------------------------------------
# explicit construction; shapes are nested pairs, None is the empty tree


def _complete_shape(l: int):
    if l == 0:
        return None
    sub = _complete_shape(l - 1)
    return (sub, sub)


def _extremal_shape(l: int, d: int):
    if d == 0:
        return None
    if d >= l:
        return _complete_shape(l)
    return (_extremal_shape(l - 1, d), _extremal_shape(l - 1, d - 1))


def _shape_to_tree(shape) -> Optional[RootedBinaryTree]:
    # shapes share sub-objects, so traverse positionally rather than by id
    if shape is None:
        return None
    children: list[list[int]] = [[]]
    queue: list[tuple[tuple, int]] = [(shape, 0)]
    head = 0
    while head < len(queue):
        node, my = queue[head]
        head += 1
        for sub in node:
            if sub is not None:
                idx = len(children)
                children[my].append(idx)
                children.append([])
                queue.append((sub, idx))
    return RootedBinaryTree(children, 0)


def extremal_tree(l: int, d: int) -> Optional[RootedBinaryTree]:
    """A tree with extremal_count(l, d) vertices, <= l layers, and no
    subdivision of the (d+1)-layer complete tree; None is the empty tree."""
    if l < 0 or d < 0:
        raise ValueError("layers and depth must be non-negative")
    return _shape_to_tree(_extremal_shape(l, d))


def max_complete_subdivision(tree: Optional[RootedBinaryTree]) -> int:
    """Largest s such that a subdivision of the s-layer complete binary tree
    is a compatible subgraph; 0 for the empty tree.

    Bottom-up: a leaf reaches 1, a chain passes the value through, and a
    branched vertex joins two subtrees reaching a and b (a >= b) into
    a+1 when a == b, else a.
    """
    if tree is None:
        return 0
    value = [0] * tree.n
    for v in tree.postorder():
        kids = tree.children[v]
        if not kids:
            value[v] = 1
        elif len(kids) == 1:
            value[v] = value[kids[0]]
        else:
            a, b = sorted((value[kids[0]], value[kids[1]]), reverse=True)
            value[v] = a + 1 if a == b else a
    return value[tree.root]


# ---------------------------------------------------------------------------
# brute force: enumerate every slot-labelled tree with <= l layers


def _slot_shapes(l: int) -> list:
    shapes: list = [None]
    for _ in range(l):
        shapes = [None] + [(a, b) for a in shapes for b in shapes]
    return shapes


def _shape_features(shapes: list) -> dict[int, tuple[int, int]]:
    # id-keyed memo works because deeper shapes are shared sub-objects
    feats: dict[int, tuple[int, int]] = {id(None): (0, 0)}

    def feat(shape) -> tuple[int, int]:
        key = id(shape)
        got = feats.get(key)
        if got is not None:
            return got
        na, ma = feat(shape[0])
        nb, mb = feat(shape[1])
        hi, lo = (ma, mb) if ma >= mb else (mb, ma)
        out = (na + nb + 1, hi + 1 if hi == lo else hi)
        feats[key] = out
        return out

    for shape in shapes:
        feat(shape)
    return feats


def brute_force_extremal(l: int, d: int, *, force: bool = False) -> int:
    """Oracle for extremal_count: enumerate all slot-labelled trees with at
    most l layers, drop those containing a subdivision of the (d+1)-layer
    complete tree, and return the best vertex count.

    Refuses l > 5 unless forced; the five-layer space already holds 458330
    trees.
    """
    if l < 0 or d < 0:
        raise ValueError("layers and depth must be non-negative")
    if l > BRUTE_FORCE_LAYER_LIMIT and not force:
        raise ValueError(f"refusing l={l}: tree count grows doubly exponentially")
    best = 0
    if l <= 4:
        shapes = _slot_shapes(l)
        feats = _shape_features(shapes)
        for shape in shapes:
            n, m = feats[id(shape)]
            if m <= d and n > best:
                best = n
        return best
    # stream the top level as pairs over the materialised lower level
    lower = _slot_shapes(l - 1)
    feats = _shape_features(lower)
    for a in lower:
        na, ma = feats[id(a)]
        for b in lower:
            nb, mb = feats[id(b)]
            hi, lo = (ma, mb) if ma >= mb else (mb, ma)
            m = hi + 1 if hi == lo else hi
            if m <= d:
                n = na + nb + 1
                if n > best:
                    best = n
    return best


def count_slot_trees(l: int) -> int:
    """Number of slot-labelled trees with at most l layers."""
    t = 1
    for _ in range(l):
        t = 1 + t * t
    return t


# ---------------------------------------------------------------------------


def binary_tree_colour_bound(n: int) -> int:
    """Guaranteed colour count for any binary tree on n vertices: the
    smallest integer b with 2^(b^3) > n, compared in exact integers."""
    if n < 1:
        raise ValueError("n must be at least 1")
    b = 1
    while 2 ** (b ** 3) <= n:
        b += 1
    return b


def build_extremal_table(l_max: int) -> dict[tuple[int, int], tuple[int, str]]:
    """Memoised A(l, d) values tagged with how each cell was derived."""
    table: dict[tuple[int, int], tuple[int, str]] = {}
    for l in range(l_max + 1):
        for d in range(l_max + 1):
            if d == 0 or d >= l:
                tag = "base"
            else:
                tag = "recursion"
            table[(l, d)] = (extremal_count(l, d), tag)
    return table
