"""Safflower certificates: the lower-bound machinery for coloured binary trees.

A nicely coloured tree has its root, leaves, and branched vertices all in
one colour; a safflower strings disjoint nicely coloured trees along a
root-to-leaf stem.  ``build_main_safflower`` extracts the canonical
safflower of a properly coloured rooted binary tree, and on subdivisions
of complete binary trees ``subdivision_certificate`` packages the counting
argument that forces many colours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Graph, RootedBinaryTree, main_vertices
from .parity import Colouring, find_parity_path_tree, parity_vector


def _require_valid(tree: RootedBinaryTree, colouring: Colouring) -> None:
    if colouring.n != tree.n:
        raise ValueError("colouring domain does not match the tree")
    if find_parity_path_tree(tree.to_graph(), colouring) is not None:
        raise ValueError("colouring is not a parity vertex colouring")


def is_nicely_coloured(tree: RootedBinaryTree, colouring: Colouring):
    """The nice colour shared by root, leaves, and branched vertices, or None.

    The structural test runs first; a tree that does pass it must also carry
    a valid parity vertex colouring, otherwise the input is rejected.
    """
    if colouring.n != tree.n:
        raise ValueError("colouring domain does not match the tree")
    c = colouring.colours[tree.root]
    for v in range(tree.n):
        if v == tree.root or tree.is_leaf(v) or tree.is_branched(v):
            if colouring.colours[v] != c:
                return None
    _require_valid(tree, colouring)
    return c


class NiceSubtreeTable:
    """Per vertex and colour: the best nicely coloured compatible subtree.

    ``g(v, c)`` is the maximum number of c-coloured vertices over nicely
    coloured compatible subtrees of the subtree rooted at v.  The table is
    built bottom-up: a c-coloured vertex w roots a candidate that joins the
    best candidates found anywhere below each of its children, so whenever
    colour(v) = c with children s, t the identity
    g(T_v) = g(T_s) + g(T_t) + 1 holds by construction.
    """

    def __init__(self, tree: RootedBinaryTree, colouring: Colouring, *, validate: bool = True):
        if validate:
            _require_valid(tree, colouring)
        self.tree = tree
        self.colouring = colouring
        best: list[dict[int, tuple[int, int]]] = [dict() for _ in range(tree.n)]
        chosen: list[tuple] = [()] * tree.n
        for v in tree.postorder():
            merged: dict[int, tuple[int, int]] = {}
            for ch in tree.children[v]:
                for colour, entry in best[ch].items():
                    cur = merged.get(colour)
                    if cur is None or entry[0] > cur[0] or (entry[0] == cur[0] and entry[1] < cur[1]):
                        merged[colour] = entry
            c = colouring.colours[v]
            args = []
            f = 1
            for ch in tree.children[v]:
                entry = best[ch].get(c)
                if entry is None:
                    args.append(None)
                else:
                    f += entry[0]
                    args.append(entry[1])
            chosen[v] = tuple(args)
            merged[c] = (f, v)  # strictly beats any descendant candidate
            best[v] = merged
        self._best = best
        self._chosen = chosen

    def g(self, v: int, colour: int) -> int:
        entry = self._best[v].get(colour)
        return entry[0] if entry else 0

    def maximiser(self, v: int, colour: int):
        """Root of one maximal nicely coloured subtree below v, or None."""
        entry = self._best[v].get(colour)
        return entry[1] if entry else None

    def subtree_for(self, v: int, colour: int):
        """Reconstruct a maximiser: (root, vertex set, nice vertex set)."""
        top = self.maximiser(v, colour)
        if top is None:
            return None
        vertices: set[int] = set()
        nice: set[int] = set()
        stack = [top]
        while stack:
            u = stack.pop()
            vertices.add(u)
            nice.add(u)
            for ch, arg in zip(self.tree.children[u], self._chosen[u]):
                if arg is None:
                    continue
                walk = arg
                while walk != u:  # connecting path, exclusive of u
                    vertices.add(walk)
                    walk = self.tree.parent[walk]
                stack.append(arg)
        return top, frozenset(vertices), frozenset(nice)


@dataclass(frozen=True)
class SafflowerTree:
    """One original tree of a safflower, embedded in the host."""

    root: int
    vertices: frozenset[int]
    nice: frozenset[int]
    colour: int


@dataclass(frozen=True)
class Safflower:
    """Stem vertices (each roots an original tree) plus the trees themselves."""

    stem: tuple[int, ...]
    trees: tuple[SafflowerTree, ...]

    @property
    def num_nice(self) -> int:
        return sum(len(t.nice) for t in self.trees)

    @property
    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for t in self.trees:
            out |= t.vertices
        return frozenset(out)

    def stem_colour_counts(self, colouring: Colouring) -> dict[int, int]:
        counts: dict[int, int] = {}
        for v in self.stem:
            c = colouring.colours[v]
            counts[c] = counts.get(c, 0) + 1
        return counts


def build_main_safflower(tree: RootedBinaryTree, colouring: Colouring) -> Safflower:
    """Extract the canonical safflower of a properly coloured binary tree.

    Walking down from the root: a leaf contributes itself; a vertex with one
    child contributes itself and the stem continues below; at a branched
    vertex the child with the larger best count for the vertex's colour is
    absorbed into the vertex's original tree (ties broken towards the
    smaller id) and the stem continues into the other child.
    """
    _require_valid(tree, colouring)
    table = NiceSubtreeTable(tree, colouring, validate=False)
    stem: list[int] = []
    trees: list[SafflowerTree] = []
    v = tree.root
    while True:
        stem.append(v)
        c = colouring.colours[v]
        kids = tree.children[v]
        if len(kids) == 0:
            trees.append(SafflowerTree(v, frozenset([v]), frozenset([v]), c))
            break
        if len(kids) == 1:
            trees.append(SafflowerTree(v, frozenset([v]), frozenset([v]), c))
            v = kids[0]
            continue
        a, b = kids
        ga, gb = table.g(a, c), table.g(b, c)
        if ga > gb:
            s, t = a, b
        elif gb > ga:
            s, t = b, a
        else:
            s, t = (a, b) if a < b else (b, a)
        sub = table.subtree_for(s, c)
        if sub is None:
            trees.append(SafflowerTree(v, frozenset([v]), frozenset([v]), c))
        else:
            top, verts, nice = sub
            members = set(verts) | {v}
            walk = top
            while walk != v:  # connecting path from the subtree root up to v
                members.add(walk)
                walk = tree.parent[walk]
            trees.append(SafflowerTree(v, frozenset(members), frozenset(nice | {v}), c))
        v = t
    return Safflower(tuple(stem), tuple(trees))


def verify_safflower(tree: RootedBinaryTree, colouring: Colouring, saff: Safflower) -> bool:
    """Check a safflower certificate against its coloured host tree.

    Verifies that each original tree is nicely coloured, that the vectors of
    the root-to-nice-vertex paths are pairwise distinct and nonzero, and
    that the nice-vertex total respects the 2^k - 1 ceiling.  Malformed
    shapes (misaligned roots, overlapping trees, broken stem) raise.
    """
    if colouring.n != tree.n:
        raise ValueError("colouring domain does not match the tree")
    if not saff.stem or len(saff.stem) != len(saff.trees):
        raise ValueError("stem and original trees misaligned")
    seen: set[int] = set()
    for v, t in zip(saff.stem, saff.trees):
        if t.root != v:
            raise ValueError("original tree roots must follow the stem")
        if not t.vertices or not t.vertices <= set(range(tree.n)):
            raise ValueError("original tree vertices outside the host")
        if t.vertices & seen:
            raise ValueError("original trees overlap")
        seen |= t.vertices
        if not t.nice <= t.vertices or t.root not in t.vertices:
            raise ValueError("malformed original tree")
    for a, b in zip(saff.stem, saff.stem[1:]):
        if tree.parent[b] != a:
            raise ValueError("stem is not a downward path in the host")

    root = saff.stem[0]
    for t in saff.trees:
        if not _is_nice_embedded(tree, colouring, t):
            return False
    # the induced colouring of the safflower subgraph must itself be valid
    members = sorted(seen)
    index = {u: i for i, u in enumerate(members)}
    edges = [
        (index[tree.parent[u]], index[u])
        for u in members
        if tree.parent[u] is not None and tree.parent[u] in index
    ]
    sub = Graph(len(members), edges)
    if not sub.is_tree():
        raise ValueError("safflower vertices do not induce a subtree")
    induced = Colouring(colouring.k, tuple(colouring.colours[u] for u in members))
    if find_parity_path_tree(sub, induced) is not None:
        return False

    vectors = set()
    for t in saff.trees:
        for e in sorted(t.nice):
            path = tree.tree_path(root, e)
            if not set(path) <= seen:
                raise ValueError("root-to-nice-vertex path leaves the safflower")
            vec = parity_vector(colouring, path)
            if vec.is_zero or vec.word in vectors:
                return False
            vectors.add(vec.word)
    return saff.num_nice <= 2 ** colouring.k - 1


def _is_nice_embedded(tree: RootedBinaryTree, colouring: Colouring, t: SafflowerTree) -> bool:
    members = t.vertices
    if colouring.colours[t.root] != t.colour:
        return False
    if t.nice != frozenset(v for v in members if colouring.colours[v] == t.colour):
        return False
    # connectivity and compatibility: the root is the unique top vertex
    for v in members:
        if v == t.root:
            continue
        p = tree.parent[v]
        if p is None or p not in members:
            return False
    for v in members:
        kids = [c for c in tree.children[v] if c in members]
        branched_or_leaf = len(kids) in (0, 2)
        if (v == t.root or branched_or_leaf) and colouring.colours[v] != t.colour:
            return False
    return True


# ---------------------------------------------------------------------------
# the counting bound for subdivisions of complete binary trees


def subdivision_colour_bound(depth: int) -> float:
    """Lower bound on the colours of any valid colouring of a subdivision
    of the complete binary tree with ``depth`` layers."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    root = math.sqrt(depth)
    return max(root, root + 0.25 * math.log2(depth) - 0.5)


def partitions_into_at_most(n: int, parts: int):
    """Non-increasing partitions of n into at most ``parts`` positive parts."""

    def rec(remaining: int, cap: int, slots: int, acc: list[int]):
        if remaining == 0:
            yield tuple(acc)
            return
        if slots == 0:
            return
        for first in range(min(cap, remaining), 0, -1):
            acc.append(first)
            yield from rec(remaining - first, first, slots - 1, acc)
            acc.pop()

    yield from rec(n, n, parts, [])


def partition_bound_holds(n: int, k: int, parts) -> bool:
    """The counting implication behind the bound, checkable per partition.

    Given a_1..a_k >= 0 summing to n: if sum(2^a_i - 1) fits under 2^k - 1
    then k must already exceed the subdivision colour bound for n.
    """
    parts = tuple(parts)
    if any(a < 0 for a in parts):
        raise ValueError("partition parts must be non-negative")
    if sum(parts) != n:
        raise ValueError("partition must sum to n")
    premise = sum(2 ** a - 1 for a in parts) <= 2 ** k - 1
    return (not premise) or k >= subdivision_colour_bound(n)


@dataclass(frozen=True)
class SubdivisionCertificate:
    """Machine-checkable record of the stem-counting argument."""

    d: int
    k: int
    a: tuple[int, ...]
    num_nice: int
    bound: float
    stem: tuple[int, ...]
    nice_vertices: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "d": self.d,
            "k": self.k,
            "a": list(self.a),
            "num_nice": self.num_nice,
            "bound": self.bound,
            "stem": [v + 1 for v in self.stem],
            "nice_vertices": [[v + 1 for v in group] for group in self.nice_vertices],
        }


def contracted_main_children(tree: RootedBinaryTree) -> dict[int, tuple[int, ...]]:
    """Children map of the tree obtained by contracting subdivision chains."""
    mains = main_vertices(tree)
    out: dict[int, tuple[int, ...]] = {}
    for v in sorted(mains):
        kids = []
        for c in tree.children[v]:
            w = c
            while w not in mains:
                (w,) = tree.children[w]
            kids.append(w)
        out[v] = tuple(kids)
    return out


def _subdivision_depth(tree: RootedBinaryTree) -> int:
    mains = main_vertices(tree)
    count = len(mains)
    d = (count + 1).bit_length() - 1
    if 2 ** d - 1 != count or tree.root not in mains:
        raise ValueError("main vertices do not form a complete binary tree")
    contracted = contracted_main_children(tree)
    level = {tree.root: 0}
    for v in tree.bfs_order():
        if v not in mains:
            if len(tree.children[v]) != 1:
                raise ValueError("non-main vertex off a subdivision chain")
            continue
        kids = contracted[v]
        if len(kids) not in (0, 2):
            raise ValueError("main vertex with one contracted child")
        if not kids and level[v] != d - 1:
            raise ValueError("main leaves not all at the bottom layer")
        for w in kids:
            level[w] = level[v] + 1
    return d


def subdivision_certificate(tree: RootedBinaryTree, colouring: Colouring) -> SubdivisionCertificate:
    """Extract the safflower of a coloured subdivision and package the counts.

    The stem passes through exactly d main vertices; grouping them by colour
    gives the partition a with sum d, and the nice-vertex total of the
    safflower must reach sum(2^a_i - 1) while staying under 2^k - 1.
    Breaches of those guarantees indicate a bug and raise RuntimeError.
    """
    d = _subdivision_depth(tree)
    mains = main_vertices(tree)
    saff = build_main_safflower(tree, colouring)
    stem_mains = [v for v in saff.stem if v in mains]
    if len(stem_mains) != d:
        raise RuntimeError(f"stem visits {len(stem_mains)} main vertices, expected {d}")
    counts = [0] * colouring.k
    for v in stem_mains:
        counts[colouring.colours[v] - 1] += 1
    a = tuple(counts)
    num = saff.num_nice
    if sum(a) != d:
        raise RuntimeError("stem colour counts do not sum to the depth")
    if num < sum(2 ** x - 1 for x in a):
        raise RuntimeError("nice-vertex count below the guaranteed minimum")
    if num > 2 ** colouring.k - 1:
        raise RuntimeError("nice-vertex count above the 2^k - 1 ceiling")
    bound = subdivision_colour_bound(d)
    if bound > colouring.k:
        raise RuntimeError("colour bound exceeds the colours actually used")
    return SubdivisionCertificate(
        d=d,
        k=colouring.k,
        a=a,
        num_nice=num,
        bound=bound,
        stem=saff.stem,
        nice_vertices=tuple(tuple(sorted(t.nice)) for t in saff.trees),
    )
