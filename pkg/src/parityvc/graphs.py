"""Graphs, rooted binary trees, generators, and small tree utilities.

Vertices are always the integers ``0..n-1``.  Generators assign ids in BFS
order from the root, so identical inputs (including seeds) always produce
identical labelings.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Mapping, Optional


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "edges", "adj", "_eset")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise ValueError(f"parallel edge {e}")
            norm.add(e)
        self.n = n
        self.edges = tuple(sorted(norm))
        self._eset = frozenset(norm)
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._eset

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    queue.append(w)
        return count == self.n

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``vertices``; returns it with the old-id map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(keep), edges), tuple(keep)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class RootedBinaryTree:
    """Rooted tree in which every vertex has at most two ordered children.

    ``main`` optionally marks pre-subdivision vertices: :func:`subdivide`
    fills it in and :func:`main_vertices` reads it back.
    """

    __slots__ = ("n", "root", "children", "parent", "depth", "main")

    def __init__(
        self,
        children: Iterable[Iterable[int]],
        root: int,
        main: Optional[frozenset[int]] = None,
    ):
        children = tuple(tuple(c) for c in children)
        n = len(children)
        if n == 0:
            raise ValueError("tree must have at least one vertex")
        if not 0 <= root < n:
            raise ValueError("root out of range")
        parent: list[Optional[int]] = [None] * n
        for v, kids in enumerate(children):
            if len(kids) > 2:
                raise ValueError(f"vertex {v} has more than two children")
            for c in kids:
                if not 0 <= c < n:
                    raise ValueError(f"child {c} out of range")
                if parent[c] is not None or c == root:
                    raise ValueError(f"vertex {c} has more than one parent")
                parent[c] = v
        depth = [-1] * n
        depth[root] = 0
        queue = deque([root])
        count = 1
        while queue:
            u = queue.popleft()
            for c in children[u]:
                depth[c] = depth[u] + 1
                count += 1
                queue.append(c)
        if count != n:
            raise ValueError("tree is not connected from the root")
        self.n = n
        self.root = root
        self.children = children
        self.parent = tuple(parent)
        self.depth = tuple(depth)
        self.main = main

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def is_branched(self, v: int) -> bool:
        return len(self.children[v]) == 2

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.children[v])

    @property
    def num_layers(self) -> int:
        return max(self.depth) + 1

    def bfs_order(self) -> tuple[int, ...]:
        order = []
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            order.append(u)
            queue.extend(self.children[u])
        return tuple(order)

    def postorder(self) -> tuple[int, ...]:
        # iterative: children pushed after their parent, then reversed
        out = []
        stack = [self.root]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children[u])
        out.reverse()
        return tuple(out)

    def subtree_vertices(self, v: int) -> tuple[int, ...]:
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children[u])
        return tuple(out)

    def tree_path(self, u: int, v: int) -> tuple[int, ...]:
        """Vertices of the unique path, in order from ``u`` to ``v``."""
        up, down = [], []
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            up.append(a)
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            down.append(b)
            b = self.parent[b]
        while a != b:
            up.append(a)
            down.append(b)
            a = self.parent[a]
            b = self.parent[b]
        return tuple(up + [a] + down[::-1])

    def to_graph(self) -> Graph:
        edges = [(v, c) for v in range(self.n) for c in self.children[v]]
        return Graph(self.n, edges)

    def __eq__(self, other):
        return (
            isinstance(other, RootedBinaryTree)
            and self.root == other.root
            and self.children == other.children
            and self.main == other.main
        )

    def __hash__(self):
        return hash((self.root, self.children, self.main))

    def __repr__(self):
        return f"RootedBinaryTree(n={self.n}, root={self.root}, layers={self.num_layers})"


# ---------------------------------------------------------------------------
# generators


def make_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def make_complete_binary_tree(layers: int) -> RootedBinaryTree:
    """Complete binary tree with the given number of layers, heap-labelled."""
    if layers < 1:
        raise ValueError("need at least one layer")
    n = 2 ** layers - 1
    children = []
    for v in range(n):
        kids = [c for c in (2 * v + 1, 2 * v + 2) if c < n]
        children.append(kids)
    return RootedBinaryTree(children, root=0)


def make_twin_binary_tree(layers: int = 3) -> Graph:
    """Two complete binary trees with their roots joined by an edge.

    The first copy keeps heap ids 0..2^layers-2, the second copy is offset
    by the copy size; the joining edge is (0, offset).
    """
    half = make_complete_binary_tree(layers)
    size = half.n
    edges = [(v, c) for v in range(size) for c in half.children[v]]
    edges += [(u + size, v + size) for u, v in edges[: size - 1]]
    edges.append((0, size))
    return Graph(2 * size, edges)


def make_twin_binary_tree_rooted(layers: int = 3) -> RootedBinaryTree:
    """Rooted view of the twin tree.

    The joined roots have three neighbours each, so a binary rooting is only
    possible from a leaf; we root at the first leaf of the first copy.
    """
    g = make_twin_binary_tree(layers)
    root = 0 if layers == 1 else 2 ** (layers - 1) - 1
    return tree_from_graph(g, root)


def tree_from_graph(g: Graph, root: int, main: Optional[frozenset[int]] = None) -> RootedBinaryTree:
    """Root an undirected tree at ``root``; children ordered by ascending id."""
    if not g.is_tree():
        raise ValueError("input graph is not a tree")
    children: list[list[int]] = [[] for _ in range(g.n)]
    seen = [False] * g.n
    seen[root] = True
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                children[u].append(w)
                queue.append(w)
    return RootedBinaryTree(children, root, main=main)


def subdivide(
    tree: RootedBinaryTree,
    lengths: Optional[Mapping[tuple[int, int], int]] = None,
    *,
    seed: Optional[int] = None,
    max_length: int = 4,
) -> RootedBinaryTree:
    """Replace each edge by a path; a length of 1 keeps the edge as is.

    ``lengths`` maps each (parent, child) edge to the edge count of its
    replacement path.  When absent, lengths are drawn uniformly from
    [1, max_length] with the given seed, iterating edges in BFS order.
    The result is relabelled in BFS order and the images of the original
    vertices are recorded as main vertices.
    """
    edge_order = [(v, c) for v in tree.bfs_order() for c in tree.children[v]]
    if lengths is None:
        rng = random.Random(seed)
        lengths = {e: rng.randint(1, max_length) for e in edge_order}
    else:
        if set(lengths) != set(edge_order):
            raise ValueError("lengths must cover exactly the tree edges")
    for e in edge_order:
        if lengths[e] < 1:
            raise ValueError(f"replacement length for edge {e} must be >= 1")

    children: dict[int, list[int]] = {v: [] for v in range(tree.n)}
    next_id = tree.n
    for v, c in edge_order:
        prev = v
        for _ in range(lengths[(v, c)] - 1):
            children[next_id] = []
            children[prev].append(next_id)
            prev = next_id
            next_id += 1
        children[prev].append(c)

    relabel: dict[int, int] = {}
    order = deque([tree.root])
    new_children: list[list[int]] = []
    while order:
        u = order.popleft()
        relabel[u] = len(relabel)
        new_children.append([])
        order.extend(children[u])
    for u, kids in children.items():
        new_children[relabel[u]] = [relabel[c] for c in kids]
    main = frozenset(relabel[v] for v in range(tree.n))
    return RootedBinaryTree(new_children, root=relabel[tree.root], main=main)


def main_vertices(tree: RootedBinaryTree) -> frozenset[int]:
    if tree.main is None:
        raise ValueError("tree carries no main-vertex marks; produce it with subdivide()")
    return tree.main


# ---------------------------------------------------------------------------
# tree utilities


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Contract edge (u, v); the merged vertex keeps the smaller id."""
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    a, b = (u, v) if u < v else (v, u)

    def newid(w: int) -> int:
        w = a if w == b else w
        return w if w < b else w - 1

    edges = set()
    for x, y in g.edges:
        nx, ny = newid(x), newid(y)
        if nx != ny:
            edges.add((min(nx, ny), max(nx, ny)))
    return Graph(g.n - 1, edges)


def tree_centroids(g: Graph) -> tuple[int, ...]:
    """The one or two vertices minimising the largest remaining component."""
    if not g.is_tree():
        raise ValueError("centroids are defined for trees only")
    n = g.n
    size = [1] * n
    order = []
    parent = [-1] * n
    stack = [0]
    seen = [False] * n
    seen[0] = True
    while stack:
        u = stack.pop()
        order.append(u)
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                stack.append(w)
    for u in reversed(order):
        if parent[u] >= 0:
            size[parent[u]] += size[u]
    best = None
    out = []
    for v in range(n):
        worst = n - size[v]
        for w in g.adj[v]:
            if parent[w] == v:
                worst = max(worst, size[w])
        if best is None or worst < best:
            best = worst
            out = [v]
        elif worst == best:
            out.append(v)
    return tuple(sorted(out))


def _rooted_code(g: Graph, root: int) -> str:
    # AHU canonical encoding: children codes sorted and concatenated
    code: dict[int, str] = {}
    parent = [-2] * g.n
    parent[root] = -1
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if parent[w] == -2:
                parent[w] = u
                order.append(w)
                stack.append(w)
    for u in reversed(order):
        kids = sorted(code[w] for w in g.adj[u] if parent[w] == u)
        code[u] = "(" + "".join(kids) + ")"
    return code[root]


def tree_canonical_code(g: Graph) -> str:
    """Isomorphism-invariant code for an unrooted tree."""
    return min(_rooted_code(g, c) for c in tree_centroids(g))


def tree_isomorphic(g1: Graph, g2: Graph) -> bool:
    if not (g1.is_tree() and g2.is_tree()):
        raise ValueError("isomorphism check implemented for trees only")
    return g1.n == g2.n and tree_canonical_code(g1) == tree_canonical_code(g2)
