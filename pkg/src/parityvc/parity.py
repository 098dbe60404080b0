"""Parity vectors, parity-path detection, and colouring validity.

A colouring is valid iff no path of the graph carries every colour an even
number of times.  On trees the unique-path structure allows a quadratic
scan over vertex pairs via prefix vectors and lowest common ancestors;
general graphs need exhaustive search over simple paths, so the general
verifier takes a node-expansion budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graphs import Graph

DEFAULT_SEARCH_BUDGET = 100_000_000


class SearchBudgetExceeded(RuntimeError):
    """Raised when the exhaustive path search hits its expansion budget."""


@dataclass(frozen=True)
class Colouring:
    """Total colour assignment; ``colours[v]`` is in 1..k."""

    k: int
    colours: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        for v, c in enumerate(self.colours):
            if not 1 <= c <= self.k:
                raise ValueError(f"colour {c} of vertex {v} outside 1..{self.k}")

    @property
    def n(self) -> int:
        return len(self.colours)

    def bit(self, v: int) -> int:
        return 1 << (self.colours[v] - 1)

    @classmethod
    def of(cls, colours: Iterable[int], k: Optional[int] = None) -> "Colouring":
        colours = tuple(colours)
        return cls(k if k is not None else max(colours, default=1), colours)


@dataclass(frozen=True)
class ParityVector:
    """Per-colour occurrence parities, packed into an int."""

    k: int
    word: int

    def __xor__(self, other: "ParityVector") -> "ParityVector":
        if self.k != other.k:
            raise ValueError("parity vectors of different lengths")
        return ParityVector(self.k, self.word ^ other.word)

    @property
    def is_zero(self) -> bool:
        return self.word == 0

    def bits(self) -> tuple[int, ...]:
        return tuple((self.word >> i) & 1 for i in range(self.k))


@dataclass(frozen=True)
class ParityPath:
    """Certificate: a path on which every colour appears an even number of times."""

    vertices: tuple[int, ...]


def parity_vector(colouring: Colouring, vertices: Iterable[int]) -> ParityVector:
    word = 0
    for v in set(vertices):
        if not 0 <= v < colouring.n:
            raise ValueError(f"vertex {v} outside colouring domain")
        word ^= colouring.bit(v)
    return ParityVector(colouring.k, word)


def certificate_is_valid(graph: Graph, colouring: Colouring, cert: ParityPath) -> bool:
    """Re-validate a certificate: simple path, adjacent steps, zero vector, even order."""
    vs = cert.vertices
    if len(vs) < 2 or len(vs) % 2 != 0 or len(set(vs)) != len(vs):
        return False
    if any(not 0 <= v < graph.n for v in vs):
        return False
    if any(not graph.has_edge(a, b) for a, b in zip(vs, vs[1:])):
        return False
    return parity_vector(colouring, vs).is_zero


def _check_domain(graph: Graph, colouring: Colouring) -> None:
    if colouring.n != graph.n:
        raise ValueError("colouring domain does not match the graph")


# ---------------------------------------------------------------------------
# tree verifier: prefix vectors + O(1) LCA, then a scan over all pairs


class _TreeIndex:
    """Root-prefix parity vectors and sparse-table LCA for one coloured tree."""

    def __init__(self, graph: Graph, colouring: Colouring, root: int = 0):
        n = graph.n
        parent = [-1] * n
        order = [root]
        seen = [False] * n
        seen[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for w in graph.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    order.append(w)
                    queue.append(w)
        depth = [0] * n
        pre = [0] * n
        for u in order:
            p = parent[u]
            if p < 0:
                pre[u] = colouring.bit(u)
            else:
                depth[u] = depth[p] + 1
                pre[u] = pre[p] ^ colouring.bit(u)
        self.parent = parent
        self.depth = depth
        self.pre = pre

        # Euler tour; the range-minimum over packed (depth, vertex) gives the LCA.
        euler: list[int] = []
        first = [-1] * n
        stack: list[tuple[int, int]] = [(root, 0)]
        child_of = [[w for w in graph.adj[u] if parent[w] == u] for u in range(n)]
        while stack:
            u, i = stack.pop()
            if i == 0:
                first[u] = len(euler)
            euler.append(u)
            if i < len(child_of[u]):
                stack.append((u, i + 1))
                stack.append((child_of[u][i], 0))
        m = len(euler)
        packed = [depth[v] * n + v for v in euler]
        logs = [0] * (m + 1)
        for i in range(2, m + 1):
            logs[i] = logs[i // 2] + 1
        table = [packed]
        j = 1
        while (1 << j) <= m:
            prev = table[-1]
            width = 1 << (j - 1)
            table.append([min(prev[i], prev[i + width]) for i in range(m - (1 << j) + 1)])
            j += 1
        self._n = n
        self._first = first
        self._logs = logs
        self._table = table

    def lca(self, u: int, v: int) -> int:
        a, b = self._first[u], self._first[v]
        if a > b:
            a, b = b, a
        j = self._logs[b - a + 1]
        best = min(self._table[j][a], self._table[j][b - (1 << j) + 1])
        return best % self._n

    def path(self, u: int, v: int, w: int) -> tuple[int, ...]:
        up, down = [], []
        while u != w:
            up.append(u)
            u = self.parent[u]
        while v != w:
            down.append(v)
            v = self.parent[v]
        return tuple(up + [w] + down[::-1])


def find_parity_path_tree(graph: Graph, colouring: Colouring) -> Optional[ParityPath]:
    """Search a coloured tree for a parity path; None means the colouring is valid.

    Scans all vertex pairs (u, v) in ascending lexicographic order using
    pv(u..v) = pre[u] ^ pre[v] ^ bit(lca), so the certificate is the first
    zero pair in that order.
    """
    _check_domain(graph, colouring)
    if not graph.is_tree():
        raise ValueError("input must be a connected acyclic graph")
    n = graph.n
    if n == 1:
        return None
    idx = _TreeIndex(graph, colouring)
    pre = idx.pre
    bits = [colouring.bit(v) for v in range(n)]
    for u in range(n):
        pu = pre[u]
        for v in range(u + 1, n):
            w = idx.lca(u, v)
            if pu ^ pre[v] ^ bits[w] == 0:
                return ParityPath(idx.path(u, v, w))
    return None


# ---------------------------------------------------------------------------
# general verifier: canonical exhaustive DFS over simple paths


def find_parity_path_general(
    graph: Graph,
    colouring: Colouring,
    budget: Optional[int] = DEFAULT_SEARCH_BUDGET,
) -> Optional[ParityPath]:
    """Exhaustive DFS over simple paths in canonical order.

    Starts are tried in ascending id, extensions in ascending neighbour id,
    and a path is reported only from its smaller endpoint, so the returned
    certificate is deterministic.  Raises SearchBudgetExceeded when the
    node-expansion budget runs out before the search space is exhausted.
    """
    _check_domain(graph, colouring)
    n = graph.n
    bits = [colouring.bit(v) for v in range(n)]
    adj = graph.adj
    expansions = 0
    for start in range(n):
        path = [start]
        on_path = [False] * n
        on_path[start] = True
        word = bits[start]
        # stack holds the index of the next neighbour to try at each depth
        pointers = [0]
        expansions += 1
        if budget is not None and expansions > budget:
            raise SearchBudgetExceeded(f"budget of {budget} expansions exhausted")
        while pointers:
            tip = path[-1]
            i = pointers[-1]
            neighbours = adj[tip]
            if i < len(neighbours):
                pointers[-1] = i + 1
                w = neighbours[i]
                if on_path[w]:
                    continue
                expansions += 1
                if budget is not None and expansions > budget:
                    raise SearchBudgetExceeded(f"budget of {budget} expansions exhausted")
                path.append(w)
                on_path[w] = True
                word ^= bits[w]
                if word == 0 and path[0] < path[-1]:
                    return ParityPath(tuple(path))
                pointers.append(0)
            else:
                pointers.pop()
                word ^= bits[tip]
                on_path[tip] = False
                path.pop()
    return None


def is_parity_vertex_colouring(
    graph: Graph,
    colouring: Colouring,
    budget: Optional[int] = DEFAULT_SEARCH_BUDGET,
) -> tuple[bool, Optional[ParityPath]]:
    """Whether the colouring is a parity vertex colouring, plus a counterexample.

    Dispatches to the polynomial tree verifier when the graph is a tree.
    SearchBudgetExceeded propagates to signal an indeterminate outcome.
    """
    if graph.is_tree():
        cert = find_parity_path_tree(graph, colouring)
    else:
        cert = find_parity_path_general(graph, colouring, budget)
    return cert is None, cert
