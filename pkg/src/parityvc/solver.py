"""Exact computation of the parity vertex chromatic number on small graphs.

``chromatic_number`` runs iterative deepening over the colour count with
symmetry breaking (a vertex may only open one new colour) and prunes any
partial assignment whose fully coloured part already contains a parity
path.  ``brute_force_chromatic`` is the independent oracle: it enumerates
canonical colourings outright and validates each with the full verifier,
sharing no pruning logic with the search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .graphs import Graph
from .parity import Colouring, is_parity_vertex_colouring


@dataclass(frozen=True)
class ChromaticResult:
    status: str  # "exact" | "bounds"
    chi: Optional[int]
    witness: Optional[Colouring]
    nodes: int
    seconds: float
    lo: int
    hi: int


class _TimeBudgetExceeded(Exception):
    pass


def _tree_violation(adj, col, bit_of, v) -> bool:
    """Does the coloured part contain a parity path through v?  Tree hosts only.

    Walks v's coloured component once, grouping root-to-vertex vectors by the
    branch they start in; a parity path through v pairs values from two
    different branches (or ends at v itself).
    """
    bv = bit_of[col[v]]
    prev: set[int] = set()
    for b in adj[v]:
        if col[b] == 0:
            continue
        branch_vals = []
        stack = [(b, bv ^ bit_of[col[b]], v)]
        while stack:
            u, pv, par = stack.pop()
            if pv == 0:
                return True
            if prev and (pv ^ bv) in prev:
                return True
            branch_vals.append(pv)
            for w in adj[u]:
                if w != par and col[w] != 0:
                    stack.append((w, pv ^ bit_of[col[w]], u))
        prev.update(branch_vals)
    return False


def _coloured_part_has_parity_path(adj, col, bit_of, n) -> bool:
    """Exhaustive scan for a parity path among fully coloured vertices."""
    for start in range(n):
        if col[start] == 0:
            continue
        path = [start]
        on_path = [False] * n
        on_path[start] = True
        word = bit_of[col[start]]
        pointers = [0]
        while pointers:
            tip = path[-1]
            i = pointers[-1]
            neighbours = adj[tip]
            if i < len(neighbours):
                pointers[-1] = i + 1
                w = neighbours[i]
                if on_path[w] or col[w] == 0:
                    continue
                path.append(w)
                on_path[w] = True
                word ^= bit_of[col[w]]
                if word == 0:
                    return True
                pointers.append(0)
            else:
                pointers.pop()
                word ^= bit_of[col[tip]]
                on_path[tip] = False
                path.pop()
    return False


def chromatic_number(graph: Graph, time_budget: Optional[float] = None) -> ChromaticResult:
    """Smallest k admitting a parity vertex colouring, with a verified witness.

    Vertices are branched in descending-degree order (ties by id) and the
    witness is the first colouring found in that canonical order, so the
    output is deterministic.  With a time budget the result may degrade to
    status "bounds" carrying the best-known interval.
    """
    if graph.n < 1:
        raise ValueError("graph must have at least one vertex")
    if not graph.is_connected():
        raise ValueError("disconnected input; solve components separately")
    t0 = time.perf_counter()
    n = graph.n
    adj = graph.adj
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    on_tree = graph.is_tree()
    deadline = t0 + time_budget if time_budget is not None else None
    col = [0] * n
    nodes = 0

    def extend(pos: int, maxused: int, k: int) -> bool:
        nonlocal nodes
        if pos == n:
            return True
        v = order[pos]
        limit = maxused + 1 if maxused < k else k
        bit_of = _BITS
        for c in range(1, limit + 1):
            nodes += 1
            if deadline is not None and nodes % 64 == 0 and time.perf_counter() > deadline:
                raise _TimeBudgetExceeded
            col[v] = c
            if on_tree:
                bad = _tree_violation(adj, col, bit_of, v)
            else:
                bad = col_has_equal_neighbour(v, c) or _coloured_part_has_parity_path(
                    adj, col, bit_of, n
                )
            if not bad and extend(pos + 1, maxused if c <= maxused else c, k):
                return True
        col[v] = 0
        return False

    def col_has_equal_neighbour(v: int, c: int) -> bool:
        for w in adj[v]:
            if col[w] == c:
                return True
        return False

    for k in range(1, n + 1):
        col[:] = [0] * n
        try:
            found = extend(0, 0, k)
        except _TimeBudgetExceeded:
            return ChromaticResult(
                status="bounds",
                chi=None,
                witness=None,
                nodes=nodes,
                seconds=time.perf_counter() - t0,
                lo=k,
                hi=n,
            )
        if found:
            witness = Colouring(k, tuple(col))
            ok, _ = is_parity_vertex_colouring(graph, witness)
            if not ok:
                raise RuntimeError("search produced an invalid witness")
            return ChromaticResult(
                status="exact",
                chi=k,
                witness=witness,
                nodes=nodes,
                seconds=time.perf_counter() - t0,
                lo=k,
                hi=k,
            )
    raise RuntimeError("unreachable: n distinct colours are always valid")


# colour values are small; index bit masks once
_BITS = [0] + [1 << i for i in range(64)]


def canonical_colourings(n: int, k: int):
    """All colourings of n vertices using exactly k colours, first-occurrence
    canonical (vertex 0 gets colour 1, each vertex at most opens one new colour),
    in lexicographic order."""
    prefix: list[int] = []

    def rec(maxused: int):
        if len(prefix) == n:
            if maxused == k:
                yield tuple(prefix)
            return
        if maxused + (n - len(prefix)) < k:
            return
        top = maxused + 1 if maxused < k else k
        for c in range(1, top + 1):
            prefix.append(c)
            yield from rec(maxused if c <= maxused else c)
            prefix.pop()

    yield from rec(0)


def brute_force_chromatic(graph: Graph, k_max: int) -> Optional[ChromaticResult]:
    """Oracle: try every canonical colouring for k = 1..k_max with the full
    verifier and return the smallest feasible k, or None if none works."""
    if graph.n < 1:
        raise ValueError("graph must have at least one vertex")
    t0 = time.perf_counter()
    checked = 0
    for k in range(1, k_max + 1):
        for colours in canonical_colourings(graph.n, k):
            checked += 1
            candidate = Colouring(k, colours)
            ok, _ = is_parity_vertex_colouring(graph, candidate)
            if ok:
                return ChromaticResult(
                    status="exact",
                    chi=k,
                    witness=candidate,
                    nodes=checked,
                    seconds=time.perf_counter() - t0,
                    lo=k,
                    hi=k,
                )
    return None
