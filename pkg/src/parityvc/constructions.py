"""Constructive colourings matching the known optimal colour counts.

Paths get the ruler colouring (trailing zeros of the 1-indexed position),
cycles reuse it on n-1 vertices plus one fresh colour, and arbitrary trees
get a centroid decomposition.  All three are unique-maximum colourings up
to reversing the colour order, hence parity vertex colourings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .parity import Colouring


@dataclass(frozen=True)
class ColouringWithBound:
    colouring: Colouring
    claimed_bound: int


def colour_path(n: int) -> ColouringWithBound:
    """Ruler colouring of the n-vertex path; uses floor(log2 n) + 1 colours."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    colours = tuple((i & -i).bit_length() for i in range(1, n + 1))
    k = n.bit_length()
    return ColouringWithBound(Colouring(k, colours), k)


def colour_cycle(n: int) -> ColouringWithBound:
    """Ruler colouring on n-1 consecutive vertices plus one fresh colour.

    Uses ceil(log2 n) + 1 colours in total.
    """
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    base = colour_path(n - 1).colouring
    fresh = (n - 1).bit_length() + 1
    return ColouringWithBound(
        Colouring(fresh, base.colours + (fresh,)), fresh
    )


def colour_tree_centroid(tree: Graph) -> ColouringWithBound:
    """Centroid-decomposition colouring of a tree.

    The top centroid gets colour 1 and each level of the decomposition gets
    the next colour, so deeper levels carry larger numbers and the minimum
    colour on every path is unique.  Uses at most floor(log2 n) + 1 colours.
    """
    if not tree.is_tree():
        raise ValueError("input must be a tree")
    n = tree.n
    colours = [0] * n
    deepest = 0

    def centroid(vertices: list[int], members: set[int]) -> int:
        best_v, best_worst = -1, n + 1
        for v in vertices:
            worst = 0
            seen = {v}
            for w in tree.adj[v]:
                if w in members and w not in seen:
                    size = 0
                    stack = [w]
                    seen.add(w)
                    while stack:
                        u = stack.pop()
                        size += 1
                        for x in tree.adj[u]:
                            if x in members and x not in seen:
                                seen.add(x)
                                stack.append(x)
                    worst = max(worst, size)
            if worst < best_worst or (worst == best_worst and v < best_v):
                best_v, best_worst = v, worst
        return best_v

    stack = [(sorted(range(n)), 1)]
    while stack:
        vertices, level = stack.pop()
        members = set(vertices)
        c = centroid(vertices, members)
        colours[c] = level
        deepest = max(deepest, level)
        members.discard(c)
        while members:
            seed = min(members)
            comp = [seed]
            members.discard(seed)
            queue = [seed]
            while queue:
                u = queue.pop()
                for w in tree.adj[u]:
                    if w in members:
                        members.discard(w)
                        comp.append(w)
                        queue.append(w)
            stack.append((sorted(comp), level + 1))

    bound = n.bit_length()
    assert deepest <= bound
    return ColouringWithBound(Colouring(deepest, tuple(colours)), bound)
