"""Text formats for graphs, rooted trees, colourings, and certificates.

Graph files use a DIMACS-like layout with 1-indexed endpoints::

    p edge <n> <m>
    e <u> <v>          one line per edge, ascending lexicographic order

Rooted trees add a ``r <root>`` line directly after the header and one
``t <child> <parent>`` line per non-root vertex, ascending by child.
Colouring files are ``k <k>`` followed by ``v <vertex> <colour>`` lines.
Both serialisers are bit-exact: serialise(parse(text)) == text.
"""

from __future__ import annotations

import json
from typing import Union

from .graphs import Graph, RootedBinaryTree
from .parity import Colouring, ParityPath


def graph_to_text(g: Union[Graph, RootedBinaryTree]) -> str:
    lines = []
    if isinstance(g, RootedBinaryTree):
        tree = g
        g = tree.to_graph()
        lines.append(f"p edge {g.n} {g.m}")
        lines.append(f"r {tree.root + 1}")
        for u, v in g.edges:
            lines.append(f"e {u + 1} {v + 1}")
        for c in range(tree.n):
            p = tree.parent[c]
            if p is not None:
                lines.append(f"t {c + 1} {p + 1}")
    else:
        lines.append(f"p edge {g.n} {g.m}")
        for u, v in g.edges:
            lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Union[Graph, RootedBinaryTree]:
    n = None
    m = None
    root = None
    edges: list[tuple[int, int]] = []
    parents: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if parts[1] != "edge" or len(parts) != 4:
                raise ValueError(f"line {lineno}: malformed problem line")
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
        elif parts[0] == "r":
            root = int(parts[1]) - 1
        elif parts[0] == "t":
            parents[int(parts[1]) - 1] = int(parts[2]) - 1
        else:
            raise ValueError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise ValueError("missing problem line")
    if m is not None and m != len(edges):
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    if root is None:
        return Graph(n, edges)
    children: list[list[int]] = [[] for _ in range(n)]
    for c in sorted(parents):
        children[parents[c]].append(c)
    return RootedBinaryTree(children, root)


def colouring_to_text(colouring: Colouring) -> str:
    lines = [f"k {colouring.k}"]
    for v, c in enumerate(colouring.colours):
        lines.append(f"v {v + 1} {c}")
    return "\n".join(lines) + "\n"


def colouring_from_text(text: str) -> Colouring:
    k = None
    assignment: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "k":
            k = int(parts[1])
        elif parts[0] == "v":
            assignment[int(parts[1]) - 1] = int(parts[2])
        else:
            raise ValueError(f"line {lineno}: unknown record {parts[0]!r}")
    if k is None:
        raise ValueError("missing k line")
    if set(assignment) != set(range(len(assignment))):
        raise ValueError("colouring must cover vertices 1..n exactly once")
    return Colouring(k, tuple(assignment[v] for v in range(len(assignment))))


def certificate_to_json(cert: ParityPath) -> str:
    payload = {"type": "parity_path", "vertices": [v + 1 for v in cert.vertices]}
    return json.dumps(payload, sort_keys=True)


def certificate_from_json(text: str) -> ParityPath:
    payload = json.loads(text)
    if payload.get("type") != "parity_path":
        raise ValueError("not a parity-path certificate")
    return ParityPath(tuple(v - 1 for v in payload["vertices"]))
