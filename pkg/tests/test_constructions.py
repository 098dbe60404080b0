import random

import pytest

from parityvc.constructions import colour_cycle, colour_path, colour_tree_centroid
from parityvc.graphs import Graph, make_cycle, make_complete_binary_tree, make_path
from parityvc.parity import find_parity_path_tree, is_parity_vertex_colouring

from .oracles import cycle_arcs, cycle_colouring_valid_brute


def test_colour_path_golden():
    assert colour_path(1).colouring.colours == (1,)
    seven = colour_path(7)
    assert seven.colouring.colours == (1, 2, 1, 3, 1, 2, 1)
    assert seven.colouring.k == 3
    assert colour_path(8).colouring.k == 4
    with pytest.raises(ValueError):
        colour_path(0)


@pytest.mark.parametrize("n", range(1, 65))
def test_colour_path_valid_and_tight(n):
    out = colour_path(n)
    g = make_path(n)
    assert out.colouring.k == n.bit_length()
    assert find_parity_path_tree(g, out.colouring) is None


@pytest.mark.parametrize("n", range(1, 129))
def test_colour_path_unique_maximum(n):
    colours = colour_path(n).colouring.colours
    for i in range(n):
        for j in range(i, n):
            window = colours[i : j + 1]
            assert window.count(max(window)) == 1


def test_colour_cycle_golden():
    assert colour_cycle(4).colouring.colours == (1, 2, 1, 3)
    assert colour_cycle(3).colouring.colours == (1, 2, 3)
    assert colour_cycle(10).colouring.k == 5
    with pytest.raises(ValueError):
        colour_cycle(2)


@pytest.mark.parametrize("n", range(3, 33))
def test_colour_cycle_valid_by_arc_enumeration(n):
    out = colour_cycle(n)
    expected_k = 1 + (n - 1).bit_length()
    assert out.colouring.k == expected_k
    assert cycle_colouring_valid_brute(n, out.colouring)
    ok, _ = is_parity_vertex_colouring(make_cycle(n), out.colouring)
    assert ok


def test_cycle_arc_oracle_covers_all_paths():
    # every simple path of a cycle is an arc: count distinct vertex tuples
    arcs = set(cycle_arcs(5))
    assert len([a for a in arcs if len(a) < 5]) == 5 * 4
    assert len([a for a in arcs if len(a) == 5]) == 5


def test_centroid_on_single_vertex():
    out = colour_tree_centroid(make_path(1))
    assert out.colouring.k == 1


def test_centroid_on_p7_uses_three_colours():
    out = colour_tree_centroid(make_path(7))
    assert out.colouring.k == 3
    assert out.colouring.colours[3] == 1  # midpoint is the top centroid


def test_centroid_on_b4_within_bound():
    g = make_complete_binary_tree(4).to_graph()
    out = colour_tree_centroid(g)
    assert out.colouring.k <= 4
    assert find_parity_path_tree(g, out.colouring) is None


def test_centroid_rejects_non_tree():
    with pytest.raises(ValueError):
        colour_tree_centroid(make_cycle(4))


def test_centroid_min_colour_unique_on_paths():
    # reversed unique-maximum: on every path the smallest colour is unique
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 40)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        g = Graph(n, edges)
        col = colour_tree_centroid(g).colouring
        for _ in range(30):
            u, v = rng.randrange(n), rng.randrange(n)
            path = _tree_path(g, u, v)
            values = [col.colours[x] for x in path]
            assert values.count(min(values)) == 1


def _tree_path(g, u, v):
    parent = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for w in g.adj[x]:
            if w not in parent:
                parent[w] = x
                stack.append(w)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path


def test_centroid_valid_on_random_trees():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 120)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        g = Graph(n, edges)
        out = colour_tree_centroid(g)
        assert out.colouring.k <= n.bit_length()
        assert find_parity_path_tree(g, out.colouring) is None
