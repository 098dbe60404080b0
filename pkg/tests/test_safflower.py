import math
import random

import pytest

from parityvc.constructions import colour_tree_centroid
from parityvc.graphs import (
    RootedBinaryTree,
    make_complete_binary_tree,
    subdivide,
    tree_from_graph,
)
from parityvc.parity import Colouring, find_parity_path_tree, parity_vector
from parityvc.safflower import (
    NiceSubtreeTable,
    Safflower,
    SafflowerTree,
    build_main_safflower,
    is_nicely_coloured,
    partition_bound_holds,
    partitions_into_at_most,
    subdivision_certificate,
    subdivision_colour_bound,
    verify_safflower,
)
from parityvc.solver import chromatic_number

from .oracles import nice_subtree_count_brute


def _rooted_path(colours):
    n = len(colours)
    children = [[v + 1] for v in range(n - 1)] + [[]]
    return RootedBinaryTree(children, 0), Colouring(max(colours), tuple(colours))


def _cherry(root_colour, left_colour, right_colour):
    tree = RootedBinaryTree([[1, 2], [], []], 0)
    k = max(root_colour, left_colour, right_colour)
    return tree, Colouring(k, (root_colour, left_colour, right_colour))


def _random_coloured_tree(rng, n_max=40):
    n = rng.randint(1, n_max)
    parents = [rng.randrange(v) for v in range(1, n)]
    children = [[] for _ in range(n)]
    for v, p in enumerate(parents, start=1):
        children[p].append(v)
    # rebalance: parents with >2 children push extras down a chain
    ok = all(len(c) <= 2 for c in children)
    if not ok:
        return None
    tree = RootedBinaryTree(children, 0)
    colouring = colour_tree_centroid(tree.to_graph()).colouring
    return tree, colouring


def test_is_nicely_coloured_single_vertex():
    tree = RootedBinaryTree([[]], 0)
    assert is_nicely_coloured(tree, Colouring(1, (1,))) == 1


def test_is_nicely_coloured_path():
    tree, col = _rooted_path([1, 2, 1])
    assert is_nicely_coloured(tree, col) == 1
    tree2, col2 = _rooted_path([1, 2, 3])
    assert is_nicely_coloured(tree2, col2) is None


def test_is_nicely_coloured_rejects_invalid_colouring():
    tree, _ = _rooted_path([1, 2])
    with pytest.raises(ValueError):
        is_nicely_coloured(tree, Colouring(1, (1, 1)))


def test_table_single_vertex():
    tree = RootedBinaryTree([[]], 0)
    table = NiceSubtreeTable(tree, Colouring(2, (2,)))
    assert table.g(0, 2) == 1
    assert table.g(0, 1) == 0


def test_table_path_example():
    tree, col = _rooted_path([1, 2, 1])
    table = NiceSubtreeTable(tree, col)
    assert table.g(0, 1) == 2
    assert table.g(0, 2) == 1
    root, vertices, nice = table.subtree_for(0, 1)
    assert root == 0
    assert vertices == frozenset({0, 1, 2})
    assert nice == frozenset({0, 2})


def test_table_matches_brute_exhaustively():
    # all rooted chains/cherries on <= 5 vertices, all valid colourings, k <= 3
    shapes = []
    for n in range(1, 6):
        for mask in range(2 ** max(0, n - 1)):
            children = [[] for _ in range(n)]
            ok = True
            parent_choice = []
            for v in range(1, n):
                parent_choice.append((mask >> (v - 1)) & 1)
            for v in range(1, n):
                p = max(0, v - 1 - parent_choice[v - 1])
                if len(children[p]) == 2:
                    ok = False
                    break
                children[p].append(v)
            if ok:
                shapes.append(RootedBinaryTree(children, 0))
    assert len(shapes) > 10
    checked = 0
    for tree in shapes:
        g = tree.to_graph()
        for code in range(3 ** tree.n):
            cols, x = [], code
            for _ in range(tree.n):
                cols.append(x % 3 + 1)
                x //= 3
            col = Colouring(3, tuple(cols))
            if find_parity_path_tree(g, col) is not None:
                continue
            table = NiceSubtreeTable(tree, col)
            for colour in (1, 2, 3):
                assert table.g(tree.root, colour) == nice_subtree_count_brute(tree, col, colour)
            checked += 1
    assert checked > 100


def test_table_child_sum_identity_on_random_trees():
    rng = random.Random(9)
    seen = 0
    while seen < 60:
        made = _random_coloured_tree(rng)
        if made is None:
            continue
        tree, col = made
        table = NiceSubtreeTable(tree, col)
        for v in range(tree.n):
            if len(tree.children[v]) == 2:
                s, t = tree.children[v]
                c = col.colours[v]
                assert table.g(v, c) == table.g(s, c) + table.g(t, c) + 1
        seen += 1


def test_build_single_vertex():
    tree = RootedBinaryTree([[]], 0)
    saff = build_main_safflower(tree, Colouring(1, (1,)))
    assert saff.stem == (0,)
    assert saff.num_nice == 1


def test_build_path_is_tight_for_two_colours():
    tree, col = _rooted_path([1, 2, 1])
    saff = build_main_safflower(tree, col)
    assert saff.stem == (0, 1, 2)
    assert len(saff.trees) == 3
    assert saff.num_nice == 3 == 2 ** col.k - 1
    assert verify_safflower(tree, col, saff)


def test_build_cherry_degenerate_original_tree():
    tree, col = _cherry(1, 2, 3)
    saff = build_main_safflower(tree, col)
    # both children have no colour-1 vertices, so the root's tree degenerates
    assert saff.stem == (0, 2)
    assert saff.num_nice == 2
    assert [t.vertices for t in saff.trees] == [frozenset({0}), frozenset({2})]
    assert verify_safflower(tree, col, saff)


def test_build_absorbs_richer_child():
    # root colour 1; left child subtree has a colour-1 vertex, right does not
    tree = RootedBinaryTree([[1, 2], [3], [], []], 0)
    col = Colouring(3, (1, 2, 3, 1))
    assert find_parity_path_tree(tree.to_graph(), col) is None
    saff = build_main_safflower(tree, col)
    assert saff.stem == (0, 2)
    assert saff.trees[0].vertices == frozenset({0, 1, 3})
    assert saff.trees[0].nice == frozenset({0, 3})
    assert saff.num_nice == 3
    assert verify_safflower(tree, col, saff)


def test_verify_rejects_corrupted_colouring():
    tree, col = _rooted_path([1, 2, 1])
    saff = build_main_safflower(tree, col)
    # root-to-vertex vectors collide once the last vertex flips to colour 2
    corrupted = Colouring(2, (1, 2, 2))
    trees = (
        saff.trees[0],
        saff.trees[1],
        SafflowerTree(2, frozenset({2}), frozenset({2}), 2),
    )
    assert verify_safflower(tree, corrupted, Safflower(saff.stem, trees)) is False


def test_verify_raises_on_malformed_shape():
    tree, col = _rooted_path([1, 2, 1])
    saff = build_main_safflower(tree, col)
    overlapping = Safflower(saff.stem, (saff.trees[0], saff.trees[0], saff.trees[2]))
    with pytest.raises(ValueError):
        verify_safflower(tree, col, overlapping)
    with pytest.raises(ValueError):
        verify_safflower(tree, col, Safflower(saff.stem[:2], saff.trees))


def test_verify_built_safflowers_on_random_subdivisions():
    rng = random.Random(4)
    for _ in range(25):
        d = rng.randint(1, 4)
        sub = subdivide(make_complete_binary_tree(d), seed=rng.randrange(10**6), max_length=3)
        col = colour_tree_centroid(sub.to_graph()).colouring
        saff = build_main_safflower(sub, col)
        assert verify_safflower(sub, col, saff)
        # stem runs from the root to a leaf
        assert saff.stem[0] == sub.root
        assert sub.is_leaf(saff.stem[-1])


def test_shared_ancestor_colour_property():
    # for any two root-to-nice-vertex paths, one endpoint matches the colour
    # of the deepest shared vertex
    rng = random.Random(8)
    for _ in range(15):
        d = rng.randint(2, 4)
        sub = subdivide(make_complete_binary_tree(d), seed=rng.randrange(10**6), max_length=3)
        col = colour_tree_centroid(sub.to_graph()).colouring
        saff = build_main_safflower(sub, col)
        nice = sorted(v for t in saff.trees for v in t.nice)
        for i, e1 in enumerate(nice):
            for e2 in nice[i + 1 :]:
                p1 = sub.tree_path(sub.root, e1)
                p2 = sub.tree_path(sub.root, e2)
                shared = max(
                    (v for v in p1 if v in set(p2)), key=lambda v: sub.depth[v]
                )
                assert (
                    col.colours[e1] == col.colours[shared]
                    or col.colours[e2] == col.colours[shared]
                )


def test_original_tree_vs_subtree_inequality():
    # at every stem vertex that is a leaf or branched, the original tree keeps
    # at least half of the best nice count below it
    rng = random.Random(3)
    for _ in range(20):
        d = rng.randint(1, 4)
        sub = subdivide(make_complete_binary_tree(d), seed=rng.randrange(10**6), max_length=3)
        col = colour_tree_centroid(sub.to_graph()).colouring
        table = NiceSubtreeTable(sub, col)
        saff = build_main_safflower(sub, col)
        for v, t in zip(saff.stem, saff.trees):
            if sub.is_leaf(v) or sub.is_branched(v):
                c = col.colours[v]
                assert 2 * len(t.nice) >= table.g(v, c) + 1


def test_stem_doubling_inequality():
    # counting same-coloured stem main vertices from the leaf upward, the best
    # nice count at each doubles: g >= 2^(occurrences) - 1
    rng = random.Random(6)
    for _ in range(20):
        d = rng.randint(1, 5)
        sub = subdivide(make_complete_binary_tree(d), seed=rng.randrange(10**6), max_length=2)
        col = colour_tree_centroid(sub.to_graph()).colouring
        table = NiceSubtreeTable(sub, col)
        saff = build_main_safflower(sub, col)
        mains = set(v for v in saff.stem if v in sub.main)
        from_leaf = [v for v in reversed(saff.stem) if v in mains]
        for i, v in enumerate(from_leaf):
            c = col.colours[v]
            occurrences = sum(
                1 for w in from_leaf[: i + 1] if col.colours[w] == c
            )
            assert table.g(v, c) >= 2 ** occurrences - 1


def test_subdivision_certificate_single_vertex():
    b1 = subdivide(make_complete_binary_tree(1), {})
    cert = subdivision_certificate(b1, Colouring(1, (1,)))
    assert cert.d == 1
    assert cert.a == (1,)
    assert cert.num_nice == 1
    assert cert.bound == 1.0


def test_subdivision_certificate_b3():
    b3 = make_complete_binary_tree(3)
    sub = subdivide(b3, {(v, c): 2 for v in range(b3.n) for c in b3.children[v]})
    col = colour_tree_centroid(sub.to_graph()).colouring
    cert = subdivision_certificate(sub, col)
    assert sum(cert.a) == 3
    assert cert.num_nice >= sum(2 ** x - 1 for x in cert.a)
    assert cert.num_nice <= 2 ** cert.k - 1
    payload = cert.to_json_dict()
    assert payload["schema_version"] == 1
    assert payload["d"] == 3


def test_subdivision_certificate_requires_marks():
    with pytest.raises(ValueError):
        subdivision_certificate(make_complete_binary_tree(2), Colouring(2, (1, 2, 2)))


def test_colour_bound_values():
    assert subdivision_colour_bound(1) == 1.0
    assert subdivision_colour_bound(4) == 2.0
    assert subdivision_colour_bound(16) == 4.5
    # below d=4 the sqrt branch of the max dominates
    assert subdivision_colour_bound(3) == math.sqrt(3)
    assert math.isclose(
        subdivision_colour_bound(9), math.sqrt(9) + 0.25 * math.log2(9) - 0.5
    )
    with pytest.raises(ValueError):
        subdivision_colour_bound(0)


def test_partition_bound_examples():
    assert partition_bound_holds(1, 1, (1,))
    assert partition_bound_holds(4, 2, (2, 2))  # premise fails: 6 > 3
    with pytest.raises(ValueError):
        partition_bound_holds(4, 2, (2, 1))
    with pytest.raises(ValueError):
        partition_bound_holds(2, 2, (3, -1))


def test_partition_bound_exhaustive_small():
    for n in range(1, 9):
        for k in range(1, 9):
            for positive in partitions_into_at_most(n, k):
                parts = positive + (0,) * (k - len(positive))
                assert partition_bound_holds(n, k, parts)


def test_partitions_generator_counts():
    # partitions of 6 into at most 3 parts: 6, 51, 42, 411, 33, 321, 222
    assert sum(1 for _ in partitions_into_at_most(6, 3)) == 7


def test_end_to_end_bound_below_exact_chi():
    rng = random.Random(12)
    for _ in range(5):
        d = rng.randint(1, 3)
        sub = subdivide(make_complete_binary_tree(d), seed=rng.randrange(10**6), max_length=2)
        if sub.n > 13:
            continue
        res = chromatic_number(sub.to_graph())
        assert res.chi >= math.ceil(subdivision_colour_bound(d))
        # the solver witness also feeds the certificate machinery
        cert = subdivision_certificate(sub, res.witness)
        assert cert.bound <= res.chi
