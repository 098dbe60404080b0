import pytest

from parityvc.formats import (
    certificate_from_json,
    certificate_to_json,
    colouring_from_text,
    colouring_to_text,
    graph_from_text,
    graph_to_text,
)
from parityvc.graphs import make_complete_binary_tree, make_cycle, make_path
from parityvc.parity import Colouring, ParityPath


def test_graph_text_golden():
    assert graph_to_text(make_path(3)) == "p edge 3 2\ne 1 2\ne 2 3\n"


def test_graph_roundtrip_bit_exact():
    for g in (make_path(7), make_cycle(5)):
        text = graph_to_text(g)
        assert graph_from_text(text) == g
        assert graph_to_text(graph_from_text(text)) == text


def test_rooted_tree_roundtrip():
    t = make_complete_binary_tree(3)
    text = graph_to_text(t)
    assert text.splitlines()[1] == "r 1"
    back = graph_from_text(text)
    assert back.children == t.children and back.root == t.root
    assert graph_to_text(back) == text


def test_colouring_roundtrip():
    col = Colouring(3, (1, 2, 1, 3))
    text = colouring_to_text(col)
    assert text == "k 3\nv 1 1\nv 2 2\nv 3 1\nv 4 3\n"
    assert colouring_from_text(text) == col


def test_colouring_text_requires_full_cover():
    with pytest.raises(ValueError):
        colouring_from_text("k 2\nv 1 1\nv 3 2\n")


def test_certificate_json_is_one_indexed():
    cert = ParityPath((0, 1, 2, 3))
    text = certificate_to_json(cert)
    assert '"vertices": [1, 2, 3, 4]' in text
    assert certificate_from_json(text) == cert


def test_bad_header_rejected():
    with pytest.raises(ValueError):
        graph_from_text("p edge 2 5\ne 1 2\n")
    with pytest.raises(ValueError):
        graph_from_text("e 1 2\n")
