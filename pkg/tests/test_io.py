import json

import pytest
from hypothesis import given, strategies as st

from linklab.errors import InvalidArgument
from linklab.graphcore import Graph, MarkedGraph, build_D4, build_F, build_F126
from linklab.io import (dumps, embedding_from_json, embedding_to_json, frac_str, graph_from_json,
                        graph_to_json, load_fixture, load_json)
from linklab.spatial import Embedding, random_embedding


def test_graph_roundtrip_with_marks_and_copies():
    f = build_F()
    back = graph_from_json(json.loads(dumps(graph_to_json(f))))
    assert isinstance(back, MarkedGraph) and back.path == f.path
    assert back.graph.edges == f.graph.edges and back.graph.labels == f.graph.labels
    g = build_F126(f)
    assert graph_from_json(graph_to_json(g)).copies == g.copies


def test_embedding_roundtrip_exact():
    e = Embedding(Graph(3, frozenset([(0, 1), (1, 2), (0, 2)])),
                  [(0, 0, 0), ("1/3", 2, 0), (5, "-7/2", 1)], {(0, 2): [(2, 2, 2)]})
    back = embedding_from_json(json.loads(dumps(embedding_to_json(e))))
    assert back.positions == e.positions and back.subdivisions == e.subdivisions


def test_dumps_sorted_and_terminated():
    text = dumps({"b": 1, "a": 2})
    assert text.endswith("\n") and text.index('"a"') < text.index('"b"')


@given(st.fractions())
def test_frac_str_roundtrip(x):
    from fractions import Fraction

    assert Fraction(frac_str(x)) == x


@pytest.mark.parametrize("bad", [{}, {"vertices": [{"id": 1}], "edges": []},
                                 {"vertices": [{"id": 0}, {"id": 1}], "edges": [[0, 5]]}])
def test_malformed_graphs(bad):
    with pytest.raises(InvalidArgument):
        graph_from_json(bad)


def test_malformed_json_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{nope")
    with pytest.raises(InvalidArgument):
        load_json(p)


def test_all_fixtures_load():
    for name in ("trefoil", "figure_eight", "trefoil_sum", "unknot_square", "hopf", "d4_ring"):
        assert load_fixture(name).host.n > 0


def test_ring_fixture_is_D4():
    e = load_fixture("d4_ring")
    assert e.host.edges == build_D4().graph.edges
