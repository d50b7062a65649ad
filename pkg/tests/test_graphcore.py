import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from linklab.errors import InvalidArgument
from linklab.graphcore import (F_COPY1, F_COPY2, Graph, MarkedGraph, build_D4, build_F, build_F115,
                               build_F126, canonical_cycle, complete_graph, complete_multipartite,
                               contract_arc, contract_cycle, contract_vertices, cycles_of_length,
                               disjoint_cycle_pairs, enumerate_cycles_through_path, ring_connectors,
                               glue, is_cycle, is_isomorphic_small, k331, labeled_quotient,
                               load_f_config, reverse_cycle, rotate_to)
from oracles import count_cycles_through_path, to_nx


def test_complete_graph_counts():
    assert len(complete_graph(6).edges) == 15
    assert len(complete_graph(7).edges) == 21
    with pytest.raises(InvalidArgument):
        complete_graph(0)


def test_k331_shape():
    g = k331()
    assert g.n == 7 and len(g.edges) == 15
    assert g.degree(6) == 6
    assert not g.has_edge(0, 1) and g.has_edge(0, 3)


def test_multipartite_matches_networkx():
    g = complete_multipartite(2, 3, 1)
    assert nx.is_isomorphic(to_nx(g), nx.complete_multipartite_graph(2, 3, 1))


def test_glue_identifies_and_keeps_ids():
    tri = complete_graph(3)
    g = glue(tri, tri, [(0, 0), (1, 1)])
    assert g.n == 4
    assert g.edges == {(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)}
    with pytest.raises(InvalidArgument):
        glue(tri, tri, [(0, 0), (0, 1)])


def test_marked_graph_requires_path_edges():
    with pytest.raises(InvalidArgument):
        MarkedGraph(Graph(3, frozenset([(0, 1)])), 0, 1, 2)


def test_F_structure():
    f = build_F()
    g = f.graph
    assert g.n == 15
    assert f.path == (6, 14, 13)
    assert g.neighbors(14) == {6, 13}
    for piece in (F_COPY1, F_COPY2):
        sub = Graph(7, frozenset((u - piece[0], v - piece[0]) for u, v in g.edges
                                 if u in piece and v in piece))
        assert is_isomorphic_small(sub, k331())
    assert load_f_config("default") == load_f_config(None)


def test_F_bad_middle_edge():
    with pytest.raises(InvalidArgument):
        build_F([(0, 1)])


def test_every_copy_choice_contracts_to_ring():
    # any linked triangle/square pair in either copy fits the D4 ring pattern
    f = build_F()
    k = k331()
    pairs = disjoint_cycle_pairs(k, 3, 4)
    for t1, s1 in pairs:
        for t2, s2 in pairs:
            c1 = [v for v in t1]
            c4 = [v + 7 for v in t2]
            assert ring_connectors(f, c1, s1, [v + 7 for v in s2], c4) is not None


@pytest.mark.parametrize("builder,n,m,copies", [(build_F126, 126, 365, 10), (build_F115, 115, 330, 9)])
def test_glued_counts(builder, n, m, copies):
    g = builder(build_F())
    assert g.n == n
    assert len(g.edges) == m
    assert len(g.copies) == copies
    # each copy is an injective image of F
    f = build_F().graph
    for img in g.copies:
        assert len(set(img)) == 15
        assert all(g.has_edge(img[u], img[v]) for u, v in f.edges)


def _triangle_cycles(g, paths):
    # cycles through each path that stay inside the copy, shortest available
    out = []
    for img, path in zip(g.copies, paths):
        out.append(next(iter(enumerate_cycles_through_path(g, path, 15, within=img))))
    return out


def test_F126_contracts_to_K6():
    from linklab.linkhunt import f126_paths

    g = build_F126(build_F())
    paths = f126_paths(g)
    q = labeled_quotient(g, _triangle_cycles(g, paths), paths)
    assert nx.is_isomorphic(to_nx(q), nx.complete_graph(6))


def test_F115_contracts_to_K331():
    from linklab.linkhunt import f115_paths

    g = build_F115(build_F())
    paths = f115_paths(g)
    q = labeled_quotient(g, _triangle_cycles(g, paths), paths)
    assert nx.is_isomorphic(to_nx(q), nx.complete_multipartite_graph(3, 3, 1))
    cone = [v for v, lab in q.labels.items() if lab == "B"]
    assert q.degree(cone[0]) == 6


def test_D4_has_sixteen_cycles_through_path():
    d = build_D4()
    cycles = enumerate_cycles_through_path(d.graph, d.path, 15)
    assert len(cycles) == 16 == count_cycles_through_path(d.graph, d.path, 15)
    for c in d.designated:
        assert is_cycle(d.graph, c)


def test_enumeration_small_example():
    assert enumerate_cycles_through_path(complete_graph(4), (1, 2, 3), 4) == [(1, 2, 3), (1, 2, 3, 0)]


def test_enumeration_matches_path_oracle_on_F():
    f = build_F()
    assert count_cycles_through_path(f.graph, f.path, 15) == 17586
    assert len(enumerate_cycles_through_path(f.graph, f.path, 15)) == 17586
    assert len(enumerate_cycles_through_path(f.graph, f.path, 8)) == count_cycles_through_path(f.graph, f.path, 8)


def test_enumeration_rejects_missing_edge():
    with pytest.raises(InvalidArgument):
        enumerate_cycles_through_path(k331(), (0, 1, 3), 5)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(4, 8))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=3, unique=True))
    return Graph(n, frozenset(chosen))


@given(small_graphs(), st.data())
def test_enumeration_matches_oracle_on_random_graphs(g, data):
    paths = [(a, b, c) for b in g.vertices for a in g.neighbors(b) for c in g.neighbors(b) if a != c]
    if not paths:
        return
    path = data.draw(st.sampled_from(paths))
    found = enumerate_cycles_through_path(g, path, g.n)
    assert len(found) == count_cycles_through_path(g, path, g.n)
    for cyc in found:
        assert is_cycle(g, cyc) and tuple(cyc[:3]) == path


def test_hamiltonian_cycles_of_K7():
    cycles = cycles_of_length(complete_graph(7), 7)
    assert len(cycles) == math.factorial(6) // 2 == 360
    assert len(set(cycles)) == 360


def test_disjoint_pair_counts():
    assert len(disjoint_cycle_pairs(complete_graph(6), 3, 3)) == 10
    pairs = disjoint_cycle_pairs(k331(), 3, 4)
    assert len(pairs) == 9
    assert all(6 in tri for tri, _ in pairs)


def test_cycle_utilities():
    c = (3, 1, 4, 2)
    assert canonical_cycle(c) == canonical_cycle(reverse_cycle(c)) == (1, 3, 2, 4)
    assert rotate_to(c, (4, 1, 3)) == (4, 1, 3, 2)
    assert rotate_to(c, (1, 2)) is None


def test_contractions():
    g = complete_graph(5)
    h, mapping = contract_cycle(g, (0, 1, 2))
    assert h.n == 3 and mapping[0] == mapping[1] == mapping[2]
    ring = Graph(6, frozenset([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]))
    tri, _ = contract_arc(ring, (0, 1, 2, 3, 4, 5), (0, 1, 2))
    assert tri.n == 3 and len(tri.edges) == 3
    with pytest.raises(InvalidArgument):
        contract_vertices(ring, [(0, 3)])


@given(small_graphs(), st.permutations(range(8)))
def test_isomorphism_agrees_with_networkx(g, perm):
    perm = [p for p in perm if p < g.n]
    h = Graph(g.n, frozenset((perm[u], perm[v]) for u, v in g.edges))
    assert is_isomorphic_small(g, h)
    other = Graph(g.n, frozenset(list(g.edges)[1:]))
    assert is_isomorphic_small(g, other) == nx.is_isomorphic(to_nx(g), to_nx(other))
