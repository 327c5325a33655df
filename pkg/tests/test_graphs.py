"""Graph core: construction, generators, seeded sampling, blow-ups, and the
graph6 codec cross-checked against networkx."""

from fractions import Fraction

import networkx as nx
import pytest

from minorkit import (
    BlowupVertex,
    CapacityError,
    Graph,
    Graph6Error,
    VertexSet,
    as_probability,
    blowup_adjacency,
    blowup_complete,
    blowup_empty,
    blowup_index_vertex,
    blowup_vertex_index,
    build_graph,
    complement,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    format_edge_list,
    graph6_decode,
    graph6_encode,
    grid_graph,
    is_connected,
    lexicographic_product,
    parse_edge_list,
    path_graph,
    random_gnp,
)
from oracles import to_networkx


def test_build_graph_basics():
    G = build_graph(4, [(0, 1), (1, 2), (2, 0), (1, 3), (1, 2)])
    assert G.n == 4
    assert G.m == 4  # the duplicate (1, 2) collapses
    assert G.has_edge(0, 1) and G.has_edge(1, 0)
    assert not G.has_edge(0, 3)
    assert G.degree(1) == 3
    assert G.neighbors(1) == [0, 2, 3]
    assert list(G.edges()) == [(0, 1), (0, 2), (1, 2), (1, 3)]


def test_build_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        build_graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        build_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        build_graph(0)
    with pytest.raises(ValueError):
        build_graph("4")
    with pytest.raises(CapacityError):
        build_graph(4097)


def test_graph_identity():
    a = build_graph(3, [(0, 1)])
    b = build_graph(3, [(1, 0)])
    c = build_graph(3, [(0, 2)])
    assert a == b and hash(a) == hash(b)
    assert a != c
    with pytest.raises(AttributeError):
        a.n = 5


def test_vertex_set():
    s = VertexSet(5, [3, 1])
    assert s.members == (1, 3)
    assert len(s) == 2 and list(s) == [1, 3]
    assert 3 in s and 0 not in s
    assert s == VertexSet.from_mask(5, 0b01010)
    assert hash(s) == hash(VertexSet(5, (1, 3)))
    assert s != VertexSet(6, [1, 3])
    assert VertexSet(5, [1, 1]).members == (1,)  # duplicates collapse
    with pytest.raises(ValueError):
        VertexSet(5, [5])
    with pytest.raises(ValueError):
        VertexSet.from_mask(5, 1 << 5)


def test_generator_shapes():
    assert complete_graph(5).m == 10
    assert empty_graph(7).m == 0
    assert path_graph(6).m == 5
    assert path_graph(1).m == 0
    assert cycle_graph(5).m == 5
    assert complete_bipartite_graph(2, 3).m == 6
    g = grid_graph(3)
    assert g.n == 9 and g.m == 12  # 2*k*(k-1)
    assert g.has_edge(0, 1) and g.has_edge(0, 3) and not g.has_edge(0, 4)
    with pytest.raises(ValueError):
        cycle_graph(2)
    with pytest.raises(ValueError):
        complete_bipartite_graph(0, 3)
    with pytest.raises(ValueError):
        grid_graph(0)


def test_complement_involution():
    for seed in range(10):
        G = random_gnp(8, Fraction(1, 2), seed)
        assert complement(complement(G)) == G
    K = complete_graph(4)
    assert complement(K) == empty_graph(4)


def test_lexicographic_product_definition():
    for seed in range(6):
        G = random_gnp(4, Fraction(1, 2), seed)
        H = random_gnp(3, Fraction(1, 2), seed + 100)
        P = lexicographic_product(G, H)
        assert P.n == 12
        for u in range(G.n):
            for v in range(H.n):
                for u2 in range(G.n):
                    for v2 in range(H.n):
                        if (u, v) == (u2, v2):
                            continue
                        want = G.has_edge(u, u2) or (u == u2 and H.has_edge(v, v2))
                        assert P.has_edge(u * 3 + v, u2 * 3 + v2) == want


def test_blowup_shapes():
    C = cycle_graph(4)
    assert blowup_empty(C, 3).m == 9 * C.m
    assert blowup_complete(C, 3).m == 9 * C.m + 4 * 3
    assert blowup_empty(C, 1) == C
    assert blowup_complete(C, 1) == C
    with pytest.raises(ValueError):
        blowup_empty(C, 0)
    with pytest.raises(CapacityError):
        blowup_complete(C, 2000)


def test_blowup_adjacency_oracle_matches_materialized():
    for seed in range(5):
        G = random_gnp(5, Fraction(1, 2), seed)
        for t in (1, 2, 3):
            for complete in (False, True):
                B = (blowup_complete if complete else blowup_empty)(G, t)
                for i in range(B.n):
                    for j in range(B.n):
                        a = blowup_index_vertex(t, i)
                        b = blowup_index_vertex(t, j)
                        want = B.has_edge(i, j) if i != j else False
                        assert blowup_adjacency(G, t, a, b, complete=complete) == want


def test_blowup_index_round_trip():
    for t in (1, 2, 5):
        for idx in range(4 * t):
            v = blowup_index_vertex(t, idx)
            assert blowup_vertex_index(t, v) == idx
    with pytest.raises(ValueError):
        blowup_adjacency(path_graph(2), 2, BlowupVertex(0, 2), BlowupVertex(1, 0), complete=True)


def test_as_probability():
    assert as_probability("1/3") == Fraction(1, 3)
    assert as_probability(0.5) == Fraction(1, 2)
    assert as_probability(1) == 1
    with pytest.raises(ValueError):
        as_probability("3/2")
    with pytest.raises(ValueError):
        as_probability(-0.1)


def test_random_gnp_deterministic():
    a = random_gnp(10, Fraction(3, 10), 42)
    b = random_gnp(10, "3/10", 42)
    assert a == b
    assert a.m == 16  # frozen draw for (10, 3/10, 42)
    assert random_gnp(10, 0, 7) == empty_graph(10)
    assert random_gnp(10, 1, 7) == complete_graph(10)
    seen = {random_gnp(10, Fraction(1, 2), s) for s in range(20)}
    assert len(seen) == 20


def test_graph6_round_trip_against_networkx():
    cases = [complete_graph(1), path_graph(2), grid_graph(3), complete_bipartite_graph(3, 3)]
    cases += [random_gnp(n, Fraction(1, 2), 7 * n) for n in range(1, 12)]
    for G in cases:
        s = graph6_encode(G)
        ref = nx.to_graph6_bytes(to_networkx(G), header=False).strip().decode()
        assert s == ref
        assert graph6_decode(s) == G
        back = nx.from_graph6_bytes(s.encode())
        assert sorted(back.edges()) == sorted(G.edges())


def test_graph6_decode_errors():
    with pytest.raises(Graph6Error) as e:
        graph6_decode("B" + chr(20))
    assert e.value.offset == 1
    with pytest.raises(Graph6Error):
        graph6_decode("")
    with pytest.raises(Graph6Error):
        graph6_decode("D")  # order 5 needs adjacency bytes
    with pytest.raises(Graph6Error):
        graph6_decode("BF")  # nonzero padding bits for n=3
    with pytest.raises(Graph6Error):
        graph6_decode("?")  # order 0
    assert graph6_decode(">>graph6<<A_") == complete_graph(2)
    with pytest.raises(CapacityError):
        graph6_decode(graph6_encode(path_graph(9)), max_vertices=8)


def test_edge_list_round_trip():
    for seed in range(8):
        G = random_gnp(6, Fraction(1, 2), seed)
        assert parse_edge_list(format_edge_list(G)) == G
    assert parse_edge_list("3 1\n# comment\n\n0 2\n") == build_graph(3, [(0, 2)])
    with pytest.raises(ValueError):
        parse_edge_list("3\n0 1\n")
    with pytest.raises(ValueError):
        parse_edge_list("3 2\n0 1\n")  # edge count mismatch
    with pytest.raises(ValueError):
        parse_edge_list("3 1\n0 3\n")


def test_is_connected():
    assert is_connected(path_graph(5))
    assert not is_connected(empty_graph(2))
    assert is_connected(complete_graph(1))
