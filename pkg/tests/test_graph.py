import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import TRIANGLE, complete, cycle, graphs, path_graph
from inducedpaths.errors import ParseError
from inducedpaths.extremal import doubling
from inducedpaths.graph import (
    Graph,
    PathWitness,
    block_tree,
    chordal_elimination,
    format_graph,
    parse_graph,
    parse_path_witness,
    shortest_path_avoiding,
    tree_longest_path,
    verify_path_witness,
)
from inducedpaths.oracle import brute_force_lip


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# --- parsing ----------------------------------------------------------------

def test_parse_triangle():
    g = parse_graph("p 3 3\ne 0 1\ne 1 2\ne 0 2\n")
    assert g == TRIANGLE


def test_parse_skips_comments_and_blank_lines():
    g = parse_graph("# a triangle\n\np 3 3\n# edges\ne 0 1\n\ne 1 2\ne 0 2\n")
    assert g.m == 3


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("p 2 1\ne 0 0\n", 2),
        ("p 3 2\ne 0 1\ne 1 0\n", 3),
        ("p 3 1\ne 0 3\n", 2),
        ("p 3 1\nx 0 1\n", 2),
        ("p 3 2\ne 0 1\n", None),
        ("p 3 1\ne 0 one\n", 2),
        ("e 0 1\n", 1),
    ],
)
def test_parse_errors_name_the_line(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    if lineno is not None:
        assert info.value.lineno == lineno
        assert f"line {lineno}" in str(info.value)


def test_serialized_g2_has_21_edges():
    g = parse_graph(format_graph(doubling(2).graph))
    assert (g.n, g.m) == (12, 21)


@given(graphs(max_n=12))
def test_format_parse_roundtrip(g):
    assert parse_graph(format_graph(g)) == g


def test_path_witness_roundtrip():
    w = PathWitness((3, 1, 4), True)
    assert parse_path_witness(w.to_line() + "\n") == w
    assert parse_path_witness("path plain 0 2").claims_induced is False
    with pytest.raises(ParseError):
        parse_path_witness("path maybe 0 1")


# --- certificates -----------------------------------------------------------

def test_verify_triangle_examples():
    bad = verify_path_witness(TRIANGLE, PathWitness((0, 1, 2), True))
    assert not bad and "chord" in bad.reason
    assert verify_path_witness(TRIANGLE, PathWitness((0, 1), True))
    assert verify_path_witness(TRIANGLE, PathWitness((0, 1, 2), False))


def test_verify_rejects_non_edges_and_repeats():
    p4 = path_graph(4)
    assert not verify_path_witness(p4, PathWitness((0, 2), False))
    assert not verify_path_witness(p4, PathWitness((0, 1, 0), False))
    assert not verify_path_witness(p4, PathWitness((0, 9), False))


def test_g1_boundary_path_is_induced_and_maximum():
    g = doubling(1).graph
    induced_fours = [
        perm for perm in itertools.permutations(range(g.n), 4)
        if verify_path_witness(g, PathWitness(perm, True))
    ]
    assert induced_fours
    assert brute_force_lip(g) == 4


@given(graphs(max_n=8), st.data())
def test_verify_matches_definition(g, data):
    k = data.draw(st.integers(1, g.n))
    vs = tuple(data.draw(st.permutations(range(g.n)))[:k])
    consecutive = all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))
    chordless = all(
        not g.has_edge(vs[i], vs[j]) for i in range(k) for j in range(i + 2, k)
    )
    assert bool(verify_path_witness(g, PathWitness(vs, False))) == consecutive
    assert bool(verify_path_witness(g, PathWitness(vs, True))) == (consecutive and chordless)


# --- shortest paths ---------------------------------------------------------

def test_shortest_path_avoiding_examples():
    assert shortest_path_avoiding(TRIANGLE, 0, 2, {1}).vertices == (0, 2)
    c4 = cycle(4)
    assert shortest_path_avoiding(c4, 0, 2, {1}).vertices == (0, 3, 2)
    assert shortest_path_avoiding(c4, 0, 2, {1, 3}) is None


@given(graphs(min_n=2, max_n=10, connected=True), st.data())
def test_shortest_path_is_induced_in_searched_subgraph(g, data):
    u, v = data.draw(st.lists(st.integers(0, g.n - 1), min_size=2, max_size=2, unique=True))
    banned = set(data.draw(st.lists(st.integers(0, g.n - 1), max_size=3))) - {u, v}
    w = shortest_path_avoiding(g, u, v, banned)
    h = to_nx(g)
    h.remove_nodes_from(banned)
    if not nx.has_path(h, u, v):
        assert w is None
        return
    assert w.size == nx.shortest_path_length(h, u, v) + 1
    assert not banned & set(w.vertices)
    assert verify_path_witness(g, w)


# --- blocks -----------------------------------------------------------------

def test_block_tree_examples():
    assert len(block_tree(TRIANGLE).blocks) == 1
    bt = block_tree(path_graph(4))
    assert len(bt.blocks) == 3 and set(bt.cut_vertices) == {1, 2}
    bowtie = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    bt = block_tree(bowtie)
    assert len(bt.blocks) == 2 and set(bt.cut_vertices) == {2}


def test_block_tree_rejects_disconnected():
    with pytest.raises(ValueError):
        block_tree(Graph(4, [(0, 1), (2, 3)]))


@given(graphs(min_n=2, max_n=11, connected=True))
def test_block_tree_invariants(g):
    bt = block_tree(g)
    # every edge in exactly one block
    for u, v in g.edges():
        assert sum(1 for b in bt.blocks if u in b and v in b) == 1
    assert sum(len(b) - 1 for b in bt.blocks) == g.n - 1
    cuts = {v for v in range(g.n) if not g.components([v]) or len(g.components([v])) > 1}
    assert set(bt.cut_vertices) == cuts
    expected = {frozenset(c) for c in nx.biconnected_components(to_nx(g))}
    assert {frozenset(b) for b in bt.blocks} == expected


# --- chordality -------------------------------------------------------------

def test_chordal_examples():
    assert not chordal_elimination(cycle(4))
    assert chordal_elimination(complete(5)).omega == 5
    assert chordal_elimination(doubling(2).graph).omega == 3


def _has_long_induced_cycle(g):
    for size in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            h, _ = g.induced(sub)
            if h.m == size and all(h.degree(v) == 2 for v in range(size)) and h.is_connected():
                return True
    return False


@given(graphs(max_n=8))
def test_chordal_iff_no_long_induced_cycle(g):
    elim = chordal_elimination(g)
    assert bool(elim) == (not _has_long_induced_cycle(g))
    if elim:
        pos = {v: i for i, v in enumerate(elim.order)}
        for v in range(g.n):
            later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
            assert all(g.has_edge(a, b) for a, b in itertools.combinations(later, 2))
        assert elim.omega == max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)


# --- trees ------------------------------------------------------------------

def test_tree_longest_path_examples():
    assert tree_longest_path(Graph(1)).size == 1
    star = Graph(5, [(0, i) for i in range(1, 5)])
    assert tree_longest_path(star).size == 3
    with pytest.raises(ValueError):
        tree_longest_path(cycle(4))


@given(st.lists(st.integers(0, 10**6), min_size=0, max_size=60))
def test_tree_longest_path_matches_all_pairs(parents):
    n = len(parents) + 1
    tree = Graph(n, [(p % (i + 1), i + 1) for i, p in enumerate(parents)])
    w = tree_longest_path(tree)
    assert verify_path_witness(tree, w)
    lengths = dict(nx.all_pairs_shortest_path_length(to_nx(tree)))
    assert w.size == max(max(d.values()) for d in lengths.values()) + 1
