import math
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete, cycle, graphs, seeds
from inducedpaths.errors import PreconditionError
from inducedpaths.extremal import doubling
from inducedpaths.graph import Graph, block_tree, tree_longest_path, verify_path_witness
from inducedpaths.oracle import longest_induced_path_exact
from inducedpaths.outerplanar import (
    Bracelet,
    bracelet_bounds,
    extract_bracelet,
    extract_outerplanar,
    outer_cycle,
    outerplanar_bound,
    project_dual_path,
    triangulate_outerplanar,
)
from inducedpaths.randgraphs import block_chain, doubling_chain, triangle_chain


def polygon(rng, n, keep):
    """Random triangulated n-gon with chords kept with probability ``keep``, shuffled ids."""
    chords = []

    def split(vs):
        if len(vs) < 3:
            return
        a, b = vs[0], vs[-1]
        c = rng.randrange(1, len(vs) - 1)
        for x, y in ((a, vs[c]), (vs[c], b)):
            if abs(x - y) not in (1, n - 1):
                chords.append((x, y))
        split(vs[: c + 1])
        split(vs[c:])

    split(list(range(n)))
    perm = list(range(n))
    rng.shuffle(perm)
    ring = [(i, (i + 1) % n) for i in range(n)]
    edges = ring + [e for e in chords if rng.random() < keep]
    return Graph(n, sorted({tuple(sorted((perm[u], perm[v]))) for u, v in edges}))


def is_outerplanar(g):
    h = nx.Graph(g.edges())
    h.add_nodes_from(range(g.n))
    h.add_edges_from((g.n, v) for v in range(g.n))
    return nx.check_planarity(h)[0]


# --- outer cycle ------------------------------------------------------------

def test_outer_cycle_examples():
    c = outer_cycle(cycle(5))
    assert sorted(c) == list(range(5))
    assert not outer_cycle(complete(4))
    g = doubling(2).graph
    c = outer_cycle(g)
    assert len(c) == 12 and g.m - 12 == 9


@given(seeds(), st.integers(3, 20), st.floats(0, 1))
def test_outer_cycle_is_hamiltonian_with_noncrossing_chords(rng, n, keep):
    g = polygon(rng, n, keep)
    c = outer_cycle(g)
    assert c and sorted(c) == list(range(n))
    pos = {v: i for i, v in enumerate(c)}
    ring = {frozenset((c[i], c[(i + 1) % n])) for i in range(n)}
    assert all(g.has_edge(*tuple(e)) for e in ring)
    chords = [tuple(sorted((pos[u], pos[v]))) for u, v in g.edges() if frozenset((u, v)) not in ring]
    for a, b in chords:
        for x, y in chords:
            assert not (a < x < b < y)


@given(graphs(min_n=3, max_n=8, connected=True))
def test_outer_cycle_agrees_with_planarity_oracle(g):
    if len(block_tree(g).blocks) != 1:
        return
    assert bool(outer_cycle(g)) == is_outerplanar(g)


# --- triangulation ----------------------------------------------------------

def test_triangulate_c4_and_c6():
    tp = triangulate_outerplanar(cycle(4))
    assert len(tp.added_edges) == 1 and len(tp.triangles) == 2 and tp.weak_dual.m == 1
    tp = triangulate_outerplanar(cycle(6))
    assert len(tp.added_edges) == 3 and len(tp.triangles) == 4
    assert tree_longest_path(tp.weak_dual).size == 4


def test_triangulate_maximal_is_identity():
    tp = triangulate_outerplanar(doubling(3).graph)
    assert not tp.added_edges
    assert tp.to_text().startswith("cycle ")


def test_triangulate_rejects_non_outerplanar():
    with pytest.raises(PreconditionError):
        triangulate_outerplanar(complete(4))
    with pytest.raises(PreconditionError):
        triangulate_outerplanar(Graph(4, [(0, 1), (1, 2), (2, 3)]))


@given(seeds(), st.integers(3, 24), st.floats(0, 1))
def test_weak_dual_is_small_degree_tree(rng, n, keep):
    g = polygon(rng, n, keep)
    tp = triangulate_outerplanar(g)
    d = tp.weak_dual
    assert d.n == n - 2 and d.m == n - 3 and d.is_connected()
    assert max(d.degree(t) for t in range(d.n)) <= 3
    assert len(tp.chords) == n - 3 and tp.added_edges <= tp.chords
    assert all(not g.has_edge(*e) for e in tp.added_edges)
    fp = project_dual_path(tp, tree_longest_path(d).vertices)
    assert fp.weight >= fp.dual_size
    assert len(set(fp.faces)) == len(fp.faces)


# --- extraction -------------------------------------------------------------

def test_extract_examples():
    g = doubling(4).graph
    w = extract_outerplanar(g)
    assert verify_path_witness(g, w) and 3 <= w.size <= 10
    w = extract_outerplanar(cycle(8))
    assert verify_path_witness(cycle(8), w) and 2 <= w.size <= 7
    assert extract_outerplanar(cycle(4)).size >= 2


@pytest.mark.parametrize("i, size", [(1, 2), (2, 3), (3, 5), (4, 5), (5, 7), (6, 7), (7, 9), (8, 9)])
def test_extract_doubling_frozen_sizes(i, size):
    assert extract_outerplanar(doubling(i).graph).size == size


@given(seeds(), st.integers(4, 14), st.floats(0, 1))
def test_extract_sound_bounded_and_below_oracle(rng, n, keep):
    g = polygon(rng, n, keep)
    w = extract_outerplanar(g)
    assert w.claims_induced and verify_path_witness(g, w)
    assert w.size >= outerplanar_bound(n)
    assert w.size <= longest_induced_path_exact(g).size


# --- bracelets --------------------------------------------------------------

def test_bracelet_single_block_delegates():
    g = doubling(3).graph
    b = Bracelet.from_graph(g)
    assert len(b.blocks) == 1
    assert extract_bracelet(b) == extract_outerplanar(g)


def test_bracelet_triangle_chain():
    chain = triangle_chain(20)
    w, branch, bound = extract_bracelet(Bracelet.from_graph(chain.graph), detail=True)
    assert branch == 2 and w.size >= 21
    assert verify_path_witness(chain.graph, w)


def test_bracelet_two_g3_blocks():
    chain = doubling_chain(3, 2)
    assert chain.graph.n == 47
    w, branch, bound = extract_bracelet(Bracelet.from_graph(chain.graph), detail=True)
    assert branch == 1
    assert w.size >= 0.5 * (math.log2(47) - math.log2(math.log2(47)))
    assert bound == bracelet_bounds(47)[0]


def test_bracelet_rejects_bad_structure():
    star_of_triangles = Graph(7, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)])
    with pytest.raises(PreconditionError):
        Bracelet.from_graph(star_of_triangles)
    with pytest.raises(PreconditionError):
        Bracelet.from_graph(Graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(PreconditionError):
        Bracelet.from_graph(Graph(4, [(0, 1), (0, 2), (0, 3)]))


@given(seeds(), st.lists(st.integers(3, 8), min_size=1, max_size=12))
def test_bracelet_random_chains(rng, sizes):
    blocks = []
    for n in sizes:
        g = polygon(random.Random(rng.random()), n, rng.random())
        blocks.append((g, list(outer_cycle(g))))
    chain = block_chain(blocks)
    if chain.graph.n < 4:
        return
    w, branch, bound = extract_bracelet(Bracelet.from_graph(chain.graph), detail=True)
    assert verify_path_witness(chain.graph, w)
    assert w.size >= bound
    assert branch == (1 if len(sizes) <= math.log2(chain.graph.n) else 2)
