import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, graphs, random_path, seeds
from inducedpaths.errors import PreconditionError
from inducedpaths.extremal import doubling
from inducedpaths.graph import Graph, PathWitness, is_biconnected, verify_path_witness
from inducedpaths.ktree import recognize_ktree, slide_cliques, tree_path
from inducedpaths.oracle import longest_induced_path_exact, longest_path_exact
from inducedpaths.randgraphs import doubling_chain, random_partial_2tree, thinned_doubling, triangle_chain
from inducedpaths.tw2 import (
    PARTIAL_2TREE,
    compose_over_blocks,
    extract_connected_partial_2tree,
    extract_partial_2tree,
    branch_bounds,
    path_of_triangles,
    recognize_and_complete_tw2,
    tw2_bound,
)


def has_k4_minor(g):
    """Brute force over maps of vertices to 4 branch sets (or unused), n <= 8."""
    n = g.n
    if n < 4:
        return False
    for assign in itertools.product(range(5), repeat=n):
        sets = [[v for v in range(n) if assign[v] == b] for b in range(4)]
        if any(not s for s in sets):
            continue
        if sets[0][0] != min(v for s in sets for v in s):
            continue
        if not all(g.induced(s)[0].is_connected() for s in sets):
            continue
        if all(any(g.has_edge(u, v) for u in sets[a] for v in sets[b]) for a, b in itertools.combinations(range(4), 2)):
            return True
    return False


# --- completion -------------------------------------------------------------

def test_complete_examples():
    c = recognize_and_complete_tw2(cycle(4))
    assert c and len(c.added_edges) == 1 and c.completed.m == 5
    assert not recognize_and_complete_tw2(complete(4))


def test_complete_random_series_parallel():
    g = random_partial_2tree(random.Random(3), 30, keep=0.4)
    c = recognize_and_complete_tw2(g)
    assert c and recognize_ktree(c.completed, 2)
    assert set(g.edges()) <= set(c.completed.edges())


@settings(max_examples=40)
@given(graphs(min_n=3, max_n=7, connected=True))
def test_completion_iff_no_k4_minor(g):
    c = recognize_and_complete_tw2(g)
    assert bool(c) == (not has_k4_minor(g))
    if c:
        assert set(g.edges()) <= set(c.completed.edges())
        assert c.added_edges == frozenset(set(c.completed.edges()) - set(g.edges()))


@given(seeds(), st.integers(3, 40), st.floats(0, 1))
def test_completion_of_random_partial_2trees(rng, n, keep):
    g = random_partial_2tree(rng, n, keep)
    c = recognize_and_complete_tw2(g)
    assert c and recognize_ktree(c.completed, 2)
    assert nx.is_chordal(nx.Graph(c.completed.edges()))


# --- path of triangles ------------------------------------------------------

@given(seeds(), st.integers(5, 30))
def test_path_of_triangles_structure(rng, n):
    g = random_partial_2tree(rng, n, 1.0)
    p = random_path(rng, g)
    if p.size < 5:
        return
    adj = g.adjacency()
    tree, node_path = tree_path(adj, 2, p.vertices)
    slide = slide_cliques(tree, node_path, adj)
    if not slide.paths:
        return
    pot = path_of_triangles(slide, g)
    for t1, t2 in zip(pot.triangles, pot.triangles[1:]):
        assert len(t1 & t2) == 2
    for side in pot.boundary:
        assert verify_path_witness(g, PathWitness(side, True))


# --- extraction -------------------------------------------------------------

def test_extract_on_2tree_has_no_missing_edges():
    fi = doubling(3)
    w = extract_partial_2tree(fi.graph, fi.ham_path)
    assert verify_path_witness(fi.graph, w) and w.size >= 3


def test_extract_even_cycle():
    g = cycle(8)
    w = extract_partial_2tree(g, PathWitness(tuple(range(8)), False))
    assert verify_path_witness(g, w) and 2 <= w.size <= 7


def test_extract_thinned_g2():
    g, p = thinned_doubling(2, seed=7)
    w = extract_partial_2tree(g, p)
    assert verify_path_witness(g, w)
    assert 2 <= w.size <= longest_induced_path_exact(g).size


def test_extract_errors():
    with pytest.raises(PreconditionError):
        extract_partial_2tree(complete(4), PathWitness((0, 1, 2, 3), False))
    chain = triangle_chain(3)
    with pytest.raises(PreconditionError):
        extract_partial_2tree(chain.graph, chain.path)
    with pytest.raises(PreconditionError):
        extract_partial_2tree(cycle(6), PathWitness((0, 2), False))


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.floats(0, 1))
def test_extract_thinned_doubling(i, seed, keep):
    g, p = thinned_doubling(i, seed, keep)
    w = extract_partial_2tree(g, p)
    assert w.claims_induced and verify_path_witness(g, w)
    assert w.size >= tw2_bound(p.size)
    if g.n <= 14:
        assert w.size <= longest_induced_path_exact(g).size


@given(seeds(), st.integers(5, 13), st.floats(0, 1))
def test_extract_random_biconnected(rng, n, keep):
    g = random_partial_2tree(rng, n, keep)
    if not is_biconnected(g):
        return
    p = longest_path_exact(g).witness
    w = extract_partial_2tree(g, p)
    assert verify_path_witness(g, w)
    assert w.size >= tw2_bound(p.size)
    assert w.size <= longest_induced_path_exact(g).size


# --- composition over blocks ------------------------------------------------

def test_compose_single_block_degenerates():
    fi = doubling(3)
    c = compose_over_blocks(fi.graph, fi.ham_path, PARTIAL_2TREE, detail=True)
    assert c.branch == 1 and c.blocks == 1
    assert c.witness == extract_partial_2tree(fi.graph, fi.ham_path)


def test_compose_triangle_chain_threads_cut_vertices():
    t = 12
    chain = triangle_chain(t)
    c = compose_over_blocks(chain.graph, chain.path, PARTIAL_2TREE, detail=True)
    assert c.branch == 2 and c.witness.size >= t
    assert set(chain.cut_vertices) <= set(c.witness.vertices)
    assert verify_path_witness(chain.graph, c.witness)


def test_compose_two_g3_copies():
    chain = doubling_chain(3, 2)
    c = compose_over_blocks(chain.graph, chain.path, PARTIAL_2TREE, detail=True)
    first, second = branch_bounds(chain.path.size, 0.5, 1.0)
    assert verify_path_witness(chain.graph, c.witness)
    assert c.witness.size >= min(first, second)


def test_compose_rejects_disconnected():
    with pytest.raises(PreconditionError):
        compose_over_blocks(Graph(4, [(0, 1), (2, 3)]), PathWitness((0, 1), False), PARTIAL_2TREE)


@given(st.integers(1, 4), st.integers(1, 12))
def test_compose_chains_meet_branch_bounds(i, count):
    chain = doubling_chain(i, count)
    c = compose_over_blocks(chain.graph, chain.path, PARTIAL_2TREE, detail=True)
    assert verify_path_witness(chain.graph, c.witness)
    assert c.witness.size >= c.bound
    n = chain.path.size
    assert c.branch == (1 if c.blocks <= 0.5 * math.log2(n) or c.blocks == 1 else 2)


@given(seeds(), st.integers(2, 12), st.floats(0, 1))
def test_composed_extractor_on_connected_partial_2trees(rng, n, keep):
    g = random_partial_2tree(rng, n, keep)
    p = longest_path_exact(g).witness
    w = extract_connected_partial_2tree(g, p)
    assert verify_path_witness(g, w)
    first, second = branch_bounds(p.size, 0.5, 1.0)
    assert w.size >= min(first, second)
    assert w.size <= longest_induced_path_exact(g).size
