import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import TRIANGLE, complete, cycle, random_path, seeds
from inducedpaths.errors import PreconditionError
from inducedpaths.extremal import doubling, ktree_universal
from inducedpaths.graph import Graph, PathWitness, verify_path_witness
from inducedpaths.ktree import (
    ROOT,
    build_labeled_tree,
    check_labeled_tree,
    extract_induced_path_ktree,
    ktree_bound,
    prune_to_minimal,
    recognize_ktree,
    tree_path,
)
from inducedpaths.oracle import longest_induced_path_exact, longest_path_exact
from inducedpaths.randgraphs import random_ktree


def k_cliques(g, k):
    return {frozenset(c) for c in itertools.combinations(range(g.n), k)
            if all(g.has_edge(a, b) for a, b in itertools.combinations(c, 2))}


def check_ordering(g, ordering):
    k = ordering.k
    assert sorted(ordering.order) == list(range(g.n))
    assert tuple(ordering.order[:k]) == tuple(ordering.basis)
    pos = {v: i for i, v in enumerate(ordering.order)}
    for x in ordering.order[k:]:
        earlier = {u for u in g.neighbors(x) if pos[u] < pos[x]}
        assert earlier == set(ordering.parent_clique[x])
        assert len(earlier) == k
        assert all(g.has_edge(a, b) for a, b in itertools.combinations(earlier, 2))


# --- recognition ------------------------------------------------------------

def test_recognize_examples():
    o = recognize_ktree(TRIANGLE, 3)
    assert o and sorted(o.order) == [0, 1, 2]
    assert not recognize_ktree(cycle(4), 2)
    g = doubling(2).graph
    o = recognize_ktree(g, 2, basis=(0, 1))
    assert o and set(o.basis) == {0, 1}
    check_ordering(g, o)


def test_recognize_rejects_non_clique_basis():
    g = doubling(1).graph
    non_edge = next((u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v))
    assert not recognize_ktree(g, 2, basis=non_edge)


@given(seeds(), st.integers(3, 14), st.integers(1, 4))
def test_random_ktrees_recognized_with_any_basis(rng, n, k):
    n = max(n, k)
    g = random_ktree(rng, n, k)
    assert recognize_ktree(g, k)
    basis = rng.choice(sorted(map(sorted, k_cliques(g, k))))
    o = recognize_ktree(g, k, basis=basis)
    assert o and set(o.basis) == set(basis)
    check_ordering(g, o)
    assert not recognize_ktree(g, k + 1) or n == k + 1


@given(seeds(), st.integers(5, 12))
def test_deleting_an_edge_breaks_ktree(rng, n):
    g = random_ktree(rng, n, 2)
    e = rng.choice(g.edges())
    assert not recognize_ktree(Graph(g.n, [f for f in g.edges() if f != e]), 2)


# --- pruning ----------------------------------------------------------------

def test_prune_hamiltonian_is_identity():
    fi = doubling(3)
    h, ids = prune_to_minimal(fi.graph, 2, fi.ham_path)
    assert h == fi.graph and ids == list(range(fi.graph.n))


def test_prune_drops_simplicial_vertex_off_path():
    # triangle 0,1,2 plus vertex 3 simplicial on edge 0-1; path inside the triangle
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    h, ids = prune_to_minimal(g, 2, PathWitness((0, 2), False))
    assert 3 not in ids


def test_prune_fan():
    n = 10
    fan = Graph(n, [(i, i + 1) for i in range(n - 2)] + [(i, n - 1) for i in range(n - 1)])
    outer = PathWitness(tuple(range(n - 1)), False)
    h, ids = prune_to_minimal(fan, 2, outer)
    assert recognize_ktree(h, 2)
    _assert_minimal(h, ids, 2, outer)


def _assert_minimal(h, ids, k, p):
    on_path = set(p.vertices)
    for x in range(h.n):
        if ids[x] in on_path:
            continue
        nb = h.neighbors(x)
        simplicial = len(nb) == k and all(h.has_edge(a, b) for a, b in itertools.combinations(nb, 2))
        assert not simplicial


@given(seeds(), st.integers(4, 16), st.integers(2, 3))
def test_prune_result_is_minimal_ktree_holding_p(rng, n, k):
    g = random_ktree(rng, n, k)
    p = random_path(rng, g)
    h, ids = prune_to_minimal(g, k, p)
    assert set(p.vertices) <= set(ids)
    assert recognize_ktree(h, k) or h.n == k
    _assert_minimal(h, ids, k, p)


def test_prune_rejects_bad_path():
    with pytest.raises(PreconditionError):
        prune_to_minimal(doubling(1).graph, 2, PathWitness((0, 0), False))


# --- labeled tree -----------------------------------------------------------

def test_labeled_tree_of_clique_is_root_only():
    t = build_labeled_tree(complete(3), 3, (0, 1, 2))
    assert t.nodes == [ROOT] and t.labels[ROOT] == (frozenset({0, 1, 2}),)


def test_labeled_tree_triangle():
    t = build_labeled_tree(TRIANGLE, 2, (0, 1))
    assert t.parent == {2: ROOT}
    assert set(t.labels[2]) == {frozenset({0, 2}), frozenset({1, 2})}


def test_labeled_tree_g1_distributes_edges():
    g = doubling(1).graph
    t = build_labeled_tree(g, 2, (0, 1))
    assert len(t.nodes) == 5
    assert sum(len(label) for label in t.labels.values()) == g.m == 9
    assert check_labeled_tree(t, g) == []
    assert "node root parent -" in t.to_text()


def test_labeled_tree_rejects_bad_base():
    with pytest.raises(PreconditionError):
        build_labeled_tree(doubling(1).graph, 2, (0, 1, 2))


@given(seeds(), st.integers(3, 15), st.integers(1, 4))
def test_labeled_tree_properties(rng, n, k):
    n = max(n, k + 1)
    g = random_ktree(rng, n, k)
    base = rng.choice(sorted(map(sorted, k_cliques(g, k))))
    t = build_labeled_tree(g, k, base)
    assert check_labeled_tree(t, g) == []
    assert len(t.nodes) == g.n - k + 1
    labelled = [c for label in t.labels.values() for c in label]
    assert len(labelled) == len(set(labelled))
    assert set(labelled) == k_cliques(g, k)


@given(seeds(), st.integers(6, 30), st.integers(2, 3))
def test_pruned_tree_degree_at_most_k2_plus_1(rng, n, k):
    g = random_ktree(rng, n, k)
    p = random_path(rng, g)
    tree, node_path = tree_path(g.adjacency(), k, p.vertices)
    assert max(tree.degrees().values()) <= k * k + 1
    assert len(node_path) >= 1


# --- extraction -------------------------------------------------------------

def test_extract_fan_floor():
    n = 10
    fan = Graph(n, [(i, i + 1) for i in range(n - 2)] + [(i, n - 1) for i in range(n - 1)])
    ham = PathWitness(tuple(range(n)), False)
    w = extract_induced_path_ktree(fan, 2, ham)
    assert verify_path_witness(fan, w) and w.size >= 2


def test_extract_g4():
    fi = doubling(4)
    w = extract_induced_path_ktree(fi.graph, 2, fi.ham_path)
    assert verify_path_witness(fi.graph, w)
    assert math.ceil(math.log2(45) / 2) <= w.size <= 10


def test_extract_3tree_with_universal_vertex():
    fi = ktree_universal(2, 3)
    assert fi.graph.n == 13
    w = extract_induced_path_ktree(fi.graph, 3, fi.ham_path)
    assert verify_path_witness(fi.graph, w)
    assert 2 <= w.size <= longest_induced_path_exact(fi.graph).size


@pytest.mark.parametrize("i, size", [(0, 2), (1, 4), (2, 5), (3, 6), (6, 9), (10, 13)])
def test_extract_doubling_frozen_sizes(i, size):
    fi = doubling(i)
    w = extract_induced_path_ktree(fi.graph, 2, fi.ham_path)
    assert w.size == size


def test_extract_rejects_non_ktree():
    with pytest.raises(PreconditionError):
        extract_induced_path_ktree(cycle(6), 2, PathWitness(tuple(range(6)), False))
    with pytest.raises(PreconditionError):
        extract_induced_path_ktree(doubling(1).graph, 1, doubling(1).ham_path)


@given(seeds(), st.integers(4, 13), st.integers(2, 3))
def test_extract_sound_and_bounded(rng, n, k):
    g = random_ktree(rng, n, k)
    p = longest_path_exact(g).witness if rng.random() < 0.5 else random_path(rng, g)
    w = extract_induced_path_ktree(g, k, p)
    assert w.claims_induced and verify_path_witness(g, w)
    assert w.size >= ktree_bound(p.size, k)
    assert w.size <= longest_induced_path_exact(g).size
