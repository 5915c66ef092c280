"""Deterministic generators for the extremal families.

Vertex ids are assigned in construction order, so every instance is
byte-identical across runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .graph import Graph, PathWitness, verify_path_witness

MAX_VERTICES = 10**6


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    params: dict
    graph: Graph
    ham_path: PathWitness | None
    predicted_lip: float
    lip_exact: bool
    predicted_n: int
    measured_lip: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.graph.n != self.predicted_n:
            raise AssertionError(
                f"{self.family}{self.params}: built {self.graph.n} vertices, predicted {self.predicted_n}"
            )
        if self.ham_path is not None:
            verdict = verify_path_witness(self.graph, self.ham_path)
            if not verdict or self.ham_path.size != self.graph.n:
                raise AssertionError(f"{self.family}{self.params}: bad Hamiltonian witness ({verdict.reason})")

    def to_meta(self) -> dict:
        meta = {
            "family": self.family,
            "params": self.params,
            "n": self.graph.n,
            "m": self.graph.m,
            "predicted_lip": self.predicted_lip,
            "has_ham": self.ham_path is not None,
        }
        if self.measured_lip is not None:
            meta["measured_lip"] = self.measured_lip
        return meta

    def meta_line(self) -> str:
        return json.dumps(self.to_meta(), sort_keys=True)


def _doubling_cycle(i: int):
    """Cycle order and edge list of the doubling graph G_i."""
    if i < 0:
        raise ValueError("i must be non-negative")
    cycle = [0, 1, 2]
    edges = [(0, 1), (1, 2), (0, 2)]
    fresh = [(0, 1), (1, 2), (2, 0)]
    n = 3
    for _ in range(i):
        # each fresh edge is a cycle edge; its new vertex is inserted between its ends
        new_cycle = []
        next_fresh = []
        insert = {}
        for u, v in fresh:
            insert[(u, v)] = n
            edges += [(u, n), (v, n)]
            next_fresh += [(u, n), (n, v)]
            n += 1
        for j, u in enumerate(cycle):
            v = cycle[(j + 1) % len(cycle)]
            new_cycle.append(u)
            if (u, v) in insert:
                new_cycle.append(insert[(u, v)])
        cycle, fresh = new_cycle, next_fresh
    return cycle, Graph(n, edges)


def doubling(i: int) -> FamilyInstance:
    """Triangle, then one new vertex on every edge created in the previous round."""
    cycle, g = _doubling_cycle(i)
    return FamilyInstance(
        "doubling", {"i": i}, g, PathWitness(tuple(cycle), False),
        2 * (i + 1), True, 3 * 2**i,
    )


def doubling_cycle(i: int) -> list[int]:
    return _doubling_cycle(i)[0]


def ktree_universal(i: int, k: int) -> FamilyInstance:
    """Doubling graph plus k-2 pairwise adjacent universal vertices."""
    if k < 2:
        raise ValueError("k must be at least 2")
    cycle, base = _doubling_cycle(i)
    n0 = base.n
    extra = list(range(n0, n0 + k - 2))
    edges = base.edges()
    edges += [(u, x) for x in extra for u in range(n0)]
    edges += [(a, b) for j, a in enumerate(extra) for b in extra[j + 1:]]
    g = Graph(n0 + k - 2, edges)
    half = len(extra) // 2
    ham = extra[:half] + cycle + extra[half:]
    n = g.n
    return FamilyInstance(
        "ktree", {"i": i, "k": k}, g, PathWitness(tuple(ham), False),
        2 * math.log2(n), False, n,
    )


def stacked(i: int) -> FamilyInstance:
    """Stacked triangulation: a new vertex inside every triangle of the last round."""
    if i < 0:
        raise ValueError("i must be non-negative")
    edges = [(0, 1), (1, 2), (0, 2)]
    fresh = [(0, 1, 2)]
    n = 3
    for _ in range(i):
        next_fresh = []
        for a, b, c in fresh:
            w = n
            n += 1
            edges += [(a, w), (b, w), (c, w)]
            next_fresh += [(a, b, w), (b, c, w), (a, c, w)]
        fresh = next_fresh
    g = Graph(n, edges)
    measured = None
    if n <= 16:
        from .oracle import longest_induced_path_exact

        res = longest_induced_path_exact(g)
        if res.optimal:
            measured = res.witness.size
    return FamilyInstance(
        "stacked", {"i": i}, g, None, i + 1, True, 3 + (3**i - 1) // 2, measured
    )


def _substitute(base_n, base_edges, base_ham, targets, gadget):
    """Replace each ham-path edge listed in ``targets`` by a copy of ``gadget``.

    ``gadget`` is (n, edges, ham) with ham running from u = ham[0] to v = ham[-1];
    the copy's u and v are identified with the two ends of the replaced edge.
    Returns (n, edges, ham) of the result.
    """
    gn, gedges, gham = gadget
    u, v = gham[0], gham[-1]
    inner = [x for x in gham[1:-1]]
    edges = list(base_edges)
    n = base_n
    replaced = {}
    for a, b in targets:
        ids = {u: a, v: b}
        for x in inner:
            ids[x] = n
            n += 1
        edges += [(ids[x], ids[y]) for x, y in gedges]
        replaced[(a, b)] = [ids[x] for x in inner]
        if n > MAX_VERTICES:
            raise OverflowError(f"instance exceeds {MAX_VERTICES} vertices")
    ham = [base_ham[0]]
    for a, b in zip(base_ham, base_ham[1:]):
        ham += replaced.get((a, b), [])
        ham.append(b)
    norm = {tuple(sorted(e)) for e in edges}
    return n, sorted(norm), ham


def planar_substitution(k: int, i: int) -> FamilyInstance:
    """u, v and a k-path, all of the path adjacent to u and v; path edges recursively substituted."""
    if k < 3 or i < 1:
        raise ValueError("need k >= 3 and i >= 1")
    # G_1: u = 0, v = 1, path p_1..p_k = 2..k+1
    path = list(range(2, k + 2))
    g1_edges = [(0, 1)] + [(0, p) for p in path] + [(1, p) for p in path]
    g1_edges += list(zip(path, path[1:]))
    g1_ham = [0] + path + [1]
    cur = (k + 2, g1_edges, g1_ham)
    predicted = k + 2
    for _ in range(i - 1):
        cur = _substitute(k + 2, g1_edges, g1_ham, list(zip(path, path[1:])), cur)
        predicted = (k - 1) * (predicted - 2) + k + 2
    n, edges, ham = cur
    return FamilyInstance(
        "planar", {"k": k, "i": i}, Graph(n, edges), PathWitness(tuple(ham), False),
        2 * i + (k - 2), True, predicted,
    )


def _with_two_universal(n, edges, ham):
    u, v = n, n + 1
    edges = list(edges) + [(u, v)] + [(x, u) for x in range(n)] + [(x, v) for x in range(n)]
    return n + 2, edges, [u] + list(ham) + [v]


def _tower(t: int, k: int, seed_i: int):
    """(n, edges, ham, n_base) of the tree-width-2t tower with substitution depth k."""
    if t == 1:
        cycle, g = _doubling_cycle(seed_i)
        return g.n, g.edges(), cycle
    inner_n, inner_edges, inner_ham = _tower(t - 1, k, seed_i)
    base = _with_two_universal(inner_n, inner_edges, inner_ham)
    bn, bedges, bham = base
    cur = base
    for _ in range(k - 1):
        cur = _substitute(bn, bedges, bham, list(zip(bham, bham[1:])), cur)
    return cur


def tower_size(t: int, k: int, seed_i: int) -> int:
    if t == 1:
        return 3 * 2**seed_i
    n1 = tower_size(t - 1, k, seed_i) + 2
    n = n1
    for _ in range(k - 1):
        n = n1 + (n1 - 1) * (n - 2)
        if n > MAX_VERTICES:
            raise OverflowError(f"instance exceeds {MAX_VERTICES} vertices")
    return n


def tower_bound(t: int, k: int, seed_i: int) -> float:
    ns = 3 * 2**seed_i
    if t == 2:
        return 2 * (math.log2(ns) + k - 1)
    return 2 * (k + t * math.log2(ns) ** (1 / t))


def chordal_tower(t: int, k: int, seed_i: int = 1) -> FamilyInstance:
    """Hamiltonian chordal graph of clique number 2t+1 built by repeated substitution."""
    if t < 2 or k < 1 or seed_i < 0:
        raise ValueError("need t >= 2, k >= 1, seed_i >= 0")
    predicted = tower_size(t, k, seed_i)
    n, edges, ham = _tower(t, k, seed_i)
    return FamilyInstance(
        "tower", {"t": t, "k": k, "seed_i": seed_i}, Graph(n, edges),
        PathWitness(tuple(ham), False), tower_bound(t, k, seed_i), False, predicted,
        extra={"omega": 2 * t + 1},
    )


FAMILIES = {
    "doubling": (doubling, ("i",)),
    "ktree": (ktree_universal, ("i", "k")),
    "stacked": (stacked, ("i",)),
    "planar": (planar_substitution, ("k", "i")),
    "tower": (chordal_tower, ("t", "k", "seed_i")),
}


def generate(family: str, **params) -> FamilyInstance:
    try:
        fn, names = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    args = {}
    for name in names:
        if name in params and params[name] is not None:
            args[name] = int(params[name])
    return fn(**args)
