"""Seeded random instances and block-chain composites used by tests, bench and verify."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .extremal import _doubling_cycle
from .graph import Graph, PathWitness


def thinned_doubling(i: int, seed: int, keep: float = 0.5) -> tuple[Graph, PathWitness]:
    """Doubling graph with a random subset of chords deleted.

    The outer cycle survives, so the result stays 2-connected and Hamiltonian.
    """
    cycle, g = _doubling_cycle(i)
    rng = random.Random(seed)
    ring = {tuple(sorted((cycle[j], cycle[(j + 1) % len(cycle)]))) for j in range(len(cycle))}
    edges = [e for e in g.edges() if e in ring or rng.random() < keep]
    return Graph(g.n, edges), PathWitness(tuple(cycle), False)


@dataclass(frozen=True)
class Chain:
    graph: Graph
    path: PathWitness
    cut_vertices: tuple[int, ...]


def block_chain(blocks: list[tuple[Graph, list[int]]]) -> Chain:
    """Glue blocks end to end along their Hamiltonian cycles.

    Each block is given with a Hamiltonian cycle order. The first vertex of the
    next block is identified with the exit vertex of the current one, which is
    the cycle neighbour of its entry vertex; each block is walked the long way
    round, so the composite path visits every vertex.
    """
    edges: set[tuple[int, int]] = set()
    path: list[int] = []
    cuts: list[int] = []
    n = 0
    entry = None
    for idx, (g, cycle) in enumerate(blocks):
        ids = {}
        start = 0
        if entry is not None:
            ids[cycle[0]] = entry
            start = 1
        for v in cycle[start:]:
            ids[v] = n
            n += 1
        for u, v in g.edges():
            a, b = ids[u], ids[v]
            edges.add((min(a, b), max(a, b)))
        # walk: entry = cycle[0], then cycle[-1], cycle[-2], ..., cycle[1] (exit)
        walk = [cycle[0]] + cycle[:0:-1]
        mapped = [ids[v] for v in walk]
        path.extend(mapped if not path else mapped[1:])
        entry = mapped[-1]
        if idx < len(blocks) - 1:
            cuts.append(entry)
    return Chain(Graph(n, sorted(edges)), PathWitness(tuple(path), False), tuple(cuts))


def doubling_chain(i: int, count: int) -> Chain:
    cycle, g = _doubling_cycle(i)
    return block_chain([(g, cycle)] * count)


def triangle_chain(count: int) -> Chain:
    return block_chain([(Graph(3, [(0, 1), (1, 2), (0, 2)]), [0, 1, 2])] * count)


def random_small_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_interval_rep(rng: random.Random, n: int, span: int = 60):
    """Random closed intervals with pairwise-distinct integer endpoints."""
    points = rng.sample(range(4 * span), 2 * n)
    ivs = []
    for j in range(n):
        a, b = points[2 * j], points[2 * j + 1]
        ivs.append((min(a, b), max(a, b)))
    return ivs


def random_partial_2tree(rng: random.Random, n: int, keep: float = 0.7) -> Graph:
    """Random 2-tree on n vertices with each non-spanning-tree edge kept with probability ``keep``."""
    edges = [(0, 1)]
    for x in range(2, n):
        a, b = rng.choice(edges)
        edges += [(a, x), (b, x)]
    # keep a spanning tree (the first edge to each vertex) so the result is connected
    first = {}
    for a, b in edges:
        first.setdefault(b, (a, b))
    tree = set(first.values())
    kept = [e for e in edges if e in tree or rng.random() < keep]
    return Graph(n, sorted({(min(a, b), max(a, b)) for a, b in kept}))


def random_ktree(rng: random.Random, n: int, k: int) -> Graph:
    edges = [(a, b) for a in range(k) for b in range(a + 1, k)]
    cliques = [tuple(range(k))]
    for x in range(k, n):
        q = rng.choice(cliques)
        edges += [(v, x) for v in q]
        for y in q:
            cliques.append(tuple(sorted((set(q) - {y}) | {x})))
    return Graph(n, edges)


def _perturb(rng: random.Random, g: Graph) -> Graph:
    """Flip one random vertex pair; keep the original when that disconnects it."""
    u, v = rng.sample(range(g.n), 2)
    edges = set(g.edges())
    e = (min(u, v), max(u, v))
    edges.symmetric_difference_update({e})
    h = Graph(g.n, sorted(edges))
    return h if h.is_connected() else g


def soundness_corpus(seed: int, count: int, max_n: int = 12):
    """Seeded mix of small family members, random graphs and perturbations.

    Yields (label, graph, interval rep or None).
    """
    from .extremal import doubling, stacked
    from .interval import rep_from_pairs

    rng = random.Random(seed)
    kinds = ("partial2tree", "ktree2", "ktree3", "thinned", "interval", "chain", "gnp", "perturbed", "stacked")
    for idx in range(count):
        kind = kinds[idx % len(kinds)]
        n = rng.randint(4, max_n)
        rep = None
        if kind == "partial2tree":
            g = random_partial_2tree(rng, n, rng.random())
        elif kind == "ktree2":
            g = random_ktree(rng, n, 2)
        elif kind == "ktree3":
            g = random_ktree(rng, n, 3)
        elif kind == "thinned":
            g, _ = thinned_doubling(rng.randint(1, 2), rng.randrange(2**32), rng.random())
        elif kind == "interval":
            rep = rep_from_pairs(random_interval_rep(rng, n, n // 2 + 3))
            g = rep.graph()
            if not g.is_connected():
                rep = None
                g = random_partial_2tree(rng, n)
        elif kind == "chain":
            g = triangle_chain(rng.randint(2, (max_n - 1) // 2)).graph
        elif kind == "gnp":
            g = random_small_graph(rng, n, rng.uniform(0.2, 0.7))
        elif kind == "perturbed":
            base = doubling(rng.randint(1, 2)).graph if rng.random() < 0.5 else random_partial_2tree(rng, n)
            g = _perturb(rng, base)
        else:
            g = stacked(rng.randint(1, 2)).graph
        yield f"{idx}:{kind}", g, rep
