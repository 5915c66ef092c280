"""Partial 2-trees: completion to a 2-tree, the path-of-triangles extraction,
and lifting 2-connected extractors to connected graphs over the block tree."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import CertificateError, PreconditionError
from .graph import (
    Graph,
    PathWitness,
    Rejected,
    any_edge_path,
    block_tree,
    is_biconnected,
    shortest_path_avoiding,
    verify_path_witness,
)
from .ktree import Slide, recognize_ktree, slide_cliques, tree_path


@dataclass(frozen=True)
class TwoTreeCompletion:
    completed: Graph
    added_edges: frozenset[tuple[int, int]]


def recognize_and_complete_tw2(g: Graph):
    """Complete g to a 2-tree, or Rejected when its tree-width exceeds 2.

    Vertices of degree at most 2 are eliminated lowest id first; a degree-2
    vertex fills the edge between its neighbours.
    """
    if g.n < 2:
        return Rejected("need at least 2 vertices")
    if not g.is_connected():
        return Rejected("graph is disconnected")
    adj = g.adjacency()
    heap = [v for v in adj if len(adj[v]) <= 2]
    heapq.heapify(heap)
    steps = []
    while len(adj) > 2:
        while heap and (heap[0] not in adj or len(adj[heap[0]]) > 2):
            heapq.heappop(heap)
        if not heap:
            return Rejected(f"no vertex of degree <= 2 among {len(adj)} remaining (tree-width > 2)")
        x = heapq.heappop(heap)
        nbrs = sorted(adj.pop(x))
        for y in nbrs:
            adj[y].discard(x)
        if len(nbrs) == 2:
            a, b = nbrs
            adj[a].add(b)
            adj[b].add(a)
        steps.append((x, nbrs))
        for y in nbrs:
            if len(adj[y]) <= 2:
                heapq.heappush(heap, y)
    # replay in reverse; the remaining pair is an edge because connectivity is preserved
    a, b = sorted(adj)
    if b not in adj[a]:
        return Rejected("remaining pair is not adjacent")
    out = {a: {b}, b: {a}}
    for x, nbrs in reversed(steps):
        if len(nbrs) == 2:
            anchor = nbrs
        else:
            (y,) = nbrs
            anchor = [y, min(out[y])]
        out[x] = set(anchor)
        for y in anchor:
            out[y].add(x)
    edges = sorted((u, v) for u in out for v in out[u] if u < v)
    completed = Graph(g.n, edges)
    added = frozenset(e for e in edges if not g.has_edge(*e))
    if not recognize_ktree(completed, 2):
        raise CertificateError("completion is not a 2-tree")
    return TwoTreeCompletion(completed, added)


@dataclass(frozen=True)
class PathOfTriangles:
    vertices: frozenset[int]
    triangles: tuple[frozenset[int], ...]
    boundary: tuple[tuple[int, ...], tuple[int, ...]]

    def triangle_of_edge(self, u: int, v: int) -> frozenset[int]:
        hits = [t for t in self.triangles if u in t and v in t]
        if len(hits) != 1:
            raise CertificateError(f"edge {u}-{v} lies on {len(hits)} triangles, expected 1")
        return hits[0]


def path_of_triangles(slide: Slide, host: Graph) -> PathOfTriangles:
    """Validate the triangles used by a 2-clique slide and package its outer boundary."""
    tris = tuple(slide.simplices)
    for t1, t2 in zip(tris, tris[1:]):
        if len(t1 & t2) != 2:
            raise CertificateError("consecutive triangles do not share an edge")
    u = frozenset().union(*tris)
    sub, ids = host.induced(u)
    simplicial_deg2 = [
        ids[v] for v in sub.vertices()
        if sub.degree(v) == 2 and all(sub.has_edge(a, b) for a in sub.neighbors(v) for b in sub.neighbors(v) if a < b)
    ]
    if sorted(simplicial_deg2) != sorted((slide.lead, slide.tail)):
        raise CertificateError(f"path of triangles has simplicial vertices {simplicial_deg2}")
    return PathOfTriangles(u, tris, (tuple(slide.closed(0)), tuple(slide.closed(1))))


def tw2_bound(n: int) -> float:
    return math.log2(n - 3) / 2 if n > 3 else -math.inf


def _check_path(g: Graph, p: PathWitness):
    verdict = verify_path_witness(g, PathWitness(p.vertices, False))
    if not verdict:
        raise PreconditionError(f"invalid path witness: {verdict.reason}")


def extract_partial_2tree(g: Graph, p: PathWitness) -> PathWitness:
    """Certified induced path of size >= log2(n-3)/2 in a 2-connected partial 2-tree."""
    _check_path(g, p)
    n = p.size
    if g.n == 2:
        return any_edge_path(g)
    if not is_biconnected(g):
        raise PreconditionError("graph is not 2-connected")
    completion = recognize_and_complete_tw2(g)
    if not completion:
        raise PreconditionError(completion.reason)
    if n < 5:
        return any_edge_path(g, p.vertices)
    gc = completion.completed
    adj = gc.adjacency()
    tree, node_path = tree_path(adj, 2, p.vertices)
    slide = slide_cliques(tree, node_path, adj)
    if not slide.paths:
        return any_edge_path(g, slide.simplices[0])
    pot = path_of_triangles(slide, gc)
    for side in pot.boundary:
        verdict = verify_path_witness(gc, PathWitness(side, True))
        if not verdict:
            raise CertificateError(f"boundary path not induced in the completion: {verdict.reason}")
    best = max(pot.boundary, key=len)
    result = _splice_detours(g, pot, best)
    bound = tw2_bound(n)
    if result.size < bound:
        raise CertificateError(f"partial 2-tree extraction size {result.size} below bound {bound:.3f}")
    return result


def _splice_detours(g: Graph, pot: PathOfTriangles, side) -> PathWitness:
    on_side = set(side)
    out = [side[0]]
    used_inner: set[int] = set()
    for u, v in zip(side, side[1:]):
        if not g.has_edge(u, v):
            (w,) = pot.triangle_of_edge(u, v) - {u, v}
            detour = shortest_path_avoiding(g, u, v, {w} | (on_side - {u, v}))
            if detour is None:
                raise CertificateError(f"no detour for missing edge {u}-{v} avoiding {w}")
            inner = detour.vertices[1:-1]
            if used_inner & set(inner):
                raise CertificateError(f"detours for missing edges share a vertex near {u}-{v}")
            used_inner.update(inner)
            out.extend(inner)
        out.append(v)
    w = PathWitness(tuple(out), True)
    verdict = verify_path_witness(g, w)
    if not verdict:
        raise CertificateError(f"spliced path not induced: {verdict.reason}")
    return w


@dataclass(frozen=True)
class Extractor:
    """A 2-connected extraction procedure guaranteeing size alpha * (log2 n) ** beta."""

    name: str
    run: Callable[[Graph, PathWitness], PathWitness]
    alpha: float
    beta: float

    def guarantee(self, n: int) -> float:
        if n <= 1:
            return -math.inf
        return self.alpha * math.log2(n) ** self.beta


PARTIAL_2TREE = Extractor("partial-2tree", extract_partial_2tree, 0.5, 1.0)


def path_block_segments(g: Graph, p: PathWitness):
    """Split p into maximal runs of edges lying in one block.

    Returns (block tree, [(block index, vertex run)]) in path order. A path
    cannot come back to a block it has left, so every block appears at most once.
    """
    bt = block_tree(g)
    segs = []
    vs = p.vertices
    for a, b in zip(vs, vs[1:]):
        blk = bt.block_of_edge(a, b)
        if segs and segs[-1][0] == blk:
            segs[-1][1].append(b)
        else:
            segs.append((blk, [a, b]))
    if len({s[0] for s in segs}) != len(segs):
        raise CertificateError("path revisits a block")
    return bt, [(blk, tuple(run)) for blk, run in segs]


def branch_bounds(n: int, alpha: float, beta: float) -> tuple[float, float]:
    """(first-branch bound, second-branch bound) of the block composition."""
    if n <= 1:
        return -math.inf, -math.inf
    t = alpha * math.log2(n) ** beta
    second = t
    if t <= 0 or math.log2(n) - math.log2(t) <= 0:
        return -math.inf, second
    return alpha * (math.log2(n) - math.log2(t)) ** beta, second


@dataclass(frozen=True)
class Composition:
    witness: PathWitness
    branch: int
    blocks: int
    bound: float


def compose_over_blocks(g: Graph, p: PathWitness, extractor: Extractor, detail: bool = False):
    """Run ``extractor`` on one block or thread a path through a chain of blocks."""
    if g.n == 0 or not g.is_connected():
        raise PreconditionError("graph must be connected")
    _check_path(g, p)
    n = p.size
    if n == 1:
        w = PathWitness(p.vertices, True)
        return Composition(w, 1, 0, 1) if detail else w
    bt, segs = path_block_segments(g, p)
    k = len(segs)
    threshold = extractor.guarantee(n)
    first, second = branch_bounds(n, extractor.alpha, extractor.beta)
    if k <= threshold or k == 1:
        blk, run = max(segs, key=lambda s: (len(s[1]), -s[0]))
        sub, ids = g.induced(bt.blocks[blk])
        index = {v: i for i, v in enumerate(ids)}
        inner = extractor.run(sub, PathWitness(tuple(index[v] for v in run), False))
        w = inner.relabel(ids)
        branch, bound = 1, first
    else:
        w = _thread_blocks(g, p, bt, segs)
        branch, bound = 2, second
    verdict = verify_path_witness(g, w)
    if not verdict:
        raise CertificateError(f"composed path not induced: {verdict.reason}")
    return Composition(w, branch, k, bound) if detail else w


def _thread_blocks(g: Graph, p: PathWitness, bt, segs) -> PathWitness:
    cuts = [run[-1] for _, run in segs[:-1]]
    out = [segs[0][1][-2], cuts[0]]
    for (blk, _), u, v in zip(segs[1:-1], cuts, cuts[1:]):
        sub, ids = g.induced(bt.blocks[blk])
        index = {x: i for i, x in enumerate(ids)}
        leg = shortest_path_avoiding(sub, index[u], index[v])
        if leg is None:
            raise CertificateError(f"cut vertices {u}, {v} disconnected inside their block")
        out.extend(ids[x] for x in leg.vertices[1:])
    out.append(segs[-1][1][1])
    return PathWitness(tuple(out), True)


def extract_connected_partial_2tree(g: Graph, p: PathWitness, detail: bool = False):
    return compose_over_blocks(g, p, PARTIAL_2TREE, detail)
