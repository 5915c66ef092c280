"""2-connected outerplanar graphs as polygons with chords, the weak-dual
extraction, and bracelets (chains of outerplanar blocks)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CertificateError, PreconditionError
from .graph import (
    Graph,
    PathWitness,
    Rejected,
    any_edge_path,
    block_tree,
    is_biconnected,
    shortest_path_avoiding,
    tree_longest_path,
    verify_path_witness,
)


def _crossing_chord(chords, pos):
    """First pair of crossing chords in the cyclic order, or None."""
    spans = sorted(
        ((min(pos[u], pos[v]), max(pos[u], pos[v]), (u, v)) for u, v in chords),
        key=lambda s: (s[0], -s[1]),
    )
    stack = []
    for a, b, e in spans:
        while stack and stack[-1][1] <= a:
            stack.pop()
        if stack and b > stack[-1][1]:
            return stack[-1][2], e
        stack.append((a, b, e))
    return None


def outer_cycle(g: Graph):
    """The Hamiltonian cycle bounding the outer face, or Rejected.

    Degree-2 vertices are removed (joining their neighbours) down to a
    triangle and reinserted between their two neighbours, which must then be
    consecutive. Outerplanar inputs never get stuck, so no backtracking is done.
    """
    n = g.n
    if n < 3:
        return Rejected("need at least 3 vertices")
    if g.m > 2 * n - 3:
        return Rejected(f"{g.m} edges exceed the outerplanar maximum {2 * n - 3}")
    adj = g.adjacency()
    stack = [v for v in range(n) if len(adj[v]) == 2]
    removed = []
    while len(adj) > 3:
        while stack and (stack[-1] not in adj or len(adj[stack[-1]]) != 2):
            stack.pop()
        if not stack:
            low = min(len(s) for s in adj.values())
            return Rejected(f"no degree-2 vertex among {len(adj)} remaining (min degree {low})")
        x = stack.pop()
        a, b = sorted(adj.pop(x))
        adj[a].discard(x)
        adj[b].discard(x)
        adj[a].add(b)
        adj[b].add(a)
        removed.append((x, a, b))
        for y in (a, b):
            if len(adj[y]) == 2:
                stack.append(y)
    if len(adj) != 3 or any(len(s) != 2 for s in adj.values()):
        return Rejected("reduction did not end in a triangle")
    a, b, c = sorted(adj)
    cycle = [a, b, c]
    succ = {a: b, b: c, c: a}
    pred = {b: a, c: b, a: c}
    for x, u, v in reversed(removed):
        if succ[u] == v:
            pass
        elif succ[v] == u:
            u, v = v, u
        else:
            return Rejected(f"neighbours {u}, {v} of {x} are not consecutive on the cycle")
        succ[u], pred[x], succ[x], pred[v] = x, u, v, x
    start = min(succ)
    cycle = [start]
    while len(cycle) < n:
        cycle.append(succ[cycle[-1]])
    pos = {v: i for i, v in enumerate(cycle)}
    for i, v in enumerate(cycle):
        if not g.has_edge(v, cycle[(i + 1) % n]):
            return Rejected(f"cycle edge {v}-{cycle[(i + 1) % n]} missing")
    chords = [(u, v) for u, v in g.edges() if (pos[u] - pos[v]) % n not in (1, n - 1)]
    hit = _crossing_chord(chords, pos)
    if hit is not None:
        return Rejected(f"chords {hit[0]} and {hit[1]} cross")
    return cycle


def _faces(n, adj, cycle):
    """Inner faces of a polygon with non-crossing chords, each in boundary order."""
    pos = {v: i for i, v in enumerate(cycle)}

    def offset(v, w):
        return (pos[w] - pos[v]) % n

    order = {v: sorted(adj[v], key=lambda w: offset(v, w)) for v in adj}
    starts = [(cycle[i], cycle[(i + 1) % n]) for i in range(n)]
    starts += [(u, v) for u in adj for v in adj[u] if offset(u, v) not in (1, n - 1)]
    seen = set()
    faces = []
    for e in starts:
        if e in seen:
            continue
        face = []
        u, v = e
        while (u, v) not in seen:
            seen.add((u, v))
            face.append(u)
            back = offset(v, u)
            w = max((x for x in order[v] if offset(v, x) < back), key=lambda x: offset(v, x))
            u, v = v, w
        faces.append(tuple(face))
    return faces


@dataclass(frozen=True)
class TriangulatedPolygon:
    outer_cycle: tuple[int, ...]
    chords: frozenset[tuple[int, int]]
    added_edges: frozenset[tuple[int, int]]
    faces: tuple[tuple[int, ...], ...]
    triangles: tuple[tuple[int, int, int], ...]
    face_of: tuple[int, ...]
    weak_dual: Graph

    def to_text(self) -> str:
        lines = ["cycle " + " ".join(map(str, self.outer_cycle))]
        lines += [f"chord {u} {v}" for u, v in sorted(self.chords)]
        return "\n".join(lines) + "\n"


def triangulate_outerplanar(g: Graph) -> TriangulatedPolygon:
    """Fan-triangulate every inner face from its lowest-id vertex and build the weak dual."""
    if not is_biconnected(g):
        raise PreconditionError("graph is not 2-connected")
    cycle = outer_cycle(g)
    if not cycle:
        raise PreconditionError(f"not outerplanar: {cycle.reason}")
    n = g.n
    faces = _faces(n, g.adjacency(), cycle)
    triangles, face_of, added = [], [], set()
    for fi, face in enumerate(faces):
        j = face.index(min(face))
        rot = face[j:] + face[:j]
        apex = rot[0]
        for x, y in zip(rot[1:], rot[2:]):
            triangles.append(tuple(sorted((apex, x, y))))
            face_of.append(fi)
        for x in rot[2:-1]:
            added.add((min(apex, x), max(apex, x)))
    ring = {(min(u, v), max(u, v)) for u, v in zip(cycle, cycle[1:] + cycle[:1])}
    chords = {e for e in g.edges() if e not in ring} | added
    holders: dict[tuple[int, int], list[int]] = {}
    for ti, (a, b, c) in enumerate(triangles):
        for e in ((a, b), (a, c), (b, c)):
            if e in chords:
                holders.setdefault(e, []).append(ti)
    dual_edges = []
    for e, ts in holders.items():
        if len(ts) != 2:
            raise CertificateError(f"chord {e} borders {len(ts)} triangles")
        dual_edges.append(tuple(ts))
    return TriangulatedPolygon(
        tuple(cycle), frozenset(chords), frozenset(added), tuple(faces),
        tuple(triangles), tuple(face_of), Graph(len(triangles), dual_edges),
    )


def outerplanar_bound(n: int) -> float:
    return math.log2(n) / 2 if n > 0 else -math.inf


@dataclass(frozen=True)
class FacePath:
    """Faces of g met by a longest weak-dual path, with weight bookkeeping."""

    faces: tuple[int, ...]
    dual_size: int
    weight: int


def project_dual_path(tp: TriangulatedPolygon, dual_path) -> FacePath:
    seq = []
    for t in dual_path:
        f = tp.face_of[t]
        if not seq or seq[-1] != f:
            seq.append(f)
    if len(set(seq)) != len(seq):
        raise CertificateError(f"face sequence {seq} repeats a face")
    weight = sum(len(tp.faces[f]) - 2 for f in seq)
    if weight < len(dual_path):
        raise CertificateError(f"face path weight {weight} below dual path size {len(dual_path)}")
    return FacePath(tuple(seq), len(dual_path), weight)


def _arcs(boundary, r1, r2):
    i, j = boundary.index(r1), boundary.index(r2)
    if i > j:
        i, j = j, i
    return boundary[i + 1:j], boundary[j + 1:] + boundary[:i]


def extract_outerplanar(g: Graph) -> PathWitness:
    """Certified induced path of size >= log2(n)/2 in a 2-connected outerplanar graph."""
    if g.n == 3:
        if not is_biconnected(g):
            raise PreconditionError("graph is not 2-connected")
        return any_edge_path(g)
    tp = triangulate_outerplanar(g)
    n = g.n
    dual = tp.weak_dual
    if dual.n != n - 2:
        raise CertificateError(f"weak dual has {dual.n} nodes, expected {n - 2}")
    if max(dual.degree(t) for t in dual.vertices()) > 3:
        raise CertificateError("weak dual node of degree > 3")
    dpath = tree_longest_path(dual).vertices
    fp = project_dual_path(tp, dpath)
    faces = [tp.faces[f] for f in fp.faces]
    region = set().union(*map(set, faces))
    if len(region) != fp.weight + 2:
        raise CertificateError(f"face path spans {len(region)} vertices, expected {fp.weight + 2}")
    pos = {v: i for i, v in enumerate(tp.outer_cycle)}
    boundary = sorted(region, key=pos.__getitem__)
    for u, v in zip(boundary, boundary[1:] + boundary[:1]):
        if not g.has_edge(u, v):
            raise CertificateError(f"region boundary edge {u}-{v} missing")
    if len(faces) == 1:
        first = last = sorted(faces[0])
    else:
        first = sorted(set(faces[0]) - set(faces[1]))
        last = sorted(set(faces[-1]) - set(faces[-2]))
    best = None
    for r1 in first:
        for r2 in last:
            if r1 == r2:
                continue
            arcs = [a for a in _arcs(boundary, r1, r2) if a]
            sides = [PathWitness(tuple(a), True) for a in arcs]
            if not sides or not all(verify_path_witness(g, s) for s in sides):
                continue
            top = max(sides, key=len)
            if best is None or top.size > best.size:
                best = top
    if best is None:
        raise CertificateError("no choice of extremal vertices splits the face path into induced paths")
    if best.size < 2:
        best = any_edge_path(g, region)
    bound = outerplanar_bound(n)
    if best.size < bound:
        raise CertificateError(f"outerplanar extraction size {best.size} below bound {bound:.3f}")
    return best


@dataclass(frozen=True)
class Bracelet:
    graph: Graph
    blocks: tuple[frozenset[int], ...]
    cut_vertices: tuple[int, ...]

    @classmethod
    def from_graph(cls, g: Graph) -> "Bracelet":
        """Order the blocks of g into a chain, checking the bracelet conditions."""
        if g.n == 0 or not g.is_connected():
            raise PreconditionError("bracelet must be connected")
        bt = block_tree(g)
        blocks = bt.blocks
        if len(blocks) == 1:
            chain = [0]
        else:
            for c in bt.cut_order:
                if len(bt.blocks_of(c)) != 2:
                    raise PreconditionError(f"cut vertex {c} lies in {len(bt.blocks_of(c))} blocks")
            ends = [i for i, b in enumerate(blocks) if len(b & bt.cut_vertices) == 1]
            for i, b in enumerate(blocks):
                if len(b & bt.cut_vertices) > 2:
                    raise PreconditionError(f"block {i} holds more than two cut vertices")
            chain = [min(ends)]
            while len(chain) < len(blocks):
                cur = blocks[chain[-1]]
                nxt = [
                    j for j, b in enumerate(blocks)
                    if j not in chain and b & cur & bt.cut_vertices
                ]
                if len(nxt) != 1:
                    raise PreconditionError("block tree is not a chain")
                chain.append(nxt[0])
        ordered = tuple(blocks[i] for i in chain)
        cuts = tuple(next(iter(a & b)) for a, b in zip(ordered, ordered[1:]))
        for b in ordered:
            if len(b) >= 3:
                sub, _ = g.induced(b)
                if not outer_cycle(sub):
                    raise PreconditionError("a block is not outerplanar")
        return cls(g, ordered, cuts)


def bracelet_bounds(n: int) -> tuple[float, float]:
    if n < 2:
        return -math.inf, -math.inf
    ln = math.log2(n)
    first = 0.5 * (ln - math.log2(ln)) if ln > 0 else -math.inf
    return first, ln


def extract_bracelet(b: Bracelet, detail: bool = False):
    """Certified induced path in a bracelet: inside the largest block, or along the chain."""
    g = b.graph
    n = g.n
    if n < 4:
        raise PreconditionError("bracelet needs at least 4 vertices")
    k = len(b.blocks)
    first, second = bracelet_bounds(n)
    if k <= math.log2(n):
        big = max(b.blocks, key=lambda blk: (len(blk), -min(blk)))
        sub, ids = g.induced(big)
        if sub.n >= 3:
            w = extract_outerplanar(sub).relabel(ids)
        else:
            w = any_edge_path(g, big)
        branch, bound = 1, first
    else:
        w = _chain_path(b)
        branch, bound = 2, second
    verdict = verify_path_witness(g, w)
    if not verdict:
        raise CertificateError(f"bracelet path not induced: {verdict.reason}")
    if w.size < bound:
        raise CertificateError(f"bracelet extraction size {w.size} below bound {bound:.3f}")
    return (w, branch, bound) if detail else w


def _chain_path(b: Bracelet) -> PathWitness:
    g = b.graph
    cuts = b.cut_vertices
    lead = min(g.neighbors(cuts[0]) & b.blocks[0])
    out = [lead, cuts[0]]
    for blk, u, v in zip(b.blocks[1:-1], cuts, cuts[1:]):
        sub, ids = g.induced(blk)
        index = {x: i for i, x in enumerate(ids)}
        leg = shortest_path_avoiding(sub, index[u], index[v])
        out.extend(ids[x] for x in leg.vertices[1:])
    out.append(min(g.neighbors(cuts[-1]) & b.blocks[-1]))
    return PathWitness(tuple(out), True)
