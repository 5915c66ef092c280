"""Interval graphs: representation, the three-stage extraction (f1, f2, f3) and
their composition.

Intervals are closed, with pairwise-distinct integer endpoints. A set of
intervals is pairwise intersecting iff ``max(l) <= min(r)``, which gives
constant-size clique tests on neighbourhoods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CertificateError, ParseError, PreconditionError
from .graph import (
    Graph,
    PathWitness,
    _int,
    _lines,
    any_edge_path,
    chordal_elimination,
    verify_path_witness,
)


@dataclass(frozen=True, eq=False)
class IntervalRep:
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise ValueError("endpoint lists differ in length")
        for v, (a, b) in enumerate(zip(self.left, self.right)):
            if a >= b:
                raise ValueError(f"interval of {v} has l >= r")
        points = list(self.left) + list(self.right)
        if len(set(points)) != len(points):
            raise ValueError("endpoints are not pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.left)

    @cached_property
    def l(self) -> np.ndarray:
        return np.asarray(self.left, dtype=np.int64)

    @cached_property
    def r(self) -> np.ndarray:
        return np.asarray(self.right, dtype=np.int64)

    def adjacent(self, u: int, v: int) -> bool:
        return u != v and max(self.left[u], self.left[v]) <= min(self.right[u], self.right[v])

    def left_order(self, vertices=None) -> list[int]:
        vs = range(self.n) if vertices is None else vertices
        return sorted(vs, key=self.left.__getitem__)

    @cached_property
    def _graph(self) -> Graph:
        order = self.left_order()
        ls = [self.left[v] for v in order]
        edges = []
        for i, v in enumerate(order):
            hi = np.searchsorted(ls, self.right[v], side="right")
            edges.extend((min(v, order[j]), max(v, order[j])) for j in range(i + 1, int(hi)))
        return Graph(self.n, edges)

    def graph(self) -> Graph:
        return self._graph

    def clique_number(self, vertices) -> int:
        vs = list(vertices)
        if not vs:
            return 0
        pts = sorted([(self.left[v], 1) for v in vs] + [(self.right[v], -1) for v in vs])
        depth = best = 0
        for _, d in pts:
            depth += d
            best = max(best, depth)
        return best


@dataclass(frozen=True)
class LeftOrdering:
    order: tuple[int, ...]

    def check(self, rep: IntervalRep) -> bool:
        """Strictly increasing left ends and a clique of earlier neighbours for every vertex."""
        ls = [rep.left[v] for v in self.order]
        if any(a >= b for a, b in zip(ls, ls[1:])):
            return False
        for i, v in enumerate(self.order):
            earlier = [u for u in self.order[:i] if rep.adjacent(u, v)]
            if earlier and max(rep.left[u] for u in earlier) > min(rep.right[u] for u in earlier):
                return False
        return True


def _normalize(pairs):
    """Rank all endpoints; ties put left ends first, then order of appearance."""
    keyed = []
    for idx, (a, b) in enumerate(pairs):
        keyed.append((a, 0, idx, 0))
        keyed.append((b, 1, idx, 1))
    keyed.sort()
    out = [[0, 0] for _ in pairs]
    for rank, (_, _, idx, side) in enumerate(keyed):
        out[idx][side] = rank
    return [tuple(p) for p in out]


def parse_intervals(text, normalize: bool = False):
    """Parse ``i <n>`` then ``v <id> <l> <r>`` lines into (graph, rep, left ordering)."""
    n = None
    found: dict[int, tuple[int, int]] = {}
    for lineno, parts in _lines(text):
        tag = parts[0]
        if tag == "i":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 2:
                raise ParseError("header must be 'i <n>'", lineno)
            n = _int(parts[1], lineno)
            if n < 0:
                raise ParseError("negative count", lineno)
        elif tag == "v":
            if n is None:
                raise ParseError("interval before header", lineno)
            if len(parts) != 4:
                raise ParseError("interval must be 'v <id> <l> <r>'", lineno)
            v, a, b = (_int(t, lineno) for t in parts[1:])
            if not 0 <= v < n:
                raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
            if v in found:
                raise ParseError(f"duplicate vertex {v}", lineno)
            if a > b or (a == b and not normalize):
                raise ParseError(f"interval of {v} needs l < r", lineno)
            found[v] = (a, b)
        else:
            raise ParseError(f"unknown record {tag!r}", lineno)
    if n is None:
        raise ParseError("missing header 'i <n>'")
    if len(found) != n:
        raise ParseError(f"header announces {n} intervals, found {len(found)}")
    pairs = [found[v] for v in range(n)]
    if normalize:
        pairs = _normalize(pairs)
    else:
        points = [x for p in pairs for x in p]
        if len(set(points)) != len(points):
            raise ParseError("endpoint values must be pairwise distinct")
    rep = IntervalRep(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))
    return rep.graph(), rep, LeftOrdering(tuple(rep.left_order()))


def format_intervals(rep: IntervalRep) -> str:
    lines = [f"i {rep.n}"] + [f"v {v} {a} {b}" for v, (a, b) in enumerate(zip(rep.left, rep.right))]
    return "\n".join(lines) + "\n"


def rep_from_pairs(pairs) -> IntervalRep:
    return IntervalRep(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))


def staircase(n: int, width: int = 3, reach: int = 7) -> IntervalRep:
    """I_j = [width*j, width*j + reach]: with the defaults a Hamiltonian graph of clique number 3."""
    return rep_from_pairs([(width * j, width * j + reach) for j in range(n)])


# --- bounds -----------------------------------------------------------------

def f1_bound(n: int, k: int) -> float:
    if n <= 0:
        return -math.inf
    return math.log(n / math.factorial(k + 2), k + 2)


def f2_bound(n: int, k: int) -> float:
    return n ** (1 / (k - 1)) if k >= 2 else n


def f3_bound(n: int, k: int) -> float:
    return (n / k) ** (1 / (k - 1)) if k >= 2 else n


def pipeline_bound(n: int, k: int) -> float:
    if k < 2 or n <= 0:
        return -math.inf
    inner = math.log(n, k + 2) - math.log(math.factorial(k + 2), k + 2)
    if inner <= 0:
        return -math.inf
    return (inner ** (1 / (k - 1)) / k) ** (1 / (k - 1))


# --- helpers ----------------------------------------------------------------

def _runs(mask: np.ndarray):
    """(start, stop) index pairs of the maximal True runs of a boolean array."""
    if not mask.any():
        return []
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    diff = np.diff(padded)
    starts = np.flatnonzero(diff == 1)
    stops = np.flatnonzero(diff == -1)
    return list(zip(starts.tolist(), stops.tolist()))


def _successor_adjacent(rep: IntervalRep, order) -> bool:
    o = np.asarray(order, dtype=np.int64)
    if len(o) < 2:
        return True
    return bool(np.all(rep.r[o[:-1]] >= rep.l[o[1:]]))


def _stitch(rep: IntervalRep, pieces, must: int):
    """Join path pieces end to end (any order, either direction) into the longest
    chain that contains the piece holding ``must``."""
    if len(pieces) == 1:
        return pieces[0]
    home = next(j for j, p in enumerate(pieces) if must in p)
    if len(pieces) > 10:
        return pieces[home]
    ends = [[(int(p[0]), int(p[-1])), (int(p[-1]), int(p[0]))] for p in pieces]
    sizes = [len(p) for p in pieces]
    m = len(pieces)
    best: dict[tuple[int, int, int], tuple[int, tuple]] = {}
    for j in range(m):
        for o in (0, 1):
            best[(1 << j, j, o)] = (sizes[j], ((j, o),))
    for mask in range(1, 1 << m):
        for j in range(m):
            for o in (0, 1):
                cur = best.get((mask, j, o))
                if cur is None:
                    continue
                tail = ends[j][o][1]
                for j2 in range(m):
                    if mask >> j2 & 1:
                        continue
                    for o2 in (0, 1):
                        if rep.adjacent(tail, ends[j2][o2][0]):
                            key = (mask | 1 << j2, j2, o2)
                            cand = (cur[0] + sizes[j2], cur[1] + ((j2, o2),))
                            if key not in best or cand[0] > best[key][0]:
                                best[key] = cand
    size, chain = max(
        (v for (mask, _, _), v in best.items() if mask >> home & 1),
        key=lambda v: v[0],
    )
    parts = [pieces[j] if o == 0 else pieces[j][::-1] for j, o in chain]
    return np.concatenate(parts)


# --- stage f1 ---------------------------------------------------------------

def stage_f1(rep: IntervalRep, path: PathWitness, k: int) -> list[int]:
    """Successor-adjacent vertex set (in left order) ending at the last vertex of ``path``."""
    if k < 2:
        raise PreconditionError("k must be at least 2")
    g = rep.graph()
    verdict = verify_path_witness(g, PathWitness(path.vertices, False))
    if not verdict:
        raise PreconditionError(f"invalid path witness: {verdict.reason}")
    L, R = rep.l, rep.r
    n = path.size
    cur = np.asarray(path.vertices, dtype=np.int64)
    top = int(cur[np.argmax(L[cur])])
    kk = k
    suffix: list[int] = []
    while True:
        order = cur[np.argsort(L[cur], kind="stable")]
        m = len(order)
        if kk <= 2 and _successor_adjacent(rep, order):
            base = order.tolist()
            break
        if kk <= 1 or m <= 3:
            j = m - 1
            while j > 0 and R[order[j - 1]] >= L[order[j]]:
                j -= 1
            base = order[j:].tolist()
            break
        vn = int(order[-1])
        before = order[:-1]
        nbrs = before[R[before] >= L[vn]]
        vi = int(nbrs[-1])
        li = L[vi]
        in_l = R[cur] < li
        rk = ~in_l & (cur != vi)
        if rk.sum() >= m / (kk + 2):
            pieces = [cur[a:b] for a, b in _runs(rk)]
            cur = _stitch(rep, pieces, vn)
            omega = rep.clique_number(cur.tolist())
            if omega > kk - 1:
                raise CertificateError(f"clique number {omega} after removing v_i, expected <= {kk - 1}")
            kk -= 1
            continue
        runs = _runs(in_l)
        a, b = max(runs, key=lambda ab: (ab[1] - ab[0], -ab[0]))
        run = cur[a:b]
        if b < m:
            c = int(cur[b])
        else:
            c = int(cur[a - 1])
            run = run[::-1]
        if not (L[c] <= li <= R[c]):
            raise CertificateError(f"connector {c} is not in the clique at l(v_i)")
        tail = [vi] if c == vi else [c, vi]
        cur = np.concatenate([run, np.asarray(tail, dtype=np.int64)])
        suffix.append(vn)
    h = base + suffix[::-1]
    if h[-1] != top:
        raise CertificateError("f1 output does not end at the last vertex")
    if [int(x) for x in np.argsort(L[h], kind="stable")] != list(range(len(h))):
        raise CertificateError("f1 output is not in left order")
    if not _successor_adjacent(rep, h):
        raise CertificateError("f1 output is not successor-adjacent")
    bound = f1_bound(n, k)
    if len(h) < bound:
        raise CertificateError(f"f1 size {len(h)} below bound {bound:.3f}")
    return [int(x) for x in h]


# --- stage f2 ---------------------------------------------------------------

def _first_neighbours(rep: IntervalRep, order: np.ndarray) -> np.ndarray:
    """Index (in ``order``) of the earliest earlier neighbour of each vertex, -1 if none."""
    m = len(order)
    if m < 2:
        return np.full(m, -1)
    prefix = np.maximum.accumulate(rep.r[order])
    first = np.searchsorted(prefix, rep.l[order], side="left")
    return np.where(first >= np.arange(m), -1, first)


def _adjacency_lists(rep: IntervalRep, order) -> dict[int, set[int]]:
    ls = rep.l[order]
    adj = {int(v): set() for v in order}
    for i, v in enumerate(order):
        hi = int(np.searchsorted(ls, rep.right[v], side="right"))
        for j in range(i + 1, hi):
            u = int(order[j])
            adj[int(v)].add(u)
            adj[u].add(int(v))
    return adj


def _is_simplicial(rep: IntervalRep, nbrs) -> bool:
    if len(nbrs) < 2:
        return True
    return max(rep.left[u] for u in nbrs) <= min(rep.right[u] for u in nbrs)


def internal_simplicial(rep: IntervalRep, vertices) -> list[int]:
    order = rep.left_order(vertices)
    adj = _adjacency_lists(rep, np.asarray(order, dtype=np.int64))
    return [v for v in order[1:-1] if _is_simplicial(rep, adj[v])]


def _prune_simplicial(rep: IntervalRep, order: list[int]) -> list[int]:
    import heapq

    arr = np.asarray(order, dtype=np.int64)
    adj = _adjacency_lists(rep, arr)
    index = {v: i for i, v in enumerate(order)}
    fn = _first_neighbours(rep, arr)
    first_nb = {v: (order[fn[i]] if fn[i] >= 0 else None) for i, v in enumerate(order)}
    ends = {order[0], order[-1]}
    heap = [i for i in range(1, len(order) - 1)]
    removed = set()
    while heap:
        i = heapq.heappop(heap)
        v = order[i]
        if v in removed or not _is_simplicial(rep, adj[v]):
            continue
        removed.add(v)
        for u in adj.pop(v):
            adj[u].discard(v)
            if u not in ends:
                heapq.heappush(heap, index[u])
    for v in removed:
        if first_nb[v] in removed:
            raise CertificateError(f"first neighbour {first_nb[v]} of removed {v} was removed")
    return [v for v in order if v not in removed]


def stage_f2(rep: IntervalRep, vertices, k: int) -> list[int]:
    """Successor-adjacent subset with no internal simplicial vertex, size >= n^(1/(k-1))."""
    order = rep.left_order(vertices)
    if not _successor_adjacent(rep, order):
        raise PreconditionError("input is not successor-adjacent in left order")
    n = len(order)
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if rep.clique_number(order) > k:
        raise PreconditionError("clique number exceeds k")
    cur = order
    kk = k
    while kk > 2 and len(cur) > 2:
        m = len(cur)
        arr = np.asarray(cur, dtype=np.int64)
        fn = _first_neighbours(rep, arr)
        counts = np.bincount(fn[fn >= 0], minlength=m)
        w = int(np.argmax(counts))
        if counts[w] >= m ** ((kk - 2) / (kk - 1)):
            members = np.flatnonzero(fn == w)
            if np.any(np.diff(members) != 1):
                raise CertificateError("first-neighbour class is not consecutive")
            cur = [cur[i] for i in members.tolist()]
            kk -= 1
            continue
        cur = _prune_simplicial(rep, cur)
        break
    if not _successor_adjacent(rep, cur):
        raise CertificateError("f2 output lost successor adjacency")
    bad = internal_simplicial(rep, cur)
    if bad:
        raise CertificateError(f"f2 output keeps internal simplicial vertices {bad[:5]}")
    bound = f2_bound(n, k)
    if len(cur) < bound:
        raise CertificateError(f"f2 size {len(cur)} below bound {bound:.3f}")
    return cur


# --- stage f3 ---------------------------------------------------------------

@dataclass(frozen=True)
class StableScaffold:
    stable: tuple[int, ...]
    connectors: tuple[int, ...]

    @property
    def union(self) -> frozenset[int]:
        return frozenset(self.stable) | frozenset(self.connectors)


def _minimal_intervals(rep: IntervalRep, order: np.ndarray) -> np.ndarray:
    r = rep.r[order]
    later_min = np.minimum.accumulate(r[::-1])[::-1]
    after = np.concatenate([later_min[1:], [np.iinfo(np.int64).max]])
    return order[after > r]


def build_scaffold(rep: IntervalRep, vertices) -> StableScaffold:
    """Greedy left-to-right stable set of inclusion-minimal intervals plus connectors."""
    order = np.asarray(rep.left_order(vertices), dtype=np.int64)
    chosen = []
    last_r = None
    for v in _minimal_intervals(rep, order).tolist():
        if last_r is None or rep.left[v] > last_r:
            chosen.append(v)
            last_r = rep.right[v]
    s_l = rep.l[chosen]
    s_r = rep.r[chosen]
    # maximality: every vertex meets some chosen interval
    for v in order.tolist():
        j = int(np.searchsorted(s_l, rep.right[v], side="right")) - 1
        if j < 0 or s_r[j] < rep.left[v]:
            raise CertificateError(f"stable set is not maximal: {v} misses every chosen interval")
    connectors = []
    ls, rs = rep.l[order], rep.r[order]
    for a, b in zip(chosen, chosen[1:]):
        hit = np.flatnonzero((ls <= rep.right[a]) & (rs >= rep.left[b]))
        if len(hit) == 0:
            raise CertificateError(f"no vertex covers r({a}) and l({b})")
        connectors.append(int(order[hit[0]]))
    return StableScaffold(tuple(chosen), tuple(connectors))


def _shortcut(rep: IntervalRep, walk) -> list[int]:
    """Greedy farthest-jump shortcut of a walk into an induced path."""
    last = {v: i for i, v in enumerate(walk)}
    arr = np.asarray(walk, dtype=np.int64)
    wl, wr = rep.l[arr], rep.r[arr]
    out = [walk[0]]
    i = last[walk[0]]
    while i < len(walk) - 1:
        x = out[-1]
        hits = np.flatnonzero((wl[i + 1:] <= rep.right[x]) & (wr[i + 1:] >= rep.left[x]))
        j = i + 1 + int(hits[-1])
        out.append(walk[j])
        i = last[walk[j]]
    return out


def _zigzag(rep: IntervalRep, stable, connectors) -> list[int]:
    q = len(stable)
    sr = rep.r[np.asarray(stable, dtype=np.int64)]
    walk = [stable[-1]]
    i = q - 1
    while i > 0:
        t = connectors[i - 1]
        walk.append(t)
        j = int(np.searchsorted(sr, rep.left[t], side="left"))
        if j >= i or not rep.adjacent(t, stable[j]):
            raise CertificateError(f"connector {t} does not reach back past s_{i}")
        walk.append(stable[j])
        i = j
    return _shortcut(rep, walk)


def _neighbour_counts(rep: IntervalRep, members, probes) -> np.ndarray:
    """For each probe vertex, the number of members (other than itself) it meets."""
    marr = np.asarray(sorted(members), dtype=np.int64)
    ls, rs = np.sort(rep.l[marr]), np.sort(rep.r[marr])
    parr = np.asarray(probes, dtype=np.int64)
    meet = np.searchsorted(ls, rep.r[parr], side="right") - np.searchsorted(rs, rep.l[parr], side="left")
    inside = np.isin(parr, marr)
    return meet - inside


def stage_f3(rep: IntervalRep, vertices, k: int) -> PathWitness:
    """Induced path of size >= (n/k)^(1/(k-1)) via the stable-set scaffold."""
    order = rep.left_order(vertices)
    n = len(order)
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if not _successor_adjacent(rep, order):
        raise PreconditionError("input is not successor-adjacent in left order")
    bad = internal_simplicial(rep, order)
    if bad:
        raise PreconditionError(f"internal simplicial vertices present: {bad[:5]}")
    if rep.clique_number(order) > k:
        raise PreconditionError("clique number exceeds k")
    if k <= 2 or n <= 2:
        w = PathWitness(tuple(order), True)
    else:
        sc = build_scaffold(rep, order)
        stable, conns = list(sc.stable), list(sc.connectors)
        kk = k
        while kk > 2 and len(stable) > 1:
            members = set(stable) | set(conns)
            big = len(members)
            limit = big ** ((kk - 2) / (kk - 1))
            counts = _neighbour_counts(rep, members, conns)
            pick = int(np.argmax(counts))
            top, t_star = int(counts[pick]), conns[pick]
            if top <= limit:
                break
            idx = [j for j, s in enumerate(stable) if rep.adjacent(t_star, s)]
            lo, hi = idx[0], idx[-1]
            if idx != list(range(lo, hi + 1)):
                raise CertificateError("stable vertices met by a connector are not consecutive")
            pieces, start = [], lo
            for j in range(lo, hi):
                if conns[j] == t_star or not rep.adjacent(conns[j], t_star):
                    pieces.append((start, j))
                    start = j + 1
            pieces.append((start, hi))
            a, b = max(pieces, key=lambda ab: (len(set(stable[ab[0]:ab[1] + 1]) | set(conns[ab[0]:ab[1]])), -ab[0]))
            stable, conns = stable[a:b + 1], conns[a:b]
            kk -= 1
        w = PathWitness(tuple(_zigzag(rep, stable, conns)), True)
    verdict = verify_path_witness(rep.graph(), w)
    if not verdict:
        raise CertificateError(f"f3 path not induced: {verdict.reason}")
    bound = f3_bound(n, k)
    if w.size < bound:
        raise CertificateError(f"f3 size {w.size} below bound {bound:.3f}")
    return w


# --- composition ------------------------------------------------------------

@dataclass(frozen=True)
class PipelineTrace:
    n: int
    k: int
    f1: tuple[int, ...]
    f2: tuple[int, ...]
    witness: PathWitness
    bound: float


def interval_pipeline(g: Graph, rep: IntervalRep, p: PathWitness, detail: bool = False):
    """f1, then f2, then f3 on the subgraph spanned by ``p``; certified induced path."""
    if rep.n != g.n or rep.graph() != g:
        raise PreconditionError("interval representation does not match the graph")
    verdict = verify_path_witness(g, PathWitness(p.vertices, False))
    if not verdict:
        raise PreconditionError(f"invalid path witness: {verdict.reason}")
    n = p.size
    sub, _ = g.induced(p.vertices)
    elim = chordal_elimination(sub)
    if not elim:
        raise CertificateError("interval graph reported as non-chordal")
    k = elim.omega
    if k < 2:
        w = PathWitness(p.vertices, True)
        trace = PipelineTrace(n, k, p.vertices, p.vertices, w, 1)
        return trace if detail else w
    h1 = stage_f1(rep, p, k)
    h2 = stage_f2(rep, h1, k)
    w = stage_f3(rep, h2, k)
    if w.size < 2:
        w = any_edge_path(g, p.vertices)
    bound = pipeline_bound(n, k)
    if w.size < min(bound, 2) or (bound >= 2 and w.size < bound):
        raise CertificateError(f"pipeline size {w.size} below bound {bound:.3f}")
    verdict = verify_path_witness(g, w)
    if not verdict:
        raise CertificateError(f"pipeline output not induced: {verdict.reason}")
    trace = PipelineTrace(n, k, tuple(h1), tuple(h2), w, bound)
    return trace if detail else w
