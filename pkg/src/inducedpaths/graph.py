"""Graph substrate: representation, path certificates, blocks, chordality, file I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import ParseError


class Graph:
    """Simple undirected graph on the dense vertex ids ``0..n-1``.

    Immutable after construction.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("negative vertex count")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self.m = sum(len(s) for s in adj) // 2

    @classmethod
    def from_adjacency(cls, adj: dict[int, Iterable[int]]) -> tuple["Graph", list[int]]:
        """Relabel a dict-of-neighbors graph densely; returns (graph, ids)."""
        ids = sorted(adj)
        index = {v: i for i, v in enumerate(ids)}
        edges = [(index[u], index[v]) for u in ids for v in adj[u] if u < v]
        return cls(len(ids), edges), ids

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def adjacency(self) -> dict[int, set[int]]:
        """Mutable dict-of-sets copy, for algorithms that peel vertices."""
        return {v: set(self._adj[v]) for v in range(self.n)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as integer bitsets."""
        out = []
        for v in range(self.n):
            mask = 0
            for w in self._adj[v]:
                mask |= 1 << w
            out.append(mask)
        return tuple(out)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabeled; ``ids[i]`` is the host id of vertex i."""
        ids = sorted(set(vertices))
        index = {v: i for i, v in enumerate(ids)}
        edges = [
            (index[u], index[w])
            for u in ids
            for w in self._adj[u]
            if u < w and w in index
        ]
        return Graph(len(ids), edges), ids

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        new = set(self.edges())
        new.update((min(u, v), max(u, v)) for u, v in extra)
        return Graph(self.n, sorted(new))

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        gone = set(removed)
        seen = set(gone)
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self):
        return hash((self.n, self._adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Rejected:
    """Falsy stand-in for an absent result; carries the reason."""

    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]
    claims_induced: bool = True

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def relabel(self, ids) -> "PathWitness":
        return PathWitness(tuple(ids[v] for v in self.vertices), self.claims_induced)

    def to_line(self) -> str:
        kind = "induced" if self.claims_induced else "plain"
        return " ".join(["path", kind, *map(str, self.vertices)])


class Verdict(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_path_witness(g: Graph, w: PathWitness) -> Verdict:
    vs = w.vertices
    if not vs:
        return Verdict(False, "empty path")
    for v in vs:
        if not (0 <= v < g.n):
            return Verdict(False, f"vertex {v} out of range")
    if len(set(vs)) != len(vs):
        return Verdict(False, "repeated vertex")
    for a, b in zip(vs, vs[1:]):
        if not g.has_edge(a, b):
            return Verdict(False, f"consecutive vertices {a}, {b} not adjacent")
    if w.claims_induced:
        on_path = set(vs)
        last = len(vs) - 1
        for i, v in enumerate(vs):
            inside = len(g.neighbors(v) & on_path)
            expected = (i > 0) + (i < last)
            if inside != expected:
                chord = next(
                    u for u in g.neighbors(v) & on_path
                    if abs(vs.index(u) - i) > 1
                )
                return Verdict(False, f"chord {v}-{chord}")
    return Verdict(True)


def shortest_path_avoiding(g: Graph, u: int, v: int, forbidden: Iterable[int] = ()):
    """BFS path from u to v in g minus ``forbidden``; None when disconnected.

    A shortest path is induced in the searched subgraph.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    banned = set(forbidden)
    if u in banned or v in banned:
        raise ValueError("endpoint is forbidden")
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in sorted(g.neighbors(x)):
            if y not in parent and y not in banned:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        return None
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return PathWitness(tuple(reversed(out)), True)


@dataclass(frozen=True)
class BlockTree:
    """Blocks (bridges included) and cut vertices.

    ``tree`` has block nodes ``0..len(blocks)-1`` followed by one node per
    entry of ``cut_order``.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    cut_order: tuple[int, ...]
    tree: Graph

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def block_of_edge(self, u: int, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if u in b and v in b:
                return i
        raise KeyError((u, v))


def block_tree(g: Graph) -> BlockTree:
    """Biconnected components by Tarjan's edge-stack method (iterative)."""
    if g.n == 0 or not g.is_connected():
        raise ValueError("block_tree needs a connected, non-empty graph")
    if g.n == 1:
        return BlockTree((frozenset({0}),), frozenset(), (), Graph(1))
    disc = [-1] * g.n
    low = [0] * g.n
    blocks = []
    cuts = set()
    edge_stack = []
    counter = 0
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    root = 0
    disc[root] = low[root] = counter
    counter += 1
    stack = [(root, -1, 0)]
    root_children = 0
    while stack:
        v, parent, i = stack[-1]
        if i < len(nbrs[v]):
            stack[-1] = (v, parent, i + 1)
            w = nbrs[v][i]
            if disc[w] == -1:
                edge_stack.append((v, w))
                disc[w] = low[w] = counter
                counter += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, 0))
            elif w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            if parent != root:
                cuts.add(parent)
            comp = set()
            while True:
                a, b = edge_stack.pop()
                comp.update((a, b))
                if (a, b) == (parent, v):
                    break
            blocks.append(frozenset(comp))
    if root_children > 1:
        cuts.add(root)
    blocks.sort(key=lambda b: (min(b), sorted(b)))
    cut_order = tuple(sorted(cuts))
    nb = len(blocks)
    cut_index = {c: nb + j for j, c in enumerate(cut_order)}
    tree_edges = [(i, cut_index[c]) for i, b in enumerate(blocks) for c in sorted(b & cuts)]
    return BlockTree(tuple(blocks), frozenset(cuts), cut_order, Graph(nb + len(cut_order), tree_edges))


def is_biconnected(g: Graph) -> bool:
    return g.n >= 3 and g.is_connected() and len(block_tree(g).blocks) == 1


@dataclass(frozen=True)
class EliminationOrdering:
    """Perfect elimination ordering; ``omega`` is the clique number."""

    order: tuple[int, ...]
    omega: int


def chordal_elimination(g: Graph):
    """Maximum cardinality search; a PEO if g is chordal, else Rejected."""
    if g.n == 0:
        return EliminationOrdering((), 0)
    weight = [0] * g.n
    buckets: list[set[int]] = [set(range(g.n))]
    numbered = [False] * g.n
    visit = []
    top = 0
    for _ in range(g.n):
        while not buckets[top]:
            top -= 1
        v = min(buckets[top])
        buckets[top].remove(v)
        numbered[v] = True
        visit.append(v)
        for w in g.neighbors(v):
            if not numbered[w]:
                buckets[weight[w]].discard(w)
                weight[w] += 1
                if weight[w] == len(buckets):
                    buckets.append(set())
                buckets[weight[w]].add(w)
                top = max(top, weight[w])
    order = visit[::-1]
    pos = {v: i for i, v in enumerate(order)}
    later = [set() for _ in range(g.n)]
    for v in range(g.n):
        later[v] = {w for w in g.neighbors(v) if pos[w] > pos[v]}
    omega = 1
    for v in order:
        ln = later[v]
        omega = max(omega, len(ln) + 1)
        if not ln:
            continue
        p = min(ln, key=pos.__getitem__)
        missing = ln - {p} - later[p]
        if missing:
            return Rejected(f"not chordal: later neighbors of {v} miss edge {p}-{min(missing)}")
    return EliminationOrdering(tuple(order), omega)


def _bfs_far(g: Graph, s: int):
    parent = {s: None}
    queue = deque([s])
    last = s
    while queue:
        last = queue.popleft()
        for w in sorted(g.neighbors(last)):
            if w not in parent:
                parent[w] = last
                queue.append(w)
    return last, parent


def tree_longest_path(tree: Graph) -> PathWitness:
    """Diameter path of a tree by two breadth-first sweeps."""
    if tree.n == 0 or tree.m != tree.n - 1 or not tree.is_connected():
        raise ValueError("input is not a tree")
    a, _ = _bfs_far(tree, 0)
    b, parent = _bfs_far(tree, a)
    out = [b]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return PathWitness(tuple(out), True)


# --- text formats -----------------------------------------------------------

def _lines(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer, got {tok!r}", lineno) from None


def parse_graph(text) -> Graph:
    n = m = None
    edges = []
    seen = set()
    for lineno, parts in _lines(text):
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            n, m = _int(parts[1], lineno), _int(parts[2], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative count in header", lineno)
        elif tag == "e":
            if n is None:
                raise ParseError("edge before header", lineno)
            if len(parts) != 3:
                raise ParseError("edge must be 'e <u> <v>'", lineno)
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
            if u > v:
                raise ParseError("edge endpoints must satisfy u < v", lineno)
            if (u, v) in seen:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            seen.add((u, v))
            edges.append((u, v))
        else:
            raise ParseError(f"unknown record {tag!r}", lineno)
    if n is None:
        raise ParseError("missing header 'p <n> <m>'")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_path_witness(text) -> PathWitness:
    records = list(_lines(text))
    if len(records) != 1:
        raise ParseError("expected exactly one 'path' line")
    lineno, parts = records[0]
    if parts[0] != "path" or len(parts) < 3 or parts[1] not in ("induced", "plain"):
        raise ParseError("expected 'path <induced|plain> <v0> ...'", lineno)
    return PathWitness(tuple(_int(t, lineno) for t in parts[2:]), parts[1] == "induced")


def any_edge_path(g: Graph, vertices: Iterable[int] | None = None) -> PathWitness:
    """An edge (size-2 induced path) inside ``vertices``, or a single vertex."""
    pool = sorted(vertices) if vertices is not None else range(g.n)
    allowed = set(pool)
    for u in pool:
        for w in sorted(g.neighbors(u)):
            if w in allowed:
                return PathWitness((u, w), True)
    if not pool:
        raise ValueError("empty vertex set")
    return PathWitness((pool[0],), True)

