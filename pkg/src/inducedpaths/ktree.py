"""k-tree recognition, the labeled clique tree, and induced-path extraction in k-trees.

The labeled tree has one node per vertex outside the base clique ``K0`` plus
a synthetic root. A vertex ``x`` added on top of the k-clique ``Q`` hangs
below the node owning ``Q`` and owns the k cliques ``(Q + x) - y``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CertificateError, PreconditionError
from .graph import (
    Graph,
    PathWitness,
    Rejected,
    any_edge_path,
    tree_longest_path,
    verify_path_witness,
)

ROOT = -1


@dataclass(frozen=True)
class SimplicialOrdering:
    k: int
    basis: tuple[int, ...]
    order: tuple[int, ...]
    parent_clique: dict[int, frozenset[int]] = field(repr=False)


def _is_clique(adj, vertices) -> bool:
    vs = list(vertices)
    return all(b in adj[a] for a, b in combinations(vs, 2))


def _peel(adj: dict[int, set[int]], k: int, keep: set[int], stop_at: int):
    """Remove k-simplicial vertices outside ``keep`` (lowest id first) in place.

    Stops when ``stop_at`` vertices remain or no removable vertex is left.
    Returns the removal sequence as (vertex, neighborhood) pairs.
    """
    heap = [v for v in adj if v not in keep and len(adj[v]) == k]
    heapq.heapify(heap)
    removed = []
    while heap and len(adj) > stop_at:
        x = heapq.heappop(heap)
        if x not in adj or len(adj[x]) != k or not _is_clique(adj, adj[x]):
            continue
        nbhd = frozenset(adj.pop(x))
        for y in nbhd:
            adj[y].discard(x)
            if y not in keep and len(adj[y]) == k:
                heapq.heappush(heap, y)
        removed.append((x, nbhd))
    return removed


def _recognize(adj: dict[int, set[int]], k: int, basis=None):
    n = len(adj)
    m = sum(len(s) for s in adj.values()) // 2
    if k < 1:
        return Rejected("k must be at least 1")
    if n < k:
        return Rejected(f"fewer than {k} vertices")
    if m != k * (n - k) + k * (k - 1) // 2:
        return Rejected(f"edge count {m} does not match a {k}-tree on {n} vertices")
    keep = set()
    if basis is not None:
        keep = set(basis)
        if len(keep) != k or not keep <= adj.keys() or not _is_clique(adj, keep):
            return Rejected("basis is not a k-clique")
    work = {v: set(s) for v, s in adj.items()}
    removed = _peel(work, k, keep, k)
    if len(work) != k:
        return Rejected(f"no removable {k}-simplicial vertex with {len(work)} vertices left")
    if not _is_clique(work, work):
        return Rejected("remaining base is not a clique")
    base = tuple(sorted(work))
    order = base + tuple(x for x, _ in reversed(removed))
    return SimplicialOrdering(k, base, order, {x: q for x, q in removed})


def recognize_ktree(g: Graph, k: int, basis=None):
    """A k-simplicial ordering of g (with the given basis), or Rejected."""
    return _recognize(g.adjacency(), k, basis)


def _check_plain_path(g: Graph, p: PathWitness):
    verdict = verify_path_witness(g, PathWitness(p.vertices, False))
    if not verdict:
        raise PreconditionError(f"invalid path witness: {verdict.reason}")


def _prune(adj, k, p_vertices):
    _peel(adj, k, set(p_vertices), k)


def prune_to_minimal(g: Graph, k: int, p: PathWitness) -> tuple[Graph, list[int]]:
    """Drop k-simplicial vertices off ``p`` until none is left.

    Returns the pruned k-tree relabeled densely and the host ids of its vertices.
    """
    _check_plain_path(g, p)
    ordering = recognize_ktree(g, k)
    if not ordering:
        raise PreconditionError(ordering.reason)
    adj = g.adjacency()
    _prune(adj, k, p.vertices)
    return Graph.from_adjacency(adj)


@dataclass(frozen=True)
class LabeledTree:
    k: int
    base: frozenset[int]
    parent: dict[int, int]
    labels: dict[int, tuple[frozenset[int], ...]]
    parent_clique: dict[int, frozenset[int]]

    @property
    def nodes(self) -> list[int]:
        return [ROOT] + sorted(self.parent)

    def children(self, node: int) -> list[int]:
        return sorted(v for v, u in self.parent.items() if u == node)

    def degrees(self) -> dict[int, int]:
        deg = {v: 1 for v in self.parent}
        deg[ROOT] = 0
        for u in self.parent.values():
            deg[u] += 1
        return deg

    def as_graph(self) -> tuple[Graph, list[int]]:
        """Tree as a Graph; ``ids[i]`` is the node (ROOT or a vertex) of index i."""
        ids = self.nodes
        index = {v: i for i, v in enumerate(ids)}
        return Graph(len(ids), [(index[v], index[u]) for v, u in self.parent.items()]), ids

    def to_text(self) -> str:
        def fmt(node):
            return "root" if node == ROOT else str(node)

        lines = []
        for node in self.nodes:
            cliques = ";".join(",".join(map(str, sorted(c))) for c in self.labels[node])
            parent = "-" if node == ROOT else fmt(self.parent[node])
            lines.append(f"node {fmt(node)} parent {parent} label {{{cliques}}}")
        return "\n".join(lines) + "\n"


def _labeled_tree(adj, k, base) -> LabeledTree:
    ordering = _recognize(adj, k, base)
    if not ordering:
        raise PreconditionError(ordering.reason)
    base = frozenset(ordering.basis)
    owner = {base: ROOT}
    parent, labels, pclique = {}, {ROOT: (base,)}, {}
    for x in ordering.order[k:]:
        q = ordering.parent_clique[x]
        parent[x] = owner[q]
        pclique[x] = q
        own = tuple(frozenset(q | {x}) - {y} for y in sorted(q))
        labels[x] = own
        for c in own:
            owner[c] = x
    return LabeledTree(k, base, parent, labels, pclique)


def build_labeled_tree(g: Graph, k: int, base) -> LabeledTree:
    adj = g.adjacency()
    base = frozenset(base)
    if len(base) != k or not _is_clique(adj, base):
        raise PreconditionError("K0 is not a k-clique")
    return _labeled_tree(adj, k, base)


def check_labeled_tree(tree: LabeledTree, g: Graph) -> list[str]:
    """Violated structural properties of the tree (empty when all hold)."""
    problems = []
    k = tree.k
    if tree.labels[ROOT] != (tree.base,):
        problems.append("root label is not {K0}")
    if set(tree.parent) != set(range(g.n)) - tree.base:
        problems.append("non-root nodes differ from V(G) minus K0")
    seen = {}
    for node, label in tree.labels.items():
        if node != ROOT and (len(label) != k or any(node not in c for c in label)):
            problems.append(f"label of {node} is not k cliques through it")
        for c in label:
            if len(c) != k or not _is_clique(g.adjacency(), c):
                problems.append(f"label of {node} holds a non-clique")
            if c in seen:
                problems.append(f"clique {sorted(c)} labels {seen[c]} and {node}")
            seen[c] = node
    for v, u in tree.parent.items():
        hosts = [c for c in tree.labels[u] if all(g.has_edge(v, w) for w in c)]
        if not any(all(c <= host | {v} for c in tree.labels[v]) for host in hosts):
            problems.append(f"child {v} not attached to a clique of {u}")
    return problems


@dataclass
class Slide:
    """Outcome of sliding a k-clique along a path of the labeled tree.

    ``paths`` are the k vertex-disjoint induced paths; ``lead`` and ``tail``
    are the extra vertices of the first and last (k+1)-clique, adjacent to the
    first, respectively last, vertex of every path. ``simplices`` lists the
    (k+1)-cliques actually used, consecutive ones sharing k vertices.
    """

    lead: int | None
    paths: list[list[int]]
    tail: int | None
    simplices: list[frozenset[int]]

    def closed(self, j: int) -> list[int]:
        out = list(self.paths[j])
        if self.lead is not None:
            out.insert(0, self.lead)
        if self.tail is not None:
            out.append(self.tail)
        return out


def slide_cliques(tree: LabeledTree, node_path, adj) -> Slide:
    """Build k disjoint induced paths whose heads form a sliding k-clique.

    Each tree node ``x`` stands for the (k+1)-clique ``Q_x + x``; neighboring
    nodes share a k-clique. The heads sit on the shared clique of the current
    pair of nodes and move one vertex at a time. When the path turns at a
    node whose two tree neighbours hang on different cliques, the heads pass
    through an intermediate clique of that node.
    """
    k = tree.k
    nodes = [v for v in node_path if v != ROOT]
    cliques = [tree.parent_clique[v] | {v} for v in nodes]
    if len(cliques) < 2:
        return Slide(None, [], None, cliques)
    shared = [cliques[i] & cliques[i + 1] for i in range(len(cliques) - 1)]
    for s in shared:
        if len(s) != k:
            raise CertificateError("consecutive tree nodes do not share a k-clique")
    heads = sorted(shared[0])
    paths = [[h] for h in heads]
    used = [frozenset(cliques[0])]
    lead = next(iter(cliques[0] - shared[0]))
    placed = set(heads) | {lead}
    for i in range(len(shared) - 1):
        cur, nxt = shared[i], shared[i + 1]
        if cur == nxt:
            continue
        (out,) = cur - nxt
        (new,) = nxt - cur
        j = heads.index(out)
        if new in placed:
            raise CertificateError(f"vertex {new} re-enters the sliding clique")
        # new vertex may only see the current heads among vertices placed so far
        seen = adj[new] & placed
        if not seen <= cur:
            raise CertificateError(f"vertex {new} sees {sorted(seen - cur)} off the heads")
        paths[j].append(new)
        heads[j] = new
        placed.add(new)
        used.append(frozenset(cur | nxt))
    tail = next(iter(cliques[-1] - shared[-1]))
    if adj[tail] & placed != set(shared[-1]) or tail in placed:
        raise CertificateError("last clique vertex sees more than the final heads")
    used.append(frozenset(cliques[-1]))
    if set(heads) != set(shared[-1]):
        raise CertificateError("heads drifted off the shared clique")
    return Slide(lead, paths, tail, used)


def ktree_bound(n: int, k: int) -> float:
    if n - k - 1 <= 0:
        return -math.inf
    return math.log2(n - k - 1) / (k * math.log2(k))


def _best_closed(slide: Slide, g: Graph) -> PathWitness:
    best = None
    for j in range(len(slide.paths)):
        w = PathWitness(tuple(slide.closed(j)), True)
        verdict = verify_path_witness(g, w)
        if not verdict:
            raise CertificateError(f"sliding path {j} not induced: {verdict.reason}")
        if best is None or w.size > best.size:
            best = w
    return best


def tree_path(adj, k, p_vertices):
    """Prune in place, build the labeled tree and return (tree, longest node path)."""
    _prune(adj, k, p_vertices)
    ordering = _recognize(adj, k)
    if not ordering:
        raise CertificateError(f"pruned graph is not a {k}-tree: {ordering.reason}")
    tree = _labeled_tree(adj, k, ordering.basis)
    worst = max(tree.degrees().values())
    if worst > k * k + 1:
        raise CertificateError(f"labeled tree node of degree {worst} > k^2+1")
    tgraph, ids = tree.as_graph()
    node_path = [ids[i] for i in tree_longest_path(tgraph).vertices]
    return tree, node_path


def extract_induced_path_ktree(g: Graph, k: int, p: PathWitness) -> PathWitness:
    """Certified induced path of size >= log2(n-k-1)/(k log2 k) in a k-tree.

    ``n`` is the size of the given path. Inputs with n < k+3 get an edge.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2")
    _check_plain_path(g, p)
    ordering = recognize_ktree(g, k)
    if not ordering:
        raise PreconditionError(f"not a {k}-tree: {ordering.reason}")
    n = p.size
    if n < k + 3:
        return any_edge_path(g)
    adj = g.adjacency()
    tree, node_path = tree_path(adj, k, p.vertices)
    slide = slide_cliques(tree, node_path, adj)
    if slide.paths:
        best = _best_closed(slide, g)
    else:
        best = any_edge_path(g, slide.simplices[0])
    if best.size < 2:
        best = any_edge_path(g, slide.simplices[0])
    bound = ktree_bound(n, k)
    if best.size < bound:
        raise CertificateError(f"k-tree extraction size {best.size} below bound {bound:.3f}")
    return best
