"""Exact longest (induced) path search by branch-and-bound over bitsets."""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, PathWitness


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**7
    max_millis: int = 60_000

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_millis <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class OracleResult:
    witness: PathWitness
    optimal: bool
    nodes: int
    millis: int

    @property
    def size(self) -> int:
        return self.witness.size

    def to_line(self, timing: bool = True) -> str:
        status = "optimal" if self.optimal else "budget"
        return f"lip {self.size} {status} {self.millis if timing else 0}"


class _BudgetExceeded(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, budget: SearchBudget):
        self.adj = g.masks
        self.n = g.n
        self.budget = budget
        self.nodes = 0
        self.start = time.perf_counter()
        self.deadline = self.start + budget.max_millis / 1000
        self.best: list[int] = []

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetExceeded
        if self.nodes & 1023 == 0 and time.perf_counter() > self.deadline:
            raise _BudgetExceeded

    def reach(self, v: int, allowed: int) -> int:
        """Number of vertices reachable from v inside ``allowed`` (v excluded)."""
        adj = self.adj
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                nxt |= adj[low.bit_length() - 1]
                frontier ^= low
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen.bit_count() - 1

    def millis(self) -> int:
        return int((time.perf_counter() - self.start) * 1000)


def _root_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def _run(search: _Search, g: Graph, body, claims_induced: bool) -> OracleResult:
    optimal = True
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * g.n + 1000))
    try:
        body()
    except _BudgetExceeded:
        optimal = False
    finally:
        sys.setrecursionlimit(limit)
    return OracleResult(PathWitness(tuple(search.best), claims_induced), optimal, search.nodes, search.millis())


def longest_induced_path_exact(g: Graph, budget: SearchBudget | None = None) -> OracleResult:
    """Longest induced path; ``optimal`` is False when the budget ran out first."""
    budget = budget or SearchBudget()
    s = _Search(g, budget)
    adj = s.adj
    full = (1 << g.n) - 1
    path: list[int] = []

    def extend(head: int, blocked: int):
        # blocked: on the path, or adjacent to a non-head path vertex
        s.tick()
        if len(path) > len(s.best):
            s.best = list(path)
            if len(s.best) == g.n:
                return True
        cand = adj[head] & ~blocked
        if not cand:
            return False
        grown = blocked | adj[head]
        allowed = full & ~grown
        if len(path) + 1 + allowed.bit_count() <= len(s.best):
            return False
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            if len(path) + 1 + s.reach(w, allowed) <= len(s.best):
                continue
            path.append(w)
            done = extend(w, grown | low)
            path.pop()
            if done:
                return True
        return False

    def body():
        for r in _root_order(g):
            path.append(r)
            done = extend(r, 1 << r)
            path.pop()
            if done:
                return

    return _run(s, g, body, True)


def longest_path_exact(g: Graph, budget: SearchBudget | None = None) -> OracleResult:
    """Longest simple path; stops early once a Hamiltonian path is found."""
    budget = budget or SearchBudget()
    s = _Search(g, budget)
    adj = s.adj
    full = (1 << g.n) - 1
    path: list[int] = []

    def extend(head: int, used: int):
        s.tick()
        if len(path) > len(s.best):
            s.best = list(path)
            if len(s.best) == g.n:
                return True
        free = full & ~used
        if len(path) + s.reach(head, free) <= len(s.best):
            return False
        cand = adj[head] & free
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            done = extend(w, used | low)
            path.pop()
            if done:
                return True
        return False

    def body():
        for r in _root_order(g):
            path.append(r)
            done = extend(r, 1 << r)
            path.pop()
            if done:
                return

    return _run(s, g, body, False)


def brute_force_lip(g: Graph) -> int:
    """Largest vertex subset inducing a path, by plain subset enumeration (small n only)."""
    if g.n == 0:
        return 0
    best = 1
    for size in range(2, g.n + 1):
        found = False
        for subset in combinations(range(g.n), size):
            h, _ = g.induced(subset)
            if h.m == size - 1 and max(h.degree(v) for v in h.vertices()) <= 2 and h.is_connected():
                found = True
                break
        if not found:
            break
        best = size
    return best
