"""Uniform front for all extractors: recognition-based dispatch and bound values."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CertificateError, PreconditionError
from .graph import Graph, PathWitness, is_biconnected, verify_path_witness
from .interval import IntervalRep, interval_pipeline
from .ktree import extract_induced_path_ktree, ktree_bound, recognize_ktree
from .oracle import SearchBudget, longest_path_exact
from .outerplanar import Bracelet, extract_bracelet, extract_outerplanar, outer_cycle, outerplanar_bound
from .tw2 import PARTIAL_2TREE, compose_over_blocks, extract_partial_2tree, recognize_and_complete_tw2, tw2_bound

ALGORITHMS = ("ktree", "tw2", "tw2-connected", "outerplanar", "bracelet", "interval")
NEEDS_PATH = {"ktree", "tw2", "tw2-connected", "interval"}


@dataclass(frozen=True)
class Extraction:
    algorithm: str
    witness: PathWitness
    bound: float
    n: int
    note: str = ""

    def bound_ok(self) -> bool:
        return self.witness.size >= self.bound


def ktree_width(g: Graph) -> int | None:
    """The only k for which g can be a k-tree, from its vertex and edge counts."""
    disc = (2 * g.n - 1) ** 2 - 8 * g.m
    if disc < 0:
        return None
    root = math.isqrt(disc)
    if root * root != disc or (2 * g.n - 1 - root) % 2:
        return None
    k = (2 * g.n - 1 - root) // 2
    return k if k >= 1 else None


def default_path(g: Graph, budget: SearchBudget | None = None) -> PathWitness:
    """A long plain path from the exact search (best found within the budget)."""
    return longest_path_exact(g, budget or SearchBudget(max_nodes=200_000, max_millis=10_000)).witness


def choose_algorithm(g: Graph, have_path: bool, rep: IntervalRep | None) -> str:
    if rep is not None:
        return "interval"
    k = ktree_width(g)
    if k is not None and k >= 2 and recognize_ktree(g, k):
        return "ktree"
    bic = is_biconnected(g)
    if not have_path:
        if bic and outer_cycle(g):
            return "outerplanar"
        if g.is_connected() and g.n >= 4:
            try:
                Bracelet.from_graph(g)
                return "bracelet"
            except PreconditionError:
                pass
    if g.n >= 2 and recognize_and_complete_tw2(g):
        return "tw2" if bic else "tw2-connected"
    raise PreconditionError("no extractor applies to this graph")


def run(algo: str, g: Graph, p: PathWitness | None = None, rep: IntervalRep | None = None,
        k: int | None = None) -> Extraction:
    """Run one extractor; the witness is re-verified before it is returned."""
    if algo == "auto":
        algo = choose_algorithm(g, p is not None, rep)
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    if algo in NEEDS_PATH and p is None:
        p = default_path(g)
    note = ""
    if algo == "ktree":
        k = k or ktree_width(g)
        if k is None:
            raise PreconditionError("edge count matches no k-tree")
        w = extract_induced_path_ktree(g, k, p)
        n, bound, note = p.size, ktree_bound(p.size, k), f"k={k}"
    elif algo == "tw2":
        w = extract_partial_2tree(g, p)
        n, bound = p.size, tw2_bound(p.size)
    elif algo == "tw2-connected":
        c = compose_over_blocks(g, p, PARTIAL_2TREE, detail=True)
        w, n, bound, note = c.witness, p.size, c.bound, f"branch={c.branch} blocks={c.blocks}"
    elif algo == "outerplanar":
        w = extract_outerplanar(g)
        n, bound = g.n, outerplanar_bound(g.n)
    elif algo == "bracelet":
        w, branch, bound = extract_bracelet(Bracelet.from_graph(g), detail=True)
        n, note = g.n, f"branch={branch}"
    else:
        if rep is None:
            raise PreconditionError("interval extraction needs an interval representation")
        tr = interval_pipeline(g, rep, p, detail=True)
        w, n, bound, note = tr.witness, p.size, tr.bound, f"k={tr.k}"
    verdict = verify_path_witness(g, w)
    if not verdict or not w.claims_induced:
        raise CertificateError(f"{algo} produced an uncertified path: {verdict.reason}")
    return Extraction(algo, w, bound, n, note)
