"""Acceptance suite: eleven criteria checked against a frozen fixture of expected values."""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable

from .errors import CertificateError, PreconditionError
from .extractors import ALGORITHMS, run
from .extremal import chordal_tower, doubling, planar_substitution, stacked, tower_bound
from .graph import PathWitness, chordal_elimination, verify_path_witness
from .interval import f1_bound, interval_pipeline, rep_from_pairs, staircase
from .ktree import extract_induced_path_ktree, ktree_bound
from .oracle import SearchBudget, longest_induced_path_exact, longest_path_exact
from .outerplanar import Bracelet, extract_bracelet, extract_outerplanar, outerplanar_bound, triangulate_outerplanar
from .randgraphs import doubling_chain, random_interval_rep, soundness_corpus, thinned_doubling
from .tw2 import PARTIAL_2TREE, compose_over_blocks, extract_partial_2tree, tw2_bound


def load_fixture(path=None) -> dict:
    if path is None:
        return json.loads(resources.files("inducedpaths").joinpath("data/acceptance.json").read_text())
    with open(path) as fh:
        return json.load(fh)


class Failure(Exception):
    pass


def _expect(cond: bool, msg: str):
    if not cond:
        raise Failure(msg)


def _certified(g, w: PathWitness, what: str):
    verdict = verify_path_witness(g, w)
    _expect(bool(verdict) and w.claims_induced, f"{what}: certificate rejected ({verdict.reason})")


def c1_doubling(fx):
    sizes = []
    for key, want in fx["doubling_lip"].items():
        fi = doubling(int(key))
        _expect(fi.graph.n == fx["doubling_n"][key], f"i={key}: n={fi.graph.n}, expected {fx['doubling_n'][key]}")
        res = longest_induced_path_exact(fi.graph)
        _expect(res.optimal, f"i={key}: oracle hit its budget")
        _expect(res.size == want, f"i={key}: lip={res.size}, expected {want}")
        sizes.append(res.size)
    return f"lip {sizes}"


def c2_ktree(fx):
    sizes = []
    for i in range(fx["ktree_levels"] + 1):
        fi = doubling(i)
        w = extract_induced_path_ktree(fi.graph, 2, fi.ham_path)
        _certified(fi.graph, w, f"i={i}")
        n = fi.graph.n
        lo = ktree_bound(n, 2) if n > 3 else -math.inf
        _expect(lo <= w.size <= 2 * (i + 1), f"i={i}: size {w.size} outside [{lo:.3f}, {2 * (i + 1)}]")
        sizes.append(w.size)
    return f"sizes {sizes}"


def c3_partial_2tree(fx):
    cfg = fx["thinned"]
    levels = cfg["levels"]
    checked = 0
    for j in range(cfg["count"]):
        i = levels[j % len(levels)]
        g, p = thinned_doubling(i, seed=j)
        w = extract_partial_2tree(g, p)
        _certified(g, w, f"instance {j}")
        _expect(w.size >= tw2_bound(g.n), f"instance {j}: size {w.size} < {tw2_bound(g.n):.3f}")
        if g.n <= cfg["oracle_max_n"]:
            best = longest_induced_path_exact(g).size
            _expect(w.size <= best, f"instance {j}: size {w.size} exceeds oracle {best}")
            checked += 1
    return f"{cfg['count']} instances, {checked} oracle-checked"


def c4_outerplanar(fx):
    sizes = []
    for i in fx["outerplanar_levels"]:
        g = doubling(i).graph
        tp = triangulate_outerplanar(g)
        dual = tp.weak_dual
        _expect(dual.n == g.n - 2, f"i={i}: weak dual has {dual.n} nodes, expected {g.n - 2}")
        top = max((dual.degree(v) for v in range(dual.n)), default=0)
        _expect(top <= 3, f"i={i}: weak dual degree {top}")
        w = extract_outerplanar(g)
        _certified(g, w, f"i={i}")
        _expect(w.size >= outerplanar_bound(g.n), f"i={i}: size {w.size} < {outerplanar_bound(g.n):.3f}")
        sizes.append(w.size)
    return f"sizes {sizes}"


def c5_bracelet(fx):
    cfg = fx["bracelet_blocks"]
    out = []
    for b in cfg["counts"]:
        chain = doubling_chain(cfg["level"], b)
        w, branch, bound = extract_bracelet(Bracelet.from_graph(chain.graph), detail=True)
        _certified(chain.graph, w, f"b={b}")
        _expect(w.size >= bound, f"b={b}: size {w.size} < branch-{branch} bound {bound:.3f}")
        out.append(f"b={b}:{w.size}/{bound:.2f}")
    return " ".join(out)


def _hamiltonian_interval(rng, n):
    while True:
        rep = rep_from_pairs(random_interval_rep(rng, n, n // 2 + 3))
        g = rep.graph()
        if not g.is_connected():
            continue
        res = longest_path_exact(g, SearchBudget(max_nodes=20_000, max_millis=2_000))
        if res.size == n:
            return g, rep, res.witness


def c6_interval(fx):
    for key, want in fx["interval_full_path"].items():
        n = int(key)
        rep = staircase(n, width=3, reach=4)
        g = rep.graph()
        tr = interval_pipeline(g, rep, PathWitness(tuple(range(n)), False), detail=True)
        _certified(g, tr.witness, f"k=2 n={n}")
        _expect(tr.k == 2 and tr.witness.size == want, f"k=2 n={n}: size {tr.witness.size}, expected {want}")
    finals = []
    for n in fx["interval_staircase"]:
        rep = staircase(n)
        g = rep.graph()
        tr = interval_pipeline(g, rep, PathWitness(tuple(range(n)), False), detail=True)
        _certified(g, tr.witness, f"staircase n={n}")
        _expect(tr.k == 3, f"staircase n={n}: clique number {tr.k}")
        m1, m2, m3 = len(tr.f1), len(tr.f2), tr.witness.size
        _expect(m1 >= f1_bound(n, 3), f"n={n}: f1 {m1} < {f1_bound(n, 3):.3f}")
        _expect(m2 >= math.sqrt(m1), f"n={n}: f2 {m2} < sqrt({m1})")
        _expect(m3 >= math.sqrt(m2 / 3), f"n={n}: f3 {m3} < sqrt({m2}/3)")
        finals.append(m3)
    cfg = fx["interval_random"]
    rng = random.Random(0)
    for j in range(cfg["count"]):
        g, rep, p = _hamiltonian_interval(rng, rng.randint(4, cfg["max_n"]))
        w = interval_pipeline(g, rep, p)
        _certified(g, w, f"random {j}")
        best = longest_induced_path_exact(g).size
        _expect(w.size <= best, f"random {j}: size {w.size} exceeds oracle {best}")
    return f"staircase sizes {finals}, {cfg['count']} random ok"


def c7_planar_substitution(fx):
    got = []
    bad = []
    for key, want in fx["planar_substitution_lip"].items():
        k, i = map(int, key.split(","))
        fi = planar_substitution(k, i)
        res = longest_induced_path_exact(fi.graph)
        _expect(res.optimal, f"(k={k}, i={i}): oracle hit its budget")
        got.append(f"({k},{i})={res.size}")
        if res.size != want:
            bad.append(f"(k={k}, i={i}) measured {res.size}, expected {want}")
    _expect(not bad, "; ".join(bad))
    return " ".join(got)


def c8_stacked(fx):
    got = []
    bad = []
    for key, want in fx["stacked_lip"].items():
        fi = stacked(int(key))
        res = longest_induced_path_exact(fi.graph)
        _expect(res.optimal, f"i={key}: oracle hit its budget")
        got.append(f"i={key}:{res.size}")
        if res.size != want:
            bad.append(f"i={key} (n={fi.graph.n}) measured {res.size}, expected {want}")
    _expect(not bad, "; ".join(bad))
    return " ".join(got)


def c9_towers(fx):
    out = []
    for t, k, seed_i in fx["towers"]:
        fi = chordal_tower(t, k, seed_i)
        g = fi.graph
        elim = chordal_elimination(g)
        _expect(bool(elim), f"(t={t}, k={k}): not chordal")
        _expect(elim.omega == 2 * t + 1, f"(t={t}, k={k}): omega {elim.omega}, expected {2 * t + 1}")
        _expect(bool(verify_path_witness(g, fi.ham_path)) and fi.ham_path.size == g.n,
                f"(t={t}, k={k}): Hamiltonian witness rejected")
        res = longest_induced_path_exact(g)
        bound = tower_bound(t, k, seed_i)
        _expect(res.size <= bound, f"(t={t}, k={k}): lip {res.size} > {bound:.3f}")
        out.append(f"(t={t},k={k}) n={g.n} lip={res.size}<={bound:.2f}")
    return " ".join(out)


def c10_compose(fx):
    out = []
    for i, count in fx["compose_chains"]:
        chain = doubling_chain(i, count)
        c = compose_over_blocks(chain.graph, chain.path, PARTIAL_2TREE, detail=True)
        _certified(chain.graph, c.witness, f"G_{i} x{count}")
        _expect(c.witness.size >= c.bound,
                f"G_{i} x{count}: size {c.witness.size} < branch-{c.branch} bound {c.bound:.3f}")
        out.append(f"G_{i}x{count}:b{c.branch}:{c.witness.size}")
    return " ".join(out)


def c11_sweep(fx):
    cfg = fx["sweep"]
    runs = 0
    for label, g, rep in soundness_corpus(0, cfg["count"], cfg["max_n"]):
        _expect(g.n <= cfg["max_n"], f"{label}: n={g.n} too large")
        best = longest_induced_path_exact(g)
        _expect(best.optimal, f"{label}: oracle hit its budget")
        p = longest_path_exact(g).witness if g.is_connected() else None
        for algo in ALGORITHMS:
            if algo == "interval" and rep is None:
                continue
            if p is None and algo != "bracelet" and algo != "outerplanar":
                continue
            try:
                ex = run(algo, g, p, rep)
            except PreconditionError:
                continue
            except CertificateError as exc:
                raise Failure(f"{label} {algo}: {exc}") from exc
            _certified(g, ex.witness, f"{label} {algo}")
            _expect(ex.witness.size <= best.size, f"{label} {algo}: size {ex.witness.size} > oracle {best.size}")
            runs += 1
    return f"{cfg['count']} graphs, {runs} extractor runs"


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    check: Callable[[dict], str]
    limit_s: float


CRITERIA = (
    Criterion(1, "doubling family exactness", c1_doubling, 60),
    Criterion(2, "k-tree extraction bound", c2_ktree, 30),
    Criterion(3, "partial 2-tree bound", c3_partial_2tree, 60),
    Criterion(4, "outerplanar bound", c4_outerplanar, 10),
    Criterion(5, "bracelet bound", c5_bracelet, 10),
    Criterion(6, "interval pipeline", c6_interval, 120),
    Criterion(7, "planar substitution family", c7_planar_substitution, 120),
    Criterion(8, "stacked triangulations", c8_stacked, 60),
    Criterion(9, "chordal towers", c9_towers, 60),
    Criterion(10, "block composition", c10_compose, 10),
    Criterion(11, "soundness sweep", c11_sweep, 120),
)


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return (f"{tag} criterion {self.criterion.number} ({self.criterion.name}) "
                f"{self.seconds:.2f}s/{self.criterion.limit_s:.0f}s: {self.detail}")


def run_criterion(c: Criterion, fixture: dict) -> Outcome:
    start = time.perf_counter()
    try:
        detail = c.check(fixture)
        ok = True
    except (Failure, CertificateError, PreconditionError, KeyError, ValueError, TypeError) as exc:
        detail, ok = f"{type(exc).__name__}: {exc}", False
    secs = time.perf_counter() - start
    if ok and secs > c.limit_s:
        ok, detail = False, f"runtime {secs:.1f}s over the {c.limit_s:.0f}s limit; {detail}"
    return Outcome(c, ok, detail, secs)


def run_all(fixture: dict | None = None, only=None, echo=None) -> list[Outcome]:
    fixture = load_fixture() if fixture is None else fixture
    results = []
    for c in CRITERIA:
        if only and c.number not in only:
            continue
        res = run_criterion(c, fixture)
        if echo:
            echo(res.line())
        results.append(res)
    return results
