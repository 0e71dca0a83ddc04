"""Corpus-level inequality checkers and their reports.

Statements split into two kinds:

* assertable for every n (``lemma1``, ``lemma2``, ``fact2``,
  ``triangle_threshold``, ``theorem3`` with strict parameters, and the
  triangle part of ``theorem1``): a failure is a defect and carries the
  counterexample graph;
* asymptotic (``fact1``, ``theorem1`` for t >= 4, ``theorem2`` in search
  mode): reported as observations and never fail a run.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import cycles as cyc
from .constructions import FamilySpec, derive_seed, join_mu
from .extremal import ParameterError, ProcedureParams, check_theorem3_conclusion, premise_check, run_procedure_p
from .graph import Graph, induced_subgraph, is_bipartite, min_degree, to_edge_list, triangle_count
from .spectral import SLACK_TOL, NotApplicable, lemma1_check, lemma2_check, spectral_radius

STATEMENTS = ("lemma1", "lemma2", "fact2", "triangle_threshold", "theorem3", "theorem1", "theorem2", "fact1")
ASSERTABLE = {"lemma1", "lemma2", "fact2", "triangle_threshold", "theorem3", "theorem1"}
THETA_MAX = 2.0 ** -16

PASS, FAIL, NA, OBSERVED = "pass", "fail", "na", "observed"


@dataclass
class InstanceResult:
    graph_id: str
    status: str
    slack: float | None = None
    witnesses: dict = field(default_factory=dict)
    counterexample: str | None = None

    def to_dict(self) -> dict:
        d = {"graph_id": self.graph_id, "status": self.status, "slack": self.slack}
        if self.witnesses:
            d["witnesses"] = self.witnesses
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class CheckReport:
    statement: str
    corpus: list[dict]
    seed: int | None
    results: list[InstanceResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, NA: 0, OBSERVED: 0}
        for r in self.results:
            counts[r.status] += 1
        counts["total"] = len(self.results)
        return counts

    @property
    def failed(self) -> bool:
        return self.summary[FAIL] > 0

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "statement": self.statement,
            "corpus": self.corpus,
            "seed": self.seed,
            "results": [r.to_dict() for r in sorted(self.results, key=lambda r: r.graph_id)],
            "summary": self.summary,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, timing: bool = False) -> str:
        """Canonical JSON; wall time is left out unless asked so that equal
        seeds give byte-identical output."""
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["statement", "seed", "total", PASS, FAIL, NA, OBSERVED, "min_slack"])
        s = self.summary
        slacks = [r.slack for r in self.results if r.slack is not None]
        w.writerow([self.statement, self.seed, s["total"], s[PASS], s[FAIL], s[NA], s[OBSERVED],
                    repr(min(slacks)) if slacks else ""])
        return buf.getvalue()


def _status(slack: float) -> str:
    return PASS if slack >= -SLACK_TOL else FAIL


def _result(graph_id: str, g: Graph, slack: float, **witnesses) -> InstanceResult:
    status = _status(slack)
    return InstanceResult(graph_id, status, float(slack), witnesses,
                          to_edge_list(g) if status == FAIL else None)


# ---------------------------------------------------------------------------
# per-graph checkers
# ---------------------------------------------------------------------------

def fact2_bound(mu: float, n: int) -> float:
    return (mu / n - 0.5) * n ** 3 / 12


def fact2_check(g: Graph, graph_id: str = "g", mu: float | None = None) -> InstanceResult:
    """k3(G) >= (mu/n - 1/2) n^3 / 12."""
    if g.n == 0:
        return InstanceResult(graph_id, NA)
    mu = spectral_radius(g).mu if mu is None else mu
    k3 = triangle_count(g)
    return _result(graph_id, g, k3 - fact2_bound(mu, g.n), triangles=k3, mu=mu)


def lemma1_instance(g: Graph, graph_id: str = "g") -> InstanceResult:
    try:
        c = lemma1_check(g)
    except NotApplicable as exc:
        return InstanceResult(graph_id, NA, witnesses={"reason": str(exc)})
    return _result(graph_id, g, c.slack, min_entry=c.lhs, bound=c.rhs, equality=c.equality)


def lemma2_instance(g: Graph, graph_id: str = "g") -> InstanceResult:
    if g.n < 2:
        return InstanceResult(graph_id, NA, witnesses={"reason": "n < 2"})
    c = lemma2_check(g)
    return _result(graph_id, g, c.slack, u=c.u, x_u=c.x_u, c=c.c, mu=c.mu_full,
                   mu_minus=c.mu_minus, rhs=c.rhs, equality=c.equality)


def triangle_threshold_instance(g: Graph, graph_id: str = "g") -> InstanceResult:
    """A graph with mu > sqrt(floor(n^2/4)) must contain a triangle."""
    if g.n == 0:
        return InstanceResult(graph_id, NA)
    mu = spectral_radius(g).mu
    thr = cyc.t2_threshold(g.n)
    if not mu > thr + SLACK_TOL:
        return InstanceResult(graph_id, NA, witnesses={"reason": "premise not met", "mu": mu,
                                                       "threshold": thr})
    tri = cyc.has_cycle_of_length(g, 3)
    if tri.status is cyc.CycleStatus.FOUND:
        return InstanceResult(graph_id, PASS, mu - thr, {"triangle": list(tri.witness)})
    return InstanceResult(graph_id, FAIL, mu - thr, {"mu": mu}, to_edge_list(g))


def theorem1_instance(g: Graph, graph_id: str = "g", fraction: float = 1 / 320,
                      budget: int = cyc.DEFAULT_BUDGET) -> InstanceResult:
    rep = cyc.theorem1_check(g, fraction, budget)
    w = rep.to_dict()
    if not rep.premise:
        return InstanceResult(graph_id, NA, witnesses={"reason": "premise not met", "mu": rep.mu})
    if rep.triangle_ok is False:
        return InstanceResult(graph_id, FAIL, rep.mu - rep.threshold, w, to_edge_list(g))
    return InstanceResult(graph_id, PASS, rep.mu - rep.threshold, w)


@dataclass
class Fact1Observation:
    applicable: bool
    reason: str
    t_range: tuple[int, int]
    found: list[int]
    absent: list[int]
    exhausted: list[int]

    @property
    def vacuous(self) -> bool:
        return self.applicable and self.t_range[0] > self.t_range[1]

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "reason": self.reason,
                "t_range": list(self.t_range), "found": self.found,
                "small_n_exceptions": self.absent, "budget_exhausted": self.exhausted}


def fact1_observation(g: Graph, budget: int = cyc.DEFAULT_BUDGET) -> Fact1Observation:
    """Cycle statuses for t in [4, delta + 1] on a nonbipartite graph with
    delta >= n/3.  Purely observational."""
    delta = min_degree(g) if g.n else 0
    rng = (4, delta + 1)
    if is_bipartite(g).bipartite:
        return Fact1Observation(False, "graph is bipartite", rng, [], [], [])
    if 3 * delta < g.n:
        return Fact1Observation(False, "minimum degree below n/3", rng, [], [], [])
    if rng[0] > rng[1]:
        return Fact1Observation(True, "empty length range", rng, [], [], [])
    rep = cyc.cycle_spectrum(g, rng[1], budget, t_min=4)
    return Fact1Observation(True, "", rng, rep.lengths(cyc.CycleStatus.FOUND),
                            rep.lengths(cyc.CycleStatus.ABSENT),
                            rep.lengths(cyc.CycleStatus.BUDGET_EXHAUSTED))


def fact1_instance(g: Graph, graph_id: str = "g", budget: int = cyc.DEFAULT_BUDGET) -> InstanceResult:
    obs = fact1_observation(g, budget)
    return InstanceResult(graph_id, OBSERVED if obs.applicable else NA, None, obs.to_dict())


@dataclass(frozen=True)
class StabilityCertificate:
    theta: float
    subset: tuple[int, ...]

    def __post_init__(self):
        if not 0 < self.theta < THETA_MAX:
            raise ValueError(f"theta must lie in (0, 2^-16), got {self.theta}")


@dataclass
class CertificateCheck:
    premise: bool
    bipartite: bool
    order: int
    order_bound: float
    min_degree: int
    degree_bound: float

    @property
    def order_slack(self) -> float:
        return self.order - self.order_bound

    @property
    def degree_slack(self) -> float:
        return self.min_degree - self.degree_bound

    @property
    def passed(self) -> bool:
        return self.premise and self.bipartite and self.order_slack > 0 and self.degree_slack > 0

    def to_dict(self) -> dict:
        return {"premise": self.premise, "bipartite": self.bipartite, "order": self.order,
                "order_bound": self.order_bound, "min_degree": self.min_degree,
                "degree_bound": self.degree_bound, "passed": self.passed}


def theorem2_certificate_check(g: Graph, cert: StabilityCertificate, mu: float | None = None) -> CertificateCheck:
    """Does ``cert.subset`` induce a bipartite graph with more than
    (1 - 4 theta^(1/3)) n vertices and minimum degree above
    (1/2 - 7 theta^(1/3)) n?  ``premise`` records mu(G) > (1/2 - theta) n."""
    n = g.n
    mu = spectral_radius(g).mu if mu is None else mu
    premise = mu > (0.5 - cert.theta) * n
    c = cert.theta ** (1 / 3)
    sub = induced_subgraph(g, cert.subset)
    bip = is_bipartite(sub).bipartite
    delta = min_degree(sub) if sub.n else 0
    return CertificateCheck(premise, bip, sub.n, (1 - 4 * c) * n, delta, (0.5 - 7 * c) * n)


def greedy_bipartite_extract(g: Graph) -> list[int]:
    """Large vertex set inducing a bipartite graph (heuristic).

    BFS 2-colouring, then single-vertex flips while they reduce the number of
    monochromatic edges, then repeatedly drop the vertex on the most
    monochromatic edges (lowest index on ties) until none remain.
    """
    n = g.n
    color = np.full(n, -1, dtype=np.int64)
    for root in range(n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = [root]
        for v in queue:
            for w in g.neighbors(v).tolist():
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
    src, dst = g._rows, g.indices

    def mono_counts(alive):
        same = (color[src] == color[dst]) & alive[src] & alive[dst]
        return np.bincount(src[same], minlength=n)

    alive = np.ones(n, dtype=bool)
    improved = True
    while improved:
        improved = False
        for v in range(n):
            nb = g.neighbors(v)
            same = int((color[nb] == color[v]).sum())
            if same > nb.size - same:
                color[v] = 1 - color[v]
                improved = True
    while True:
        bad = mono_counts(alive)
        if not bad.any():
            break
        alive[int(np.argmax(bad))] = False
    return np.flatnonzero(alive).tolist()


def theorem2_instance(g: Graph, graph_id: str = "g", theta: float = 1e-5) -> InstanceResult:
    cert = StabilityCertificate(theta, tuple(greedy_bipartite_extract(g)))
    chk = theorem2_certificate_check(g, cert)
    if not chk.premise:
        return InstanceResult(graph_id, NA, witnesses={"reason": "premise not met"})
    return InstanceResult(graph_id, OBSERVED, min(chk.order_slack, chk.degree_slack), chk.to_dict())


DEFAULT_THEOREM3_PARAMS = ProcedureParams(0.25, 0.5, 0.4375, 0.0, strict=True)


def theorem3_instance(g: Graph, graph_id: str = "g",
                      params: ProcedureParams = DEFAULT_THEOREM3_PARAMS) -> InstanceResult:
    try:
        trace = run_procedure_p(g, params)
    except ParameterError as exc:
        return InstanceResult(graph_id, NA, witnesses={"reason": str(exc)})
    chk = check_theorem3_conclusion(trace, params, g)
    slack = min(chk.checks.values())
    w = {"branch": trace.branch, "k": trace.k, "failures": chk.failures()}
    if chk.passed:
        return InstanceResult(graph_id, PASS, slack, w)
    status = FAIL if params.strict else OBSERVED
    return InstanceResult(graph_id, status, slack, w, to_edge_list(g) if status == FAIL else None)


# ---------------------------------------------------------------------------
# corpus-level operations
# ---------------------------------------------------------------------------

def triangle_threshold_search(corpus: Iterable[FamilySpec], seed: int | None = None) -> CheckReport:
    return run_suite("triangle_threshold", list(corpus), seed)


@dataclass
class SweepEntry:
    n: int
    k_min: int
    ratio: float
    mu_at_k_min: float
    mu_below: float | None


@dataclass
class SweepResult:
    entries: list[SweepEntry]
    limit_constant: float = (3 - math.sqrt(5)) / 4

    def to_dict(self) -> dict:
        return {"limit_constant": self.limit_constant,
                "entries": [vars(e) for e in self.entries]}


def join_exceeds_half(n: int, k: int) -> bool:
    """Exactly decide mu(K_k v E_{n-k}) > n/2 in integers.

    mu > n/2  <=>  sqrt(D) > n - k + 1 with D = (k-1)^2 + 4k(n-k).
    """
    rhs = n - k + 1
    d = (k - 1) ** 2 + 4 * k * (n - k)
    return rhs < 0 or d > rhs * rhs


def join_threshold_sweep(n_list: Iterable[int]) -> SweepResult:
    """Smallest clique size k with mu(K_k v E_{n-k}) > n/2, for each n."""
    out = []
    for n in n_list:
        if n < 4:
            raise ValueError(f"sweep needs n >= 4, got {n}")
        lo, hi = 1, n  # k = n (complete graph) always exceeds n/2 for n >= 4
        while lo < hi:
            mid = (lo + hi) // 2
            if join_exceeds_half(n, mid):
                hi = mid
            else:
                lo = mid + 1
        below = join_mu(n, lo - 1) if lo > 1 else None
        out.append(SweepEntry(n, lo, lo / n, join_mu(n, lo), below))
    return SweepResult(out)


# ---------------------------------------------------------------------------
# suite dispatcher
# ---------------------------------------------------------------------------

Checker = Callable[..., InstanceResult]

CHECKERS: dict[str, Checker] = {
    "lemma1": lemma1_instance,
    "lemma2": lemma2_instance,
    "fact2": fact2_check,
    "triangle_threshold": triangle_threshold_instance,
    "theorem3": theorem3_instance,
    "theorem1": theorem1_instance,
    "theorem2": theorem2_instance,
    "fact1": fact1_instance,
}


def expand_corpus(family: str, trials: int, seed: int, n=None, k=None, p=None) -> list[FamilySpec]:
    """``trials`` FamilySpecs; random families get per-trial child seeds."""
    from .constructions import RANDOM_FAMILIES
    if family in RANDOM_FAMILIES:
        return [FamilySpec(family, n, k, p, derive_seed(seed, i)) for i in range(trials)]
    return [FamilySpec(family, n, k, p)]


def run_suite(statement: str, corpus: list[FamilySpec | tuple[str, Graph]], seed: int | None = None,
              **options) -> CheckReport:
    """Run one statement's checker over a corpus.

    Corpus items are FamilySpecs or ``(graph_id, graph)`` pairs.  Results are
    keyed by graph id so the report does not depend on evaluation order.
    """
    if statement not in CHECKERS:
        raise ValueError(f"unknown statement {statement!r}; choose from {', '.join(STATEMENTS)}")
    check = CHECKERS[statement]
    start = time.perf_counter()
    descriptors, results = [], []
    for i, item in enumerate(corpus):
        if isinstance(item, FamilySpec):
            gid, g = f"{i:05d}:{item.label()}", item.build()
            descriptors.append(item.to_dict())
        else:
            gid, g = item
            descriptors.append({"family": "explicit", "id": gid})
        results.append(check(g, gid, **options))
    if statement not in ASSERTABLE:
        for r in results:
            if r.status == FAIL:
                r.status = OBSERVED
    return CheckReport(statement, descriptors, seed, results, time.perf_counter() - start)
