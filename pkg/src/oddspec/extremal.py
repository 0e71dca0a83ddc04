"""Iterative deletion of the minimum Perron-entry vertex.

Starting from ``G``, while ``delta(G_k) <= (gamma - alpha)(n - k)`` and
``k < floor(beta n)``, delete the vertex whose entry in the unit Perron
vector of ``G_k`` is smallest.  Under the parameter hypotheses

    0 < 4 alpha <= 1,  0 < 2 beta <= 1,  1/2 - alpha/4 <= gamma < 1,
    K >= 0,  n >= (42 K + 4) / (alpha^2 beta),

and the premises ``mu(G) > gamma n - K/n``, ``delta(G) <= (gamma - alpha) n``,
the final graph ``H`` satisfies either

    (i)  mu(H) > gamma (1 + beta alpha / 2) |H|, or
    (ii) mu(H) > gamma |H| and delta(H) > (gamma - alpha) |H|,

and along the way ``mu(G_i)/(n-i) >= (1 + 3 i alpha / (5 n)) mu(G)/n`` and
``mu(H) > gamma (1 + 4 k alpha / (7 n)) |H|``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph, delete_vertex, induced_subgraph, min_degree
from .spectral import SLACK_TOL, ConvergenceError, argmin_entry, default_tol, spectral_radius


class ParameterError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("parameter hypotheses violated: " + "; ".join(violations))
        self.violations = violations


class ProcedureAborted(RuntimeError):
    def __init__(self, message: str, trace: "ProcedureTrace"):
        super().__init__(message)
        self.trace = trace


def _num(x) -> Fraction:
    # Exact rationals so boundary cases such as n = n_min compare exactly;
    # floats like 0.1 are read as the nearest small-denominator fraction.
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


@dataclass(frozen=True)
class ProcedureParams:
    alpha: float
    beta: float
    gamma: float
    K: float = 0.0
    strict: bool = True

    def exact(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return _num(self.alpha), _num(self.beta), _num(self.gamma), _num(self.K)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
                "K": self.K, "strict": self.strict}


@dataclass(frozen=True)
class ParamGate:
    n: int
    n_min: float
    clauses: dict[str, bool]

    @property
    def satisfied(self) -> bool:
        return all(self.clauses.values())

    @property
    def violations(self) -> list[str]:
        return [name for name, ok in self.clauses.items() if not ok]


def validate_params(p: ProcedureParams, n: int) -> ParamGate:
    """Check each hypothesis separately; strict mode raises on any violation."""
    a, b, g, k = p.exact()
    n_min = (42 * k + 4) / (a * a * b) if a > 0 and b > 0 else None
    clauses = {
        "0 < 4*alpha <= 1": 0 < 4 * a <= 1,
        "0 < 2*beta <= 1": 0 < 2 * b <= 1,
        "1/2 - alpha/4 <= gamma < 1": Fraction(1, 2) - a / 4 <= g < 1,
        "K >= 0": k >= 0,
        "n >= (42K+4)/(alpha^2 beta)": n_min is not None and n >= n_min,
    }
    gate = ParamGate(n, float(n_min) if n_min is not None else math.inf, clauses)
    if p.strict and not gate.satisfied:
        raise ParameterError(gate.violations)
    return gate


@dataclass(frozen=True)
class PremiseCheck:
    mu: float
    delta: int
    mu_bound: float
    delta_bound: float
    mu_slack: float
    delta_slack: float

    @property
    def mu_ok(self) -> bool:
        return self.mu_slack > 0

    @property
    def delta_ok(self) -> bool:
        return self.delta_slack >= 0

    @property
    def holds(self) -> bool:
        return self.mu_ok and self.delta_ok


def premise_check(g: Graph, p: ProcedureParams, mu: float | None = None) -> PremiseCheck:
    n = g.n
    if mu is None:
        mu = spectral_radius(g).mu
    delta = min_degree(g)
    mu_bound = p.gamma * n - p.K / n
    delta_bound = float((_num(p.gamma) - _num(p.alpha)) * n)
    # delta is an integer: compare it exactly against the rational bound.
    dslack = float((_num(p.gamma) - _num(p.alpha)) * n - delta)
    return PremiseCheck(mu, delta, mu_bound, delta_bound, mu - mu_bound, dslack)


@dataclass(frozen=True)
class Step:
    k: int
    deleted_vertex: int
    mu_k: float
    min_entry: float
    delta_k: int

    def to_dict(self) -> dict:
        return {"k": self.k, "deleted_vertex": self.deleted_vertex, "mu_k": self.mu_k,
                "min_entry": self.min_entry, "delta_k": self.delta_k}


@dataclass
class ProcedureTrace:
    n: int
    params: ProcedureParams
    mu_initial: float
    steps: list[Step] = field(default_factory=list)
    final_subgraph: list[int] = field(default_factory=list)
    mu_final: float = float("nan")
    delta_final: int = 0
    branch: str = ""
    stop_reason: str = ""

    @property
    def k(self) -> int:
        return len(self.steps)

    def normalized_mu(self) -> list[float]:
        """mu(G_i)/(n-i) for i = 0..k."""
        seq = [s.mu_k / (self.n - s.k) for s in self.steps]
        seq.append(self.mu_final / (self.n - self.k))
        return seq

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "params": self.params.to_dict(),
            "mu_initial": self.mu_initial,
            "steps": [s.to_dict() for s in self.steps],
            "k_final": self.k,
            "final_subgraph": self.final_subgraph,
            "mu_final": self.mu_final,
            "delta_final": self.delta_final,
            "branch": self.branch,
            "stop_reason": self.stop_reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _guard(delta: int, p: ProcedureParams, order: int) -> bool:
    return delta <= (_num(p.gamma) - _num(p.alpha)) * order


def run_procedure_p(g: Graph, p: ProcedureParams, tol: float | None = None,
                    override: bool = False) -> ProcedureTrace:
    """Run the deletion procedure and return its full trace.

    In strict mode the parameter gate and both premises must hold unless
    ``override`` is set.  Each eigensolve is warm-started from the previous
    Perron vector with the deleted coordinate removed.
    """
    tol = default_tol() if tol is None else tol
    n = g.n
    if p.strict:
        validate_params(p, n)
    spec = spectral_radius(g, tol)
    if p.strict and not override:
        pc = premise_check(g, p, spec.mu)
        if not pc.holds:
            bad = []
            if not pc.mu_ok:
                bad.append(f"mu(G) = {pc.mu:.12g} not > gamma n - K/n = {pc.mu_bound:.12g}")
            if not pc.delta_ok:
                bad.append(f"delta(G) = {pc.delta} not <= (gamma - alpha) n = {pc.delta_bound:.12g}")
            raise ParameterError(bad)

    limit = math.floor(_num(p.beta) * n)
    trace = ProcedureTrace(n, p, spec.mu)
    current = g
    ids = np.arange(n)
    k = 0
    while True:
        delta = min_degree(current)
        if not _guard(delta, p, n - k):
            trace.stop_reason = "min degree above (gamma - alpha)(n - k)"
            break
        if k >= limit:
            trace.stop_reason = "k reached floor(beta n)"
            break
        u = argmin_entry(spec.x, tie_tol=tol)
        trace.steps.append(Step(k, int(ids[u]), spec.mu, float(spec.x[u]), delta))
        warm = np.delete(spec.x, u)
        current, keep = delete_vertex(current, u)
        ids = ids[keep]
        k += 1
        try:
            spec = spectral_radius(current, tol, x0=warm)
        except ConvergenceError as exc:
            trace.final_subgraph = ids.tolist()
            trace.stop_reason = "eigensolver failure"
            raise ProcedureAborted(str(exc), trace) from exc

    trace.final_subgraph = ids.tolist()
    trace.mu_final = spec.mu
    trace.delta_final = min_degree(current) if current.n else 0
    trace.branch = "i" if k == limit else "ii"
    return trace


@dataclass
class ConclusionCheck:
    passed: bool
    branch: str
    checks: dict[str, float]
    asserted: bool

    def failures(self) -> list[str]:
        return [name for name, slack in self.checks.items() if slack < -SLACK_TOL]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "branch": self.branch, "asserted": self.asserted,
                "slacks": self.checks, "failures": self.failures()}


def check_theorem3_conclusion(trace: ProcedureTrace, p: ProcedureParams,
                              g: Graph | None = None) -> ConclusionCheck:
    """Slack of every guaranteed inequality along a trace.

    Keys: ``size`` (|H| >= (1-beta) n), the branch inequalities, ``bnd``
    (mu(H) > gamma(1 + 4 k alpha/(7n))|H|) and ``in[i]`` for each step.
    Failures are hard errors only for strict parameters (``asserted``).
    """
    n, k = trace.n, trace.k
    a, b, gam = p.alpha, p.beta, p.gamma
    h = n - k
    mu0 = trace.mu_initial
    checks: dict[str, float] = {"size": h - (1 - b) * n}
    if trace.branch == "i":
        checks["branch_i"] = trace.mu_final - gam * (1 + b * a / 2) * h
    else:
        checks["branch_ii_mu"] = trace.mu_final - gam * h
        checks["branch_ii_delta"] = float(trace.delta_final - (_num(gam) - _num(a)) * h)
    checks["bnd"] = trace.mu_final - gam * (1 + 4 * k * a / (7 * n)) * h
    for i, ratio in enumerate(trace.normalized_mu()):
        checks[f"in[{i}]"] = ratio - (1 + 3 * i * a / (5 * n)) * mu0 / n
    if g is not None and g.n != n:
        raise ValueError("trace does not belong to this graph")
    passed = all(s >= -SLACK_TOL for s in checks.values())
    if trace.branch == "ii":
        # delta is an integer comparison: strict inequality required.
        passed = passed and checks["branch_ii_delta"] > 0
    return ConclusionCheck(passed, trace.branch, checks, asserted=p.strict)


def final_subgraph(g: Graph, trace: ProcedureTrace) -> Graph:
    return induced_subgraph(g, trace.final_subgraph)
