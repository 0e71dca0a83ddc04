"""Spectral radius and Perron vector of the adjacency matrix.

The eigensolver is a deterministic shifted power iteration started from the
uniform vector (or a caller-supplied warm start), certified by the residual
``||A x - mu x||_inf <= tol * max(1, mu)``.  When the power phase stalls
(small spectral gap) it escalates to explicitly restarted Lanczos with full
reorthogonalisation seeded from the current iterate; the same residual
contract decides convergence.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, delete_vertex, min_degree

SLACK_TOL = 1e-9
DEFAULT_MAX_ITER = 10**6
POWER_PHASE_ITERS = 2000
LANCZOS_STEPS = 60
WARM_BLEND = 1e-3
# The power phase aims below the certified contract so that off-component
# entries of disconnected graphs also end up under tol.
POWER_TARGET = 1e-2


def default_tol() -> float:
    """Solver tolerance, overridable through ``ODDSPEC_TOL``."""
    raw = os.environ.get("ODDSPEC_TOL")
    if raw:
        tol = float(raw)
        if not tol > 0:
            raise ValueError(f"ODDSPEC_TOL must be positive, got {raw!r}")
        return tol
    return 1e-10


class NotApplicable(ValueError):
    """Inputs fall outside the hypotheses of the bound being evaluated."""


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, result: "SpectralResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True, eq=False)
class SpectralResult:
    mu: float
    x: np.ndarray
    residual: float
    iterations: int
    converged: bool = True
    method: str = "power"

    def min_entry(self) -> float:
        return float(self.x.min())


def _finish(g: Graph, x: np.ndarray) -> tuple[float, np.ndarray, float]:
    x = np.abs(x)
    x /= np.linalg.norm(x)
    y = _kernels.matvec(g.indptr, g.indices, g._rows, x)
    mu = float(x @ y)
    return mu, x, float(np.max(np.abs(y - mu * x)))


def _lanczos_top(g: Graph, v0: np.ndarray, steps: int) -> tuple[np.ndarray, int]:
    """One Lanczos cycle from ``v0``; returns the top Ritz vector and matvec count."""
    n = g.n
    steps = min(steps, n)
    basis = np.zeros((steps, n))
    alpha = np.zeros(steps)
    beta = np.zeros(steps)
    q = v0 / np.linalg.norm(v0)
    k = 0
    for k in range(steps):
        basis[k] = q
        w = _kernels.matvec(g.indptr, g.indices, g._rows, q)
        alpha[k] = q @ w
        # Full reorthogonalisation, twice for stability.
        for _ in range(2):
            w -= basis[:k + 1].T @ (basis[:k + 1] @ w)
        b = float(np.linalg.norm(w))
        if k + 1 == steps or b < 1e-14 * max(1.0, abs(alpha[k])):
            break
        beta[k] = b
        q = w / b
    size = k + 1
    t = np.diag(alpha[:size]) + np.diag(beta[:size - 1], 1) + np.diag(beta[:size - 1], -1)
    vals, vecs = np.linalg.eigh(t)
    ritz = basis[:size].T @ vecs[:, -1]
    if ritz.sum() < 0:
        ritz = -ritz
    return ritz, size


def spectral_radius(g: Graph, tol: float | None = None, max_iter: int = DEFAULT_MAX_ITER,
                    x0: np.ndarray | None = None) -> SpectralResult:
    """Largest adjacency eigenvalue of ``g`` with a unit nonnegative eigenvector.

    ``x0`` is an optional nonnegative warm start; it is blended with a small
    uniform component so no component of the graph starts at exactly zero.
    Raises :class:`ConvergenceError` (carrying the best iterate) when the
    residual contract is not met within ``max_iter`` matrix-vector products.
    """
    tol = default_tol() if tol is None else float(tol)
    if g.n < 1:
        raise ValueError("spectral radius needs at least one vertex")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = g.n
    uniform = np.full(n, 1.0 / math.sqrt(n))
    if g.m == 0:
        return SpectralResult(0.0, uniform, 0.0, 0)

    if x0 is None:
        x = uniform.copy()
    else:
        x = np.abs(np.asarray(x0, dtype=np.float64)).copy()
        if x.shape != (n,) or not np.isfinite(x).all():
            raise ValueError("warm start must be a finite vector of length n")
        nrm = np.linalg.norm(x)
        x = uniform.copy() if nrm == 0 else x / nrm + WARM_BLEND * uniform

    budget = max(1, int(max_iter))
    mu, res, iters = _kernels.power_iterate(g.indptr, g.indices, g._rows, x, tol * POWER_TARGET,
                                            min(budget, POWER_PHASE_ITERS))
    method = "power"
    mu, x, res = _finish(g, x)
    contract = tol * max(1.0, mu)
    while res > contract and iters < budget:
        method = "lanczos"
        ritz, used = _lanczos_top(g, x, min(LANCZOS_STEPS, budget - iters))
        iters += used
        # A few shifted power steps clean up sign noise and certify the pair.
        polish = min(8, max(1, budget - iters))
        _, _, extra = _kernels.power_iterate(g.indptr, g.indices, g._rows, ritz, tol, polish)
        iters += extra
        mu, x, res = _finish(g, ritz)
        contract = tol * max(1.0, mu)
    if res > contract:
        best = SpectralResult(mu, x, res, iters, converged=False, method=method)
        raise ConvergenceError(
            f"residual {res:.3e} above {contract:.3e} after {iters} iterations", best)
    return SpectralResult(mu, x, res, iters, method=method)


def rayleigh_quotient(g: Graph, y) -> float:
    y = np.asarray(y, dtype=np.float64)
    nrm2 = float(y @ y)
    if nrm2 == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    ea = g.edge_array()
    return 2.0 * float(np.sum(y[ea[:, 0]] * y[ea[:, 1]])) / nrm2


def argmin_entry(x: np.ndarray, tie_tol: float = 0.0) -> int:
    """Index of the smallest entry; entries within ``tie_tol`` of it count as
    ties and the lowest index wins."""
    lo = x.min()
    return int(np.flatnonzero(x <= lo + tie_tol)[0])


# ---------------------------------------------------------------------------
# min-entry bound and deletion growth bound
# ---------------------------------------------------------------------------

def lemma1_bound(delta: int, mu: float, n: int) -> float:
    """Upper bound sqrt(delta / (mu^2 + delta*n - delta^2)) on the smallest
    entry of a unit eigenvector for mu in a graph with minimum degree delta."""
    if n < 1:
        raise ValueError("n must be positive")
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if not 0 <= delta < n:
        raise ValueError(f"minimum degree {delta} outside [0, {n})")
    if delta == 0 and mu == 0:
        raise NotApplicable("bound undefined for delta = 0 and mu = 0")
    return math.sqrt(delta / (mu * mu + delta * n - delta * delta))


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    equality: bool = False
    detail: dict | None = None


def lemma1_check(g: Graph, spec: SpectralResult | None = None, tol: float | None = None) -> BoundCheck:
    spec = spec or spectral_radius(g, tol)
    delta = min_degree(g)
    bound = lemma1_bound(delta, spec.mu, g.n)
    xmin = spec.min_entry()
    slack = bound - xmin
    return BoundCheck("lemma1", xmin, bound, slack, slack >= -SLACK_TOL,
                      equality=abs(slack) <= SLACK_TOL,
                      detail={"delta": delta, "mu": spec.mu, "residual": spec.residual})


@dataclass(frozen=True)
class Lemma2Check:
    mu_full: float
    mu_minus: float
    x_u: float
    u: int
    c: float
    rhs: float
    lhs: float
    slack: float

    @property
    def passed(self) -> bool:
        return self.slack >= -SLACK_TOL

    @property
    def equality(self) -> bool:
        return abs(self.slack) <= SLACK_TOL


def lemma2_c(n: int, x_u: float) -> float:
    return 1.0 - n * x_u * x_u


def lemma2_rhs(mu: float, n: int, x_u: float) -> float:
    """Lower bound (mu/n)(1 + (1 - n x_u^2 - 1/(n-1)) / (n-1)) for mu(G-u)/(n-1)."""
    if n < 2:
        raise ValueError("deletion bound needs n >= 2")
    if x_u < 0 or x_u > 1.0 / math.sqrt(n) + 1e-12:
        raise ValueError(f"x_u = {x_u} is not the minimum entry of a unit vector of length {n}")
    c = lemma2_c(n, x_u)
    return (mu / n) * (1.0 + (c - 1.0 / (n - 1)) / (n - 1))


def lemma2_check(g: Graph, spec: SpectralResult | None = None, tol: float | None = None) -> Lemma2Check:
    """Delete the minimum-entry vertex and compare mu(G-u)/(n-1) with the bound."""
    if g.n < 2:
        raise ValueError("deletion bound needs n >= 2")
    tol = default_tol() if tol is None else tol
    spec = spec or spectral_radius(g, tol)
    u = argmin_entry(spec.x, tie_tol=tol)
    x_u = float(spec.x[u])
    h, _ = delete_vertex(g, u)
    mu_minus = spectral_radius(h, tol).mu
    n = g.n
    rhs = lemma2_rhs(spec.mu, n, min(x_u, 1.0 / math.sqrt(n)))
    lhs = mu_minus / (n - 1)
    return Lemma2Check(spec.mu, mu_minus, x_u, u, lemma2_c(n, x_u), rhs, lhs, lhs - rhs)
