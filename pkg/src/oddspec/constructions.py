"""Extremal constructions, standard fixtures and seeded random graphs.

Random graphs use numpy's ``PCG64`` bit generator.  ``gnp(n, p, seed)`` draws
one uniform double per vertex pair, pairs taken in lexicographic order
``(0,1), (0,2), ..., (n-2,n-1)``, and keeps the pair when the draw is ``< p``.
The stream is therefore fixed by ``(n, p, seed)`` alone.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from .graph import Graph, GraphError, build

FAMILIES = (
    "t2", "join_clique_empty", "paper_join", "gnp", "cycle", "complete", "path",
    "petersen", "wheel", "star", "t2_plus_edge", "t2_perturbed",
)
RANDOM_FAMILIES = {"gnp", "t2_plus_edge", "t2_perturbed"}


@dataclass(frozen=True)
class Construction:
    """A graph together with its known spectral radius, when there is one."""
    graph: Graph
    exact_mu: float | None = None
    meta: dict = field(default_factory=dict)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for trial ``keys`` of a run seeded ``seed``."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *[int(k) for k in keys]])
    return int(ss.generate_state(1, np.uint64)[0])


def t2_parts(n: int) -> tuple[range, range]:
    return range(n // 2), range(n // 2, n)


def turan_t2(n: int) -> Construction:
    if n < 2:
        raise GraphError(f"T2(n) needs n >= 2, got {n}")
    a, b = t2_parts(n)
    g = build(n, [(i, j) for i in a for j in b])
    return Construction(g, math.sqrt(n * n // 4), {"parts": (len(a), len(b))})


def join_mu(n: int, k: int) -> float:
    """Largest root of the 2x2 quotient [[k-1, n-k], [k, 0]] of K_k v E_{n-k}."""
    return ((k - 1) + math.sqrt((k - 1) ** 2 + 4 * k * (n - k))) / 2


def join_clique_empty(n: int, k: int) -> Construction:
    """K_k joined to an independent set; clique vertices are ``0..k-1``."""
    if not 1 <= k <= n:
        raise GraphError(f"clique size k={k} outside [1, {n}]")
    edges = [(i, j) for i in range(k) for j in range(i + 1, n)]
    return Construction(build(n, edges), join_mu(n, k), {"k": k})


def paper_join_k(n: int) -> int:
    return math.ceil((3 - math.sqrt(5)) * n / 4)


def paper_join(n: int) -> Construction:
    if n < 4:
        raise GraphError(f"paper_join needs n >= 4, got {n}")
    k = paper_join_k(n)
    c = join_clique_empty(n, k)
    # Every cycle alternates through the clique at least every other vertex.
    longest = min(n, 2 * k) if k >= 2 else 0
    return Construction(c.graph, c.exact_mu, {"k": k, "longest_cycle": longest})


def gnp(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    iu, ju = np.triu_indices(n, k=1)
    draws = _rng(seed).random(iu.shape[0])
    keep = draws < p
    return build(n, np.stack([iu[keep], ju[keep]], axis=1))


def cycle(n: int) -> Construction:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Construction(build(n, [(i, (i + 1) % n) for i in range(n)]), 2.0)


def complete(n: int) -> Construction:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Construction(build(n, list(combinations(range(n), 2))), float(n - 1))


def path(n: int) -> Construction:
    if n < 1:
        raise GraphError("path needs n >= 1")
    mu = 2 * math.cos(math.pi / (n + 1)) if n > 1 else 0.0
    return Construction(build(n, [(i, i + 1) for i in range(n - 1)]), mu)


def star(n: int) -> Construction:
    """K_{1,n-1} with centre 0."""
    if n < 2:
        raise GraphError("star needs n >= 2")
    return Construction(build(n, [(0, i) for i in range(1, n)]), math.sqrt(n - 1))


def wheel(rim: int) -> Construction:
    """Hub 0 joined to the cycle on ``1..rim``."""
    if rim < 3:
        raise GraphError("wheel needs a rim of at least 3 vertices")
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Construction(build(rim + 1, edges), 1 + math.sqrt(1 + rim))


def petersen() -> Construction:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Construction(build(10, outer + spokes + inner), 3.0)


def t2_plus_edge(n: int, seed: int) -> Graph:
    """T2(n) plus one edge inside a part, the part and pair chosen from ``seed``."""
    if n < 4:
        raise GraphError("t2_plus_edge needs n >= 4 so some part has two vertices")
    rng = _rng(seed)
    parts = [p for p in t2_parts(n) if len(p) >= 2]
    part = parts[int(rng.integers(len(parts)))]
    u, v = sorted(rng.choice(len(part), size=2, replace=False).tolist())
    edges = [(i, j) for i in t2_parts(n)[0] for j in t2_parts(n)[1]]
    edges.append((part[u], part[v]))
    return build(n, edges)


def t2_perturbed(n: int, seed: int, add: int | None = None, remove: int | None = None) -> Graph:
    """T2(n) with ``add`` random intra-part edges and ``remove`` random cross edges.

    When not given, ``add`` is drawn from ``[1, n/4]`` and ``remove`` from
    ``[0, n]`` using the same stream.
    """
    if n < 4:
        raise GraphError("t2_perturbed needs n >= 4")
    rng = _rng(seed)
    a, b = t2_parts(n)
    cross = [(i, j) for i in a for j in b]
    intra = [e for part in (a, b) for e in combinations(part, 2)]
    if add is None:
        add = int(rng.integers(1, max(2, n // 4 + 1)))
    if remove is None:
        remove = int(rng.integers(0, n + 1))
    add = min(add, len(intra))
    remove = min(remove, len(cross))
    drop = set(rng.choice(len(cross), size=remove, replace=False).tolist())
    extra = rng.choice(len(intra), size=add, replace=False).tolist()
    edges = [e for i, e in enumerate(cross) if i not in drop]
    edges += [intra[i] for i in extra]
    return build(n, edges)


def fixtures() -> dict[str, Graph]:
    """Named small graphs used across tests and the default corpus."""
    out = {"petersen": petersen().graph}
    for n in (3, 4, 5, 6, 7, 8, 9):
        out[f"cycle{n}"] = cycle(n).graph
    for n in (2, 3, 4, 5, 6, 7):
        out[f"complete{n}"] = complete(n).graph
    for n in (2, 3, 4, 5, 6):
        out[f"path{n}"] = path(n).graph
    for rim in (4, 5, 6):
        out[f"wheel{rim}"] = wheel(rim).graph
    for n in (4, 5, 10):
        out[f"star{n}"] = star(n).graph
    for n in (4, 5, 6, 7, 8, 10):
        out[f"t2_{n}"] = turan_t2(n).graph
    out["join5_2"] = join_clique_empty(5, 2).graph
    return out


@dataclass(frozen=True)
class FamilySpec:
    """Descriptor of one graph in a corpus; enough to regenerate it exactly."""
    family: str
    n: int | None = None
    k: int | None = None
    p: float | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}")
        if self.family in RANDOM_FAMILIES and self.seed is None:
            raise GraphError(f"family {self.family!r} needs a seed")

    def label(self) -> str:
        parts = [self.family]
        for key in ("n", "k", "p", "seed"):
            val = getattr(self, key)
            if val is not None:
                parts.append(f"{key}={val}")
        return ":".join(parts)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def construct(self) -> Construction:
        f, n = self.family, self.n
        if f == "petersen":
            return petersen()
        if n is None:
            raise GraphError(f"family {f!r} needs n")
        if f == "t2":
            return turan_t2(n)
        if f == "join_clique_empty":
            if self.k is None:
                raise GraphError("join_clique_empty needs k")
            return join_clique_empty(n, self.k)
        if f == "paper_join":
            return paper_join(n)
        if f == "gnp":
            if self.p is None:
                raise GraphError("gnp needs p")
            return Construction(gnp(n, self.p, self.seed))
        if f == "cycle":
            return cycle(n)
        if f == "complete":
            return complete(n)
        if f == "path":
            return path(n)
        if f == "wheel":
            return wheel(n - 1)
        if f == "star":
            return star(n)
        if f == "t2_plus_edge":
            return Construction(t2_plus_edge(n, self.seed))
        return Construction(t2_perturbed(n, self.seed))

    def build(self) -> Graph:
        return self.construct().graph
