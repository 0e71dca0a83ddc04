"""Simple undirected graphs stored as sorted CSR adjacency arrays.

A :class:`Graph` is immutable once built.  ``indptr``/``indices`` follow the
usual CSR layout with each neighbour list sorted ascending, which makes
equality and the edge-list serialisation canonical.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


class GraphError(ValueError):
    """Invalid graph input (self-loop, bad index, malformed file)."""


class EdgeListParseError(GraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    indptr: np.ndarray
    indices: np.ndarray
    _rows: np.ndarray = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return int(self.indices.shape[0] // 2)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    @property
    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(u).tolist() for u in range(self.n)]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.shape[0] and nb[i] == v)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        src = self._rows
        mask = src < self.indices
        return list(zip(src[mask].tolist(), self.indices[mask].tolist()))

    def edge_array(self) -> np.ndarray:
        mask = self._rows < self.indices
        return np.stack([self._rows[mask], self.indices[mask]], axis=1)

    def dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        a[self._rows, self.indices] = 1.0
        return a

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.indices.tobytes(), self.indptr.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _from_pairs(n: int, a: np.ndarray, b: np.ndarray) -> Graph:
    # a, b: validated endpoints, no loops; may hold duplicates.
    if a.size:
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        key = np.unique(lo * n + hi)
        lo, hi = key // n, key % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.ascontiguousarray(dst, dtype=np.int64)
    rows = np.ascontiguousarray(src, dtype=np.int64)
    for arr in (indptr, indices, rows):
        arr.setflags(write=False)
    return Graph(int(n), indptr, indices, rows)


def build(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``n`` vertices, deduplicating and symmetrising edges."""
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError("edges must be pairs")
    a, b = arr[:, 0], arr[:, 1]
    bad = (a < 0) | (a >= n) | (b < 0) | (b >= n)
    if bad.any():
        u, v = arr[np.argmax(bad)]
        raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
    loops = a == b
    if loops.any():
        raise GraphError(f"self-loop at vertex {a[np.argmax(loops)]}")
    return _from_pairs(n, a, b)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("minimum degree of the null graph is undefined")
    return int(g.degrees.min())


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} outside [0, {g.n})")


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabelled to ``0..len-1`` in sorted order."""
    keep = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if keep.size and (keep[0] < 0 or keep[-1] >= g.n):
        raise GraphError(f"vertex set has indices outside [0, {g.n})")
    newid = np.full(g.n, -1, dtype=np.int64)
    newid[keep] = np.arange(keep.size)
    ea = g.edge_array()
    a, b = newid[ea[:, 0]], newid[ea[:, 1]]
    inside = (a >= 0) & (b >= 0)
    return _from_pairs(int(keep.size), a[inside], b[inside])


def delete_vertex(g: Graph, u: int) -> tuple[Graph, np.ndarray]:
    """Return ``G - u`` and the map ``new index -> old index``."""
    _check_vertex(g, u)
    keep = np.delete(np.arange(g.n), u)
    return induced_subgraph(g, keep), keep


@dataclass(frozen=True)
class Bipartition:
    coloring: list[int] | None
    odd_cycle: list[int] | None

    @property
    def bipartite(self) -> bool:
        return self.coloring is not None

    def __bool__(self):
        return self.bipartite

    def parts(self) -> tuple[list[int], list[int]]:
        if self.coloring is None:
            raise GraphError("graph is not bipartite")
        zero = [v for v, c in enumerate(self.coloring) if c == 0]
        one = [v for v, c in enumerate(self.coloring) if c == 1]
        return zero, one


def is_bipartite(g: Graph) -> Bipartition:
    """BFS 2-colouring; on failure return an odd cycle instead."""
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v).tolist():
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return Bipartition(None, _odd_cycle(v, w, parent, depth))
    return Bipartition(color, None)


def _odd_cycle(a: int, b: int, parent: list[int], depth: list[int]) -> list[int]:
    left, right = [a], [b]
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor; right repeats it.
    return left + right[-2::-1]


def triangles_per_vertex(g: Graph) -> np.ndarray:
    return _kernels.triangles_per_vertex(g.indptr, g.indices)


def triangle_count(g: Graph) -> int:
    return int(triangles_per_vertex(g).sum() // 3)


def triangles_at_vertex(g: Graph, u: int) -> int:
    _check_vertex(g, u)
    return neighborhood_edge_count(g, u)


def neighborhood_edge_count(g: Graph, u: int) -> int:
    """Number of edges with both ends in the neighbourhood of ``u``."""
    _check_vertex(g, u)
    nb = g.neighbors(u)
    inside = np.zeros(g.n, dtype=bool)
    inside[nb] = True
    total = 0
    for v in nb.tolist():
        total += int(inside[g.neighbors(v)].sum())
    return total // 2


# ---------------------------------------------------------------------------
# edge-list text format: "n m" then m lines "u v", u < v, sorted, LF endings
# ---------------------------------------------------------------------------

def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format; errors carry the 1-based line number.

    Parsing is lenient about edge order and duplicates (the result is
    canonicalised) but the declared edge count must match the edge lines.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise EdgeListParseError("empty input, expected header 'n m'", 1)

    def ints(lineno: int, raw: str) -> tuple[int, int]:
        parts = raw.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two integers, got {raw.strip()!r}", lineno)
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"expected two integers, got {raw.strip()!r}", lineno) from None

    n, m = ints(1, lines[0])
    if n < 0 or m < 0:
        raise EdgeListParseError("header values must be nonnegative", 1)
    body = lines[1:]
    if len(body) != m:
        raise EdgeListParseError(f"header declares {m} edges but {len(body)} edge lines follow",
                                 min(len(lines), 1 + max(len(body), 1)))
    pairs = []
    for i, raw in enumerate(body, start=2):
        u, v = ints(i, raw)
        if u == v:
            raise EdgeListParseError(f"self-loop at vertex {u}", i)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListParseError(f"endpoint outside [0, {n})", i)
        pairs.append((u, v))
    return build(n, pairs)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="ascii"))


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_bytes(to_edge_list(g).encode("ascii"))
