"""Independent brute-force oracles.  None of these touch oddspec kernels."""

from itertools import combinations

import numpy as np


def adjacency_sets(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def triangles_bruteforce(n, edges):
    adj = adjacency_sets(n, edges)
    return sum(1 for a, b, c in combinations(range(n), 3) if b in adj[a] and c in adj[a] and c in adj[b])


def cycle_lengths_bitmask(n, edges):
    """All cycle lengths by DP over vertex subsets.

    For each anchor s (the smallest vertex of the cycle) mark reachable
    (mask, end) states of simple paths starting at s inside vertices >= s;
    a closing edge end-s with |mask| >= 3 gives a cycle of length |mask|.
    """
    adj = adjacency_sets(n, edges)
    lengths = set()
    for s in range(n):
        reach = {(1 << s, s)}
        frontier = list(reach)
        while frontier:
            nxt = []
            for mask, v in frontier:
                size = bin(mask).count("1")
                if size >= 3 and s in adj[v]:
                    lengths.add(size)
                for w in adj[v]:
                    if w > s and not mask >> w & 1:
                        state = (mask | 1 << w, w)
                        if state not in reach:
                            reach.add(state)
                            nxt.append(state)
            frontier = nxt
    return lengths


def dense_spectral_radius(n, edges):
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1
    return float(np.linalg.eigvalsh(a)[-1]) if n else 0.0


def charpoly_largest_root(n, edges):
    import sympy
    a = sympy.zeros(n, n)
    for u, v in edges:
        a[u, v] = a[v, u] = 1
    lam = sympy.symbols("lam")
    poly = sympy.Poly(a.charpoly(lam).as_expr(), lam)
    # Adjacency matrices are symmetric: all roots are real, exact isolation.
    return max(float(r.evalf(30)) for r in sympy.real_roots(poly))
