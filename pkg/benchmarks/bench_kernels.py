"""Compare the numba kernels with their numpy / pure-Python fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row is the best-of-``repeat`` wall time for one call.  Numba versions are
compiled once before timing starts.
"""

import argparse
import timeit

import numpy as np

from oddspec import _kernels as kern
from oddspec import accel
from oddspec.constructions import gnp, join_clique_empty, petersen, turan_t2


def _power(flavour, g):
    def call():
        x = np.ones(g.n)
        flavour(g.indptr, g.indices, g._rows, x, 1e-12, 10_000)
    return call


def _cycle(flavour, g, t):
    def call():
        flavour(g.indptr, g.indices, t, 10**7, np.empty(t, dtype=np.int64))
    return call


def cases():
    big = gnp(2000, 0.01, 1)
    dense = join_clique_empty(400, 80).graph
    x = np.random.default_rng(0).random(big.n)
    yield ("matvec gnp(2000, .01)",
           lambda: kern.matvec_nb(big.indptr, big.indices, big._rows, x),
           lambda: kern.matvec_np(big.indptr, big.indices, big._rows, x))
    yield "power gnp(2000, .01)", _power(kern.power_nb, big), _power(kern.power_np, big)
    yield "power K80 v E320", _power(kern.power_nb, dense), _power(kern.power_np, dense)
    for name, g in (("gnp(2000, .01)", big), ("K80 v E320", dense)):
        yield (f"triangles {name}",
               lambda g=g: kern.triangles_per_vertex_nb(g.indptr, g.indices),
               lambda g=g: kern.triangles_per_vertex_np(g.indptr, g.indices))
    pet, t2 = petersen().graph, turan_t2(12).graph
    yield "cycle t=7 petersen (absent)", _cycle(kern.cycle_search_nb, pet, 7), _cycle(kern.cycle_search_py, pet, 7)
    yield "cycle t=11 T2(12) (absent)", _cycle(kern.cycle_search_nb, t2, 11), _cycle(kern.cycle_search_py, t2, 11)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not accel.has_numba:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':34s} {'numba':>12s} {'fallback':>12s} {'speedup':>8s}")
    for name, fast, slow in cases():
        fast()  # compile
        t_fast = min(timeit.repeat(fast, number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(slow, number=1, repeat=args.repeat))
        print(f"{name:34s} {t_fast * 1e3:10.3f}ms {t_slow * 1e3:10.3f}ms {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
