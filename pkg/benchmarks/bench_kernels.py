"""Benchmark the Monte Carlo counting kernels: numba vs pure numpy.

Both backends are run on identical inputs; results are asserted to be
bitwise identical before any timing is reported. Invoke with

    python3 benchmarks/bench_kernels.py [--samples N]

The env flag CURVCALC_NO_NUMBA=1 selects the numpy path at import time in
the library itself; this script always times both paths explicitly.
"""

import argparse
import time

import numpy as np

from curvcalc import _kernels, mc
from curvcalc import fixtures
from curvcalc.curvature import equilateral_embedding


def time_kernel(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_case(name, heights, cone_args, link_args):
    rows = []
    for kernel_name, numba_fn, numpy_fn, args in (
        ("cone counts", _kernels.cone_argmax_counts_numba, _kernels.cone_argmax_counts_numpy, cone_args),
        ("lower link", _kernels.lower_link_index_numba, _kernels.lower_link_index_numpy, link_args),
    ):
        t_np, out_np = time_kernel(numpy_fn, heights, *args)
        if numba_fn is not None:
            t_nb, out_nb = time_kernel(numba_fn, heights, *args)
            for a, b in zip(out_nb, out_np):
                np.testing.assert_array_equal(a, b)
            speedup = t_np / t_nb
            rows.append((name, kernel_name, t_nb, t_np, speedup))
        else:
            rows.append((name, kernel_name, float("nan"), t_np, float("nan")))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=200_000)
    args = parser.parse_args()

    cases = []
    octa, octa_emb = fixtures.octahedron()
    rng = np.random.default_rng(8)
    dense = fixtures.random_complex(rng, max_vertices=8)
    dense_emb = equilateral_embedding(dense)

    for name, X, emb in (("octahedron", octa, octa_emb), ("random 8-vertex", dense, dense_emb)):
        index = emb.vertex_index
        cells, sizes, _ = mc.build_cell_arrays([(s, len(s) - 1) for s in X.cells()], index)
        link_arrays = mc.build_link_arrays(X, index)
        dirs = mc.sample_unit_directions(0, 0, args.samples, emb.ambient_dim)
        heights = dirs @ emb.matrix().T
        cases.extend(bench_case(name, heights, (cells, sizes), link_arrays))

    if _kernels.cone_argmax_counts_numba is None:
        print("numba backend unavailable (CURVCALC_NO_NUMBA set or import failed)")
    print(f"samples per run: {args.samples}")
    print(f"{'case':<16} {'kernel':<12} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for name, kernel, t_nb, t_np, speedup in cases:
        print(f"{name:<16} {kernel:<12} {t_nb:>10.4f} {t_np:>10.4f} {speedup:>8.1f}")
    if _kernels.cone_argmax_counts_numba is not None:
        print("outputs verified identical across backends")


if __name__ == "__main__":
    main()
