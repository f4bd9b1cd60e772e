"""The numba kernels and their numpy fallbacks must agree bitwise."""

import os
import subprocess
import sys

import numpy as np
import pytest

from curvcalc import _kernels, mc
from curvcalc import fixtures
from curvcalc.curvature import equilateral_embedding


def random_cells(rng, n_vertices, n_cells, width):
    sizes = rng.integers(1, width + 1, size=n_cells).astype(np.int64)
    cells = np.zeros((n_cells, width), dtype=np.int64)
    for m in range(n_cells):
        picked = rng.choice(n_vertices, size=sizes[m], replace=False)
        cells[m, : sizes[m]] = picked
        cells[m, sizes[m]:] = picked[0]
    return cells, sizes


needs_numba = pytest.mark.skipif(
    _kernels.backend_name() != "numba", reason="numba backend disabled"
)


@needs_numba
@pytest.mark.parametrize("trial", range(3))
def test_cone_counts_backends_agree(trial, rng):
    heights = rng.standard_normal((500, 7))
    cells, sizes = random_cells(rng, 7, 40, 4)
    got_nb = _kernels.cone_argmax_counts_numba(heights, cells, sizes)
    got_np = _kernels.cone_argmax_counts_numpy(heights, cells, sizes)
    np.testing.assert_array_equal(got_nb[0], got_np[0])
    np.testing.assert_array_equal(got_nb[1], got_np[1])


@needs_numba
def test_cone_counts_backends_agree_on_ties(rng):
    heights = rng.standard_normal((100, 4))
    heights[::7, 1] = heights[::7, 2]  # inject exact ties
    cells = np.array([[0, 1, 2, 0], [1, 2, 3, 1]], dtype=np.int64)
    sizes = np.array([3, 3], dtype=np.int64)
    counts_nb, ties_nb = _kernels.cone_argmax_counts_numba(heights, cells, sizes)
    counts_np, ties_np = _kernels.cone_argmax_counts_numpy(heights, cells, sizes)
    assert ties_nb.sum() > 0
    np.testing.assert_array_equal(ties_nb, ties_np)
    np.testing.assert_array_equal(counts_nb, counts_np)


def test_cone_counts_manual_case():
    heights = np.array([[3.0, 1.0, 2.0], [1.0, 5.0, 2.0]])
    cells = np.array([[0, 1, 2], [0, 2, 0]], dtype=np.int64)
    sizes = np.array([3, 2], dtype=np.int64)
    counts, ties = _kernels.cone_argmax_counts(heights, cells, sizes)
    assert not ties.any()
    np.testing.assert_array_equal(counts, [[1, 1, 0], [1, 1, 0]])


@needs_numba
@pytest.mark.parametrize("trial", range(3))
def test_lower_link_backends_agree(trial, rng):
    X = fixtures.random_complex(rng)
    emb = equilateral_embedding(X)
    arrays = mc.build_link_arrays(X, emb.vertex_index)
    heights = rng.standard_normal((300, len(X.vertices)))
    # inject exact ties on a few rows
    heights[::11, 0] = heights[::11, -1]
    got_nb = _kernels.lower_link_index_numba(heights, *arrays)
    got_np = _kernels.lower_link_index_numpy(heights, *arrays)
    np.testing.assert_array_equal(got_nb[0], got_np[0])
    np.testing.assert_array_equal(got_nb[1], got_np[1])


def test_lower_link_manual_case():
    # path 0 - 1 - 2 with heights making the middle vertex the maximum
    X = fixtures.path_complex(2)
    index = {v: v for v in X.vertices}
    arrays = mc.build_link_arrays(X, index)
    heights = np.array([[0.0, 2.0, 1.0], [1.0, 0.0, 2.0]])
    idx, ties = _kernels.lower_link_index(heights, *arrays)
    assert not ties.any()
    # local minima get 1, slope points 0, the local maximum of the first
    # row gets 1 - chi(two points) = -1; each row sums to chi = 1
    np.testing.assert_array_equal(idx, [[1, -1, 1], [0, 1, 0]])


def test_direction_sampling_is_deterministic():
    a = mc.sample_unit_directions(7, 3, 64, 5)
    b = mc.sample_unit_directions(7, 3, 64, 5)
    np.testing.assert_array_equal(a, b)
    c = mc.sample_unit_directions(7, 4, 64, 5)
    assert not np.array_equal(a, c)
    np.testing.assert_allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-12)


def test_run_cone_counts_uses_exact_sample_count(rng):
    X, emb = fixtures.octahedron()
    cell_list = [(s, len(s) - 1) for s in X.cells()]
    cells, sizes, _ = mc.build_cell_arrays(cell_list, emb.vertex_index)
    coords = emb.matrix()
    counts, stats = mc.run_cone_counts(
        lambda d: d @ coords.T, 3, cells, sizes, 5000, seed=11, batch_size=1024
    )
    assert stats.samples == 5000
    # each simplex has exactly one strict argmax per tie-free direction
    np.testing.assert_array_equal(counts.sum(axis=1), 5000)


def test_numpy_fallback_env_flag():
    code = "import curvcalc._kernels as k; print(k.backend_name())"
    env = dict(os.environ, CURVCALC_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.stdout.strip() == "numpy"
