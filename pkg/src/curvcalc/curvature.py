"""Angle-defect curvature of embedded complexes.

The curvature at a vertex is the alternating sum, over the simplices
containing it, of normal-cone fractions: the fraction of the unit sphere
of directions under which that vertex is the strict maximum of the
simplex. Closed forms exist for ambient dimension N <= 3 (sign
inspection, arc measure, solid angle); higher dimensions use seeded
Monte Carlo. Every float result carries an error bound (0 for exact
values); bounds propagate by summation.
"""

import math
from typing import NamedTuple

import numpy as np

from .complexes import PLFunction, ProductCellComplex, SimplicialComplex
from .errors import (
    DegenerateSimplex,
    ExactUnavailable,
    PieceNotSubcomplex,
    UnknownSimplex,
    UnknownVertex,
)
from . import mc

_DEGENERACY_RTOL = 1e-9


class ValueWithError(NamedTuple):
    value: float
    bound: float


class Embedding:
    """Vertex coordinates in an ambient Euclidean space.

    The carrier may be a simplicial complex (each simplex is checked for
    affine nondegeneracy) or a product cell complex, whose cells are
    nondegenerate whenever the factors are.
    """

    def __init__(self, carrier, coordinates):
        coords = {v: np.asarray(x, dtype=float) for v, x in dict(coordinates).items()}
        for v in carrier.vertices:
            if v not in coords:
                raise UnknownVertex(v)
        dims = {c.shape for c in coords.values()}
        if len(dims) > 1:
            raise ValueError(f"mixed coordinate dimensions: {dims}")
        self.carrier = carrier
        self.coordinates = coords
        self.ambient_dim = next(iter(dims))[0] if coords else 0
        self._vertex_order = tuple(sorted(coords, key=_vertex_sort_key))
        self._vertex_index = {v: i for i, v in enumerate(self._vertex_order)}
        if isinstance(carrier, SimplicialComplex):
            for s in carrier.simplices:
                if len(s) > 1 and self._is_degenerate(s):
                    raise DegenerateSimplex(s)

    def _is_degenerate(self, simplex) -> bool:
        pts = np.array([self.coordinates[v] for v in simplex])
        gens = pts[1:] - pts[0]
        k = gens.shape[0]
        if k > self.ambient_dim:
            return True
        sv = np.linalg.svd(gens, compute_uv=False)
        return bool(sv[-1] <= _DEGENERACY_RTOL * max(sv[0], 1.0))

    @property
    def vertex_order(self):
        return self._vertex_order

    @property
    def vertex_index(self):
        return self._vertex_index

    def matrix(self) -> np.ndarray:
        """(n_vertices, N) coordinate matrix in vertex_order."""
        return np.array([self.coordinates[v] for v in self._vertex_order])

    def generators(self, simplex, v) -> np.ndarray:
        """The difference vectors v - w for the other vertices w; the
        normal cone at v is where all of them have nonnegative dot
        products with the direction."""
        pv = self.coordinates[v]
        return np.array([pv - self.coordinates[w] for w in simplex if w != v]).reshape(
            -1, self.ambient_dim
        )

    def restrict(self, subcomplex: SimplicialComplex) -> "Embedding":
        if not subcomplex.is_subcomplex_of(self.carrier):
            raise PieceNotSubcomplex(f"{subcomplex!r} is not a subcomplex of the carrier")
        return Embedding(subcomplex, {v: self.coordinates[v] for v in subcomplex.vertices})


def _vertex_sort_key(v):
    return (0, v, "") if isinstance(v, int) else (1, -1, repr(v))


def equilateral_embedding(complex: SimplicialComplex) -> Embedding:
    """Scaled coordinate-vector embedding: vertex v goes to
    (sqrt(2)/2) e_v, so every edge has length 1 and every simplex is a
    regular unit-side simplex."""
    n = len(complex.vertices)
    scale = math.sqrt(2.0) / 2.0
    coords = {}
    for i, v in enumerate(complex.vertices):
        e = np.zeros(n)
        e[i] = scale
        coords[v] = e
    return Embedding(complex, coords)


def product_embedding(ex: Embedding, ey: Embedding) -> Embedding:
    """Coordinatewise embedding of the product of two embedded carriers."""
    carrier = ProductCellComplex(ex.carrier, ey.carrier)
    coords = {
        (u, v): np.concatenate([ex.coordinates[u], ey.coordinates[v]])
        for u in ex.coordinates
        for v in ey.coordinates
    }
    return Embedding(carrier, coords)


# ---------------------------------------------------------------------------
# Exact normal-cone fractions, ambient dimension <= 3
# ---------------------------------------------------------------------------

def _cone_fraction_exact(gens: np.ndarray, ambient_dim: int) -> float:
    """Normalized sphere measure of { xi : <xi, g> >= 0 for all g }.

    For a nondegenerate simplex the generators are linearly independent,
    so only the counts 0..3 occur in ambient dimension <= 3:
      0 generators: the whole sphere;
      1: a half-space, measure 1/2;
      2: a wedge between two half-spaces, measure (pi - angle)/(2 pi)
         regardless of ambient dimension;
      3 (N = 3 only): a simplicial cone; solid angle by the
         tangent-of-half-angle formula on its extreme rays.
    """
    k = gens.shape[0]
    if k == 0:
        return 1.0
    if k == 1:
        return 0.5
    if k == 2:
        g1, g2 = gens
        if ambient_dim == 2:
            cross = abs(g1[0] * g2[1] - g1[1] * g2[0])
        else:
            cross = float(np.linalg.norm(np.cross(g1, g2)))
        theta = math.atan2(cross, float(np.dot(g1, g2)))
        return (math.pi - theta) / (2.0 * math.pi)
    if k == 3 and ambient_dim == 3:
        try:
            rays = np.linalg.inv(gens)  # columns r_i satisfy <g_j, r_i> = delta_ij >= 0
        except np.linalg.LinAlgError:
            raise DegenerateSimplex(tuple(range(k + 1))) from None
        rays = rays / np.linalg.norm(rays, axis=0)
        r1, r2, r3 = rays.T
        numer = abs(float(np.dot(r1, np.cross(r2, r3))))
        denom = 1.0 + float(np.dot(r1, r2) + np.dot(r2, r3) + np.dot(r3, r1))
        omega = 2.0 * math.atan2(numer, denom)
        return omega / (4.0 * math.pi)
    raise ExactUnavailable(
        f"no exact formula for {k} generators in ambient dimension {ambient_dim}"
    )


def excess_angle(
    simplex,
    v,
    embedding: Embedding,
    method: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
) -> ValueWithError:
    """Normal-cone fraction of one simplex at one of its vertices."""
    simplex = tuple(simplex)
    if v not in simplex:
        raise UnknownVertex(v)
    if not embedding.carrier.has_cell(simplex):
        raise UnknownSimplex(simplex)
    if method == "exact":
        if embedding.ambient_dim > 3:
            raise ExactUnavailable("exact cone fractions need ambient dimension <= 3")
        gens = embedding.generators(simplex, v)
        return ValueWithError(_cone_fraction_exact(gens, embedding.ambient_dim), 0.0)
    if method != "mc":
        raise ValueError(f"unknown method {method!r}")
    gens = embedding.generators(simplex, v)
    if gens.shape[0] == 0:
        return ValueWithError(1.0, 0.0)

    def heights(dirs):
        # heights of "v" (0) and of each w, shifted so comparisons reduce
        # to the cone inequalities <xi, v - w> >= 0
        return np.concatenate(
            [np.zeros((dirs.shape[0], 1)), -(dirs @ gens.T)], axis=1
        )

    n_pts = gens.shape[0] + 1
    cells = np.arange(n_pts, dtype=np.int64)[None, :]
    sizes = np.array([n_pts], dtype=np.int64)
    counts, _ = mc.run_cone_counts(
        heights, embedding.ambient_dim, cells, sizes, samples, seed
    )
    hits = int(counts[0, 0])
    return ValueWithError(hits / samples, mc.smoothed_binomial_stderr(hits, samples))


# ---------------------------------------------------------------------------
# Vertex curvature
# ---------------------------------------------------------------------------

def _mc_curvature_all(embedding: Embedding, samples: int, seed: int, batch_size: int):
    carrier = embedding.carrier
    index = embedding.vertex_index
    if isinstance(carrier, SimplicialComplex):
        cell_list = [(s, len(s) - 1) for s in carrier.cells()]
    else:
        cell_list = [(carrier.cell_vertex_objects(c), carrier.cell_dim(c)) for c in carrier.cells()]
    cells, sizes, signs = mc.build_cell_arrays(cell_list, index)
    coords = embedding.matrix()

    def heights(dirs):
        return dirs @ coords.T

    counts, stats = mc.run_cone_counts(
        heights, embedding.ambient_dim, cells, sizes, samples, seed, batch_size
    )
    values = {v: 0.0 for v in embedding.vertex_order}
    bounds = {v: 0.0 for v in embedding.vertex_order}
    for m, (vs, _) in enumerate(cell_list):
        vs = tuple(vs)
        for j, v in enumerate(vs):
            c = int(counts[m, j])
            values[v] += signs[m] * c / samples
            bounds[v] += mc.smoothed_binomial_stderr(c, samples)
    return {v: ValueWithError(values[v], bounds[v]) for v in values}, stats


def _exact_curvature(embedding: Embedding, v) -> float:
    carrier = embedding.carrier
    total = 0.0
    for s in carrier.star(v):
        gens = embedding.generators(s, v)
        sign = -1.0 if (len(s) - 1) % 2 else 1.0
        total += sign * _cone_fraction_exact(gens, embedding.ambient_dim)
    return total


def vertex_curvature(
    v,
    embedding: Embedding,
    method: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
) -> ValueWithError:
    """Curvature mass at one vertex: the alternating sum of normal-cone
    fractions over the simplices containing v."""
    return curvature_measure(embedding, method, samples, seed)[v]


def curvature_measure(
    embedding: Embedding,
    method: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
    batch_size: int = 8192,
) -> dict:
    """Curvature mass at every vertex, as {vertex: (value, bound)}.

    The Monte Carlo estimator shares one direction stream across all
    simplices, so the per-vertex bound (the sum of the per-term smoothed
    binomial standard errors) upper-bounds the standard deviation of the
    signed sum."""
    carrier = embedding.carrier
    if method == "exact":
        if not isinstance(carrier, SimplicialComplex):
            raise ExactUnavailable("exact cone fractions apply to simplicial carriers only")
        if embedding.ambient_dim > 3:
            raise ExactUnavailable("exact cone fractions need ambient dimension <= 3")
        return {
            v: ValueWithError(_exact_curvature(embedding, v), 0.0)
            for v in carrier.vertices
        }
    if method != "mc":
        raise ValueError(f"unknown method {method!r}")
    values, _ = _mc_curvature_all(embedding, samples, seed, batch_size)
    return values


def curvature_integral(
    alpha: PLFunction,
    embedding: Embedding,
    method: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
) -> ValueWithError:
    """Integral of a PL function against the vertex curvature measure:
    sum over vertices of alpha(v) * kappa(v)."""
    if alpha.complex != embedding.carrier:
        raise UnknownVertex("alpha is not defined on the embedded complex")
    kappa = curvature_measure(embedding, method, samples, seed)
    value = 0.0
    bound = 0.0
    for v, (k, b) in kappa.items():
        a = float(alpha.values[v])
        value += a * k
        bound += abs(a) * b
    return ValueWithError(value, bound)


def final_integral(
    embedding: Embedding,
    pieces,
    method: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
) -> ValueWithError:
    """Integral of a sum of compactly supported PL pieces.

    Each piece is (subcomplex, alpha-on-subcomplex); each is integrated
    against the curvature measure of its own subcomplex under the
    restricted embedding, and the results are added. This is how open or
    discontinuous integrands are handled: write them as a signed sum of
    functions on closed subcomplexes first.
    """
    value = 0.0
    bound = 0.0
    for i, (piece, alpha) in enumerate(pieces):
        restricted = embedding.restrict(piece)
        if alpha.complex != piece:
            raise PieceNotSubcomplex(f"piece {i}: alpha is not defined on the piece")
        v, b = curvature_integral(alpha, restricted, method, samples, seed + i)
        value += v
        bound += b
    return ValueWithError(value, bound)


def gauss_bonnet_check(
    embedding: Embedding,
    method: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
) -> dict:
    """Compare total curvature mass with the Euler characteristic."""
    kappa = curvature_measure(embedding, method, samples, seed)
    total = sum(k.value for k in kappa.values())
    bound = sum(k.bound for k in kappa.values())
    chi = embedding.carrier.euler_characteristic()
    return {
        "sum_kappa": total,
        "chi": chi,
        "bound": bound,
        "method": method,
        "discrepancy": abs(total - chi),
    }
