"""Seeded random instances: point sets, median closures, wall spaces, kernels.

Every generator takes a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .kernels import Kernel, squared_euclidean
from .metric import FiniteMetric, L1Points, l1_distance_matrix, median_closure
from .walls import WallSpace

WEIGHTS = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2))


def random_points(rng: random.Random, n, dim, lo=0, hi=3, denominators=(1,)):
    """``n`` distinct points with coordinates ``k / q``, ``lo <= k / q <= hi``."""
    pts = set()
    while len(pts) < n:
        pts.add(tuple(Fraction(rng.randint(lo * q, hi * q), q)
                      for q in (rng.choice(denominators) for _ in range(dim))))
    pts = sorted(pts)
    rng.shuffle(pts)
    return L1Points(pts, dim)


def random_median_closure(rng: random.Random, max_generators=6, dim=3, hi=2, max_points=64):
    """Median closure of at most ``max_generators`` random points of ``Q^dim``.

    Returns ``(metric, coords)``. Coordinates use halves so closures are not
    always sub-grids.
    """
    while True:
        k = rng.randint(1, max_generators)
        P = random_points(rng, k, dim, 0, hi, denominators=(1, 2))
        M, coords = median_closure(P, max_points=4096)
        if M.n <= max_points:
            return M, coords


def grid(shape):
    """Integer grid ``prod range(s + 1)`` under l1, points in lexicographic order."""
    pts = list(itertools.product(*(range(s + 1) for s in shape)))
    return FiniteMetric(l1_distance_matrix(pts)), pts


def random_grid_decomposition(rng: random.Random, shape, max_blocks=3):
    """A pair ``a, b`` of grid points and pairs whose wall intervals partition ``W(a|b)``.

    On each axis the cut positions between ``a`` and ``b`` are split into
    contiguous runs, each given to a different block, so every block is the
    wall interval of one pair of grid points. Returns ``(M, coords, a, b, pairs)``
    with point indices.
    """
    M, pts = grid(shape)
    index = {p: i for i, p in enumerate(pts)}
    a = tuple(rng.randint(0, s) for s in shape)
    b = tuple(rng.randint(0, s) for s in shape)
    k = rng.randint(1, max_blocks)
    lo = [[rng.randint(0, s) for s in shape] for _ in range(k)]
    hi = [list(row) for row in lo]
    for axis, s in enumerate(shape):
        start, stop = sorted((a[axis], b[axis]))
        if start == stop:
            continue
        pieces = rng.randint(1, min(k, stop - start))
        cuts = sorted(rng.sample(range(start + 1, stop), pieces - 1))
        bounds = [start] + cuts + [stop]
        owners = rng.sample(range(k), pieces)
        for owner, (u, v) in zip(owners, zip(bounds, bounds[1:])):
            if rng.random() < 0.5:
                u, v = v, u
            lo[owner][axis], hi[owner][axis] = u, v
        for owner in set(range(k)) - set(owners):
            # keep untouched coordinates equal so this axis adds no walls
            hi[owner][axis] = lo[owner][axis]
    pairs = [(index[tuple(lo[j])], index[tuple(hi[j])]) for j in range(k)]
    return M, pts, index[a], index[b], pairs


def random_wall_space(rng: random.Random, n, k, weights=WEIGHTS):
    """``k`` walls with uniformly random halfspaces on ``n`` points."""
    walls = []
    for _ in range(k):
        h = [p for p in range(n) if rng.random() < 0.5]
        walls.append((h, rng.choice(weights)))
    return WallSpace(n, walls)


def random_l1_kernel(rng: random.Random, n, dim=3, hi=3):
    P = random_points(rng, n, dim, 0, hi, denominators=(1, 2))
    return Kernel(l1_distance_matrix(P.coords))


def random_squared_euclidean(rng: random.Random, n, dim=3, hi=4):
    P = random_points(rng, n, dim, -hi, hi, denominators=(1, 2, 3))
    return squared_euclidean(P.coords)


def random_graph_kernel(rng: random.Random, n, p=0.5):
    """Shortest-path metric of a random connected graph (often not l1)."""
    while True:
        edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
        INF = n + 1
        d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
        for i, j in edges:
            d[i][j] = d[j][i] = 1
        for k, i, j in itertools.product(range(n), repeat=3):
            if d[i][k] + d[k][j] < d[i][j]:
                d[i][j] = d[i][k] + d[k][j]
        if all(v < INF for row in d for v in row):
            return Kernel(d)


KERNEL_KINDS = ("l1", "squared-euclidean", "graph")


def random_kernel(rng: random.Random, n, kind=None):
    kind = kind or rng.choice(KERNEL_KINDS)
    if kind == "l1":
        return random_l1_kernel(rng, n)
    if kind == "squared-euclidean":
        return random_squared_euclidean(rng, n)
    if kind == "graph":
        return random_graph_kernel(rng, n)
    raise ValueError(f"unknown kernel kind {kind!r}")
