"""Finite (pseudo-)metric spaces: betweenness, intervals, medians, gates.

Every comparison is exact. Distances are stored as Fractions and, for the
vectorised tables, scaled by their common denominator to integers so that
numpy can do the bulk work without rounding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapExceededError, InvalidInputError, NotMedianError
from .rational import scaled_integer_array, to_rat

#: Default bound on the number of points for the brute-force triple scans.
DEFAULT_MAX_POINTS = 64

PointSet = frozenset


class FiniteMetric:
    """Exact symmetric distance matrix over ``n`` indexed points.

    Parameters
    ----------
    dist : sequence of sequences
        Square matrix of rationals (ints, Fractions or ``"p/q"`` strings).
    labels : sequence of str, optional
        Point names, used only for reporting.
    allow_pseudo : bool
        Accept distinct points at distance zero.

    Raises
    ------
    InvalidInputError
        If the matrix is not square, not symmetric, has a nonzero diagonal,
        a negative entry, violates the triangle inequality, or (without
        ``allow_pseudo``) puts distinct points at distance zero.
    """

    def __init__(self, dist, labels=None, allow_pseudo=False):
        rows = [[to_rat(v) for v in row] for row in dist]
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InvalidInputError("distance matrix must be square")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise InvalidInputError("labels length does not match matrix size")
        self.n = n
        self.d = tuple(tuple(row) for row in rows)
        self.labels = labels
        self.allow_pseudo = bool(allow_pseudo)
        if n:
            self._ints, self._den = scaled_integer_array(self.d)
        else:
            self._ints, self._den = np.zeros((0, 0), dtype=np.int64), 1
        self._validate()
        self._between = None
        self._median_table = None
        self._median_counts = None

    def _validate(self):
        D = self._ints
        n = self.n
        for i in range(n):
            if self.d[i][i] != 0:
                raise InvalidInputError(f"d({i},{i}) = {self.d[i][i]} is not zero")
            for j in range(i + 1, n):
                if self.d[i][j] != self.d[j][i]:
                    raise InvalidInputError(f"matrix not symmetric at ({i},{j})")
                if self.d[i][j] < 0:
                    raise InvalidInputError(f"negative distance at ({i},{j})")
                if self.d[i][j] == 0 and not self.allow_pseudo:
                    raise InvalidInputError(
                        f"points {i} and {j} are at distance 0; pass allow_pseudo=True"
                    )
        if n:
            # D[i,k] <= D[i,j] + D[j,k]
            slack = D[:, :, None] + D[None, :, :] - D[:, None, :]
            bad = np.argwhere(slack < 0)
            if len(bad):
                i, j, k = (int(t) for t in bad[0])
                raise InvalidInputError(
                    f"triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})"
                )

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.d[i][j]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, FiniteMetric):
            return NotImplemented
        return self.d == other.d and self.labels == other.labels

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        return f"FiniteMetric(n={self.n}, allow_pseudo={self.allow_pseudo})"

    def check_index(self, *points):
        for p in points:
            if not isinstance(p, (int, np.integer)) or not 0 <= p < self.n:
                raise InvalidInputError(f"point index {p!r} out of range 0..{self.n - 1}")

    def betweenness(self) -> np.ndarray:
        """Boolean tensor ``B[a, b, x]``: is ``x`` between ``a`` and ``b``."""
        if self._between is None:
            D = self._ints
            self._between = (D[:, None, :] + D[None, :, :].transpose(0, 2, 1)
                             == D[:, :, None]) if self.n else np.zeros((0, 0, 0), bool)
            self._between = np.asarray(self._between, dtype=bool)
        return self._between


class L1Points:
    """Points of ``Q^dim`` carrying the l1 distance."""

    def __init__(self, coords, dim=None, allow_pseudo=False):
        pts = tuple(tuple(to_rat(v) for v in p) for p in coords)
        if dim is None:
            dim = len(pts[0]) if pts else 0
        if any(len(p) != dim for p in pts):
            raise InvalidInputError(f"every point must have {dim} coordinates")
        if not allow_pseudo and len(set(pts)) != len(pts):
            raise InvalidInputError("duplicate points need allow_pseudo=True")
        self.dim = dim
        self.coords = pts
        self.allow_pseudo = bool(allow_pseudo)

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return f"L1Points(dim={self.dim}, n={len(self.coords)})"

    def metric(self) -> FiniteMetric:
        return FiniteMetric(l1_distance_matrix(self.coords), allow_pseudo=self.allow_pseudo)


def l1_distance_matrix(coords):
    return [[sum((abs(x - y) for x, y in zip(p, q)), Fraction(0)) for q in coords]
            for p in coords]


class Rectangle(NamedTuple):
    a: int
    b: int
    c: int
    d: int


@dataclass(frozen=True)
class MedianVerdict:
    is_median: bool
    witness: tuple | None = None
    median_count: int | None = None

    def __bool__(self):
        return self.is_median


# -- betweenness and intervals ------------------------------------------------

def is_between(M: FiniteMetric, a: int, x: int, b: int) -> bool:
    M.check_index(a, x, b)
    return M.d[a][x] + M.d[x][b] == M.d[a][b]


def interval(M: FiniteMetric, a: int, b: int) -> frozenset:
    M.check_index(a, b)
    return frozenset(int(x) for x in np.flatnonzero(M.betweenness()[a, b]))


def is_geodesic(M: FiniteMetric, seq: Sequence[int]) -> bool:
    """True iff the path length of ``seq`` equals the distance of its ends."""
    M.check_index(*seq)
    if len(seq) < 2:
        return True
    length = sum((M.d[p][q] for p, q in zip(seq, seq[1:])), Fraction(0))
    return length == M.d[seq[0]][seq[-1]]


def median_set(M: FiniteMetric, a: int, b: int, c: int) -> frozenset:
    M.check_index(a, b, c)
    B = M.betweenness()
    return frozenset(int(x) for x in np.flatnonzero(B[a, b] & B[b, c] & B[a, c]))


def _check_cap(M, max_points):
    if max_points is not None and M.n > max_points:
        raise CapExceededError(f"{M.n} points exceed the cap of {max_points}")


def _median_tables(M: FiniteMetric, max_points=DEFAULT_MAX_POINTS):
    """Median-set sizes and unique medians for all triples.

    Intervals are packed into 64-bit words so each triple costs a handful of
    word operations instead of an ``O(n)`` scan.
    """
    if M._median_table is not None:
        return M._median_counts, M._median_table
    _check_cap(M, max_points)
    n = M.n
    B = M.betweenness()
    words = max(1, -(-n // 64))
    packed = np.packbits(B, axis=2, bitorder="little")
    pad = words * 8 - packed.shape[2]
    if pad:
        packed = np.concatenate([packed, np.zeros((n, n, pad), np.uint8)], axis=2)
    P = np.ascontiguousarray(packed).view(np.uint64).reshape(n, n, words)
    counts = np.zeros((n, n, n), dtype=np.int32)
    table = np.full((n, n, n), -1, dtype=np.int64)
    offsets = np.arange(words, dtype=np.int64) * 64
    for a in range(n):
        T = P[a][:, None, :] & P & P[a][None, :, :]
        cnt = np.bitwise_count(T).sum(axis=-1)
        counts[a] = cnt
        one = cnt == 1
        if one.any():
            sel = T[one]
            w = np.argmax(sel != 0, axis=-1)
            val = sel[np.arange(len(sel)), w]
            bit = np.log2(val.astype(np.float64)).astype(np.int64)
            table[a][one] = offsets[w] + bit
    M._median_counts, M._median_table = counts, table
    return counts, table


def is_median(M: FiniteMetric, max_points=DEFAULT_MAX_POINTS) -> MedianVerdict:
    """Decide whether every triple has exactly one median point.

    On failure the lexicographically smallest offending triple is returned
    together with the size of its median set.
    """
    if M.allow_pseudo and any(M.d[i][j] == 0 for i in range(M.n) for j in range(i)):
        raise InvalidInputError("pseudo-metric input: take the quotient first")
    if M.n == 0:
        return MedianVerdict(True)
    counts, _ = _median_tables(M, max_points)
    bad = np.argwhere(counts != 1)
    if len(bad):
        a, b, c = (int(t) for t in bad[0])
        return MedianVerdict(False, (a, b, c), int(counts[a, b, c]))
    return MedianVerdict(True)


def require_median(M: FiniteMetric, max_points=DEFAULT_MAX_POINTS):
    verdict = is_median(M, max_points)
    if not verdict:
        raise NotMedianError(
            f"metric is not median: triple {verdict.witness} has "
            f"{verdict.median_count} median points", verdict.witness)
    return M._median_table


def median(M: FiniteMetric, a: int, b: int, c: int) -> int:
    """The median point ``m(a, b, c)`` of a median metric."""
    M.check_index(a, b, c)
    return int(require_median(M)[a, b, c])


def median_table(M: FiniteMetric, max_points=DEFAULT_MAX_POINTS) -> np.ndarray:
    """``T[a, b, c] = m(a, b, c)`` for a median metric."""
    return require_median(M, max_points)


def quotient(M: FiniteMetric):
    """Merge zero-distance classes.

    Returns ``(metric, class_map)`` where ``class_map[i]`` is the index of
    the class of point ``i``; classes are numbered by first appearance.
    """
    reps, class_map = [], []
    for i in range(M.n):
        for k, r in enumerate(reps):
            if M.d[i][r] == 0:
                class_map.append(k)
                break
        else:
            class_map.append(len(reps))
            reps.append(i)
    labels = None if M.labels is None else [M.labels[r] for r in reps]
    Q = FiniteMetric([[M.d[r][s] for s in reps] for r in reps], labels=labels)
    return Q, tuple(class_map)


# -- gates, rectangles, procedures -----------------------------------------

def gate(M: FiniteMetric, x: int, Y) -> int | None:
    """The point of ``Y`` lying between ``x`` and every point of ``Y``.

    Returns ``None`` when no such point exists.
    """
    Y = sorted(set(Y))
    if not Y:
        raise InvalidInputError("gate needs a non-empty subset")
    M.check_index(x, *Y)
    B = M.betweenness()
    for p in Y:
        # p between x and y  <=>  B[x, y, p]
        if all(B[x, y, p] for y in Y):
            return p
    return None


def is_rectangle(M: FiniteMetric, a: int, b: int, c: int, d: int) -> bool:
    M.check_index(a, b, c, d)
    B = M.betweenness()
    return bool(B[a, c, b] and B[b, d, c] and B[c, a, d] and B[d, b, a])


def are_parallel(M: FiniteMetric, pair1, pair2) -> bool:
    """``(a, b)`` and ``(d, c)`` are parallel iff ``[a, b, c, d]`` is a rectangle."""
    (a, b), (d, c) = pair1, pair2
    return is_rectangle(M, a, b, c, d)


def central_rectangle(M: FiniteMetric, x: int, a: int, y: int, b: int) -> Rectangle:
    """Central rectangle ``[x', a', y', b']`` of the quadrilateral ``[x, a, y, b]``."""
    M.check_index(x, a, y, b)
    m = require_median(M)
    xp, yp = int(m[x, a, b]), int(m[y, a, b])
    ap, bp = int(m[a, xp, yp]), int(m[b, xp, yp])
    return Rectangle(xp, ap, yp, bp)


def project_pair(M: FiniteMetric, x: int, y: int, target) -> tuple[int, int]:
    """Projection of ``(x, y)`` with target ``(a, b)``."""
    a, b = target
    M.check_index(x, y, a, b)
    m = require_median(M)
    return int(m[x, a, b]), int(m[y, a, b])


def straighten_path(M: FiniteMetric, a: int, x: int, y: int, b: int) -> tuple[int, int]:
    """Straighten ``(a, x, y, b)`` to the geodesic ``(a, p, q, b)``."""
    M.check_index(a, x, y, b)
    m = require_median(M)
    B = M.betweenness()
    if not (B[a, b, x] and B[a, b, y]):
        raise InvalidInputError("straightening needs x and y in I(a, b)")
    return int(m[a, x, y]), int(m[b, x, y])


def delta_median_set(M: FiniteMetric, a: int, b: int, c: int, delta) -> frozenset:
    """Points between each pair of ``a, b, c`` up to ``2 * delta``."""
    delta = to_rat(delta)
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    M.check_index(a, b, c)
    d = M.d
    tol = 2 * delta
    out = []
    for x in range(M.n):
        if (d[a][x] + d[x][b] <= d[a][b] + tol
                and d[b][x] + d[x][c] <= d[b][c] + tol
                and d[a][x] + d[x][c] <= d[a][c] + tol):
            out.append(x)
    return frozenset(out)


def ball(M: FiniteMetric, center: int, radius) -> frozenset:
    radius = to_rat(radius)
    return frozenset(x for x in range(M.n) if M.d[center][x] <= radius)


# -- median closure in l1 --------------------------------------------------

def coordinate_median(p, q, r):
    return tuple(u + v + w - max(u, v, w) - min(u, v, w) for u, v, w in zip(p, q, r))


def median_closure(P: L1Points, max_points=4096):
    """Close a finite point set under the coordinatewise median.

    Generators keep their input order (duplicates dropped); each round of new
    points is appended in lexicographic order. Returns ``(metric, coords)``.
    """
    if not len(P):
        return FiniteMetric([]), ()
    seen, pts = set(), []
    for p in P.coords:
        if p not in seen:
            seen.add(p)
            pts.append(p)
    flat = [v for p in pts for v in p] or [Fraction(0)]
    arr, den = scaled_integer_array([flat])
    ints = [tuple(int(v) for v in arr[0, i * P.dim:(i + 1) * P.dim]) for i in range(len(pts))]
    known = set(ints)
    frontier_start = 0
    while True:
        X = np.array(ints, dtype=object if arr.dtype == object else np.int64).reshape(len(ints), P.dim)
        n = len(ints)
        # triples with at least one point from the latest round
        idx = np.array([t for t in itertools.combinations(range(n), 3)
                        if t[2] >= frontier_start], dtype=np.int64).reshape(-1, 3)
        if len(idx) == 0:
            break
        A, Bq, C = X[idx[:, 0]], X[idx[:, 1]], X[idx[:, 2]]
        S = np.stack([A, Bq, C])
        med = A + Bq + C - S.max(axis=0) - S.min(axis=0)
        fresh = sorted({tuple(int(v) for v in row) for row in med} - known)
        if not fresh:
            break
        if n + len(fresh) > max_points:
            raise CapExceededError(f"median closure exceeds {max_points} points")
        frontier_start = n
        known.update(fresh)
        ints.extend(fresh)
    coords = tuple(tuple(Fraction(v, den) for v in p) for p in ints)
    return FiniteMetric(l1_distance_matrix(coords)), coords
