"""Measured walls on finite sets.

A wall is stored as one of its halfspaces ``h`` (a frozenset of point
indices) plus a positive weight; the complementary halfspace is implicit.
Wall families such as ``W(F|G)`` are frozensets of wall indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError, VerificationError
from .metric import FiniteMetric, is_geodesic, require_median
from .rational import to_rat

WallFamily = frozenset


class Wall(NamedTuple):
    h: frozenset
    weight: Fraction


class WallSpace:
    """Finitely many weighted walls on the points ``0..n-1``."""

    def __init__(self, n, walls):
        self.n = int(n)
        out = []
        for h, weight in walls:
            h = frozenset(int(p) for p in h)
            weight = to_rat(weight)
            if any(not 0 <= p < self.n for p in h):
                raise InvalidInputError(f"halfspace {sorted(h)} has points outside 0..{self.n - 1}")
            if weight <= 0:
                raise InvalidInputError(f"wall weight must be positive, got {weight}")
            out.append(Wall(h, weight))
        self.walls = tuple(out)
        # H[w, x]: x lies in the stored halfspace of wall w
        self.H = np.zeros((len(out), self.n), dtype=bool)
        for w, wall in enumerate(out):
            self.H[w, sorted(wall.h)] = True

    def __len__(self):
        return len(self.walls)

    def __repr__(self):
        return f"WallSpace(n={self.n}, walls={len(self.walls)})"

    def __eq__(self, other):
        if not isinstance(other, WallSpace):
            return NotImplemented
        return self.n == other.n and self.walls == other.walls

    def complement(self, w) -> frozenset:
        return frozenset(range(self.n)) - self.walls[w].h

    def measure(self, family) -> Fraction:
        return sum((self.walls[w].weight for w in family), Fraction(0))


def _points(WS, S):
    S = frozenset(int(p) for p in S)
    if any(not 0 <= p < WS.n for p in S):
        raise InvalidInputError(f"point set {sorted(S)} leaves 0..{WS.n - 1}")
    return S


def wall_interval(WS: WallSpace, F, G) -> WallFamily:
    """Walls with ``F`` inside one halfspace and ``G`` inside the other.

    ``W(A|A)`` is empty for non-empty ``A``, while ``W(empty|empty)`` is every wall.
    """
    F, G = _points(WS, F), _points(WS, G)
    H = WS.H
    f, g = sorted(F), sorted(G)
    in_f, out_f = H[:, f].all(axis=1), (~H[:, f]).all(axis=1)
    in_g, out_g = H[:, g].all(axis=1), (~H[:, g]).all(axis=1)
    sep = (in_f & out_g) | (out_f & in_g)
    return frozenset(int(w) for w in np.flatnonzero(sep))


def wall_pdist(WS: WallSpace, x: int, y: int) -> Fraction:
    return WS.measure(wall_interval(WS, {x}, {y}))


def wall_metric(WS: WallSpace) -> FiniteMetric:
    """The wall pseudo-metric as a :class:`FiniteMetric`."""
    return FiniteMetric(_wall_matrix(WS), allow_pseudo=True)


def _wall_matrix(WS):
    n = WS.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for w, wall in enumerate(WS.walls):
        row = WS.H[w]
        for x in range(n):
            for y in range(x + 1, n):
                if row[x] != row[y]:
                    rows[x][y] += wall.weight
                    rows[y][x] += wall.weight
    return rows


# -- ring calculus ---------------------------------------------------------

def ring_intersect(WS: WallSpace, first, second):
    """``W(F|G) & W(F'|G')`` as the two disjoint families of the ring identity.

    Returns ``(W(F u F' | G u G'), W(F u G' | G u F'))``; their disjoint
    union is checked against the explicit intersection.
    """
    (F, G), (F2, G2) = first, second
    F, G, F2, G2 = (_points(WS, S) for S in (F, G, F2, G2))
    if not (F and G and F2 and G2):
        raise InvalidInputError("ring_intersect needs non-empty sets")
    part1 = wall_interval(WS, F | F2, G | G2)
    part2 = wall_interval(WS, F | G2, G | F2)
    explicit = wall_interval(WS, F, G) & wall_interval(WS, F2, G2)
    if part1 & part2 or part1 | part2 != explicit:
        raise VerificationError(
            f"ring intersection identity fails for {sorted(F)}|{sorted(G)} and "
            f"{sorted(F2)}|{sorted(G2)}")
    return part1, part2


class Split(NamedTuple):
    S: frozenset
    T: frozenset
    walls: frozenset


def bipartitions(U):
    """Unordered splits ``{S, T}`` of ``U``; the smallest element stays in ``S``."""
    U = sorted(U)
    if not U:
        yield frozenset(), frozenset()
        return
    first, rest = U[0], U[1:]
    for r in range(len(rest) + 1):
        for chosen in itertools.combinations(rest, r):
            S = frozenset((first, *chosen))
            yield S, frozenset(U) - S


def ring_complement(WS: WallSpace, pair) -> list:
    """Complement of ``W(F|G)`` in the wall set as a disjoint list of wall intervals.

    One :class:`Split` per bipartition ``{S, T}`` of ``F u G`` other than
    ``{F, G}``; the list is checked to partition the complement.
    """
    F, G = (_points(WS, S) for S in pair)
    if not F or not G:
        raise InvalidInputError("ring_complement needs non-empty F and G")
    target = {F, G}
    out = [Split(S, T, wall_interval(WS, S, T))
           for S, T in bipartitions(F | G) if {S, T} != target]
    covered = set()
    for part in out:
        if covered & part.walls:
            raise VerificationError("complement parts overlap")
        covered |= part.walls
    if covered != set(range(len(WS))) - wall_interval(WS, F, G):
        raise VerificationError("complement parts do not cover W minus W(F|G)")
    return out


# -- median spaces ---------------------------------------------------------

def extract_convex_walls(M: FiniteMetric) -> WallSpace:
    """Convex walls of a finite median space with weights realising ``d``.

    Cover edges (pairs whose interval is just the pair) are grouped into
    parallelism classes; each class gives one wall, cut out by the median
    from its lexicographically smallest edge. Convexity of both halfspaces
    and the exact identity ``sum of weights over W(x|y) == d(x, y)`` are
    verified before returning.
    """
    m = require_median(M)
    n = M.n
    B = M.betweenness()
    iu, ju = np.triu_indices(n, 1)
    cover = B[iu, ju].sum(axis=1) == 2
    edges = [(int(x), int(y)) for x, y in zip(iu[cover], ju[cover])]
    oriented = edges + [(y, x) for x, y in edges]
    E = len(oriented)
    X = np.array([e[0] for e in oriented], dtype=np.int64)
    Y = np.array([e[1] for e in oriented], dtype=np.int64)

    parent = list(range(E))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if E:
        # (x, y) and (u, v) parallel  <=>  [x, y, v, u] is a rectangle
        x, y = X[:, None], Y[:, None]
        u, v = X[None, :], Y[None, :]
        rect = B[x, v, y] & B[y, u, v] & B[v, x, u] & B[u, y, x]
        for i, j in np.argwhere(rect):
            ri, rj = find(int(i)), find(int(j))
            if ri != rj:
                parent[ri] = rj

    index = {e: i for i, e in enumerate(oriented)}
    done = set()
    walls = []
    for x, y in sorted(edges):
        cls, rev = find(index[(x, y)]), find(index[(y, x)])
        if cls == rev:
            raise VerificationError(f"edge ({x},{y}) is parallel to its own reversal")
        if cls in done:
            continue
        done.update((cls, rev))
        h = frozenset(int(z) for z in np.flatnonzero(m[x, y, :] == x))
        walls.append((h, M.d[x][y]))
    WS = WallSpace(n, walls)
    _verify_extracted(M, WS)
    return WS


def _verify_extracted(M, WS):
    n = M.n
    B = M.betweenness()
    for w, wall in enumerate(WS.walls):
        mask = WS.H[w]
        for side in (mask, ~mask):
            pts = np.flatnonzero(side)
            if len(pts) == 0:
                raise VerificationError(f"wall {w} has an empty halfspace")
            leak = B[np.ix_(pts, pts)] & ~side
            if leak.any():
                a, b, z = np.argwhere(leak)[0]
                raise VerificationError(
                    f"wall {w} not convex: {pts[a]},{pts[b]} on one side, {z} between them")
    den = M._den
    weights = np.array([int(wall.weight * den) for wall in WS.walls],
                       dtype=M._ints.dtype if M._ints.dtype != object else object)
    sep = WS.H[:, :, None] != WS.H[:, None, :]
    total = np.tensordot(weights, sep.astype(weights.dtype), axes=(0, 0)) if len(WS) else \
        np.zeros((n, n), dtype=M._ints.dtype)
    bad = np.argwhere(total != M._ints)
    if len(bad):
        x, y = (int(t) for t in bad[0])
        raise VerificationError(
            f"wall measure differs from distance on pair ({x},{y})")


def reduce_to_pair(M: FiniteMetric, F, G, walls: WallSpace | None = None):
    """Points ``(p, q)`` with ``W(p|q) == W(F|G)`` in a median space.

    Peels one point off the larger side at a time: ``W(F1 + {x} | G)`` is
    ``W(F1|G) & W(x|G)``, and the intersection of two wall intervals is the
    wall interval of the projected pair.
    """
    F, G = sorted(set(F)), sorted(set(G))
    if not F or not G:
        raise InvalidInputError("reduce_to_pair needs non-empty F and G")
    M.check_index(*F, *G)
    m = require_median(M)

    def reduce(F, G):
        if len(F) == 1 and len(G) == 1:
            return F[0], G[0]
        if len(F) >= 2:
            a, b = reduce(F[:-1], G)
            c, d = reduce(F[-1:], G)
        else:
            a, b = reduce(F, G[:-1])
            c, d = reduce(F, G[-1:])
        return int(m[c, a, b]), int(m[d, a, b])

    p, q = reduce(F, G)
    if walls is not None and wall_interval(walls, {p}, {q}) != wall_interval(walls, F, G):
        raise VerificationError(f"W({p}|{q}) differs from W(F|G)")
    return p, q


def wall_decomposition_along_geodesic(M: FiniteMetric, WS: WallSpace, seq):
    """Split ``W(x_1|x_k)`` into the consecutive families ``W(x_i|x_{i+1})``."""
    seq = [int(s) for s in seq]
    if not seq:
        raise InvalidInputError("empty sequence")
    if not is_geodesic(M, seq):
        raise InvalidInputError(f"sequence {seq} is not geodesic")
    parts = [wall_interval(WS, {p}, {q}) for p, q in zip(seq, seq[1:])]
    union = set()
    for part in parts:
        if union & part:
            raise VerificationError("consecutive wall families overlap")
        union |= part
    if union != wall_interval(WS, {seq[0]}, {seq[-1]}):
        raise VerificationError("consecutive wall families do not cover W(x_1|x_k)")
    return parts


@dataclass(frozen=True)
class SubdivisionResult:
    """Geodesic sequence ``a = a_0, ..., a_{2^k - 1} = b`` and segment blocks.

    ``partition[j]`` lists the 0-based segment indices ``i`` (segment ``i``
    joins ``sequence[i]`` and ``sequence[i + 1]``) whose walls make up
    ``W(x_j|y_j)``.
    """

    sequence: tuple
    partition: tuple


def _check_decomposition(WS, a, b, pairs):
    target = wall_interval(WS, {a}, {b})
    seen = {}
    for j, (x, y) in enumerate(pairs):
        for w in wall_interval(WS, {x}, {y}):
            if w in seen:
                raise InvalidInputError(
                    f"wall {w} lies in blocks {seen[w]} and {j}: blocks are not disjoint")
            if w not in target:
                raise InvalidInputError(f"wall {w} of block {j} does not separate a and b")
            seen[w] = j
    missing = target - set(seen)
    if missing:
        raise InvalidInputError(f"wall {min(missing)} of W(a|b) is in no block")


def subdivide_interval(M: FiniteMetric, a: int, b: int, pairs, walls: WallSpace | None = None):
    """Realise a decomposition ``W(a|b) = W(x_1|y_1) + ... + W(x_k|y_k)`` on a geodesic.

    Returns a :class:`SubdivisionResult` with ``2**k`` points and blocks of
    sizes ``1, 2, 4, ...``. Degenerate (zero-length) segments are kept.
    """
    pairs = [(int(x), int(y)) for x, y in pairs]
    M.check_index(a, b, *(p for pair in pairs for p in pair))
    m = require_median(M)
    WS = walls if walls is not None else extract_convex_walls(M)
    _check_decomposition(WS, a, b, pairs)
    if not pairs:
        return SubdivisionResult((a,), ())

    def run(a, b, pairs):
        pairs = [(int(m[x, a, b]), int(m[y, a, b])) for x, y in pairs]
        if len(pairs) == 1:
            return [a, b], [[0]]
        (x1, y1), rest = pairs[0], pairs[1:]
        p1, q1 = int(m[a, x1, y1]), int(m[b, x1, y1])
        left, right = [], []
        for x, y in rest:
            p, q = int(m[a, x, y]), int(m[b, x, y])
            left.append((int(m[p, a, p1]), int(m[q, a, p1])))
            right.append((int(m[p, q1, b]), int(m[q, q1, b])))
        lseq, lpart = run(a, p1, left)
        rseq, rpart = run(q1, b, right)
        half = len(lseq)
        partition = [[half - 1]]
        partition += [lp + [i + half for i in rp] for lp, rp in zip(lpart, rpart)]
        return lseq + rseq, partition

    seq, partition = run(a, b, pairs)
    result = SubdivisionResult(tuple(seq), tuple(tuple(sorted(p)) for p in partition))
    _verify_subdivision(M, WS, a, b, pairs, result)
    return result


def _verify_subdivision(M, WS, a, b, pairs, result):
    seq, partition = result.sequence, result.partition
    k = len(pairs)
    if len(seq) != 2**k or seq[0] != a or seq[-1] != b:
        raise VerificationError("subdivision has the wrong shape")
    if not is_geodesic(M, seq):
        raise VerificationError("subdivision sequence is not geodesic")
    segments = [wall_interval(WS, {p}, {q}) for p, q in zip(seq, seq[1:])]
    used = sorted(i for block in partition for i in block)
    if used != list(range(len(seq) - 1)):
        raise VerificationError("blocks do not partition the segments")
    for j, ((x, y), block) in enumerate(zip(pairs, partition)):
        if len(block) != 2**j:
            raise VerificationError(f"block {j} has {len(block)} segments, expected {2**j}")
        fam = set()
        for i in block:
            if fam & segments[i]:
                raise VerificationError(f"block {j} segments overlap")
            fam |= segments[i]
        if fam != wall_interval(WS, {x}, {y}):
            raise VerificationError(f"block {j} walls differ from W(x_{j}|y_{j})")
        if sum((M.d[seq[i]][seq[i + 1]] for i in block), Fraction(0)) != M.d[x][y]:
            raise VerificationError(f"block {j} lengths do not add up to d(x_{j}, y_{j})")
