"""l1 embeddings: cut-cone decompositions and coordinates from walls."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError, InvalidInputError, VerificationError
from .lp import FarkasCertificate, LpInstance, lp_feasible
from .rational import to_rat
from .walls import WallSpace, wall_pdist

DEFAULT_MAX_POINTS = 12


def _matrix(obj):
    """Distance rows of a FiniteMetric, a Kernel, or a plain square matrix."""
    for attr in ("d", "psi"):
        rows = getattr(obj, attr, None)
        if rows is not None:
            return rows
    return [[to_rat(v) for v in row] for row in obj]


def canonical_cuts(n):
    """Non-empty subsets of ``{1, ..., n-1}``, ordered by their bitmask."""
    return [frozenset(p for p in range(1, n) if mask >> (p - 1) & 1)
            for mask in range(1, 1 << max(n - 1, 0))]


def separates(S, x, y):
    return (x in S) != (y in S)


@dataclass(frozen=True)
class CutDecomposition:
    """``d = sum of weight * delta_S`` over the listed cuts (point 0 never in ``S``)."""

    n: int
    cuts: tuple
    weights: tuple
    feasible = True

    def distance(self, x, y) -> Fraction:
        return sum((w for S, w in zip(self.cuts, self.weights) if separates(S, x, y)),
                   Fraction(0))

    def verify(self, dist, slack=0) -> bool:
        rows = _matrix(dist)
        if any(w <= 0 for w in self.weights):
            return False
        return all(abs(self.distance(x, y) - rows[x][y]) <= slack
                   for x in range(self.n) for y in range(x + 1, self.n))


@dataclass(frozen=True)
class CutConeInfeasible:
    """Farkas certificate for the cut-cone system.

    ``certificate.y`` is indexed by ``pairs`` (twice over, lower then upper
    bounds, in slack mode). It proves that no nonnegative combination of
    cut semimetrics equals the input.
    """

    n: int
    pairs: tuple
    certificate: FarkasCertificate
    feasible = False


def cut_cone_instance(dist, slack=0):
    rows = _matrix(dist)
    n = len(rows)
    cuts = canonical_cuts(n)
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    A = [[Fraction(int(separates(S, x, y))) for S in cuts] for x, y in pairs]
    b = [rows[x][y] for x, y in pairs]
    return LpInstance(A, b, slack), cuts, pairs


def cut_cone_decompose(dist, slack=0, max_points=DEFAULT_MAX_POINTS):
    """Write a finite (pseudo-)metric as a nonnegative sum of cut semimetrics.

    Returns a :class:`CutDecomposition` (only positive weights kept) or a
    :class:`CutConeInfeasible`. With ``slack > 0`` each pair may miss its
    distance by at most ``slack``.
    """
    n = len(_matrix(dist))
    if max_points is not None and n > max_points:
        raise CapExceededError(f"{n} points exceed the LP cap of {max_points}")
    P, cuts, pairs = cut_cone_instance(dist, slack)
    if not pairs:
        return CutDecomposition(n, (), ())
    result = lp_feasible(P)
    if not result.feasible:
        return CutConeInfeasible(n, tuple(pairs), result)
    support = [(S, w) for S, w in zip(cuts, result.x) if w > 0]
    dec = CutDecomposition(n, tuple(S for S, _ in support), tuple(w for _, w in support))
    if not dec.verify(dist, P.slack):
        raise VerificationError("cut decomposition fails re-summation")
    return dec


def verify_cut_certificate(dist, infeasible: CutConeInfeasible, slack=0) -> bool:
    """Re-check a cut-cone Farkas certificate from the data alone."""
    from .lp import verify_farkas
    P, _, pairs = cut_cone_instance(dist, slack)
    return tuple(pairs) == infeasible.pairs and verify_farkas(P, infeasible.certificate.y)


def walls_decomposition(WS: WallSpace) -> CutDecomposition:
    """Group wall weights by the cut each wall induces."""
    acc = {}
    everything = frozenset(range(WS.n))
    for wall in WS.walls:
        S = wall.h if 0 not in wall.h else everything - wall.h
        if S and S != everything:
            acc[S] = acc.get(S, Fraction(0)) + wall.weight
    order = sorted(acc, key=lambda S: sum(1 << (p - 1) for p in S))
    return CutDecomposition(WS.n, tuple(order), tuple(acc[S] for S in order))


def walls_to_embedding(WS: WallSpace, x0: int):
    """l1 coordinates, one per wall: the weight if the wall separates ``x`` from ``x0``."""
    if not 0 <= x0 < WS.n:
        raise InvalidInputError(f"base point {x0} out of range")
    H = WS.H
    coords = tuple(
        tuple(wall.weight if H[w, x] != H[w, x0] else Fraction(0)
              for w, wall in enumerate(WS.walls))
        for x in range(WS.n))
    for x, y in itertools.combinations(range(WS.n), 2):
        l1 = sum((abs(u - v) for u, v in zip(coords[x], coords[y])), Fraction(0))
        if l1 != wall_pdist(WS, x, y):
            raise VerificationError(f"embedding distorts the pair ({x},{y})")
    return coords
