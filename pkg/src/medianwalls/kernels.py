"""Finite kernels: negative type, bounded hypermetricity, measure definiteness.

The negative-type (conditionally negative definite) test is exact: it
decides positive semidefiniteness of the Gram-like matrix
``P[i, j] = psi(i, o) + psi(j, o) - psi(i, j)`` by rational elimination and,
on failure, rebuilds an explicit zero-sum vector on which the quadratic form
is positive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceededError, InvalidInputError, VerificationError
from .l1embed import DEFAULT_MAX_POINTS as LP_MAX_POINTS
from .l1embed import CutConeInfeasible, CutDecomposition, cut_cone_decompose
from .rational import dyadic_power, scaled_integer_array, to_rat

#: Bits kept by dyadic approximations of irrational entries.
APPROX_BITS = 48
#: Tolerance for negative type of approximated kernels and LP slack on the
#: square-root path.
DEFAULT_TOLERANCE = Fraction(1, 2**24)
DEFAULT_MAX_VECTORS = 2_000_000


class Kernel:
    """Symmetric nonnegative matrix with zero diagonal.

    ``approximate`` marks kernels whose entries are dyadic approximations of
    irrational values (from :func:`schoenberg_power`).
    """

    def __init__(self, psi, labels=None, approximate=False):
        rows = [[to_rat(v) for v in row] for row in psi]
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InvalidInputError("kernel matrix must be square")
        for i in range(n):
            if rows[i][i] != 0:
                raise InvalidInputError(f"psi({i},{i}) = {rows[i][i]} is not zero")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InvalidInputError(f"kernel not symmetric at ({i},{j})")
                if rows[i][j] < 0:
                    raise InvalidInputError(f"negative kernel value at ({i},{j})")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise InvalidInputError("labels length does not match kernel size")
        self.n = n
        self.psi = tuple(tuple(row) for row in rows)
        self.labels = labels
        self.approximate = bool(approximate)

    def __getitem__(self, ij):
        i, j = ij
        return self.psi[i][j]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Kernel):
            return NotImplemented
        return self.psi == other.psi and self.approximate == other.approximate

    def __hash__(self):
        return hash(self.psi)

    def __repr__(self):
        return f"Kernel(n={self.n}, approximate={self.approximate})"

    @classmethod
    def from_metric(cls, M):
        return cls(M.d, labels=M.labels)

    def quadratic_form(self, lam) -> Fraction:
        """``sum_{i,j} lam_i lam_j psi(i, j)``."""
        lam = [to_rat(v) for v in lam]
        return sum((lam[i] * lam[j] * self.psi[i][j]
                    for i in range(self.n) for j in range(self.n)
                    if lam[i] and lam[j]), Fraction(0))


def pullback(K: Kernel, f) -> Kernel:
    """Kernel ``psi(f(i), f(j))`` on the domain of the index map ``f``."""
    f = list(f)
    if any(not 0 <= v < K.n for v in f):
        raise InvalidInputError("index map leaves the kernel's points")
    return Kernel([[K.psi[a][b] for b in f] for a in f], approximate=K.approximate)


def squared_euclidean(points) -> Kernel:
    pts = [[to_rat(v) for v in p] for p in points]
    return Kernel([[sum(((u - v) ** 2 for u, v in zip(p, q)), Fraction(0)) for q in pts]
                   for p in pts])


# -- negative type ---------------------------------------------------------

@dataclass(frozen=True)
class CndVerdict:
    is_cnd: bool
    violation: tuple | None = None
    value: Fraction | None = None
    tolerance: Fraction = Fraction(0)

    def __bool__(self):
        return self.is_cnd


def negative_direction(P):
    """A vector ``v`` with ``v^T P v < 0``, or ``None`` if ``P`` is PSD.

    Symmetric elimination with the largest positive diagonal pivot; a zero
    diagonal with a nonzero off-diagonal entry is itself a violation.
    """
    n = len(P)
    if n == 0:
        return None
    for i in range(n):
        if P[i][i] < 0:
            return [Fraction(int(t == i)) for t in range(n)]
    k = max(range(n), key=lambda i: (P[i][i], -i))
    if P[k][k] == 0:
        for i, j in itertools.combinations(range(n), 2):
            if P[i][j]:
                v = [Fraction(0)] * n
                v[i], v[j] = Fraction(1), Fraction(-1 if P[i][j] > 0 else 1)
                return v
        return None
    rest = [i for i in range(n) if i != k]
    pkk = P[k][k]
    S = [[P[a][b] - P[a][k] * P[k][b] / pkk for b in rest] for a in rest]
    w = negative_direction(S)
    if w is None:
        return None
    v = [Fraction(0)] * n
    for t, i in enumerate(rest):
        v[i] = w[t]
    v[k] = -sum((P[k][i] * w[t] for t, i in enumerate(rest)), Fraction(0)) / pkk
    return v


def _primitive_integer(vec):
    den = 1
    for v in vec:
        den = math.lcm(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(Fraction(v // g) for v in ints) if g else tuple(Fraction(v) for v in ints)


def is_cnd(K: Kernel, tolerance=0, base=0) -> CndVerdict:
    """Exact conditionally-negative-definite test.

    With ``tolerance > 0`` the test accepts kernels whose form exceeds zero
    by at most ``tolerance * sum of squares`` of the non-base coefficients
    (decided exactly as semidefiniteness of ``P + tolerance * I``). A returned
    violation always has a strictly positive form, checked exactly.
    """
    tolerance = to_rat(tolerance)
    if tolerance < 0:
        raise InvalidInputError("tolerance must be nonnegative")
    n = K.n
    if n <= 1:
        return CndVerdict(True, tolerance=tolerance)
    if not 0 <= base < n:
        raise InvalidInputError(f"base point {base} out of range")
    psi = K.psi
    rest = [i for i in range(n) if i != base]
    P = [[psi[i][base] + psi[j][base] - psi[i][j] + (tolerance if i == j else 0)
          for j in rest] for i in rest]
    v = negative_direction(P)
    if v is None:
        return CndVerdict(True, tolerance=tolerance)
    lam = [Fraction(0)] * n
    for t, i in enumerate(rest):
        lam[i] = v[t]
    lam[base] = -sum(v, Fraction(0))
    lam = _primitive_integer(lam)
    value = K.quadratic_form(lam)
    if value <= 0 or sum(lam) != 0:
        raise VerificationError("negative-type violation does not re-evaluate positive")
    return CndVerdict(False, lam, value, tolerance)


# -- Schoenberg powers -----------------------------------------------------

def schoenberg_power(K: Kernel, alpha, bits=APPROX_BITS) -> Kernel:
    """Entrywise ``psi ** alpha`` for ``0 < alpha <= 1``.

    ``alpha == 1`` returns the kernel unchanged. Otherwise entries are
    dyadic rationals within ``2**-bits`` below the true power and the result
    is flagged approximate.
    """
    alpha = to_rat(alpha)
    if not 0 < alpha <= 1:
        raise InvalidInputError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1:
        return K
    rows = [[dyadic_power(v, alpha, bits) for v in row] for row in K.psi]
    return Kernel(rows, labels=K.labels, approximate=True)


def sqrt_kernel(K: Kernel, bits=APPROX_BITS) -> Kernel:
    return schoenberg_power(K, Fraction(1, 2), bits)


# -- measure definiteness --------------------------------------------------

@dataclass(frozen=True)
class MeasureDefiniteVerdict:
    is_measure_definite: bool
    decomposition: CutDecomposition | None = None
    certificate: CutConeInfeasible | None = None
    triangle_violation: tuple | None = None
    slack: Fraction = Fraction(0)

    def __bool__(self):
        return self.is_measure_definite


def triangle_violation(K: Kernel, slack=0):
    """Lexicographically smallest ``(i, j, k)`` with ``psi(i,k) > psi(i,j) + psi(j,k) + slack``."""
    psi, n = K.psi, K.n
    for i, j, k in itertools.product(range(n), repeat=3):
        if psi[i][k] > psi[i][j] + psi[j][k] + slack:
            return (i, j, k)
    return None


def is_measure_definite(K: Kernel, slack=0, max_points=LP_MAX_POINTS) -> MeasureDefiniteVerdict:
    """Decide whether the kernel is a nonnegative combination of cut semimetrics.

    The triangle inequality is checked first (a failure is an immediate
    no); the cut-cone LP then yields a decomposition or a Farkas
    certificate. ``slack`` relaxes both steps for approximated kernels.
    """
    slack = to_rat(slack)
    if max_points is not None and K.n > max_points:
        raise CapExceededError(f"{K.n} points exceed the LP cap of {max_points}")
    bad = triangle_violation(K, slack)
    if bad is not None:
        return MeasureDefiniteVerdict(False, triangle_violation=bad, slack=slack)
    result = cut_cone_decompose(K, slack=slack, max_points=max_points)
    if result.feasible:
        return MeasureDefiniteVerdict(True, decomposition=result, slack=slack)
    return MeasureDefiniteVerdict(False, certificate=result, slack=slack)


# -- hypermetric inequalities ----------------------------------------------

@dataclass(frozen=True)
class HypermetricVerdict:
    """``holds_at_bound`` only says no violation with ``|lambda_i| <= bound`` exists.

    It is not a proof of hypermetricity.
    """

    holds_at_bound: bool
    bound: int
    violation: tuple | None = None
    value: Fraction | None = None
    checked: int = 0

    def __bool__(self):
        return self.holds_at_bound


def hypermetric_vector_count(n, bound):
    """Integer vectors in ``[-bound, bound]^n`` summing to 1."""
    total = 0
    # first n - 1 coordinates free, last fixed; count those with |last| <= bound
    counts = {0: 1}
    for _ in range(n - 1):
        nxt = {}
        for s, c in counts.items():
            for v in range(-bound, bound + 1):
                nxt[s + v] = nxt.get(s + v, 0) + c
        counts = nxt
    for s, c in counts.items():
        if abs(1 - s) <= bound:
            total += c
    return total if n else 0


def is_hypermetric_bounded(K: Kernel, bound=3, max_vectors=DEFAULT_MAX_VECTORS,
                           chunk=100_000) -> HypermetricVerdict:
    """Check every integer vector with entries in ``[-bound, bound]`` summing to 1.

    Vectors are scanned in lexicographic order of their first ``n - 1``
    entries; the first one with a positive form is reported.
    """
    if bound != int(bound) or bound < 1:
        raise InvalidInputError("bound must be an integer of at least 1")
    bound = int(bound)
    n = K.n
    if n == 0:
        return HypermetricVerdict(True, bound)
    count = hypermetric_vector_count(n, bound)
    if max_vectors is not None and count > max_vectors:
        raise CapExceededError(f"{count} hypermetric vectors exceed the cap of {max_vectors}")
    Psi, den = scaled_integer_array(K.psi)
    peak = int(np.abs(Psi).max()) if n else 0
    exact_int64 = Psi.dtype != object and peak * bound * bound * n * n < 2**62
    if not exact_int64:
        Psi = Psi.astype(object)
    side = 2 * bound + 1
    total = side ** (n - 1)
    checked = 0
    for start in range(0, total, chunk):
        flat = np.arange(start, min(total, start + chunk), dtype=np.int64)
        head = np.stack(np.unravel_index(flat, (side,) * (n - 1)), axis=1) - bound \
            if n > 1 else np.zeros((len(flat), 0), dtype=np.int64)
        last = 1 - head.sum(axis=1)
        keep = np.abs(last) <= bound
        L = np.concatenate([head[keep], last[keep, None]], axis=1)
        if not exact_int64:
            L = L.astype(object)
        checked += len(L)
        values = ((L @ Psi) * L).sum(axis=1)
        hits = np.flatnonzero(values > 0)
        if len(hits):
            lam = tuple(int(v) for v in L[hits[0]])
            return HypermetricVerdict(False, bound, lam, K.quadratic_form(lam), checked)
    return HypermetricVerdict(True, bound, checked=checked)


# -- the hierarchy ---------------------------------------------------------

@dataclass(frozen=True)
class HierarchyVerdict:
    """Results on the three implemented links of the embedding hierarchy.

    ``type1`` is ``"yes"``, ``"no"`` or ``"unknown"`` (size over the LP cap);
    ``hypermetric`` is ``"yes-at-bound"``, ``"no"`` or ``"unknown"``;
    ``negative_type`` is ``"yes"`` or ``"no"``; ``sqrt_type1`` records the
    square-root check run on negative-type inputs (``"yes"``, ``"skipped"``,
    or ``"n/a"`` when the input is not of negative type).
    """

    type1: str
    hypermetric: str
    negative_type: str
    sqrt_type1: str
    bound: int
    measure: MeasureDefiniteVerdict | None
    hyper: HypermetricVerdict | None
    cnd: CndVerdict
    sqrt_measure: MeasureDefiniteVerdict | None = None


def classify(K: Kernel, bound=3, lp_max_points=LP_MAX_POINTS, max_vectors=DEFAULT_MAX_VECTORS,
             sqrt_max_points=8, slack=DEFAULT_TOLERANCE) -> HierarchyVerdict:
    """Run the three tests and enforce the proved implications between them.

    Raises :class:`VerificationError` if a measure-definite kernel fails
    the bounded hypermetric scan or the negative-type test, or if the square
    root of a negative-type kernel is not measure definite within ``slack``.
    """
    measure = None
    if K.n <= lp_max_points:
        measure = is_measure_definite(K, slack=slack if K.approximate else 0,
                                      max_points=lp_max_points)
        type1 = "yes" if measure else "no"
    else:
        type1 = "unknown"
    try:
        hyper = is_hypermetric_bounded(K, bound, max_vectors)
        hypermetric = "yes-at-bound" if hyper else "no"
    except CapExceededError:
        hyper, hypermetric = None, "unknown"
    cnd = is_cnd(K, tolerance=DEFAULT_TOLERANCE if K.approximate else 0)
    negative_type = "yes" if cnd else "no"

    if type1 == "yes" and hypermetric == "no":
        raise VerificationError(f"measure-definite kernel violates hypermetric vector {hyper.violation}")
    if type1 == "yes" and negative_type == "no":
        raise VerificationError(f"measure-definite kernel violates negative type at {cnd.violation}")

    sqrt_measure, sqrt_type1 = None, "n/a"
    if cnd:
        if K.n <= min(sqrt_max_points, lp_max_points):
            sqrt_measure = is_measure_definite(sqrt_kernel(K), slack=slack,
                                               max_points=lp_max_points)
            if not sqrt_measure:
                raise VerificationError("square root of a negative-type kernel is not measure definite")
            sqrt_type1 = "yes"
        else:
            sqrt_type1 = "skipped"
    return HierarchyVerdict(type1, hypermetric, negative_type, sqrt_type1, bound,
                            measure, hyper, cnd, sqrt_measure)
