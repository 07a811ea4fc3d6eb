"""Exact rational feasibility LP: find ``x >= 0`` with ``A x = b``.

Phase-one simplex on a dense integer tableau with Bland's rule. When the
system is infeasible, the phase-one duals give a Farkas vector ``y`` with
``y^T A <= 0`` and ``y^T b > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidInputError, VerificationError
from .rational import to_rat


@dataclass(frozen=True)
class LpInstance:
    """Equalities ``A x = b`` over ``x >= 0``.

    With ``slack > 0`` each equality is relaxed to ``|A_i x - b_i| <= slack``.
    """

    A: tuple
    b: tuple
    slack: Fraction = Fraction(0)

    def __init__(self, A, b, slack=0):
        A = tuple(tuple(to_rat(v) for v in row) for row in A)
        b = tuple(to_rat(v) for v in b)
        if len(A) != len(b):
            raise InvalidInputError(f"A has {len(A)} rows but b has {len(b)} entries")
        if A and len({len(row) for row in A}) != 1:
            raise InvalidInputError("rows of A have different lengths")
        slack = to_rat(slack)
        if slack < 0:
            raise InvalidInputError("slack must be nonnegative")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "slack", slack)

    @property
    def n_vars(self):
        return len(self.A[0]) if self.A else 0

    def standard_form(self):
        """Equality system actually solved; adds two slack columns per row in slack mode."""
        if not self.slack:
            return [list(r) for r in self.A], list(self.b)
        m = len(self.A)
        rows, rhs = [], []
        for i, row in enumerate(self.A):
            lo = [Fraction(0)] * (2 * m)
            lo[i] = Fraction(-1)
            rows.append(list(row) + lo)
            rhs.append(self.b[i] - self.slack)
        for i, row in enumerate(self.A):
            hi = [Fraction(0)] * (2 * m)
            hi[m + i] = Fraction(1)
            rows.append(list(row) + hi)
            rhs.append(self.b[i] + self.slack)
        return rows, rhs


@dataclass(frozen=True)
class LpSolution:
    x: tuple
    feasible = True


@dataclass(frozen=True)
class FarkasCertificate:
    """Dual vector over the rows of the standard-form system."""

    y: tuple
    feasible = False


def _dot(u, v):
    return sum((a * c for a, c in zip(u, v) if a and c), Fraction(0))


def verify_solution(P: LpInstance, x) -> bool:
    if len(x) != P.n_vars or any(v < 0 for v in x):
        return False
    return all(abs(_dot(row, x) - bi) <= P.slack for row, bi in zip(P.A, P.b))


def verify_farkas(P: LpInstance, y) -> bool:
    A, b = P.standard_form()
    if len(y) != len(A):
        return False
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        if sum((y[i] * A[i][j] for i in range(len(A)) if A[i][j]), Fraction(0)) > 0:
            return False
    return _dot(y, b) > 0


def lp_feasible(P: LpInstance):
    """Return an :class:`LpSolution` or a :class:`FarkasCertificate`.

    Rows are scaled to integers and pivoted fraction-free: every tableau
    entry is an integer over the common denominator ``det`` (the previous
    pivot), so the arithmetic stays exact without per-entry gcds. The result
    is re-verified exactly; a failure raises :class:`VerificationError`.
    """
    A, b = P.standard_form()
    m = len(A)
    n = len(A[0]) if m else P.n_vars
    scale = []
    T = np.zeros((m + 1, n + m + 1), dtype=object)
    for i in range(m):
        row = list(A[i]) + [b[i]]
        s = 1
        for v in row:
            s = math.lcm(s, v.denominator)
        if b[i] < 0:
            s = -s
        scale.append(s)
        T[i, :n] = [int(v * s) for v in A[i]]
        T[i, n + i] = 1
        T[i, -1] = int(b[i] * s)
    # phase-one reduced costs: artificials cost 1, structurals 0
    T[m, :n] = -T[:m, :n].sum(axis=0) if m else 0
    T[m, -1] = -T[:m, -1].sum() if m else 0
    basis = [n + i for i in range(m)]
    det = 1

    while True:
        neg = np.flatnonzero(T[m, :n + m] < 0)
        if not len(neg):
            break
        enter = int(neg[0])
        col = T[:m, enter]
        leave = None
        for i in np.flatnonzero(col > 0):
            i = int(i)
            if leave is None:
                leave = i
                continue
            # compare T[i,-1]/col[i] with T[leave,-1]/col[leave]
            lhs = T[i, -1] * col[leave]
            rhs = T[leave, -1] * col[i]
            if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                leave = i
        if leave is None:  # phase-one objective is bounded below by 0
            raise VerificationError("phase-one LP reported unbounded")
        piv = T[leave, enter]
        prow = T[leave].copy()
        others = np.arange(m + 1) != leave
        T[others] = (piv * T[others] - np.outer(T[others, enter], prow)) // det
        det = piv
        basis[leave] = enter

    if T[m, -1] == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = Fraction(int(T[i, -1]), int(det))
        x = tuple(x[:P.n_vars])
        if not verify_solution(P, x):
            raise VerificationError("simplex solution fails re-verification")
        return LpSolution(x)
    # reduced cost of artificial i is 1 - u_i in the scaled system
    y = tuple(scale[i] * (1 - Fraction(int(T[m, n + i]), int(det))) for i in range(m))
    if not verify_farkas(P, y):
        raise VerificationError("Farkas certificate fails re-verification")
    return FarkasCertificate(y)
