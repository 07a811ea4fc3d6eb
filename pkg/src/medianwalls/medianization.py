"""The median space of admissible sections of a finite wall space."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import CapExceededError, InvalidInputError, VerificationError
from .metric import FiniteMetric, is_median, quotient
from .walls import WallSpace, wall_pdist

DEFAULT_MAX_WALLS = 20


@dataclass(frozen=True)
class AdmissibleSection:
    """One halfspace per wall: ``choice[w] == 1`` picks the stored ``h``,
    ``0`` picks its complement."""

    choice: tuple
    space: WallSpace = field(compare=False, repr=False)

    def halfspaces(self):
        """The chosen halfspaces as point sets, in wall order."""
        return [wall.h if c else self.space.complement(w)
                for w, (wall, c) in enumerate(zip(self.space.walls, self.choice))]


def _halfspace_rows(WS):
    # row 2w + 1 is h_w, row 2w is its complement
    rows = np.empty((2 * len(WS), WS.n), dtype=bool)
    rows[1::2] = WS.H
    rows[0::2] = ~WS.H
    return rows


def forbidden_choices(WS: WallSpace):
    """Pairs of choices excluded by upward closure.

    Returns ``(unary, binary)``: ``unary`` holds ``(w, s)`` that can never be
    chosen (the halfspace is empty), ``binary`` holds ``((i, s), (j, t))``
    with ``i < j`` that cannot be chosen together.
    """
    rows = _halfspace_rows(WS)
    # contained[p, q]: halfspace p is a subset of halfspace q
    contained = ~(rows[:, None, :] & ~rows[None, :, :]).any(axis=2)
    unary, binary = set(), set()
    for p, q in np.argwhere(contained):
        (i, s), (j, t) = divmod(int(p), 2), divmod(int(q), 2)
        if i == j:
            if s != t:
                unary.add((i, s))
            continue
        # choosing s on i forces t on j, so (i=s, j=1-t) is excluded
        a, b = (i, s), (j, 1 - t)
        binary.add((a, b) if i < j else (b, a))
    return unary, binary


def is_admissible(section: AdmissibleSection) -> bool:
    unary, binary = forbidden_choices(section.space)
    c = section.choice
    if any(c[i] == s for i, s in unary):
        return False
    return not any(c[i] == s and c[j] == t for (i, s), (j, t) in binary)


def section_of_point(WS: WallSpace, x: int) -> AdmissibleSection:
    if not 0 <= x < WS.n:
        raise InvalidInputError(f"point {x} out of range")
    return AdmissibleSection(tuple(int(v) for v in WS.H[:, x]), WS)


def enumerate_sections(WS: WallSpace, max_walls=DEFAULT_MAX_WALLS) -> list:
    """All admissible sections, in lexicographic order of their choice vectors."""
    k = len(WS)
    if max_walls is not None and k > max_walls:
        raise CapExceededError(f"{k} walls exceed the cap of {max_walls}")
    unary, binary = forbidden_choices(WS)
    clash = [[] for _ in range(k)]  # clash[j]: (i, s, t) with i < j
    for (i, s), (j, t) in binary:
        clash[j].append((i, s, t))
    out = []
    choice = [0] * k

    def extend(j):
        if j == k:
            out.append(AdmissibleSection(tuple(choice), WS))
            return
        for t in (0, 1):
            if (j, t) in unary:
                continue
            if any(tt == t and choice[i] == s for i, s, tt in clash[j]):
                continue
            choice[j] = t
            extend(j + 1)

    extend(0)
    return out


def boolean_median(s1: AdmissibleSection, s2: AdmissibleSection, s3: AdmissibleSection):
    """Wall-by-wall majority vote of three sections."""
    if not (s1.space is s2.space is s3.space) and not (s1.space == s2.space == s3.space):
        raise InvalidInputError("sections belong to different wall spaces")
    choice = tuple(int(a + b + c >= 2) for a, b, c in zip(s1.choice, s2.choice, s3.choice))
    return AdmissibleSection(choice, s1.space)


def section_distance(s1: AdmissibleSection, s2: AdmissibleSection) -> Fraction:
    return sum((wall.weight for wall, a, b in zip(s1.space.walls, s1.choice, s2.choice)
                if a != b), Fraction(0))


@dataclass(frozen=True)
class MedianizedSpace:
    space: WallSpace
    sections: tuple
    metric: FiniteMetric
    iota: tuple

    def choice_matrix(self):
        return np.array([s.choice for s in self.sections], dtype=np.int8).reshape(
            len(self.sections), len(self.space))


def _section_metric(WS, sections):
    N, k = len(sections), len(WS)
    C = np.array([s.choice for s in sections], dtype=bool).reshape(N, k)
    rows = [[Fraction(0)] * N for _ in range(N)]
    for w, wall in enumerate(WS.walls):
        differ = np.argwhere(C[:, w][:, None] != C[:, w][None, :])
        for i, j in differ:
            rows[i][j] += wall.weight
    return FiniteMetric(rows, allow_pseudo=True)


def medianize(WS: WallSpace, max_walls=DEFAULT_MAX_WALLS) -> MedianizedSpace:
    """Build the median space of admissible sections with the embedding of points.

    The isometry of the point embedding is checked before returning.
    """
    sections = enumerate_sections(WS, max_walls)
    index = {s.choice: i for i, s in enumerate(sections)}
    iota = []
    for x in range(WS.n):
        c = section_of_point(WS, x).choice
        if c not in index:
            raise VerificationError(f"point section of {x} is not admissible")
        iota.append(index[c])
    metric = _section_metric(WS, sections)
    MS = MedianizedSpace(WS, tuple(sections), metric, tuple(iota))
    for x in range(WS.n):
        for y in range(x + 1, WS.n):
            if metric.d[iota[x]][iota[y]] != wall_pdist(WS, x, y):
                raise VerificationError(f"embedding not isometric on ({x},{y})")
    return MS


def check_median(MS: MedianizedSpace, max_points=None):
    """``is_median`` on the metric quotient of the section space."""
    Q, _ = quotient(MS.metric)
    return is_median(Q, max_points=max_points)


class CubeEdge(NamedTuple):
    i: int
    j: int
    wall: int
    weight: Fraction


def cube_adjacency(MS: MedianizedSpace) -> list:
    """Pairs of sections differing on exactly one wall."""
    C = MS.choice_matrix()
    out = []
    for i in range(len(C)):
        diff = (C[i + 1:] != C[i]).sum(axis=1)
        for off in np.flatnonzero(diff == 1):
            j = i + 1 + int(off)
            w = int(np.flatnonzero(C[i] != C[j])[0])
            out.append(CubeEdge(i, j, w, MS.space.walls[w].weight))
    return out


def section_walls(MS: MedianizedSpace) -> WallSpace:
    """Walls on the section space: ``h_M`` collects the sections choosing ``h``."""
    C = MS.choice_matrix()
    return WallSpace(len(MS.sections),
                     [(np.flatnonzero(C[:, w] == 1).tolist(), wall.weight)
                      for w, wall in enumerate(MS.space.walls)])
