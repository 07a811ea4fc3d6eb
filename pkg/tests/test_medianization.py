import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from medianwalls import (AdmissibleSection, CapExceededError, FiniteMetric, InvalidInputError,
                         WallSpace, boolean_median, check_median, cube_adjacency,
                         enumerate_sections, extract_convex_walls, is_admissible, is_median,
                         medianize, quotient, section_of_point, section_walls, wall_pdist)
from medianwalls.metric import l1_distance_matrix, median_table

SQUARE_WALLS = WallSpace(4, [([1, 2], 1), ([2, 3], 1)])
TRIPOD = WallSpace(3, [([0], 1), ([1], 1), ([2], 1)])


@st.composite
def wall_spaces(draw, max_points=5, max_walls=6):
    n = draw(st.integers(1, max_points))
    k = draw(st.integers(0, max_walls))
    walls = [(draw(st.sets(st.integers(0, n - 1))), draw(st.sampled_from(["1", "2", "1/2"])))
             for _ in range(k)]
    return WallSpace(n, walls)


def upward_closed(WS, choice):
    """Brute-force admissibility: every chosen halfspace's supersets are chosen."""
    n = WS.n
    halves = []
    for w, wall in enumerate(WS.walls):
        halves.append((w, 1, set(wall.h)))
        halves.append((w, 0, set(range(n)) - set(wall.h)))
    chosen = {(w, s) for w, s in enumerate(choice)}
    for (w, s, h), (w2, s2, h2) in itertools.product(halves, repeat=2):
        if (w, s) in chosen and h <= h2 and (w2, s2) not in chosen:
            return False
    return True


class TestSections:
    def test_two_point_space(self):
        WS = WallSpace(2, [([0], 1)])
        assert section_of_point(WS, 0).choice == (1,)
        assert section_of_point(WS, 1).choice == (0,)

    def test_point_in_every_halfspace(self):
        WS = WallSpace(3, [([0], 1), ([0, 1], 1)])
        assert section_of_point(WS, 0).choice == (1, 1)

    def test_square_corners(self):
        WS = extract_convex_walls(FiniteMetric(l1_distance_matrix([(0, 0), (1, 0), (1, 1), (0, 1)])))
        choices = {section_of_point(WS, x).choice for x in range(4)}
        assert choices == set(itertools.product((0, 1), repeat=2))

    def test_one_wall(self):
        assert len(enumerate_sections(WallSpace(2, [([0], 1)]))) == 2

    def test_nested_halfspaces(self):
        WS = WallSpace(3, [([0], 1), ([0, 1], 1)])
        sections = enumerate_sections(WS)
        assert len(sections) == 3
        assert (1, 0) not in {s.choice for s in sections}

    def test_crossing_walls(self):
        assert len(enumerate_sections(SQUARE_WALLS)) == 4

    def test_lexicographic_order(self):
        choices = [s.choice for s in enumerate_sections(TRIPOD)]
        assert choices == sorted(choices)

    def test_cap(self):
        WS = WallSpace(2, [([0], 1)] * 5)
        with pytest.raises(CapExceededError):
            enumerate_sections(WS, max_walls=4)

    def test_point_out_of_range(self):
        with pytest.raises(InvalidInputError):
            section_of_point(TRIPOD, 3)

    @given(wall_spaces())
    def test_enumeration_matches_brute_force(self, WS):
        expect = [c for c in itertools.product((0, 1), repeat=len(WS)) if upward_closed(WS, c)]
        got = [s.choice for s in enumerate_sections(WS)]
        assert got == expect
        for c in itertools.product((0, 1), repeat=len(WS)):
            assert is_admissible(AdmissibleSection(c, WS)) == (c in set(expect))

    @given(wall_spaces())
    def test_point_sections_admissible(self, WS):
        for x in range(WS.n):
            assert is_admissible(section_of_point(WS, x))


class TestBooleanMedian:
    def test_repeated_section(self):
        s = enumerate_sections(SQUARE_WALLS)
        assert boolean_median(s[0], s[0], s[3]) == s[0]

    def test_majority_vote(self):
        a, b, c = (AdmissibleSection(ch, SQUARE_WALLS) for ch in [(0, 0), (0, 1), (1, 1)])
        assert boolean_median(a, b, c).choice == (0, 1)

    def test_idempotent(self):
        s = enumerate_sections(TRIPOD)
        m = boolean_median(s[0], s[1], s[2])
        assert boolean_median(s[0], s[1], m) == m

    def test_mismatched_spaces(self):
        a = enumerate_sections(TRIPOD)[0]
        b = enumerate_sections(SQUARE_WALLS)[0]
        with pytest.raises(InvalidInputError):
            boolean_median(a, a, b)

    @given(wall_spaces())
    def test_result_admissible_and_median(self, WS):
        MS = medianize(WS)
        Q, cls = quotient(MS.metric)
        T = median_table(Q)
        secs = MS.sections
        index = {s.choice: i for i, s in enumerate(secs)}
        for a, b, c in itertools.combinations_with_replacement(range(len(secs)), 3):
            m = boolean_median(secs[a], secs[b], secs[c])
            assert is_admissible(m)
            assert cls[index[m.choice]] == T[cls[a], cls[b], cls[c]]


class TestMedianize:
    def test_tripod(self):
        MS = medianize(TRIPOD)
        Q, _ = quotient(MS.metric)
        assert Q.n == 4
        center = [i for i in range(Q.n) if sorted(Q.d[i]) == [0, 1, 1, 1]]
        assert len(center) == 1

    def test_square(self):
        MS = medianize(SQUARE_WALLS)
        assert len(MS.sections) == 4
        assert sorted(MS.iota) == [0, 1, 2, 3]
        for x, y in itertools.product(range(4), repeat=2):
            assert MS.metric[MS.iota[x], MS.iota[y]] == wall_pdist(SQUARE_WALLS, x, y)

    def test_no_walls(self):
        MS = medianize(WallSpace(3, []))
        assert len(MS.sections) == 1 and MS.iota == (0, 0, 0)

    @given(wall_spaces())
    def test_median_and_isometric(self, WS):
        MS = medianize(WS)
        assert check_median(MS)
        Q, _ = quotient(MS.metric)
        assert oracles.is_median(Q.d)[0]
        walls = [(set(w.h), w.weight) for w in WS.walls]
        for x, y in itertools.product(range(WS.n), repeat=2):
            assert MS.metric[MS.iota[x], MS.iota[y]] == oracles.wall_distance(walls, x, y)

    @given(wall_spaces())
    def test_idempotent(self, WS):
        MS = medianize(WS)
        again = medianize(section_walls(MS))
        Q1, _ = quotient(MS.metric)
        Q2, cls = quotient(again.metric)
        assert Q1.n == Q2.n
        # every section of the second space is at distance zero from an embedded one
        embedded = {cls[i] for i in again.iota}
        assert embedded == set(range(Q2.n))
        for i, j in itertools.product(range(len(MS.sections)), repeat=2):
            assert again.metric[again.iota[i], again.iota[j]] == MS.metric[i, j]


class TestCubeAdjacency:
    def test_one_wall(self):
        edges = cube_adjacency(medianize(WallSpace(2, [([0], 1)])))
        assert [(e.i, e.j, e.wall) for e in edges] == [(0, 1, 0)]

    def test_square_is_four_cycle(self):
        edges = cube_adjacency(medianize(SQUARE_WALLS))
        assert len(edges) == 4
        degree = [0] * 4
        for e in edges:
            degree[e.i] += 1
            degree[e.j] += 1
        assert degree == [2, 2, 2, 2]

    def test_tripod_is_star(self):
        MS = medianize(TRIPOD)
        edges = cube_adjacency(MS)
        assert len(edges) == 3
        hub = MS.sections.index(next(s for s in MS.sections if s.choice == (0, 0, 0)))
        assert all(hub in (e.i, e.j) for e in edges)
        assert all(e.weight == 1 for e in edges)

    def test_median_closure_of_cube_edges(self):
        # with pairwise distinct walls the 1-skeleton is a median graph
        MS = medianize(WallSpace(4, [([0], 1), ([0, 1], 1), ([3], 1)]))
        n = len(MS.sections)
        d = [[0 if i == j else n + 1 for j in range(n)] for i in range(n)]
        for e in cube_adjacency(MS):
            d[e.i][e.j] = d[e.j][e.i] = 1
        for k, i, j in itertools.product(range(n), repeat=3):
            d[i][j] = min(d[i][j], d[i][k] + d[k][j])
        assert is_median(FiniteMetric(d))
