import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from medianwalls import InvalidInputError, LpInstance, VerificationError, lp_feasible
from medianwalls.lp import verify_farkas, verify_solution

F = Fraction


def test_single_variable():
    r = lp_feasible(LpInstance([[1]], [1]))
    assert r.feasible and r.x == (1,)


def test_contradictory_rows():
    P = LpInstance([[1], [1]], [1, 2])
    r = lp_feasible(P)
    assert not r.feasible
    assert verify_farkas(P, r.y)
    # y is a positive multiple of (-1, 1)
    assert r.y[0] == -r.y[1] and r.y[1] > 0


def test_negative_rhs_is_infeasible():
    r = lp_feasible(LpInstance([[1, 1]], [-1]))
    assert not r.feasible


def test_empty_system():
    assert lp_feasible(LpInstance([], [])).feasible


def test_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        LpInstance([[1, 2]], [1, 2])
    with pytest.raises(InvalidInputError):
        LpInstance([[1, 2], [1]], [1, 2])


def test_negative_slack_rejected():
    with pytest.raises(InvalidInputError):
        LpInstance([[1]], [1], slack=-1)


def test_slack_mode():
    # x = 1 and x = 1 + 1/100 conflict exactly but agree within slack 1/100
    P = LpInstance([[1], [1]], [1, F(101, 100)], slack=F(1, 100))
    r = lp_feasible(P)
    assert r.feasible and verify_solution(P, r.x)
    assert not lp_feasible(LpInstance([[1], [1]], [1, F(101, 100)], slack=F(1, 1000))).feasible


def test_verify_rejects_bad_vectors():
    P = LpInstance([[1, 1]], [2])
    assert not verify_solution(P, (F(3), F(0)))
    assert not verify_solution(P, (F(-1), F(3)))
    assert not verify_farkas(P, (F(1),))


@pytest.mark.parametrize("seed", range(15))
def test_random_feasible_system(seed):
    # generate the solution first, then the constraints
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 8)
    x = [F(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(n)]
    A = [[F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(m)]
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    P = LpInstance(A, b)
    r = lp_feasible(P)
    assert r.feasible and verify_solution(P, r.x)


small_rat = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_duality_and_float_oracle(m, n, data):
    A = [[data.draw(small_rat) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small_rat) for _ in range(m)]
    P = LpInstance(A, b)
    r = lp_feasible(P)
    if r.feasible:
        assert verify_solution(P, r.x)
    else:
        assert verify_farkas(P, r.y)
    ref = linprog(np.zeros(n), A_eq=np.array(A, dtype=float), b_eq=np.array(b, dtype=float),
                  bounds=[(0, None)] * n, method="highs")
    if ref.status in (0, 2):
        assert r.feasible == (ref.status == 0)


def test_degenerate_cycling_example():
    # Beale-style degenerate system; Bland's rule must terminate
    A = [[F(1, 4), -8, -1, 9, 1, 0, 0], [F(1, 2), -12, F(-1, 2), 3, 0, 1, 0], [0, 0, 1, 0, 0, 0, 1]]
    b = [0, 0, 1]
    r = lp_feasible(LpInstance(A, b))
    assert r.feasible


def test_verification_error_is_assertion():
    assert issubclass(VerificationError, AssertionError)
