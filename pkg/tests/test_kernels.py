import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from medianwalls import (CapExceededError, InvalidInputError, Kernel, L1Points,
                         classify, extract_convex_walls, is_cnd, is_hypermetric_bounded,
                         is_measure_definite, median_closure, pullback, schoenberg_power,
                         sqrt_kernel, squared_euclidean)
from medianwalls.generators import (random_graph_kernel, random_kernel, random_l1_kernel,
                                    random_squared_euclidean)
from medianwalls.kernels import (DEFAULT_TOLERANCE, hypermetric_vector_count, negative_direction,
                                 triangle_violation)

F = Fraction
TAU = F(1, 2**24)
K23 = Kernel([[0 if i == j else (1 if (i < 2) != (j < 2) else 2) for j in range(5)]
              for i in range(5)])


def eigen_oracle(K):
    """Float verdict on negative type, or None when the smallest eigenvalue is near zero."""
    n = K.n
    if n <= 1:
        return True
    psi = np.array([[float(v) for v in row] for row in K.psi])
    P = psi[1:, :1] + psi[:1, 1:] - psi[1:, 1:]
    low = np.linalg.eigvalsh(P).min()
    scale = max(1.0, np.abs(P).max())
    if abs(low) < 1e-9 * scale:
        return None
    return bool(low > 0)


class TestKernel:
    @pytest.mark.parametrize("rows", [
        [[0, 1], [2, 0]],
        [[1, 0], [0, 0]],
        [[0, -1], [-1, 0]],
        [[0, 1]],
    ])
    def test_rejects_invalid(self, rows):
        with pytest.raises(InvalidInputError):
            Kernel(rows)

    def test_zero_off_diagonal_allowed(self):
        assert Kernel([[0, 0], [0, 0]]).n == 2

    def test_pullback(self):
        K = Kernel([[0, 1, 4], [1, 0, 1], [4, 1, 0]])
        P = pullback(K, [2, 0, 2])
        assert P.psi == ((0, 4, 0), (4, 0, 4), (0, 4, 0))
        with pytest.raises(InvalidInputError):
            pullback(K, [3])


class TestCnd:
    def test_zero_kernel(self):
        assert is_cnd(Kernel([[0] * 4] * 4))

    def test_squared_line_distances(self):
        xs = [F(0), F(1, 3), F(2), F(-5, 2), F(7)]
        assert is_cnd(Kernel([[(a - b) ** 2 for b in xs] for a in xs]))

    def test_discrete_kernel(self):
        K = Kernel([[int(i != j) for j in range(5)] for i in range(5)])
        assert is_cnd(K)
        # oracle identity: sum_{i != j} l_i l_j = (sum l)^2 - sum l^2
        lam = [2, -1, -1, 3, -3]
        assert oracles.quadratic_form(K.psi, lam) == sum(lam) ** 2 - sum(v * v for v in lam)

    def test_k23_violation(self):
        v = is_cnd(K23)
        assert not v
        assert sum(v.violation) == 0
        assert oracles.quadratic_form(K23.psi, v.violation) == v.value > 0

    def test_negative_direction(self):
        P = [[F(1), F(2)], [F(2), F(1)]]
        v = negative_direction(P)
        assert sum(P[i][j] * v[i] * v[j] for i in range(2) for j in range(2)) < 0
        assert negative_direction([[F(1), F(1)], [F(1), F(1)]]) is None
        assert negative_direction([[F(0), F(1)], [F(1), F(0)]]) is not None

    def test_bad_base(self):
        with pytest.raises(InvalidInputError):
            is_cnd(K23, base=5)

    @given(st.integers(2, 6), st.integers(0, 10**6))
    def test_violations_re_evaluate(self, n, seed):
        K = random_kernel(random.Random(seed), n)
        v = is_cnd(K)
        if not v:
            assert sum(v.violation) == 0
            assert oracles.quadratic_form(K.psi, v.violation) > 0

    @given(st.integers(2, 6), st.integers(0, 10**6))
    def test_base_point_independent(self, n, seed):
        K = random_kernel(random.Random(seed), n)
        verdicts = {is_cnd(K, base=b).is_cnd for b in range(n)}
        assert len(verdicts) == 1

    @pytest.mark.parametrize("seed", range(30))
    def test_agrees_with_eigenvalues(self, seed):
        rng = random.Random(seed)
        K = random_kernel(rng, rng.randint(2, 7))
        expect = eigen_oracle(K)
        if expect is not None:
            assert is_cnd(K).is_cnd == expect

    @given(st.integers(2, 6), st.integers(0, 10**6))
    def test_squared_euclidean_is_cnd(self, n, seed):
        assert is_cnd(random_squared_euclidean(random.Random(seed), n))


class TestSchoenberg:
    def test_identity(self):
        assert schoenberg_power(K23, 1) is K23

    def test_sqrt_of_squared_euclidean(self):
        # every pairwise distance is an integer
        pts = [(0, 0), (3, 4), (6, 8), (0, 8)]
        S = sqrt_kernel(squared_euclidean(pts))
        assert S.approximate
        exact = [[F(int(round(np.hypot(p[0] - q[0], p[1] - q[1])))) for q in pts] for p in pts]
        assert all(e * e == (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
                   for row, p in zip(exact, pts) for e, q in zip(row, pts))
        for i, j in itertools.product(range(4), repeat=2):
            assert 0 <= exact[i][j] - S.psi[i][j] < F(1, 2**48)

    @pytest.mark.parametrize("alpha", [0, F(3, 2), -1])
    def test_rejects_alpha(self, alpha):
        with pytest.raises(InvalidInputError):
            schoenberg_power(K23, alpha)

    @given(st.integers(2, 6), st.integers(0, 10**6),
           st.sampled_from([F(1, 4), F(1, 2), F(3, 4)]))
    def test_powers_stay_cnd(self, n, seed, alpha):
        K = random_squared_euclidean(random.Random(seed), n)
        assert is_cnd(schoenberg_power(K, alpha), tolerance=TAU)


class TestMeasureDefinite:
    def test_extracted_walls(self):
        M, _ = median_closure(L1Points([(0, 0), (2, 1), (1, 3)]))
        WS = extract_convex_walls(M)
        v = is_measure_definite(Kernel(M.d))
        assert v and v.decomposition.verify(M)
        assert len(WS) > 0

    def test_path(self):
        v = is_measure_definite(Kernel([[0, 1, 2], [1, 0, 1], [2, 1, 0]]))
        assert v.decomposition.verify([[0, 1, 2], [1, 0, 1], [2, 1, 0]])

    def test_triangle_violation(self):
        K = Kernel([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
        v = is_measure_definite(K)
        assert not v and v.triangle_violation == (0, 1, 2)
        assert triangle_violation(K) == (0, 1, 2)

    def test_k23(self):
        v = is_measure_definite(K23)
        assert not v and v.certificate is not None

    def test_cap(self):
        with pytest.raises(CapExceededError):
            is_measure_definite(Kernel([[int(i != j) for j in range(4)] for i in range(4)]),
                                max_points=3)

    @pytest.mark.parametrize("seed", range(10))
    def test_sqrt_of_cnd_is_measure_definite(self, seed):
        rng = random.Random(seed)
        K = random_squared_euclidean(rng, rng.randint(2, 6))
        v = is_measure_definite(sqrt_kernel(K), slack=TAU)
        assert v and v.decomposition.verify(sqrt_kernel(K), TAU)


class TestHypermetric:
    def test_two_points(self):
        # sum l = 1 reduces every form to -2 l1 l2 psi, which is <= 0 on integers
        K = Kernel([[0, 5], [5, 0]])
        v = is_hypermetric_bounded(K, 4)
        assert v and v.checked == 8

    def test_vector_count(self):
        for n, B in [(1, 2), (3, 1), (4, 2)]:
            brute = sum(1 for lam in itertools.product(range(-B, B + 1), repeat=n) if sum(lam) == 1)
            assert hypermetric_vector_count(n, B) == brute

    def test_k23_fails(self):
        v = is_hypermetric_bounded(K23, 1)
        assert not v
        assert sum(v.violation) == 1
        assert oracles.quadratic_form(K23.psi, v.violation) == v.value > 0

    def test_cnd_violation_seeds_a_hypermetric_one(self):
        cnd = is_cnd(K23)
        lam = list(cnd.violation)
        # adding a unit vector turns a zero-sum violation into a sum-one test vector
        for i in range(K23.n):
            mu = [2 * v for v in lam]
            mu[i] += 1
            if oracles.quadratic_form(K23.psi, mu) > 0:
                break
        else:
            pytest.fail("no sum-one vector built from the negative-type violation")
        assert not is_hypermetric_bounded(K23, max(abs(v) for v in mu))

    @pytest.mark.parametrize("bound", [0, F(3, 2)])
    def test_bad_bound(self, bound):
        with pytest.raises(InvalidInputError):
            is_hypermetric_bounded(K23, bound)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            is_hypermetric_bounded(K23, 3, max_vectors=10)

    @given(st.integers(2, 6), st.integers(0, 10**6))
    def test_l1_kernels_pass(self, n, seed):
        assert is_hypermetric_bounded(random_l1_kernel(random.Random(seed), n), 3)

    @given(st.integers(2, 5), st.integers(0, 10**6))
    def test_first_violation_matches_brute_force(self, n, seed):
        K = random_graph_kernel(random.Random(seed), n)
        v = is_hypermetric_bounded(K, 2)
        brute = None
        for head in itertools.product(range(-2, 3), repeat=n - 1):
            lam = head + (1 - sum(head),)
            if abs(lam[-1]) <= 2 and oracles.quadratic_form(K.psi, lam) > 0:
                brute = lam
                break
        assert v.violation == brute


class TestClassify:
    def test_extracted_wall_metric(self):
        M, _ = median_closure(L1Points([(0, 0, 0), (1, 2, 0), (2, 0, 1)]))
        v = classify(Kernel(M.d))
        assert (v.type1, v.hypermetric, v.negative_type) == ("yes", "yes-at-bound", "yes")

    def test_squared_euclidean_planar(self):
        K = squared_euclidean([(0, 0), (3, 0), (1, 2), (-1, 5)])
        v = classify(K)
        assert v.negative_type == "yes" and v.sqrt_type1 == "yes"
        assert v.type1 == "no"

    def test_zero_kernel(self):
        v = classify(Kernel([[0] * 3] * 3))
        assert (v.type1, v.hypermetric, v.negative_type, v.sqrt_type1) == \
            ("yes", "yes-at-bound", "yes", "yes")

    def test_k23(self):
        v = classify(K23)
        assert (v.type1, v.hypermetric, v.negative_type, v.sqrt_type1) == ("no", "no", "no", "n/a")

    def test_unknown_above_caps(self):
        K = Kernel([[int(i != j) for j in range(5)] for i in range(5)])
        v = classify(K, lp_max_points=4, max_vectors=10, sqrt_max_points=4)
        assert (v.type1, v.hypermetric, v.sqrt_type1) == ("unknown", "unknown", "skipped")

    @given(st.integers(2, 6), st.integers(0, 10**6))
    def test_chain(self, n, seed):
        K = random_kernel(random.Random(seed), n)
        v = classify(K)
        if v.type1 == "yes":
            assert v.hypermetric == "yes-at-bound" and v.negative_type == "yes"
        if v.negative_type == "no":
            assert v.type1 == "no"

    @given(st.integers(2, 5), st.integers(0, 10**6), st.data())
    def test_pullback_preserves_yes(self, n, seed, data):
        K = random_kernel(random.Random(seed), n)
        m = data.draw(st.integers(n, n + 2))
        f = list(range(n)) + [data.draw(st.integers(0, n - 1)) for _ in range(m - n)]
        f = data.draw(st.permutations(f))
        P = pullback(K, f)
        a, b = classify(K), classify(P)
        if a.type1 == "yes":
            assert b.type1 == "yes"
        if a.hypermetric == "yes-at-bound":
            assert b.hypermetric == "yes-at-bound"
        if a.negative_type == "yes":
            assert b.negative_type == "yes"


def test_default_tolerance():
    assert DEFAULT_TOLERANCE == TAU
