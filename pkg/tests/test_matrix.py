import random

import pytest
from hypothesis import given, settings, strategies as st

from dodgson import (
    INTEGERS,
    RATIONALS,
    Matrix,
    MinorSpec,
    OracleBoundError,
    Scalar,
    ShapeError,
    build_A_k,
    build_B_l,
    det_bareiss,
    det_cofactor,
    minor,
    prime_field,
    random_matrix,
    read_matrix,
)
from dodgson.identities import expand_A_k, expand_B_l

from conftest import DATA, DOMAINS, leibniz_det

M3 = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])


def Z(x):
    return Scalar(x, INTEGERS)


class TestMinor:
    def test_identity_corner(self):
        assert minor(Matrix.identity(3), MinorSpec((3,), (3,))) == Matrix.identity(2)

    def test_empty_spec(self):
        assert minor(M3, MinorSpec()) == M3

    def test_direct_deletion(self):
        assert minor(M3, MinorSpec((2,), (1,))) == Matrix.from_rows([[2, 3], [8, 9]])

    def test_rejects_bad_indices(self):
        with pytest.raises(ShapeError):
            minor(M3, MinorSpec((4,), ()))
        with pytest.raises(ShapeError):
            minor(M3, MinorSpec((), (0,)))
        with pytest.raises(ShapeError):
            MinorSpec((1, 1), ())

    def test_indices_are_sorted(self):
        assert MinorSpec((3, 1), (2,)).removed_rows == (1, 3)

    def test_down_to_empty(self):
        E = M3.minor((1, 2, 3), (1, 2, 3))
        assert E.shape == (0, 0)
        assert det_bareiss(E) == Z(1)
        assert det_cofactor(E) == Z(1)

    @given(st.data())
    def test_composition(self, data):
        n = data.draw(st.integers(2, 7))
        A = random_matrix(INTEGERS, n, 9, data.draw(st.integers(0, 2**32)))
        S_r = data.draw(st.sets(st.integers(1, n), max_size=n - 1))
        S_c = data.draw(st.sets(st.integers(1, n), max_size=n - 1))
        B = A.minor(S_r, S_c)
        left_r = [i for i in range(1, n + 1) if i not in S_r]
        left_c = [j for j in range(1, n + 1) if j not in S_c]
        T_r = data.draw(st.sets(st.integers(1, len(left_r)), max_size=len(left_r)))
        T_c = data.draw(st.sets(st.integers(1, len(left_c)), max_size=len(left_c)))
        two_step = B.minor(T_r, T_c)
        union_r = S_r | {left_r[t - 1] for t in T_r}
        union_c = S_c | {left_c[t - 1] for t in T_c}
        one_step = A.minor(union_r, union_c)
        assert two_step == one_step


class TestDeterminants:
    def test_small_known(self):
        assert det_cofactor(Matrix.identity(4)) == Z(1)
        assert det_cofactor(Matrix.from_rows([[1, 2], [3, 4]])) == Z(-2)
        assert det_bareiss(Matrix.from_rows([[1, 2], [3, 4]])) == Z(-2)
        assert det_bareiss(Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])) == Z(-3)

    @pytest.mark.parametrize("n", range(1, 21))
    def test_bareiss_identity(self, n):
        assert det_bareiss(Matrix.identity(n)) == Z(1)

    def test_equal_rows(self):
        A = random_matrix(INTEGERS, 6, 9, 3)
        A = A.with_row(4, A.row(2))
        assert det_bareiss(A) == Z(0)

    def test_cross_oracle_5x5_and_8x8(self):
        for n, seed in ((5, 5), (8, 8)):
            A = random_matrix(INTEGERS, n, 9, seed)
            assert det_cofactor(A) == det_bareiss(A)

    @pytest.mark.parametrize("domain", DOMAINS, ids=str)
    def test_oracles_match_leibniz(self, domain):
        for seed in range(15):
            A = random_matrix(domain, 1 + seed % 6, 9, seed)
            ref = leibniz_det(A)
            assert det_cofactor(A) == ref
            assert det_bareiss(A) == ref

    def test_oracle_bound(self):
        A = random_matrix(INTEGERS, 11, 9, 0)
        with pytest.raises(OracleBoundError):
            det_cofactor(A)
        assert det_cofactor(A, bound=11) == det_bareiss(A)

    def test_non_square(self):
        A = random_matrix(INTEGERS, 2, 9, 0, cols=3)
        with pytest.raises(ShapeError):
            det_bareiss(A)
        with pytest.raises(ShapeError):
            det_cofactor(A)

    def test_bareiss_needs_pivot_search(self):
        A = Matrix.from_rows([[0, 1, 2], [3, 0, 1], [4, 5, 0]])
        assert det_bareiss(A) == leibniz_det(A)
        singular = Matrix.from_rows([[0, 1, 2], [0, 3, 1], [0, 5, 0]])
        assert det_bareiss(singular) == Z(0)

    @pytest.mark.parametrize("domain", DOMAINS, ids=str)
    def test_cofactor_equals_bareiss_up_to_8(self, domain):
        rng = random.Random(99)
        for _ in range(30):
            A = random_matrix(domain, rng.randint(1, 8), 9, rng.getrandbits(64))
            assert det_cofactor(A) == det_bareiss(A)

    @pytest.mark.parametrize("domain", DOMAINS, ids=str)
    def test_row_operations(self, domain):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(2, 8)
            A = random_matrix(domain, n, 9, rng.getrandbits(64))
            d = det_bareiss(A)
            r, s = rng.sample(range(1, n + 1), 2)
            assert det_bareiss(A.with_rows_swapped(r, s)) == -d
            c = domain.convert(rng.randint(-5, 5))
            scaled = A.with_row(r, [domain.mul(c, x) for x in A.row(r)])
            assert det_bareiss(scaled) == d * Scalar(c, domain)
            assert det_bareiss(A.with_row(s, A.row(r))) == Scalar(domain.zero, domain)


class TestConstructors:
    A6 = random_matrix(INTEGERS, 6, 9, 6)

    def test_A0_A1_A2_are_minors(self):
        A, n = self.A6, 6
        assert build_A_k(A, 0) == A.minor((n - 2, n - 1), (n - 2, n - 1))
        assert build_A_k(A, 1) == A.minor((n - 2, n - 1), (n - 2, n))
        assert build_A_k(A, 2) == A.minor((n - 2, n - 1), (n - 1, n))

    def test_A3_duplicate_column(self):
        Ak = build_A_k(self.A6, 3)
        cols = list(zip(*Ak.data))
        assert cols[-1] == cols[2]
        assert det_bareiss(Ak) == Z(0)

    def test_A_k_layout(self):
        A, n = self.A6, 6
        for k in range(n):
            Ak = build_A_k(A, k)
            assert Ak.shape == (n - 2, n - 2)
            for r, i in enumerate([1, 2, 3, 6], 1):
                assert Ak[r, n - 2] == A[i, n - k]
                for j in range(1, n - 2):
                    assert Ak[r, j] == A[i, j]

    def test_A_k_errors(self):
        with pytest.raises(ShapeError):
            build_A_k(Matrix.identity(3), 0)
        with pytest.raises(ShapeError):
            build_A_k(self.A6, 6)
        with pytest.raises(ShapeError):
            build_A_k(self.A6, -1)

    def test_B_l(self):
        A = self.A6
        assert build_B_l(A, 0) == A
        B1 = build_B_l(A, 1)
        assert B1.row(6) == B1.row(5)
        assert det_bareiss(B1) == Z(0)
        assert det_bareiss(build_B_l(Matrix.identity(4), 2)) == Z(0)
        with pytest.raises(ShapeError):
            build_B_l(A, 6)

    @pytest.mark.parametrize("domain", DOMAINS, ids=str)
    def test_vanishing_and_expansions(self, domain):
        rng = random.Random(11)
        for _ in range(15):
            n = rng.randint(4, 8)
            A = random_matrix(domain, n, 9, rng.getrandbits(64))
            zero = Scalar(domain.zero, domain)
            for k in range(n):
                d = det_bareiss(build_A_k(A, k))
                if k >= 3:
                    assert d == zero
                # the last-column expansion holds for every k, not just k >= 3
                assert d == expand_A_k(A, k)
            for l in range(n):
                d = det_bareiss(build_B_l(A, l))
                if l >= 1:
                    assert d == zero
                assert d == expand_B_l(A, l)

    def test_expansion_B0_is_laplace_of_A(self):
        A = random_matrix(INTEGERS, 5, 9, 1)
        assert expand_B_l(A, 0) == det_cofactor(A)


class TestRandomMatrix:
    def test_deterministic(self):
        for dom in DOMAINS:
            assert random_matrix(dom, 5, 9, 123) == random_matrix(dom, 5, 9, 123)

    def test_seeds_differ(self):
        for s in range(100):
            assert random_matrix(INTEGERS, 4, 9, 2 * s) != random_matrix(INTEGERS, 4, 9, 2 * s + 1)

    def test_golden(self):
        assert random_matrix(INTEGERS, 4, 9, 42) == read_matrix(DATA / "random_integers_n4_b9_s42.txt")

    def test_ranges(self):
        A = random_matrix(INTEGERS, 30, 3, 0)
        vals = {x for r in A.data for x in r}
        assert vals == set(range(-3, 4))
        R = random_matrix(RATIONALS, 20, 4, 0)
        assert all(abs(x.numerator) <= 4 and 1 <= x.denominator <= 4 for r in R.data for x in r)
        F = random_matrix(prime_field(5), 20, 1, 0)
        assert {x for r in F.data for x in r} == set(range(5))

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            random_matrix(INTEGERS, 0, 9, 0)
        with pytest.raises(ValueError):
            random_matrix(INTEGERS, 3, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-50, 50), min_size=4, max_size=4), min_size=4, max_size=4))
def test_hypothesis_oracles_agree(rows):
    A = Matrix.from_rows(rows)
    assert det_cofactor(A) == det_bareiss(A) == leibniz_det(A)


def test_indexing_is_one_based():
    assert M3[1, 1] == Z(1)
    assert M3[3, 2] == Z(8)
    with pytest.raises(IndexError):
        M3[0, 1]
