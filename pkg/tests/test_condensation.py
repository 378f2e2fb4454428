import random

import pytest

from dodgson import (
    INTEGERS,
    CondensationAborted,
    Matrix,
    Scalar,
    ShapeError,
    ZeroPolicy,
    apply_row_swap_policy,
    condense_step,
    det_bareiss,
    det_cofactor,
    dodgson_det,
    format_trace,
    parse_matrix,
    prime_field,
    random_matrix,
)
from dodgson.condensation import CondensationInvariantError, ZeroDivisorError

from conftest import DOMAINS

A3 = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
A3_ZERO = Matrix.from_rows([[1, 2, 3], [4, 0, 6], [7, 8, 9]])
FALLBACK = ZeroPolicy("bareiss_fallback")


def Z(x):
    return Scalar(x, INTEGERS)


def block_det(A, t, i, j):
    return det_cofactor(A.minor(
        [r for r in range(1, A.rows + 1) if not i <= r < i + t],
        [c for c in range(1, A.cols + 1) if not j <= c < j + t]))


class TestCondenseStep:
    def test_first_step(self):
        # 2x2 minors of A3 by hand: 1*5-2*4, 2*6-3*5, 4*8-5*7, 5*10-6*8
        assert condense_step(A3) == Matrix.from_rows([[-3, -3], [-3, 2]])

    def test_second_step(self):
        # (-3*2 - (-3)(-3)) / 5 = -15 / 5
        assert condense_step(Matrix.from_rows([[-3, -3], [-3, 2]]), Matrix.from_rows([[5]])) == Matrix.from_rows([[-3]])

    def test_all_ones(self):
        assert condense_step(Matrix.filled(3, 3, 1)) == Matrix.filled(2, 2, 0)

    def test_zero_divisor_position(self):
        with pytest.raises(ZeroDivisorError) as exc:
            condense_step(Matrix.from_rows([[1, 2], [3, 4]]), Matrix.from_rows([[0]]))
        assert exc.value.position == (1, 1)

    def test_inexact_division_is_invariant_failure(self):
        with pytest.raises(CondensationInvariantError):
            condense_step(Matrix.from_rows([[1, 2], [3, 4]]), Matrix.from_rows([[3]]))

    def test_shapes(self):
        with pytest.raises(ShapeError):
            condense_step(Matrix.from_rows([[1]]))
        with pytest.raises(ShapeError):
            condense_step(A3, Matrix.from_rows([[1]]))


class TestDodgsonDet:
    def test_example(self):
        d, trace = dodgson_det(A3)
        assert d == Z(-3) == det_cofactor(A3)
        assert [M.rows for M in trace.levels] == [3, 2, 1]
        assert trace.policy_events == []

    def test_fail_policy(self):
        with pytest.raises(CondensationAborted) as exc:
            dodgson_det(A3_ZERO, ZeroPolicy("fail"))
        assert exc.value.level == 1
        assert exc.value.position == (1, 1)

    def test_fallback_policy(self):
        d, trace = dodgson_det(A3_ZERO, FALLBACK)
        assert d == det_bareiss(A3_ZERO)
        assert len(trace.policy_events) == 1
        assert trace.policy_events[0].action == "bareiss_fallback"

    def test_small_sizes(self):
        assert dodgson_det(Matrix.from_rows([[7]]))[0] == Z(7)
        assert dodgson_det(Matrix.from_rows([[1, 2], [3, 4]]))[0] == Z(-2)
        assert dodgson_det(Matrix((), INTEGERS))[0] == Z(1)
        with pytest.raises(ShapeError):
            dodgson_det(random_matrix(INTEGERS, 2, 9, 0, cols=3))

    def test_zero_matrix(self):
        Zm = Matrix.filled(4, 4, 0)
        assert dodgson_det(Zm, FALLBACK)[0] == Z(0)
        with pytest.raises(CondensationAborted):
            dodgson_det(Zm, ZeroPolicy("row_swap", 5))

    @pytest.mark.parametrize("domain", DOMAINS, ids=str)
    def test_matches_bareiss(self, domain):
        rng = random.Random(2024)
        for _ in range(60):
            n = rng.randint(1, 12)
            A = random_matrix(domain, n, 9, rng.getrandbits(64))
            d, trace = dodgson_det(A, FALLBACK)
            assert d == det_bareiss(A)
            assert trace.final_det == d
            assert Scalar(trace.levels[-1].data[0][0], domain) * trace.sign == d

    def test_levels_are_contiguous_minors(self):
        A = random_matrix(prime_field(5), 6, 1, 17)
        _, trace = dodgson_det(A, FALLBACK)
        assert trace.policy_events  # exercise the fallback path
        for t, L in enumerate(trace.levels, 1):
            assert L.shape == (7 - t, 7 - t)
            for i in range(1, L.rows + 1):
                for j in range(1, L.cols + 1):
                    assert L[i, j] == block_det(A, t, i, j)

    @pytest.mark.parametrize("domain", DOMAINS, ids=str)
    def test_trace_consistency(self, domain):
        rng = random.Random(5)
        for _ in range(20):
            A = random_matrix(domain, rng.randint(3, 9), 9, rng.getrandbits(64))
            _, trace = dodgson_det(A, FALLBACK)
            L = trace.levels
            for t in range(1, len(L) - 1):
                prev, cur, nxt = L[t - 1], L[t], L[t + 1]
                for i in range(1, nxt.rows + 1):
                    for j in range(1, nxt.cols + 1):
                        d = prev[i + 1, j + 1]
                        if d.is_zero():
                            continue
                        num = cur[i, j] * cur[i + 1, j + 1] - cur[i, j + 1] * cur[i + 1, j]
                        assert num / d == nxt[i, j]


class TestRowSwap:
    def test_rule_on_4x4(self):
        A = random_matrix(INTEGERS, 4, 9, 3)
        B, flip, rows = apply_row_swap_policy(A, 1, (1, 1), 0, 3)
        assert rows == (2, 3)
        assert flip == -1
        assert B == A.with_rows_swapped(2, 3)

    def test_restarts_exhausted(self):
        A = random_matrix(INTEGERS, 4, 9, 3)
        with pytest.raises(CondensationAborted):
            apply_row_swap_policy(A, 1, (1, 1), 2, 2)

    def test_cycle_detection(self):
        with pytest.raises(CondensationAborted):
            apply_row_swap_policy(Matrix.filled(4, 4, 0), 1, (1, 1), 0, 3)

    def test_alternative_swap_after_revisit(self):
        A = random_matrix(INTEGERS, 4, 9, 3)
        seen = {A.with_rows_swapped(2, 3).digest()}
        B, _, rows = apply_row_swap_policy(A, 1, (1, 1), 0, 3, seen)
        assert rows == (1, 2)

    def test_isolated_zero_recovers_with_sign(self):
        d, trace = dodgson_det(A3_ZERO, ZeroPolicy("row_swap", 2))
        assert d == det_bareiss(A3_ZERO) == Z(60)
        assert trace.sign == -1
        assert [e.action for e in trace.policy_events] == ["row_swap"]
        # the pyramid is that of the swapped matrix, whose determinant has the opposite sign
        assert trace.levels[0] == A3_ZERO.with_rows_swapped(2, 3)
        assert det_bareiss(trace.levels[0]) == -d

    def test_sign_bookkeeping_campaign(self):
        rng = random.Random(77)
        swaps = 0
        for _ in range(150):
            A = random_matrix(prime_field(7), rng.randint(3, 7), 1, rng.getrandbits(64))
            try:
                d, trace = dodgson_det(A, ZeroPolicy("row_swap", 6))
            except CondensationAborted:
                continue
            count = sum(e.action == "row_swap" for e in trace.policy_events)
            swaps += count
            assert trace.sign == (-1) ** count
            assert d == det_bareiss(A)
            assert Scalar(trace.levels[-1].data[0][0], A.domain) == det_bareiss(trace.levels[0])
        assert swaps > 0


def test_policy_parse():
    assert ZeroPolicy.parse("fail") == ZeroPolicy("fail")
    assert ZeroPolicy.parse("row_swap:4") == ZeroPolicy("row_swap", 4)
    assert ZeroPolicy.parse("bareiss-fallback") == FALLBACK
    assert str(ZeroPolicy("row_swap", 4)) == "row_swap:4"
    with pytest.raises(ValueError):
        ZeroPolicy.parse("row_swap:0")
    with pytest.raises(ValueError):
        ZeroPolicy.parse("nope")


def test_trace_format():
    _, trace = dodgson_det(A3_ZERO, FALLBACK)
    text = format_trace(trace)
    assert text.count("@level") == 3
    assert "# policy bareiss_fallback at level 1 pos (1,1)" in text
    blocks = text.split("@level ")[1:]
    for t, block in enumerate(blocks, 1):
        header, _, body = block.partition("\n")
        assert header == f"{t} @sign +1"
        body = "\n".join(l for l in body.splitlines() if not l.startswith("#"))
        assert parse_matrix(body, INTEGERS) == trace.levels[t - 1]
