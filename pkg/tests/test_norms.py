import math
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpindex import (
    Mat2,
    conjugate_by_swap,
    make_exponent,
    norm_1,
    norm_inf,
    op_norm,
    riesz_thorin_bound,
    vec_norm,
)

EPS = sys.float_info.epsilon

REMARK_MATRIX = Mat2(0.0487295, 13.639181, -15.0, -1.0)


def svd_largest(T: Mat2) -> float:
    """Closed-form largest singular value of a 2x2 matrix."""
    a, b, c, d = T.as_tuple()
    tau = a * a + b * b + c * c + d * d
    det = a * d - b * c
    return math.sqrt((tau + math.sqrt(max(tau * tau - 4.0 * det * det, 0.0))) / 2.0)


def random_matrices(n, seed=0, scale=10.0):
    rng = np.random.default_rng(seed)
    return [Mat2(*row) for row in rng.uniform(-scale, scale, size=(n, 4))]


class TestVecNorm:
    def test_coordinate_vector(self):
        for p in (1.1, 2.0, 7.0):
            assert vec_norm((1.0, 0.0), make_exponent(p)) == 1.0

    def test_euclidean(self):
        assert vec_norm((1.0, 1.0), make_exponent(2.0)) == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_pythagorean(self):
        assert vec_norm((3.0, 4.0), make_exponent(2.0)) == pytest.approx(5.0, rel=1e-15)

    def test_overflow_safe(self):
        v = vec_norm((1e200, 1e200), make_exponent(2.0))
        assert v == pytest.approx(math.sqrt(2.0) * 1e200, rel=1e-14)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            vec_norm((math.nan, 0.0), make_exponent(2.0))


class TestEntrywiseNorms:
    def test_column_sums(self):
        assert norm_1(Mat2(1, 2, 3, 4)) == 6.0

    def test_row_sums(self):
        assert norm_inf(Mat2(1, 2, 3, 4)) == 7.0

    def test_rotation_isometry(self):
        rot = Mat2(0, 1, -1, 0)
        assert norm_1(rot) == 1.0
        assert norm_inf(rot) == 1.0

    def test_zero_and_identity(self):
        assert norm_1(Mat2(0, 0, 0, 0)) == 0.0
        assert norm_inf(Mat2(1, 0, 0, 1)) == 1.0


class TestOpNorm:
    @pytest.mark.parametrize("p", [1.1, 1.5, 2.0, 3.0, 10.0])
    def test_identity(self, p):
        assert op_norm(Mat2(1, 0, 0, 1), make_exponent(p)).norm == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("p", [1.2, 2.0, 6.0])
    def test_rank_one_diagonal(self, p):
        assert op_norm(Mat2(2, 0, 0, 0), make_exponent(p)).norm == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("p", [1.16, 1.5, 2.0, 4.0])
    def test_rotation_is_isometry(self, p):
        assert op_norm(Mat2(0, 1, -1, 0), make_exponent(p)).norm == pytest.approx(1.0, abs=1e-12)

    def test_matches_svd_at_p2(self):
        e = make_exponent(2.0)
        for T in random_matrices(60, seed=11):
            assert op_norm(T, e).norm == pytest.approx(svd_largest(T), abs=1e-10)

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            op_norm(Mat2(1, 0, 0, 1), make_exponent(2.0), tol=0.0)

    def test_witness_invariants(self):
        for p in (1.2, 2.0, 5.0):
            e = make_exponent(p)
            for T in random_matrices(20, seed=5):
                r = op_norm(T, e)
                x = r.witness(e)
                assert abs(vec_norm(x, e) - 1.0) <= 8.0 * EPS
                assert vec_norm(T.apply(*x), e) == pytest.approx(r.norm, abs=r.tol)


class TestRieszThorin:
    @pytest.mark.parametrize("p", [1.3, 2.0, 5.0])
    def test_rotation_and_identity(self, p):
        e = make_exponent(p)
        assert riesz_thorin_bound(Mat2(0, 1, -1, 0), e) == 1.0
        assert riesz_thorin_bound(Mat2(1, 0, 0, 1), e) == 1.0

    def test_zero_operator(self):
        assert riesz_thorin_bound(Mat2(0, 0, 0, 0), make_exponent(1.5)) == 0.0

    def test_breakdown_matrix_factor_norms(self):
        e = make_exponent(1.16)
        assert norm_1(REMARK_MATRIX) == pytest.approx(15.0487295, abs=1e-12)
        assert norm_inf(REMARK_MATRIX) == pytest.approx(16.0, abs=1e-12)
        expected = 15.0487295 ** (1.0 / e.p) * 16.0 ** (1.0 / e.q)
        assert riesz_thorin_bound(REMARK_MATRIX, e) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("p", [1.1, 1.5, 2.0, 3.0, 8.0])
    def test_dominates_op_norm(self, p):
        e = make_exponent(p)
        for T in random_matrices(40, seed=2):
            assert op_norm(T, e).norm <= riesz_thorin_bound(T, e) + 1e-10


class TestOpNormProperties:
    @pytest.mark.parametrize("p", [1.2, 1.7, 3.0, 6.0])
    def test_transpose_duality(self, p):
        e = make_exponent(p)
        eq = make_exponent(e.q)
        for T in random_matrices(15, seed=8):
            assert op_norm(T, e).norm == pytest.approx(op_norm(T.transpose(), eq).norm, abs=1e-9)

    @pytest.mark.parametrize("p", [1.3, 2.5])
    def test_swap_conjugation_invariance(self, p):
        e = make_exponent(p)
        for T in random_matrices(15, seed=9):
            assert op_norm(conjugate_by_swap(T), e).norm == pytest.approx(
                op_norm(T, e).norm, abs=1e-9
            )

    @given(
        st.floats(min_value=0.01, max_value=100.0),
        st.floats(min_value=1.05, max_value=9.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_homogeneity(self, lam, p):
        e = make_exponent(p)
        T = Mat2(3.0, -1.0, 2.0, 0.5)
        base = op_norm(T, e).norm
        assert op_norm(T.scaled(lam), e).norm == pytest.approx(lam * base, rel=1e-12)

    def test_near_one_limit_matches_column_norm(self):
        e = make_exponent(1.000001)
        for T in random_matrices(10, seed=4):
            assert abs(op_norm(T, e).norm - norm_1(T)) <= 1e-4
