import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpindex import (
    Mat2,
    compute_mp,
    conjugate_by_swap,
    make_exponent,
    numerical_radius,
    op_norm,
    radius_oracle,
)

ROTATION = Mat2(0, 1, -1, 0)


def random_matrices(n, seed=0):
    rng = np.random.default_rng(seed)
    return [Mat2(*row) for row in rng.uniform(-10.0, 10.0, size=(n, 4))]


entry = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


class TestConjugateBySwap:
    def test_formula(self):
        assert conjugate_by_swap(Mat2(1, 2, 3, 4)) == Mat2(4, 3, 2, 1)

    def test_identity_fixed(self):
        assert conjugate_by_swap(Mat2(1, 0, 0, 1)) == Mat2(1, 0, 0, 1)

    def test_rotation(self):
        assert conjugate_by_swap(ROTATION) == Mat2(0, -1, 1, 0)


class TestNumericalRadius:
    @pytest.mark.parametrize("p", [1.1, 1.5, 2.0, 4.0])
    def test_identity(self, p):
        r = numerical_radius(Mat2(1, 0, 0, 1), make_exponent(p))
        assert r.value == pytest.approx(1.0, abs=1e-12)

    def test_rotation_reference_value(self):
        r = numerical_radius(ROTATION, make_exponent(1.16))
        assert r.value == pytest.approx(0.558064, abs=1e-5)
        assert 0.0 <= r.t_star <= 1.0

    def test_rotation_vanishes_at_p2(self):
        assert numerical_radius(ROTATION, make_exponent(2.0)).value == 0.0

    def test_rotation_attains_critical_value(self):
        for p in (1.3, 3.0, 6.0):
            e = make_exponent(p)
            assert numerical_radius(ROTATION, e).value == pytest.approx(
                compute_mp(e).mp, abs=1e-12
            )

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            numerical_radius(ROTATION, make_exponent(1.5), tol=-1.0)

    def test_attained_branch_reproducible(self):
        from lpindex.radius import branch_integrand

        for T in random_matrices(20, seed=21):
            e = make_exponent(1.7)
            r = numerical_radius(T, e)
            f = branch_integrand(T if r.branch == "first" else conjugate_by_swap(T), e)
            assert float(f(r.t_star)) == pytest.approx(r.value, abs=r.tol)


class TestOracle:
    def test_identity(self):
        assert radius_oracle(Mat2(1, 0, 0, 1), make_exponent(1.5)) == pytest.approx(
            1.0, abs=1e-10
        )

    @pytest.mark.parametrize("alpha,beta", [(2.0, -1.0), (-0.3, 0.7), (5.0, 5.0)])
    def test_diagonal(self, alpha, beta):
        # the supremum for diagonal operators is attained at a coordinate vector
        e = make_exponent(2.7)
        got = radius_oracle(Mat2(alpha, 0, 0, beta), e)
        assert got == pytest.approx(max(abs(alpha), abs(beta)), abs=1e-10)

    def test_rotation_matches_critical_value_at_p3(self):
        e = make_exponent(3.0)
        assert radius_oracle(ROTATION, e) == pytest.approx(compute_mp(e).mp, abs=1e-10)

    def test_rejects_small_grid(self):
        with pytest.raises(ValueError):
            radius_oracle(ROTATION, make_exponent(2.0), grid_n=8)

    @pytest.mark.parametrize("p", [1.1, 1.2, 4.0 / 3.0, 1.5, 2.0, 3.0, 6.0, 10.0])
    def test_formula_agrees_with_oracle(self, p):
        # the full 10^3-matrix corpus runs in the acceptance suite
        e = make_exponent(p)
        for T in random_matrices(40, seed=17):
            v = numerical_radius(T, e).value
            o = radius_oracle(T, e)
            assert abs(v - o) <= 1e-7


class TestRadiusProperties:
    @pytest.mark.parametrize("p", [1.2, 2.0, 5.0])
    def test_dominated_by_op_norm(self, p):
        e = make_exponent(p)
        for T in random_matrices(30, seed=13):
            assert numerical_radius(T, e).value <= op_norm(T, e).norm + 1e-10

    @pytest.mark.parametrize("p", [1.3, 2.4, 7.0])
    def test_swap_conjugation_invariance(self, p):
        e = make_exponent(p)
        for T in random_matrices(25, seed=14):
            assert numerical_radius(conjugate_by_swap(T), e).value == pytest.approx(
                numerical_radius(T, e).value, abs=1e-9
            )

    @pytest.mark.parametrize("p", [1.25, 1.8, 3.5])
    def test_adjoint_invariance(self, p):
        e = make_exponent(p)
        eq = make_exponent(e.q)
        for T in random_matrices(25, seed=15):
            assert numerical_radius(T, e).value == pytest.approx(
                numerical_radius(T.transpose(), eq).value, abs=1e-9
            )

    @given(entry, entry, entry, entry, st.floats(min_value=1.05, max_value=8.0))
    @settings(max_examples=50, deadline=None)
    def test_sign_flattening_never_raises_radius(self, a, b, c, d, p):
        e = make_exponent(p)
        T = Mat2(a, b, c, d)
        flattened = Mat2(abs(a), abs(b), -abs(c), -abs(d))
        assert numerical_radius(flattened, e).value <= numerical_radius(T, e).value + 1e-9
