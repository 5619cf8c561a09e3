from fractions import Fraction as F
from math import comb

import pytest

from stfib import (
    ConvergenceTag,
    EmptySeries,
    NonNegativeT,
    PhiKind,
    STParams,
    StarSet,
    TruncatedSeries,
    WrongRegime,
    classify_convergence,
    classify_zero_disc,
    admits_unit_argument,
    exp_series,
    fibotorial,
    phi_star_membership,
    st_derivative,
    star_membership,
    verify_functional_eq,
)


class TestTruncatedSeries:
    def test_empty_rejected(self):
        with pytest.raises(EmptySeries):
            TruncatedSeries(())

    def test_arithmetic_truncates(self):
        f = TruncatedSeries((1, 2, 3))
        g = TruncatedSeries((1, 1))
        assert (f + g).coeffs == (F(2), F(3))
        assert (f - g).coeffs == (F(0), F(1))
        assert (f * g).coeffs == (F(1), F(3))

    def test_scale_argument(self):
        f = TruncatedSeries((1, 1, 1))
        assert f.scale_argument(F(1, 2)).coeffs == (F(1), F(1, 2), F(1, 4))


class TestDerivative:
    def test_examples(self):
        out = st_derivative(TruncatedSeries((1, 1, 1)), STParams(1, 1))
        assert out.coeffs == (F(1), F(1))
        out = st_derivative(TruncatedSeries((0, 0, 0, 1)), STParams(2, 1))
        assert out.coeffs == (F(0), F(0), F(5))
        out = st_derivative(TruncatedSeries((7,)), STParams(1, 1))
        assert out.coeffs == (F(0),)

    def test_zero_disc_rejected(self):
        with pytest.raises(WrongRegime):
            st_derivative(TruncatedSeries((1, 1)), STParams(2, -1))

    def test_linearity(self, positive_params):
        import random

        rng = random.Random(23)
        for p in positive_params[:6]:
            f = TruncatedSeries(tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(9)))
            g = TruncatedSeries(tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(9)))
            alpha, beta = F(3, 2), F(-5, 7)
            lhs = st_derivative(alpha * f + beta * g, p)
            rhs = alpha * st_derivative(f, p) + beta * st_derivative(g, p)
            assert lhs == rhs


class TestExpSeries:
    def test_fibonacci_coefficients(self):
        got = exp_series(STParams(1, 1), 1, 5)
        assert got.coeffs == (F(1), F(1), F(1), F(1, 2), F(1, 6), F(1, 30))

    def test_u_zero_is_one_plus_z(self, positive_params):
        for p in positive_params[:8]:
            got = exp_series(p, 0, 5)
            assert got.coeffs == (F(1), F(1), F(0), F(0), F(0), F(0))

    def test_classical_reduction(self):
        got = exp_series(STParams(2, -1), 1, 6)
        import math

        assert got.coeffs == tuple(F(1, math.factorial(n)) for n in range(7))

    def test_general_coefficient_shape(self):
        p = STParams(2, 1)
        u = F(1, 2)
        got = exp_series(p, u, 8)
        for n in range(9):
            assert got.coeffs[n] == u ** comb(n, 2) / fibotorial(p, n)


class TestFunctionalEquation:
    def test_examples(self):
        assert verify_functional_eq(STParams(1, 1), 1, 12)
        assert verify_functional_eq(STParams(2, 1), F(1, 2), 10)
        assert verify_functional_eq(STParams(1, 2), 0, 5)

    @pytest.mark.parametrize("u", [F(0), F(1, 2), F(1), F(2)])
    def test_grid(self, u, positive_params):
        for p in positive_params:
            assert verify_functional_eq(p, u, 16)


class TestClassification:
    def test_entire(self):
        got = classify_convergence(STParams(1, 1), 1)
        assert got.tag is ConvergenceTag.ENTIRE and got.witness_set == "E1"

    def test_only_at_zero(self):
        got = classify_convergence(STParams(2, 1), 3)
        assert got.tag is ConvergenceTag.ONLY_AT_ZERO

    def test_disk_boundary(self):
        got = classify_convergence(STParams(3, -2), 2)
        assert got.tag is ConvergenceTag.DISK and got.witness_set == "D1"
        assert got.radius.contains(2)
        assert got.radius.width <= F(1, 10**10)

    def test_negative_s_uses_conjugate_threshold(self):
        # s < 0 flips |q| above 1; the threshold becomes |phi'|
        got = classify_convergence(STParams(-1, 1), 1)
        assert got.tag is ConvergenceTag.ENTIRE and got.witness_set == "E2"

    def test_u_validation(self):
        with pytest.raises(ValueError):
            classify_convergence(STParams(1, 1), 0)
        with pytest.raises(WrongRegime):
            classify_convergence(STParams(1, -2), 1)

    def test_entire_terms_vanish(self, positive_params):
        # Cauchy cross-check: classified-entire series have exactly tiny
        # terms by n = 200, divergent ones have growing terms early.
        checked = 0
        for p in positive_params:
            if not (p.s.denominator == 1 and p.t.denominator == 1):
                continue
            for u in (F(1, 2), F(1), F(2)):
                tag = classify_convergence(p, u).tag
                term_200 = u ** comb(200, 2) / abs(fibotorial(p, 200))
                if tag is ConvergenceTag.ENTIRE:
                    assert term_200 < F(1, 10**30)
                    checked += 1
                elif tag is ConvergenceTag.ONLY_AT_ZERO:
                    terms = [u ** comb(k, 2) / abs(fibotorial(p, k)) for k in range(121)]
                    assert any(terms[k + 1] > terms[k] for k in range(40, 120))
                    checked += 1
        assert checked >= 30

    def test_zero_disc(self):
        assert classify_zero_disc(-1, 1).tag is ConvergenceTag.ENTIRE
        assert classify_zero_disc(-1, 2).tag is ConvergenceTag.ONLY_AT_ZERO
        assert classify_zero_disc(-4, 2).tag is ConvergenceTag.ENTIRE
        with pytest.raises(NonNegativeT):
            classify_zero_disc(1, 1)

    def test_admits_unit_argument(self):
        assert admits_unit_argument(STParams(1, 1), F(1))
        assert admits_unit_argument(STParams(3, -2), F(2))  # disk of radius 2
        assert not admits_unit_argument(STParams(2, 1), F(3))
        assert admits_unit_argument(STParams(2, -1), F(1))
        assert not admits_unit_argument(STParams(1, -2), F(1))


class TestStarSets:
    def test_examples(self):
        assert star_membership(STParams(1, 1), 1) is StarSet.E11
        assert star_membership(STParams(1, 2), 1) is StarSet.E11
        assert phi_star_membership(STParams(3, -2), PhiKind.PHI) is StarSet.D11

    def test_e_sets_with_negative_s(self):
        # literal rectangles: E*22 pairs |q| > 1 (s < 0) with s < t - 1
        assert star_membership(STParams(-3, 1), 1) is StarSet.E22
        assert star_membership(STParams(-1, 3), 1) is StarSet.E22

    def test_no_match(self):
        # u beyond the threshold belongs to no E-set
        assert star_membership(STParams(1, 1), 5) is None

    def test_d_sets(self):
        assert phi_star_membership(STParams(5, -2), PhiKind.PHI) is StarSet.D11
        # the |s| window (2 sqrt(-t), 3 sqrt(-2t)/2) is open; s = -2.9 sits
        # inside it for t = -2 while s = -3 is exactly on the outer edge
        assert phi_star_membership(STParams(F(-29, 10), -2), PhiKind.PHI) is StarSet.D12
        assert phi_star_membership(STParams(-3, -2), PhiKind.PHI) is None
        assert phi_star_membership(STParams(F(29, 10), -2), PhiKind.PHI_PRIME) is StarSet.D21
        assert phi_star_membership(STParams(3, -2), PhiKind.PHI_PRIME) is None
        assert phi_star_membership(STParams(-5, -2), PhiKind.PHI_PRIME) is StarSet.D22
        assert phi_star_membership(STParams(1, 1), PhiKind.PHI) is None
        # |s| above the 3*sqrt(-2t)/2 cap: 2 s^2 >= -9t
        assert phi_star_membership(STParams(-5, -2), PhiKind.PHI) is None
