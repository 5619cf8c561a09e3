from fractions import Fraction as F

import pytest

from stfib import (
    DepthTooSmall,
    HypothesisViolated,
    IntegerU,
    STParams,
    Verdict,
    deform_params,
    fractional_u_divisibility,
    witness_direct,
    witness_inverse,
    witness_scan,
)


class TestWitnessDirect:
    def test_canonical_certification(self):
        report = witness_direct(STParams(1, 1), 2, 6, 40)
        assert report.verdict is Verdict.CERTIFIED
        assert report.threshold == F(3, 4)
        assert 0 < report.quantity.lo and report.quantity.hi < report.threshold

    def test_threshold_exactly_one_with_small_quantity(self):
        # q = 5 has threshold 5/F_5 = 1; the quantity still sits in (0, 1),
        # which keeps the integer contradiction intact, so it certifies
        # (with an explanatory note)
        report = witness_direct(STParams(1, 1), 2, 5, 40)
        assert report.threshold == 1
        assert report.verdict is Verdict.CERTIFIED
        assert any("equals 1" in note for note in report.hypothesis_notes)

    def test_u_equal_one_allowed_with_note(self):
        report = witness_direct(STParams(2, 1), 1, 4, 40)
        assert report.verdict is Verdict.CERTIFIED
        assert report.threshold == F(1, 3)
        assert any("U = 1" in note for note in report.hypothesis_notes)

    def test_threshold_above_one(self):
        report = witness_direct(STParams(1, 1), 2, 2, 40)  # 2/F_2 = 2
        assert report.verdict is Verdict.THRESHOLD_NOT_BELOW_ONE

    def test_depth_too_small(self):
        with pytest.raises(DepthTooSmall):
            witness_direct(STParams(1, 1), 2, 10, 10)

    def test_hypothesis_rejections(self):
        with pytest.raises(HypothesisViolated):
            witness_direct(STParams(F(1, 2), 1), 2, 6, 40)
        with pytest.raises(HypothesisViolated):
            witness_direct(STParams(-1, 1), 2, 6, 40)
        with pytest.raises(HypothesisViolated):
            witness_direct(STParams(1, 1), F(1, 2), 6, 40)

    def test_exactness_of_certified_reports(self):
        for q in range(6, 16):
            report = witness_direct(STParams(1, 1), 2, q, 50)
            assert report.verdict is Verdict.CERTIFIED
            assert report.quantity.lo > 0
            assert report.quantity.hi < report.threshold <= 1
            assert report.quantity.lo.denominator > 0  # exact rationals end to end


class TestWitnessInverse:
    def test_examples(self):
        assert witness_inverse(STParams(1, 1), 2, 4, 40).verdict is Verdict.CERTIFIED
        assert witness_inverse(STParams(2, 1), 1, 3, 40).verdict is Verdict.CERTIFIED

    def test_tiny_index(self):
        report = witness_inverse(STParams(1, 1), 2, 1, 40)
        assert report.threshold == 1  # 1/{2}_{1,1}

    def test_zero_disc_allowed(self):
        # the alternating remainder bound admits delta = 0 (classical 1/k! series)
        report = witness_inverse(STParams(2, -1), 2, 3, 40)
        assert report.verdict is Verdict.CERTIFIED

    def test_coupling_note(self):
        report = witness_inverse(STParams(1, 1), 2, 2, 40, q=7)
        assert any("(q+1)/2" in note for note in report.hypothesis_notes)


class TestWitnessScan:
    def test_fibonacci_scan(self):
        reports = witness_scan(STParams(1, 1), 2, 12, 60)
        by_q = {r.q: r for r in reports}
        assert [r.q for r in reports] == list(range(1, 13))
        for q in range(6, 13):
            assert by_q[q].verdict is Verdict.CERTIFIED
        assert by_q[1].verdict is Verdict.THRESHOLD_NOT_BELOW_ONE
        assert by_q[2].verdict is Verdict.THRESHOLD_NOT_BELOW_ONE

    def test_pell_scan(self):
        reports = witness_scan(STParams(2, 1), 2, 10, 60)
        for r in reports[1:]:
            assert r.verdict is Verdict.CERTIFIED

    def test_deepening_never_decertifies(self):
        for q in (6, 9, 14):
            shallow = witness_direct(STParams(1, 1), 2, q, 60)
            deep = witness_direct(STParams(1, 1), 2, q, 90)
            assert shallow.verdict is deep.verdict is Verdict.CERTIFIED
            assert shallow.quantity.encloses(deep.quantity)

    def test_scaling_relations(self):
        # deform(p, a) with base u against p with base a*u: the remainder
        # differences coincide exactly, so the endpoints scale by a^-q
        p, a, u, q, depth = STParams(1, 1), 2, 2, 6, 40
        left = witness_direct(deform_params(p, a), u, q, depth)
        right = witness_direct(p, a * u, q, depth)
        assert left.quantity.lo == right.quantity.lo * F(1, a**q)
        assert left.verdict is right.verdict is Verdict.CERTIFIED


class TestFractionalU:
    def test_examples(self):
        report = fractional_u_divisibility(STParams(1, 1), F(3, 2), 4)
        assert report.modulus_power == 2**10 == 1024
        assert not report.is_integer
        report = fractional_u_divisibility(STParams(2, 1), F(5, 3), 3)
        assert report.modulus_power == 3**6 == 729

    def test_integer_rejected(self):
        with pytest.raises(IntegerU):
            fractional_u_divisibility(STParams(1, 1), 2, 4)

    def test_product_is_exact(self):
        report = fractional_u_divisibility(STParams(1, 1), F(3, 2), 4)
        # denominator of the exact product divides m^C(q+1,2)
        assert report.modulus_power % report.denominator == 0
