import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diagdisp.errors import ConvergenceError, DomainError
from diagdisp.sequence import (
    INFINITY,
    alpha_iterative,
    cycle_length,
    endpoint_bisection,
    endpoint_closed_form,
    endpoint_fixed_point_defects,
    f_eval,
    f_trace,
    is_endpoint,
    reduced_seq_step,
    reduced_sequence,
    theta,
)

# 25-digit values of 1 / (4 cos^2(pi / (n + 3))) from mpmath at 40 digits.
ENDPOINTS = {
    1: 0.5,
    2: 0.3819660112501051517954132,
    3: 0.3333333333333333333333333,
    4: 0.3079785283699041303721851,
    5: 0.2928932188134524755991556,
    6: 0.2831185828579485568938627,
    7: 0.2763932022500210303590826,
    8: 0.2715541293388211794435852,
    9: 0.2679491924311227064725537,
    10: 0.2651878342412025665786918,
    11: 0.2630237709004217576619137,
    12: 0.2612950729772454797317774,
}


def count_alpha(r):
    # Exact rational recursion written out independently.
    f, k = Fraction(r), 0
    while f < 1 - Fraction(r):
        f = Fraction(r) / (1 - f)
        k += 1
    return k + 1


class TestRecursion:
    def test_base(self):
        assert f_eval(Fraction(1, 3), 0) == Fraction(1, 3)

    def test_third_chain(self):
        assert f_trace(Fraction(1, 3), 2) == [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]

    def test_float_value(self):
        assert f_eval(0.3, 2) == pytest.approx(0.525, abs=1e-15)

    def test_blowup_raises(self):
        with pytest.raises(DomainError):
            f_eval(Fraction(1, 2), 2)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            f_eval(Fraction(3, 2), 1)


class TestAlpha:
    @pytest.mark.parametrize(
        "r, alpha",
        [(Fraction(1, 2), 1), (Fraction(2, 5), 2), (Fraction(1, 3), 3), (Fraction(17, 50), 3), (Fraction(3, 10), 5)],
    )
    def test_exact_values(self, r, alpha):
        assert alpha_iterative(r).alpha == alpha

    def test_float_third_snaps(self):
        assert alpha_iterative(1 / 3).alpha == 3

    def test_trace_and_n_r(self):
        res = alpha_iterative(Fraction(1, 3))
        assert res.n_r == 2
        assert res.trace == (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))

    @pytest.mark.parametrize("r", [Fraction(1, 4), Fraction(51, 100), 0.2, 0.7])
    def test_domain(self, r):
        with pytest.raises(DomainError):
            alpha_iterative(r)

    @given(st.fractions(min_value=Fraction(1, 4), max_value=Fraction(1, 2), max_denominator=500))
    @settings(max_examples=200)
    def test_matches_exact_count(self, r):
        if r == Fraction(1, 4):
            return
        assert alpha_iterative(r).alpha == count_alpha(r)

    @given(st.floats(min_value=0.2502, max_value=0.5), st.floats(min_value=0.2502, max_value=0.5))
    def test_non_increasing(self, a, b):
        lo, hi = sorted((a, b))
        assert alpha_iterative(lo).alpha >= alpha_iterative(hi).alpha

    @given(st.floats(min_value=0.2502, max_value=0.5))
    def test_trace_increasing_below_one(self, r):
        tr = alpha_iterative(r).trace
        assert all(a < b for a, b in zip(tr, tr[1:]))
        assert tr[-1] < 1

    @pytest.mark.parametrize("k", range(2, 11))
    def test_constant_on_steps(self, k):
        left, right = ENDPOINTS[k], ENDPOINTS[k - 1]
        for i in range(50):
            assert alpha_iterative(left + (right - left) * i / 50).alpha == k


class TestEndpoints:
    def test_rational_endpoints(self):
        assert endpoint_closed_form(1) == Fraction(1, 2)
        assert endpoint_closed_form(3) == Fraction(1, 3)

    def test_golden(self):
        assert endpoint_closed_form(2) == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-12)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_reference_values(self, n):
        assert float(endpoint_closed_form(n)) == pytest.approx(ENDPOINTS[n], abs=1e-15)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_bisection(self, n):
        assert endpoint_bisection(n) == pytest.approx(ENDPOINTS[n], abs=1e-10)

    def test_known_surds(self):
        assert float(endpoint_closed_form(5)) == pytest.approx(1 - 1 / math.sqrt(2), abs=1e-15)
        assert float(endpoint_closed_form(9)) == pytest.approx(2 - math.sqrt(3), abs=1e-15)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_alpha_at_endpoint(self, n):
        assert alpha_iterative(endpoint_closed_form(n)).alpha == n

    @pytest.mark.parametrize("n", [1, 3])
    def test_fixed_point_exact(self, n):
        assert endpoint_fixed_point_defects(n) == (0, 0)

    def test_is_endpoint(self):
        assert is_endpoint(Fraction(1, 3)) == 3
        assert is_endpoint(0.3) is None

    def test_bad_index(self):
        with pytest.raises(DomainError):
            endpoint_closed_form(0)

    def test_bisection_no_root(self):
        with pytest.raises((ConvergenceError, DomainError)):
            endpoint_bisection(0)


class TestReducedSequence:
    def test_first_step(self):
        r = Fraction(3, 10)
        assert reduced_seq_step(-1 + r, r) == -1 + r / (1 - r)

    def test_sentinels(self):
        r = Fraction(1, 3)
        assert reduced_seq_step(0, r) is INFINITY
        assert reduced_seq_step(INFINITY, r) == -1

    def test_half_orbit(self):
        assert reduced_sequence(Fraction(1, 2), 5) == [Fraction(-1, 2), 0, INFINITY, -1, Fraction(-1, 2)]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_cycle_length(self, n):
        assert cycle_length(endpoint_closed_form(n), tol=1e-9) == n + 3

    def test_cycle_length_nine_from_angle(self):
        r = 1 / (4 * math.cos(2 * math.pi / 9) ** 2)
        assert cycle_length(r) == 9

    def test_no_cycle(self):
        assert cycle_length(0.3, max_iter=500) is None

    def test_theta_at_third(self):
        assert theta(Fraction(1, 3)) == pytest.approx(math.acos(-math.sqrt(3) / 2))
