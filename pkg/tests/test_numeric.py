"""
Unit tests for exact rationals, polynomials in K and the ordered field of
rational functions.
"""

from fractions import Fraction

import pytest
import sympy

from alp_feasibility.errors import NumericDomainError
from alp_feasibility.numeric import (
    ArithOp,
    KPoly,
    KRatFun,
    Ordering,
    eval_at,
    format_kpoly,
    format_rational,
    parse_rational,
    rat_arith,
    ratfun_arith,
    ratfun_compare,
    sign_at_infinity,
)
from alp_feasibility.selftest import check_field_axioms, random_kpoly, random_ratfun

K = KPoly.k()


def rf(num, den=None) -> KRatFun:
    return KRatFun(KPoly.coerce(num), KPoly.coerce(den) if den is not None else KPoly.one())


class TestRationals:
    """rat_arith and the p/q text form."""

    def test_add(self):
        """Test exact rational addition."""
        assert rat_arith(Fraction(1, 2), Fraction(1, 3), ArithOp.ADD) == Fraction(5, 6)

    def test_identity_and_cancellation(self):
        """Test identities and cancellation of rationals."""
        x = Fraction(-7, 9)
        assert rat_arith(x, Fraction(1), ArithOp.MUL) == x
        assert rat_arith(Fraction(7, 2), Fraction(7, 2), ArithOp.SUB) == 0

    def test_division_by_zero(self):
        """Test that division by zero raises NumericDomainError."""
        with pytest.raises(NumericDomainError):
            rat_arith(Fraction(1), Fraction(0), ArithOp.DIV)

    def test_division_by_zero_is_zero_division_error(self):
        """Test that the domain error is also a ZeroDivisionError."""
        with pytest.raises(ZeroDivisionError):
            rat_arith(Fraction(1), Fraction(0), ArithOp.DIV)

    def test_format(self):
        """Test p/q formatting of rationals."""
        assert format_rational(Fraction(6, 4)) == "3/2"
        assert format_rational(Fraction(-4, 2)) == "-2"
        assert format_rational(0) == "0"

    def test_parse_inverse(self):
        """Test that parsing inverts formatting."""
        for q in (Fraction(3, 2), Fraction(-5), Fraction(0), Fraction(-1, 7)):
            assert parse_rational(format_rational(q)) == q


class TestKPoly:
    """Polynomials in K."""

    def test_trailing_zeros_trimmed(self):
        """Test that trailing zero coefficients are stripped."""
        assert KPoly((1, 2, 0, 0)) == KPoly((1, 2))
        assert KPoly((0, 0)) == KPoly.zero()
        assert KPoly.zero().degree == -1

    def test_product(self):
        """Test polynomial multiplication."""
        assert (K + 1) * (K + 2) == KPoly((2, 3, 1))

    def test_divmod(self):
        """Test polynomial division with remainder."""
        q, r = KPoly((2, 3, 1)).divmod(K + 1)
        assert q == K + 2
        assert r.is_zero

    def test_gcd_is_monic(self):
        """Test that the gcd is monic."""
        a = (K + 1) * (K + 2) * 3
        b = (K + 1) * (K - 5) * 7
        assert KPoly.gcd(a, b) == K + 1

    def test_gcd_matches_sympy(self, rng):
        """Test the gcd against sympy on seeded polynomials."""
        k = sympy.Symbol("K")

        def to_sympy(p: KPoly) -> sympy.Poly:
            return sympy.Poly(list(reversed(p.coeffs)), k, domain="QQ")

        for _ in range(40):
            common = random_kpoly(rng, max_degree=2)
            a = random_kpoly(rng, max_degree=2) * common
            b = random_kpoly(rng, max_degree=2) * common
            if a.is_zero or b.is_zero:
                continue
            expected = to_sympy(a).gcd(to_sympy(b))
            assert KPoly.gcd(a, b).coeffs == tuple(
                Fraction(int(c.p), int(c.q)) for c in reversed(expected.all_coeffs())
            )

    def test_evaluate(self):
        """Test evaluation at a rational K."""
        assert (K * K).evaluate(Fraction(3, 2)) == Fraction(9, 4)

    def test_format(self):
        """Test polynomial formatting."""
        assert format_kpoly(K + 2) == "K+2"
        assert format_kpoly(KPoly((0, Fraction(-1, 2), 3))) == "3*K^2-1/2*K"
        assert format_kpoly(-K) == "-K"
        assert format_kpoly(KPoly.zero()) == "0"


class TestRatFun:
    """Canonical form and field operations."""

    def test_reduced_form(self):
        """Test that common factors are cancelled."""
        f = KRatFun((K + 1) * (K + 2), (K + 2) * 2)
        assert f.num == (K + 1).scale(Fraction(1, 2))
        assert f.den == KPoly.one()

    def test_denominator_is_monic(self):
        """Test that the denominator is normalized to monic."""
        f = KRatFun(KPoly.one(), K.scale(-3) + 1)
        assert f.den.leading == 1
        assert f.num == KPoly.const(Fraction(-1, 3))

    def test_zero_denominator(self):
        """Test that a zero denominator is rejected."""
        with pytest.raises(NumericDomainError):
            KRatFun(KPoly.one(), KPoly.zero())

    def test_product(self):
        """Test multiplication of rational functions."""
        assert ratfun_arith(rf(K + 1), rf(K + 2), ArithOp.MUL) == rf(KPoly((2, 3, 1)))

    def test_self_cancellation(self):
        """Test that f - f and f / f simplify."""
        f = rf(1, K + 1)
        assert ratfun_arith(f, f, ArithOp.SUB).is_zero

    def test_reciprocal(self):
        """Test division into a reciprocal."""
        assert ratfun_arith(rf(1), rf(K + 1), ArithOp.DIV) == rf(1, K + 1)

    def test_division_by_zero_function(self):
        """Test division by the zero function."""
        with pytest.raises(NumericDomainError):
            ratfun_arith(rf(1), rf(0), ArithOp.DIV)

    def test_reduction_is_idempotent(self, rng):
        """Test that reducing a reduced function changes nothing."""
        for _ in range(50):
            f = random_ratfun(rng)
            assert KRatFun(f.num, f.den) == f

    def test_field_axioms(self, rng):
        """Test field axioms on seeded random triples."""
        for _ in range(100):
            assert check_field_axioms(random_ratfun(rng), random_ratfun(rng), random_ratfun(rng))


class TestOrderAtInfinity:
    """sign_at_infinity and ratfun_compare."""

    def test_signs(self):
        """Test the sign for large K."""
        assert sign_at_infinity(rf(K - 5)) == 1
        assert sign_at_infinity(rf(-K + 3, K + 1)) == -1
        assert sign_at_infinity(rf(0)) == 0

    def test_compare(self):
        """Test ratfun_compare on known pairs."""
        assert ratfun_compare(rf(K), rf(1000)) is Ordering.GREATER
        assert ratfun_compare(rf(K.scale(2) + 1, K + 3), rf(1)) is Ordering.GREATER
        assert ratfun_compare(rf(1, K + 1), rf(1, K + 2)) is Ordering.GREATER
        assert ratfun_compare(rf(1, K + 1), rf(1, K + 1)) is Ordering.EQUAL
        assert ratfun_compare(rf(1), rf(K)) is Ordering.LESS

    def test_operators_follow_compare(self):
        """Test comparison operators against constants."""
        assert rf(1, K) > 0
        assert rf(1, K) < Fraction(1, 1000)
        assert rf(K) >= rf(K)

    def test_operators_match_difference_sign(self, rng):
        """Test that comparison operators agree with the sign of a - b."""
        for _ in range(200):
            a, b = random_ratfun(rng), random_ratfun(rng)
            s = sign_at_infinity(a - b)
            assert (a < b, a <= b, a > b, a >= b) == (s < 0, s <= 0, s > 0, s >= 0)

    def test_order_is_compatible_with_positive_products(self, rng):
        """Test that positive factors preserve order."""
        checked = 0
        for _ in range(200):
            a, b, c = random_ratfun(rng), random_ratfun(rng), random_ratfun(rng)
            if ratfun_compare(a, b) is Ordering.GREATER and sign_at_infinity(c) == 1:
                assert ratfun_compare(a * c, b * c) is Ordering.GREATER
                checked += 1
        assert checked > 0

    def test_sign_matches_large_evaluations(self, rng):
        """Test the sign against evaluations at large K."""
        for _ in range(100):
            f = random_ratfun(rng, bound=4)
            for t in (20, 30, 40):
                value = eval_at(f, Fraction(2 ** t))
                assert (value > 0) - (value < 0) == sign_at_infinity(f)


class TestEvaluation:
    """eval_at."""

    def test_values(self):
        """Test evaluation at K = k."""
        assert eval_at(rf(1, K + 1), 1) == Fraction(1, 2)
        assert eval_at(rf(K + 2, K + 2), 5) == 1
        assert eval_at(rf(K * K), Fraction(3, 2)) == Fraction(9, 4)

    def test_pole(self):
        """Test that evaluating at a pole raises."""
        with pytest.raises(NumericDomainError):
            eval_at(rf(1, K - 1), 1)
