from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from qcongruence.errors import ValidationError
from qcongruence.exactalg import LaurentPoly, q
from qcongruence.qseries import (Q4_SPEC, Q4T_SPEC, PochSpec, SummandSpec, classical_term,
                                 classical_term_pochhammer, q_binomial, q_bracket, q_pochhammer,
                                 qq_pochhammer, term_c, term_ratio)

points = st.tuples(st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(-2, 5), Fraction(3, 7)]),
                   st.sampled_from([Fraction(1), Fraction(2, 3), Fraction(5, 4), Fraction(-3)]))


def direct_term(k, qv, av, bracket=(8, 1)):
    """The parametric summand from its defining products at a rational point."""
    def poch(x, base, n):
        v = Fraction(1)
        for j in range(n):
            v *= 1 - x * qv ** (base * j)
        return v
    m, r = bracket
    num = poch(av * qv, 2, k) * poch(qv / av, 2, k) * poch(qv, 2, 2 * k)
    den = poch(qv ** 2, 2, 2 * k) * poch(av * qv ** 6, 6, k) * poch(qv ** 6 / av, 6, k)
    br = (1 - qv ** (m * k + r)) / (1 - qv)
    return num / den * br * qv ** (2 * k * k)


def test_pochhammer_small():
    assert q_pochhammer(PochSpec(0, 1, 1), 3).substitute_a(1) == \
        (1 - q) * (1 - q ** 2) * (1 - q ** 3)
    assert q_pochhammer(PochSpec(0, 1, 2, "2k"), 0).substitute_a(1) == 1
    assert qq_pochhammer(0) == 1


@pytest.mark.parametrize("n", range(0, 9))
def test_q_binomial_matches_sympy_and_limit(n):
    for m in range(n + 1):
        b = q_binomial(n, m)
        assert b.evaluate(1) == comb(n, m)
        assert b.coefficient(0) == 1
        assert b == q_binomial(n, n - m)
    assert q_binomial(n, n + 1).is_zero()


def test_q_binomial_pascal():
    for n in range(1, 10):
        for m in range(1, n):
            assert q_binomial(n, m) == q_binomial(n - 1, m - 1) + \
                LaurentPoly.monomial(m) * q_binomial(n - 1, m)


def test_bracket():
    assert q_bracket(5).to_ratfunc() == 1 + q + q ** 2 + q ** 3 + q ** 4
    assert q_bracket(-1).to_ratfunc() == -q ** -1


@pytest.mark.parametrize("k", range(0, 6))
def test_term_matches_defining_products(k):
    t = term_c(Q4T_SPEC, k)
    for qv, av in [(Fraction(1, 2), Fraction(1)), (Fraction(1, 3), Fraction(5, 4)),
                   (Fraction(-2, 5), Fraction(2, 3))]:
        assert t.evaluate(qv, av) == direct_term(k, qv, av)


@given(points, st.integers(0, 5))
def test_a_inversion_symmetry(pt, k):
    qv, av = pt
    t = term_c(Q4T_SPEC, k)
    assert t.evaluate(qv, av) == t.evaluate(qv, 1 / av)


@pytest.mark.parametrize("k", range(0, 7))
def test_a_equal_one_matches_a_free_family(k):
    assert term_c(Q4T_SPEC, k).substitute_a(1) == term_c(Q4_SPEC, k).coeff


@given(points, st.integers(0, 6))
def test_ratio_consistent_with_terms(pt, k):
    qv, av = pt
    r = term_ratio(Q4T_SPEC, k).evaluate(qv, av)
    assert r * term_c(Q4T_SPEC, k).evaluate(qv, av) == term_c(Q4T_SPEC, k + 1).evaluate(qv, av)


def test_classical_terms():
    assert classical_term(0) == 1
    assert classical_term(1) == Fraction(3, 32)
    for k in range(30):
        assert classical_term(k) == classical_term_pochhammer(k)
        # only 2 and 3 in the denominator
        d = classical_term(k).denominator
        while d % 2 == 0:
            d //= 2
        while d % 3 == 0:
            d //= 3
        assert d == 1


@pytest.mark.parametrize("k", range(0, 5))
def test_term_tends_to_classical_as_q_to_1(k):
    x = sympy.Symbol("x")
    f = term_c(Q4_SPEC, k).coeff
    num = sum(sympy.Rational(c.numerator, c.denominator) * x ** e for e, c in f.num.terms.items())
    den = sum(sympy.Rational(c.numerator, c.denominator) * x ** e for e, c in f.den.terms.items())
    assert sympy.limit(num / den, x, 1) == sympy.Rational(classical_term(k).numerator,
                                                           classical_term(k).denominator)


def test_spec_validation():
    with pytest.raises(ValidationError):
        PochSpec(0, 1, 0)
    with pytest.raises(ValidationError):
        PochSpec(2, 1, 1)
    with pytest.raises(ValidationError):
        PochSpec(0, 1, 1, "3k")
    with pytest.raises(ValidationError):
        SummandSpec((), ())
