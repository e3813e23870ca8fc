"""Shared hypothesis strategies for the algebra tests."""

from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from qcongruence.exactalg import LaurentPoly, RatFunc

small_ints = st.integers(-6, 6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def laurent(draw, max_terms=5, low=-3, high=6, ints=False):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = draw(st.integers(low, high))
        c = draw(small_ints) if ints else draw(rationals)
        terms[e] = Fraction(c)
    return LaurentPoly(terms)


@st.composite
def polys(draw, max_deg=5, nonzero=False):
    coeffs = draw(st.lists(small_ints, min_size=1, max_size=max_deg + 1))
    p = LaurentPoly.from_coeffs(coeffs)
    if nonzero and p.is_zero():
        p = LaurentPoly.constant(1)
    return p


@st.composite
def ratfuncs(draw):
    num = draw(polys())
    den = draw(polys(nonzero=True))
    return RatFunc(num, den)


def to_sympy(p, x):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * x ** e
                       for e, c in p.terms.items()])
