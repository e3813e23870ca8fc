"""Exact arithmetic kernel: Laurent polynomials, rational functions in q, and in (q, a)."""

from .laurent import LaurentPoly, poly_gcd, q
from .ratfunc import RatFunc, rf_normalize, sum_ratfuncs
from .birat import BiRatFunc, substitute_a, substitute_q_power

__all__ = ["LaurentPoly", "RatFunc", "BiRatFunc", "poly_gcd", "rf_normalize",
           "substitute_a", "substitute_q_power", "sum_ratfuncs", "q"]
