from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qcongruence.numtheory import (divisors, euler_phi, factorize, is_prime, kronecker, mobius,
                                   padic_valuation, parse_range)


@pytest.mark.parametrize("a,n,want", [(-3, 1, 1), (-3, 5, -1), (-3, 9, 0), (-3, 7, 1)])
def test_kronecker_examples(a, n, want):
    assert kronecker(a, n) == want


@given(st.integers(-200, 200), st.integers(1, 2000))
def test_kronecker_matches_sympy(a, n):
    # sympy's jacobi_symbol covers odd n; the 2-part is handled by the supplement
    if n % 2:
        assert kronecker(a, n) == sympy.jacobi_symbol(a, n)
    else:
        assert kronecker(a, n) == kronecker(a, 2) * kronecker(a, n // 2)


def test_kronecker_rule_for_minus_three():
    for n in range(1, 10001):
        if n % 3:
            assert (kronecker(-3, n) == 1) == (n % 3 == 1), n
        else:
            assert kronecker(-3, n) == 0


def test_kronecker_multiplicative_on_odd():
    odd = range(1, 501, 2)
    for m in odd[:60]:
        for n in odd:
            assert kronecker(-3, m * n) == kronecker(-3, m) * kronecker(-3, n)


@pytest.mark.parametrize("n,want", [(97, True), (91, False), (1, False), (0, False), (2, True),
                                    (3215031751, False), (2 ** 61 - 1, True)])
def test_is_prime_examples(n, want):
    assert is_prime(n) is want


def test_is_prime_matches_sympy():
    assert all(is_prime(n) == sympy.isprime(n) for n in range(5000))


@given(st.integers(1, 10 ** 6))
def test_factorization_and_divisors(n):
    prod = 1
    for p, e in factorize(n):
        assert sympy.isprime(p)
        prod *= p ** e
    assert prod == n
    ds = divisors(n)
    assert list(ds) == sorted(sympy.divisors(n))
    assert euler_phi(n) == sympy.totient(n)
    assert mobius(n) == sympy.mobius(n)


@pytest.mark.parametrize("x,p,want", [(50, 5, 2), (Fraction(3, 250), 5, -3), (0, 7, math.inf)])
def test_padic_examples(x, p, want):
    assert padic_valuation(x, p) == want


@given(st.fractions().filter(bool), st.fractions().filter(bool), st.sampled_from([2, 3, 5, 7, 97]))
def test_padic_additive(x, y, p):
    assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)


def test_parse_range():
    assert list(parse_range("5..9")) == [5, 6, 7, 8, 9]
    assert list(parse_range("7")) == [7]
