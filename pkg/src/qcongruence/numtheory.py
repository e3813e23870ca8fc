"""Elementary number theory: Kronecker symbol, primality, divisors, p-adic valuation."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

# Deterministic Miller-Rabin witnesses for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...), trial division."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def euler_phi(n: int) -> int:
    r = n
    for p, _ in factorize(n):
        r = r // p * (p - 1)
    return r


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError("kronecker symbol needs n >= 1")
    if n == 1:
        return 1
    result = 1
    # 2-adic supplement: (a/2) = 0 if a even, +1 if a = +-1 mod 8, -1 if a = +-3 mod 8
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n via reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def padic_valuation(x, p: int) -> float | int:
    """nu_p(numerator) - nu_p(denominator); math.inf for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf

    def nu(m: int) -> int:
        m = abs(m)
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        return v

    return nu(x.numerator) - nu(x.denominator)


def parse_range(text: str) -> range:
    """'A..B' (inclusive) -> range(A, B + 1)."""
    lo, sep, hi = text.partition("..")
    if not sep:
        v = int(text)
        return range(v, v + 1)
    return range(int(lo), int(hi) + 1)
