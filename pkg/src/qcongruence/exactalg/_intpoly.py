"""Dense integer polynomial kernels.

Polynomials are plain lists of Python ints, lowest degree first.  Large
products and exact quotients go through Kronecker substitution with gmpy2
big integers; everything small stays schoolbook.
"""

from __future__ import annotations

from math import gcd

import gmpy2

KRONECKER_THRESHOLD = 48


def trim(a: list[int]) -> list[int]:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    if n != len(a):
        del a[n:]
    return a


def content(a) -> int:
    g = 0
    for c in a:
        if c:
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def maxbits(a) -> int:
    m = 0
    for c in a:
        b = c.bit_length() if c >= 0 else (-c).bit_length()
        if b > m:
            m = b
    return m


def add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def scale(a, c: int) -> list[int]:
    if c == 1:
        return list(a)
    return [x * c for x in a]


def _pack(a, nbytes: int):
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in a)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in a)
    return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(neg, "little"))


def _unpack(v, nbytes: int, count: int) -> list[int]:
    sign = 1
    if v < 0:
        sign, v = -1, -v
    raw = int(v).to_bytes(max(count * nbytes, (v.bit_length() + 7) // 8), "little")
    half = 1 << (8 * nbytes - 1)
    full = 1 << (8 * nbytes)
    out = []
    carry = 0
    for i in range(count):
        c = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if c >= half:
            c -= full
            carry = 1
        else:
            carry = 0
        out.append(sign * c)
    return out


def _schoolbook(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    if min(len(a), len(b)) < KRONECKER_THRESHOLD:
        return trim(_schoolbook(a, b))
    bits = maxbits(a) + maxbits(b) + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return trim(_unpack(prod, nbytes, len(a) + len(b) - 1))


def product(polys) -> list[int]:
    """Balanced product tree; keeps Kronecker operands of similar size."""
    items = [p for p in polys]
    if not items:
        return [1]
    while len(items) > 1:
        items.sort(key=len)
        nxt = []
        for i in range(0, len(items) - 1, 2):
            nxt.append(mul(items[i], items[i + 1]))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def divmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Long division by a monic (leading coefficient 1) integer polynomial."""
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    r = list(a)
    quo = [0] * (len(a) - db)
    nz = [(j, c) for j, c in enumerate(b[:-1]) if c]
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            k = i - db
            quo[k] = c
            for j, bj in nz:
                r[k + j] -= c * bj
    return trim(quo), trim(r[:db])


def exact_div(a: list[int], b: list[int]) -> list[int] | None:
    """Quotient a/b when b divides a exactly over Z, else None.

    The Kronecker route needs a bound on the quotient's coefficients; it is
    guessed, checked by multiplying back, and widened on failure.
    """
    if not a:
        return []
    if len(b) == 1:
        if b[0] == 0:
            raise ZeroDivisionError("division by zero polynomial")
        out = []
        for c in a:
            q, r = divmod(c, b[0])
            if r:
                return None
            out.append(q)
        return out
    if len(b) > len(a):
        return None
    if len(a) < 4 * KRONECKER_THRESHOLD or abs(b[-1]) != 1:
        return _exact_div_slow(a, b)
    count = len(a) - len(b) + 1
    bits = maxbits(a) + count.bit_length() + 16
    A = None
    for _ in range(6):
        nbytes = (bits + 7) // 8
        A = _pack(a, nbytes)
        B = _pack(b, nbytes)
        q, r = gmpy2.t_divmod(A, B)
        if r == 0:
            quo = trim(_unpack(q, nbytes, count))
            if mul(quo, b) == a:
                return quo
        bits *= 2
    return _exact_div_slow(a, b)


def _exact_div_slow(a, b):
    lead = b[-1]
    db = len(b) - 1
    r = list(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            k, rem = divmod(c, lead)
            if rem:
                return None
            quo[i - db] = k
            for j in range(db):
                if b[j]:
                    r[i - db + j] -= k * b[j]
    if any(r[:db]):
        return None
    return trim(quo)


def fold_mod_xn_minus_1(a, n: int, offset: int = 0) -> list[int]:
    """Reduce x^offset * a(x) modulo x^n - 1; returns a length-n list."""
    out = [0] * n
    for i, c in enumerate(a):
        if c:
            out[(i + offset) % n] += c
    return out
