"""Laurent polynomials in one variable q with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

from . import _intpoly as ip


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class LaurentPoly:
    """Finitely supported map exponent -> nonzero rational, read as a sum of c*q^e.

    Stored densely: an integer coefficient list starting at exponent ``val``
    over one positive common denominator.  Instances are immutable.
    """

    __slots__ = ("_c", "_v", "_d", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        items = [(int(e), _as_fraction(c)) for e, c in terms.items()]
        items = [(e, c) for e, c in items if c]
        if not items:
            self._set([], 0, 1)
            return
        lo = min(e for e, _ in items)
        hi = max(e for e, _ in items)
        den = 1
        for _, c in items:
            den = den * c.denominator // gcd(den, c.denominator)
        coeffs = [0] * (hi - lo + 1)
        for e, c in items:
            coeffs[e - lo] += c.numerator * (den // c.denominator)
        self._set(coeffs, lo, den)

    def _set(self, coeffs, val, den):
        self._c = tuple(coeffs)
        self._v = val
        self._d = den
        self._hash = None

    @classmethod
    def _make(cls, coeffs: list[int], val: int = 0, den: int = 1) -> "LaurentPoly":
        # strip zeros at both ends, then cancel content against den
        lo = 0
        n = len(coeffs)
        while lo < n and not coeffs[lo]:
            lo += 1
        while n > lo and not coeffs[n - 1]:
            n -= 1
        obj = cls.__new__(cls)
        if lo == n:
            obj._set([], 0, 1)
            return obj
        coeffs = coeffs[lo:n]
        if den < 0:
            den = -den
            coeffs = [-c for c in coeffs]
        if den != 1:
            g = gcd(ip.content(coeffs), den)
            if g != 1:
                coeffs = [c // g for c in coeffs]
                den //= g
        obj._set(coeffs, val + lo, den)
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def monomial(cls, exp: int = 1, coeff=1) -> "LaurentPoly":
        c = _as_fraction(coeff)
        return cls._make([c.numerator], exp, c.denominator)

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def from_coeffs(cls, coeffs, val: int = 0) -> "LaurentPoly":
        """Coefficients listed from exponent ``val`` upward."""
        return cls({val + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def from_ints(cls, coeffs, val: int = 0, den: int = 1) -> "LaurentPoly":
        return cls._make(list(coeffs), val, den)

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls.constant(x)

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return {self._v + i: Fraction(c, self._d) for i, c in enumerate(self._c) if c}

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def valuation(self) -> int | None:
        return self._v if self._c else None

    @property
    def degree(self) -> int | None:
        return self._v + len(self._c) - 1 if self._c else None

    def is_polynomial(self) -> bool:
        return not self._c or self._v >= 0

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and self._v == 0)

    def coefficient(self, e: int) -> Fraction:
        i = e - self._v
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._d)
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Fraction:
        return Fraction(self._c[-1], self._d) if self._c else Fraction(0)

    def int_coeffs(self) -> tuple[tuple[int, ...], int, int]:
        """(integer coefficients, valuation, common denominator)."""
        return self._c, self._v, self._d

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return LaurentPoly._make([-c for c in self._c], self._v, self._d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except TypeError:
                return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        d1, d2 = self._d, other._d
        g = gcd(d1, d2)
        s1, s2 = d2 // g, d1 // g
        lo = min(self._v, other._v)
        hi = max(self._v + len(self._c), other._v + len(other._c))
        out = [0] * (hi - lo)
        o = self._v - lo
        for i, c in enumerate(self._c):
            out[o + i] = c * s1
        o = other._v - lo
        for i, c in enumerate(other._c):
            out[o + i] += c * s2
        return LaurentPoly._make(out, lo, d1 * s1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                c = _as_fraction(other)
            except TypeError:
                return NotImplemented
            return LaurentPoly._make([x * c.numerator for x in self._c], self._v,
                                     self._d * c.denominator)
        if not self._c or not other._c:
            return LaurentPoly()
        return LaurentPoly._make(ip.mul(list(self._c), list(other._c)),
                                 self._v + other._v, self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                c = Fraction(self._d, self._c[0])
                return LaurentPoly.monomial(-self._v, c) ** (-n)
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        if not self._c:
            return self
        return LaurentPoly._make(list(self._c), self._v + k, self._d)

    def scale(self, c) -> "LaurentPoly":
        return self * _as_fraction(c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c and self._v == other._v and self._d == other._d
        try:
            return self == LaurentPoly.constant(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._c, self._v, self._d))
        return self._hash

    # -- structural operations -----------------------------------------
    def polynomial_part(self) -> "LaurentPoly":
        """q^(-valuation) * self: an ordinary polynomial with nonzero constant term."""
        if not self._c:
            return self
        return LaurentPoly._make(list(self._c), 0, self._d)

    def monic(self) -> "LaurentPoly":
        if not self._c:
            return self
        lead = self._c[-1]
        return LaurentPoly._make([c for c in self._c], self._v, lead) if lead != self._d \
            else self

    def substitute_power(self, m: int) -> "LaurentPoly":
        """Replace q by q^m (m nonzero)."""
        if m == 0:
            raise ValueError("substitution q -> q^0 is not invertible")
        if not self._c:
            return self
        if m > 0:
            out = [0] * ((len(self._c) - 1) * m + 1)
            for i, c in enumerate(self._c):
                out[i * m] = c
            return LaurentPoly._make(out, self._v * m, self._d)
        k = -m
        out = [0] * ((len(self._c) - 1) * k + 1)
        for i, c in enumerate(reversed(self._c)):
            out[i * k] = c
        return LaurentPoly._make(out, -(self.degree * k), self._d)

    def evaluate(self, x):
        """Exact value at a nonzero rational x."""
        x = _as_fraction(x)
        if not self._c:
            return Fraction(0)
        if x == 0:
            if self._v < 0:
                raise ZeroDivisionError("Laurent polynomial with negative powers at 0")
            return self.coefficient(0)
        # homogenised Horner: acc = sum c_i p^i r^(n-i), all in Z
        p, r = x.numerator, x.denominator
        n = len(self._c) - 1
        acc = 0
        rp = 1
        for c in reversed(self._c):
            acc = acc * p + c * rp
            rp *= r
        return Fraction(acc, self._d * r ** n) * x ** self._v

    __call__ = evaluate

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Euclidean division of ordinary polynomials (nonnegative exponents)."""
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise ValueError("divmod needs ordinary polynomials")
        a = [0] * self._v + list(self._c) if self._c else []
        b = [0] * other._v + list(other._c)
        lead = b[-1]
        if lead in (1, -1):
            bb = b if lead == 1 else [-c for c in b]
            quo, rem = ip.divmod_monic(a, bb)
            if lead == -1:
                quo = [-c for c in quo]
            return (LaurentPoly._make(quo, 0, self._d) * other._d,
                    LaurentPoly._make(rem, 0, self._d))
        return self._divmod_field(other)

    def _divmod_field(self, other):
        a = [self.coefficient(e) for e in range(0, (self.degree or 0) + 1)] if self._c else []
        b = [other.coefficient(e) for e in range(0, other.degree + 1)]
        db = len(b) - 1
        lead = b[-1]
        r = list(a)
        quo = [Fraction(0)] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                k = c / lead
                quo[i - db] = k
                for j in range(db + 1):
                    if b[j]:
                        r[i - db + j] -= k * b[j]
        return LaurentPoly.from_coeffs(quo), LaurentPoly.from_coeffs(r[:db])

    def __divmod__(self, other):
        return self.divmod(LaurentPoly.coerce(other))

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """self / other when the quotient is a Laurent polynomial; ValueError otherwise."""
        q = self.try_exact_div(other)
        if q is None:
            raise ValueError("division is not exact")
        return q

    def try_exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._c:
            return self
        if len(other._c) == 1:
            inv = Fraction(other._d, other._c[0])
            return (self * inv).shift(-other._v)
        if other._c[-1] in (1, -1):
            quo = ip.exact_div(list(self._c), list(other._c))
            if quo is None:
                return None
            return LaurentPoly._make(quo, self._v - other._v, self._d) * other._d
        quo, rem = self.polynomial_part().divmod(other.polynomial_part())
        if rem:
            return None
        return quo.shift(self._v - other._v)

    def divides(self, other: "LaurentPoly") -> bool:
        """True when self divides other in the Laurent polynomial ring."""
        return other.try_exact_div(self) is not None

    # -- display --------------------------------------------------------
    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}" if e > 0 else f"q^({e})"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


q = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def _primitive(a: list[int]) -> list[int]:
    g = ip.content(a)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _prem_primitive(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of the pseudo-remainder of a by b (integer lists)."""
    lead = b[-1]
    if lead in (1, -1):
        bb = b if lead == 1 else [-c for c in b]
        return _primitive(ip.divmod_monic(a, bb)[1])
    db = len(b) - 1
    r = list(a)
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        r = [x * lead for x in r]
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        ip.trim(r)
        g = ip.content(r)
        if g > 1:
            r = [x // g for x in r]
    return _primitive(r)


def poly_gcd(p1: LaurentPoly, p2: LaurentPoly) -> LaurentPoly:
    """Monic gcd of the polynomial parts (monomial factors q^v stripped)."""
    p1, p2 = LaurentPoly.coerce(p1), LaurentPoly.coerce(p2)
    if p1.is_zero():
        return p2.polynomial_part().monic()
    if p2.is_zero():
        return p1.polynomial_part().monic()
    a = _primitive(list(p1._c))
    b = _primitive(list(p2._c))
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem_primitive(a, b)
        a, b = b, r
        if not b:
            break
    if b and len(b) == 1:
        return ONE
    return LaurentPoly._make(a, 0, 1).monic()
