"""Rational functions in an auxiliary symbol a over the field of rational functions in q.

Only products of binomials 1 - a^(+-1) q^s are needed for q-hypergeometric
terms with monomial Pochhammer arguments, so a ``BiRatFunc`` is stored as

    coeff(q) * a^apow * prod_s (1 - a q^s)^m_s

with ``coeff`` a canonical RatFunc.  Over Q(q) each 1 - a q^s is a unit
multiple of the irreducible a - q^(-s), so this factorization is unique and
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DenominatorVanishes
from .laurent import LaurentPoly
from .ratfunc import RatFunc


def _cp():
    from ..cyclotomic.polys import CycloProduct
    return CycloProduct


class BiRatFunc:
    __slots__ = ("coeff", "apow", "lin", "_hash")

    def __init__(self, coeff=1, apow: int = 0, lin=None):
        coeff = RatFunc.coerce(coeff)
        if coeff.is_zero():
            apow, lin = 0, ()
        else:
            items = lin.items() if isinstance(lin, dict) else (lin or ())
            lin = tuple(sorted((int(s), int(m)) for s, m in items if m))
        self.coeff = coeff
        self.apow = int(apow)
        self.lin = lin
        self._hash = None

    @classmethod
    def binomial(cls, a_exp: int, s: int) -> "BiRatFunc":
        """The factor 1 - a^a_exp q^s."""
        if a_exp == 0:
            return cls(_cp().one_minus_q_power(s).to_ratfunc())
        if a_exp == 1:
            return cls(1, 0, {s: 1})
        if a_exp == -1:
            # 1 - q^s/a = -q^s a^-1 (1 - a q^-s)
            return cls(_cp()(-1, s).to_ratfunc(), -1, {-s: 1})
        raise ValueError(f"a-exponent {a_exp} not supported (only -1, 0, 1)")

    @classmethod
    def coerce(cls, x) -> "BiRatFunc":
        if isinstance(x, BiRatFunc):
            return x
        return cls(x)

    @classmethod
    def a(cls) -> "BiRatFunc":
        return cls(1, 1)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def depends_on_a(self) -> bool:
        return bool(self.apow or self.lin)

    # -- arithmetic -----------------------------------------------------
    def __mul__(self, other):
        try:
            other = BiRatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return BiRatFunc(0)
        lin = dict(self.lin)
        for s, m in other.lin:
            lin[s] = lin.get(s, 0) + m
        return BiRatFunc(self.coeff * other.coeff, self.apow + other.apow, lin)

    __rmul__ = __mul__

    def inverse(self) -> "BiRatFunc":
        return BiRatFunc(self.coeff.inverse(), -self.apow, {s: -m for s, m in self.lin})

    def __truediv__(self, other):
        return self * BiRatFunc.coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return BiRatFunc(self.coeff ** n, self.apow * n, {s: m * n for s, m in self.lin})

    def __neg__(self):
        return BiRatFunc(-self.coeff, self.apow, self.lin)

    def __eq__(self, other):
        if not isinstance(other, BiRatFunc):
            try:
                other = BiRatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return (self.apow, self.lin) == (other.apow, other.lin) and self.coeff == other.coeff

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coeff, self.apow, self.lin))
        return self._hash

    def __repr__(self):
        fs = "".join(f" * (1 - a*q^{s})^{m}" for s, m in self.lin)
        return f"BiRatFunc(({self.coeff}) * a^{self.apow}{fs})"

    # -- transformations ------------------------------------------------
    def invert_a(self) -> "BiRatFunc":
        """The image under a -> 1/a."""
        result = BiRatFunc(self.coeff, -self.apow)
        for s, m in self.lin:
            result = result * BiRatFunc.binomial(-1, s) ** m
        return result

    def substitute_q_power(self, m: int) -> "BiRatFunc":
        if m == 0:
            raise ValueError("substitution q -> q^0 is not invertible")
        return BiRatFunc(self.coeff.substitute_power(m), self.apow,
                         {s * m: k for s, k in self.lin})

    def substitute_a(self, g) -> RatFunc:
        """Set a = g where g is a monomial c*q^m (or a nonzero rational)."""
        g = LaurentPoly.coerce(g)
        if not g.is_monomial():
            raise ValueError("a can only be replaced by a monomial c*q^m")
        m, c = g.valuation, g.leading_coefficient
        if c == 1:
            CP = _cp()
            fac = CP(1, m * self.apow)
            for s, k in self.lin:
                f = CP.one_minus_q_power(s + m)
                if f.is_zero():
                    if k < 0:
                        raise DenominatorVanishes(
                            f"factor 1 - a*q^{s} vanishes identically at a = q^{m}")
                    return RatFunc.coerce(0)
                fac = fac * f ** k
            return self.coeff * fac.to_ratfunc()
        result = self.coeff * RatFunc.coerce(g) ** self.apow
        for s, k in self.lin:
            f = 1 - g * LaurentPoly.monomial(s)
            if f.is_zero() and k < 0:
                raise DenominatorVanishes(f"factor 1 - a*q^{s} vanishes at a = {g}")
            result = result * RatFunc.coerce(f) ** k
        return result

    def evaluate(self, q, a) -> Fraction:
        q, a = Fraction(q), Fraction(a)
        v = self.coeff.evaluate(q) * a ** self.apow
        for s, m in self.lin:
            f = 1 - a * q ** s
            if f == 0 and m < 0:
                raise DenominatorVanishes(f"1 - a*q^{s} vanishes at q={q}, a={a}")
            v *= f ** m
        return v

    def as_fraction_in_a(self) -> tuple[dict[int, RatFunc], dict[int, RatFunc]]:
        """(numerator, denominator) as {a-exponent: coefficient}, denominator monic in a."""
        num = {0: self.coeff}
        den = {0: RatFunc.coerce(1)}

        def times(poly, root_coeff, lead):
            # poly * (lead * a + root_coeff)
            out = {}
            for e, c in poly.items():
                out[e] = out.get(e, 0) + c * root_coeff
                out[e + 1] = out.get(e + 1, 0) + c * lead
            return {e: c for e, c in out.items() if not RatFunc.coerce(c).is_zero()}

        unit = RatFunc.coerce(1)
        for s, m in self.lin:
            qs = RatFunc.coerce(LaurentPoly.monomial(s))
            for _ in range(abs(m)):
                if m > 0:
                    num = times(num, RatFunc.coerce(1), -qs)
                else:
                    # 1 - a q^s = -q^s (a - q^-s): keep monic factor, move -q^s up
                    den = times(den, -qs.inverse(), RatFunc.coerce(1))
                    unit = unit * (-qs)
        num = {e: c / unit for e, c in num.items()}
        if self.apow >= 0:
            num = {e + self.apow: c for e, c in num.items()}
        else:
            den = {e - self.apow: c for e, c in den.items()}
        return num, den


def substitute_q_power(f, m: int):
    """q -> q^m on a LaurentPoly, RatFunc or BiRatFunc."""
    if m == 0:
        raise ValueError("m must be nonzero")
    if isinstance(f, BiRatFunc):
        return f.substitute_q_power(m)
    if isinstance(f, RatFunc):
        return f.substitute_power(m)
    return LaurentPoly.coerce(f).substitute_power(m)


def substitute_a(f: BiRatFunc, g) -> RatFunc:
    return BiRatFunc.coerce(f).substitute_a(g)
