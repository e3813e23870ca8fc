"""Rational functions in q in canonical lowest-terms form.

Canonical form: ``num / den`` with ``den`` an ordinary monic polynomial with
nonzero constant term and ``gcd(polynomial part of num, den) = 1``.

When the factorization of ``den`` into cyclotomic polynomials is known (all
denominators built from q-Pochhammer symbols), sums and products cancel by
trial division against those factors instead of running a polynomial gcd.
That hint never changes the canonical value, only how it is reached.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import ZeroDenominator
from . import _intpoly as ip
from .laurent import ONE, LaurentPoly, poly_gcd


def _cyclo():
    from ..cyclotomic import polys
    return polys


def _phi_divides(coeffs, val: int, d: int) -> bool:
    # Phi_d | N  <=>  (N mod q^d - 1) mod Phi_d == 0
    phi = _cyclo().cyclotomic_coeffs(d)
    folded = ip.fold_mod_xn_minus_1(coeffs, d, val)
    return not ip.divmod_monic(ip.trim(folded), list(phi))[1]


def _cancel(num: LaurentPoly, exps: dict[int, int]) -> tuple[LaurentPoly, dict[int, int]]:
    """Strip from num every Phi_d it shares with prod Phi_d^exps[d]."""
    if num.is_zero():
        return num, {}
    c, v, den = num.int_coeffs()
    coeffs = list(c)
    phis = _cyclo().cyclotomic_coeffs
    out = {}
    for d, e in sorted(exps.items()):
        while e > 0 and _phi_divides(coeffs, v, d):
            coeffs = ip.exact_div(coeffs, list(phis(d)))
            e -= 1
        if e:
            out[d] = e
    return LaurentPoly.from_ints(coeffs, v, den), out


def _expand(exps) -> LaurentPoly:
    return LaurentPoly.from_ints(_cyclo().expand_exponents(sorted(exps.items())))


class RatFunc:
    """Quotient of Laurent polynomials in q, kept in canonical form."""

    __slots__ = ("_num", "_den", "_fac", "_denfac", "_hash")

    def __init__(self, num=0, den=1):
        r = rf_normalize(LaurentPoly.coerce(num), LaurentPoly.coerce(den))
        self._num, self._den, self._fac, self._denfac = r._num, r._den, r._fac, r._denfac
        self._hash = None

    @classmethod
    def _raw(cls, num, den, fac=None, denfac=None) -> "RatFunc":
        obj = cls.__new__(cls)
        obj._num, obj._den, obj._fac, obj._denfac = num, den, fac, denfac
        obj._hash = None
        return obj

    @classmethod
    def from_product(cls, cp) -> "RatFunc":
        """Exact value of a ``CycloProduct``, expanded lazily."""
        if cp.is_zero():
            return cls._raw(LaurentPoly(), ONE, cp, {})
        return cls._raw(None, None, cp, {d: -e for d, e in cp.exps if e < 0})

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if hasattr(x, "to_ratfunc"):
            return x.to_ratfunc()
        return cls._raw(LaurentPoly.coerce(x), ONE, None, {})

    # -- canonical parts ------------------------------------------------
    @property
    def num(self) -> LaurentPoly:
        if self._num is None:
            self._num = self._fac.numerator()
        return self._num

    @property
    def den(self) -> LaurentPoly:
        if self._den is None:
            self._den = self._fac.denominator()
        return self._den

    @property
    def factored(self):
        """The ``CycloProduct`` form when known, else None."""
        return self._fac

    @property
    def den_factors(self) -> dict[int, int] | None:
        """Cyclotomic factorization {d: e} of den when known."""
        return None if self._denfac is None else dict(self._denfac)

    def is_zero(self) -> bool:
        if self._fac is not None:
            return self._fac.is_zero()
        return self._num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_laurent(self) -> bool:
        if self._denfac is not None:
            return not self._denfac
        return self.den == ONE

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        if self._fac is not None:
            return RatFunc.from_product(-self._fac)
        return RatFunc._raw(-self._num, self._den, None, self._denfac)

    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._denfac is not None and other._denfac is not None:
            e1, e2 = self._denfac, other._denfac
            lcm = dict(e1)
            for d, e in e2.items():
                lcm[d] = max(lcm.get(d, 0), e)
            t1 = self.num * _expand({d: e - e1.get(d, 0) for d, e in lcm.items()})
            t2 = other.num * _expand({d: e - e2.get(d, 0) for d, e in lcm.items()})
            return _from_hinted(t1 + t2, lcm)
        return rf_normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self._fac is not None and other._fac is not None:
            return RatFunc.from_product(self._fac * other._fac)
        if self.is_zero() or other.is_zero():
            return RatFunc._raw(LaurentPoly(), ONE, None, {})
        if self._denfac is not None and other._denfac is not None:
            exps = dict(self._denfac)
            for d, e in other._denfac.items():
                exps[d] = exps.get(d, 0) + e
            return _from_hinted(self.num * other.num, exps)
        return rf_normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominator("inverse of the zero rational function")
        if self._fac is not None:
            return RatFunc.from_product(self._fac.inverse())
        return rf_normalize(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self._fac is not None:
            return RatFunc.from_product(self._fac ** n)
        result = RatFunc.coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if self._fac is not None and other._fac is not None:
            return self._fac == other._fac
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- evaluation and substitution -----------------------------------
    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        if self._fac is not None:
            return self._fac.evaluate(x)
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDenominator(f"denominator vanishes at q = {x}")
        return self.num.evaluate(x) / d

    def substitute_power(self, m: int) -> "RatFunc":
        """Replace q by q^m (m nonzero), re-canonicalized."""
        if self._fac is not None:
            return RatFunc.from_product(self._fac.substitute_power(m))
        # q -> q^m is an injective ring map, so coprimality survives; only the
        # monomial and leading-coefficient normalization must be redone
        num = self.num.substitute_power(m)
        den = self.den.substitute_power(m)
        v = den.valuation
        num, den = num.shift(-v), den.shift(-v)
        lead = den.leading_coefficient
        num, den = num * (1 / lead), den * (1 / lead)
        denfac = None
        if self._denfac is not None:
            denfac = {}
            for d, e in self._denfac.items():
                for f, k in _cyclo()._phi_of_power(d, m)[2]:
                    denfac[f] = denfac.get(f, 0) + k * e
        return RatFunc._raw(num, den, None, denfac)

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _from_hinted(num: LaurentPoly, exps: dict[int, int]) -> RatFunc:
    num, exps = _cancel(num, {d: e for d, e in exps.items() if e > 0})
    if num.is_zero():
        return RatFunc._raw(num, ONE, None, {})
    return RatFunc._raw(num, _expand(exps), None, exps)


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    """Canonical lowest-terms RatFunc equal to num/den."""
    num, den = LaurentPoly.coerce(num), LaurentPoly.coerce(den)
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return RatFunc._raw(LaurentPoly(), ONE, None, {})
    v = den.valuation
    num, den = num.shift(-v), den.shift(-v)
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    lead = den.leading_coefficient
    if lead != 1:
        num, den = num * (1 / lead), den * (1 / lead)
    return RatFunc._raw(num, den, None, {} if den == ONE else None)


def sum_ratfuncs(items) -> RatFunc:
    """Exact sum; one common denominator when every summand is a cyclotomic product."""
    items = [RatFunc.coerce(x) for x in items]
    items = [x for x in items if not x.is_zero()]
    if not items:
        return RatFunc.coerce(0)
    if not all(x.factored is not None for x in items):
        total = items[0]
        for x in items[1:]:
            total = total + x
        return total
    lcm: dict[int, int] = {}
    for x in items:
        for d, e in x.factored.exps:
            if e < 0:
                lcm[d] = max(lcm.get(d, 0), -e)
    polys = _cyclo()
    smin = min(x.factored.shift for x in items)
    # integer numerators over a common rational scale
    scale = 1
    for x in items:
        u = x.factored.unit
        scale = scale * u.denominator // gcd(scale, u.denominator)
    total: list[int] = []
    for x in items:
        f = x.factored
        exps = dict(lcm)
        for d, e in f.exps:
            exps[d] = exps.get(d, 0) + e
        ints = polys.expand_exponents(sorted((d, e) for d, e in exps.items() if e))
        c = f.unit * scale
        part = [0] * (f.shift - smin) + ip.scale(ints, int(c))
        total = ip.add(total, part)
    num = LaurentPoly.from_ints(total, smin, scale)
    return _from_hinted(num, lcm)
