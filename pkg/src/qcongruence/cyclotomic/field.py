"""Arithmetic in Q(zeta_d) = Q[q]/(Phi_d) and rational functions in a over it.

Elements use the power basis 1, zeta, ..., zeta^(phi(d)-1).  Products of
linear factors 1 - a*zeta^s are first expanded in the cyclic ring
Z[x]/(x^d - 1), where multiplying by zeta^s is a rotation, and only then
reduced modulo Phi_d; the reduction map is a ring homomorphism so the order
does not matter.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import NotInvertible
from ..exactalg import _intpoly as ip
from ..exactalg.laurent import LaurentPoly
from ..numtheory import euler_phi
from .polys import CycloProduct, cyclotomic_coeffs


class CycloElem:
    """Residue of a rational polynomial modulo Phi_d (d >= 2)."""

    __slots__ = ("d", "_c", "_den", "_hash")

    def __init__(self, d: int, coeffs=()):
        if d < 2:
            raise ValueError("cyclotomic field needs d >= 2")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        elem = CycloElem._reduce(d, ints, den)
        self.d, self._c, self._den, self._hash = d, elem._c, elem._den, None

    @staticmethod
    def _reduce(d: int, ints, den: int = 1) -> "CycloElem":
        """Reduce an integer polynomial (over den) modulo Phi_d."""
        phi = cyclotomic_coeffs(d)
        n = len(phi) - 1
        ints = list(ints)
        if len(ints) > n:
            ints = ip.divmod_monic(ip.trim(ints), list(phi))[1]
        ints = ints + [0] * (n - len(ints))
        g = gcd(ip.content(ints), den)
        if den < 0:
            g = -g
        if g not in (0, 1):
            ints = [c // g for c in ints]
            den //= g
        if not any(ints):
            den = 1
        obj = CycloElem.__new__(CycloElem)
        obj.d, obj._c, obj._den, obj._hash = d, tuple(ints), den, None
        return obj

    @classmethod
    def from_int(cls, d: int, c) -> "CycloElem":
        c = Fraction(c)
        return cls._reduce(d, [c.numerator], c.denominator)

    @classmethod
    def zeta_power(cls, d: int, s: int) -> "CycloElem":
        v = [0] * d
        v[s % d] = 1
        return cls._reduce(d, v)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._c)

    def is_zero(self) -> bool:
        return not any(self._c)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if isinstance(other, CycloElem):
            if other.d != self.d:
                raise ValueError(f"mixing Q(zeta_{self.d}) and Q(zeta_{other.d})")
            return other
        return CycloElem.from_int(self.d, other)

    def __add__(self, other):
        o = self._check(other)
        g = gcd(self._den, o._den)
        s1, s2 = o._den // g, self._den // g
        return CycloElem._reduce(self.d, [a * s1 + b * s2 for a, b in zip(self._c, o._c)],
                                 self._den * s1)

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._reduce(self.d, [-c for c in self._c], self._den)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycloElem):
            c = Fraction(other)
            return CycloElem._reduce(self.d, [x * c.numerator for x in self._c],
                                     self._den * c.denominator)
        o = self._check(other)
        if self.is_zero() or o.is_zero():
            return CycloElem._reduce(self.d, [])
        return CycloElem._reduce(self.d, ip.mul(ip.trim(list(self._c)), ip.trim(list(o._c))),
                                 self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        return cyclo_invert(self)

    def __truediv__(self, other):
        return self * cyclo_invert(self._check(other))

    def __rtruediv__(self, other):
        return CycloElem.from_int(self.d, other) * cyclo_invert(self)

    def __pow__(self, n: int):
        if n < 0:
            return cyclo_invert(self) ** (-n)
        result = CycloElem.from_int(self.d, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_zeta(self, s: int) -> "CycloElem":
        """self * zeta^s."""
        s %= self.d
        if not s:
            return self
        return CycloElem._reduce(self.d, [0] * s + list(self._c), self._den)

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.d == other.d and self._c == other._c and self._den == other._den
        try:
            return self == CycloElem.from_int(self.d, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, self._c, self._den))
        return self._hash

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"CycloElem(d={self.d}: {' + '.join(terms) or '0'})"


def reduce_mod_phi(p, d: int) -> CycloElem:
    """Image of a Laurent polynomial at a primitive d-th root of unity."""
    if d < 2:
        raise ValueError("reduction needs d >= 2")
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        return CycloElem._reduce(d, [])
    c, v, den = p.int_coeffs()
    # q^d = 1 in the field, so negative exponents fold onto 0..d-1
    return CycloElem._reduce(d, ip.trim(ip.fold_mod_xn_minus_1(c, d, v)), den)


def cyclo_invert(x: CycloElem) -> CycloElem:
    """Multiplicative inverse via the extended Euclidean algorithm against Phi_d."""
    if x.is_zero():
        raise NotInvertible(f"zero has no inverse in Q(zeta_{x.d})")
    # Work over Q with Fraction lists; a*u + phi*v = g, g a nonzero constant.
    phi = [Fraction(c) for c in cyclotomic_coeffs(x.d)]
    a = [Fraction(c) for c in x.coeffs]
    while a and not a[-1]:
        a.pop()
    r0, r1 = phi, a
    u0, u1 = [], [Fraction(1)]
    while len(r1) > 1:
        quo, rem = _fdivmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, _fsub(u0, _fmul(quo, u1))
    c = r1[0]
    inv = CycloElem._reduce(x.d, [0])
    if u1:
        den = 1
        for t in u1:
            den = den * t.denominator // gcd(den, t.denominator)
        inv = CycloElem._reduce(x.d, [int(t * den) for t in u1], den)
    return inv * (1 / c)


def _fdivmod(a, b):
    a = list(a)
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        k = a[i + len(b) - 1] / lead
        quo[i] = k
        if k:
            for j, bj in enumerate(b):
                a[i + j] -= k * bj
    rem = a[:len(b) - 1]
    while rem and not rem[-1]:
        rem.pop()
    return quo, rem


def _fmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _fsub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


@lru_cache(maxsize=4096)
def phi_image(e: int, d: int) -> CycloElem:
    """Phi_e(zeta_d)."""
    return reduce_mod_phi(LaurentPoly.from_ints(cyclotomic_coeffs(e)), d)


@lru_cache(maxsize=4096)
def _phi_image_inv(e: int, d: int) -> CycloElem:
    return cyclo_invert(phi_image(e, d))


def product_at_root(cp: CycloProduct, d: int) -> CycloElem:
    """Value of unit * q^shift * prod Phi_e^x_e at a primitive d-th root of unity."""
    if cp.is_zero():
        return CycloElem._reduce(d, [])
    x_d = cp.exponent(d)
    if x_d < 0:
        raise NotInvertible(f"Phi_{d} remains in the denominator (exponent {x_d})")
    if x_d > 0:
        return CycloElem._reduce(d, [])
    v = CycloElem.zeta_power(d, cp.shift) * cp.unit
    for e, k in cp.exps:
        img = phi_image(e, d) if k > 0 else _phi_image_inv(e, d)
        v = v * img ** abs(k)
    return v


def ratfunc_at_root(f, d: int) -> CycloElem:
    """Value of a RatFunc at zeta_d; NotInvertible when its denominator vanishes there."""
    if f.factored is not None:
        return product_at_root(f.factored, d)
    den = reduce_mod_phi(f.den, d)
    if den.is_zero():
        raise NotInvertible(f"denominator vanishes at a primitive {d}-th root of unity")
    return reduce_mod_phi(f.num, d) * cyclo_invert(den)


# -- rational functions in a over Q(zeta_d) ------------------------------
def _rotate(v, s: int):
    s %= len(v)
    return v[-s:] + v[:-s] if s else list(v)


def _linear_product(d: int, lin) -> list[list[int]]:
    """prod (1 - a zeta^s)^m (m >= 0) as a list of cyclic Z-vectors per a-power."""
    poly = [[1] + [0] * (d - 1)]
    for s, m in lin:
        for _ in range(m):
            out = [list(c) for c in poly] + [[0] * d]
            for i, c in enumerate(poly):
                r = _rotate(c, s)
                nxt = out[i + 1]
                for j in range(d):
                    nxt[j] -= r[j]
            poly = out
    return poly


def _poly_from_cyclic(d: int, vecs, scalar: CycloElem) -> list[CycloElem]:
    return [CycloElem._reduce(d, ip.trim(list(v))) * scalar for v in vecs]


class CycloRatFuncA:
    """a^apow * N(a) / prod_s (1 - a zeta^s)^m_s over Q(zeta_d), in lowest terms.

    N has nonzero constant term and shares no root with the denominator, so
    the representation is unique and equality is structural.
    """

    __slots__ = ("d", "num", "apow", "den")

    def __init__(self, d: int, num, apow: int = 0, den=()):
        self.d = d
        self.num = tuple(num)
        self.apow = apow
        self.den = tuple(sorted(den))

    @classmethod
    def zero(cls, d: int) -> "CycloRatFuncA":
        return cls(d, (), 0, ())

    @classmethod
    def constant(cls, d: int, c) -> "CycloRatFuncA":
        c = c if isinstance(c, CycloElem) else CycloElem.from_int(d, c)
        return cls(d, (c,), 0, ()) if c else cls.zero(d)

    @classmethod
    def from_factors(cls, d: int, scalar: CycloElem, apow: int, lin) -> "CycloRatFuncA":
        """scalar * a^apow * prod (1 - a zeta^s)^m; lin maps s -> m (any sign)."""
        if scalar.is_zero():
            return cls.zero(d)
        merged = _merge_mod(d, lin)
        top = [(s, m) for s, m in merged.items() if m > 0]
        den = tuple((s, -m) for s, m in merged.items() if m < 0)
        num = _poly_from_cyclic(d, _linear_product(d, top), scalar)
        return cls(d, num, apow, den)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        if not isinstance(other, CycloRatFuncA):
            if isinstance(other, (int, Fraction, CycloElem)):
                other = CycloRatFuncA.constant(self.d, other)
            else:
                return NotImplemented
        return (self.d, self.num, self.apow, self.den) == (other.d, other.num, other.apow, other.den)

    def __hash__(self):
        return hash((self.d, self.num, self.apow, self.den))

    def __repr__(self):
        return (f"CycloRatFuncA(d={self.d}, deg_num={len(self.num) - 1}, apow={self.apow}, "
                f"den={dict(self.den)})")

    def __add__(self, other):
        return sum_rational([self, other], self.d)

    def __mul__(self, other):
        if not isinstance(other, CycloRatFuncA):
            other = CycloRatFuncA.constant(self.d, other)
        if self.is_zero() or other.is_zero():
            return CycloRatFuncA.zero(self.d)
        num = _poly_mul(self.num, other.num, self.d)
        den = dict(self.den)
        for s, m in other.den:
            den[s] = den.get(s, 0) + m
        return _canonical(self.d, num, self.apow + other.apow, den)

    def evaluate(self, a) -> CycloElem:
        """Value at a rational (or field) point a."""
        a = a if isinstance(a, CycloElem) else CycloElem.from_int(self.d, a)
        if self.is_zero():
            return CycloElem.from_int(self.d, 0)
        n = _poly_eval(self.num, a)
        den = CycloElem.from_int(self.d, 1)
        for s, m in self.den:
            den = den * (1 - a.mul_zeta(s)) ** m
        return n * cyclo_invert(den) * a ** self.apow


def _merge_mod(d: int, lin) -> dict[int, int]:
    items = lin.items() if isinstance(lin, dict) else lin
    out: dict[int, int] = {}
    for s, m in items:
        k = s % d
        out[k] = out.get(k, 0) + m
    return {s: m for s, m in out.items() if m}


def _poly_mul(a, b, d):
    zero = CycloElem.from_int(d, 0)
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_eval(num, a: CycloElem) -> CycloElem:
    acc = CycloElem.from_int(a.d, 0)
    for c in reversed(num):
        acc = acc * a + c
    return acc


def _root_value(num, d: int, s: int) -> CycloElem:
    # N(zeta^-s) = sum c_i zeta^(-s i)
    acc = CycloElem.from_int(d, 0)
    for i, c in enumerate(num):
        acc = acc + c.mul_zeta(-s * i)
    return acc


def _divide_linear(num, s: int):
    """N(a) / (1 - a zeta^s), assuming exact divisibility."""
    quo = [num[0]]
    for c in num[1:-1]:
        quo.append(c + quo[-1].mul_zeta(s))
    return quo


def _canonical(d: int, num, apow: int, den: dict[int, int]) -> CycloRatFuncA:
    num = list(num)
    while num and num[-1].is_zero():
        num.pop()
    if not num:
        return CycloRatFuncA.zero(d)
    while num[0].is_zero():
        num.pop(0)
        apow += 1
    out = {}
    for s, m in sorted(den.items()):
        while m > 0 and len(num) > 1 and _root_value(num, d, s).is_zero():
            num = _divide_linear(num, s)
            m -= 1
        if m:
            out[s] = m
    return CycloRatFuncA(d, num, apow, tuple(out.items()))


def sum_rational(terms, d: int) -> CycloRatFuncA:
    """Exact sum of CycloRatFuncA values over a common denominator."""
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        return CycloRatFuncA.zero(d)
    lcm: dict[int, int] = {}
    for t in terms:
        for s, m in t.den:
            lcm[s] = max(lcm.get(s, 0), m)
    amin = min(t.apow for t in terms)
    zero = CycloElem.from_int(d, 0)
    total: list[CycloElem] = []
    for t in terms:
        tden = dict(t.den)
        cof = _linear_product(d, [(s, m - tden.get(s, 0)) for s, m in lcm.items()])
        cof = [CycloElem._reduce(d, ip.trim(list(v))) for v in cof]
        part = [zero] * (t.apow - amin) + _poly_mul(t.num, cof, d)
        if len(total) < len(part):
            total += [zero] * (len(part) - len(total))
        for i, c in enumerate(part):
            total[i] = total[i] + c
    return _canonical(d, total, amin, lcm)


def sum_factored(d: int, items) -> CycloRatFuncA:
    """Sum of scalar * a^apow * prod (1 - a zeta^s)^m over items (scalar, apow, lin).

    The common denominator is formed once and each numerator is expanded as
    a product of linear factors in the cyclic ring before the scalar is
    applied, which keeps field multiplications to one per coefficient.
    """
    prepared = []
    for scalar, apow, lin in items:
        if scalar.is_zero():
            continue
        prepared.append((scalar, apow, _merge_mod(d, lin)))
    if not prepared:
        return CycloRatFuncA.zero(d)
    lcm: dict[int, int] = {}
    for _, _, lin in prepared:
        for s, m in lin.items():
            if m < 0:
                lcm[s] = max(lcm.get(s, 0), -m)
    amin = min(a for _, a, _ in prepared)
    zero_vec = [0] * d
    # accumulate per-term numerators in the cyclic ring, scaled into the field last
    total: list[CycloElem] = []
    zero = CycloElem.from_int(d, 0)
    for scalar, apow, lin in prepared:
        exps = dict(lcm)
        for s, m in lin.items():
            exps[s] = exps.get(s, 0) + m
        vecs = [zero_vec] * (apow - amin) + _linear_product(d, sorted(exps.items()))
        part = _poly_from_cyclic(d, vecs, scalar)
        if len(total) < len(part):
            total += [zero] * (len(part) - len(total))
        for i, c in enumerate(part):
            total[i] = total[i] + c
    return _canonical(d, total, amin, lcm)


def specialize_at_root(f, d: int):
    """BiRatFunc -> (scalar in Q(zeta_d), apow, {s mod d: m}) by sending q to zeta_d."""
    scalar = ratfunc_at_root(f.coeff, d)
    return scalar, f.apow, _merge_mod(d, f.lin)


def birat_at_root(f, d: int) -> CycloRatFuncA:
    scalar, apow, lin = specialize_at_root(f, d)
    return CycloRatFuncA.from_factors(d, scalar, apow, lin)
