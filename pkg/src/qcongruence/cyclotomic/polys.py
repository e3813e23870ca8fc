"""Cyclotomic polynomials, q-integers, and products of cyclotomic powers.

Every q-Pochhammer factor 1 - q^j is -Phi_1 * ... (a product of cyclotomic
polynomials), so the pure-q parts of the summands handled here live in the
multiplicative group generated by q and the Phi_d.  ``CycloProduct`` keeps
them factored, which makes cancellation and reduction at roots of unity
exact bookkeeping on exponents instead of polynomial gcds.
"""

from __future__ import annotations

import logging
import os
import threading
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from ..exactalg import _intpoly as ip
from ..exactalg.laurent import LaurentPoly
from ..numtheory import divisors, euler_phi, factorize

log = logging.getLogger(__name__)

CACHE_ENV = "QCONGRUENCE_CACHE_DIR"
CACHE_FILE = "cyclotomic.txt"

_lock = threading.Lock()
_phi: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def _compute(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    den = ip.product([list(cyclotomic_coeffs(d)) for d in divisors(n) if d < n])
    quo = ip.exact_div(num, den)
    if quo is None:  # pragma: no cover - would mean the divisor recursion is broken
        raise ArithmeticError(f"q^{n} - 1 not divisible by proper cyclotomic factors")
    return tuple(quo)


def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first (memoized)."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    c = _phi.get(n)
    if c is not None:
        return c
    c = _compute(n)
    with _lock:
        # first writer wins; later computations are identical anyway
        return _phi.setdefault(n, c)


def cyclotomic(n: int) -> LaurentPoly:
    """Phi_n(q) as an integer-coefficient polynomial."""
    return LaurentPoly.from_ints(cyclotomic_coeffs(n))


def q_integer(n: int) -> LaurentPoly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 1:
        raise ValueError("q-integer needs n >= 1")
    return LaurentPoly.from_ints([1] * n)


# -- on-disk cache --------------------------------------------------------
def default_cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def load_cache(directory: Path) -> int:
    """Load revalidated records from ``directory``; returns how many were accepted."""
    path = Path(directory) / CACHE_FILE
    if not path.exists():
        return 0
    accepted = 0
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            fields = [int(x) for x in line.split()]
        except ValueError:
            log.warning("%s:%d: malformed cache record skipped", path, lineno)
            continue
        n, coeffs = fields[0], tuple(fields[1:])
        if n < 1 or len(coeffs) - 1 != euler_phi(n) or coeffs[-1] != 1:
            log.warning("%s:%d: record for n=%d fails degree check, ignored", path, lineno, n)
            continue
        with _lock:
            _phi.setdefault(n, coeffs)
        accepted += 1
    return accepted


def save_cache(directory: Path) -> Path:
    """Write every memoized Phi_n; atomic replace so concurrent writers never tear."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / CACHE_FILE
    with _lock:
        items = sorted(_phi.items())
    tmp = path.with_suffix(f".{os.getpid()}.{threading.get_ident()}.tmp")
    tmp.write_text("".join(f"{n} {' '.join(map(str, c))}\n" for n, c in items))
    os.replace(tmp, path)
    return path


# -- factored products ----------------------------------------------------
@lru_cache(maxsize=1024)
def _phi_of_power(d: int, m: int) -> tuple[Fraction, int, tuple[tuple[int, int], ...]]:
    """Phi_d(q^m) as (unit, q-shift, cyclotomic exponents)."""
    if m < 0:
        k = -m
        unit, shift, exps = _phi_of_power(d, k)
        # Phi_d(1/y) = y^(-phi(d)) Phi_d(y) for d >= 2;  Phi_1(1/y) = -y^(-1) Phi_1(y)
        if d == 1:
            return -unit, shift - k, exps
        return unit, shift - k * euler_phi(d), exps
    if m == 1:
        return Fraction(1), 0, ((d, 1),)
    p = factorize(m)[0][0]
    rest = m // p
    # Phi_d(y^p) = Phi_dp(y) when p | d, else Phi_dp(y) Phi_d(y); then y = q^rest
    parts = [d * p] if d % p == 0 else [d * p, d]
    unit, shift, acc = Fraction(1), 0, {}
    for e in parts:
        u, s, ex = _phi_of_power(e, rest)
        unit *= u
        shift += s
        for f, k in ex:
            acc[f] = acc.get(f, 0) + k
    return unit, shift, tuple(sorted(acc.items()))


@lru_cache(maxsize=256)
def _phi_power_ints(d: int, e: int) -> tuple[int, ...]:
    base = list(cyclotomic_coeffs(d))
    result = [1]
    while e:
        if e & 1:
            result = ip.mul(result, base)
        e >>= 1
        if e:
            base = ip.mul(base, base)
    return tuple(result)


def expand_exponents(exps) -> list[int]:
    """Integer coefficients of prod Phi_d^e over (d, e) pairs with e > 0."""
    return ip.product([list(_phi_power_ints(d, e)) for d, e in exps])


class CycloProduct:
    """unit * q^shift * prod_d Phi_d(q)^e_d with integer exponents.

    The representation is unique (the Phi_d are distinct monic irreducibles),
    so equality is structural.  The zero element has unit 0 and nothing else.
    """

    __slots__ = ("unit", "shift", "exps", "_hash")

    def __init__(self, unit=1, shift: int = 0, exps=None):
        unit = Fraction(unit)
        if unit == 0:
            shift, exps = 0, ()
        else:
            items = exps.items() if isinstance(exps, dict) else (exps or ())
            exps = tuple(sorted((int(d), int(e)) for d, e in items if e))
        self.unit = unit
        self.shift = int(shift)
        self.exps = exps
        self._hash = None

    @classmethod
    def one_minus_q_power(cls, j: int) -> "CycloProduct":
        """1 - q^j."""
        if j == 0:
            return cls(0)
        if j > 0:
            return cls(-1, 0, {d: 1 for d in divisors(j)})
        k = -j
        # 1 - q^-k = q^-k (q^k - 1)
        return cls(1, -k, {d: 1 for d in divisors(k)})

    @classmethod
    def q_integer(cls, n: int) -> "CycloProduct":
        return cls(1, 0, {d: 1 for d in divisors(n) if d > 1})

    @classmethod
    def monomial(cls, shift: int, unit=1) -> "CycloProduct":
        return cls(unit, shift)

    def is_zero(self) -> bool:
        return self.unit == 0

    def exponent(self, d: int) -> int:
        for f, e in self.exps:
            if f == d:
                return e
        return 0

    @property
    def exp_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def __mul__(self, other):
        if not isinstance(other, CycloProduct):
            try:
                c = Fraction(other)
            except TypeError:
                return NotImplemented
            return CycloProduct(self.unit * c, self.shift, self.exps)
        if self.is_zero() or other.is_zero():
            return CycloProduct(0)
        acc = dict(self.exps)
        for d, e in other.exps:
            acc[d] = acc.get(d, 0) + e
        return CycloProduct(self.unit * other.unit, self.shift + other.shift, acc)

    __rmul__ = __mul__

    def inverse(self) -> "CycloProduct":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero product")
        return CycloProduct(1 / self.unit, -self.shift, {d: -e for d, e in self.exps})

    def __truediv__(self, other):
        if not isinstance(other, CycloProduct):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero():
            return CycloProduct(0) if n else CycloProduct(1)
        return CycloProduct(self.unit ** n, self.shift * n, {d: e * n for d, e in self.exps})

    def __neg__(self):
        return CycloProduct(-self.unit, self.shift, self.exps)

    def __eq__(self, other):
        if not isinstance(other, CycloProduct):
            return NotImplemented
        return (self.unit, self.shift, self.exps) == (other.unit, other.shift, other.exps)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.unit, self.shift, self.exps))
        return self._hash

    def __repr__(self):
        if self.is_zero():
            return "CycloProduct(0)"
        fs = " * ".join(f"Phi{d}^{e}" if e != 1 else f"Phi{d}" for d, e in self.exps)
        return f"CycloProduct({self.unit} * q^{self.shift}{' * ' + fs if fs else ''})"

    def substitute_power(self, m: int) -> "CycloProduct":
        """Replace q by q^m (m nonzero)."""
        if m == 0:
            raise ValueError("substitution q -> q^0 is not invertible")
        if self.is_zero():
            return self
        unit, shift, acc = self.unit, self.shift * m, {}
        for d, e in self.exps:
            u, s, ex = _phi_of_power(d, m)
            unit *= u ** e
            shift += s * e
            for f, k in ex:
                acc[f] = acc.get(f, 0) + k * e
        return CycloProduct(unit, shift, acc)

    def numerator(self) -> LaurentPoly:
        """unit * q^shift * prod over positive exponents."""
        if self.is_zero():
            return LaurentPoly()
        ints = expand_exponents([(d, e) for d, e in self.exps if e > 0])
        return LaurentPoly.from_ints(ints, self.shift) * self.unit

    def denominator(self) -> LaurentPoly:
        """prod over negative exponents (monic, nonzero constant term)."""
        return LaurentPoly.from_ints(expand_exponents([(d, -e) for d, e in self.exps if e < 0]))

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        if self.is_zero():
            return Fraction(0)
        v = self.unit * x ** self.shift
        for d, e in self.exps:
            phi = cyclotomic(d).evaluate(x)
            if phi == 0 and e < 0:
                raise ZeroDivisionError(f"Phi_{d} vanishes at {x}")
            v *= phi ** e
        return v

    def to_ratfunc(self):
        from ..exactalg.ratfunc import RatFunc
        return RatFunc.from_product(self)
