"""q-Pochhammer symbols, q-binomials and the summands of the series under study."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .cyclotomic.polys import CycloProduct
from .errors import DenominatorVanishes, ValidationError
from .exactalg import BiRatFunc, LaurentPoly, RatFunc

SUBSCRIPTS = ("k", "2k")


@dataclass(frozen=True)
class PochSpec:
    """(a^a_exp q^q_shift ; q^base_exp)_K with K = k or 2k."""

    a_exp: int
    q_shift: int
    base_exp: int
    sub: str = "k"

    def __post_init__(self):
        if self.base_exp < 1:
            raise ValidationError(f"base_exp must be >= 1, got {self.base_exp}")
        if self.sub not in SUBSCRIPTS:
            raise ValidationError(f"subscript must be one of {SUBSCRIPTS}, got {self.sub!r}")
        if self.a_exp not in (-1, 0, 1):
            raise ValidationError(f"a_exp must be -1, 0 or 1, got {self.a_exp}")

    def length(self, k: int) -> int:
        return 2 * k if self.sub == "2k" else k


@dataclass(frozen=True)
class ProductFactor:
    """Infinite product (a^a_exp q^q_shift ; q^base_exp)_infinity."""

    a_exp: int
    q_shift: int
    base_exp: int

    def __post_init__(self):
        if self.base_exp < 1:
            raise ValidationError(f"base_exp must be >= 1, got {self.base_exp}")


@dataclass(frozen=True)
class SummandSpec:
    """[m k + r] q^(alpha k^2 + beta k) prod(numerator) / prod(denominator)."""

    numerator: tuple[PochSpec, ...]
    denominator: tuple[PochSpec, ...]
    bracket: tuple[int, int] = (8, 1)
    qpower: tuple[int, int] = (2, 0)

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        if not self.denominator:
            raise ValidationError("summand needs at least one denominator Pochhammer symbol")

    def uses_a(self) -> bool:
        return any(p.a_exp for p in self.numerator + self.denominator)


# Summand of the parametric identity and its a = 1 specialization built on its own.
Q4T_SPEC = SummandSpec(
    numerator=(PochSpec(1, 1, 2, "k"), PochSpec(-1, 1, 2, "k"), PochSpec(0, 1, 2, "2k")),
    denominator=(PochSpec(0, 2, 2, "2k"), PochSpec(1, 6, 6, "k"), PochSpec(-1, 6, 6, "k")),
)
Q4_SPEC = SummandSpec(
    numerator=(PochSpec(0, 1, 2, "k"), PochSpec(0, 1, 2, "k"), PochSpec(0, 1, 2, "2k")),
    denominator=(PochSpec(0, 2, 2, "2k"), PochSpec(0, 6, 6, "k"), PochSpec(0, 6, 6, "k")),
)
Q4T_RHS = (
    (ProductFactor(0, 5, 6), ProductFactor(0, 7, 6), ProductFactor(1, 3, 6), ProductFactor(-1, 3, 6)),
    (ProductFactor(0, 2, 6), ProductFactor(0, 4, 6), ProductFactor(1, 6, 6), ProductFactor(-1, 6, 6)),
)
Q4_RHS = (
    (ProductFactor(0, 3, 2), ProductFactor(0, 3, 6)),
    (ProductFactor(0, 2, 2), ProductFactor(0, 6, 6)),
)


def q_pochhammer(spec: PochSpec, k: int) -> BiRatFunc:
    """prod_{j < K} (1 - a^a_exp q^(q_shift + j base_exp)); a polynomial."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = spec.length(k)
    if spec.a_exp == 0:
        acc = CycloProduct(1)
        for j in range(n):
            acc = acc * CycloProduct.one_minus_q_power(spec.q_shift + j * spec.base_exp)
        return BiRatFunc(acc.to_ratfunc())
    acc = BiRatFunc(1)
    for j in range(n):
        acc = acc * BiRatFunc.binomial(spec.a_exp, spec.q_shift + j * spec.base_exp)
    return acc


def q_poch_product(spec: PochSpec, k: int) -> CycloProduct:
    if spec.a_exp:
        raise ValueError("a-dependent symbol has no pure-q product form")
    acc = CycloProduct(1)
    for j in range(spec.length(k)):
        acc = acc * CycloProduct.one_minus_q_power(spec.q_shift + j * spec.base_exp)
    return acc


def qq_pochhammer(n: int) -> LaurentPoly:
    """(q;q)_n expanded."""
    acc = LaurentPoly.constant(1)
    for j in range(1, n + 1):
        acc = acc * (1 - LaurentPoly.monomial(j))
    return acc


def q_binomial(n: int, m: int) -> LaurentPoly:
    """Gaussian binomial (q;q)_n / ((q;q)_m (q;q)_(n-m)); zero outside 0 <= m <= n."""
    if n < 0 or m < 0 or m > n:
        return LaurentPoly()
    return qq_pochhammer(n).exact_div(qq_pochhammer(m) * qq_pochhammer(n - m))


def q_bracket(n: int) -> CycloProduct:
    """[n] = (1 - q^n)/(1 - q) for any integer n."""
    return CycloProduct.one_minus_q_power(n) / CycloProduct.one_minus_q_power(1)


def term_c(spec: SummandSpec, k: int) -> BiRatFunc:
    """k-th summand with the pure-q part in lowest terms."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    m, r = spec.bracket
    alpha, beta = spec.qpower
    pure = q_bracket(m * k + r) * CycloProduct(1, alpha * k * k + beta * k)
    rest = BiRatFunc(1)
    for p in spec.numerator:
        if p.a_exp == 0:
            pure = pure * q_poch_product(p, k)
        else:
            rest = rest * q_pochhammer(p, k)
    for p in spec.denominator:
        if p.a_exp == 0:
            f = q_poch_product(p, k)
            if f.is_zero():
                raise DenominatorVanishes(f"denominator symbol {p} vanishes at k={k}")
            pure = pure / f
        else:
            rest = rest / q_pochhammer(p, k)
    return BiRatFunc(pure.to_ratfunc()) * rest


def term_ratio(spec: SummandSpec, k: int) -> BiRatFunc:
    """term(k+1)/term(k) assembled factor by factor from x = q^k.

    Each Pochhammer contributes 1 - a^e q^s x^b (two such factors for a 2k
    subscript), the bracket [m k + m + r]/[m k + r] and the quadratic power
    q^(alpha (2k+1) + beta); so the ratio is a rational function of q^k and a.
    """
    m, r = spec.bracket
    alpha, beta = spec.qpower
    ratio = BiRatFunc((q_bracket(m * k + m + r) / q_bracket(m * k + r)).to_ratfunc())
    ratio = ratio * BiRatFunc(RatFunc.coerce(LaurentPoly.monomial(alpha * (2 * k + 1) + beta)))

    def step(p: PochSpec):
        b = p.base_exp
        if p.sub == "k":
            idx = [k]
        else:
            idx = [2 * k, 2 * k + 1]
        out = BiRatFunc(1)
        for j in idx:
            out = out * BiRatFunc.binomial(p.a_exp, p.q_shift + j * b)
        return out

    for p in spec.numerator:
        ratio = ratio * step(p)
    for p in spec.denominator:
        ratio = ratio / step(p)
    return ratio


# -- classical side -------------------------------------------------------
def rising(x: Fraction, k: int) -> Fraction:
    """Pochhammer symbol (x)_k = x (x+1) ... (x+k-1)."""
    v = Fraction(1)
    for j in range(k):
        v *= x + j
    return v


def classical_term(k: int) -> Fraction:
    """binom(4k,2k) binom(2k,k)^2 (8k+1) / (2^(8k) 3^(2k)), integer arithmetic throughout."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Fraction(comb(4 * k, 2 * k) * comb(2 * k, k) ** 2 * (8 * k + 1), 2 ** (8 * k) * 9 ** k)


def classical_term_pochhammer(k: int) -> Fraction:
    """(1/4)_k (1/2)_k (3/4)_k (8k+1) / (k!^3 9^k)."""
    num = rising(Fraction(1, 4), k) * rising(Fraction(1, 2), k) * rising(Fraction(3, 4), k)
    return num * (8 * k + 1) / (factorial(k) ** 3 * 9 ** k)
