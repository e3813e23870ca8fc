"""Arbitrary-precision evaluation of the nonterminating series and products.

Each call builds its own mpmath context at target_digits + 15 digits, so
precision is never ambient state. Series tails are certified by a monotone
ratio bound: for real-valued data every factor of |t_{k+1}/t_k| is bounded
by a quantity non-increasing in k, so U(K) >= |t_{k+1}/t_k| for all k >= K
and, once U(K) < 1, the remainder after t_K is at most |t_K| U/(1 - U).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DenominatorVanishes, NoConvergence
from .qseries import ProductFactor, SummandSpec

GUARD = 15
TERM_CAP = 20000
PRODUCT_CAP = 2_000_000


@dataclass
class SeriesResult:
    value: object          # mpmath mpf at working precision
    terms_used: int
    tail_bound: object
    digits: int

    def __float__(self):
        return float(self.value)


def _ctx(digits: int):
    if digits < 1:
        raise ValueError("target_digits must be >= 1")
    ctx = mpmath.MPContext()
    ctx.dps = digits + GUARD
    return ctx


def _mpq(ctx, x):
    x = Fraction(x)
    return ctx.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class _Lin:
    """(1 - x q^(s + b j)) for j in a range growing by `per` indices per step of k."""

    x: object
    s: int
    b: int
    per: int


class _NumericSummand:
    """t_k = C * prod over num/den of Pochhammer blocks * (1 - y q^(m k + r)) * q^(al k^2 + be k).

    Only ratios are used: t_0 = 1 by construction of each caller.
    """

    def __init__(self, ctx, q, num, den, lin_y, lin_m, lin_r, alpha, beta):
        self.ctx, self.q = ctx, q
        self.num, self.den = num, den
        self.y, self.m, self.r = lin_y, lin_m, lin_r
        self.alpha, self.beta = alpha, beta

    def ratio(self, k):
        ctx, q = self.ctx, self.q
        v = ctx.mpf(1)
        for f in self.num:
            for j in range(f.per * k, f.per * (k + 1)):
                v *= 1 - f.x * q ** (f.s + f.b * j)
        for f in self.den:
            for j in range(f.per * k, f.per * (k + 1)):
                w = 1 - f.x * q ** (f.s + f.b * j)
                if w == 0:
                    raise DenominatorVanishes(f"denominator factor vanishes at k={k}")
                v /= w
        if self.m:
            top = 1 - self.y * q ** (self.m * (k + 1) + self.r)
            bot = 1 - self.y * q ** (self.m * k + self.r)
            if bot == 0:
                raise DenominatorVanishes("linear factor vanishes")
            v *= top / bot
        return v * q ** (self.alpha * (2 * k + 1) + self.beta)

    def ratio_bound(self, K):
        """U(K) with |t_{k+1}/t_k| <= U(K) for all k >= K; inf if no bound yet."""
        ctx = self.ctx
        aq = abs(self.q)
        u = ctx.mpf(1)
        for f in self.num:
            u *= (1 + abs(f.x) * aq ** (f.s + f.b * f.per * K)) ** f.per
        for f in self.den:
            low = 1 - abs(f.x) * aq ** (f.s + f.b * f.per * K)
            if low <= 0:
                return ctx.inf
            u /= low ** f.per
        if self.m:
            low = 1 - abs(self.y) * aq ** (self.m * K + self.r)
            if low <= 0:
                return ctx.inf
            u *= (1 + abs(self.y) * aq ** (self.m * (K + 1) + self.r)) / low
        if self.alpha < 0:
            return ctx.inf
        # q^(alpha (2k+1) + beta) is non-increasing in k for alpha >= 0
        return u * aq ** (self.alpha * (2 * K + 1) + self.beta)

    def sum(self, digits, t0=1):
        ctx = self.ctx
        tol = ctx.mpf(10) ** (-digits)
        t = ctx.mpf(t0)
        total = t
        for k in range(TERM_CAP):
            if abs(t) < tol / 10:
                rho = self.ratio_bound(k)
                if rho < 1:
                    tail = abs(t) * rho / (1 - rho)
                    if tail < tol:
                        return SeriesResult(total, k + 1, tail, digits)
            t = t * self.ratio(k)
            total += t
        raise NoConvergence(f"tail not certified within {TERM_CAP} terms")


def _summand_numeric(ctx, spec: SummandSpec, q, a) -> _NumericSummand:
    def lin(p):
        x = a ** p.a_exp if p.a_exp else ctx.mpf(1)
        return _Lin(x, p.q_shift, p.base_exp, 2 if p.sub == "2k" else 1)

    m, r = spec.bracket
    return _NumericSummand(ctx, q, [lin(p) for p in spec.numerator],
                           [lin(p) for p in spec.denominator], ctx.mpf(1), m, r,
                           spec.qpower[0], spec.qpower[1])


def _check_q(q):
    if not 0 < abs(Fraction(q)) < 1:
        raise ValueError("need 0 < |q| < 1")


def eval_classical_series(target_digits: int) -> SeriesResult:
    """sum_k binom(4k,2k) binom(2k,k)^2 (8k+1) / (2^(8k) 3^(2k))."""
    ctx = _ctx(target_digits)
    tol = ctx.mpf(10) ** (-target_digits)
    t = ctx.mpf(1)
    total = t
    for k in range(TERM_CAP):
        if k >= 8 and abs(t) < tol / 10 ** 5:
            # for k >= 8 the ratio is at most (1/9)(1 + 8/(8k+1)) <= 1/8
            rho = ctx.mpf(1) / 8
            tail = abs(t) * rho / (1 - rho)
            return SeriesResult(total, k + 1, tail, target_digits)
        # (k+1/4)(k+1/2)(k+3/4) / (9 (k+1)^3) * (8k+9)/(8k+1), exact before rounding
        t = t * _mpq(ctx, Fraction((4 * k + 1) * (2 * k + 1) * (4 * k + 3) * (8 * k + 9),
                                   288 * (k + 1) ** 3 * (8 * k + 1)))
        total += t
    raise NoConvergence("classical series did not converge")


def eval_q_lhs(spec: SummandSpec, q, a=1, target_digits: int = 30) -> SeriesResult:
    """Sum of the summand at rational (q, a)."""
    _check_q(q)
    if Fraction(a) == 0:
        raise ValueError("a must be nonzero")
    ctx = _ctx(target_digits)
    qq, aa = _mpq(ctx, q), _mpq(ctx, a)
    r = spec.bracket[1]
    t0 = (1 - qq ** r) / (1 - qq)
    return _summand_numeric(ctx, spec, qq, aa).sum(target_digits, t0)


def _product(ctx, x, s, b, q, tol):
    """(x q^s; q^b)_inf with the truncation's relative error bound."""
    aq = abs(q)
    bx = abs(x)
    v = ctx.mpf(1)
    j = 0
    while True:
        z = bx * aq ** (s + b * j)
        if z <= ctx.mpf(1) / 2:
            rest = 2 * z / (1 - aq ** b)
            if rest < tol:
                return v, ctx.expm1(rest)
        if j > PRODUCT_CAP:
            raise NoConvergence("infinite product did not converge")
        v *= 1 - x * q ** (s + b * j)
        j += 1


def eval_products(ctx, num, den, q, tol):
    """prod num / prod den, each given as (x, s, b); returns (value, bound)."""
    val = ctx.mpf(1)
    rel = ctx.mpf(0)
    for x, s, b in num:
        v, e = _product(ctx, x, s, b, q, tol)
        val *= v
        rel = (1 + rel) * (1 + e) - 1
    for x, s, b in den:
        v, e = _product(ctx, x, s, b, q, tol)
        if v == 0:
            raise DenominatorVanishes(f"denominator product ({x} q^{s}; q^{b}) vanishes")
        val /= v
        # 1/(1 - e) - 1 bounds the relative error of a reciprocal
        rel = (1 + rel) / (1 - e) - 1
    return val, abs(val) * rel


def eval_q_rhs(factors, q, a=1, target_digits: int = 30) -> SeriesResult:
    """Quotient of infinite products; factors = (numerator, denominator) of ProductFactor."""
    _check_q(q)
    ctx = _ctx(target_digits)
    qq, aa = _mpq(ctx, q), _mpq(ctx, a)
    tol = ctx.mpf(10) ** (-(target_digits + 5))
    num, den = factors

    def triple(f: ProductFactor):
        x = aa ** f.a_exp if f.a_exp else ctx.mpf(1)
        return x, f.q_shift, f.base_exp

    n = len(num) + len(den)
    val, bound = eval_products(ctx, [triple(f) for f in num], [triple(f) for f in den], qq, tol / n)
    return SeriesResult(val, 0, bound, target_digits)


def agree(x: SeriesResult, y: SeriesResult, tol) -> tuple[bool, object]:
    diff = abs(x.value - y.value)
    return diff < tol, diff


# -- the limiting cubic summation -------------------------------------------
def rahman_lhs(a, c, q, target_digits: int = 30) -> SeriesResult:
    """sum (1 - a c q^(4k)) (a;q)_k (q/a;q)_k (ac;q)_2k q^(k^2) / ((1-ac)(cq^3;q^3)_k (a^2 c q^2;q^3)_k (q;q)_2k)."""
    _check_q(q)
    ctx = _ctx(target_digits)
    qq, aa, cc = _mpq(ctx, q), _mpq(ctx, a), _mpq(ctx, c)
    if aa == 0 or aa * cc == 1:
        raise DenominatorVanishes("need a != 0 and ac != 1")
    num = [_Lin(aa, 0, 1, 1), _Lin(1 / aa, 1, 1, 1), _Lin(aa * cc, 0, 1, 2)]
    den = [_Lin(cc, 3, 3, 1), _Lin(aa * aa * cc, 2, 3, 1), _Lin(ctx.mpf(1), 1, 1, 2)]
    s = _NumericSummand(ctx, qq, num, den, aa * cc, 4, 0, 1, 0)
    return s.sum(target_digits)


def rahman_rhs(a, c, q, target_digits: int = 30) -> SeriesResult:
    _check_q(q)
    ctx = _ctx(target_digits)
    qq, aa, cc = _mpq(ctx, q), _mpq(ctx, a), _mpq(ctx, c)
    one = ctx.mpf(1)
    num = [(aa * cc, 2, 3), (aa * cc, 3, 3), (aa, 1, 3), (1 / aa, 2, 3)]
    den = [(one, 1, 3), (one, 2, 3), (aa * aa * cc, 2, 3), (cc, 3, 3)]
    tol = ctx.mpf(10) ** (-(target_digits + 5)) / 8
    val, bound = eval_products(ctx, num, den, qq, tol)
    return SeriesResult(val, 0, bound, target_digits)


@dataclass
class RahmanReport:
    holds: bool
    lhs: object
    rhs: object
    diff: object
    chain_diff: object
    detail: str


def eval_rahman(a, c, q, target_digits: int = 25, spec: SummandSpec | None = None,
                rhs=None) -> RahmanReport:
    """Both sides of the limiting summation, plus the chain q -> q^2, c = q/a, a -> a q.

    The chain specializes the summation at (q^2, a q, 1/a), which must match
    the parametric series at (q, a) and its product form.
    """
    from .qseries import Q4T_RHS, Q4T_SPEC
    spec = spec or Q4T_SPEC
    rhs = rhs or Q4T_RHS
    tol = mpmath.mpf(10) ** (-target_digits)
    L = rahman_lhs(a, c, q, target_digits)
    R = rahman_rhs(a, c, q, target_digits)
    ok1, d1 = agree(L, R, tol)
    q, a = Fraction(q), Fraction(a)
    chained = rahman_lhs(a * q, 1 / a, q * q, target_digits)
    chained_r = rahman_rhs(a * q, 1 / a, q * q, target_digits)
    direct = eval_q_lhs(spec, q, a, target_digits)
    direct_r = eval_q_rhs(rhs, q, a, target_digits)
    d2 = max(abs(chained.value - direct.value), abs(chained_r.value - direct_r.value))
    ok2 = d2 < tol
    detail = (f"|LHS - RHS| = {mpmath.nstr(d1, 3)}; chain vs parametric series "
              f"{mpmath.nstr(d2, 3)}")
    return RahmanReport(ok1 and ok2, L.value, R.value, d1, d2, detail)


# -- q -> 1 --------------------------------------------------------------
def limit_constant(digits: int):
    """2 sqrt(3) / pi."""
    ctx = _ctx(digits)
    return 2 * ctx.sqrt(3) / ctx.pi


@dataclass
class ProbeRow:
    j: int
    value: object
    error: object
    terms: int


def limit_probe_q_to_1(j_values, spec: SummandSpec | None = None, digits: int = 20):
    """Series at q = 1 - 10^-j (a = 1) against 2 sqrt(3)/pi; rows and whether errors shrink.

    The decrease criterion asks each consecutive error ratio to lie in [3, 30].
    """
    from .qseries import Q4_SPEC
    spec = spec or Q4_SPEC
    rows = []
    for j in j_values:
        if j < 2:
            raise ValueError("j must be >= 2")
        digs = digits + j
        res = eval_q_lhs(spec, 1 - Fraction(1, 10 ** j), 1, digs)
        err = abs(res.value - limit_constant(digs))
        rows.append(ProbeRow(j, res.value, err, res.terms_used))
    ratios = [rows[i].error / rows[i + 1].error for i in range(len(rows) - 1)]
    ok = all(3 <= r <= 30 for r in ratios)
    return rows, ratios, ok


def gamma_limit_probe(k: int, j: int = 6, digits: int = 30):
    """Errors of the two q -> 1 Pochhammer limits at q = 1 - 10^-j.

    (q;q^2)_2k/(q^2;q^2)_2k -> (1/4)_k (3/4)_k / ((1/2)_k k!) and
    (q;q^2)_k/(q^6;q^6)_k -> (1/2)_k / (k! 3^k).
    """
    from .qseries import rising
    from math import factorial
    ctx = _ctx(digits)
    q = 1 - ctx.mpf(10) ** (-j)

    def poch(x, b, n):
        v = ctx.mpf(1)
        for i in range(n):
            v *= 1 - x * q ** (b * i)
        return v

    lhs1 = poch(q, 2, 2 * k) / poch(q ** 2, 2, 2 * k)
    want1 = rising(Fraction(1, 4), k) * rising(Fraction(3, 4), k) / \
        (rising(Fraction(1, 2), k) * factorial(k))
    lhs2 = poch(q, 2, k) / poch(q ** 6, 6, k)
    want2 = rising(Fraction(1, 2), k) / (factorial(k) * 3 ** k)
    return abs(lhs1 - _mpq(ctx, want1)), abs(lhs2 - _mpq(ctx, want2))
