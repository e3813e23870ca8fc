from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from qcongruence import numerics as nm
from qcongruence.errors import DenominatorVanishes, NoConvergence
from qcongruence.qseries import Q4_RHS, Q4_SPEC, Q4T_RHS, Q4T_SPEC, classical_term


def reference_constant(dps=50):
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx.mpf(2) * ctx.sqrt(3) / ctx.pi


def test_classical_partial_sums():
    assert sum(classical_term(k) for k in range(1)) == 1
    assert sum(classical_term(k) for k in range(2)) == Fraction(35, 32)


def test_classical_series_value():
    r = nm.eval_classical_series(30)
    assert abs(r.value - reference_constant()) < mpmath.mpf(10) ** -30
    assert r.tail_bound < mpmath.mpf(10) ** -30
    assert r.terms_used <= 40
    assert mpmath.nstr(reference_constant(), 20).startswith("1.102657790")


def test_classical_ratio_tends_to_one_ninth():
    r = classical_term(400) / classical_term(399)
    assert abs(r - Fraction(1, 9)) < Fraction(1, 1000)


@pytest.mark.parametrize("qv,av", [("1/2", "1"), ("1/3", "5/4"), ("3/5", "2/3")])
def test_parametric_identity(qv, av):
    L = nm.eval_q_lhs(Q4T_SPEC, Fraction(qv), Fraction(av), 30)
    R = nm.eval_q_rhs(Q4T_RHS, Fraction(qv), Fraction(av), 30)
    assert abs(L.value - R.value) < mpmath.mpf(10) ** -30


def test_identity_near_one():
    L = nm.eval_q_lhs(Q4T_SPEC, Fraction(9, 10), 1, 25)
    R = nm.eval_q_rhs(Q4T_RHS, Fraction(9, 10), 1, 25)
    assert abs(L.value - R.value) < mpmath.mpf(10) ** -25


def test_first_term_is_one():
    r = nm.eval_q_lhs(Q4T_SPEC, Fraction(1, 10 ** 12), 1, 5)
    assert abs(r.value - 1) < mpmath.mpf(10) ** -10


def test_two_product_forms_agree():
    for qv in (Fraction(1, 2), Fraction(1, 3), Fraction(3, 5)):
        a = nm.eval_q_rhs(Q4_RHS, qv, 1, 30)
        b = nm.eval_q_rhs(Q4T_RHS, qv, 1, 30)
        assert abs(a.value - b.value) < mpmath.mpf(10) ** -30
        c = nm.eval_q_lhs(Q4_SPEC, qv, 1, 30)
        assert abs(a.value - c.value) < mpmath.mpf(10) ** -30


def test_zero_argument_product_is_one():
    ctx = mpmath.MPContext()
    ctx.dps = 30
    v, bound = nm.eval_products(ctx, [(ctx.mpf(0), 0, 1)], [], ctx.mpf(1) / 2, ctx.mpf(10) ** -30)
    assert v == 1 and bound == 0


@pytest.mark.parametrize("digits", [10, 20])
def test_precision_monotonicity(digits):
    a = nm.eval_q_lhs(Q4T_SPEC, Fraction(3, 5), Fraction(2, 3), digits)
    b = nm.eval_q_lhs(Q4T_SPEC, Fraction(3, 5), Fraction(2, 3), digits + 10)
    assert abs(a.value - b.value) < a.tail_bound + mpmath.mpf(10) ** -(digits + 10)
    c = nm.eval_classical_series(digits)
    d = nm.eval_classical_series(digits + 10)
    assert abs(c.value - d.value) < c.tail_bound + mpmath.mpf(10) ** -(digits + 10)


def test_tail_bound_is_honest():
    # compare truncated value with a far more precise one
    a = nm.eval_q_lhs(Q4T_SPEC, Fraction(1, 2), Fraction(5, 4), 8)
    b = nm.eval_q_lhs(Q4T_SPEC, Fraction(1, 2), Fraction(5, 4), 40)
    assert abs(a.value - b.value) <= a.tail_bound + mpmath.mpf(10) ** -20


def test_denominator_vanishes():
    # a = q^-6 kills (a q^6; q^6)_1 in the denominator
    with pytest.raises(DenominatorVanishes):
        nm.eval_q_lhs(Q4T_SPEC, Fraction(1, 2), Fraction(64), 10)
    with pytest.raises(DenominatorVanishes):
        nm.eval_q_rhs(Q4T_RHS, Fraction(1, 2), Fraction(64), 10)


def test_no_convergence(monkeypatch):
    monkeypatch.setattr(nm, "TERM_CAP", 3)
    with pytest.raises(NoConvergence):
        nm.eval_q_lhs(Q4T_SPEC, Fraction(9, 10), 1, 30)


def test_bad_q():
    with pytest.raises(ValueError):
        nm.eval_q_lhs(Q4T_SPEC, Fraction(1), 1, 10)


@pytest.mark.parametrize("a,c,q", [(1, Fraction(1, 2), Fraction(1, 2)),
                                   (Fraction(3, 7), Fraction(2, 5), Fraction(1, 2))])
def test_limiting_summation(a, c, q):
    rep = nm.eval_rahman(a, c, q, 25)
    assert rep.holds, rep.detail


def test_limiting_summation_chain_point():
    # q -> q^2, a -> a q, c -> 1/a reproduces the parametric series
    q, a = Fraction(1, 2), Fraction(3, 7)
    chained = nm.rahman_lhs(a * q, 1 / a, q * q, 25)
    direct = nm.eval_q_lhs(Q4T_SPEC, q, a, 25)
    assert abs(chained.value - direct.value) < mpmath.mpf(10) ** -25


def test_limiting_summation_k0_term():
    r = nm.rahman_lhs(Fraction(1, 2), Fraction(1, 3), Fraction(1, 10 ** 12), 5)
    assert abs(r.value - 1) < mpmath.mpf(10) ** -9


def test_limit_probe_errors_shrink():
    rows, ratios, _ = nm.limit_probe_q_to_1([2, 3])
    assert rows[0].error > rows[1].error > 0
    assert mpmath.isfinite(rows[0].value)


@pytest.mark.parametrize("k", range(0, 6))
def test_gamma_limits(k):
    e1, e2 = nm.gamma_limit_probe(k)
    assert e1 < 1e-4 and e2 < 1e-4
