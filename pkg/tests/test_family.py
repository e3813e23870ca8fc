from __future__ import annotations

from fractions import Fraction

import pytest

from qcongruence.errors import ParseError, ValidationError
from qcongruence.family import (BUNDLED, bundled_path, load_family, parse_family,
                                serialize_family)
from qcongruence.qseries import Q4_RHS, Q4_SPEC, Q4T_RHS, Q4T_SPEC

GOOD = bundled_path("rahman-8k1").read_text()


def test_bundled_parametric_family():
    f = load_family("rahman-8k1")
    assert f.summand == Q4T_SPEC
    assert (f.rhs_num, f.rhs_den) == Q4T_RHS
    assert f.coprime_to == 6 and f.modulus_kind == "full"
    assert f.congruence_rhs.exponent(5) == -2
    assert f.congruence_rhs.value(1) == 1


def test_bundled_a_free_family():
    f = load_family("ramanujan-q4")
    assert f.summand == Q4_SPEC
    assert (f.rhs_num, f.rhs_den) == Q4_RHS


@pytest.mark.parametrize("name", BUNDLED)
def test_roundtrip(name):
    f = load_family(name)
    assert parse_family(serialize_family(f)) == f
    assert parse_family(serialize_family(f).encode()) == f


def test_load_by_path(tmp_path):
    p = tmp_path / "fam.yaml"
    p.write_text(GOOD)
    assert load_family(p) == load_family("rahman-8k1")
    with pytest.raises(ParseError):
        load_family(tmp_path / "missing.yaml")


def test_base_zero_rejected():
    bad = GOOD.replace("{a_exp: 0, q_shift: 2, base: 2, sub: \"2k\"}",
                       "{a_exp: 0, q_shift: 2, base: 0, sub: \"2k\"}")
    assert bad != GOOD
    with pytest.raises(ValidationError, match="base"):
        parse_family(bad)


def test_duplicate_key_rejected():
    with pytest.raises(ParseError) as info:
        parse_family(GOOD + "coprime_to: 6\n")
    assert info.value.line is not None


def test_unknown_key_rejected():
    with pytest.raises(ParseError, match="unknown key"):
        parse_family(GOOD + "extra: 1\n")
    with pytest.raises(ParseError, match="unknown key"):
        parse_family(GOOD.replace("{ m: 8, r: 1 }", "{ m: 8, r: 1, s: 2 }"))


@pytest.mark.parametrize("old,new,exc", [
    ("coprime_to: 6", "coprime_to: six", ParseError),
    ("coprime_to: 6", "coprime_to: 0", ValidationError),
    ("cd: 2", "cd: 0", ValidationError),
    ("a_exp: 1, q_shift: 3", "a_exp: 2, q_shift: 3", ValidationError),
    ("sub: \"k\"}", "sub: \"3k\"}", ValidationError),
    ("modulus_kind: full", "modulus_kind: weird", ValidationError),
    ("{ m: 8, r: 1 }", "{ m: 0, r: 1 }", ValidationError),
    ("{ k2: 2, k1: 0 }", "{ k2: -1, k1: 0 }", ValidationError),
])
def test_field_checks(old, new, exc):
    bad = GOOD.replace(old, new, 1)
    assert bad != GOOD
    with pytest.raises(exc):
        parse_family(bad)


def test_malformed_and_empty():
    with pytest.raises(ParseError):
        parse_family("name: [1\n")
    with pytest.raises(ParseError):
        parse_family("")
    with pytest.raises(ParseError):
        parse_family(b"\xff\xfe")
    with pytest.raises(ParseError, match="missing"):
        parse_family("name: x\n")


def test_rational_scalar_and_exponent_check():
    f = parse_family(GOOD.replace("scalar: 1", "scalar: \"3/2\""))
    assert f.congruence_rhs.scalar == Fraction(3, 2)
    f.check_exponents([1, 5, 7])
    with pytest.raises(ValidationError):
        f.check_exponents([4])
