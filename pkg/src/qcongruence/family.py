"""Declarative description of a summand family and its YAML file format.

A family file fixes the summand shape (Pochhammer symbols with monomial
arguments, one linear bracket, one quadratic q-power), the infinite product
on the right-hand side of the nonterminating identity, and the right-hand
side of the truncated congruence, scalar * (D/n) * q^((cn*n + c0)/cd) * [n].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import yaml

from .cyclotomic import q_integer
from .errors import ParseError, ValidationError
from .exactalg import LaurentPoly
from .numtheory import kronecker
from .qseries import PochSpec, ProductFactor, SummandSpec

MODULUS_KINDS = ("full", "parametric")
BUNDLED = ("rahman-8k1", "ramanujan-q4")

_INT = "tag:yaml.org,2002:int"
_STR = "tag:yaml.org,2002:str"


@dataclass(frozen=True)
class CongruenceRHS:
    """scalar * kronecker(disc, n) * q^((cn*n + c0)/cd) * [n]."""

    cn: int
    c0: int
    cd: int
    kronecker_disc: int
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        if self.cd < 1:
            raise ValidationError(f"congruence_rhs.q_exp.cd must be >= 1, got {self.cd}")
        object.__setattr__(self, "scalar", Fraction(self.scalar))

    def exponent(self, n: int) -> int:
        top = self.cn * n + self.c0
        if top % self.cd:
            raise ValidationError(
                f"q-exponent ({self.cn}*n + {self.c0})/{self.cd} is not an integer at n={n}")
        return top // self.cd

    def value(self, n: int) -> LaurentPoly:
        sign = kronecker(self.kronecker_disc, n)
        return q_integer(n).shift(self.exponent(n)) * (self.scalar * sign)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    summand: SummandSpec
    rhs_num: tuple[ProductFactor, ...]
    rhs_den: tuple[ProductFactor, ...]
    congruence_rhs: CongruenceRHS
    coprime_to: int = 6
    modulus_kind: str = "full"
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.modulus_kind not in MODULUS_KINDS:
            raise ValidationError(f"modulus_kind must be one of {MODULUS_KINDS}")
        if self.coprime_to < 1:
            raise ValidationError("coprime_to must be >= 1")

    def admissible(self, n: int) -> bool:
        from math import gcd
        return n >= 1 and gcd(n, self.coprime_to) == 1

    def check_exponents(self, ns) -> None:
        """Raise ValidationError unless the congruence q-exponent is integral at every n."""
        for n in ns:
            self.congruence_rhs.exponent(n)


# -- parsing -------------------------------------------------------------
def _line(node) -> int:
    return node.start_mark.line + 1


def _mapping(node, path: str, required, optional=()) -> dict:
    if not isinstance(node, yaml.MappingNode):
        raise ParseError(f"{path or 'document'} must be a mapping", _line(node), path or None)
    out = {}
    allowed = set(required) | set(optional)
    for knode, vnode in node.value:
        if not isinstance(knode, yaml.ScalarNode):
            raise ParseError("keys must be plain scalars", _line(knode), path or None)
        key = knode.value
        where = f"{path}.{key}" if path else key
        if key in out:
            raise ParseError(f"duplicate key {key!r}", _line(knode), where)
        if key not in allowed:
            raise ParseError(f"unknown key {key!r}", _line(knode), where)
        out[key] = vnode
    for key in required:
        if key not in out:
            where = f"{path}.{key}" if path else key
            raise ParseError(f"missing key {key!r}", _line(node), where)
    return out


def _int(node, path: str) -> int:
    if not isinstance(node, yaml.ScalarNode) or node.tag != _INT:
        raise ParseError("expected an integer", _line(node), path)
    return int(yaml.SafeLoader.construct_yaml_int(yaml.SafeLoader(""), node))


def _str(node, path: str) -> str:
    if not isinstance(node, yaml.ScalarNode) or node.tag != _STR:
        raise ParseError("expected a string", _line(node), path)
    return node.value


def _rational(node, path: str) -> Fraction:
    if isinstance(node, yaml.ScalarNode) and node.tag == _INT:
        return Fraction(_int(node, path))
    if isinstance(node, yaml.ScalarNode) and node.tag == _STR:
        try:
            return Fraction(node.value)
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError("expected an integer or a rational 'p/q'", _line(node), path)


def _seq(node, path: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        raise ParseError("expected a list", _line(node), path)
    return node.value


def _validated(ctor, path: str, node, *args):
    try:
        return ctor(*args)
    except ValidationError as exc:
        raise ValidationError(f"{path} (line {_line(node)}): {exc}") from None


def _poch(node, path: str) -> PochSpec:
    m = _mapping(node, path, ("a_exp", "q_shift", "base"), ("sub",))
    sub = _str(m["sub"], path + ".sub") if "sub" in m else "k"
    return _validated(PochSpec, path, node, _int(m["a_exp"], path + ".a_exp"),
                      _int(m["q_shift"], path + ".q_shift"), _int(m["base"], path + ".base"), sub)


def _factor(node, path: str) -> ProductFactor:
    m = _mapping(node, path, ("a_exp", "q_shift", "base"))
    a_exp = _int(m["a_exp"], path + ".a_exp")
    if a_exp not in (-1, 0, 1):
        raise ValidationError(f"{path}.a_exp (line {_line(node)}): must be -1, 0 or 1")
    return _validated(ProductFactor, path, node, a_exp,
                      _int(m["q_shift"], path + ".q_shift"), _int(m["base"], path + ".base"))


def parse_family(content: bytes | str, source: str | None = None) -> FamilySpec:
    """Parse and validate a family file."""
    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        root = yaml.compose(content, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(f"malformed YAML: {getattr(exc, 'problem', exc)}",
                         mark.line + 1 if mark else None) from None
    if root is None:
        raise ParseError("empty family file")
    top = _mapping(root, "", ("name", "summand", "rhs_product", "congruence_rhs"),
                   ("coprime_to", "modulus_kind"))
    name = _str(top["name"], "name")
    if not name.strip():
        raise ValidationError("name must be nonempty")

    s = _mapping(top["summand"], "summand", ("bracket", "qpower", "poch_num", "poch_den"))
    br = _mapping(s["bracket"], "summand.bracket", ("m", "r"))
    m = _int(br["m"], "summand.bracket.m")
    r = _int(br["r"], "summand.bracket.r")
    if m < 1:
        raise ValidationError(f"summand.bracket.m (line {_line(br['m'])}): must be >= 1")
    qp = _mapping(s["qpower"], "summand.qpower", ("k2", "k1"))
    k2 = _int(qp["k2"], "summand.qpower.k2")
    k1 = _int(qp["k1"], "summand.qpower.k1")
    if k2 < 0:
        raise ValidationError(f"summand.qpower.k2 (line {_line(qp['k2'])}): must be >= 0")
    num = tuple(_poch(n, f"summand.poch_num[{i}]")
                for i, n in enumerate(_seq(s["poch_num"], "summand.poch_num")))
    den = tuple(_poch(n, f"summand.poch_den[{i}]")
                for i, n in enumerate(_seq(s["poch_den"], "summand.poch_den")))
    summand = _validated(SummandSpec, "summand", top["summand"], num, den, (m, r), (k2, k1))

    rp = _mapping(top["rhs_product"], "rhs_product", ("num", "den"))
    rnum = tuple(_factor(n, f"rhs_product.num[{i}]")
                 for i, n in enumerate(_seq(rp["num"], "rhs_product.num")))
    rden = tuple(_factor(n, f"rhs_product.den[{i}]")
                 for i, n in enumerate(_seq(rp["den"], "rhs_product.den")))

    cr = _mapping(top["congruence_rhs"], "congruence_rhs", ("q_exp", "kronecker_disc"), ("scalar",))
    qe = _mapping(cr["q_exp"], "congruence_rhs.q_exp", ("cn", "c0", "cd"))
    rhs = _validated(CongruenceRHS, "congruence_rhs", top["congruence_rhs"],
                     _int(qe["cn"], "congruence_rhs.q_exp.cn"),
                     _int(qe["c0"], "congruence_rhs.q_exp.c0"),
                     _int(qe["cd"], "congruence_rhs.q_exp.cd"),
                     _int(cr["kronecker_disc"], "congruence_rhs.kronecker_disc"),
                     _rational(cr["scalar"], "congruence_rhs.scalar") if "scalar" in cr else 1)

    coprime = _int(top["coprime_to"], "coprime_to") if "coprime_to" in top else 6
    kind = _str(top["modulus_kind"], "modulus_kind") if "modulus_kind" in top else "full"
    return _validated(FamilySpec, "family", root, name, summand, rnum, rden, rhs, coprime, kind,
                      source)


# -- serialization -------------------------------------------------------
def _poch_dict(p: PochSpec) -> dict:
    return {"a_exp": p.a_exp, "q_shift": p.q_shift, "base": p.base_exp, "sub": p.sub}


def _factor_dict(f: ProductFactor) -> dict:
    return {"a_exp": f.a_exp, "q_shift": f.q_shift, "base": f.base_exp}


def family_to_dict(spec: FamilySpec) -> dict:
    c = spec.congruence_rhs
    scalar = c.scalar.numerator if c.scalar.denominator == 1 else str(c.scalar)
    return {
        "name": spec.name,
        "coprime_to": spec.coprime_to,
        "modulus_kind": spec.modulus_kind,
        "summand": {
            "bracket": {"m": spec.summand.bracket[0], "r": spec.summand.bracket[1]},
            "qpower": {"k2": spec.summand.qpower[0], "k1": spec.summand.qpower[1]},
            "poch_num": [_poch_dict(p) for p in spec.summand.numerator],
            "poch_den": [_poch_dict(p) for p in spec.summand.denominator],
        },
        "rhs_product": {"num": [_factor_dict(f) for f in spec.rhs_num],
                        "den": [_factor_dict(f) for f in spec.rhs_den]},
        "congruence_rhs": {"q_exp": {"cn": c.cn, "c0": c.c0, "cd": c.cd},
                           "kronecker_disc": c.kronecker_disc, "scalar": scalar},
    }


def serialize_family(spec: FamilySpec) -> str:
    return yaml.safe_dump(family_to_dict(spec), sort_keys=False, default_flow_style=None)


# -- lookup --------------------------------------------------------------
def bundled_path(name: str):
    return resources.files("qcongruence").joinpath("families", f"{name}.yaml")


def load_family(ref: str | Path) -> FamilySpec:
    """Load a family by bundled name or by file path."""
    ref = str(ref)
    if ref in BUNDLED:
        res = bundled_path(ref)
        return parse_family(res.read_bytes(), source=ref)
    path = Path(ref)
    if not path.is_file():
        raise ParseError(f"no bundled family or file named {ref!r} (bundled: {', '.join(BUNDLED)})")
    return parse_family(path.read_bytes(), source=str(path))


_default: FamilySpec | None = None


def default_family() -> FamilySpec:
    global _default
    if _default is None:
        _default = load_family("rahman-8k1")
    return _default
