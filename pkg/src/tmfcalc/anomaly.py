"""2d gravitational anomaly of a 6d (1,0) theory compactified on a 4-manifold.

A theory is its anomaly-polynomial coefficients

    I8 = alpha c2(R)^2 + beta c2(R) p1(T) + gamma p1(T)^2 + delta p2(T)

and on a closed 4-manifold X

    c_R - c_L = 18 (beta - 8 gamma - 4 delta) sigma(X) + 12 beta chi(X),

with TMF degree d = 2 (c_R - c_L).  The toy model is not a 6d theory; its
degree is 3 b2+ - 2 b2-.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeInconsistency, InvalidParameter
from .manifolds import ManifoldInvariants

THEORY_NAMES = ("toy", "hypermultiplet", "vector", "tensor", "estring_rank1")
PHYSICAL_THEORIES = ("hypermultiplet", "vector", "tensor", "estring_rank1")

ALIASES = {
    "hyper": "hypermultiplet",
    "estring": "estring_rank1",
    "e-string": "estring_rank1",
}


@dataclass(frozen=True)
class TheorySpec:
    name: str
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    closed_form: str | None = None
    verified: bool = True

    def signature_coefficient(self) -> Fraction:
        return 18 * (self.beta - 8 * self.gamma - 4 * self.delta)


_F = Fraction
_D = 5760

THEORIES: dict[str, TheorySpec] = {
    "toy": TheorySpec("toy", _F(0), _F(0), _F(0), _F(0), closed_form="3*b2_plus - 2*b2_minus"),
    "hypermultiplet": TheorySpec(
        "hypermultiplet", _F(0), _F(0), _F(7, _D), _F(-4, _D), closed_form="-sigma/4"
    ),
    "vector": TheorySpec(
        "vector", _F(-1, 24), _F(-1, 48), _F(-7, _D), _F(4, _D), closed_form="-2*chi_h"
    ),
    "tensor": TheorySpec(
        "tensor", _F(1, 24), _F(1, 48), _F(23, _D), _F(-116, _D), verified=False
    ),
    # p2 coefficient -4*29/5760: the 7 p1^2 - 4 p2 combination that reproduces
    # d = -2(5 sigma + 11 chi_h) and every E-string table row
    "estring_rank1": TheorySpec(
        "estring_rank1", _F(13, 24), _F(-11, 48), _F(29 * 7, _D), _F(-4 * 29, _D),
        closed_form="-2*(5*sigma + 11*chi_h)",
    ),
}

# the coefficient exactly as printed, 29 (7 p1^2 - p2) / 5760
ESTRING_AS_PRINTED = TheorySpec(
    "estring_rank1", _F(13, 24), _F(-11, 48), _F(29 * 7, _D), _F(-29, _D), verified=False
)


def get_theory(name: str | TheorySpec, *, strict_paper: bool = False) -> TheorySpec:
    if isinstance(name, TheorySpec):
        return name
    key = ALIASES.get(name, name)
    if key not in THEORIES:
        raise InvalidParameter(f"unknown theory {name!r}; expected one of {', '.join(THEORY_NAMES)}")
    if strict_paper and key == "estring_rank1":
        return ESTRING_AS_PRINTED
    return THEORIES[key]


def gravitational_anomaly(theory: str | TheorySpec, x: ManifoldInvariants, *, strict_paper: bool = False) -> Fraction:
    """c_R - c_L as an exact rational."""
    t = get_theory(theory, strict_paper=strict_paper)
    if t.name == "toy":
        return Fraction(x.toy_degree, 2)
    return t.signature_coefficient() * x.signature + 12 * t.beta * x.euler


def tmf_degree(theory: str | TheorySpec, x: ManifoldInvariants, *, strict_paper: bool = False) -> int:
    t = get_theory(theory, strict_paper=strict_paper)
    if t.name == "toy":
        return x.toy_degree
    d = 2 * gravitational_anomaly(t, x)
    if d.denominator != 1:
        raise DegreeInconsistency(f"{t.name} on {x.name}: 2(c_R - c_L) = {d} is not an integer")
    return int(d)


def closed_form_degree(theory: str | TheorySpec, x: ManifoldInvariants) -> int:
    """The per-theory shortcut formula, independent of the anomaly coefficients."""
    t = get_theory(theory)
    if t.name == "toy":
        return x.toy_degree
    if t.name == "hypermultiplet":
        if x.signature % 4:
            raise DegreeInconsistency(f"{x.name}: sigma = {x.signature} not divisible by 4")
        return -x.signature // 4
    if t.name == "vector":
        return -2 * x.holomorphic_euler
    if t.name == "estring_rank1":
        return -2 * (5 * x.signature + 11 * x.holomorphic_euler)
    raise InvalidParameter(f"no closed-form degree is known for the {t.name} theory")


# family-level closed forms in the (n, r) parametrisation


def hyper_degree_Z(n: int, r: int) -> int:
    """Hypermultiplet degree of Z^r_{2,n} and V^r_n: -2n^3/3 + 2n/3 + 4r."""
    d = Fraction(-2 * n**3, 3) + Fraction(2 * n, 3) + 4 * r
    return _integral(d)


def estring_degree_Z(n: int, r: int) -> int:
    """E-string degree of Z^r_{2,n}: -(4/3)(97 n^3 + 2n - 87 r)."""
    return _integral(Fraction(-4, 3) * (97 * n**3 + 2 * n - 87 * r))


def _integral(d: Fraction) -> int:
    if d.denominator != 1:
        raise DegreeInconsistency(f"closed form evaluates to non-integer {d}")
    return int(d)


def format_rational(q: Fraction) -> str:
    """Serialise exact rationals as ``"num/den"``, integers included (``"2/1"``)."""
    return f"{q.numerator}/{q.denominator}"
