"""Conjectural fiber-sum formulas for free-part generators, and a harness that checks them.

Every formula has the form ``Delta^k * (G1 * G2)``, where ``*`` is the star
product on monomials.  It holds only up to powers of j and up to the
canonical coefficient, so outputs are compared with
:func:`tmfcalc.mf_ring.equal_up_to_j`.  Each formula is stated only for
total degrees outside 24Z, and calling one outside that range raises
:class:`OutOfDomain`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .anomaly import tmf_degree
from .errors import DomainError, InvalidParameter, OutOfDomain, RuleViolation
from .manifolds import (
    fiber_sum,
    knot_surgery,
    make_elliptic_surface,
    make_Z,
    make_surface_bundle_X,
    parse_manifold,
    surface_euler,
)
from .mf_ring import MFMonomial, canonical, equal_up_to_j, format_monomial, normalize
from .tmf_groups import free_generator

S_TABLE = {3: 3, 5: 6, 7: 10, 9: 16, 11: 23, 13: 31, 15: 40}
VECTOR_N = (3, 5, 7)


@dataclass(frozen=True)
class StarRules:
    """``E4`` exponents add, plus ``e4_shift``; ``E4^3 -> j Delta``; E6 mod 2; Delta exponents add."""

    e4_shift: int = 0
    e4_reduce_threshold: int = 3
    e6_modulus: int = 2


HYPER_RULES = StarRules()


def star(a: MFMonomial, b: MFMonomial, rules: StarRules = HYPER_RULES) -> MFMonomial:
    """Combine exponents by the star rules.  The coefficient is the plain product."""
    p = a.e4_power + b.e4_power + rules.e4_shift
    if p < 0:
        raise RuleViolation(f"star product gives E4^{p}: {format_monomial(a)} * {format_monomial(b)}")
    return normalize(
        a.coeff * b.coeff,
        p,
        a.e6_power + b.e6_power,
        a.delta_power + b.delta_power,
        a.j_power + b.j_power,
        reduce_e6=True,
    )


def times_delta(x: MFMonomial, k: int) -> MFMonomial:
    return MFMonomial(x.coeff, x.j_power, x.e4_power, x.e6_power, x.delta_power + k)


@dataclass(frozen=True)
class PrefactorSpec:
    theory: str
    formula: str
    delta_exponent: int
    parameters: dict[str, Any] = field(default_factory=dict)
    rules: StarRules = HYPER_RULES


@dataclass(frozen=True)
class FormulaResult:
    raw: MFMonomial
    prefactor: PrefactorSpec

    @property
    def generator(self) -> MFMonomial:
        return canonical(self.raw)


def _require_off_24(d: int, what: str) -> None:
    if d % 24 == 0:
        raise OutOfDomain(f"{what} degree {d} lies in 24Z, outside the formula's domain")


# -- hypermultiplet (and the E-string on elliptic surfaces) ---------------------


def hyper_formula(h1: MFMonomial, h2: MFMonomial, *, theory: str = "hypermultiplet") -> FormulaResult:
    _require_off_24(h1.degree + h2.degree, "total")
    k = (h1.e6_power + h2.e6_power) // 2
    spec = PrefactorSpec(theory, "hyper", k, {"w1": h1.e6_power, "w2": h2.e6_power})
    return FormulaResult(times_delta(star(h1, h2), k), spec)


def hyper_fibersum(h1: MFMonomial, h2: MFMonomial) -> MFMonomial:
    """``Delta^floor((w1+w2)/2) H1 * H2``, j dropped and coefficient renormalised."""
    return hyper_formula(h1, h2).generator


def estring_elliptic_formula(r: int, s: int) -> FormulaResult:
    if r < 1 or s < 1:
        raise InvalidParameter(f"E(2r) #f E(2s) needs r, s >= 1; got r={r}, s={s}")
    e1 = free_generator(tmf_degree("estring_rank1", make_elliptic_surface(2 * r)))
    e2 = free_generator(tmf_degree("estring_rank1", make_elliptic_surface(2 * s)))
    res = hyper_formula(e1, e2, theory="estring_rank1")
    spec = PrefactorSpec("estring_rank1", "estring-elliptic", res.prefactor.delta_exponent,
                         {"r": r, "s": s, "w1": e1.e6_power, "w2": e2.e6_power})
    return FormulaResult(res.raw, spec)


def estring_fibersum_elliptic(r: int, s: int) -> MFMonomial:
    """E-string generator of ``E(2r) #f E(2s) = E(2r + 2s)`` by the hyper rule."""
    return estring_elliptic_formula(r, s).generator


# -- vector multiplet -------------------------------------------------------------


def gluing_euler_Z(n: int) -> int:
    """chi of the gluing surface Sigma_{f+b} for the g = 2 family: f = 2n, b = 1 + 2n^2."""
    return surface_euler(2 * n + 1 + 2 * n * n)


def vector_s(v1: MFMonomial, v2: MFMonomial, n: int, r: int) -> int:
    if n == 7:
        return 8 if r % 2 else 9
    p = v1.e4_power + v2.e4_power
    if r % 2 == 0:
        return n - math.ceil(p / (n - 1)) + v1.e6_power + v2.e6_power
    return n - math.ceil(p / (n - 2))


def vector_formula(v1: MFMonomial, v2: MFMonomial, n: int, r: int) -> FormulaResult:
    if n not in VECTOR_N:
        raise InvalidParameter(f"the vector fiber-sum formula covers n in {VECTOR_N}, not n={n}")
    _require_off_24(v1.degree, "X_{2,n}")
    _require_off_24(v1.degree + v2.degree + gluing_euler_Z(n), "total")
    rules = StarRules(e4_shift=-1) if n == 7 else HYPER_RULES
    s = vector_s(v1, v2, n, r)
    spec = PrefactorSpec("vector", "vector", -s, {"n": n, "r": r, "s": s}, rules)
    return FormulaResult(times_delta(star(v1, v2, rules), -s), spec)


def vector_fibersum(v1: MFMonomial, v2: MFMonomial, n: int, r: int) -> MFMonomial:
    """``Delta^-s V(X_{2,n}) * V(E(2r)_K)`` with the case split on ``n`` and the parity of ``r``."""
    return vector_formula(v1, v2, n, r).generator


# -- E-string on Z^r_{2,n} ---------------------------------------------------------


def k_of_r(r: int) -> int:
    return -1 if r % 2 == 0 else 0


def e4_shift_of_n(n: int) -> int:
    return 1 if n > 1 and n % 6 == 1 else 0


def estring_Z_prefactor(n: int, r: int) -> int:
    if n not in S_TABLE:
        raise InvalidParameter(f"s(n) is tabulated only for n in {sorted(S_TABLE)}, not n={n}")
    return gluing_euler_Z(n) // 2 + S_TABLE[n] + k_of_r(r)


def estring_Z_formula(n: int, r: int, base: MFMonomial | None = None) -> FormulaResult:
    delta_k = estring_Z_prefactor(n, r)
    x = make_surface_bundle_X(2, n)
    if base is None:
        base = free_generator(tmf_degree("estring_rank1", x))
    _require_off_24(tmf_degree("estring_rank1", make_Z(2, n, r)), "total")
    ek = free_generator(tmf_degree("estring_rank1", make_elliptic_surface(2 * r)))
    rules = StarRules(e4_shift=e4_shift_of_n(n))
    product = star(base, ek, rules)
    spec = PrefactorSpec(
        "estring_rank1", "estring-Z", delta_k,
        {"n": n, "r": r, "s(n)": S_TABLE[n], "k(r)": k_of_r(r), "c": rules.e4_shift,
         "chi_gluing/2": gluing_euler_Z(n) // 2},
        rules,
    )
    return FormulaResult(times_delta(product, delta_k), spec)


def estring_fibersum_Z(n: int, r: int, base: MFMonomial | None = None) -> MFMonomial:
    return estring_Z_formula(n, r, base).generator


# -- verification harness ------------------------------------------------------------


FORMULA_IDS = ("hyper", "vector", "estring-elliptic", "estring-Z")


@dataclass(frozen=True)
class VerdictReport:
    formula_id: str
    instance: dict[str, Any]
    manifold: str | None
    degree: int | None
    lhs: MFMonomial | None
    rhs_raw: MFMonomial | None
    rhs: MFMonomial | None
    delta_exponent: int | None
    status: str
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        fmt = lambda m: None if m is None else format_monomial(m)  # noqa: E731
        return {
            "formula": self.formula_id,
            "instance": dict(sorted(self.instance.items())),
            "manifold": self.manifold,
            "degree": self.degree,
            "lhs": fmt(self.lhs),
            "rhs_raw": fmt(self.rhs_raw),
            "rhs": fmt(self.rhs),
            "delta_exponent": self.delta_exponent,
            "status": self.status,
            "message": self.message,
        }


def _ek(r: int):
    return knot_surgery(make_elliptic_surface(2 * r))


def _instance(formula_id: str, inst: dict[str, Any]):
    """Return (fiber-summed manifold, theory, formula result)."""
    if formula_id == "hyper":
        left, right = parse_manifold(inst["left"]), parse_manifold(inst["right"])
        total = fiber_sum(left, right, int(inst["genus"]))
        h1 = free_generator(tmf_degree("hypermultiplet", left))
        h2 = free_generator(tmf_degree("hypermultiplet", right))
        return total, "hypermultiplet", hyper_formula(h1, h2)
    if formula_id == "vector":
        n, r = int(inst["n"]), int(inst["r"])
        x = make_surface_bundle_X(2, n)
        f, b = x.gluing_genera
        total = fiber_sum(x, _ek(r), b)
        v1 = free_generator(tmf_degree("vector", x))
        v2 = free_generator(tmf_degree("vector", _ek(r)))
        return total, "vector", vector_formula(v1, v2, n, r)
    if formula_id == "estring-elliptic":
        r, s = int(inst["r"]), int(inst["s"])
        total = fiber_sum(make_elliptic_surface(2 * r), make_elliptic_surface(2 * s), 1)
        return total, "estring_rank1", estring_elliptic_formula(r, s)
    if formula_id == "estring-Z":
        n, r = int(inst["n"]), int(inst["r"])
        x = make_surface_bundle_X(2, n)
        total = fiber_sum(x, _ek(r), x.gluing_genera[1])
        return total, "estring_rank1", estring_Z_formula(n, r)
    raise InvalidParameter(f"unknown formula {formula_id!r}; expected one of {', '.join(FORMULA_IDS)}")


def verify_formula(formula_id: str, instance: dict[str, Any]) -> VerdictReport:
    """Compare a formula's output with the free generator at the fiber sum's own degree.

    A mismatch is a verdict, not an exception.  So is an instance outside the
    formula's domain, which is reported with status ``out-of-domain``.
    """
    inst = dict(instance)
    try:
        total, theory, res = _instance(formula_id, inst)
    except OutOfDomain as exc:
        return VerdictReport(formula_id, inst, None, None, None, None, None, None, "out-of-domain", str(exc))
    except DomainError as exc:
        if formula_id not in FORMULA_IDS:
            raise
        return VerdictReport(formula_id, inst, None, None, None, None, None, None, "error", str(exc))
    d = tmf_degree(theory, total)
    lhs = free_generator(d)
    rhs = res.generator
    ok = equal_up_to_j(lhs, rhs)
    msg = "" if ok else f"degree {d}: expected {format_monomial(lhs)}, formula gives {format_monomial(rhs)}"
    return VerdictReport(
        formula_id, inst, total.provenance, d, lhs, res.raw, rhs,
        res.prefactor.delta_exponent, "pass" if ok else "fail", msg,
    )


def hyper_synthetic_pairs(bound: int = 200) -> list[tuple[int, int]]:
    """Degree pairs with both degrees in 4Z, ``|d_i| <= bound`` and a sum outside 24Z."""
    ds = [d for d in range(-bound, bound + 1) if d % 4 == 0]
    return [(a, b) for a in ds for b in ds if (a + b) % 24]


def check_hyper_pair(d1: int, d2: int) -> bool:
    return equal_up_to_j(hyper_fibersum(free_generator(d1), free_generator(d2)), free_generator(d1 + d2))


def estring_elliptic_pairs(max_total: int = 24) -> list[tuple[int, int]]:
    """``(r, s)`` with ``2r + 2s <= max_total`` and total E-string degree outside 24Z."""
    out = []
    for r in range(1, max_total // 2):
        for s in range(1, max_total // 2):
            if 2 * r + 2 * s <= max_total and (116 * (r + s)) % 24:
                out.append((r, s))
    return out
