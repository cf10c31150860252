"""Weight-graded monomials ``c * j^a * E4^p * E6^e * Delta^m``.

These are the shapes in which generators of the free part of pi_d TMF are
written.  The normal form keeps ``p`` in {0, 1, 2} by trading ``E4^3`` for
``j * Delta`` and keeps ``e`` in {0, 1}.  ``E6^2`` is deliberately *not*
rewritten (``E6^2 = E4^3 - 1728 Delta`` is not a monomial); only the star
product folds E6 exponents mod 2, and it accounts for the lost weight itself.

Weights: E4 -> 4, E6 -> 6, Delta -> 12, j -> 0.  The TMF degree of a
monomial is twice its weight.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass, replace

from . import qseries
from .errors import InvalidParameter, ParseError
from .qseries import QSeries


@dataclass(frozen=True)
class MFMonomial:
    coeff: int = 1
    j_power: int = 0
    e4_power: int = 0
    e6_power: int = 0
    delta_power: int = 0

    def __post_init__(self):
        if self.j_power < 0 or self.e4_power < 0:
            raise InvalidParameter("j and E4 exponents must be non-negative")
        if self.e6_power not in (0, 1):
            raise InvalidParameter(
                f"E6^{self.e6_power} has no monomial normal form (E6 exponent must be 0 or 1)"
            )

    @property
    def weight(self) -> int:
        return 4 * self.e4_power + 6 * self.e6_power + 12 * self.delta_power

    @property
    def degree(self) -> int:
        return 2 * self.weight

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.e4_power, self.e6_power, self.delta_power)

    def __mul__(self, other):
        if isinstance(other, int):
            return replace(self, coeff=self.coeff * other)
        if not isinstance(other, MFMonomial):
            return NotImplemented
        return normalize(
            self.coeff * other.coeff,
            self.e4_power + other.e4_power,
            self.e6_power + other.e6_power,
            self.delta_power + other.delta_power,
            self.j_power + other.j_power,
        )

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_monomial(self)


def normalize(coeff: int, p: int, eps: int, m: int, j: int = 0, *, reduce_e6: bool = False) -> MFMonomial:
    """Rewrite ``E4^3 -> j Delta`` until the E4 exponent is at most 2.

    ``reduce_e6`` folds the E6 exponent mod 2 and is meant for the star
    product only; elsewhere an E6 exponent above 1 is an error.
    """
    if p < 0 or eps < 0 or j < 0:
        raise InvalidParameter("exponents of E4, E6 and j must be non-negative")
    if reduce_e6:
        eps %= 2
    k, p = divmod(p, 3)
    return MFMonomial(coeff, j + k, p, eps, m + k)


def weight(mono: MFMonomial) -> int:
    return mono.weight


def degree(mono: MFMonomial) -> int:
    return mono.degree


def canonical_coefficient(p: int, eps: int, m: int) -> int:
    """Coefficient carried by the generator of shape ``E4^p E6^eps Delta^m``.

    2 whenever E6 appears, ``24 / gcd(24, m)`` for a bare power of Delta
    (``gcd(24, 0) = 24``), and 1 otherwise.
    """
    if eps == 1:
        return 2
    if p == 0:
        return 24 // math.gcd(24, m)
    return 1


def canonical(mono: MFMonomial) -> MFMonomial:
    """Drop j, normalise, and reset the coefficient to the canonical one."""
    n = normalize(1, mono.e4_power, mono.e6_power, mono.delta_power)
    return MFMonomial(canonical_coefficient(*n.shape), 0, *n.shape)


def equal_up_to_j(a: MFMonomial, b: MFMonomial) -> bool:
    return canonical(a) == canonical(b)


def to_qseries(mono: MFMonomial, order: int = qseries.DEFAULT_ORDER) -> QSeries:
    """Exact q-expansion, truncated at ``order``.

    ``j^a`` is expanded as ``E4^(3a) / Delta^a`` so that the only Laurent
    factor is a (possibly negative) power of Delta, which is built directly
    from the eta product rather than by repeated inversion.
    """
    p = mono.e4_power + 3 * mono.j_power
    m = mono.delta_power - mono.j_power
    work = order - m if m < 0 else order
    result = qseries.delta_power(m, work)
    if p:
        result = result * qseries.eisenstein_E4(work) ** p
    if mono.e6_power:
        result = result * qseries.eisenstein_E6(work)
    return (result * mono.coeff).truncate(order)


# -- printing and parsing -------------------------------------------------


def _factor(name: str, k: int) -> str:
    return name if k == 1 else f"{name}^{k}"


def format_monomial(mono: MFMonomial) -> str:
    """ASCII rendering in the tables' style, e.g. ``2*E4^2*E6/Delta^12``."""
    num = []
    if mono.j_power:
        num.append(_factor("j", mono.j_power))
    if mono.e4_power:
        num.append(_factor("E4", mono.e4_power))
    if mono.e6_power:
        num.append("E6")
    if mono.delta_power > 0:
        num.append(_factor("Delta", mono.delta_power))
    c = mono.coeff
    if c == 0:
        return "0"
    if num:
        head = "*".join(num)
        if c == -1:
            head = "-" + head
        elif c != 1:
            head = f"{c}*{head}"
    else:
        head = str(c)
    if mono.delta_power < 0:
        head += "/" + _factor("Delta", -mono.delta_power)
    return head


_SYMBOLS = {
    "E4": MFMonomial(e4_power=1),
    "E6": MFMonomial(e6_power=1),
    "Delta": MFMonomial(delta_power=1),
    "j": MFMonomial(j_power=1),
}


class _Raw:
    """Unnormalised exponent vector used while parsing."""

    def __init__(self, c=1, j=0, p=0, e=0, m=0):
        self.v = [c, j, p, e, m]

    def mul(self, o: _Raw) -> _Raw:
        a, b = self.v, o.v
        return _Raw(a[0] * b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4])

    def div(self, o: _Raw) -> _Raw:
        a, b = self.v, o.v
        if b[0] == 0 or a[0] % b[0]:
            raise ParseError("monomial coefficients must divide exactly")
        return _Raw(a[0] // b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4])

    def pow(self, k: int) -> _Raw:
        if k < 0:
            return _Raw().div(self.pow(-k))
        c, j, p, e, m = self.v
        return _Raw(c**k, j * k, p * k, e * k, m * k)


def parse_monomial(text: str) -> MFMonomial:
    """Parse ``2*E4^2*E6/Delta^12``, ``j*Delta``, ``(j*Delta)^2``, ``12/Delta^2`` ..."""
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse monomial {text!r}") from exc

    def ev(node) -> _Raw:
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return _Raw(node.value)
        if isinstance(node, ast.Name) and node.id in _SYMBOLS:
            s = _SYMBOLS[node.id]
            return _Raw(1, s.j_power, s.e4_power, s.e6_power, s.delta_power)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return _Raw(-1).mul(ev(node.operand))
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Mult):
                return ev(node.left).mul(ev(node.right))
            if isinstance(node.op, ast.Div):
                return ev(node.left).div(ev(node.right))
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if isinstance(exp, ast.Constant) and isinstance(exp.value, int):
                    return ev(node.left).pow(sign * exp.value)
        raise ParseError(f"unsupported monomial syntax in {text!r}")

    c, j, p, e, m = ev(tree.body).v
    if p < 0 or e < 0 or j < 0:
        raise ParseError(f"{text!r}: E4, E6 and j may not appear in a denominator")
    try:
        return normalize(c, p, e, m, j)
    except InvalidParameter as exc:
        raise ParseError(str(exc)) from exc
