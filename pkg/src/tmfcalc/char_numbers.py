"""Pontryagin-number checks for closed 8-manifolds.

With ``p1``, ``p2`` the Pontryagin numbers:

    sigma = L2  = (7 p2 - p1^2) / 45
    A-hat_2     = (7 p1^2 - 4 p2) / 5760
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeInconsistency


@dataclass(frozen=True)
class CharData8:
    p1: int = 0
    p2: int = 0


def signature_from_L2(data: CharData8) -> Fraction:
    return Fraction(7 * data.p2 - data.p1**2, 45)


def a_hat_2(data: CharData8) -> Fraction:
    return Fraction(7 * data.p1**2 - 4 * data.p2, 5760)


def a_hat_2_printed(data: CharData8) -> Fraction:
    """The variant with ``p1^2`` in place of ``7 p1^2``; equal to :func:`a_hat_2` whenever ``p1 = 0``."""
    return Fraction(data.p1**2 - 4 * data.p2, 5760)


def solve_p2_from_signature(sigma: int, p1: int = 0) -> int:
    num = 45 * sigma + p1 * p1
    if num % 7:
        raise DegreeInconsistency(f"p2 = (45*{sigma} + {p1}^2)/7 is not an integer")
    return num // 7


def report(data: CharData8) -> dict:
    sig = signature_from_L2(data)
    ah = a_hat_2(data)
    variant = a_hat_2_printed(data)
    return {
        "p1": data.p1,
        "p2": data.p2,
        "signature": f"{sig.numerator}/{sig.denominator}",
        "signature_integral": sig.denominator == 1,
        "a_hat_2": f"{ah.numerator}/{ah.denominator}",
        "a_hat_2_integral": ah.denominator == 1,
        "a_hat_2_variant": f"{variant.numerator}/{variant.denominator}",
        "variants_agree": ah == variant,
    }
