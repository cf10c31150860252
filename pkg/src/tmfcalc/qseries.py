"""Truncated Laurent series in q with exact integer coefficients.

A :class:`QSeries` stores the coefficients of ``q^v, q^(v+1), ..., q^(N-1)``
where ``v`` is the valuation (``min_exponent``) and ``N`` the truncation
order.  Nothing is claimed about exponents ``>= N``.  Arithmetic propagates
the truncation order conservatively: a result is never reported to a higher
order than the smaller of its operands' orders.

The classical level-one forms are built here as well::

    >>> eisenstein_E4(4).coefficients
    (1, 240, 2160, 6720)
    >>> delta_q(4).coefficients
    (1, -24, 252)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, NonIntegralCoefficient

DEFAULT_ORDER = 64


@dataclass(frozen=True)
class QSeries:
    min_exponent: int
    coefficients: tuple[int, ...]
    truncation_order: int

    def __post_init__(self):
        # canonical form: no leading zeros, nothing at or past the truncation order
        v, cs, n = self.min_exponent, list(self.coefficients), self.truncation_order
        del cs[max(0, n - v):]
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        cs = cs[k:]
        v += k
        if not cs:
            v = n
        object.__setattr__(self, "min_exponent", v)
        object.__setattr__(self, "coefficients", tuple(int(c) for c in cs))

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, c: int, order: int) -> QSeries:
        return cls(0, (c,), order)

    @classmethod
    def monomial(cls, c: int, exponent: int, order: int) -> QSeries:
        return cls(exponent, (c,), order)

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls(order, (), order)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading_coefficient(self) -> int:
        if self.is_zero():
            raise DomainError("zero series has no leading coefficient")
        return self.coefficients[0]

    def __getitem__(self, exponent: int) -> int:
        if exponent >= self.truncation_order:
            raise DomainError(
                f"coefficient of q^{exponent} unknown (series truncated at q^{self.truncation_order})"
            )
        k = exponent - self.min_exponent
        if k < 0 or k >= len(self.coefficients):
            return 0
        return self.coefficients[k]

    def items(self) -> Iterator[tuple[int, int]]:
        """Yield ``(exponent, coefficient)`` for every stored coefficient."""
        for k, c in enumerate(self.coefficients):
            yield self.min_exponent + k, c

    def truncate(self, order: int) -> QSeries:
        if order > self.truncation_order:
            raise DomainError(
                f"cannot extend truncation from {self.truncation_order} to {order}"
            )
        return QSeries(self.min_exponent, self.coefficients, order)

    def __repr__(self) -> str:
        terms = []
        for e, c in list(self.items())[:6]:
            if c:
                terms.append(f"{c}*q^{e}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.truncation_order}))"

    # -- arithmetic -------------------------------------------------------

    def _dense(self, start: int, stop: int) -> list[int]:
        return [self[e] if e < self.truncation_order else 0 for e in range(start, stop)]

    def __neg__(self) -> QSeries:
        return QSeries(self.min_exponent, tuple(-c for c in self.coefficients), self.truncation_order)

    def __add__(self, other) -> QSeries:
        if isinstance(other, int):
            other = QSeries.constant(other, self.truncation_order)
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.truncation_order, other.truncation_order)
        v = min(self.min_exponent, other.min_exponent, n)
        a = self._dense(v, n)
        b = other._dense(v, n)
        return QSeries(v, tuple(x + y for x, y in zip(a, b)), n)

    __radd__ = __add__

    def __sub__(self, other) -> QSeries:
        if isinstance(other, int):
            other = QSeries.constant(other, self.truncation_order)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def __mul__(self, other) -> QSeries:
        if isinstance(other, int):
            return QSeries(self.min_exponent, tuple(other * c for c in self.coefficients), self.truncation_order)
        if not isinstance(other, QSeries):
            return NotImplemented
        va, vb = self.min_exponent, other.min_exponent
        na, nb = self.truncation_order, other.truncation_order
        n = min(va + nb, vb + na, na, nb)
        v = va + vb
        length = n - v
        if length <= 0:
            return QSeries.zero(n)
        a, b = self.coefficients, other.coefficients
        out = [0] * length
        for i, x in enumerate(a[:length]):
            if x:
                for j, y in enumerate(b[: length - i]):
                    out[i + j] += x * y
        return QSeries(v, tuple(out), n)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, int):
            out = []
            for c in self.coefficients:
                q, r = divmod(c, other)
                if r:
                    raise NonIntegralCoefficient(f"{c} is not divisible by {other}")
                out.append(q)
            return QSeries(self.min_exponent, tuple(out), self.truncation_order)
        if not isinstance(other, QSeries):
            return NotImplemented
        return divide(self, other)

    def __pow__(self, k: int) -> QSeries:
        return power(self, k)


def divide(a: QSeries, b: QSeries) -> QSeries:
    """Exact quotient ``a / b``; every step of the long division must be exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by a zero series")
    v = a.min_exponent - b.min_exponent
    rel = min(a.truncation_order - a.min_exponent, b.truncation_order - b.min_exponent)
    n = min(v + rel, a.truncation_order, b.truncation_order)
    length = n - v
    if length <= 0:
        return QSeries.zero(n)
    num = list(a.coefficients[:length]) + [0] * max(0, length - len(a.coefficients))
    den = b.coefficients
    b0 = den[0]
    out = []
    for k in range(length):
        acc = num[k]
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        q, r = divmod(acc, b0)
        if r:
            raise NonIntegralCoefficient(
                f"inexact division at q^{v + k}: {acc} / {b0}"
            )
        out.append(q)
    return QSeries(v, tuple(out), n)


def invert(a: QSeries) -> QSeries:
    """Multiplicative inverse; the leading coefficient must be +-1."""
    if a.is_zero():
        raise ZeroDivisionError("zero series is not invertible")
    # the numerator 1 is exact, so give it more precision than the quotient can use
    one = QSeries.constant(1, 2 * (a.truncation_order - a.min_exponent) + 1)
    return divide(one, a)


def power(a: QSeries, k: int) -> QSeries:
    if k < 0:
        return power(invert(a), -k)
    if k == 0:
        return QSeries.constant(1, a.truncation_order)
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else result * base
        k >>= 1
        if k:
            base = base * base
    return result


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def equal_to_order(a: QSeries, b: QSeries, order: int) -> bool:
    """True iff ``a`` and ``b`` agree on every exponent below ``order``."""
    for s in (a, b):
        if s.truncation_order < order:
            raise DomainError(
                f"series known only to q^{s.truncation_order}, asked to compare to q^{order}"
            )
    lo = min(a.min_exponent, b.min_exponent, order)
    return all(a[e] == b[e] for e in range(lo, order))


# -- classical forms ------------------------------------------------------


def divisor_sigma_table(k: int, n_max: int) -> list[int]:
    """``[sigma_k(0)=0, sigma_k(1), ..., sigma_k(n_max - 1)]`` by sieving."""
    table = [0] * n_max
    for d in range(1, n_max):
        dk = d**k
        for m in range(d, n_max, d):
            table[m] += dk
    return table


def _check_order(order: int, minimum: int) -> None:
    if order < minimum:
        raise DomainError(f"truncation order must be >= {minimum}, got {order}")


def eisenstein_E4(order: int = DEFAULT_ORDER) -> QSeries:
    _check_order(order, 1)
    s3 = divisor_sigma_table(3, order)
    return QSeries(0, (1,) + tuple(240 * s3[n] for n in range(1, order)), order)


def eisenstein_E6(order: int = DEFAULT_ORDER) -> QSeries:
    _check_order(order, 1)
    s5 = divisor_sigma_table(5, order)
    return QSeries(0, (1,) + tuple(-504 * s5[n] for n in range(1, order)), order)


def euler_product(length: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) up to q^(length-1), via pentagonal numbers."""
    out = [0] * length
    k = 0
    while True:
        hit = False
        for kk in ((k,) if k == 0 else (k, -k)):
            e = kk * (3 * kk - 1) // 2
            if e < length:
                out[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def series_power(coeffs: list[int], alpha: int) -> list[int]:
    """Power ``A^alpha`` of a series with ``A[0] == 1`` (J.C.P. Miller recurrence).

    Works for negative ``alpha``; integrality of the result is checked at every step.
    """
    if coeffs[0] != 1:
        raise DomainError("series_power needs constant term 1")
    length = len(coeffs)
    out = [1] + [0] * (length - 1)
    for k in range(1, length):
        acc = 0
        for j in range(1, k + 1):
            a = coeffs[j]
            if a:
                acc += ((alpha + 1) * j - k) * a * out[k - j]
        q, r = divmod(acc, k)
        if r:
            raise NonIntegralCoefficient(f"non-integral coefficient at q^{k}")
        out[k] = q
    return out


def delta_power(m: int, order: int = DEFAULT_ORDER) -> QSeries:
    """``Delta^m = q^m prod(1 - q^n)^(24 m)`` to the given order, any integer ``m``."""
    length = order - m
    if length <= 0:
        return QSeries.zero(order)
    return QSeries(m, tuple(series_power(euler_product(length), 24 * m)), order)


def delta_q(order: int = DEFAULT_ORDER) -> QSeries:
    _check_order(order, 2)
    return delta_power(1, order)


def j_q(order: int = DEFAULT_ORDER) -> QSeries:
    """Klein's j = E4^3 / Delta, a Laurent series starting at q^-1."""
    _check_order(order, 1)
    work = order + 2
    return (eisenstein_E4(work) ** 3 / delta_q(work)).truncate(order)
