"""Central charges of chiral WZW models, c = k dim(g) / (k + h_dual)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameter, ParseError, PoleError

CLASSICAL = ("A", "B", "C", "D")
EXCEPTIONAL = {"G2": (2, 14, 4), "F4": (4, 52, 9), "E6": (6, 78, 12), "E7": (7, 133, 18), "E8": (8, 248, 30)}
SERIES_ORDER = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True, order=True)
class SimpleLieAlgebra:
    series: str
    rank: int

    def __post_init__(self):
        if self.series in EXCEPTIONAL:
            if self.rank != EXCEPTIONAL[self.series][0]:
                raise InvalidParameter(f"{self.series} has rank {EXCEPTIONAL[self.series][0]}")
        elif self.series in CLASSICAL:
            if self.rank < _MIN_RANK[self.series]:
                raise InvalidParameter(f"{self.series}_{self.rank} is not a simple Lie algebra in the standard list")
        else:
            raise InvalidParameter(f"unknown series {self.series!r}")

    @property
    def dim(self) -> int:
        n = self.rank
        return {
            "A": lambda: n * (n + 2),
            "B": lambda: n * (2 * n + 1),
            "C": lambda: n * (2 * n + 1),
            "D": lambda: n * (2 * n - 1),
        }.get(self.series, lambda: EXCEPTIONAL[self.series][1])()

    @property
    def dual_coxeter(self) -> int:
        n = self.rank
        return {
            "A": lambda: n + 1,
            "B": lambda: 2 * n - 1,
            "C": lambda: n + 1,
            "D": lambda: 2 * n - 2,
        }.get(self.series, lambda: EXCEPTIONAL[self.series][2])()

    @property
    def label(self) -> str:
        return self.series if self.series in EXCEPTIONAL else f"{self.series}{self.rank}"

    def sort_key(self) -> tuple[int, int]:
        return SERIES_ORDER.index(self.series), self.rank

    def __str__(self) -> str:
        return self.label


def parse_algebra(text: str) -> SimpleLieAlgebra:
    """``B2``, ``C2``, ``B22``, ``G2``, ``E8`` ..."""
    t = text.strip().replace("_", "")
    if t in EXCEPTIONAL:
        return SimpleLieAlgebra(t, EXCEPTIONAL[t][0])
    if len(t) >= 2 and t[0] in CLASSICAL and t[1:].isdigit():
        return SimpleLieAlgebra(t[0], int(t[1:]))
    raise ParseError(f"cannot parse Lie algebra {text!r}")


def central_charge(g: SimpleLieAlgebra, k: int) -> Fraction:
    if k == -g.dual_coxeter:
        raise PoleError(f"{g} at level k = -h_dual = {k}: central charge has a pole")
    return Fraction(k * g.dim, k + g.dual_coxeter)


def algebras(max_rank: int) -> list[SimpleLieAlgebra]:
    """Every simple Lie algebra of rank at most ``max_rank``, in (series, rank) order."""
    out = []
    for s in SERIES_ORDER:
        if s in EXCEPTIONAL:
            if EXCEPTIONAL[s][0] <= max_rank:
                out.append(SimpleLieAlgebra(s, EXCEPTIONAL[s][0]))
        else:
            out.extend(SimpleLieAlgebra(s, n) for n in range(_MIN_RANK[s], max_rank + 1))
    return out


def search_by_central_charge(
    target: Fraction | int | str,
    max_rank: int = 24,
    level_range: tuple[int, int] = (-100, 100),
) -> list[tuple[SimpleLieAlgebra, int]]:
    """All ``(g, k)`` with ``rank(g) <= max_rank``, ``k`` in the closed range, and ``c = target`` exactly.

    The default ranges are a convenience, not a completeness claim.
    """
    target = Fraction(target)
    lo, hi = level_range
    if max_rank < 1 or lo > hi:
        raise InvalidParameter("need max_rank >= 1 and level_min <= level_max")
    hits = []
    for g in algebras(max_rank):
        dim, h = g.dim, g.dual_coxeter
        # c (k + h) = k dim  =>  k (dim - c) = c h
        if target == dim:
            continue
        k = target * h / (dim - target)
        if k.denominator == 1 and lo <= k <= hi and k != -h:
            hits.append((g, int(k)))
    return hits
