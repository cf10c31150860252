"""Homotopy groups pi_d TMF: the free-part generator rule and the tabulated torsion data.

The free part comes from a rule; torsion is never computed.  Torsion data
comes only from the bundled dataset, and any other degree reports "unknown".
"""

from __future__ import annotations

import ast
import json
import os
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from .errors import NoFreePart, ParseError
from .manifolds import ManifoldInvariants, connected_sum, make_named
from .mf_ring import MFMonomial, canonical_coefficient, format_monomial

PERIOD = 576
DATASET_ENV = "TMFCALC_DATASET"
UNKNOWN = "unknown"


def decompose_weight(w: int) -> tuple[int, int, int]:
    """Unique ``(p, eps, m)`` with ``p`` in 0..2, ``eps`` in 0..1 and ``4p + 6eps + 12m = w``."""
    if w % 2:
        raise NoFreePart(f"weight {w} is odd")
    r = w % 12
    p, eps = {0: (0, 0), 2: (2, 1), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1)}[r]
    return p, eps, (w - 4 * p - 6 * eps) // 12


def free_generator(d: int) -> MFMonomial:
    """Generator of the Z[x] summand of pi_d TMF (one exists iff 4 divides d)."""
    if d % 4:
        raise NoFreePart(f"pi_{d} TMF has no free part: {d} is not a multiple of 4")
    p, eps, m = decompose_weight(d // 2)
    return MFMonomial(canonical_coefficient(p, eps, m), 0, p, eps, m)


# -- torsion elements ------------------------------------------------------


@dataclass(frozen=True)
class TorsionElement:
    """``scalar * eta^a * nu^b * E4^e * Delta^m``, reduced by the eta/nu relations.

    Only ``eta^3 = 12 nu`` and ``2 eta = 24 nu = 2 nu^2 = eta^4 = nu^4 = 0`` are
    known.  Mixed eta-nu products fall outside them and are flagged unknown.
    """

    eta_power: int = 0
    nu_power: int = 0
    e4_power: int = 0
    delta_power: int = 0
    scalar: int = 1
    unknown: bool = False

    @classmethod
    def zero(cls) -> TorsionElement:
        return cls(scalar=0)

    @classmethod
    def undetermined(cls) -> TorsionElement:
        return cls(scalar=0, unknown=True)

    def is_zero(self) -> bool:
        return not self.unknown and self.scalar == 0

    def normalized(self) -> TorsionElement:
        return normalize_torsion(self)

    def __mul__(self, other) -> TorsionElement:
        if isinstance(other, int):
            return normalize_torsion(replace(self, scalar=self.scalar * other))
        if not isinstance(other, TorsionElement):
            return NotImplemented
        if self.unknown or other.unknown:
            if self.is_zero() or other.is_zero():
                return TorsionElement.zero()
            return TorsionElement.undetermined()
        return normalize_torsion(
            TorsionElement(
                self.eta_power + other.eta_power,
                self.nu_power + other.nu_power,
                self.e4_power + other.e4_power,
                self.delta_power + other.delta_power,
                self.scalar * other.scalar,
            )
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TorsionElement:
        out = TorsionElement()
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        if self.unknown:
            return UNKNOWN
        if self.scalar == 0:
            return "0"
        parts = []
        for name, k in (("eta", self.eta_power), ("nu", self.nu_power), ("E4", self.e4_power)):
            if k:
                parts.append(name if k == 1 else f"{name}^{k}")
        if self.delta_power > 0:
            parts.append("Delta" if self.delta_power == 1 else f"Delta^{self.delta_power}")
        head = "*".join(parts) or "1"
        if self.scalar != 1:
            head = f"{self.scalar}*{head}" if parts else str(self.scalar)
        if self.delta_power < 0:
            k = -self.delta_power
            head += "/Delta" if k == 1 else f"/Delta^{k}"
        return head


def normalize_torsion(x: TorsionElement) -> TorsionElement:
    if x.unknown:
        return x
    # normal form writes 12 nu as eta^3 so that eta^4 = 0 stays visible
    a, b, s = x.eta_power, x.nu_power, x.scalar
    if a:
        s %= 2
    elif b == 1:
        s %= 24
    elif b:
        s %= 2
    if s == 0 or a >= 4 or b >= 4:
        return TorsionElement.zero()
    if a and b:
        if a == 3:
            # eta^3 nu^b = 12 nu^(b+1), and 2 nu^2 = 0
            return TorsionElement.zero()
        return TorsionElement.undetermined()
    if a == 0 and b == 1 and s == 12:
        a, b, s = 3, 0, 1
    return TorsionElement(a, b, x.e4_power, x.delta_power, s)


ETA = TorsionElement(eta_power=1)
NU = TorsionElement(nu_power=1)


def parse_class(text: str) -> TorsionElement:
    """Parse a class label such as ``nu*Delta^2``, ``eta*E4/Delta`` or ``0``."""
    symbols = {
        "eta": ETA,
        "nu": NU,
        "E4": TorsionElement(e4_power=1),
        "Delta": TorsionElement(delta_power=1),
    }
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse class {text!r}") from exc

    def ev(node) -> TorsionElement:
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return TorsionElement(scalar=node.value)
        if isinstance(node, ast.Name) and node.id in symbols:
            return symbols[node.id]
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Mult):
                return ev(node.left) * ev(node.right)
            if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant):
                return ev(node.left) ** node.right.value
            if isinstance(node.op, ast.Div):
                den = ev(node.right)
                if (den.eta_power, den.nu_power, den.e4_power, den.scalar) != (0, 0, 0, 1):
                    raise ParseError(f"{text!r}: only powers of Delta may be inverted")
                num = ev(node.left)
                return replace(num, delta_power=num.delta_power - den.delta_power)
        raise ParseError(f"unsupported class syntax in {text!r}")

    return normalize_torsion(ev(tree.body))


# -- dataset ---------------------------------------------------------------


@dataclass(frozen=True)
class TmfEntry:
    degree: int
    free_generator: MFMonomial | None
    torsion: str
    torsion_generators: tuple[str, ...] = ()
    source: str = "rule"
    theories: tuple[str, ...] = ()
    contains: tuple[str, ...] = ()
    connective_zero: bool = False
    label: str | None = None
    citation: str | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def group(self) -> str:
        return self.torsion

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "free_generator": format_monomial(self.free_generator) if self.free_generator else None,
            "group": self.torsion,
            "torsion_generators": list(self.torsion_generators),
            "source": self.source,
            "theories": list(self.theories),
            "contains": list(self.contains),
            "connective_zero": self.connective_zero,
            "label": self.label,
            "citation": self.citation,
            "notes": list(self.notes),
        }


@lru_cache(maxsize=4)
def _load(path: str | None) -> dict:
    if path:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    text = resources.files("tmfcalc").joinpath("data/tmf_dataset.json").read_text(encoding="utf-8")
    return json.loads(text)


def dataset() -> dict:
    """The bundled dataset, or the file named by ``$TMFCALC_DATASET``."""
    return _load(os.environ.get(DATASET_ENV))


def reduce_degree(d: int) -> tuple[int, int]:
    """``(d0, k)`` with ``d = d0 + 576 k`` and ``d0`` in ``[-288, 288)``."""
    k, d0 = divmod(d + PERIOD // 2, PERIOD)
    return d0 - PERIOD // 2, k


def _contains(d: int) -> tuple[str, ...]:
    r = d % 8
    if r in (0, 4):
        return ("Z[x]",)
    if r in (1, 2):
        return ("(Z/2)[x]",)
    return ()


def _shift_label(name: str, k: int) -> str:
    return name if k == 0 else f"({name})*Delta^{24 * k}"


def lookup(d: int) -> TmfEntry:
    d0, k = reduce_degree(d)
    row = next((e for e in dataset()["entries"] if e["degree"] == d0), None)
    free = free_generator(d) if d % 4 == 0 else None
    notes = []
    if k:
        notes.append(f"reduced by periodicity to degree {d0}")
    if row is None:
        return TmfEntry(
            degree=d,
            free_generator=free,
            torsion=UNKNOWN,
            source="rule" if free else UNKNOWN,
            contains=_contains(d),
            connective_zero=d < 0,
            notes=tuple(notes),
        )
    return TmfEntry(
        degree=d,
        free_generator=free,
        torsion=row["group"] or UNKNOWN,
        torsion_generators=tuple(_shift_label(c, k) for c in row["classes"]),
        source="paper_table",
        theories=tuple(row["theories"]),
        contains=_contains(d),
        connective_zero=d < 0,
        citation=row["source"],
        notes=tuple(notes),
    )


def _toy_row(x: ManifoldInvariants) -> dict | None:
    if x.b2_plus is None:
        return None
    for row in dataset()["toy_images"]:
        if (row["b2_plus"], row["b2_minus"]) == (x.b2_plus, x.b2_minus):
            return row
    return None


def toy_image(x: ManifoldInvariants) -> TmfEntry:
    """``T[X]`` for the toy model: the entry at ``d = 3 b2+ - 2 b2-`` plus the tabulated class."""
    entry = lookup(x.toy_degree)
    row = _toy_row(x)
    if row is None:
        return entry
    return replace(entry, label=row["class"], citation=f"T1 row {row['manifold']}")


def toy_class(x: ManifoldInvariants) -> TorsionElement:
    """The toy image as a torsion element, unknown when ``X`` matches no tabulated row."""
    row = _toy_row(x)
    return parse_class(row["class"]) if row else TorsionElement.undetermined()


@dataclass(frozen=True)
class CounterexampleReport:
    manifold: str
    left_degree: int
    left_class: str
    left_group: str
    right_degree: int
    right: str
    factors: tuple[tuple[str, int, str], ...]
    equal: bool

    def to_dict(self) -> dict:
        return {
            "manifold": self.manifold,
            "left_degree": self.left_degree,
            "left_class": self.left_class,
            "left_group": self.left_group,
            "right_degree": self.right_degree,
            "right": self.right,
            "factors": [list(f) for f in self.factors],
            "equal": self.equal,
        }


def connected_sum_counterexample() -> CounterexampleReport:
    """Test ``T[X1 # X2] = T[X1] T[X2]`` on ``E(1) = CP2 # 9 CP2bar``; the two sides disagree."""
    cp2, cp2bar = make_named("CP2"), make_named("CP2bar")
    e1 = connected_sum(cp2, *([cp2bar] * 9))
    left = toy_image(e1)
    right = toy_class(cp2) * toy_class(cp2bar) ** 9
    left_cls = parse_class(left.label)
    return CounterexampleReport(
        manifold="E(1) = CP2 # 9 CP2bar",
        left_degree=left.degree,
        left_class=left.label,
        left_group=left.torsion,
        right_degree=cp2.toy_degree + 9 * cp2bar.toy_degree,
        right=str(right),
        factors=(("CP2", cp2.toy_degree, str(toy_class(cp2))), ("CP2bar", cp2bar.toy_degree, str(toy_class(cp2bar)))),
        equal=(not right.unknown and left_cls == right),
    )
