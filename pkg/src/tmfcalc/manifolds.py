"""Closed oriented 4-manifolds represented by their numerical invariants.

Nothing here knows about smooth structures: knot surgery and logarithmic
transforms only leave a marker in the provenance string, because every
downstream formula reads off chi, sigma and the Betti numbers alone.

Expression grammar (used by the CLI and the golden tables)::

    E(n)          elliptic surface, chi = 12n, sigma = -8n
    EK(n)         knot surgery on E(n)
    F(n)          Hirzebruch surface
    X(g,n)        Sigma_{gn} bundle over Sigma_{1+g(g-1)n^(2g-2)}
    Xn(n)         Sigma_{3n} bundle over Sigma_{2n^2+1}
    Z(r;g,n)      X(g,n) fiber-summed with EK(2r) along Sigma_{f+b}
    V(r;n)        Xn(n) fiber-summed with EK(2r) along Sigma_{f+b}
    Zkm(k,m[,n])  Szabo's non-symplectic spin manifolds
    CP2 CP2bar K3 K3bar minusE8 halfK3 halfK3bar S4
    rev(M)  knot(M)  log(M)
    csum(M1, M2, ...)        connected sum; ``9*CP2bar`` means nine copies
    fsum(M1, M2; g=G)        fiber sum along a genus-G surface

``;`` and ``,`` are interchangeable as argument separators.
"""

from __future__ import annotations

import ast
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Any

from .errors import DegreeInconsistency, GenusMismatch, InvalidParameter, ParseError


def surface_euler(genus: int) -> int:
    """chi(Sigma_g) = 2 - 2g."""
    if genus < 0:
        raise InvalidParameter(f"genus must be non-negative, got {genus}")
    return 2 - 2 * genus


@dataclass(frozen=True)
class IntersectionForm:
    rank: int
    signature: int
    parity: str | None = None  # "even", "odd" or None when not determined
    matrix: tuple[tuple[int, ...], ...] | None = None

    def reversed(self) -> IntersectionForm:
        mat = None if self.matrix is None else tuple(tuple(-x for x in row) for row in self.matrix)
        return IntersectionForm(self.rank, -self.signature, self.parity, mat)


def _direct_sum(a: IntersectionForm | None, b: IntersectionForm | None) -> IntersectionForm | None:
    if a is None or b is None:
        return None
    if a.parity is None or b.parity is None:
        parity = None
    else:
        parity = "even" if a.parity == b.parity == "even" else "odd"
    mat = None
    if a.matrix is not None and b.matrix is not None and a.rank + b.rank <= 24:
        n = a.rank + b.rank
        rows = [[0] * n for _ in range(n)]
        for i, row in enumerate(a.matrix):
            rows[i][: a.rank] = row
        for i, row in enumerate(b.matrix):
            rows[a.rank + i][a.rank :] = row
        mat = tuple(tuple(r) for r in rows)
    return IntersectionForm(a.rank + b.rank, a.signature + b.signature, parity, mat)


@dataclass(frozen=True)
class ManifoldInvariants:
    """Invariant record of a closed oriented 4-manifold.

    ``b1``, ``b2_plus`` and ``b2_minus`` may be ``None`` for surface bundles
    whose first Betti number is not fixed by the recorded data.
    ``gluing_genera`` lists genera of square-zero surfaces available for
    fiber sums; ``None`` means unconstrained.
    """

    name: str
    euler: int
    signature: int
    b1: int | None
    b2_plus: int | None
    b2_minus: int | None
    spin: bool
    simply_connected: bool
    intersection_form: IntersectionForm | None = None
    provenance: str = ""
    gluing_genera: tuple[int, ...] | None = None
    family: str | None = None
    params: tuple = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.b1 is not None and self.b1 < 0:
            raise InvalidParameter("b1 must be non-negative")
        if self.simply_connected and self.b1 != 0:
            raise InvalidParameter(f"{self.name}: simply connected but b1 = {self.b1}")
        if self.b2_plus is not None and self.b2_minus is not None:
            if min(self.b2_plus, self.b2_minus) < 0:
                raise InvalidParameter(f"{self.name}: negative b2+-")
            if self.b2_plus - self.b2_minus != self.signature:
                raise InvalidParameter(f"{self.name}: b2+ - b2- != signature")
            if self.b1 is not None and self.euler != 2 - 2 * self.b1 + self.b2:
                raise InvalidParameter(f"{self.name}: chi != 2 - 2 b1 + b2")
        form = self.intersection_form
        if form is not None:
            if form.signature != self.signature:
                raise InvalidParameter(f"{self.name}: intersection form signature mismatch")
            if self.b2 is not None and form.rank != self.b2:
                raise InvalidParameter(f"{self.name}: intersection form rank != b2")
            if self.spin and form.parity == "odd":
                raise InvalidParameter(f"{self.name}: spin manifold with odd intersection form")

    @property
    def b2(self) -> int | None:
        if self.b2_plus is None or self.b2_minus is None:
            return None
        return self.b2_plus + self.b2_minus

    @property
    def holomorphic_euler(self) -> int:
        """chi_h = (chi + sigma) / 4; fractional values are an error."""
        q, r = divmod(self.euler + self.signature, 4)
        if r:
            raise DegreeInconsistency(
                f"{self.name}: chi + sigma = {self.euler + self.signature} is not divisible by 4"
            )
        return q

    @property
    def toy_degree(self) -> int:
        if self.b2_plus is None or self.b2_minus is None:
            raise DegreeInconsistency(f"{self.name}: b2+- unknown, toy degree undefined")
        return 3 * self.b2_plus - 2 * self.b2_minus

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["warnings"] = list(self.warnings)
        d["params"] = list(self.params)
        if self.gluing_genera is not None:
            d["gluing_genera"] = list(self.gluing_genera)
        if self.intersection_form is not None and self.intersection_form.matrix is not None:
            d["intersection_form"]["matrix"] = [list(r) for r in self.intersection_form.matrix]
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ManifoldInvariants:
        d = dict(d)
        form = d.get("intersection_form")
        if form is not None:
            mat = form.get("matrix")
            d["intersection_form"] = IntersectionForm(
                form["rank"], form["signature"], form.get("parity"),
                None if mat is None else tuple(tuple(r) for r in mat),
            )
        if d.get("gluing_genera") is not None:
            d["gluing_genera"] = tuple(d["gluing_genera"])
        d["params"] = tuple(d.get("params", ()))
        d["warnings"] = tuple(d.get("warnings", ()))
        return cls(**d)


def _simply_connected_record(name, euler, signature, spin, **kw) -> ManifoldInvariants:
    b2 = euler - 2
    if (b2 + signature) % 2:
        raise DegreeInconsistency(f"{name}: chi - 2 and sigma have different parity")
    bp, bm = (b2 + signature) // 2, (b2 - signature) // 2
    form = IntersectionForm(b2, signature, "even" if spin else "odd")
    return ManifoldInvariants(name, euler, signature, 0, bp, bm, spin, True, form, **kw)


# -- families -------------------------------------------------------------


def make_elliptic_surface(n: int) -> ManifoldInvariants:
    if n < 1:
        raise InvalidParameter(f"E(n) needs n >= 1, got {n}")
    name = f"E({n})"
    spin = n % 2 == 0
    return ManifoldInvariants(
        name, 12 * n, -8 * n, 0, 2 * n - 1, 10 * n - 1, spin, True,
        IntersectionForm(12 * n - 2, -8 * n, "even" if spin else "odd"),
        provenance=name, gluing_genera=(1,), family="E", params=(n,),
    )


def make_hirzebruch(n: int) -> ManifoldInvariants:
    if n < 0:
        raise InvalidParameter(f"F_n needs n >= 0, got {n}")
    form = IntersectionForm(2, 0, "even" if n % 2 == 0 else "odd", ((n, 1), (1, 0)))
    name = f"F({n})"
    return ManifoldInvariants(
        name, 4, 0, 0, 1, 1, n % 2 == 0, True, form,
        provenance=name, gluing_genera=(0,), family="F", params=(n,),
    )


_E8 = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, 0, -1, 0, 0, 2),
)

NAMED = ("CP2", "CP2bar", "K3", "K3bar", "minusE8", "halfK3", "halfK3bar", "S4")


def make_named(name: str) -> ManifoldInvariants:
    if name == "S4":
        return ManifoldInvariants("S4", 2, 0, 0, 0, 0, True, True, IntersectionForm(0, 0, "even", ()),
                                  provenance="S4", family="named", params=("S4",))
    if name == "CP2":
        return ManifoldInvariants("CP2", 3, 1, 0, 1, 0, False, True, IntersectionForm(1, 1, "odd", ((1,),)),
                                  provenance="CP2", family="named", params=("CP2",))
    if name == "K3":
        return replace(make_elliptic_surface(2), name="K3", provenance="K3")
    if name == "minusE8":
        # Freedman's E8 manifold, reversed: topological only, so not smooth spin
        form = IntersectionForm(8, -8, "even", tuple(tuple(-x for x in row) for row in _E8))
        return ManifoldInvariants("minusE8", 10, -8, 0, 0, 8, False, True, form,
                                  provenance="minusE8 (topological, non-smoothable)",
                                  family="named", params=("minusE8",))
    if name == "halfK3":
        # Enriques surface: pi_1 = Z/2, lattice H + (-E8) is even but w2 != 0
        return ManifoldInvariants("halfK3", 12, -8, 0, 1, 9, False, False, IntersectionForm(10, -8, "even"),
                                  provenance="halfK3 (Enriques surface)", gluing_genera=(1,),
                                  family="named", params=("halfK3",))
    if name.endswith("bar") and name[:-3] in NAMED:
        return replace(orientation_reverse(make_named(name[:-3])), name=name)
    raise InvalidParameter(f"unknown manifold name {name!r}; expected one of {', '.join(NAMED)}")


def _bundle_X_genera(g: int, n: int) -> tuple[int, int]:
    return g * n, 1 + g * (g - 1) * n ** (2 * g - 2)


def _check_X_params(g: int, n: int) -> None:
    if g < 2:
        raise InvalidParameter(f"X(g,n) needs g >= 2, got g={g}")
    if n < 3 or n % 2 == 0:
        raise InvalidParameter(f"X(g,n) needs odd n >= 3, got n={n}")


def _signature_X(g: int, n: int) -> int:
    s = Fraction(4, 3) * g * (g - 1) * (n * n - 1) * n ** (2 * g - 3)
    assert s.denominator == 1
    return int(s)


def make_surface_bundle_X(g: int, n: int) -> ManifoldInvariants:
    _check_X_params(g, n)
    f, b = _bundle_X_genera(g, n)
    name = f"X({g},{n})"
    return ManifoldInvariants(
        name, surface_euler(f) * surface_euler(b), _signature_X(g, n), None, None, None, True, False,
        provenance=f"bundle(Sigma_{f} -> Sigma_{b})", gluing_genera=(f, f + b), family="X", params=(g, n),
    )


def _check_Xn_params(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise InvalidParameter(f"Xn(n) needs odd n >= 3, got n={n}")


def _signature_Xn(n: int) -> int:
    s = Fraction(8, 3) * (n + 1) * n * (n - 1)
    assert s.denominator == 1
    return int(s)


def make_surface_bundle_Xn(n: int) -> ManifoldInvariants:
    _check_Xn_params(n)
    f, b = 3 * n, 2 * n * n + 1
    name = f"Xn({n})"
    return ManifoldInvariants(
        name, surface_euler(f) * surface_euler(b), _signature_Xn(n), None, None, None, True, False,
        provenance=f"bundle(Sigma_{f} -> Sigma_{b})", gluing_genera=(f, f + b), family="Xn", params=(n,),
    )


def z_r_bound(g: int, n: int) -> int:
    a = Fraction(g * (g - 1) * (n * n - 1) * n ** (2 * g - 3), 12)
    return min(a.numerator // a.denominator, 2 + g * n + g * (g - 1) * (n - 1) * n ** (2 * g - 3))


def v_r_bound(n: int) -> int:
    return min((n + 1) * n * (n - 1) // 6, 2 * n * n + n + 2)


def make_Z(g: int, n: int, r: int) -> ManifoldInvariants:
    """Z^r_{g,n} from the closed forms for its signature and Euler characteristic."""
    _check_X_params(g, n)
    if r < 1:
        raise InvalidParameter(f"Z needs r >= 1, got {r}")
    f, b = _bundle_X_genera(g, n)
    sigma = _signature_X(g, n) - 16 * r
    chi = 4 * g * n * (g * (g - 1) * n ** (2 * g - 2) + 1) + 24 * r
    warns = ()
    bound = z_r_bound(g, n)
    if r > bound:
        warns = (f"r={r} exceeds the irreducibility bound r <= {bound}",)
    return _simply_connected_record(
        f"Z({r};{g},{n})", chi, sigma, True,
        provenance=f"fsum(X({g},{n}),EK({2 * r});g={f + b})", gluing_genera=(f + b,),
        family="Z", params=(r, g, n), warnings=warns,
    )


def make_V(n: int, r: int) -> ManifoldInvariants:
    _check_Xn_params(n)
    if r < 1:
        raise InvalidParameter(f"V needs r >= 1, got {r}")
    f, b = 3 * n, 2 * n * n + 1
    sigma = _signature_Xn(n) - 16 * r
    chi = 12 * n * (2 * n * n + 1) + 24 * r
    warns = ()
    bound = v_r_bound(n)
    if r > bound:
        warns = (f"r={r} exceeds the irreducibility bound r <= {bound}",)
    return _simply_connected_record(
        f"V({r};{n})", chi, sigma, True,
        provenance=f"fsum(Xn({n}),EK({2 * r});g={f + b})", gluing_genera=(f + b,),
        family="V", params=(r, n), warnings=warns,
    )


def make_Zkm(k: int, m: int, n: int = 0) -> ManifoldInvariants:
    """Z(k,m)_n; the invariants do not depend on the log-transform label ``n``."""
    if k < 1 or m < 1 or k % 2 == 0 or m % 2 == 0:
        raise InvalidParameter(f"Z(k,m) is spin only for odd k, m >= 1; got k={k}, m={m}")
    if n < 0:
        raise InvalidParameter(f"Z(k,m)_n needs n >= 0, got {n}")
    sigma = -8 * (k + m) - 16
    chi = 4 * (k + m + 4) - sigma
    return _simply_connected_record(
        f"Zkm({k},{m},{n})", chi, sigma, True,
        provenance=f"Zkm({k},{m},{n})", gluing_genera=(1,), family="Zkm", params=(k, m, n),
    )


# -- operations -----------------------------------------------------------


def _unwrap(label: str, op: str) -> str | None:
    prefix = op + "("
    if label.startswith(prefix) and label.endswith(")"):
        return label[len(prefix):-1]
    return None


def orientation_reverse(x: ManifoldInvariants) -> ManifoldInvariants:
    name = _unwrap(x.name, "rev") or f"rev({x.name})"
    prov = _unwrap(x.provenance, "rev") or f"rev({x.provenance})"
    form = None if x.intersection_form is None else x.intersection_form.reversed()
    family = x.family
    if family is not None and family.startswith("rev:"):
        family = family[4:]
    elif family is not None:
        family = "rev:" + family
    return replace(
        x, name=name, provenance=prov, signature=-x.signature,
        b2_plus=x.b2_minus, b2_minus=x.b2_plus, intersection_form=form, family=family,
    )


def _opt_add(a, b):
    return None if a is None or b is None else a + b


def connected_sum(*parts: ManifoldInvariants) -> ManifoldInvariants:
    if not parts:
        return make_named("S4")
    out = parts[0]
    for y in parts[1:]:
        x = out
        out = ManifoldInvariants(
            f"{x.name} # {y.name}",
            x.euler + y.euler - 2,
            x.signature + y.signature,
            _opt_add(x.b1, y.b1),
            _opt_add(x.b2_plus, y.b2_plus),
            _opt_add(x.b2_minus, y.b2_minus),
            x.spin and y.spin,
            x.simply_connected and y.simply_connected,
            _direct_sum(x.intersection_form, y.intersection_form),
            provenance=f"csum({x.provenance},{y.provenance})",
        )
    return out


def _check_genus(x: ManifoldInvariants, genus: int) -> None:
    if x.gluing_genera is not None and genus not in x.gluing_genera:
        raise GenusMismatch(
            f"{x.name} declares gluing surfaces of genus {list(x.gluing_genera)}, not {genus}"
        )


def fiber_sum(
    x1: ManifoldInvariants,
    x2: ManifoldInvariants,
    genus: int,
    *,
    simply_connected: bool | None = None,
) -> ManifoldInvariants:
    """X1 #_f X2 along a genus-``genus`` surface of square zero.

    chi = chi1 + chi2 - 2 chi(Sigma_g); the signature is additive.  Spin is
    the conjunction of the inputs.  The result is taken to be simply
    connected when both inputs are, unless the caller overrides it.  Two
    elliptic surfaces summed along the torus fiber give E(m + n) exactly.
    """
    _check_genus(x1, genus)
    _check_genus(x2, genus)
    prov = f"fsum({x1.provenance},{x2.provenance};g={genus})"
    if genus == 1 and x1.family == "E" and x2.family == "E":
        e = make_elliptic_surface(x1.params[0] + x2.params[0])
        return replace(e, provenance=prov)
    chi = x1.euler + x2.euler - 2 * surface_euler(genus)
    sigma = x1.signature + x2.signature
    spin = x1.spin and x2.spin
    sc = (x1.simply_connected and x2.simply_connected) if simply_connected is None else simply_connected
    name = f"{x1.name} #f {x2.name}"
    if sc:
        return _simply_connected_record(name, chi, sigma, spin, provenance=prov, gluing_genera=(genus,))
    return ManifoldInvariants(name, chi, sigma, None, None, None, spin, False,
                              provenance=prov, gluing_genera=(genus,))


def knot_surgery(x: ManifoldInvariants) -> ManifoldInvariants:
    """Fintushel-Stern knot surgery: same invariants, new smooth structure.

    The knot is left free, so the record stops constraining gluing genera.
    """
    family, params = x.family, x.params
    name = f"knot({x.name})"
    if family == "E":
        family, name = "EK", f"EK({params[0]})"
    return replace(x, name=name, provenance=f"knot({x.provenance})", gluing_genera=None,
                   family=family, params=params)


def log_transform(x: ManifoldInvariants) -> ManifoldInvariants:
    return replace(x, name=f"log({x.name})", provenance=f"log({x.provenance})")


def check_compactification_eligibility(x: ManifoldInvariants) -> dict[str, Any]:
    """Which theories may be compactified on ``x`` with a free TMF part.

    Physical theories need a smooth spin manifold; simple connectivity
    stands in for torsion-free H_2.  The toy model accepts anything.
    """
    from .anomaly import PHYSICAL_THEORIES, tmf_degree

    degrees: dict[str, Any] = {}
    for name in PHYSICAL_THEORIES:
        try:
            d = tmf_degree(name, x)
        except DegreeInconsistency:
            degrees[name] = {"degree": None, "multiple_of_4": False}
        else:
            degrees[name] = {"degree": d, "multiple_of_4": d % 4 == 0}
    physical = x.spin and x.simply_connected
    return {
        "manifold": x.name,
        "spin": x.spin,
        "simply_connected": x.simply_connected,
        "physical_theories_allowed": physical,
        "toy_model_allowed": True,
        "theories": {
            name: dict(v, eligible=physical and v["multiple_of_4"]) for name, v in degrees.items()
        },
    }


# -- expression parsing ---------------------------------------------------

_CONSTRUCTORS = {
    "E": make_elliptic_surface,
    "EK": lambda n: knot_surgery(make_elliptic_surface(n)),
    "F": make_hirzebruch,
    "X": make_surface_bundle_X,
    "Xn": make_surface_bundle_Xn,
    "Z": lambda r, g, n: make_Z(g, n, r),
    "V": lambda r, n: make_V(n, r),
    "Zkm": make_Zkm,
}

_UNARY = {"rev": orientation_reverse, "knot": knot_surgery, "log": log_transform}


def parse_manifold(text: str) -> ManifoldInvariants:
    """Evaluate a manifold expression; see the module docstring for the grammar."""
    try:
        tree = ast.parse(text.replace(";", ",").strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse manifold expression {text!r}") from exc

    def as_int(node) -> int:
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -as_int(node.operand)
        raise ParseError(f"expected an integer in {text!r}")

    def ev(node) -> ManifoldInvariants:
        if isinstance(node, ast.Name):
            if node.id in NAMED:
                return make_named(node.id)
            raise ParseError(f"unknown manifold {node.id!r}")
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = node.func.id
            if fn in _CONSTRUCTORS:
                if node.keywords:
                    raise ParseError(f"{fn}() takes no keyword arguments")
                args = [as_int(a) for a in node.args]
                try:
                    return _CONSTRUCTORS[fn](*args)
                except TypeError as exc:
                    raise ParseError(f"wrong number of arguments to {fn}()") from exc
            if fn in _UNARY:
                if len(node.args) != 1:
                    raise ParseError(f"{fn}() takes one manifold")
                return _UNARY[fn](ev(node.args[0]))
            if fn == "csum":
                parts: list[ManifoldInvariants] = []
                for a in node.args:
                    if isinstance(a, ast.BinOp) and isinstance(a.op, ast.Mult):
                        k = as_int(a.left)
                        parts.extend([ev(a.right)] * k)
                    else:
                        parts.append(ev(a))
                return connected_sum(*parts)
            if fn == "fsum":
                if len(node.args) != 2:
                    raise ParseError("fsum() takes two manifolds")
                kw = {k.arg: as_int(k.value) for k in node.keywords}
                left, right = ev(node.args[0]), ev(node.args[1])
                if "g" in kw:
                    genus = kw["g"]
                else:
                    genus = _default_genus(left, right)
                return fiber_sum(left, right, genus)
        raise ParseError(f"unsupported manifold syntax in {text!r}")

    return ev(tree.body)


def _default_genus(a: ManifoldInvariants, b: ManifoldInvariants) -> int:
    if a.gluing_genera is None and b.gluing_genera is None:
        raise ParseError("fsum(): gluing genus not determined, pass g=...")
    if a.gluing_genera is None:
        common = set(b.gluing_genera)
    elif b.gluing_genera is None:
        common = set(a.gluing_genera)
    else:
        common = set(a.gluing_genera) & set(b.gluing_genera)
    if len(common) != 1:
        raise ParseError(f"fsum(): ambiguous gluing genus {sorted(common)}, pass g=...")
    return common.pop()
