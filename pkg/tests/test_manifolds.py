"""Manifold invariants.

Closed forms for Z, V and Z(k,m) are checked against an explicit fiber-sum
construction, which is an independent path to the same numbers.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmfcalc.errors import GenusMismatch, InvalidParameter, ParseError
from tmfcalc.manifolds import (
    ManifoldInvariants,
    check_compactification_eligibility,
    connected_sum,
    fiber_sum,
    knot_surgery,
    make_elliptic_surface,
    make_named,
    make_surface_bundle_X,
    make_surface_bundle_Xn,
    make_V,
    make_Z,
    make_Zkm,
    orientation_reverse,
    parse_manifold,
    surface_euler,
    v_r_bound,
    z_r_bound,
)


@pytest.mark.parametrize("n", range(1, 13))
def test_elliptic_surface(n):
    e = make_elliptic_surface(n)
    assert (e.euler, e.signature) == (12 * n, -8 * n)
    assert e.b2 == 12 * n - 2
    assert e.spin == (n % 2 == 0)
    assert e.holomorphic_euler == n


def test_named_surfaces():
    k3 = make_named("K3")
    assert (k3.b2_plus, k3.b2_minus, k3.euler, k3.signature) == (3, 19, 24, -16)
    assert make_named("K3bar").b2_plus == 19
    assert (make_named("CP2").b2_plus, make_named("CP2").b2_minus) == (1, 0)
    assert make_named("minusE8").b2_minus == 8
    assert make_named("halfK3").euler == 12 and not make_named("halfK3").simply_connected
    with pytest.raises(InvalidParameter):
        make_named("RP4")


@pytest.mark.parametrize("g,n,f,b", [(2, 3, 6, 19), (2, 5, 10, 51)])
def test_bundle_X_genera(g, n, f, b):
    x = make_surface_bundle_X(g, n)
    assert x.gluing_genera == (f, f + b)
    assert x.euler == surface_euler(f) * surface_euler(b)


@pytest.mark.parametrize("n,f,b", [(3, 9, 19), (5, 15, 51)])
def test_bundle_Xn_genera(n, f, b):
    x = make_surface_bundle_Xn(n)
    assert x.gluing_genera == (f, f + b)


@pytest.mark.parametrize("g", [2, 3])
@pytest.mark.parametrize("n", [3, 5, 7, 9])
@pytest.mark.parametrize("r", [1, 2, 5, 12])
def test_Z_closed_form_matches_fiber_sum(g, n, r):
    x = make_surface_bundle_X(g, n)
    ek = knot_surgery(make_elliptic_surface(2 * r))
    built = fiber_sum(x, ek, x.gluing_genera[1])
    z = make_Z(g, n, r)
    assert (z.euler, z.signature) == (built.euler, built.signature)
    assert z.spin and built.spin


@pytest.mark.parametrize("n", [3, 5, 7])
@pytest.mark.parametrize("r", [1, 3, 10])
def test_V_closed_form_matches_fiber_sum(n, r):
    x = make_surface_bundle_Xn(n)
    built = fiber_sum(x, knot_surgery(make_elliptic_surface(2 * r)), x.gluing_genera[1])
    v = make_V(n, r)
    assert (v.euler, v.signature) == (built.euler, built.signature)


@pytest.mark.parametrize("k,m", [(1, 3), (3, 3), (1, 7), (3, 11), (5, 9)])
def test_Zkm_equals_torus_sum(k, m):
    built = fiber_sum(make_Zkm(1, 1), make_elliptic_surface(k + m - 2), 1)
    z = make_Zkm(k, m)
    assert (z.euler, z.signature) == (built.euler, built.signature)


def test_r_bounds():
    assert z_r_bound(2, 3) == 4
    assert z_r_bound(2, 5) == 20
    assert v_r_bound(3) == 4
    assert make_Z(2, 3, 5).warnings
    assert not make_Z(2, 3, 4).warnings


def test_elliptic_fiber_sum_is_elliptic():
    s = fiber_sum(make_elliptic_surface(2), make_elliptic_surface(8), 1)
    e = make_elliptic_surface(10)
    assert (s.name, s.euler, s.signature, s.spin, s.gluing_genera) == (e.name, e.euler, e.signature, e.spin, e.gluing_genera)


def test_genus_mismatch():
    with pytest.raises(GenusMismatch):
        fiber_sum(make_elliptic_surface(2), make_surface_bundle_X(2, 3), 25)


def test_knot_surgery_keeps_invariants():
    e = make_elliptic_surface(4)
    k = knot_surgery(e)
    assert (k.euler, k.signature, k.b2_plus) == (e.euler, e.signature, e.b2_plus)
    assert k.name == "EK(4)" and k.gluing_genera is None


def test_validation():
    with pytest.raises(InvalidParameter):
        ManifoldInvariants("bad", 4, 1, 0, 1, 1, False, True)
    with pytest.raises(InvalidParameter):
        make_Zkm(2, 3)
    with pytest.raises(InvalidParameter):
        make_surface_bundle_X(2, 4)


@pytest.mark.parametrize(
    "expr,chi,sigma",
    [
        ("E(2)", 24, -16),
        ("rev(K3)", 24, 16),
        ("csum(CP2, 9*CP2bar)", 12, -8),
        ("Z(2;2,3)", 504, 32),
        ("fsum(X(2,3),EK(6);g=25)", 528, 16),
        ("fsum(E(2),E(4))", 72, -48),
        ("log(knot(E(6)))", 72, -48),
        ("V(3;3)", 756, 16),
    ],
)
def test_parse_manifold(expr, chi, sigma):
    x = parse_manifold(expr)
    assert (x.euler, x.signature) == (chi, sigma)


@pytest.mark.parametrize("bad", ["E(", "Foo", "E(1,2)", "fsum(E(2))", "X(2,3)+1", "fsum(X(2,3),EK(4))"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_manifold(bad)


def test_eligibility():
    k3 = check_compactification_eligibility(make_named("K3"))
    assert k3["physical_theories_allowed"]
    assert k3["theories"]["hypermultiplet"]["degree"] == 4
    cp2 = check_compactification_eligibility(make_named("CP2"))
    assert not cp2["physical_theories_allowed"] and cp2["toy_model_allowed"]


def test_dict_roundtrip():
    for expr in ("K3", "minusE8", "Z(3;2,5)", "X(2,3)", "F(1)"):
        x = parse_manifold(expr)
        assert ManifoldInvariants.from_dict(x.to_dict()) == x


simple = st.sampled_from(["CP2", "CP2bar", "K3", "K3bar", "S4", "minusE8", "E(1)", "E(3)", "F(0)", "F(1)"])


@given(simple)
def test_reverse_is_involution(name):
    x = parse_manifold(name)
    assert orientation_reverse(orientation_reverse(x)) == x


@given(st.lists(simple, min_size=1, max_size=5))
def test_toy_degree_additive_under_connected_sum(names):
    parts = [parse_manifold(n) for n in names]
    total = connected_sum(*parts)
    assert total.toy_degree == sum(p.toy_degree for p in parts)
    assert total.euler == sum(p.euler for p in parts) - 2 * (len(parts) - 1)
