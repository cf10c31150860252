import json
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmfcalc import tmf_groups
from tmfcalc.errors import NoFreePart, ParseError
from tmfcalc.manifolds import make_named, parse_manifold
from tmfcalc.mf_ring import format_monomial
from tmfcalc.tmf_groups import (
    ETA,
    NU,
    PERIOD,
    TorsionElement,
    connected_sum_counterexample,
    free_generator,
    lookup,
    parse_class,
    reduce_degree,
    toy_class,
    toy_image,
)


@pytest.mark.parametrize(
    "d,text",
    [(4, "2*E4^2*E6/Delta"), (48, "12*Delta^2"), (-3268, "2*E4*E6/Delta^137"), (0, "1"), (24, "24*Delta"),
     (8, "E4"), (12, "2*E6"), (-16, "E4/Delta"), (-80, "E4^2/Delta^4")],
)
def test_free_generator_examples(d, text):
    assert format_monomial(free_generator(d)) == text


@pytest.mark.parametrize("d", [1, 2, 3, 6, -15, -29, 51])
def test_no_free_part(d):
    with pytest.raises(NoFreePart):
        free_generator(d)


def brute_force_generator(d):
    """Search all (p, eps, m) directly and apply the coefficient rule."""
    w = d // 2
    hits = [(p, e, m) for p in range(3) for e in range(2) for m in range(w // 12 - 2, w // 12 + 3)
            if 4 * p + 6 * e + 12 * m == w]
    assert len(hits) == 1
    p, e, m = hits[0]
    coeff = 2 if e else (24 // gcd(24, m) if p == 0 else 1)
    return coeff, p, e, m


@given(st.integers(-25_000, 25_000).map(lambda k: 4 * k))
def test_free_generator_matches_brute_force(d):
    g = free_generator(d)
    assert g.degree == d
    assert g.j_power == 0
    assert (g.coeff, g.e4_power, g.e6_power, g.delta_power) == brute_force_generator(d)


def test_torsion_relations():
    assert (ETA**4).is_zero()
    assert (NU**4).is_zero()
    assert (ETA * 2).is_zero()
    assert (NU * 24).is_zero()
    assert (NU**2 * 2).is_zero()
    assert NU * 12 == ETA**3
    assert str(ETA**3) == "eta^3"
    assert (ETA**3 * NU).is_zero()
    assert (ETA * NU).unknown
    assert str(ETA * NU) == "unknown"
    assert (TorsionElement.zero() * (ETA * NU)).is_zero()


@pytest.mark.parametrize("text", ["eta", "nu*Delta^2", "eta*E4/Delta", "eta*Delta", "0", "E4/Delta"])
def test_class_roundtrip(text):
    assert str(parse_class(text)) == text


@pytest.mark.parametrize("bad", ["eta/nu", "eta +", "foo"])
def test_class_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_class(bad)


T8 = {16: "Z[x]", 17: "Z/2 ⊕ (Z/2)[x]", 18: "(Z/2)[x]", 19: "0", 20: "Z/24 ⊕ Z[x]", 21: "Z/2", 22: "Z/2",
      23: "0", 28: "Z/2 ⊕ Z[x]", 29: "0", 30: "Z/3", 31: "0", 34: "Z/2 ⊕ (Z/2)[x]", -21: "0",
      -22: "(Z/2)[x]", -23: "(Z/2)[x]", -45: "Z/24"}


@pytest.mark.parametrize("d,group", sorted(T8.items()))
def test_table8_lookup_and_period(d, group):
    e = lookup(d)
    assert e.group == group and e.source == "paper_table"
    for k in (-2, -1, 1, 3):
        s = lookup(d + k * PERIOD)
        assert (s.group, s.theories, s.source) == (e.group, e.theories, e.source)


def test_shifted_labels():
    e = lookup(-45 + PERIOD)
    assert e.torsion_generators == ("(nu/Delta^2)*Delta^24",)
    assert e.notes


def test_unknown_degree():
    e = lookup(5)
    assert e.source == "unknown" and e.group == "unknown" and e.free_generator is None
    e = lookup(40)
    assert e.source == "rule" and format_monomial(e.free_generator) == "E4^2*Delta"


@given(st.integers(-10**6, 10**6))
def test_reduce_degree(d):
    d0, k = reduce_degree(d)
    assert -288 <= d0 < 288 and d0 + PERIOD * k == d


@pytest.mark.parametrize(
    "name,degree,cls",
    [("F(0)", 1, "eta"), ("F(1)", 1, "eta"), ("minusE8", -16, "E4/Delta"), ("CP2", 3, "nu"),
     ("CP2bar", -2, "0"), ("K3", -29, "0"), ("K3bar", 51, "nu*Delta^2"), ("halfK3", -15, "eta*E4/Delta"),
     ("E(1)", -15, "eta*E4/Delta"), ("rev(halfK3)", 25, "eta*Delta")],
)
def test_toy_images(name, degree, cls):
    x = parse_manifold(name)
    e = toy_image(x)
    assert e.degree == degree and e.label == cls
    assert str(toy_class(x)) == cls


def test_counterexample():
    rep = connected_sum_counterexample()
    assert rep.left_degree == -15 == rep.right_degree
    assert rep.left_group == "(Z/2)[x]"
    assert rep.left_class == "eta*E4/Delta"
    assert rep.right == "0"
    assert not rep.equal


def test_untabulated_toy_class_is_unknown():
    assert toy_class(parse_manifold("E(3)")).unknown
    assert toy_class(make_named("S4")).is_zero() or toy_class(make_named("S4")).unknown


def test_dataset_override(tmp_path, monkeypatch):
    data = tmf_groups.dataset()
    data = json.loads(json.dumps(data))
    data["entries"] = [{"degree": 5, "group": "Z/7", "classes": [], "theories": [], "source": "test"}]
    path = tmp_path / "ds.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    monkeypatch.setenv(tmf_groups.DATASET_ENV, str(path))
    assert lookup(5).group == "Z/7"
    assert lookup(16).group == "unknown"
    monkeypatch.delenv(tmf_groups.DATASET_ENV)
    assert lookup(16).group == "Z[x]"
