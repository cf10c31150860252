from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmfcalc import anomaly
from tmfcalc.errors import DegreeInconsistency, InvalidParameter
from tmfcalc.manifolds import make_elliptic_surface, make_named, make_V, make_Z, make_Zkm


def test_k3_degrees():
    k3 = make_named("K3")
    assert anomaly.tmf_degree("toy", k3) == -29
    assert anomaly.tmf_degree("hyper", k3) == 4
    assert anomaly.tmf_degree("vector", k3) == -4
    assert anomaly.tmf_degree("estring", k3) == 116


def test_anomaly_is_half_degree():
    x = make_Z(2, 3, 2)
    for t in ("hypermultiplet", "vector", "estring_rank1"):
        assert 2 * anomaly.gravitational_anomaly(t, x) == anomaly.tmf_degree(t, x)


def test_strict_estring_is_fractional():
    k3 = make_named("K3")
    assert 2 * anomaly.gravitational_anomaly("estring", k3, strict_paper=True) == Fraction(754, 5)
    with pytest.raises(DegreeInconsistency):
        anomaly.tmf_degree("estring", k3, strict_paper=True)


def test_unknown_theory():
    with pytest.raises(InvalidParameter):
        anomaly.get_theory("gravitino")
    with pytest.raises(InvalidParameter):
        anomaly.closed_form_degree("tensor", make_named("K3"))


def test_format_rational():
    assert anomaly.format_rational(Fraction(2)) == "2/1"
    assert anomaly.format_rational(Fraction(-3, 6)) == "-1/2"


@pytest.mark.parametrize("n", [3, 5, 7, 9])
@pytest.mark.parametrize("r", range(1, 9))
def test_family_closed_forms(n, r):
    assert anomaly.hyper_degree_Z(n, r) == anomaly.tmf_degree("hyper", make_Z(2, n, r))
    assert anomaly.hyper_degree_Z(n, r) == anomaly.tmf_degree("hyper", make_V(n, r))
    assert anomaly.estring_degree_Z(n, r) == anomaly.tmf_degree("estring", make_Z(2, n, r))


spin_manifolds = st.one_of(
    st.integers(1, 40).map(lambda r: make_elliptic_surface(2 * r)),
    st.tuples(st.sampled_from([3, 5, 7, 9, 11]), st.integers(1, 30)).map(lambda p: make_Z(2, *p)),
    st.tuples(st.sampled_from([3, 5, 7]), st.integers(1, 30)).map(lambda p: make_V(*p)),
    st.tuples(st.sampled_from([1, 3, 5, 7]), st.sampled_from([1, 3, 5, 7])).map(lambda p: make_Zkm(*p)),
)


@given(spin_manifolds, st.sampled_from(["hypermultiplet", "vector", "estring_rank1"]))
def test_engine_equals_closed_form(x, theory):
    assert anomaly.tmf_degree(theory, x) == anomaly.closed_form_degree(theory, x)
