import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmfcalc import qseries
from tmfcalc.errors import InvalidParameter, ParseError
from tmfcalc.mf_ring import (
    MFMonomial,
    canonical,
    canonical_coefficient,
    equal_up_to_j,
    format_monomial,
    normalize,
    parse_monomial,
    to_qseries,
)


def test_e4_cubed_becomes_j_delta():
    assert normalize(1, 3, 0, 0) == MFMonomial(1, 1, 0, 0, 1)
    assert normalize(1, 4, 0, 0) == MFMonomial(1, 1, 1, 0, 1)
    assert normalize(1, 6, 0, 0) == MFMonomial(1, 2, 0, 0, 2)


def test_e6_squared_is_rejected_outside_star():
    with pytest.raises(InvalidParameter):
        normalize(1, 0, 2, 0)
    assert normalize(1, 0, 3, 0, reduce_e6=True).e6_power == 1


def test_weight_and_degree():
    m = parse_monomial("2*E4^2*E6/Delta^12")
    assert m.weight == 8 + 6 - 144
    assert m.degree == 2 * m.weight


def test_canonical_coefficients_from_tables():
    assert canonical_coefficient(0, 1, 0) == 2      # 2E6
    assert canonical_coefficient(1, 0, 0) == 1      # E4
    assert canonical_coefficient(0, 0, 2) == 12     # 12 Delta^2
    assert canonical_coefficient(0, 0, 1) == 24
    assert canonical_coefficient(0, 0, 0) == 1
    assert canonical_coefficient(0, 0, -5) == 24


def test_j_is_invisible_to_comparison():
    assert equal_up_to_j(parse_monomial("(j*Delta)^2"), parse_monomial("12*Delta^2"))
    assert equal_up_to_j(parse_monomial("E4^3/Delta^3"), parse_monomial("12/Delta^2"))
    assert not equal_up_to_j(parse_monomial("E4"), parse_monomial("E4^2"))
    assert canonical(parse_monomial("j*E4*E6/Delta^137")) == parse_monomial("2*E4*E6/Delta^137")


@pytest.mark.parametrize(
    "text",
    ["2*E4^2*E6/Delta", "12*Delta^2", "E4", "2*E6", "E4^2*Delta", "j*Delta", "-E4", "1", "12/Delta^2",
     "2*E4*E6/Delta^137", "j^2*E4^2*E6*Delta^3"],
)
def test_format_parse_roundtrip(text):
    m = parse_monomial(text)
    assert format_monomial(m) == text
    assert parse_monomial(format_monomial(m)) == m


@pytest.mark.parametrize("bad", ["E4/E6", "1/j", "E8", "E4^x", "2*E4 +", "E4^(1/2)", "3/2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_monomial(bad)


def test_qexpansion_j_delta_equals_e4_cubed():
    n = 40
    jd = to_qseries(parse_monomial("j*Delta"), n)
    e4c = qseries.eisenstein_E4(n) ** 3
    assert qseries.equal_to_order(jd, e4c, n)


def test_qexpansion_negative_delta_power():
    s = to_qseries(parse_monomial("E4/Delta"), 10)
    assert s.min_exponent == -1
    assert s[-1] == 1 and s[0] == 240 + 24
    assert s.truncation_order == 10


monos = st.builds(
    lambda c, j, p, e, m: MFMonomial(c, j, p, e, m),
    st.integers(-30, 30).filter(bool), st.integers(0, 2), st.integers(0, 2), st.integers(0, 1), st.integers(-50, 50),
)


@given(monos)
def test_roundtrip_property(m):
    assert parse_monomial(format_monomial(m)) == m


@given(monos, monos)
def test_product_adds_degree(a, b):
    if a.e6_power and b.e6_power:
        with pytest.raises(InvalidParameter):
            a * b
    else:
        assert (a * b).degree == a.degree + b.degree


@given(monos)
def test_canonical_is_idempotent_and_degree_preserving(m):
    c = canonical(m)
    assert canonical(c) == c
    assert c.degree == m.degree
    assert c.j_power == 0
