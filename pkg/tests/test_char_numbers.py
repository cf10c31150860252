from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmfcalc.char_numbers import (
    CharData8,
    a_hat_2,
    a_hat_2_printed,
    report,
    signature_from_L2,
    solve_p2_from_signature,
)
from tmfcalc.errors import DegreeInconsistency


@pytest.mark.parametrize("p1,p2,sigma", [(0, -1440, -224), (0, 0, 0), (0, 45, 7)])
def test_signature(p1, p2, sigma):
    assert signature_from_L2(CharData8(p1, p2)) == sigma


@pytest.mark.parametrize("p1,p2,ahat", [(0, -1440, Fraction(1)), (0, 0, Fraction(0)), (24, -1440, Fraction(9792, 5760))])
def test_a_hat(p1, p2, ahat):
    assert a_hat_2(CharData8(p1, p2)) == ahat


def test_printed_variant():
    assert a_hat_2_printed(CharData8(0, -1440)) == 1
    assert a_hat_2_printed(CharData8(24, -1440)) != a_hat_2(CharData8(24, -1440))


def test_report():
    r = report(CharData8(0, -1440))
    assert r["signature"] == "-224/1" and r["a_hat_2"] == "1/1"
    assert r["signature_integral"] and r["a_hat_2_integral"] and r["variants_agree"]
    assert report(CharData8(24, -1440))["a_hat_2"] == "17/10"


def test_solve_p2():
    assert solve_p2_from_signature(-224) == -1440
    with pytest.raises(DegreeInconsistency):
        solve_p2_from_signature(1)


@given(st.integers(-10**6, 10**6), st.integers(-1000, 1000))
def test_roundtrip(sigma, p1):
    try:
        p2 = solve_p2_from_signature(sigma, p1)
    except DegreeInconsistency:
        assert (45 * sigma + p1 * p1) % 7
        return
    assert signature_from_L2(CharData8(p1, p2)) == sigma
