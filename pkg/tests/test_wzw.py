from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmfcalc.errors import InvalidParameter, ParseError, PoleError
from tmfcalc.wzw import algebras, central_charge, parse_algebra, search_by_central_charge

# (dim, h_dual) from the standard tables
TABLE = {"A1": (3, 2), "A4": (24, 5), "B2": (10, 3), "C2": (10, 3), "B3": (21, 5), "C3": (21, 4),
         "D4": (28, 6), "D5": (45, 8), "B22": (990, 43), "G2": (14, 4), "F4": (52, 9), "E6": (78, 12),
         "E7": (133, 18), "E8": (248, 30)}


@pytest.mark.parametrize("name,data", sorted(TABLE.items()))
def test_dim_and_dual_coxeter(name, data):
    g = parse_algebra(name)
    assert (g.dim, g.dual_coxeter) == data


def test_examples():
    assert central_charge(parse_algebra("B2"), -23) == Fraction(23, 2)
    assert central_charge(parse_algebra("B22"), 1) == Fraction(45, 2)
    assert central_charge(parse_algebra("E8"), 1) == 8
    assert all(central_charge(g, 0) == 0 for g in algebras(6))


def test_pole():
    with pytest.raises(PoleError):
        central_charge(parse_algebra("B2"), -3)


def brute_force(target, max_rank, lo, hi):
    out = []
    for g in algebras(max_rank):
        for k in range(lo, hi + 1):
            if k != -g.dual_coxeter and central_charge(g, k) == target:
                out.append((g.label, k))
    return out


@pytest.mark.parametrize("target", [Fraction(23, 2), Fraction(45, 2), Fraction(0), Fraction(1), Fraction(26), Fraction(-2)])
def test_search_matches_brute_force(target):
    got = [(g.label, k) for g, k in search_by_central_charge(target, 8, (-60, 60))]
    assert got == brute_force(target, 8, -60, 60)


def test_criterion_pairs():
    a = [(g.label, k) for g, k in search_by_central_charge("23/2", 4, (-30, 30))]
    assert ("B2", -23) in a and ("C2", -23) in a
    b = [(g.label, k) for g, k in search_by_central_charge(Fraction(45, 2))]
    assert ("B3", -75) in b and ("B22", 1) in b


@given(st.fractions(min_value=-50, max_value=50, max_denominator=12))
def test_B2_C2_co_occur(target):
    labels = {(g.label, k) for g, k in search_by_central_charge(target, 3, (-100, 100))}
    b2 = {k for lab, k in labels if lab == "B2"}
    c2 = {k for lab, k in labels if lab == "C2"}
    assert b2 == c2


@given(st.sampled_from(algebras(10)), st.integers(-200, 200))
def test_bound(g, k):
    if k == -g.dual_coxeter:
        return
    assert abs(central_charge(g, k)) == Fraction(g.dim * abs(k), abs(k + g.dual_coxeter))


def test_errors():
    with pytest.raises(ParseError):
        parse_algebra("Q7")
    with pytest.raises(InvalidParameter):
        parse_algebra("D2")
    with pytest.raises(InvalidParameter):
        search_by_central_charge(1, 0)
