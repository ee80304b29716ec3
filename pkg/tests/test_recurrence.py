from fractions import Fraction
from math import prod

from hypothesis import given
from hypothesis import strategies as st

from conftest import specs
from ggh.exact import Poly
from ggh.operators import Kind, SystemSpec, build_P, hahn_shift
from ggh.recurrence import (
    bandwidth_check,
    claimed_band,
    expand_in_family,
    fit_gamma_degrees,
    recurrence_row,
    recurrence_table,
)

F = Fraction
HERMITE = SystemSpec.continuous((), 1, (0, F(-1, 2)))


def test_expand_examples():
    assert expand_in_family(HERMITE, build_P(HERMITE, 5)) == [0, 0, 0, 0, 0, 1]
    assert expand_in_family(HERMITE, Poly.monomial([1])) == [1]
    assert expand_in_family(HERMITE, Poly.monomial([0, 0, 1])) == [1, 0, 1]


def test_hermite_row():
    assert recurrence_row(HERMITE, 3) == [0, 3, 0, 0]


def test_gould_hopper_rows():
    for l, tau in [(2, F(1)), (3, F(2)), (4, F(-1, 3))]:
        s = SystemSpec.pure_power(Kind.CONTINUOUS, (), 1, l, tau)
        for n in range(12):
            row = recurrence_row(s, n)
            expect = -tau * l * prod(n - s_ for s_ in range(l - 1))
            for j, g in enumerate(row):
                assert g == (expect if j == l - 1 else 0)


def test_intro_rows():
    for l in (2, 3, 4):
        s = SystemSpec.pure_power(Kind.CONTINUOUS, (), 1, l, F(-1, l))
        for n in range(12):
            row = recurrence_row(s, n) + [F(0)] * l
            assert row[l - 1] == prod(n - s_ for s_ in range(l - 1))
            assert not any(row[: l - 1]) and not any(row[l:])


def test_claimed_band():
    assert claimed_band(SystemSpec.continuous((0,), 1, (1,))) == 1
    assert claimed_band(SystemSpec.pure_power(Kind.CONTINUOUS, (0,), 1, 2)) == 3
    assert claimed_band(SystemSpec.pure_power(Kind.DISCRETE, (), 1, 2)) == 2
    assert claimed_band(SystemSpec.pure_power(Kind.DISCRETE, (1,), 1, 2)) == 3


def test_observed_bands():
    cases = [
        (SystemSpec.continuous((0,), 1, (1,)), 1),
        (SystemSpec.pure_power(Kind.CONTINUOUS, (F(1, 2),), 1, 2), 3),
        (SystemSpec.pure_power(Kind.DISCRETE, (), F(1, 3), 2), 2),
    ]
    for spec, band in cases:
        rep = bandwidth_check(spec, 25)
        assert rep.passed and rep.data["observed_band"] == band


def test_csv_table():
    text = recurrence_table(HERMITE, 3).to_csv()
    assert text.splitlines() == ["n,gamma_0,gamma_1", "0,0,0", "1,0,1", "2,0,2", "3,0,3"]


def test_fit_degrees_hermite():
    assert fit_gamma_degrees(HERMITE, 10) == {0: -1, 1: 1}


@given(specs(), st.integers(0, 10))
def test_band_holds(spec, n):
    row = recurrence_row(spec, n)
    assert not any(row[claimed_band(spec) + 1 :])


@given(specs(max_l=2), st.integers(0, 8))
def test_hahn_shift_keeps_band(spec, n):
    shifted = hahn_shift(spec)
    assert claimed_band(shifted) == claimed_band(spec)
    assert bandwidth_check(shifted, n).passed
