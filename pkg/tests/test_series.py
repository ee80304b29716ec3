import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import rationals, specs
from ggh.exact import Poly, eval_poly
from ggh.hypergeom import HypergeometricError, delta_vec, param_split, pfq_value
from ggh.operators import Kind, SystemSpec
from ggh.series import (
    COMPLEX,
    TruncatedSeries,
    gf_disc_checks,
    gf_exp_check,
    gf_full_checks,
    gf_phi_check,
    gf_rational_check,
    hyp0f_float,
    jensen_check,
    mh_l1_check,
    mh_normalized,
    mh_power_check,
    normalize_Q,
    q_argument,
    scaled_value,
    srivastava_check,
    t_series,
)

F = Fraction
SHIFT = SystemSpec.continuous((), 1, (1,))
HERMITE = SystemSpec.continuous((), 1, (0, F(-1, 2)))
LAGUERRE0 = SystemSpec.continuous((0,), 1, (1,))
CHARLIER = SystemSpec.discrete((), 1, (1,))


def _small(x):
    return TruncatedSeries.from_terms(dict(enumerate(x)), 8)


# series engine

def test_exp_of_t():
    e = t_series(6).exp()
    assert e.coeffs == tuple(F(1, math.factorial(k)) for k in range(7))


def test_geometric_times_one_minus_t():
    t = t_series(10)
    one_minus_t = TruncatedSeries.one(10) - t
    assert (t.geometric() * one_minus_t).coeffs == TruncatedSeries.one(10).coeffs


def test_engine_guards():
    with pytest.raises(ValueError):
        TruncatedSeries.one(4).exp()
    with pytest.raises(ValueError):
        TruncatedSeries.one(4).geometric()
    with pytest.raises(ValueError):
        t_series(3) + t_series(4)
    with pytest.raises(ValueError):
        TruncatedSeries((float("nan"),), 0, COMPLEX)


def test_complex_kind():
    s = TruncatedSeries.from_terms({1: 1j}, 4, COMPLEX).exp()
    assert s.coeffs[2] == pytest.approx(-0.5)


@given(st.lists(rationals(), min_size=1, max_size=6), st.lists(rationals(), min_size=1, max_size=6))
def test_exp_additive(a, b):
    A, B = _small([0, *a]), _small([0, *b])
    assert (A.exp() * B.exp()).coeffs == (A + B).exp().coeffs


@given(st.lists(rationals(), min_size=1, max_size=6))
def test_geometric_inverse(a):
    A = _small([0, *a])
    assert (A.geometric() * (TruncatedSeries.one(8) - A)).coeffs == TruncatedSeries.one(8).coeffs


@given(st.lists(rationals(), min_size=1, max_size=5), st.lists(rationals(), max_size=5))
def test_compose_matches_powers(a, cs):
    A = _small([0, *a])
    expect = TruncatedSeries.from_terms({}, 8)
    power = TruncatedSeries.one(8)
    for c in cs:
        expect = expect + power.scale(c)
        power = power * A
    assert A.compose_into(cs).coeffs == expect.coeffs


# normalisation

def test_normalize_examples():
    assert normalize_Q(SHIFT, 3) == Poly.monomial([1, 3, 3, 1])
    for m in range(6):
        assert normalize_Q(HERMITE, 2 * m)[0] == 1
    assert normalize_Q(LAGUERRE0, 2) == Poly.monomial([1, 2, F(1, 2)])


def test_normalize_degenerate_constant():
    with pytest.raises(ValueError, match=r"\(-1\)_2"):
        normalize_Q(SystemSpec.continuous((-2,), 1, (1,)), 2)


@given(specs(pure=True), st.integers(0, 12))
def test_normalized_form(spec, n):
    ps = param_split(spec, n)
    assume(ps.C != 0)
    Q = normalize_Q(spec, n)
    u = q_argument(spec)
    x = F(2, 3)
    if spec.kind is Kind.CONTINUOUS:
        assert eval_poly(Q, x) == x**ps.i * pfq_value([-ps.m], ps.S_hat, u * x**spec.l)
    else:
        psi_i = math.prod(x - k for k in range(ps.i))
        upper = [-ps.m, *delta_vec(spec.l, -x + ps.i)]
        assert eval_poly(Q, x) == psi_i * pfq_value(upper, ps.S_hat, u, ps.m)


# generating functions

def test_gf_exp_examples():
    assert gf_exp_check([], F(3, 7), 10).passed
    assert gf_exp_check([F(1, 2)], 1, 12).passed
    assert gf_exp_check([F(5, 3), 2], 0, 10).passed
    with pytest.raises(HypergeometricError):
        gf_exp_check([-1], 1, 5)


def test_srivastava_examples():
    rep = srivastava_check([], [], 1, 15)
    assert rep.passed and rep.data["lhs"][2] == F(-1, 2)  # L_2(1)
    assert srivastava_check([], [], 0, 8).data["lhs"] == [1] * 9
    assert srivastava_check([], [F(1, 2)], 1, 12).passed


def test_gf_phi_examples():
    rep = gf_phi_check(SHIFT, 0, 1, 10)
    assert rep.passed and rep.data["lhs"] == [F(2**n, math.factorial(n)) for n in range(11)]
    assert gf_phi_check(HERMITE, 0, 1, 14).passed
    rep = gf_phi_check(HERMITE, 0, 0, 12)
    assert rep.passed and rep.data["lhs"] == [F(1, math.factorial(k // 2)) if k % 2 == 0 else 0 for k in range(13)]


def test_gf_rational_examples():
    rep = gf_rational_check(SHIFT, 0, F(1, 2), 10)
    assert rep.passed and rep.data["lhs"] == [F(3, 2) ** n for n in range(11)]
    assert gf_rational_check(LAGUERRE0, 0, 1, 12).passed
    rep = gf_rational_check(HERMITE, 0, 0, 10)
    assert rep.passed and rep.data["lhs"] == [1 if k % 2 == 0 else 0 for k in range(11)]


def test_gf_disc_examples():
    assert all(r.passed for r in gf_disc_checks(CHARLIER, 0, 0, 10))
    assert all(r.passed for r in gf_disc_checks(CHARLIER, 0, 2, 10))
    s = SystemSpec.pure_power(Kind.DISCRETE, (), 1, 2)
    for i in range(2):
        assert all(r.passed for r in gf_disc_checks(s, i, 3, 10))


def test_gf_kind_guards():
    with pytest.raises(ValueError):
        gf_phi_check(CHARLIER, 0, 1, 5)
    with pytest.raises(ValueError):
        gf_disc_checks(HERMITE, 0, 1, 5)
    with pytest.raises(ValueError):
        gf_phi_check(SystemSpec.continuous((), 1, (1, 1)), 0, 1, 5)


def test_normalized_statement_exact():
    # with tau eta^l = 1 the argument constant is -1: Q = x^i 1F(-m; S_hat; -x^l)
    for d, l in [(0, 2), (1, 2), (0, 3), (2, 1)]:
        alphas = tuple(F(k + 1, 3) for k in range(d))
        spec = SystemSpec.pure_power(Kind.CONTINUOUS, alphas, F(1, l ** (d + 1)), l, 1)
        assert spec.tau * spec.eta**l == 1 and q_argument(spec) == -1
        for i in range(l):
            assert gf_phi_check(spec, i, F(3, 4), 12).passed
            assert gf_rational_check(spec, i, F(3, 4), 12).passed


def test_full_family_generating_functions():
    for spec in (HERMITE, SystemSpec.pure_power(Kind.DISCRETE, (F(1, 2),), F(-1, 3), 2)):
        assert all(r.passed for r in gf_full_checks(spec, F(2, 5), 10))


@given(st.lists(rationals().filter(lambda b: b > 0), max_size=3), rationals(), st.integers(0, 10))
def test_gf_exp_generic(lower, u, N):
    assert gf_exp_check(lower, u, N).passed


@given(st.lists(rationals(), max_size=2), st.lists(rationals().filter(lambda b: b > 0), max_size=2),
       rationals(), st.integers(0, 10))
def test_srivastava_generic(upper, lower, u, N):
    assert srivastava_check(upper, lower, u, N).passed


@given(specs(pure=True, max_d=1), rationals(), st.integers(0, 9))
def test_family_generating_functions(spec, x, N):
    for i in range(spec.l):
        try:
            if spec.kind is Kind.CONTINUOUS:
                reports = [gf_phi_check(spec, i, x, N), gf_rational_check(spec, i, x, N)]
            else:
                reports = gf_disc_checks(spec, i, x, N)
        except (HypergeometricError, ValueError):
            continue
        assert all(r.passed for r in reports)


# Mehler-Heine

def test_hyp0f_float():
    assert hyp0f_float([], 1.0) == pytest.approx(math.e, rel=1e-15)
    assert hyp0f_float([F(1, 2)], -0.25) == pytest.approx(math.cos(1.0), rel=1e-14)


def test_mh_shift_family():
    rep = mh_l1_check(SHIFT, 1, [50, 100, 200, 400], tol=4e-3)
    assert rep.passed and rep.deviations[-1] < 4e-3
    assert rep.values[-1] == pytest.approx((1 + 1 / 400) ** 400, rel=1e-13)
    zero = mh_l1_check(SHIFT, 0, [10, 20, 40])
    assert zero.deviations == [0.0, 0.0, 0.0] and zero.passed


def test_mh_laguerre():
    rep = mh_l1_check(LAGUERRE0, 1, [50, 100, 200, 400])
    assert rep.passed and rep.limit == pytest.approx(hyp0f_float([1], 1.0))


def test_mh_hermite_residues():
    spec = mh_normalized(HERMITE)
    reps = [mh_power_check(spec, 1, i, [25, 50, 100, 200]) for i in range(2)]
    assert all(r.passed for r in reps)
    assert reps[0].limit != reps[1].limit
    assert mh_power_check(spec, 0, 0, [25, 50, 100]).deviations == [0.0, 0.0, 0.0]


def test_mh_preconditions():
    with pytest.raises(ValueError):
        mh_l1_check(HERMITE, 1, [10])
    with pytest.raises(ValueError):
        mh_power_check(HERMITE, 1, 0, [10])
    with pytest.raises(ValueError):
        mh_power_check(CHARLIER, 1, 0, [10])


def test_mh_reports_failure():
    rep = mh_l1_check(SHIFT, 1, [5, 10, 20], tol=1e-6)
    assert not rep.passed and "final deviation" in rep.violations[0]


def test_scaled_value_exact():
    spec = mh_normalized(HERMITE)
    m, x = 3, F(1, 2)
    Q = normalize_Q(spec, 2 * m + 1)
    # m^{1/2} Q_{2m+1}(x / m^{1/2}) evaluated termwise: only odd powers occur
    expect = sum(c * x**k / F(m) ** ((k - 1) // 2) for k, c in enumerate(Q.coeffs) if c)
    assert scaled_value(spec, 2 * m + 1, x) == expect


def test_jensen():
    assert jensen_check(SystemSpec.continuous((F(1, 2), F(-1, 3)), F(1, 4), (1,)), 20).passed
    assert jensen_check(LAGUERRE0, 20).passed
