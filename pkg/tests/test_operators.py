from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import specs
from ggh.exact import Basis, Poly, to_monomial
from ggh.operators import (
    Kind,
    LoweringOp,
    SpecError,
    SystemSpec,
    apply_L,
    build_P,
    degeneration_check,
    dumps_spec,
    eigen_check,
    g_step,
    gl_power_coeff,
    gl_power_coeff_closed,
    hahn_check,
    hahn_shift,
    loads_spec,
    spec_from_dict,
)

HERMITE = SystemSpec.continuous((), 1, (0, Fraction(-1, 2)))
LAGUERRE0 = SystemSpec.continuous((0,), 1, (1,))


def test_g_step():
    assert g_step(SystemSpec.continuous(), 3) == 3
    assert g_step(SystemSpec.continuous((0,)), 3) == 9
    assert g_step(LAGUERRE0, 0) == 0


def test_gl_power_coeff_examples():
    s = SystemSpec.pure_power(Kind.CONTINUOUS, (), 1, 2)
    assert gl_power_coeff(s, 4, 1) == 12
    assert gl_power_coeff(s, 4, 2) == 24
    t = SystemSpec.pure_power(Kind.CONTINUOUS, (Fraction(1, 2),), 1, 2)
    assert gl_power_coeff(t, 7, 2) == gl_power_coeff_closed(t, 7, 2) == Fraction(2027025, 2)


def test_build_P_examples():
    assert build_P(SystemSpec.continuous(), 3) == Poly.monomial([1, 3, 3, 1])
    assert build_P(HERMITE, 4) == Poly.monomial([3, 0, -6, 0, 1])
    rho = Fraction(2, 7)
    assert build_P(SystemSpec.discrete((), rho, (1,)), 1) == Poly.falling([rho, 1])


def test_apply_L_examples():
    assert apply_L(LAGUERRE0, build_P(LAGUERRE0, 1)) == Poly.monomial([1, 1])
    p4 = Poly.monomial([3, 0, -6, 0, 1])
    assert apply_L(HERMITE, p4) == p4.scale(4)
    assert apply_L(LAGUERRE0, Poly.monomial([1])) == Poly.monomial([])
    with pytest.raises(ValueError, match="basis"):
        apply_L(LAGUERRE0, Poly.falling([0, 1]))


def test_eigen_check_examples():
    gh = SystemSpec.pure_power(Kind.CONTINUOUS, (), 1, 3, Fraction(2, 3))
    assert eigen_check(gh, 25).passed
    assert eigen_check(SystemSpec.discrete((), Fraction(3, 2), (1,)), 25).passed
    assert eigen_check(gh, 0).passed


def test_hahn_shift_examples():
    assert hahn_shift(LAGUERRE0).alphas == (1,)
    assert hahn_shift(HERMITE) == HERMITE
    s = SystemSpec.continuous((Fraction(1, 2), Fraction(-1, 3)))
    assert hahn_shift(s).alphas == (Fraction(3, 2), Fraction(2, 3))


def test_hahn_check_examples():
    assert hahn_check(HERMITE, 10).passed
    assert hahn_check(LAGUERRE0, 12).passed
    assert hahn_check(SystemSpec.discrete((Fraction(2, 3),), Fraction(-1, 2), (1,)), 15).passed
    with pytest.raises(ValueError):
        hahn_check(HERMITE, 0)


def test_negative_integer_root_truncates_the_chain():
    # G psi_3 = 0 when alpha = -3, so P_n only reaches down to psi_3
    for kind in Kind:
        spec = SystemSpec(kind, (-3,), 1, (1,))
        assert build_P(spec, 3) == Poly.psi(3, spec.basis)
        assert build_P(spec, 4) == Poly(spec.basis, (0, 0, 0, 4, 1))
        rep = degeneration_check(spec, 8)
        assert rep.params["roots"] == [3]
        assert rep.data["span_psi_k_to_psi_n"]
        assert not rep.passed and rep.violations[0].startswith("P_4 != psi_4")


def test_degeneration_without_roots():
    assert degeneration_check(LAGUERRE0, 5).passed


def test_spec_validation():
    with pytest.raises(SpecError, match="rho must be nonzero") as err:
        SystemSpec.continuous((), "0/1", (1,))
    assert err.value.field == "rho"
    with pytest.raises(SpecError) as err:
        SystemSpec.continuous((), 1, (1, 0))
    assert err.value.field == "q"
    with pytest.raises(SpecError) as err:
        SystemSpec("sideways", (), 1, (1,))
    assert err.value.field == "kind"
    with pytest.raises(SpecError) as err:
        spec_from_dict({"kind": "continuous", "alphas": [0.5], "rho": "1", "q": ["1"]})
    assert err.value.field == "alphas"
    with pytest.raises(SpecError):
        loads_spec("{not json")
    with pytest.raises(SpecError) as err:
        spec_from_dict({"kind": "continuous", "alphas": [], "q": ["1"]})
    assert err.value.field == "rho"


def test_lowering_op_rejects_raising_rows():
    with pytest.raises(ValueError):
        LoweringOp((((0, Fraction(1)),),))


def test_derived_quantities():
    s = SystemSpec.pure_power(Kind.DISCRETE, (Fraction(1, 2),), Fraction(-1, 3), 3, 2)
    assert (s.d, s.l, s.tau) == (1, 3, 2)
    assert s.eta == 9 * Fraction(-1, 3)
    assert s.eta1 == s.eta / 3
    assert s.basis is Basis.FALLING and s.is_pure_power


@given(specs())
def test_serialization_round_trip(spec):
    assert loads_spec(dumps_spec(spec)) == spec


@given(specs(), st.integers(0, 14))
def test_monic_and_eigen(spec, n):
    P = build_P(spec, n)
    assert P.degree == n and P.lead == 1
    assert apply_L(spec, P) == P.scale(n)


@given(specs(pure=True), st.integers(0, 20), st.integers(0, 7))
def test_closed_power_coeff(spec, n, j):
    assert gl_power_coeff(spec, n, j) == gl_power_coeff_closed(spec, n, j)


@given(specs(), st.integers(1, 12))
def test_hahn_property(spec, n):
    assert hahn_check(spec, n).passed


@given(specs(max_l=3), st.integers(1, 4), st.integers(0, 12))
def test_finite_system_span(spec, k, n):
    spec = spec.with_alphas((-k,) + spec.alphas[1:])
    P = build_P(spec, n)
    if n >= k:
        assert not any(P.coeffs[:k])
    lowest = 1 + next(i for i, c in enumerate(spec.q) if c)
    if k <= n < k + lowest:
        assert P == Poly.psi(n, spec.basis)


@given(specs(kinds=(Kind.DISCRETE,)), st.integers(0, 10))
def test_discrete_monomial_view_is_monic(spec, n):
    m = to_monomial(build_P(spec, n))
    assert m.degree == n and m.lead == 1
