"""Terminating hypergeometric sums and the closed forms of P_n for q = tau G^l.

Notation follows the residue-class split n = m l + i. For k = 1..d+1 (with
alpha_{d+1} = 0) and r = 0..l-1 the lower parameters are

    S_{k,r}(i) = (alpha_k + i - r) / l + 1,

and S_hat(i) drops the entry (k = d+1, r = i), which is always 1.

Representations whose hypergeometric parameters depend on x (the discrete
forms) are assembled as exact polynomial products and quotients, so every
``rep_*`` returns a true :class:`Poly` in the system's natural basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    Basis,
    Poly,
    as_rational,
    eval_poly,
    exact_div,
    falling_factorial_poly,
    linear,
    pochhammer,
    pochhammer_product,
    poly_mul,
    substitute_power,
    to_basis,
    to_monomial,
)
from .operators import Kind, SystemSpec, build_P
from .report import CheckReport


class HypergeometricError(ValueError):
    pass


def delta_vec(l: int, lam) -> list[Fraction]:
    """(lam/l, (lam+1)/l, ..., (lam+l-1)/l)."""
    if l < 1:
        raise ValueError("l must be positive")
    lam = as_rational(lam)
    return [(lam + r) / l for r in range(l)]


def _nonpositive_int(a: Fraction) -> bool:
    return a.denominator == 1 and a <= 0


def termination_index(upper: Sequence[Fraction]) -> int | None:
    """Largest j with a nonzero term, if some upper parameter is a nonpositive integer."""
    ms = [int(-a) for a in upper if _nonpositive_int(a)]
    return min(ms) if ms else None


def pfq_coeffs(upper: Sequence, lower: Sequence, n_terms: int | None = None) -> list[Fraction]:
    """Coefficients c_j of z^j in pFq(upper; lower; z) for j = 0..n_terms.

    ``n_terms`` defaults to the termination index of the upper parameters.
    Raises if a lower parameter would put a zero in a denominator first.
    """
    upper = [as_rational(a) for a in upper]
    lower = [as_rational(b) for b in lower]
    if n_terms is None:
        n_terms = termination_index(upper)
        if n_terms is None:
            raise HypergeometricError("series does not terminate; pass n_terms explicitly")
    out = [Fraction(1)]
    term = Fraction(1)
    for j in range(n_terms):
        num = Fraction(1)
        for a in upper:
            num *= a + j
        if not num:
            out.extend([Fraction(0)] * (n_terms - j))
            break
        den = Fraction(j + 1)
        for b in lower:
            if b + j == 0:
                raise HypergeometricError(
                    f"lower parameter {b} vanishes in (b)_{j + 1}: term {j + 1} is undefined"
                )
            den *= b + j
        term = term * num / den
        out.append(term)
    return out


def pfq_terminating(upper: Sequence, lower: Sequence, n_terms: int | None = None) -> Poly:
    """pFq(upper; lower; z) as an exact polynomial in z."""
    return Poly.monomial(pfq_coeffs(upper, lower, n_terms))


def pfq_value(upper: Sequence, lower: Sequence, z, n_terms: int | None = None) -> Fraction:
    return eval_poly(pfq_terminating(upper, lower, n_terms), z)


@dataclass(frozen=True)
class HypParams:
    """A hypergeometric factor with argument ``scale * x**power``."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    scale: Fraction
    power: int

    def expand(self, prefactor_degree: int = 0, n_terms: int | None = None) -> Poly:
        """x**prefactor_degree * pFq(...; scale x**power) as a monomial Poly."""
        cs = pfq_coeffs(self.upper, self.lower, n_terms)
        return laurent_to_poly(
            {prefactor_degree + self.power * j: c * self.scale**j for j, c in enumerate(cs) if c}
        )


def laurent_to_poly(terms: dict[int, Fraction]) -> Poly:
    terms = {k: v for k, v in terms.items() if v}
    if terms and min(terms) < 0:
        raise HypergeometricError(f"expansion has a negative power x^{min(terms)}")
    out = [Fraction(0)] * (max(terms) + 1 if terms else 0)
    for k, v in terms.items():
        out[k] += v
    return Poly.monomial(out)


# parameter combinatorics --------------------------------------------------------

@dataclass(frozen=True)
class ParamSplit:
    i: int
    m: int
    S: tuple[Fraction, ...]
    S_hat: tuple[Fraction, ...]
    I: tuple[int, ...]
    C: Fraction


def _require_pure_power(spec: SystemSpec) -> None:
    if not spec.is_pure_power:
        raise ValueError("representation requires q = tau G^l")


def split_sets(spec: SystemSpec, i: int) -> tuple[list[Fraction], int]:
    """S(i) in (k, r) order and the position of the removed entry 1."""
    l = spec.l
    S = [(a + i - r) / Fraction(l) + 1 for a in (*spec.alphas, Fraction(0)) for r in range(l)]
    removed = spec.d * l + i
    assert S[removed] == 1
    return S, removed


def param_split(spec: SystemSpec, n: int) -> ParamSplit:
    _require_pure_power(spec)
    l = spec.l
    m, i = divmod(n, l)
    S, removed = split_sets(spec, i)
    I = tuple(b for b in range(len(S)) if b != removed)
    S_hat = tuple(S[b] for b in I)
    C = spec.tau**m * spec.eta ** (m * l) * pochhammer_product(S_hat, m)
    return ParamSplit(i=i, m=m, S=tuple(S), S_hat=S_hat, I=I, C=C)


def pochhammer_reflect(mu, n: int, j: int) -> Fraction:
    """(-1)^j (mu+1)_n / (mu+1)_{n-j}, which equals (-n-mu)_j."""
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    mu = as_rational(mu)
    den = pochhammer(mu + 1, n - j)
    if not den:
        raise ZeroDivisionError(f"(mu+1)_{n - j} vanishes for mu = {mu}")
    return (-1) ** j * pochhammer(mu + 1, n) / den


def block_pochhammer(x, l: int, j: int) -> Fraction:
    """l^{lj} prod_r ((x+r)/l)_j, equal to (x)_{lj}."""
    x = as_rational(x)
    out = Fraction(l) ** (l * j)
    for r in range(l):
        out *= pochhammer((x + r) / l, j)
    return out


# continuous representations ---------------------------------------------------------

def _all_alpha(spec: SystemSpec) -> tuple[Fraction, ...]:
    return (*spec.alphas, Fraction(0))


def first_form_params(spec: SystemSpec, n: int) -> HypParams:
    _require_pure_power(spec)
    l = spec.l
    upper = tuple(u for a in _all_alpha(spec) for u in delta_vec(l, -n - a))
    sign = -1 if (spec.d + 1) % 2 else 1
    scale = spec.tau * (sign * spec.eta) ** l
    return HypParams(upper, (), scale, -l)


def rep_cont_power_first(spec: SystemSpec, n: int) -> Poly:
    """x^n F(Delta(l; -n - alpha) blocks; -; tau ((-1)^{d+1} eta / x)^l)."""
    _require_continuous(spec)
    return first_form_params(spec, n).expand(prefactor_degree=n, n_terms=n // spec.l)


def second_form_params(spec: SystemSpec, n: int) -> tuple[ParamSplit, HypParams]:
    ps = param_split(spec, n)
    scale = -1 / (spec.tau * spec.eta**spec.l)
    return ps, HypParams((Fraction(-ps.m),), ps.S_hat, scale, spec.l)


def rep_cont_power_second(spec: SystemSpec, n: int) -> Poly:
    """C(i) x^i 1F_{ld+l-1}(-m; S_hat(i); -x^l / (tau eta^l))."""
    _require_continuous(spec)
    ps, hp = second_form_params(spec, n)
    return hp.expand(prefactor_degree=ps.i).scale(ps.C)


def rep_cont_2F(spec: SystemSpec, n: int) -> Poly:
    """Same with the matched pair (1; 1) restored: 2F(-m, 1; S(i); ...)."""
    _require_continuous(spec)
    ps, hp = second_form_params(spec, n)
    padded = HypParams((Fraction(-ps.m), Fraction(1)), ps.S, hp.scale, hp.power)
    return padded.expand(prefactor_degree=ps.i).scale(ps.C)


def _require_continuous(spec: SystemSpec) -> None:
    if spec.kind is not Kind.CONTINUOUS:
        raise ValueError("continuous representation applied to a discrete system")


def _require_discrete(spec: SystemSpec) -> None:
    if spec.kind is not Kind.DISCRETE:
        raise ValueError("discrete representation applied to a continuous system")


@dataclass(frozen=True)
class Family:
    i: int
    child: SystemSpec
    y_scale: Fraction  # y = y_scale * x^l
    const_base: Fraction  # P_{ml+i}(x) = const_base**m * x^i * child.P_m(y)


def split_families(spec: SystemSpec) -> list[Family]:
    """The l residue-class subfamilies, each a q = G system in y = x^l / (tau eta^l)."""
    _require_continuous(spec)
    _require_pure_power(spec)
    l = spec.l
    out = []
    for i in range(l):
        S, removed = split_sets(spec, i)
        alphas = tuple(S[b] - 1 for b in range(len(S)) if b != removed)
        child = SystemSpec(Kind.CONTINUOUS, alphas, Fraction(1), (Fraction(1),))
        out.append(Family(i, child, 1 / (spec.tau * spec.eta**l), spec.tau * spec.eta**l))
    return out


def family_member(spec: SystemSpec, fam: Family, m: int) -> Poly:
    child = to_monomial(build_P(fam.child, m))
    sub = substitute_power(child, fam.y_scale, spec.l)
    return Poly.monomial((0,) * fam.i + sub.coeffs).scale(fam.const_base**m)


def split_check(spec: SystemSpec, m_max: int) -> CheckReport:
    report = CheckReport("split_families", {"m_max": m_max})
    for fam in split_families(spec):
        for m in range(m_max + 1):
            n = m * spec.l + fam.i
            if family_member(spec, fam, m) != build_P(spec, n):
                report.fail(f"family i={fam.i}: member m={m} differs from P_{n}")
    return report.finish()


# discrete representations ------------------------------------------------------------

def _psi_monomial(n: int) -> Poly:
    return falling_factorial_poly(n)


def rep_disc_power_first(spec: SystemSpec, n: int) -> Poly:
    """psi_n F(Delta(l;-n-alpha) blocks; Delta(l; x-n+1); tau eta1^l).

    The x-dependent lower block is cleared by exact division of psi_n by
    prod_r ((x-n+1+r)/l)_j in the monomial basis.
    """
    _require_discrete(spec)
    _require_pure_power(spec)
    l = spec.l
    upper = [u for a in _all_alpha(spec) for u in delta_vec(l, -n - a)]
    cs = pfq_coeffs(upper, (), n // l)
    arg = spec.tau * spec.eta1**l
    quot = _psi_monomial(n)
    total = Poly.zero(Basis.MONOMIAL)
    for j, c in enumerate(cs):
        if j:
            # clear the next block of lower-parameter factors ((x-n+1+r)/l + j-1), r < l
            for r in range(l):
                quot = exact_div(quot, linear((1 - n + r) / Fraction(l) + j - 1, Fraction(1, l)))
        if c:
            total = total + quot.scale(c * arg**j)
    return to_basis(total, Basis.FALLING)


def rep_disc_first(spec: SystemSpec, n: int) -> Poly:
    """The l = 1 case: psi_n F(-n, (-n-alpha); x-n+1; tau (-1)^{d+1} rho)."""
    if spec.l != 1:
        raise ValueError("rep_disc_first is the l = 1 form; use rep_disc_power_first")
    return rep_disc_power_first(spec, n)


def rep_disc_power_second(spec: SystemSpec, n: int) -> Poly:
    """C(i) psi_i(x) F(-m, Delta(l; -x+i); S_hat(i); -(-1)^{dl} / (tau eta1^l))."""
    _require_discrete(spec)
    ps = param_split(spec, n)
    l = spec.l
    sign = -1 if (spec.d * l) % 2 else 1
    arg = -sign / (spec.tau * spec.eta1**l)
    cs = pfq_coeffs((Fraction(-ps.m),), ps.S_hat)
    total = Poly.zero(Basis.MONOMIAL)
    block = Poly.monomial((1,))
    for s, c in enumerate(cs):
        if s:
            for r in range(l):
                block = poly_mul(block, linear((ps.i + r) / Fraction(l) + s - 1, Fraction(-1, l)))
        if c:
            total = total + block.scale(c * arg**s)
    psi_i = _psi_monomial(ps.i)
    return to_basis(poly_mul(psi_i, total).scale(ps.C), Basis.FALLING)


def rep_disc_second(spec: SystemSpec, n: int) -> Poly:
    """The l = 1 case: (tau rho)^n [alpha+1]_n 2F_d(-n, -x; (alpha+1); 1/(tau rho))."""
    if spec.l != 1:
        raise ValueError("rep_disc_second is the l = 1 form; use rep_disc_power_second")
    _require_discrete(spec)
    lower = [a + 1 for a in spec.alphas]
    cs = pfq_coeffs((Fraction(-n),), lower)
    w = 1 / (spec.tau * spec.rho)
    total = Poly.zero(Basis.MONOMIAL)
    block = Poly.monomial((1,))  # (-x)_s
    for s, c in enumerate(cs):
        if s:
            block = poly_mul(block, linear(s - 1, -1))
        if c:
            total = total + block.scale(c * w**s)
    const = (spec.tau * spec.rho) ** n * pochhammer_product(lower, n)
    return to_basis(total.scale(const), Basis.FALLING)


# equivalence against the operator construction ------------------------------------------

def applicable_reps(spec: SystemSpec) -> dict:
    if not spec.is_pure_power:
        return {}
    if spec.kind is Kind.CONTINUOUS:
        return {
            "cont_power_first": rep_cont_power_first,
            "cont_power_second": rep_cont_power_second,
            "cont_2F": rep_cont_2F,
        }
    reps = {
        "disc_power_first": rep_disc_power_first,
        "disc_power_second": rep_disc_power_second,
    }
    if spec.l == 1:
        reps["disc_first"] = rep_disc_first
        reps["disc_second"] = rep_disc_second
    return reps


def representation_check(spec: SystemSpec, n_max: int) -> CheckReport:
    """Every applicable closed form against build_P for n <= n_max.

    Second forms whose lower parameters are hit at a nonpositive integer are
    recorded as skipped, not failed.
    """
    report = CheckReport("hypergeom", {"n_max": n_max})
    skipped: list[str] = []
    reps = applicable_reps(spec)
    compared = 0
    for n in range(n_max + 1):
        target = build_P(spec, n)
        for name, rep in reps.items():
            try:
                got = rep(spec, n)
            except HypergeometricError as exc:
                skipped.append(f"{name} n={n}: {exc}")
                continue
            compared += 1
            if got != target:
                report.fail(f"{name} differs from build_P at n={n}")
    report.data = {"forms": sorted(reps), "comparisons": compared, "skipped": skipped}
    return report.finish()


__all__ = [
    "HypergeometricError", "delta_vec", "pfq_coeffs", "pfq_terminating", "pfq_value",
    "HypParams", "ParamSplit", "param_split", "split_sets", "pochhammer_reflect",
    "block_pochhammer", "rep_cont_power_first", "rep_cont_power_second", "rep_cont_2F",
    "Family", "split_families", "family_member", "split_check", "rep_disc_first",
    "rep_disc_second", "rep_disc_power_first", "rep_disc_power_second",
    "applicable_reps", "representation_check", "termination_index",
]
