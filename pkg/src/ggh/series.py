"""Truncated power series in t, generating-function identities and Mehler-Heine limits.

Generating functions are checked in their generic-argument form: if
Q_{ml+i}(x) = x^i 1F(-m; b; u x^l) then

    sum_m t^{ml+i} Q_{ml+i}(x) / m! = (tx)^i e^{t^l} 0F(-; b; -u (xt)^l)
    sum_m t^{ml+i} Q_{ml+i}(x)      = (tx)^i / (1-t^l) 1F(1; b; -u (xt)^l / (1-t^l))

with u the exact argument constant of the normalised polynomials. The left
sides are built from the operator construction, the right sides from series
arithmetic, so each check is a two-sided comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Poly, as_rational, eval_poly, pochhammer, pochhammer_product, to_monomial
from .hypergeom import HypergeometricError, delta_vec, param_split, pfq_coeffs, pfq_value
from .operators import Kind, SystemSpec, build_P
from .report import CheckReport

RATIONAL = "rational"
COMPLEX = "complex"


@dataclass(frozen=True)
class TruncatedSeries:
    """sum_k coeffs[k] t^k, known exactly through t^order."""

    coeffs: tuple
    order: int
    kind: str = RATIONAL

    def __post_init__(self):
        cs = list(self.coeffs[: self.order + 1])
        zero = Fraction(0) if self.kind == RATIONAL else 0j
        cs += [zero] * (self.order + 1 - len(cs))
        if self.kind == RATIONAL:
            cs = [as_rational(c) for c in cs]
        else:
            cs = [complex(c) for c in cs]
            if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in cs):
                raise ValueError("non-finite series coefficient")
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_terms(cls, terms: dict[int, object], order: int, kind: str = RATIONAL) -> "TruncatedSeries":
        zero = Fraction(0) if kind == RATIONAL else 0j
        cs = [zero] * (order + 1)
        for k, v in terms.items():
            if 0 <= k <= order:
                cs[k] += v
        return cls(tuple(cs), order, kind)

    @classmethod
    def one(cls, order: int, kind: str = RATIONAL) -> "TruncatedSeries":
        return cls.from_terms({0: 1}, order, kind)

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order or self.kind != other.kind:
            raise ValueError("series differ in order or scalar kind")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.order, self.kind)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(tuple(c * a for a in self.coeffs), self.order, self.kind)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        N = self.order
        zero = Fraction(0) if self.kind == RATIONAL else 0j
        out = [zero] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(N + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(tuple(out), N, self.kind)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k."""
        zero = Fraction(0) if self.kind == RATIONAL else 0j
        return TruncatedSeries((zero,) * k + self.coeffs, self.order, self.kind)

    def dilate(self, c, power: int) -> "TruncatedSeries":
        """f(t) -> f(c t^power)."""
        terms = {power * k: a * c**k for k, a in enumerate(self.coeffs) if power * k <= self.order}
        return TruncatedSeries.from_terms(terms, self.order, self.kind)

    def exp(self) -> "TruncatedSeries":
        """exp(f) for f(0) = 0, via f' E = E'."""
        if self.coeffs[0]:
            raise ValueError("exp needs a zero constant term")
        N = self.order
        one = Fraction(1) if self.kind == RATIONAL else 1 + 0j
        e = [one] + [0 * one] * N
        for k in range(1, N + 1):
            acc = 0 * one
            for j in range(1, k + 1):
                acc += j * self.coeffs[j] * e[k - j]
            e[k] = acc / k
        return TruncatedSeries(tuple(e), N, self.kind)

    def geometric(self) -> "TruncatedSeries":
        """1 / (1 - f) for f(0) = 0."""
        if self.coeffs[0]:
            raise ValueError("1/(1-f) needs a zero constant term")
        out = TruncatedSeries.one(self.order, self.kind)
        power = TruncatedSeries.one(self.order, self.kind)
        for _ in range(self.order):
            power = power * self
            if not any(power.coeffs):
                break
            out = out + power
        return out

    def compose_into(self, coeffs: Sequence) -> "TruncatedSeries":
        """sum_k coeffs[k] f^k for f(0) = 0."""
        if self.coeffs[0]:
            raise ValueError("composition needs a zero constant term")
        out = TruncatedSeries.from_terms({}, self.order, self.kind)
        power = TruncatedSeries.one(self.order, self.kind)
        for k, c in enumerate(coeffs):
            if k > self.order:
                break
            if c:
                out = out + power.scale(c)
            power = power * self
        return out

    def max_abs_diff(self, other: "TruncatedSeries") -> float:
        self._check(other)
        return max((abs(complex(a - b)) for a, b in zip(self.coeffs, other.coeffs)), default=0.0)


def t_series(order: int, kind: str = RATIONAL) -> TruncatedSeries:
    return TruncatedSeries.from_terms({1: 1}, order, kind)


def pfq_series(upper: Sequence, lower: Sequence, order: int) -> list[Fraction]:
    """Coefficients of z^k in pFq for k = 0..order (truncated, need not terminate)."""
    return pfq_coeffs(upper, lower, order)


# normalisation -----------------------------------------------------------------------

def normalization_constant(spec: SystemSpec, n: int) -> Fraction:
    """C(i) = tau^m eta^{ml} prod_{beta in I} (S_beta(i))_m, with n = ml + i."""
    ps = param_split(spec, n)
    if ps.C == 0:
        for s in ps.S_hat:
            if pochhammer(s, ps.m) == 0:
                raise ValueError(f"normalisation constant vanishes: ({s})_{ps.m} = 0")
        raise ValueError("normalisation constant vanishes")
    return ps.C


def normalize_Q(spec: SystemSpec, n: int) -> Poly:
    """P_n divided by C(i); natural basis of the system."""
    return build_P(spec, n).scale(1 / normalization_constant(spec, n))


def q_argument(spec: SystemSpec) -> Fraction:
    """u with Q_{ml+i} = x^i 1F(-m; S_hat; u x^l) (continuous) or the discrete analogue."""
    l = spec.l
    if spec.kind is Kind.CONTINUOUS:
        return -1 / (spec.tau * spec.eta**l)
    sign = -1 if (spec.d * l) % 2 else 1
    return -sign / (spec.tau * spec.eta1**l)


def _eval_Q(spec: SystemSpec, n: int, x: Fraction) -> Fraction:
    return eval_poly(normalize_Q(spec, n), x)


def _result(name: str, params: dict, lhs: TruncatedSeries, rhs: TruncatedSeries) -> CheckReport:
    report = CheckReport(name, params)
    dev = lhs.max_abs_diff(rhs)
    report.max_deviation = dev
    for k, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if a != b:
            report.fail(f"t^{k}: lhs {a} != rhs {b}")
            break
    report.data = {"lhs": list(lhs.coeffs)} if lhs.kind == RATIONAL else {}
    return report.finish()


def _check_lower(lower: Sequence[Fraction], order: int) -> None:
    for b in lower:
        if b.denominator == 1 and b <= 0 and -b < order:
            raise HypergeometricError(f"lower parameter {b} is a nonpositive integer")


# generic identities -----------------------------------------------------------------------

def gf_exp_check(lower: Sequence, u, N: int) -> CheckReport:
    """sum_m t^m/m! 1F_q(-m; b; u) == e^t 0F_q(-; b; -u t) through t^N."""
    lower = [as_rational(b) for b in lower]
    u = as_rational(u)
    _check_lower(lower, N + 1)
    lhs = TruncatedSeries.from_terms(
        {m: pfq_value([-m], lower, u) / math.factorial(m) for m in range(N + 1)}, N
    )
    rhs = t_series(N).exp() * TruncatedSeries(tuple(pfq_series([], lower, N)), N).dilate(-u, 1)
    return _result("gf_exp", {"lower": lower, "u": u, "N": N}, lhs, rhs)


def srivastava_check(upper: Sequence, lower: Sequence, u, N: int) -> CheckReport:
    """sum_n F(-n, a; 1, b; u) t^n == 1/(1-t) F(a; b; -u t/(1-t)) through t^N."""
    upper = [as_rational(a) for a in upper]
    lower = [as_rational(b) for b in lower]
    u = as_rational(u)
    _check_lower(lower, N + 1)
    lhs = TruncatedSeries.from_terms(
        {n: pfq_value([-n, *upper], [1, *lower], u) for n in range(N + 1)}, N
    )
    t = t_series(N)
    w = t * t.geometric()  # t / (1 - t)
    cs = pfq_series(upper, lower, N)
    rhs = t.geometric() * w.compose_into([c * (-u) ** k for k, c in enumerate(cs)])
    return _result("srivastava", {"upper": upper, "lower": lower, "u": u, "N": N}, lhs, rhs)


# continuous family identities --------------------------------------------------------------

def _pure_power_pre(spec: SystemSpec) -> None:
    if not spec.is_pure_power:
        raise ValueError("generating functions are stated for q = tau G^l")


def gf_phi_check(spec: SystemSpec, i: int, x, N: int) -> CheckReport:
    """sum_m t^{ml+i} Q_{ml+i}(x)/m! against (tx)^i e^{t^l} 0F(-; S_hat(i); -u (xt)^l)."""
    _pure_power_pre(spec)
    if spec.kind is not Kind.CONTINUOUS:
        raise ValueError("gf_phi_check is the continuous identity; see gf_disc_checks")
    x = as_rational(x)
    l = spec.l
    ps = param_split(spec, i)
    _check_lower(ps.S_hat, N + 1)
    u = q_argument(spec)
    lhs = TruncatedSeries.from_terms(
        {m * l + i: _eval_Q(spec, m * l + i, x) / math.factorial(m) for m in range((N - i) // l + 1)}, N
    )
    t = t_series(N)
    z = TruncatedSeries(tuple(pfq_series([], ps.S_hat, N)), N).dilate(-u * x**l, l)
    rhs = (t.dilate(1, l).exp() * z).shift(i).scale(x**i)
    return _result("gf_phi", {"i": i, "x": x, "N": N, "u": u}, lhs, rhs)


def gf_rational_check(spec: SystemSpec, i: int, x, N: int) -> CheckReport:
    """sum_m t^{ml+i} Q_{ml+i}(x) against (tx)^i/(1-t^l) 1F(1; S_hat(i); -u (xt)^l/(1-t^l))."""
    _pure_power_pre(spec)
    if spec.kind is not Kind.CONTINUOUS:
        raise ValueError("gf_rational_check is the continuous identity; see gf_disc_checks")
    x = as_rational(x)
    l = spec.l
    ps = param_split(spec, i)
    _check_lower(ps.S_hat, N + 1)
    u = q_argument(spec)
    lhs = TruncatedSeries.from_terms(
        {m * l + i: _eval_Q(spec, m * l + i, x) for m in range((N - i) // l + 1)}, N
    )
    tl = t_series(N).dilate(1, l)
    inv = tl.geometric()
    w = (tl * inv).scale(-u * x**l)
    cs = pfq_series([1], ps.S_hat, N)
    rhs = (inv * w.compose_into(cs)).shift(i).scale(x**i)
    return _result("gf_rational", {"i": i, "x": x, "N": N, "u": u}, lhs, rhs)


def gf_full_checks(spec: SystemSpec, x, N: int) -> list[CheckReport]:
    """Whole-family forms: sum_n t^n Q_n / floor(n/l)! and sum_n t^n Q_n."""
    _pure_power_pre(spec)
    x = as_rational(x)
    l = spec.l
    phi = rat = None
    for i in range(l):
        a, b = _family_series(spec, i, x, N)
        phi = a if phi is None else phi + a
        rat = b if rat is None else rat + b
    lhs_phi = TruncatedSeries.from_terms(
        {n: _eval_Q(spec, n, x) / math.factorial(n // l) for n in range(N + 1)}, N
    )
    lhs_rat = TruncatedSeries.from_terms({n: _eval_Q(spec, n, x) for n in range(N + 1)}, N)
    return [
        _result("gf_phi_full", {"x": x, "N": N}, lhs_phi, phi),
        _result("gf_rational_full", {"x": x, "N": N}, lhs_rat, rat),
    ]


def _family_series(spec: SystemSpec, i: int, x: Fraction, N: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Right-hand sides of the exponential and rational identities for class i."""
    l = spec.l
    ps = param_split(spec, i)
    u = q_argument(spec)
    t = t_series(N)
    tl = t.dilate(1, l)
    inv = tl.geometric()
    if spec.kind is Kind.CONTINUOUS:
        pre = x**i
        up: list[Fraction] = []
        arg = u * x**l
    else:
        pre = eval_poly(Poly.falling((0,) * i + (1,)), x)
        up = delta_vec(l, -x + i)
        arg = u
    e = tl.exp() * TruncatedSeries(tuple(pfq_series(up, ps.S_hat, N)), N).dilate(-arg, l)
    r = inv * (tl * inv).scale(-arg).compose_into(pfq_series([*up, 1], ps.S_hat, N))
    return e.shift(i).scale(pre), r.shift(i).scale(pre)


# discrete family identities -------------------------------------------------------------------

def gf_disc_checks(spec: SystemSpec, i: int, x, N: int) -> list[CheckReport]:
    """Exponential and rational generating functions of the discrete class i.

    Q_{ml+i}(x) = psi_i(x) F(-m, Delta(l; -x+i); S_hat(i); u), so the right
    sides carry the x-dependent block Delta(l; -x+i) as numeric parameters.
    """
    _pure_power_pre(spec)
    if spec.kind is not Kind.DISCRETE:
        raise ValueError("gf_disc_checks needs a discrete system")
    x = as_rational(x)
    l = spec.l
    ps = param_split(spec, i)
    _check_lower(ps.S_hat, N + 1)
    e, r = _family_series(spec, i, x, N)
    ms = range((N - i) // l + 1)
    vals = {m: _eval_Q(spec, m * l + i, x) for m in ms}
    lhs_e = TruncatedSeries.from_terms({m * l + i: vals[m] / math.factorial(m) for m in ms}, N)
    lhs_r = TruncatedSeries.from_terms({m * l + i: vals[m] for m in ms}, N)
    params = {"i": i, "x": x, "N": N, "u": q_argument(spec)}
    return [_result("gf_disc_phi", params, lhs_e, e), _result("gf_disc_rational", params, lhs_r, r)]


# Mehler-Heine --------------------------------------------------------------------------------------

def hyp0f_float(lower: Sequence, z: float, rel: float = 1e-15, max_terms: int = 100000) -> float:
    """0F_q(-; lower; z) by partial sums until the next term < rel * |sum|."""
    lower = [float(b) for b in lower]
    total = 1.0
    term = 1.0
    for j in range(max_terms):
        den = float(j + 1)
        for b in lower:
            den *= b + j
        term = term * z / den
        total += term
        if abs(term) < rel * abs(total) or term == 0.0:
            return total
    raise ArithmeticError("0F_q partial sums did not settle")


@dataclass
class MHReport:
    x: Fraction
    indices: list[int]
    values: list[float]
    limit: float
    deviations: list[float]
    tol: float
    tail: int
    residue: int | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_check(self, name: str) -> CheckReport:
        rep = CheckReport(
            name,
            {"x": self.x, "indices": self.indices, "tol": self.tol, "residue": self.residue},
            max_deviation=self.deviations[-1] if self.deviations else None,
            violations=list(self.violations),
            data={"deviations": self.deviations, "limit": self.limit},
        )
        return rep.finish()


def _decreasing(devs: Sequence[float]) -> bool:
    return all(b < a or (a == 0 and b == 0) for a, b in zip(devs, devs[1:]))


def _mh_pre(spec: SystemSpec) -> None:
    if spec.kind is not Kind.CONTINUOUS:
        raise ValueError("Mehler-Heine limits are treated for continuous systems only")
    if not spec.is_pure_power or spec.tau != 1:
        raise ValueError("Mehler-Heine limits need q = G^l")
    if spec.rho * spec.l ** (spec.d + 1) != 1:
        raise ValueError("Mehler-Heine limits assume rho * l^(d+1) = 1")


def mh_normalized(spec: SystemSpec) -> SystemSpec:
    """Same alphas and l with q = G^l and rho = l^{-(d+1)}."""
    return SystemSpec.pure_power(spec.kind, spec.alphas, Fraction(1, spec.l ** (spec.d + 1)), spec.l, 1)


def scaled_value(spec: SystemSpec, n: int, x: Fraction) -> Fraction:
    """m^{i/l} Q_n(x / m^{1/l}) exactly; only degrees = i (mod l) occur in Q_n."""
    l = spec.l
    m, i = divmod(n, l)
    Q = to_monomial(normalize_Q(spec, n))
    total = Fraction(0)
    for k, c in enumerate(Q.coeffs):
        if not c:
            continue
        if (k - i) % l:
            raise AssertionError(f"Q_{n} has a term x^{k} outside the residue class {i}")
        total += c * x**k / Fraction(m) ** ((k - i) // l)
    return total


def mh_power_check(spec: SystemSpec, x, i: int, m_list: Sequence[int], tol: float = 1e-2,
                   tail: int = 3) -> MHReport:
    """m^{i/l} Q_{ml+i}(x / m^{1/l}) -> x^i 0F(-; S_hat(i); -u x^l)."""
    _mh_pre(spec)
    x = as_rational(x)
    l = spec.l
    ps = param_split(spec, i)
    limit = float(x) ** i * hyp0f_float(ps.S_hat, float(-q_argument(spec) * x**l))
    values = [float(scaled_value(spec, m * l + i, x)) for m in m_list]
    devs = [abs(v - limit) for v in values]
    rep = MHReport(x, list(m_list), values, limit, devs, tol, tail, residue=i)
    if devs and devs[-1] >= tol:
        rep.violations.append(f"final deviation {devs[-1]:.3e} >= {tol:.1e}")
    if not _decreasing(devs[-tail:]):
        rep.violations.append(f"deviations not strictly decreasing over the last {tail}: {devs[-tail:]}")
    return rep


def mh_l1_check(spec: SystemSpec, x, n_list: Sequence[int], tol: float = 1e-2, tail: int = 3) -> MHReport:
    """Q_n(x/n) -> 0F_d(-; (alpha+1); x) for q = G."""
    if spec.l != 1:
        raise ValueError("mh_l1_check is the q = G case")
    return mh_power_check(spec, x, 0, n_list, tol, tail)


def jensen_check(spec: SystemSpec, n_max: int) -> CheckReport:
    """Q_n(x) = sum_j C(n,j) g_j (-u)^j x^j with g_j = 1/[alpha+1]_j (l = 1)."""
    if spec.l != 1 or spec.kind is not Kind.CONTINUOUS:
        raise ValueError("Jensen form is stated for continuous l = 1 systems")
    u = q_argument(spec)
    lower = [a + 1 for a in spec.alphas]
    report = CheckReport("jensen", {"n_max": n_max})
    for n in range(n_max + 1):
        expect = Poly.monomial(
            math.comb(n, j) * (-u) ** j / pochhammer_product(lower, j) for j in range(n + 1)
        )
        if normalize_Q(spec, n) != expect:
            report.fail(f"Q_{n} is not the Jensen polynomial of 0F_d")
    return report.finish()


__all__ = [
    "TruncatedSeries", "t_series", "normalize_Q", "normalization_constant", "q_argument",
    "gf_exp_check", "srivastava_check", "gf_phi_check", "gf_rational_check", "gf_full_checks",
    "gf_disc_checks", "hyp0f_float", "MHReport", "mh_l1_check",
    "mh_power_check", "mh_normalized", "scaled_value", "jensen_check",
]

