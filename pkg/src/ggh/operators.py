"""The lowering operators G = R(H) d/dx and G = R(H) Delta on the psi basis.

A system is fixed by R(H) = rho * prod_j (H + alpha_j + 1) and a polynomial
q(G) = sum_k c_k G^k without constant term. Everything here works through
the action on psi_n:

    G psi_n = n R(n-1) psi_{n-1},    H psi_n = n psi_n,

which is the same in the continuous (psi_n = x^n) and discrete
(psi_n = x(x-1)...(x-n+1)) realisations.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import (
    Basis,
    Poly,
    as_rational,
    derivative,
    forward_difference,
    pochhammer,
    to_basis,
)
from .report import CheckReport


class SpecError(ValueError):
    """A malformed system description; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


class Kind(enum.Enum):
    CONTINUOUS = "continuous"
    DISCRETE = "discrete"


def _rational_field(name: str, value) -> Fraction:
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(name, f"{name}: cannot parse {value!r} as a rational") from exc


@dataclass(frozen=True)
class SystemSpec:
    kind: Kind
    alphas: tuple[Fraction, ...]
    rho: Fraction
    q: tuple[Fraction, ...]  # q[k-1] is the coefficient of G^k

    def __post_init__(self):
        kind = self.kind
        if not isinstance(kind, Kind):
            try:
                kind = Kind(kind)
            except ValueError as exc:
                raise SpecError("kind", f"kind must be 'continuous' or 'discrete', got {kind!r}") from exc
        object.__setattr__(self, "kind", kind)
        object.__setattr__(
            self, "alphas", tuple(_rational_field("alphas", a) for a in self.alphas)
        )
        rho = _rational_field("rho", self.rho)
        if rho == 0:
            raise SpecError("rho", "rho must be nonzero")
        object.__setattr__(self, "rho", rho)
        q = tuple(_rational_field("q", c) for c in self.q)
        if not q or q[-1] == 0:
            raise SpecError("q", "q must be nonempty with a nonzero leading coefficient")
        object.__setattr__(self, "q", q)

    @classmethod
    def continuous(cls, alphas=(), rho=1, q=(1,)) -> "SystemSpec":
        return cls(Kind.CONTINUOUS, tuple(alphas), rho, tuple(q))

    @classmethod
    def discrete(cls, alphas=(), rho=1, q=(1,)) -> "SystemSpec":
        return cls(Kind.DISCRETE, tuple(alphas), rho, tuple(q))

    @classmethod
    def pure_power(cls, kind, alphas=(), rho=1, l=1, tau=1) -> "SystemSpec":
        return cls(kind, tuple(alphas), rho, (0,) * (l - 1) + (tau,))

    @property
    def d(self) -> int:
        return len(self.alphas)

    @property
    def l(self) -> int:
        return len(self.q)

    @property
    def basis(self) -> Basis:
        return Basis.MONOMIAL if self.kind is Kind.CONTINUOUS else Basis.FALLING

    @property
    def is_pure_power(self) -> bool:
        return not any(self.q[:-1])

    @property
    def tau(self) -> Fraction:
        """Leading coefficient of q; the tau of q = tau G^l."""
        return self.q[-1]

    @property
    def eta(self) -> Fraction:
        return self.l ** (self.d + 1) * self.rho

    @property
    def eta1(self) -> Fraction:
        sign = -1 if ((self.d + 1) * self.l) % 2 else 1
        return sign * self.eta / self.l

    def R(self, h) -> Fraction:
        out = self.rho
        for a in self.alphas:
            out *= h + a + 1
        return out

    def with_alphas(self, alphas) -> "SystemSpec":
        return replace(self, alphas=tuple(alphas))


# serialization -----------------------------------------------------------------

def spec_to_dict(spec: SystemSpec) -> dict:
    return {
        "kind": spec.kind.value,
        "alphas": [str(a) for a in spec.alphas],
        "rho": str(spec.rho),
        "q": [str(c) for c in spec.q],
    }


def spec_from_dict(doc) -> SystemSpec:
    if not isinstance(doc, dict):
        raise SpecError("document", "spec document must be a mapping")
    for key in ("kind", "alphas", "rho", "q"):
        if key not in doc:
            raise SpecError(key, f"missing field {key!r}")
    for key in ("alphas", "q"):
        if not isinstance(doc[key], list):
            raise SpecError(key, f"{key} must be an array of rational strings")
    for key, value in (("rho", doc["rho"]), *(("alphas", a) for a in doc["alphas"]), *(("q", c) for c in doc["q"])):
        if not isinstance(value, (str, int)) or isinstance(value, bool):
            raise SpecError(key, f"{key}: expected a rational string like 'p/q', got {value!r}")
    return SystemSpec(doc["kind"], tuple(doc["alphas"]), doc["rho"], tuple(doc["q"]))


def dumps_spec(spec: SystemSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2) + "\n"


def loads_spec(text: str) -> SystemSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("document", f"spec document is not valid JSON: {exc}") from exc
    return spec_from_dict(doc)


# the lowering action -------------------------------------------------------------

def g_step(spec: SystemSpec, n: int) -> Fraction:
    """c with G psi_n = c psi_{n-1}."""
    if n <= 0:
        return Fraction(0)
    return n * spec.R(n - 1)


def g_power_coeff(spec: SystemSpec, n: int, k: int) -> Fraction:
    """Coefficient of psi_{n-k} in G^k psi_n."""
    if k > n:
        return Fraction(0)
    out = Fraction(1)
    for s in range(k):
        out *= g_step(spec, n - s)
        if not out:
            break
    return out


def gl_power_coeff(spec: SystemSpec, n: int, j: int) -> Fraction:
    """Coefficient of psi_{n-lj} in G^{lj} psi_n, by lj successive steps."""
    return g_power_coeff(spec, n, spec.l * j)


def gl_power_coeff_closed(spec: SystemSpec, n: int, j: int) -> Fraction:
    """Same coefficient through Pochhammer blocks of length j."""
    l, d = spec.l, spec.d
    sign = -1 if (l * j * (d + 1)) % 2 else 1
    out = sign * spec.eta ** (l * j)
    for a in (*spec.alphas, Fraction(0)):
        for r in range(l):
            out *= pochhammer((-n - a + r) / Fraction(l), j)
            if not out:
                return out
    return out


@dataclass(frozen=True)
class LoweringOp:
    """rows[n] lists the (target degree, coefficient) pairs produced from psi_n."""

    rows: tuple[tuple[tuple[int, Fraction], ...], ...]

    def __post_init__(self):
        for n, row in enumerate(self.rows):
            for target, _ in row:
                if target >= n:
                    raise ValueError(f"row {n} does not lower degree (target {target})")

    @property
    def size(self) -> int:
        return len(self.rows)

    def apply(self, vec: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * len(vec)
        for n, c in enumerate(vec):
            if c:
                for target, coef in self.rows[n]:
                    out[target] += c * coef
        return out


def lowering_op(spec: SystemSpec, n_max: int, weights: Sequence[Fraction] | None = None) -> LoweringOp:
    """sum_k w_k G^k on span{psi_0..psi_n_max}; default weights are q's."""
    weights = spec.q if weights is None else weights
    rows = []
    for n in range(n_max + 1):
        row = []
        for k, w in enumerate(weights, start=1):
            if w and k <= n:
                c = g_power_coeff(spec, n, k)
                if c:
                    row.append((n - k, w * c))
        rows.append(tuple(row))
    return LoweringOp(tuple(rows))


@lru_cache(maxsize=None)
def _q_op(spec: SystemSpec, n_max: int) -> LoweringOp:
    return lowering_op(spec, n_max)


@lru_cache(maxsize=4096)
def build_P(spec: SystemSpec, n: int) -> Poly:
    """P_n = exp(q(G)) psi_n, summed until q(G)^j psi_n vanishes."""
    op = _q_op(spec, n)
    term = [Fraction(0)] * n + [Fraction(1)]
    total = list(term)
    j = 0
    while any(term):
        j += 1
        term = [c / j for c in op.apply(term)]
        for k, c in enumerate(term):
            total[k] += c
    return Poly(spec.basis, tuple(total))


def apply_L(spec: SystemSpec, p: Poly) -> Poly:
    """L = q'(G) G + H with H psi_n = n psi_n (x d/dx, resp. -x nabla)."""
    if p.basis is not spec.basis:
        raise ValueError(
            f"basis mismatch: {spec.kind.value} systems act on the {spec.basis.value} basis"
        )
    vec = list(p.coeffs)
    op = lowering_op(spec, len(vec) - 1, [k * c for k, c in enumerate(spec.q, start=1)])
    out = op.apply(vec)
    for n, c in enumerate(vec):
        out[n] += n * c
    return Poly(spec.basis, tuple(out))


def eigen_check(spec: SystemSpec, n_max: int) -> CheckReport:
    report = CheckReport("eigen", {"n_max": n_max})
    for n in range(n_max + 1):
        P = build_P(spec, n)
        if apply_L(spec, P) != P.scale(n):
            report.fail(f"L P_{n} != {n} P_{n}")
    return report.finish()


def hahn_shift(spec: SystemSpec) -> SystemSpec:
    """R(H) -> R(H+1), i.e. every alpha_j -> alpha_j + 1."""
    return spec.with_alphas(a + 1 for a in spec.alphas)


def hahn_check(spec: SystemSpec, n_max: int) -> CheckReport:
    if n_max < 1:
        raise ValueError("hahn_check needs n_max >= 1")
    shifted = hahn_shift(spec)
    diff = derivative if spec.kind is Kind.CONTINUOUS else forward_difference
    report = CheckReport("hahn", {"n_max": n_max})
    for n in range(1, n_max + 1):
        lhs = diff(build_P(spec, n)).scale(Fraction(1, n))
        if lhs != build_P(shifted, n - 1):
            report.fail(f"difference of P_{n} / {n} != shifted P_{n - 1}")
    return report.finish()


def degeneration_check(spec: SystemSpec, n_max: int) -> CheckReport:
    """Claim: with alpha_j = -k (k a positive integer), P_n = psi_n for n >= k.

    The report also records the weaker statement that does follow from
    G psi_k = 0: for n >= k, P_n lies in span{psi_k, ..., psi_n}.
    """
    ks = [int(-a) for a in spec.alphas if a.denominator == 1 and a < 0]
    report = CheckReport("degeneration", {"n_max": n_max, "roots": ks})
    if not ks:
        return report.finish()
    k0 = min(ks)
    span_ok = True
    for n in range(k0, n_max + 1):
        P = build_P(spec, n)
        span_ok = span_ok and not any(P.coeffs[:k0])
        if P != Poly.psi(n, spec.basis):
            report.fail(f"P_{n} != psi_{n}: P_{n} = {P}")
    report.data = {"span_psi_k_to_psi_n": span_ok}
    return report.finish()


def natural(spec: SystemSpec, p: Poly) -> Poly:
    return to_basis(p, spec.basis)


__all__ = [
    "Kind", "SystemSpec", "SpecError", "LoweringOp", "g_step", "g_power_coeff",
    "gl_power_coeff", "gl_power_coeff_closed", "lowering_op", "build_P", "apply_L",
    "eigen_check", "hahn_shift", "hahn_check", "degeneration_check", "spec_to_dict",
    "spec_from_dict", "dumps_spec", "loads_spec", "natural",
]
