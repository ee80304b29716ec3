"""Exact scalars and dense polynomials in the monomial and falling-factorial bases.

Scalars are :class:`fractions.Fraction`. A :class:`Poly` carries its basis
tag; ``psi_k`` is ``x**k`` in the monomial basis and
``x (x-1) ... (x-k+1)`` in the falling-factorial basis.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def complexf(re: float, im: float = 0.0) -> complex:
    z = complex(re, im)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {z!r}")
    return z


def pochhammer(a, j: int) -> Fraction:
    """Rising factorial (a)_j = a (a+1) ... (a+j-1), with (a)_0 = 1."""
    if j < 0:
        raise ValueError("pochhammer index must be nonnegative")
    a = as_rational(a)
    out = Fraction(1)
    for s in range(j):
        out *= a + s
        if not out:
            break
    return out


def pochhammer_product(alphas: Iterable, n: int) -> Fraction:
    out = Fraction(1)
    for a in alphas:
        out *= pochhammer(a, n)
        if not out:
            break
    return out


class Basis(enum.Enum):
    MONOMIAL = "monomial"
    FALLING = "falling"


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [as_rational(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    basis: Basis
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    # construction ---------------------------------------------------------
    @classmethod
    def monomial(cls, coeffs: Iterable) -> "Poly":
        return cls(Basis.MONOMIAL, tuple(coeffs))

    @classmethod
    def falling(cls, coeffs: Iterable) -> "Poly":
        return cls(Basis.FALLING, tuple(coeffs))

    @classmethod
    def psi(cls, n: int, basis: Basis) -> "Poly":
        return cls(basis, (0,) * n + (1,))

    @classmethod
    def zero(cls, basis: Basis) -> "Poly":
        return cls(basis, ())

    @classmethod
    def const(cls, c, basis: Basis = Basis.MONOMIAL) -> "Poly":
        return cls(basis, (c,))

    # structure ------------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _same_basis(self, other: "Poly") -> None:
        if self.basis is not other.basis:
            raise ValueError(f"basis mismatch: {self.basis.value} vs {other.basis.value}")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._same_basis(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.basis, tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> "Poly":
        return Poly(self.basis, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        return Poly(self.basis, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            return poly_mul(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __truediv__(self, c) -> "Poly":
        return self.scale(1 / as_rational(c))

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Poly.{self.basis.value}([{body}])"


# Stirling tables -----------------------------------------------------------

@lru_cache(maxsize=None)
def stirling1_row(n: int) -> tuple[int, ...]:
    """Signed Stirling numbers s(n, k), k = 0..n: psi_n = sum_k s(n,k) x^k."""
    if n == 0:
        return (1,)
    prev = stirling1_row(n - 1) + (0,)
    row = [0] * (n + 1)
    for k in range(n + 1):
        row[k] = (prev[k - 1] if k else 0) - (n - 1) * prev[k]
    return tuple(row)


@lru_cache(maxsize=None)
def stirling2_row(n: int) -> tuple[int, ...]:
    """Stirling numbers S(n, k), k = 0..n: x^n = sum_k S(n,k) psi_k."""
    if n == 0:
        return (1,)
    prev = stirling2_row(n - 1) + (0,)
    row = [0] * (n + 1)
    for k in range(n + 1):
        row[k] = (prev[k - 1] if k else 0) + k * prev[k]
    return tuple(row)


def to_monomial(p: Poly) -> Poly:
    if p.basis is Basis.MONOMIAL:
        return p
    out = [Fraction(0)] * len(p.coeffs)
    for n, c in enumerate(p.coeffs):
        if c:
            for k, s in enumerate(stirling1_row(n)):
                if s:
                    out[k] += c * s
    return Poly.monomial(out)


def to_falling(p: Poly) -> Poly:
    if p.basis is Basis.FALLING:
        return p
    out = [Fraction(0)] * len(p.coeffs)
    for n, c in enumerate(p.coeffs):
        if c:
            for k, s in enumerate(stirling2_row(n)):
                if s:
                    out[k] += c * s
    return Poly.falling(out)


def to_basis(p: Poly, basis: Basis) -> Poly:
    return to_monomial(p) if basis is Basis.MONOMIAL else to_falling(p)


def mul_by_x(p: Poly) -> Poly:
    if p.basis is Basis.MONOMIAL:
        return Poly.monomial((0,) + p.coeffs) if p else p
    # x psi_n = psi_{n+1} + n psi_n
    out = [Fraction(0)] * (len(p.coeffs) + 1)
    for n, c in enumerate(p.coeffs):
        out[n + 1] += c
        out[n] += n * c
    return Poly.falling(out)


def poly_mul(a: Poly, b: Poly) -> Poly:
    a._same_basis(b)
    basis = a.basis
    if basis is Basis.FALLING:
        return to_falling(poly_mul(to_monomial(a), to_monomial(b)))
    if not a or not b:
        return Poly.zero(basis)
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return Poly.monomial(out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Long division in the monomial basis."""
    if a.basis is not Basis.MONOMIAL or b.basis is not Basis.MONOMIAL:
        raise ValueError("poly_divmod works in the monomial basis")
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a.coeffs)
    db = b.degree
    quot = [Fraction(0)] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] / b.lead
        if c:
            quot[k - db] = c
            for s, bc in enumerate(b.coeffs):
                rem[k - db + s] -= c * bc
    return Poly.monomial(quot), Poly.monomial(rem[:db])


def exact_div(a: Poly, b: Poly) -> Poly:
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("division leaves a nonzero remainder")
    return q


def linear(c0, c1) -> Poly:
    """The monomial polynomial c0 + c1 x."""
    return Poly.monomial((c0, c1))


def product(factors: Iterable[Poly]) -> Poly:
    out = Poly.monomial((1,))
    for f in factors:
        out = poly_mul(out, f)
    return out


def falling_factorial_poly(n: int, shift=0) -> Poly:
    """(x - shift)(x - shift - 1) ... n factors, monomial basis."""
    shift = as_rational(shift)
    return product(linear(-shift - s, 1) for s in range(n))


def derivative(p: Poly) -> Poly:
    if p.basis is not Basis.MONOMIAL:
        raise ValueError("derivative expects the monomial basis")
    return Poly.monomial(k * c for k, c in enumerate(p.coeffs) if k)


def forward_difference(p: Poly) -> Poly:
    """p(x+1) - p(x), in the basis of p."""
    if p.basis is Basis.FALLING:
        return Poly.falling(k * c for k, c in enumerate(p.coeffs) if k)
    n = len(p.coeffs)
    out = [Fraction(0)] * n
    for k, c in enumerate(p.coeffs):
        if c:
            for s in range(k):
                out[s] += c * math.comb(k, s)
    return Poly.monomial(out)


def substitute_power(p: Poly, scale, power: int) -> Poly:
    """p(scale * x**power) for a monomial-basis p."""
    if p.basis is not Basis.MONOMIAL:
        raise ValueError("substitute_power expects the monomial basis")
    scale = as_rational(scale)
    out = [Fraction(0)] * (power * p.degree + 1 if p else 0)
    for k, c in enumerate(p.coeffs):
        out[power * k] = c * scale**k
    return Poly.monomial(out)


def eval_poly(p: Poly, x) -> Fraction:
    x = as_rational(x)
    return _eval(p, x, Fraction(1))


def eval_c(p: Poly, x: complex) -> complex:
    x = complexf(complex(x).real, complex(x).imag)
    return _eval(p, x, 1 + 0j)


def _eval(p: Poly, x, one):
    if p.basis is Basis.MONOMIAL:
        acc = 0 * one
        for c in reversed(p.coeffs):
            acc = acc * x + (c if isinstance(one, Fraction) else complex(c))
        return acc
    acc = 0 * one
    run = one
    for k, c in enumerate(p.coeffs):
        if k:
            run = run * (x - (k - 1))
        if c:
            acc += (c if isinstance(one, Fraction) else complex(c)) * run
    return acc


def format_poly(p: Poly, var: str = "x") -> str:
    """Human-readable rendering, highest degree first."""
    if not p:
        return "0"
    term = (lambda k: f"{var}^{k}") if p.basis is Basis.MONOMIAL else (lambda k: f"psi_{k}")
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = term(k) if k > 1 or p.basis is Basis.FALLING else var
        else:
            body = f"{mag}*" + (term(k) if k > 1 or p.basis is Basis.FALLING else var)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def coeffs_from(values: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


__all__ = [
    "Basis", "Poly", "Rational", "as_rational", "complexf", "pochhammer",
    "pochhammer_product", "to_monomial", "to_falling", "to_basis", "mul_by_x",
    "poly_mul", "poly_divmod", "exact_div", "eval_poly", "eval_c", "derivative",
    "forward_difference", "substitute_power", "falling_factorial_poly", "linear",
    "product", "stirling1_row", "stirling2_row", "format_poly", "coeffs_from",
]
