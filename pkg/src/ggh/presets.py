"""Named families as SystemSpec factories, addressed by strings like "gould-hopper l=3 tau=2"."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exact import as_rational
from .operators import Kind, SpecError, SystemSpec


@dataclass(frozen=True)
class Preset:
    name: str
    summary: str
    defaults: dict[str, str]
    factory: Callable[..., SystemSpec]


def _int(value: Fraction, key: str, minimum: int = 1) -> int:
    if value.denominator != 1 or value < minimum:
        raise SpecError(key, f"{key} must be an integer >= {minimum}")
    return int(value)


def _hermite() -> SystemSpec:
    return SystemSpec.continuous((), 1, (0, Fraction(-1, 2)))


def _laguerre(alpha: Fraction) -> SystemSpec:
    return SystemSpec.continuous((alpha,), 1, (1,))


def _gould_hopper(l: Fraction, tau: Fraction) -> SystemSpec:
    return SystemSpec.pure_power(Kind.CONTINUOUS, (), 1, _int(l, "l"), tau)


def _konhauser_toscano(l: Fraction, alpha: Fraction) -> SystemSpec:
    # R(H) = prod_{s=1}^{l} (H + (alpha+s)/l), so alpha_s + 1 = (alpha+s)/l
    n = _int(l, "l")
    return SystemSpec.continuous(tuple((alpha + s) / n - 1 for s in range(1, n + 1)), 1, (-1,))


def _charlier(rho: Fraction) -> SystemSpec:
    return SystemSpec.discrete((), rho, (1,))


def _meixner(beta: Fraction, rho: Fraction) -> SystemSpec:
    return SystemSpec.discrete((beta - 1,), rho, (1,))


def _intro(l: Fraction) -> SystemSpec:
    n = _int(l, "l")
    return SystemSpec.pure_power(Kind.CONTINUOUS, (), 1, n, Fraction(-1, n))


def _discrete_gould_hopper(l: Fraction, tau: Fraction, rho: Fraction) -> SystemSpec:
    return SystemSpec.pure_power(Kind.DISCRETE, (), rho, _int(l, "l"), tau)


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in [
        Preset("hermite", "G = d/dx, q = -G^2/2", {}, _hermite),
        Preset("laguerre", "G = (x d/dx + alpha + 1) d/dx, q = G", {"alpha": "0"}, _laguerre),
        Preset("gould-hopper", "G = d/dx, q = tau G^l", {"l": "3", "tau": "1"}, _gould_hopper),
        Preset("konhauser-toscano", "R(H) = prod_s (H + (alpha+s)/l), q = -G", {"l": "2", "alpha": "0"},
               _konhauser_toscano),
        Preset("charlier", "G = rho Delta, q = G", {"rho": "1"}, _charlier),
        Preset("meixner", "G = rho (H + beta) Delta, q = G", {"beta": "3/2", "rho": "1/2"}, _meixner),
        Preset("intro-example", "G = d/dx, q = -G^l / l", {"l": "3"}, _intro),
        Preset("discrete-gould-hopper", "G = rho Delta, q = tau G^l", {"l": "2", "tau": "1", "rho": "1"},
               _discrete_gould_hopper),
    ]
}


def parse_preset(text: str) -> SystemSpec:
    """"name k=v ..." with omitted keys taken from the defaults."""
    tokens = text.split()
    if not tokens:
        raise SpecError("preset", "empty preset name")
    name, *assignments = tokens
    if name not in PRESETS:
        raise SpecError("preset", f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    preset = PRESETS[name]
    values = dict(preset.defaults)
    for item in assignments:
        key, sep, value = item.partition("=")
        if not sep or key not in preset.defaults:
            raise SpecError("preset", f"{name}: unexpected parameter {item!r}")
        values[key] = value
    parsed = {}
    for key, value in values.items():
        try:
            parsed[key] = as_rational(value)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SpecError(key, f"{key}: cannot parse {value!r} as a rational") from exc
    return preset.factory(**parsed)


__all__ = ["Preset", "PRESETS", "parse_preset"]
