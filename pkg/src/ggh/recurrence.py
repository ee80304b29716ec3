"""Finite-band recurrences x P_n = P_{n+1} + sum_j gamma_j(n) P_{n-j}."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, mul_by_x
from .operators import Kind, SystemSpec, build_P
from .report import CheckReport


def claimed_band(spec: SystemSpec) -> int:
    """Largest j allowed to carry a nonzero gamma_j(n)."""
    d, l = spec.d, spec.l
    if spec.kind is Kind.DISCRETE and d == 0:
        return l
    return l * d + l - 1


def expand_in_family(spec: SystemSpec, p: Poly) -> list[Fraction]:
    """c_k with p = sum_k c_k P_k, by descending elimination (the P_k are monic)."""
    if p.basis is not spec.basis:
        raise ValueError("polynomial is not in the system's natural basis")
    rem = list(p.coeffs)
    out = [Fraction(0)] * len(rem)
    for k in range(len(rem) - 1, -1, -1):
        c = rem[k]
        if c:
            out[k] = c
            for s, v in enumerate(build_P(spec, k).coeffs):
                rem[s] -= c * v
    return out


def recurrence_row(spec: SystemSpec, n: int) -> list[Fraction]:
    """[gamma_0(n), ..., gamma_n(n)]."""
    c = expand_in_family(spec, mul_by_x(build_P(spec, n)))
    if c[n + 1] != 1:
        raise AssertionError(f"coefficient of P_{n + 1} in x P_{n} is {c[n + 1]}, not 1")
    return [c[n - j] for j in range(n + 1)]


@dataclass(frozen=True)
class BandRecurrence:
    band: int
    rows: tuple[tuple[Fraction, ...], ...]  # rows[n][j] = gamma_j(n), j <= band

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n"] + [f"gamma_{j}" for j in range(self.band + 1)])
        for n, row in enumerate(self.rows):
            w.writerow([n] + [str(g) for g in row])
        return buf.getvalue()


def recurrence_table(spec: SystemSpec, n_max: int) -> BandRecurrence:
    """Rows truncated to the claimed band; raises if anything sits outside it."""
    J = claimed_band(spec)
    rows = []
    for n in range(n_max + 1):
        row = recurrence_row(spec, n)
        if any(row[J + 1:]):
            raise AssertionError(f"gamma_j({n}) nonzero beyond the band {J}")
        rows.append(tuple(row[: J + 1]) + (Fraction(0),) * max(0, J + 1 - len(row)))
    return BandRecurrence(J, tuple(rows))


def bandwidth_check(spec: SystemSpec, n_max: int) -> CheckReport:
    J = claimed_band(spec)
    report = CheckReport("recurrence", {"n_max": n_max, "claimed_band": J})
    observed = -1
    for n in range(n_max + 1):
        try:
            row = recurrence_row(spec, n)
        except AssertionError as exc:
            report.fail(str(exc))
            continue
        nz = [j for j, g in enumerate(row) if g]
        if nz:
            observed = max(observed, nz[-1])
        for j in nz:
            if j > J:
                report.fail(f"gamma_{j}({n}) = {row[j]} beyond band {J}")
    report.data = {"observed_band": observed}
    return report.finish()


def _newton_coeffs(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    coef = list(ys)
    for k in range(1, len(xs)):
        for i in range(len(xs) - 1, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - k])
    return coef


def _newton_eval(xs: list[int], coef: list[Fraction], x: int) -> Fraction:
    acc = coef[-1]
    for k in range(len(coef) - 2, -1, -1):
        acc = acc * (x - xs[k]) + coef[k]
    return acc


def fit_gamma_degrees(spec: SystemSpec, n_max: int, start: int | None = None) -> dict[int, int | None]:
    """Observed polynomial degree in n of each gamma_j, or None if no fit is found.

    gamma_j(n) is fitted on n = start .. start+deg and must reproduce every
    remaining row up to n_max. Reporting only.
    """
    table = recurrence_table(spec, n_max)
    start = table.band if start is None else start
    out: dict[int, int | None] = {}
    for j in range(table.band + 1):
        ns = list(range(start, n_max + 1))
        ys = [table.rows[n][j] for n in ns]
        out[j] = None
        for deg in range(len(ns) - 1):
            xs, fit = ns[: deg + 1], ys[: deg + 1]
            coef = _newton_coeffs(xs, fit)
            if all(_newton_eval(xs, coef, n) == y for n, y in zip(ns, ys)):
                out[j] = -1 if not any(ys) else deg
                break
    return out


__all__ = [
    "claimed_band", "expand_in_family", "recurrence_row", "BandRecurrence",
    "recurrence_table", "bandwidth_check", "fit_gamma_degrees",
]
