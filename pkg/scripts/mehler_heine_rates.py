"""Tabulate Mehler-Heine deviations and their empirical decay rate.

For l = 1 the check is Q_n(x/n) against 0F_d(-; alpha+1; x); for l > 1 it is
m^{i/l} Q_{ml+i}(x/m^{1/l}) against x^i 0F(-; S_hat(i); x^l).
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ggh.exact import as_rational
from ggh.operators import Kind, SystemSpec
from ggh.series import mh_normalized, mh_power_check


@dataclass(frozen=True)
class RateConfig:
    alphas: tuple[Fraction, ...] = ()
    l: int = 2
    x: Fraction = Fraction(1)
    indices: tuple[int, ...] = (25, 50, 100, 200, 400)
    residues: tuple[int, ...] = field(default=())


def run(cfg: RateConfig) -> None:
    spec = mh_normalized(SystemSpec.pure_power(Kind.CONTINUOUS, cfg.alphas, 1, cfg.l, 1))
    for i in cfg.residues or range(cfg.l):
        rep = mh_power_check(spec, cfg.x, i, cfg.indices)
        print(f"i={i} limit={rep.limit:.15g}")
        prev = None
        for m, v, d in zip(rep.indices, rep.values, rep.deviations):
            # slope of log(dev) against log(m); about -1 for these limits
            slope = "" if prev is None or not d or not prev[1] else \
                f"{math.log(d / prev[1]) / math.log(m / prev[0]):+.3f}"
            print(f"  m={m:5d} value={v:.12f} dev={d:.3e} {slope}")
            prev = (m, d)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", default="", help="comma-separated rationals")
    ap.add_argument("--l", type=int, default=2)
    ap.add_argument("--x", default="1")
    ap.add_argument("--indices", default="25,50,100,200,400")
    a = ap.parse_args(argv)
    alphas = tuple(as_rational(s) for s in a.alphas.split(",") if s)
    run(RateConfig(alphas, a.l, as_rational(a.x), tuple(int(s) for s in a.indices.split(","))))


if __name__ == "__main__":
    main()
