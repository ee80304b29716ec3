"""Show what a negative-integer root of R does to P_n = exp(q(G)) psi_n.

G psi_k vanishes when alpha_j = -k, so the chain psi_n -> psi_{n-1} -> ...
stops at psi_k. P_n stays in span{psi_k, ..., psi_n} but is not psi_n itself
once n - k reaches the lowest power of G in q.
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from ggh.exact import as_rational, format_poly
from ggh.operators import SystemSpec, build_P, degeneration_check


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--q", default="1", help="comma-separated q coefficients c_1,...")
    ap.add_argument("--discrete", action="store_true")
    ap.add_argument("--n-max", type=int, default=8)
    a = ap.parse_args(argv)
    q = tuple(as_rational(s) for s in a.q.split(","))
    make = SystemSpec.discrete if a.discrete else SystemSpec.continuous
    spec = make((Fraction(-a.k),), 1, q)
    for n in range(a.k, a.n_max + 1):
        print(f"P_{n} = {format_poly(build_P(spec, n))}")
    rep = degeneration_check(spec, a.n_max)
    print(f"P_n == psi_n for all n >= {a.k}: {rep.passed}")
    print(f"P_n in span(psi_{a.k}..psi_n): {rep.data['span_psi_k_to_psi_n']}")


if __name__ == "__main__":
    main()
