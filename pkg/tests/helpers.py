"""Shared spec grids for the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from ggh.operators import Kind, SystemSpec

GRID_SEED = 20240611


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(2, 7))


def acceptance_grid(seed: int = GRID_SEED) -> list[SystemSpec]:
    """{continuous, discrete} x d in {0,1,2} x l in {1,2,3} x 3 alpha draws x rho in {1, -1/2}."""
    rng = random.Random(seed)
    specs = []
    for kind in (Kind.CONTINUOUS, Kind.DISCRETE):
        for d in (0, 1, 2):
            for l in (1, 2, 3):
                for _ in range(3):
                    alphas = tuple(random_rational(rng) for _ in range(d))
                    for rho in (Fraction(1), Fraction(-1, 2)):
                        specs.append(SystemSpec.pure_power(kind, alphas, rho, l, 1))
    return specs


GENERAL_Q = [
    SystemSpec.continuous((Fraction(1, 3),), 1, (Fraction(1, 2), Fraction(-2, 3))),
    SystemSpec.continuous((Fraction(-2, 5), Fraction(3, 2)), Fraction(-1, 2), (2, 0, Fraction(1, 4))),
    SystemSpec.discrete((Fraction(5, 2),), 2, (Fraction(-1, 3), 1)),
]
