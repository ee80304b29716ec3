from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ggh.exact import Basis, Poly
from ggh.operators import Kind, SystemSpec

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def rationals(max_num: int = 12, max_den: int = 6):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def polys(basis: Basis | None = None, max_degree: int = 6):
    b = st.sampled_from(list(Basis)) if basis is None else st.just(basis)
    return st.builds(lambda bb, cs: Poly(bb, tuple(cs)), b, st.lists(rationals(), max_size=max_degree + 1))


@st.composite
def specs(draw, kinds=(Kind.CONTINUOUS, Kind.DISCRETE), max_d: int = 2, max_l: int = 3, pure: bool = False):
    kind = draw(st.sampled_from(kinds))
    d = draw(st.integers(0, max_d))
    alphas = tuple(draw(rationals(9, 5)) for _ in range(d))
    rho = draw(rationals(6, 4).filter(bool))
    l = draw(st.integers(1, max_l))
    if pure:
        q = (0,) * (l - 1) + (draw(rationals(4, 3).filter(bool)),)
    else:
        q = tuple(draw(rationals(4, 3)) for _ in range(l - 1)) + (draw(rationals(4, 3).filter(bool)),)
    return SystemSpec(kind, alphas, rho, q)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
