from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from qcommutor.cartan import build_datum
from qcommutor.repn import build_irreducible
from qcommutor.scalars import from_laurent, gauss

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# lines printed by test_acceptance.py, echoed again in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def A1():
    return build_datum("A1")


@pytest.fixture(scope="session")
def A2():
    return build_datum("A2")


@pytest.fixture(scope="session")
def B2():
    return build_datum("B2")


@pytest.fixture(scope="session")
def G2():
    return build_datum("G2")


@pytest.fixture(scope="session")
def v_omega(A1):
    return build_irreducible(A1, (1,))


# random scalars: ratios of small Laurent polynomials in q^(1/2) with Gaussian coefficients

_coeffs = st.builds(gauss, st.integers(-3, 3), st.sampled_from([0, 0, 0, 1, -1]))
_exps = st.integers(-4, 4).map(lambda k: Fraction(k, 2))
laurents = st.dictionaries(_exps, _coeffs, min_size=0, max_size=3).map(from_laurent)
nonzero_laurents = st.dictionaries(_exps, _coeffs, min_size=1, max_size=3).map(from_laurent).filter(bool)


@st.composite
def scalars(draw):
    return draw(laurents) / draw(nonzero_laurents)


@st.composite
def nonzero_scalars(draw):
    return draw(nonzero_laurents) / draw(nonzero_laurents)
