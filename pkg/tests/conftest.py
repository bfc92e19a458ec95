from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-12, max_value=12, max_denominator=7)


def points(size):
    return st.lists(rationals, min_size=size, max_size=size)


@st.composite
def seeds(draw, min_size=2, max_size=6):
    """Random skew-symmetric seeds with integer entries and some frozen vertices."""
    from sl3lam.exchange import ExchangeSeed
    n = draw(st.integers(min_size, max_size))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(st.integers(-2, 2))
            m[i][j], m[j][i] = 2 * v, -2 * v
    frozen = draw(st.sets(st.integers(0, n - 1), max_size=n - 1))
    return ExchangeSeed(m, frozenset(frozen))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
