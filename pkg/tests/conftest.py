from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from eqmcg.groups import AlgebraElement, named_group

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

SMALL_GROUPS = ["1", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "Q8", "D4", "A4"]


@pytest.fixture(scope="session")
def groups():
    return {name: named_group(name) for name in SMALL_GROUPS}


def rationals(max_den=4, bound=5):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, max_den))


def algebra_elements(group, integral=False):
    coeff = st.integers(-4, 4) if integral else rationals()
    return st.lists(coeff, min_size=group.order, max_size=group.order).map(
        lambda c: AlgebraElement(group, c))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
