import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from erm_majorities.classes import ExplicitClass
from erm_majorities.core import LabelSpace

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def explicit_classes(draw, max_points=5, max_labels=4, max_hyps=12, min_labels=2, max_labels_fixed=None):
    n = draw(st.integers(1, max_points))
    k = draw(st.integers(min_labels, max_labels))
    row = st.lists(st.integers(0, k - 1), min_size=n, max_size=n).map(tuple)
    rows = draw(st.lists(row, min_size=1, max_size=max_hyps, unique=True))
    return ExplicitClass(np.array(rows), LabelSpace(range(k)))


@st.composite
def binary_classes(draw, max_points=5, max_hyps=12):
    return draw(explicit_classes(max_points=max_points, max_labels=2, max_hyps=max_hyps))


@pytest.fixture
def cube3():
    rows = [[(i >> b) & 1 for b in range(3)] for i in range(8)]
    return ExplicitClass(np.array(rows), LabelSpace([0, 1]))


@pytest.fixture
def cube2():
    rows = [[(i >> b) & 1 for b in range(2)] for i in range(4)]
    return ExplicitClass(np.array(rows), LabelSpace([0, 1]))


@pytest.fixture
def singleton():
    return ExplicitClass(np.array([[0, 1, 2]]), LabelSpace([0, 1, 2]))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
