import hypothesis.strategies as st
import pytest
from hypothesis import settings

from latticesum.geometry import convex_hull

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

coords = st.integers(-6, 6)
point_lists = st.lists(st.tuples(coords, coords), min_size=1, max_size=9)
polygons = point_lists.map(convex_hull)
full_polygons = polygons.filter(lambda P: P.rank == 2)
unimodular = st.sampled_from([
    ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (-2, 1)),
    ((2, 1), (1, 1)), ((0, -1), (1, 0)), ((-1, 0), (0, -1)), ((3, 2), (1, 1)),
])

UNIT_SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
UNIT_TRIANGLE = convex_hull([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def unit_square():
    return UNIT_SQUARE


@pytest.fixture
def unit_triangle():
    return UNIT_TRIANGLE


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
