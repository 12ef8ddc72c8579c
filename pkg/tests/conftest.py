from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tradenet import fixture_path, parse_flow_problem, parse_instance, parse_replay

settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")


def _load(name):
    return fixture_path(name).read_text()


@pytest.fixture(scope="session")
def example_a():
    return parse_instance(_load("example_a.json"))


@pytest.fixture(scope="session")
def example_b():
    return parse_instance(_load("example_b.json"))


@pytest.fixture(scope="session")
def example_b_aggregated():
    return parse_instance(_load("example_b_aggregated.json"))


@pytest.fixture(scope="session")
def replay_a(example_a):
    return parse_replay(_load("example_a_replay.json"), example_a)


@pytest.fixture(scope="session")
def replay_b(example_b):
    return parse_replay(_load("example_b_replay.json"), example_b)


@pytest.fixture(scope="session")
def segment_0_34():
    return parse_flow_problem(_load("segment_0_34.json"))


@pytest.fixture(scope="session")
def segment_12_26():
    return parse_flow_problem(_load("segment_12_26.json"))


@st.composite
def weighted_graphs(draw, min_nodes=1, max_nodes=10, max_weight=20, connected=False):
    """Symmetric cost views as n x n tuples with None for missing edges."""
    n = draw(st.integers(min_nodes, max_nodes))
    w = [[None] * n for _ in range(n)]
    for v in range(n):
        w[v][v] = 0
    if connected:
        # random spanning tree first
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            w[u][v] = w[v][u] = draw(st.integers(0, max_weight))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for u, v in pairs:
        if w[u][v] is None and draw(st.booleans()):
            w[u][v] = w[v][u] = draw(st.integers(0, max_weight))
    return tuple(tuple(row) for row in w)


rationals = st.builds(Fraction, st.integers(-600, 600), st.integers(1, 12))
nonneg_rationals = st.builds(Fraction, st.integers(0, 600), st.integers(1, 12))


@st.composite
def rational_matrices(draw, max_rows=8, max_cols=5, elements=rationals):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(elements) for _ in range(c)] for _ in range(r)]


def F(x):
    return Fraction(x)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
