import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mgc.hypergraph import build_hypergraph

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def hypergraphs(draw, max_vertices=9, min_size=1, max_size=4, max_edges=8):
    v = draw(st.integers(min_value=max(min_size, 1), max_value=max_vertices))
    sizes = st.integers(min_value=min_size, max_value=min(max_size, v))
    raw = draw(st.lists(sizes.flatmap(lambda s: st.sets(st.integers(0, v - 1), min_size=s, max_size=s)),
                        max_size=max_edges, unique_by=frozenset))
    return build_hypergraph(v, [sorted(e) for e in raw])


@st.composite
def birth_times(draw, count):
    """Distinct points of [0, 1); mixes arbitrary floats with interval-boundary values."""
    pts = st.one_of(
        st.floats(min_value=0.0, max_value=1.0, exclude_max=True, allow_nan=False),
        st.sampled_from([0.0, 0.05, 0.45, 0.5, 0.55, 0.9, 0.95, 1 / 3, 2 / 3]),
    )
    return tuple(draw(st.lists(pts, min_size=count, max_size=count, unique=True)))


layouts = st.one_of(
    st.tuples(st.just(2), st.floats(min_value=0.01, max_value=0.49)),
    st.tuples(st.integers(3, 5), st.floats(min_value=0.01, max_value=0.99)),
)


def random_hypergraph(rng: np.random.Generator, vertices: int, edges: int, lo: int, hi: int):
    """Arbitrary (not necessarily simple) hypergraph with edge sizes in [lo, hi]."""
    seen = set()
    out = []
    for _ in range(edges * 5):
        if len(out) == edges:
            break
        s = int(rng.integers(lo, hi + 1))
        e = tuple(sorted(int(x) for x in rng.choice(vertices, size=min(s, vertices), replace=False)))
        if e not in seen:
            seen.add(e)
            out.append(e)
    return build_hypergraph(vertices, out)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def ln_over(n: int) -> float:
    return math.log(n) / n


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
