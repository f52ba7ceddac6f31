import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mgc.engine import (
    BLUE,
    IMPROPER,
    PROPER,
    RED,
    DegenerateEdgeError,
    RecolorEvent,
    color_with_restarts,
    mgc2,
    mgc_r,
    run_mgc,
)
from mgc.geometry import IntervalLayout
from mgc.hypergraph import build_hypergraph, verify_coloring

import oracles
from conftest import birth_times, hypergraphs, layouts

L = IntervalLayout(2, 0.2)


def test_single_edge_in_b():
    h = build_hypergraph(2, [[0, 1]])
    tr = mgc2(h, (0.1, 0.2), L)
    assert tr.outcome == IMPROPER and tr.final == (BLUE, BLUE) and tr.events == [] and tr.passes == 0


def test_single_edge_fixed_in_pass_one():
    h = build_hypergraph(2, [[0, 1]])
    tr = mgc2(h, (0.1, 0.45), L)
    assert tr.outcome == PROPER
    assert tr.events == [RecolorEvent(1, BLUE, RED, 1, 0)]
    assert tr.final == (BLUE, RED)


def test_three_vertex_trace():
    h = build_hypergraph(3, [[0, 1], [0, 2]])
    tr = mgc2(h, (0.95, 0.2, 0.6), L)
    assert tr.initial == (RED, BLUE, RED)
    assert tr.events == [RecolorEvent(0, RED, BLUE, 1, 1)]
    assert tr.final == (BLUE, BLUE, RED)
    assert tr.outcome == IMPROPER
    assert mgc_r(h, (0.95, 0.2, 0.6), L).final == tr.final


def test_degenerate_raises():
    h = build_hypergraph(2, [[0, 1]])
    with pytest.raises(DegenerateEdgeError) as exc:
        mgc2(h, (0.45, 0.95), L)
    assert exc.value.edge_index == 0


def test_bad_inputs():
    h = build_hypergraph(2, [[0, 1]])
    with pytest.raises(ValueError):
        mgc2(h, (0.1,), L)
    with pytest.raises(ValueError):
        mgc2(h, (0.1, 0.1), L)
    with pytest.raises(ValueError):
        mgc2(h, (0.1, 0.2), IntervalLayout(3, 0.2))


def test_r3_examples():
    lay = IntervalLayout(3, 0.3)
    h = build_hypergraph(2, [[0, 1]])
    tr = mgc_r(h, (0.35, 0.4), lay)
    assert tr.outcome == IMPROPER and tr.final == (1, 1)
    tr = mgc_r(h, (0.1, 0.4), lay)
    assert tr.outcome == PROPER and tr.events == []


def test_r3_recolor_moves_forward():
    lay = IntervalLayout(3, 0.3)  # P_1 = [0.5667, 0.6667)
    h = build_hypergraph(2, [[0, 1]])
    tr = mgc_r(h, (0.4, 0.6), lay)
    assert tr.events == [RecolorEvent(1, 1, 2, 1, 0)] and tr.outcome == PROPER


def _edges(h):
    return [list(e) for e in h.edges]


@given(hypergraphs(max_vertices=10, max_size=4, max_edges=10), layouts, st.data())
def test_engine_matches_literal_reference(h, rp, data):
    r, p = rp
    lay = IntervalLayout(r, p)
    t = data.draw(birth_times(h.vertex_count))
    try:
        want = oracles.mgc(_edges(h), h.vertex_count, t, r, p)
    except ValueError:
        with pytest.raises(DegenerateEdgeError):
            run_mgc(h, t, lay)
        return
    tr = run_mgc(h, t, lay)
    assert tr.final == want[0]
    assert tr.passes == want[1]
    assert [ev.vertex for ev in tr.events] == want[2]
    assert tr.outcome == (PROPER if oracles.is_proper(_edges(h), tr.final) else IMPROPER)


@given(hypergraphs(max_vertices=10, max_edges=10), st.floats(0.01, 0.49), st.data())
def test_two_color_engines_agree(h, p, data):
    lay = IntervalLayout(2, p)
    t = data.draw(birth_times(h.vertex_count))
    try:
        a = mgc2(h, t, lay)
    except DegenerateEdgeError:
        return
    b = mgc_r(h, t, lay)
    assert (a.final, a.events, a.passes, a.outcome) == (b.final, b.events, b.passes, b.outcome)


@given(hypergraphs(max_vertices=12, max_size=5, max_edges=12), layouts, st.data())
def test_engine_invariants(h, rp, data):
    lay = IntervalLayout(*rp)
    t = data.draw(birth_times(h.vertex_count))
    try:
        tr = run_mgc(h, t, lay)
    except DegenerateEdgeError:
        return
    assert oracles.engine_invariant_violations(h.edges, tr) == []


def test_restarts_trivial():
    res = color_with_restarts(build_hypergraph(3, []), 2, 0.2, 5, 0)
    assert res.success and res.attempts == 1 and res.winning_attempt == 0
    res = color_with_restarts(build_hypergraph(1, [[0]]), 2, 0.2, 50, 0)
    assert not res.success and res.attempts == 50
    assert res.degenerate_rejections + res.improper_runs == 50


def test_restarts_deterministic():
    h = build_hypergraph(6, [[0, 1, 2], [2, 3, 4], [1, 3, 5], [0, 4, 5]])
    a = color_with_restarts(h, 2, math.log(3) / 3, 100, 11)
    b = color_with_restarts(h, 2, math.log(3) / 3, 100, 11)
    assert a.success and a.coloring == b.coloring and a.attempts == b.attempts
    assert verify_coloring(h, a.coloring, 2)
