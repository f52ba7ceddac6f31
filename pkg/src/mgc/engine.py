"""Multipass greedy coloring for two colors and its r-color generalization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .geometry import (
    IntervalLayout,
    check_injective,
    classify_edges,
    classify_point,
    sample_birth_times,
)
from .hypergraph import Hypergraph, verify_coloring
from .rng import substream

PROPER = "proper"
IMPROPER = "improper"
REJECTED = "rejected-degenerate"

BLUE, RED = 0, 1


class DegenerateEdgeError(ValueError):
    def __init__(self, edge_index: int, edge: Sequence[int]):
        super().__init__(f"edge {edge_index} {list(edge)} is degenerate (no birth time in a permanent interval)")
        self.edge_index = edge_index
        self.edge = tuple(edge)


class EngineError(RuntimeError):
    """An internal invariant of the procedure was violated."""


@dataclass(frozen=True)
class RecolorEvent:
    vertex: int
    old: int
    new: int
    pass_no: int
    edge: int  # the monochromatic edge whose last vertex triggered the recoloring


@dataclass
class MgcTrace:
    r: int
    p: float
    birth_times: tuple[float, ...]
    initial: tuple[int, ...]
    events: list[RecolorEvent]
    final: tuple[int, ...]
    outcome: str
    passes: int

    @property
    def layout(self) -> IntervalLayout:
        return IntervalLayout(self.r, self.p)

    def recolor_order(self) -> dict[int, int]:
        """Vertex -> position of its recoloring in the event sequence."""
        return {ev.vertex: i for i, ev in enumerate(self.events)}


@dataclass
class _Prepared:
    classes: list
    ivs: list
    last_of: list[list[int]]


def _prepare(h: Hypergraph, t: Sequence[float], layout: IntervalLayout) -> _Prepared:
    if len(t) != h.vertex_count:
        raise ValueError(f"{len(t)} birth times for {h.vertex_count} vertices")
    check_injective(t)
    classes = classify_edges(h.edges, t, layout)
    for idx, cls in enumerate(classes):
        if cls.tag == "degenerate":
            raise DegenerateEdgeError(idx, h.edges[idx])
    last_of: list[list[int]] = [[] for _ in range(h.vertex_count)]
    for idx, cls in enumerate(classes):
        if cls.is_plain:
            last_of[cls.last].append(idx)
    ivs = [classify_point(x, layout) for x in t]
    return _Prepared(classes, ivs, last_of)


def _mono(edge: Sequence[int], color: list[int], c: int) -> bool:
    for u in edge:
        if color[u] != c:
            return False
    return True


def _pending(h: Hypergraph, prep: _Prepared, color: list[int]) -> bool:
    """Some monochromatic edge of color c has its last vertex in P_c."""
    for idx, cls in enumerate(prep.classes):
        if not cls.is_plain:
            continue
        iv = prep.ivs[cls.last]
        if iv.is_transition and _mono(h.edges[idx], color, iv.index):
            return True
    return False


def _trigger(h: Hypergraph, prep: _Prepared, color: list[int], v: int) -> Optional[int]:
    c = color[v]
    for idx in prep.last_of[v]:
        if _mono(h.edges[idx], color, c):
            return idx
    return None


def mgc2(h: Hypergraph, t: Sequence[float], layout: IntervalLayout) -> MgcTrace:
    """Two-color multipass greedy coloring.

    Blue on ``B ∪ P_B``, red on ``R ∪ P_R``; then, while some blue edge ends in
    ``P_B`` or some red edge ends in ``P_R``, sweep ``P_B`` then ``P_R`` in
    birth-time order flipping every vertex that is currently the last vertex of
    a monochromatic edge.
    """
    if layout.r != 2:
        raise ValueError("mgc2 needs a two-color layout")
    prep = _prepare(h, t, layout)
    color = [iv.index for iv in prep.ivs]
    initial = tuple(color)
    pb = sorted((v for v, iv in enumerate(prep.ivs) if iv == ("P", BLUE)), key=lambda v: t[v])
    pr = sorted((v for v, iv in enumerate(prep.ivs) if iv == ("P", RED)), key=lambda v: t[v])
    events: list[RecolorEvent] = []
    recolored: set[int] = set()
    passes = 0
    while _pending(h, prep, color):
        passes += 1
        for src, dst, order in ((BLUE, RED, pb), (RED, BLUE, pr)):
            for v in order:
                if color[v] != src:
                    continue
                cause = _trigger(h, prep, color, v)
                if cause is None:
                    continue
                if v in recolored:
                    raise EngineError(f"vertex {v} recolored twice")
                recolored.add(v)
                color[v] = dst
                events.append(RecolorEvent(v, src, dst, passes, cause))
    final = tuple(color)
    outcome = PROPER if verify_coloring(h, final, 2) else IMPROPER
    return MgcTrace(2, layout.p, tuple(t), initial, events, final, outcome, passes)


def mgc_r(h: Hypergraph, t: Sequence[float], layout: IntervalLayout) -> MgcTrace:
    """r-color multipass greedy coloring.

    Color ``i`` on ``C_i ∪ P_i``. Each pass visits all transition vertices in
    global birth-time order and moves ``v ∈ P_i`` from ``i`` to ``i+1 mod r`` when
    it is the last vertex of an edge colored entirely ``i``. Passes repeat while
    a monochromatic edge of color ``i`` ends in ``P_i``.
    """
    r = layout.r
    prep = _prepare(h, t, layout)
    color = [iv.index for iv in prep.ivs]
    initial = tuple(color)
    order = sorted((v for v, iv in enumerate(prep.ivs) if iv.is_transition), key=lambda v: t[v])
    events: list[RecolorEvent] = []
    recolored: set[int] = set()
    passes = 0
    while _pending(h, prep, color):
        passes += 1
        for v in order:
            home = prep.ivs[v].index
            if color[v] != home:
                continue
            cause = _trigger(h, prep, color, v)
            if cause is None:
                continue
            if v in recolored:
                raise EngineError(f"vertex {v} recolored twice")
            recolored.add(v)
            new = (home + 1) % r
            color[v] = new
            events.append(RecolorEvent(v, home, new, passes, cause))
    final = tuple(color)
    outcome = PROPER if verify_coloring(h, final, r) else IMPROPER
    return MgcTrace(r, layout.p, tuple(t), initial, events, final, outcome, passes)


def run_mgc(h: Hypergraph, t: Sequence[float], layout: IntervalLayout) -> MgcTrace:
    return mgc2(h, t, layout) if layout.r == 2 else mgc_r(h, t, layout)


@dataclass
class RestartResult:
    success: bool
    coloring: Optional[tuple[int, ...]]
    attempts: int
    degenerate_rejections: int
    improper_runs: int
    last_trace: Optional[MgcTrace] = field(default=None, repr=False)

    @property
    def winning_attempt(self) -> Optional[int]:
        return self.attempts - 1 if self.success else None


def color_with_restarts(
    h: Hypergraph, r: int, p: float, max_restarts: int, seed: int
) -> RestartResult:
    """Sample birth times until MGC returns a proper coloring or the cap is hit.

    Attempt ``i`` draws from the substream ``(seed, i)``; the first success in
    attempt order wins. Degenerate draws count as attempts.
    """
    layout = IntervalLayout(r, p)
    rejections = improper = 0
    trace = None
    for attempt in range(max_restarts):
        t = sample_birth_times(h.vertex_count, substream(seed, attempt))
        try:
            trace = run_mgc(h, t, layout)
        except DegenerateEdgeError:
            rejections += 1
            continue
        if trace.outcome == PROPER:
            return RestartResult(True, trace.final, attempt + 1, rejections, improper, trace)
        improper += 1
    return RestartResult(False, None, max_restarts, rejections, improper, trace)
