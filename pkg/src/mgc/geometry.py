"""Unit-circle layout of permanent and transition intervals, and edge classification.

The circle ``[0, 1)`` is cut into ``C_0, P_0, C_1, P_1, ..., C_{r-1}, P_{r-1}``
with ``|C_i| = (1-p)/r`` and ``|P_i| = p/r``. Vertices born in ``C_i`` keep color
``i``; vertices born in ``P_i`` start with color ``i`` and may move to ``i+1``.
For two colors the intervals are the familiar ``B = C_0``, ``P_B = P_0``,
``R = C_1``, ``P_R = P_1``.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

BirthTimes = tuple[float, ...]

_R2_NAMES = {("C", 0): "B", ("P", 0): "P_B", ("C", 1): "R", ("P", 1): "P_R"}

MAX_RESAMPLES = 100


class Interval(NamedTuple):
    kind: str  # "C" (permanent) or "P" (transition)
    index: int

    @property
    def is_transition(self) -> bool:
        return self.kind == "P"

    def label(self, r: int) -> str:
        if r == 2:
            return _R2_NAMES[(self.kind, self.index)]
        return f"{self.kind}_{self.index}"


@dataclass(frozen=True)
class IntervalLayout:
    r: int
    p: float

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"need at least 2 colors, got r={self.r}")
        if not isinstance(self.p, (int, float)) or math.isnan(self.p):
            raise ValueError(f"invalid p={self.p!r}")
        upper = 0.5 if self.r == 2 else 1.0
        if not 0.0 < self.p < upper:
            raise ValueError(f"p must lie in (0, {upper}) for r={self.r}, got {self.p}")
        # Boundaries [start(C_0), start(P_0), start(C_1), ...]; half-open intervals.
        if self.r == 2:
            bounds = [0.0, (1.0 - self.p) / 2, 0.5, 1.0 - self.p / 2]
        else:
            bounds = []
            for i in range(self.r):
                bounds.append(i / self.r)
                bounds.append(i / self.r + (1.0 - self.p) / self.r)
        object.__setattr__(self, "_bounds", tuple(bounds))

    @property
    def bounds(self) -> tuple[float, ...]:
        return self._bounds  # type: ignore[attr-defined]

    def interval_range(self, iv: Interval) -> tuple[float, float]:
        pos = 2 * iv.index + (1 if iv.is_transition else 0)
        lo = self.bounds[pos]
        hi = self.bounds[pos + 1] if pos + 1 < len(self.bounds) else 1.0
        return lo, hi

    def arc_start(self, home: int) -> float:
        """Start of the arc ``P_{home-1} ∪ C_home ∪ P_home``, i.e. the start of ``P_{home-1}``."""
        prev = (home - 1) % self.r
        return self.bounds[2 * prev + 1]


def classify_point(x: float, layout: IntervalLayout) -> Interval:
    if not 0.0 <= x < 1.0:
        raise ValueError(f"birth time {x} outside [0, 1)")
    pos = bisect_right(layout.bounds, x) - 1
    return Interval("P" if pos % 2 else "C", pos // 2)


def clockwise_distance(x: float, y: float) -> float:
    return (y - x) % 1.0


def clockwise_key(start: float, x: float) -> tuple[bool, float]:
    """Sort key for clockwise order from ``start``; exact, unlike comparing rounded distances."""
    return (x < start, x)


@dataclass(frozen=True)
class EdgeClass:
    tag: str  # "degenerate", "easy" or "plain"
    home: Optional[int] = None
    first: Optional[int] = None
    last: Optional[int] = None

    @property
    def is_plain(self) -> bool:
        return self.tag == "plain"


DEGENERATE = EdgeClass("degenerate")
EASY = EdgeClass("easy")


def classify_edge(edge: Sequence[int], t: Sequence[float], layout: IntervalLayout) -> EdgeClass:
    r = layout.r
    times = [t[v] for v in edge]
    if len(set(times)) != len(times):
        raise ValueError(f"birth times not injective on edge {list(edge)}")
    ivs = [classify_point(x, layout) for x in times]
    homes = {iv.index for iv in ivs if not iv.is_transition}
    if not homes:
        return DEGENERATE
    if len(homes) > 1:
        return EASY
    home = homes.pop()
    allowed = {home, (home - 1) % r}
    if any(iv.is_transition and iv.index not in allowed for iv in ivs):
        return EASY
    start = layout.arc_start(home)
    order = sorted(range(len(edge)), key=lambda j: clockwise_key(start, times[j]))
    return EdgeClass("plain", home, edge[order[0]], edge[order[-1]])


def classify_edges(edges: Sequence[Sequence[int]], t: Sequence[float], layout: IntervalLayout) -> list[EdgeClass]:
    return [classify_edge(e, t, layout) for e in edges]


def check_injective(t: Sequence[float]) -> None:
    for x in t:
        if not 0.0 <= x < 1.0:
            raise ValueError(f"birth time {x} outside [0, 1)")
    if len(set(t)) != len(t):
        raise ValueError("birth times are not injective")


def sample_birth_times(vertex_count: int, rng: np.random.Generator) -> BirthTimes:
    """Independent uniform birth times; a colliding draw is discarded whole."""
    for _ in range(MAX_RESAMPLES):
        t = tuple(float(x) for x in rng.random(vertex_count))
        if len(set(t)) == vertex_count:
            return t
    raise RuntimeError(f"birth-time collision persisted after {MAX_RESAMPLES} resamples")


def birth_times_to_json(t: Sequence[float]) -> str:
    return json.dumps([float(x) for x in t])


def birth_times_from_json(text: str) -> BirthTimes:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("birth times must be a JSON array")
    t = tuple(float(x) for x in data)
    check_injective(t)
    return t
