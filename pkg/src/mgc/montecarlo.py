"""Monte-Carlo frequencies of chain events under uniform birth times.

Edge and chain classification is re-implemented here on numpy arrays so that
millions of samples are cheap; ``tests/test_montecarlo.py`` checks it against the
scalar predicates in :mod:`mgc.chains`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chains import Chain, validate_chain
from .geometry import IntervalLayout
from .hypergraph import Hypergraph, build_hypergraph
from .rng import substream


def disjoint_chain_of_sets(m: int, k: int) -> tuple[Hypergraph, Chain]:
    """(m+2)-uniform disjoint chain of k sets; consecutive sets share one vertex."""
    if m < 0 or k < 1:
        raise ValueError("need m >= 0, k >= 1")
    size = m + 2
    sets: list[list[int]] = []
    nxt = 0
    shared = None
    for i in range(k):
        s = [] if shared is None else [shared]
        while len(s) < size:
            s.append(nxt)
            nxt += 1
        shared = s[-1] if i < k - 1 else None
        sets.append(s)
    h = build_hypergraph(nxt, sets)
    chain = validate_chain(h, range(k))
    assert chain is not None
    return h, chain


def cycle_of_sets(m: int, k: int) -> tuple[Hypergraph, Chain]:
    """(m+2)-uniform almost disjoint cycle of k >= 3 sets with |s_1 ∩ s_k| = 1."""
    if k < 3:
        raise ValueError("cycles need k >= 3")
    h, chain = disjoint_chain_of_sets(m, k)
    edges = [list(e) for e in h.edges]
    a = next(v for v in edges[0] if v not in chain.vertices)
    z = next(v for v in edges[-1] if v not in chain.vertices)
    edges[-1] = [a if v == z else v for v in edges[-1]]
    g = build_hypergraph(h.vertex_count, edges)
    return g, validate_chain(g, range(k))


def overlapping_chain(n: int, k: int, overlaps: Sequence[tuple[int, int]] = ()) -> tuple[Hypergraph, Chain]:
    """n-uniform chain of k edges where each pair (i, j), j > i + 1, shares one extra vertex."""
    h, chain = disjoint_chain_of_sets(n - 2, k)
    edges = [list(e) for e in h.edges]
    boundary = set(chain.vertices)
    used_private: set[int] = set()
    for i, j in overlaps:
        if not j > i + 1:
            raise ValueError(f"overlap ({i}, {j}) is not between non-consecutive edges")
        src = next(v for v in edges[i] if v not in boundary and v not in used_private)
        dst = next(v for v in edges[j] if v not in boundary and v not in used_private)
        used_private.update((src, dst))
        edges[j] = [src if v == dst else v for v in edges[j]]
    g = build_hypergraph(h.vertex_count, edges)
    c = validate_chain(g, range(k))
    if c is None:
        raise ValueError("overlaps broke the chain property")
    return g, c


@dataclass
class EventCounts:
    samples: int
    alternating: int
    conflicting: int
    complete: int

    def frequency(self, event: str) -> float:
        return getattr(self, event) / self.samples

    def standard_error(self, event: str) -> float:
        f = self.frequency(event)
        return math.sqrt(max(f * (1 - f), 0.0) / self.samples)


def _batch_flags(h: Hypergraph, chain: Chain, layout: IntervalLayout, t: np.ndarray):
    r = layout.r
    bounds = np.asarray(layout.bounds)
    pos = np.searchsorted(bounds, t, side="right") - 1
    is_p = (pos % 2) == 1
    idx = pos // 2
    rows = np.arange(t.shape[0])
    plain_all = np.ones(t.shape[0], dtype=bool)
    firsts, lasts = [], []
    for e_i in chain.edges:
        e = np.asarray(h.edges[e_i])
        tt, pe, ie = t[:, e], is_p[:, e], idx[:, e]
        cmask = ~pe
        has_c = cmask.any(axis=1)
        hi = np.where(cmask, ie, -1).max(axis=1)
        lo = np.where(cmask, ie, r).min(axis=1)
        home = hi
        prev = (home - 1) % r
        p_ok = (cmask | (ie == home[:, None]) | (ie == prev[:, None])).all(axis=1)
        plain = has_c & (hi == lo) & p_ok
        start = bounds[2 * prev + 1][:, None]
        # clockwise order from start: unwrapped points (t >= start) ascending, then wrapped ones
        ahead = tt >= start
        first = np.where(ahead.any(axis=1), np.argmin(np.where(ahead, tt, np.inf), axis=1), np.argmin(tt, axis=1))
        behind = ~ahead
        last = np.where(behind.any(axis=1), np.argmax(np.where(behind, tt, -np.inf), axis=1), np.argmax(tt, axis=1))
        firsts.append(e[first])
        lasts.append(e[last])
        plain_all &= plain
    alt = plain_all.copy()
    for i, v in enumerate(chain.vertices):
        alt &= (firsts[i] == v) & (lasts[i + 1] == v) & is_p[:, v]
    if r > 2:
        for a, b in zip(chain.vertices, chain.vertices[1:]):
            alt &= ((idx[:, b] - idx[:, a]) % r) == r - 1
    conf = alt & ~is_p[rows, lasts[0]]
    comp = conf & ~is_p[rows, firsts[-1]]
    return alt, conf, comp


def chain_event_counts(
    h: Hypergraph,
    chain: Chain,
    layout: IntervalLayout,
    samples: int,
    seed: int,
    batch: int = 200_000,
) -> EventCounts:
    rng = substream(seed, 0)
    alt = conf = comp = 0
    done = 0
    while done < samples:
        size = min(batch, samples - done)
        t = rng.random((size, h.vertex_count))
        a, c, x = _batch_flags(h, chain, layout, t)
        alt += int(a.sum())
        conf += int(c.sum())
        comp += int(x.sum())
        done += size
    return EventCounts(samples, alt, conf, comp)


def batch_flags(h: Hypergraph, chain: Chain, layout: IntervalLayout, t: np.ndarray):
    """Per-sample (alternating, conflicting, complete) arrays for birth times ``t``."""
    return _batch_flags(h, chain, layout, np.asarray(t, dtype=float))
