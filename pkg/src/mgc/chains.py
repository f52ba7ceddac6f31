"""Chains of edges: validation, classification, b-disjointness and certificates.

A sequence of edges ``(s_1, ..., s_k)`` is a chain when consecutive edges meet in
exactly one vertex ``v_i`` and the ``v_i`` are pairwise distinct. Chains are
ordered; a chain and its reversal are different objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from .engine import MgcTrace
from .geometry import IntervalLayout, classify_edge, classify_point
from .hypergraph import Hypergraph, uniformity


class CertificateError(RuntimeError):
    pass


@dataclass(frozen=True)
class Chain:
    edges: tuple[int, ...]
    vertices: tuple[int, ...]  # v_i = s_i ∩ s_{i+1}

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ChainClassification:
    disjoint: bool
    almost_disjoint_cycle: bool
    alternating: bool
    conflicting: bool
    complete_conflicting: bool
    b_disjoint: Optional[bool] = None


class CycleRecord(NamedTuple):
    chain: Chain
    closing_size: int  # |s_1 ∩ s_k|


def validate_chain(h: Hypergraph, edge_sequence: Sequence[int]) -> Optional[Chain]:
    seq = tuple(edge_sequence)
    if not seq:
        return None
    sets = [set(h.edges[i]) for i in seq]
    verts = []
    for a, b in zip(sets, sets[1:]):
        common = a & b
        if len(common) != 1:
            return None
        verts.append(next(iter(common)))
    if len(set(verts)) != len(verts):
        return None
    return Chain(seq, tuple(verts))


def is_disjoint(h: Hypergraph, chain: Chain) -> bool:
    sets = [set(h.edges[i]) for i in chain.edges]
    k = len(sets)
    for i in range(k):
        for j in range(i + 2, k):
            if sets[i] & sets[j]:
                return False
    return True


def is_almost_disjoint_cycle(h: Hypergraph, chain: Chain) -> bool:
    k = len(chain)
    if k < 3:
        return False
    first, last = set(h.edges[chain.edges[0]]), set(h.edges[chain.edges[-1]])
    if not first & last:
        return False
    head = Chain(chain.edges[:-1], chain.vertices[:-1])
    tail = Chain(chain.edges[1:], chain.vertices[1:])
    return is_disjoint(h, head) and is_disjoint(h, tail)


# ---------------------------------------------------------------------------
# b-disjointness

def _chain_n(h: Hypergraph, chain: Chain) -> int:
    n = uniformity(h)
    if n is None:
        sizes = {len(h.edges[i]) for i in chain.edges}
        if len(sizes) != 1:
            raise ValueError("b-disjointness needs a uniform chain")
        n = sizes.pop()
    return n


def is_b_disjoint(h: Hypergraph, chain: Chain, b: int) -> bool:
    """Decide b-disjointness by dynamic programming over intervals.

    Under a connected permutation every prefix covers an interval ``[lo, hi]`` of
    positions, and the union of the edges placed so far depends only on that
    interval. So it suffices to know which intervals are reachable.
    """
    n = _chain_n(h, chain)
    sets = [frozenset(h.edges[i]) for i in chain.edges]
    k = len(sets)

    def ok(idx: int, u: frozenset) -> bool:
        return len(sets[idx] - u) >= n - b

    unions: dict[tuple[int, int], frozenset] = {}

    def union(lo: int, hi: int) -> frozenset:
        key = (lo, hi)
        u = unions.get(key)
        if u is None:
            u = sets[lo] if lo == hi else union(lo, hi - 1) | sets[hi]
            unions[key] = u
        return u

    reachable = {(i, i) for i in range(k)}
    for width in range(1, k):
        nxt = set()
        for lo, hi in reachable:
            u = union(lo, hi)
            if lo > 0 and ok(lo - 1, u):
                nxt.add((lo - 1, hi))
            if hi < k - 1 and ok(hi + 1, u):
                nxt.add((lo, hi + 1))
        reachable = nxt
        if not reachable:
            return False
    return (0, k - 1) in reachable


def connected_permutations(k: int) -> Iterator[tuple[int, ...]]:
    """All permutations of ``range(k)`` whose every prefix is a contiguous block."""
    def extend(perm: list[int], lo: int, hi: int):
        if len(perm) == k:
            yield tuple(perm)
            return
        if lo > 0:
            perm.append(lo - 1)
            yield from extend(perm, lo - 1, hi)
            perm.pop()
        if hi < k - 1:
            perm.append(hi + 1)
            yield from extend(perm, lo, hi + 1)
            perm.pop()

    for start in range(k):
        yield from extend([start], start, start)


def is_b_disjoint_exhaustive(h: Hypergraph, chain: Chain, b: int) -> bool:
    """Reference check trying every connected permutation explicitly."""
    n = _chain_n(h, chain)
    sets = [set(h.edges[i]) for i in chain.edges]
    for perm in connected_permutations(len(sets)):
        seen = set(sets[perm[0]])
        good = True
        for idx in perm[1:]:
            if len(sets[idx] - seen) < n - b:
                good = False
                break
            seen |= sets[idx]
        if good:
            return True
    return False


# ---------------------------------------------------------------------------
# classification against birth times

def _alternating_two(classes, ivs, chain: Chain) -> bool:
    """The two-color definition: no easy/degenerate edge, first(s_i) = last(s_{i+1}) = v_i ∈ P."""
    for cls in classes:
        if not cls.is_plain:
            return False
    for i, v in enumerate(chain.vertices):
        if classes[i].first != v or classes[i + 1].last != v:
            return False
        if not ivs[v].is_transition:
            return False
    return True


def _alternating_r(classes, ivs, chain: Chain, r: int) -> bool:
    """The r-color definition: as above, and v_1, v_2, ... lie in P_{j-1}, P_{j-2}, ... ."""
    if not _alternating_two(classes, ivs, chain):
        return False
    idx = [ivs[v].index for v in chain.vertices]
    return all((b - a) % r == r - 1 for a, b in zip(idx, idx[1:]))


def classify_chain(
    h: Hypergraph,
    chain: Chain,
    t: Sequence[float],
    layout: IntervalLayout,
    b: Optional[int] = None,
    definition: Optional[str] = None,
) -> ChainClassification:
    """Evaluate all chain flags for the given birth times.

    ``definition`` selects the alternating predicate: ``"two"`` (two-color
    wording) or ``"r"`` (consecutive transition intervals). Defaults to
    ``"two"`` for r = 2 and ``"r"`` otherwise.
    """
    classes = [classify_edge(h.edges[i], t, layout) for i in chain.edges]
    ivs = {}
    for cls in classes:
        for v in (cls.first, cls.last):
            if v is not None:
                ivs[v] = classify_point(t[v], layout)
    for v in chain.vertices:
        ivs.setdefault(v, classify_point(t[v], layout))
    if definition is None:
        definition = "two" if layout.r == 2 else "r"
    if definition == "two":
        alternating = _alternating_two(classes, ivs, chain)
    elif definition == "r":
        alternating = _alternating_r(classes, ivs, chain, layout.r)
    else:
        raise ValueError(f"unknown definition {definition!r}")
    conflicting = alternating and not ivs[classes[0].last].is_transition
    complete = conflicting and not ivs[classes[-1].first].is_transition
    return ChainClassification(
        disjoint=is_disjoint(h, chain),
        almost_disjoint_cycle=is_almost_disjoint_cycle(h, chain),
        alternating=alternating,
        conflicting=conflicting,
        complete_conflicting=complete,
        b_disjoint=None if b is None else is_b_disjoint(h, chain, b),
    )


def extract_certificate(h: Hypergraph, trace: MgcTrace) -> Chain:
    """Complete conflicting chain explaining an improper MGC outcome.

    Start from a monochromatic edge of the final coloring; while the current
    last edge starts in a transition interval, its first vertex was recolored,
    and the edge that triggered that recoloring is appended. Recoloring times
    strictly decrease along the chain, so the construction terminates.
    """
    layout = trace.layout
    t = trace.birth_times
    final = trace.final
    start = None
    for idx, e in enumerate(h.edges):
        c = final[e[0]]
        if all(final[v] == c for v in e):
            start = idx
            break
    if start is None:
        raise CertificateError("coloring is proper; there is nothing to certify")
    when = trace.recolor_order()
    cause = {ev.vertex: ev.edge for ev in trace.events}
    seq = [start]
    bound = len(trace.events) + 1
    while True:
        cls = classify_edge(h.edges[seq[-1]], t, layout)
        if not cls.is_plain:
            raise CertificateError(f"edge {seq[-1]} in certificate is {cls.tag}")
        u = cls.first
        if not classify_point(t[u], layout).is_transition:
            break
        if u not in when:
            raise CertificateError(f"first vertex {u} of edge {seq[-1]} lies in a transition interval but was never recolored")
        if len(seq) > 1:
            prev_first = classify_edge(h.edges[seq[-2]], t, layout).first
            if not when[u] < when[prev_first]:
                raise CertificateError("recoloring times do not decrease along the certificate")
        seq.append(cause[u])
        if len(seq) > bound:
            raise CertificateError("certificate construction did not terminate")
    chain = validate_chain(h, seq)
    if chain is None:
        raise CertificateError(f"edge sequence {seq} is not a chain")
    flags = classify_chain(h, chain, t, layout)
    if not flags.complete_conflicting:
        raise CertificateError(f"chain {seq} is not complete conflicting: {flags}")
    return chain


# ---------------------------------------------------------------------------
# enumeration (small instances only)

def _extend_chains(h: Hypergraph, k: int, disjoint_only: bool = False) -> Iterator[tuple[list[int], list[int]]]:
    sets = h.edge_sets()
    m = len(sets)

    def rec(seq: list[int], verts: list[int]):
        if len(seq) == k:
            yield seq, verts
            return
        cur = seq[-1]
        cand = set()
        for v in h.edges[cur]:
            cand.update(h.incidence[v])
        for nxt in sorted(cand):
            common = sets[cur] & sets[nxt]
            if len(common) != 1:
                continue
            (w,) = common
            if w in verts:
                continue
            if disjoint_only and any(sets[nxt] & sets[j] for j in seq[:-1]):
                continue
            seq.append(nxt)
            verts.append(w)
            yield from rec(seq, verts)
            seq.pop()
            verts.pop()

    for s in range(m):
        yield from rec([s], [])


def _contains(h: Hypergraph, seq: Sequence[int], v: int) -> bool:
    return any(v in h.edges[i] for i in seq)


def enumerate_chains(h: Hypergraph, k: int) -> list[Chain]:
    if k < 1:
        raise ValueError("chain length must be >= 1")
    return [Chain(tuple(s), tuple(vs)) for s, vs in _extend_chains(h, k)]


def enumerate_chains_at(h: Hypergraph, v: int, k: int) -> list[Chain]:
    return [c for c in enumerate_chains(h, k) if _contains(h, c.edges, v)]


def enumerate_adc(h: Hypergraph, k: int) -> list[CycleRecord]:
    """All almost disjoint cycles of length k, with their closing intersection size."""
    if k < 3:
        raise ValueError("almost disjoint cycles have length >= 3")
    sets = h.edge_sets()
    out = []
    for seq, verts in _extend_chains(h, k - 1, disjoint_only=True):
        first, last = seq[0], seq[-1]
        cand = set()
        for u in h.edges[last]:
            cand.update(h.incidence[u])
        for nxt in sorted(cand):
            common = sets[last] & sets[nxt]
            if len(common) != 1:
                continue
            (w,) = common
            if w in verts:
                continue
            closing = sets[first] & sets[nxt]
            if not closing:
                continue
            if any(sets[nxt] & sets[j] for j in seq[1:-1]):
                continue
            out.append(CycleRecord(Chain(tuple(seq) + (nxt,), tuple(verts) + (w,)), len(closing)))
    return out


def enumerate_adc_at(h: Hypergraph, v: int, k: int) -> list[CycleRecord]:
    return [c for c in enumerate_adc(h, k) if _contains(h, c.chain.edges, v)]


def enumerate_non_b_disjoint_at(h: Hypergraph, v: int, k: int, b: int) -> list[Chain]:
    if k < 3:
        raise ValueError("length must be >= 3")
    return [c for c in enumerate_chains_at(h, v, k) if not is_b_disjoint(h, c, b)]


def counts_by_vertex(h: Hypergraph, objects: Sequence, key=lambda o: o) -> list[int]:
    """Number of objects containing each vertex (one global enumeration, bucketed)."""
    counts = [0] * h.vertex_count
    for obj in objects:
        edges = key(obj).edges
        verts = set()
        for i in edges:
            verts.update(h.edges[i])
        for u in verts:
            counts[u] += 1
    return counts


# ---------------------------------------------------------------------------
# counting bounds

def chain_count_bound(n: int, d: int, k: int) -> int:
    """Chains of length k through a vertex: at most d k (nd)^(k-1)."""
    return d * k * (n * d) ** (k - 1)


def adc_count_bound_simple(n: int, d: int, k: int) -> int:
    """Almost disjoint cycles of length k >= 3 through a vertex, simple case."""
    return k * d * (k - 1) * (n * d) ** (k - 2) * n ** 2


def adc_count_bound_ap(n: int, d: int, k: int) -> int:
    """Arithmetic-progression hypergraphs, cycles with |s_1 ∩ s_k| = 1."""
    return k ** 2 * d * (n * d) ** (k - 2) * n ** 4
