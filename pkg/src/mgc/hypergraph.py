"""Hypergraph representation, structural predicates and an exhaustive colorability oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence


class HypergraphError(ValueError):
    """Raised when an edge list does not describe a valid hypergraph."""


@dataclass(frozen=True)
class Hypergraph:
    """Finite hypergraph on vertices ``0..vertex_count-1``.

    Edges are stored as sorted tuples in input order; ``incidence[v]`` lists the
    indices of edges containing ``v`` in increasing order.
    """

    vertex_count: int
    edges: tuple[tuple[int, ...], ...]
    incidence: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def edge_sets(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in self.edges]


def _build_incidence(vertex_count: int, edges: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    inc: list[list[int]] = [[] for _ in range(vertex_count)]
    for idx, e in enumerate(edges):
        for v in e:
            inc[v].append(idx)
    return tuple(tuple(x) for x in inc)


def build_hypergraph(vertex_count: int, raw_edges: Iterable[Iterable[int]]) -> Hypergraph:
    if vertex_count < 0:
        raise HypergraphError(f"negative vertex count {vertex_count}")
    edges: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for idx, raw in enumerate(raw_edges):
        verts = [int(v) for v in raw]
        if not verts:
            raise HypergraphError(f"edge {idx} is empty")
        for v in verts:
            if not 0 <= v < vertex_count:
                raise HypergraphError(f"edge {idx}: vertex {v} out of range [0, {vertex_count})")
        e = tuple(sorted(verts))
        if len(set(e)) != len(e):
            raise HypergraphError(f"edge {idx}: repeated vertex in {list(verts)}")
        if e in seen:
            raise HypergraphError(f"edge {idx} duplicates edge {seen[e]}: {list(e)}")
        seen[e] = idx
        edges.append(e)
    return Hypergraph(vertex_count, tuple(edges), _build_incidence(vertex_count, edges))


def max_vertex_degree(h: Hypergraph) -> int:
    return max((len(x) for x in h.incidence), default=0)


def simplicity_level(h: Hypergraph) -> int:
    """Largest pairwise edge intersection; 0 for fewer than two edges."""
    sets = h.edge_sets()
    best = 0
    # Only pairs sharing a vertex can beat 0; walk incidence lists instead of all pairs.
    for inc in h.incidence:
        for a, b in combinations(inc, 2):
            best = max(best, len(sets[a] & sets[b]))
    return best


def uniformity(h: Hypergraph) -> Optional[int]:
    """Common edge size, or None if sizes differ or there are no edges."""
    sizes = {len(e) for e in h.edges}
    if len(sizes) == 1:
        return sizes.pop()
    return None


def trim(h: Hypergraph) -> Hypergraph:
    """Remove from every edge one of its maximum-degree vertices (lowest index on ties)."""
    new_edges = []
    for idx, e in enumerate(h.edges):
        if len(e) < 2:
            raise HypergraphError(f"cannot trim edge {idx} of size {len(e)}")
        drop = max(e, key=lambda v: (h.degree(v), -v))
        new_edges.append([v for v in e if v != drop])
    try:
        return build_hypergraph(h.vertex_count, new_edges)
    except HypergraphError as exc:
        raise HypergraphError(f"trimming produced an invalid hypergraph: {exc}") from exc


def verify_coloring(h: Hypergraph, coloring: Sequence[int], r: int) -> bool:
    """True iff no edge is monochromatic."""
    if len(coloring) != h.vertex_count:
        raise ValueError(f"coloring has length {len(coloring)}, expected {h.vertex_count}")
    for c in coloring:
        if not 0 <= c < r:
            raise ValueError(f"color {c} outside [0, {r})")
    for e in h.edges:
        first = coloring[e[0]]
        if all(coloring[v] == first for v in e):
            return False
    return True


def exhaustive_r_colorable(h: Hypergraph, r: int) -> Optional[tuple[int, ...]]:
    """Lexicographically first proper r-coloring, or None.

    Backtracking over vertices in index order with colors tried in increasing
    order, so the first complete assignment found is the lexicographic minimum.
    An edge is checked once its largest vertex is assigned.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    nv = h.vertex_count
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(nv)]
    for e in h.edges:
        closing[e[-1]].append(e)
    colors = [0] * nv

    def ok(v: int) -> bool:
        c = colors[v]
        for e in closing[v]:
            if all(colors[u] == c for u in e):
                return False
        return True

    v = 0
    colors_tried = [-1] * nv
    while 0 <= v < nv:
        colors_tried[v] += 1
        if colors_tried[v] >= r:
            colors_tried[v] = -1
            v -= 1
            continue
        colors[v] = colors_tried[v]
        if ok(v):
            v += 1
    if v < 0:
        return None
    return tuple(colors)


# ---------------------------------------------------------------------------
# text format: "HG <vertex_count> <edge_count>" then one edge per line

def format_hypergraph(h: Hypergraph) -> str:
    lines = [f"HG {h.vertex_count} {h.edge_count}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    header = None
    edges: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "HG":
                raise HypergraphError(f"line {lineno}: expected 'HG <vertices> <edges>' header")
            header = (int(parts[1]), int(parts[2]))
            continue
        try:
            edges.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise HypergraphError(f"line {lineno}: {exc}") from exc
    if header is None:
        raise HypergraphError("missing HG header")
    if len(edges) != header[1]:
        raise HypergraphError(f"header declares {header[1]} edges, found {len(edges)}")
    return build_hypergraph(header[0], edges)


def read_hypergraph(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_hypergraph(h))
