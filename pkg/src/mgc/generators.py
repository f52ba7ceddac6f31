"""Instance generators.

Arithmetic-progression hypergraphs use vertices ``0..W-1`` standing for the
integers ``1..W``; an edge is the vertex set of an ``n``-term progression.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .hypergraph import Hypergraph, build_hypergraph


def ap_edge_count(W: int, n: int) -> int:
    """Closed form: sum over differences g >= 1 with (n-1)g <= W-1 of W - (n-1)g."""
    total = 0
    g = 1
    while (n - 1) * g <= W - 1:
        total += W - (n - 1) * g
        g += 1
    return total


def gen_ap_hypergraph(W: int, n: int) -> Hypergraph:
    if not 2 <= n <= W:
        raise ValueError(f"need 2 <= n <= W, got n={n}, W={W}")
    edges = []
    for start in range(W):
        g = 1
        while start + (n - 1) * g <= W - 1:
            edges.append([start + i * g for i in range(n)])
            g += 1
    return build_hypergraph(W, edges)


def gen_random_simple(
    vertex_count: int,
    n: int,
    d: int,
    b: int,
    seed: int,
    target_edges: Optional[int] = None,
    max_attempts: Optional[int] = None,
) -> Hypergraph:
    """Random n-uniform hypergraph with max degree <= d and pairwise intersections <= b.

    Rejection sampling: candidate n-sets are drawn uniformly and kept when they
    respect both caps. Generation stops at ``target_edges`` (default
    ``vertex_count * d // n``) or after ``max_attempts`` draws. The output is not
    uniform over such hypergraphs.
    """
    if n < 1 or d < 1 or b < 0:
        raise ValueError(f"invalid parameters n={n}, d={d}, b={b}")
    if vertex_count < n:
        raise ValueError(f"cannot place {n}-element edges on {vertex_count} vertices")
    if target_edges is None:
        target_edges = vertex_count * d // n
    if max_attempts is None:
        max_attempts = 200 * max(target_edges, 1)
    rng = np.random.default_rng(seed)
    degree = [0] * vertex_count
    edges: list[frozenset[int]] = []
    incidence: list[list[int]] = [[] for _ in range(vertex_count)]
    attempts = 0
    while len(edges) < target_edges and attempts < max_attempts:
        attempts += 1
        cand = frozenset(int(x) for x in rng.choice(vertex_count, size=n, replace=False))
        if any(degree[v] >= d for v in cand):
            continue
        neighbours = {j for v in cand for j in incidence[v]}
        if any(len(cand & edges[j]) > b for j in neighbours):
            continue
        if b >= n and any(cand == edges[j] for j in neighbours):
            continue
        idx = len(edges)
        edges.append(cand)
        for v in cand:
            degree[v] += 1
            incidence[v].append(idx)
    if target_edges > 0 and not edges:
        raise RuntimeError(f"no edge accepted after {attempts} attempts")
    return build_hypergraph(vertex_count, [sorted(e) for e in edges])


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str  # "ap" or "random_simple"
    W: Optional[int] = None
    n: int = 3
    vertex_count: Optional[int] = None
    max_degree: int = 1
    b: int = 1
    seed: int = 0
    target_edges: Optional[int] = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.kind == "ap":
            if self.W is None or self.W < self.n:
                raise ValueError("ap instances need W >= n")
        elif self.kind == "random_simple":
            if self.vertex_count is None:
                raise ValueError("random instances need vertex_count")
            if self.max_degree < 1 or self.b < 1:
                raise ValueError("need max_degree >= 1 and b >= 1")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def build(self) -> Hypergraph:
        if self.kind == "ap":
            return gen_ap_hypergraph(self.W, self.n)
        return gen_random_simple(
            self.vertex_count, self.n, self.max_degree, self.b, self.seed, target_edges=self.target_edges
        )

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}
