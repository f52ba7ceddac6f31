"""Experiment drivers: success rates with certificate checks, van der Waerden search, bound sweeps."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .chains import (
    CertificateError,
    adc_count_bound_ap,
    adc_count_bound_simple,
    chain_count_bound,
    classify_chain,
    counts_by_vertex,
    enumerate_adc,
    enumerate_chains,
    extract_certificate,
    is_b_disjoint,
)
from .engine import IMPROPER, PROPER, REJECTED, DegenerateEdgeError, color_with_restarts, run_mgc
from .generators import GeneratorSpec, gen_ap_hypergraph
from .geometry import IntervalLayout, sample_birth_times
from .hypergraph import Hypergraph, max_vertex_degree, read_hypergraph, simplicity_level, uniformity, verify_coloring
from .io import dumps_jsonl, loads_jsonl, summary_csv
from .lll import prob_bounds_bdisjoint, prob_bounds_chain
from .montecarlo import chain_event_counts, cycle_of_sets, disjoint_chain_of_sets, overlapping_chain
from .rng import substream


@dataclass
class ExperimentConfig:
    kind: str
    r: int = 2
    p: Optional[float] = None
    seed: int = 0
    trials: int = 1
    instance: Optional[dict] = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind, "r": self.r, "p": self.p, "seed": self.seed,
            "trials": self.trials, "instance": self.instance, "options": self.options,
        }


@dataclass
class ExperimentReport:
    config: dict
    records: list[dict]
    summary: dict
    environment: dict = field(default_factory=lambda: {"version": __version__})

    @property
    def passed(self) -> bool:
        return bool(self.summary.get("passed", True))

    def write(self, path) -> None:
        """``<path>`` holds the per-record JSON lines; ``.summary.json`` and ``.csv`` siblings hold aggregates."""
        path = Path(path)
        path.write_text(dumps_jsonl(self.records), encoding="utf-8")
        head = {"config": self.config, "summary": self.summary, "environment": self.environment}
        path.with_suffix(".summary.json").write_text(json.dumps(head, indent=1, sort_keys=True) + "\n", encoding="utf-8")
        path.with_suffix(".csv").write_text(summary_csv(self.summary), encoding="utf-8")

    @classmethod
    def read(cls, path) -> "ExperimentReport":
        path = Path(path)
        records = loads_jsonl(path.read_text(encoding="utf-8"))
        head = json.loads(path.with_suffix(".summary.json").read_text(encoding="utf-8"))
        rep = cls(head["config"], records, head["summary"], head["environment"])
        if head["config"].get("kind") == "success_rate":
            again = summarize_success(records, head["config"]["options"].get("include_degenerate", False))
            if again != head["summary"]:
                raise ValueError("summary does not match the per-trial records")
        return rep


def load_instance(spec: dict) -> Hypergraph:
    spec = dict(spec)
    if spec.get("kind") == "file":
        return read_hypergraph(spec["path"])
    return GeneratorSpec(**spec).build()


# ---------------------------------------------------------------------------
# success rate

def run_trial(h: Hypergraph, layout: IntervalLayout, seed: int, trial: int) -> dict:
    t = sample_birth_times(h.vertex_count, substream(seed, trial))
    rec: dict[str, Any] = {"trial": trial}
    try:
        trace = run_mgc(h, t, layout)
    except DegenerateEdgeError as exc:
        rec.update(outcome=REJECTED, degenerate_edge=exc.edge_index)
        return rec
    rec.update(outcome=trace.outcome, passes=trace.passes, recolorings=len(trace.events))
    if trace.outcome == IMPROPER:
        try:
            cert = extract_certificate(h, trace)
        except CertificateError as exc:
            rec.update(certificate=None, certificate_ok=False, certificate_error=str(exc))
        else:
            flags = classify_chain(h, cert, t, layout)
            rec.update(certificate=list(cert.edges), certificate_ok=flags.complete_conflicting)
    return rec


def summarize_success(records: Sequence[dict], include_degenerate: bool = False) -> dict:
    n = len(records)
    proper = sum(r["outcome"] == PROPER for r in records)
    improper = sum(r["outcome"] == IMPROPER for r in records)
    rejected = sum(r["outcome"] == REJECTED for r in records)
    denom = n if include_degenerate else proper + improper
    ran = [r for r in records if r["outcome"] != REJECTED]
    certs = [r for r in records if r["outcome"] == IMPROPER]
    ok = sum(bool(r.get("certificate_ok")) for r in certs)
    lengths = [len(r["certificate"]) for r in certs if r.get("certificate")]
    return {
        "trials": n,
        "proper": proper,
        "improper": improper,
        "degenerate_rejected": rejected,
        "success_rate": proper / denom if denom else 0.0,
        "degenerate_rate": rejected / n if n else 0.0,
        "mean_passes": sum(r["passes"] for r in ran) / len(ran) if ran else 0.0,
        "certified": ok,
        "certificate_rate": ok / len(certs) if certs else 1.0,
        "mean_certificate_length": sum(lengths) / len(lengths) if lengths else 0.0,
        "passed": ok == len(certs),
    }


def run_success_rate(
    h: Hypergraph, r: int, p: float, trials: int, seed: int, include_degenerate: bool = False,
    instance: Optional[dict] = None,
) -> ExperimentReport:
    layout = IntervalLayout(r, p)
    records = [run_trial(h, layout, seed, i) for i in range(trials)]
    cfg = ExperimentConfig("success_rate", r, p, seed, trials, instance, {"include_degenerate": include_degenerate})
    return ExperimentReport(cfg.to_dict(), records, summarize_success(records, include_degenerate),
                            {"version": __version__, "seed": seed})


# ---------------------------------------------------------------------------
# van der Waerden

def monochromatic_ap(coloring: Sequence[int], n: int) -> Optional[tuple[int, int]]:
    """(start, difference) of an n-term monochromatic progression in the coloring, if any.

    Scans positions directly rather than going through a hypergraph.
    """
    W = len(coloring)
    for a in range(W):
        g = 1
        while a + (n - 1) * g < W:
            c = coloring[a]
            if all(coloring[a + i * g] == c for i in range(1, n)):
                return a, g
            g += 1
    return None


@dataclass
class VdwResult:
    W: int
    n: int
    r: int
    success: bool
    coloring: Optional[tuple[int, ...]]
    attempts: int
    verified: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "W": self.W, "n": self.n, "r": self.r, "success": self.success,
            "coloring": None if self.coloring is None else list(self.coloring),
            "attempts": self.attempts, "verified": self.verified,
        }


def run_vdw_search(W: int, n: int, r: int, p: Optional[float], max_restarts: int, seed: int) -> VdwResult:
    if p is None:
        p = math.log(n) / n
    h = gen_ap_hypergraph(W, n)
    res = color_with_restarts(h, r, p, max_restarts, seed)
    verified = None
    if res.success:
        verified = monochromatic_ap(res.coloring, n) is None and verify_coloring(h, res.coloring, r)
    return VdwResult(W, n, r, res.success, res.coloring, res.attempts, verified)


# ---------------------------------------------------------------------------
# bound sweeps

SWEEP_KINDS = ("chains41", "cycles42", "cycles61", "probs52", "probs72")


def _edge_size(h: Hypergraph) -> int:
    n = uniformity(h)
    return n if n is not None else max((len(e) for e in h.edges), default=0)


def _counting_points(kind: str, h: Hypergraph, ks: Sequence[int]) -> list[dict]:
    n, d = _edge_size(h), max_vertex_degree(h)
    out = []
    for k in ks:
        if kind == "chains41":
            counts = counts_by_vertex(h, enumerate_chains(h, k))
            bound = chain_count_bound(n, d, k)
        else:
            if kind == "cycles42" and simplicity_level(h) > 1:
                raise ValueError("cycles42 needs a simple hypergraph")
            cycles = enumerate_adc(h, k)
            if kind == "cycles61":
                cycles = [c for c in cycles if c.closing_size == 1]
                bound = adc_count_bound_ap(n, d, k)
            else:
                bound = adc_count_bound_simple(n, d, k)
            counts = counts_by_vertex(h, cycles, key=lambda c: c.chain)
        observed = max(counts, default=0)
        out.append({"k": k, "n": n, "d": d, "observed": observed, "bound": bound, "pass": observed <= bound})
    return out


def _mc_point(h, chain, layout, samples, seed, bounds: dict) -> dict:
    counts = chain_event_counts(h, chain, layout, samples, seed)
    rec = {"samples": samples}
    ok = True
    for event, bound in bounds.items():
        f, se = counts.frequency(event), counts.standard_error(event)
        good = f <= bound + 3 * se
        ok &= good
        rec[event] = {"observed": f, "se": se, "bound": bound, "pass": good}
    rec["pass"] = ok
    return rec


def run_bound_sweep(
    kind: str, instance: Optional[dict] = None, grid: Optional[dict] = None, seed: int = 0
) -> ExperimentReport:
    """Check observed counts or frequencies against their closed-form bounds over a grid.

    Counting kinds take an instance spec and ``grid={"k": [...]}``. ``probs52``
    takes ``grid={"m": [...], "k": [...], "r": [...], "p": [...], "samples": N,
    "shape": "chain"|"cycle"}``; ``probs72`` takes ``grid={"n": [...], "b": [...],
    "k": [...], "r": [...], "p": [...], "samples": N, "overlaps": [[i, j], ...]}``.
    """
    grid = dict(grid or {})
    records: list[dict] = []
    if kind in ("chains41", "cycles42", "cycles61"):
        if instance is None:
            raise ValueError(f"{kind} needs an instance")
        h = load_instance(instance)
        records = _counting_points(kind, h, grid.get("k", [1, 2, 3]))
    elif kind == "probs52":
        samples = int(grid.get("samples", 10 ** 6))
        shape = grid.get("shape", "chain")
        i = 0
        for m in grid.get("m", [1, 2, 3]):
            for k in grid.get("k", [1, 2, 3]):
                if shape == "cycle" and k < 3:
                    continue
                h, chain = (cycle_of_sets if shape == "cycle" else disjoint_chain_of_sets)(m, k)
                for r in grid.get("r", [2, 3]):
                    for p in grid.get("p", [0.1, 0.3]):
                        b = prob_bounds_chain(m, k, r, p)._asdict()
                        rec = _mc_point(h, chain, IntervalLayout(r, p), samples, seed + i, b)
                        rec.update(m=m, k=k, r=r, p=p, shape=shape)
                        records.append(rec)
                        i += 1
    elif kind == "probs72":
        samples = int(grid.get("samples", 10 ** 6))
        overlaps = [tuple(o) for o in grid.get("overlaps", [])]
        i = 0
        for n in grid.get("n", [10, 12]):
            for b in grid.get("b", [1]):
                for k in grid.get("k", [2]):
                    h, chain = overlapping_chain(n, k, overlaps)
                    if not is_b_disjoint(h, chain, b):
                        raise ValueError(f"constructed chain is not {b}-disjoint")
                    for r in grid.get("r", [2]):
                        for p in grid.get("p", [0.1, 0.3]):
                            bd = prob_bounds_bdisjoint(n, b, k, r, p)._asdict()
                            rec = _mc_point(h, chain, IntervalLayout(r, p), samples, seed + i, bd)
                            rec.update(n=n, b=b, k=k, r=r, p=p, overlaps=[list(o) for o in overlaps])
                            records.append(rec)
                            i += 1
    else:
        raise ValueError(f"unknown sweep kind {kind!r}; expected one of {SWEEP_KINDS}")
    summary = {"points": len(records), "failures": sum(not r["pass"] for r in records)}
    summary["passed"] = summary["failures"] == 0
    cfg = ExperimentConfig(kind, seed=seed, instance=instance, options={"grid": grid})
    return ExperimentReport(cfg.to_dict(), records, summary, {"version": __version__, "seed": seed})
