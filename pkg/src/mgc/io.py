"""File formats: MGC trace JSON, JSON-lines experiment records and CSV aggregates."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable

from .engine import MgcTrace, RecolorEvent
from .geometry import check_injective
from .hypergraph import Hypergraph, build_hypergraph

TRACE_FORMAT = "mgc-trace/1"


def trace_to_dict(h: Hypergraph, trace: MgcTrace) -> dict[str, Any]:
    return {
        "format": TRACE_FORMAT,
        "hypergraph": {"vertex_count": h.vertex_count, "edges": [list(e) for e in h.edges]},
        "r": trace.r,
        "p": trace.p,
        "birth_times": list(trace.birth_times),
        "initial": list(trace.initial),
        "events": [
            {"vertex": ev.vertex, "old": ev.old, "new": ev.new, "pass": ev.pass_no, "edge": ev.edge}
            for ev in trace.events
        ],
        "final": list(trace.final),
        "outcome": trace.outcome,
        "passes": trace.passes,
    }


def trace_from_dict(data: dict[str, Any]) -> tuple[Hypergraph, MgcTrace]:
    if data.get("format") != TRACE_FORMAT:
        raise ValueError(f"unsupported trace format {data.get('format')!r}")
    hg = data["hypergraph"]
    h = build_hypergraph(int(hg["vertex_count"]), hg["edges"])
    t = tuple(float(x) for x in data["birth_times"])
    if len(t) != h.vertex_count:
        raise ValueError("birth-time count does not match the hypergraph")
    check_injective(t)
    events = [
        RecolorEvent(int(e["vertex"]), int(e["old"]), int(e["new"]), int(e["pass"]), int(e["edge"]))
        for e in data["events"]
    ]
    trace = MgcTrace(
        r=int(data["r"]),
        p=float(data["p"]),
        birth_times=t,
        initial=tuple(int(c) for c in data["initial"]),
        events=events,
        final=tuple(int(c) for c in data["final"]),
        outcome=str(data["outcome"]),
        passes=int(data["passes"]),
    )
    return h, trace


def dumps_trace(h: Hypergraph, trace: MgcTrace) -> str:
    return json.dumps(trace_to_dict(h, trace), indent=1) + "\n"


def loads_trace(text: str) -> tuple[Hypergraph, MgcTrace]:
    return trace_from_dict(json.loads(text))


def write_trace(h: Hypergraph, trace: MgcTrace, path) -> None:
    Path(path).write_text(dumps_trace(h, trace), encoding="utf-8")


def read_trace(path) -> tuple[Hypergraph, MgcTrace]:
    return loads_trace(Path(path).read_text(encoding="utf-8"))


def dumps_jsonl(records: Iterable[dict]) -> str:
    return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in records)


def loads_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def summary_csv(summary: dict[str, Any]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for key in sorted(summary):
        val = summary[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        w.writerow([key, val])
    return buf.getvalue()
