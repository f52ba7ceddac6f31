"""Command-line entry point: ``mgc <subcommand> ...``.

Exit codes: 0 success, 1 verification failure (improper coloring, failed
condition, mismatching trace), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from typing import Optional, Sequence

from .chains import (
    CertificateError,
    classify_chain,
    enumerate_adc_at,
    enumerate_chains_at,
    enumerate_non_b_disjoint_at,
    extract_certificate,
)
from .engine import IMPROPER, PROPER, DegenerateEdgeError, color_with_restarts, run_mgc
from .generators import gen_ap_hypergraph, gen_random_simple
from .harness import SWEEP_KINDS, run_bound_sweep, run_success_rate, run_vdw_search
from .hypergraph import HypergraphError, exhaustive_r_colorable, read_hypergraph, verify_coloring, write_hypergraph
from .io import read_trace, write_trace
from .lll import FAMILY_BUILDERS, ParamSet, families_bsimple, lll_condition, max_degree_threshold
from .rng import default_seed

OK, VERIFY_FAILED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True))


# ---------------------------------------------------------------------------
# handlers

def cmd_gen(args) -> int:
    if args.kind == "ap":
        h = gen_ap_hypergraph(args.W, args.n)
    else:
        h = gen_random_simple(args.vertices, args.n, args.max_degree, args.b, args.seed, target_edges=args.edges)
    write_hypergraph(h, args.output)
    print(f"wrote {h.vertex_count} vertices, {h.edge_count} edges to {args.output}", file=sys.stderr)
    return OK


def cmd_color(args) -> int:
    h = read_hypergraph(args.input)
    res = color_with_restarts(h, args.colors, args.p, args.max_restarts, args.seed)
    if args.trace and res.last_trace is not None:
        write_trace(h, res.last_trace, args.trace)
    out = {
        "success": res.success,
        "attempts": res.attempts,
        "degenerate_rejections": res.degenerate_rejections,
        "improper_runs": res.improper_runs,
        "coloring": None if res.coloring is None else list(res.coloring),
    }
    if res.success:
        out["verified"] = verify_coloring(h, res.coloring, args.colors)
    _emit(out)
    return OK if res.success and out["verified"] else VERIFY_FAILED


def cmd_certify(args) -> int:
    h, stored = read_trace(args.trace)
    layout = stored.layout
    try:
        again = run_mgc(h, stored.birth_times, layout)
    except DegenerateEdgeError as exc:
        print(f"stored birth times make edge {exc.edge_index} degenerate", file=sys.stderr)
        return VERIFY_FAILED
    if (again.events, again.final, again.outcome) != (stored.events, stored.final, stored.outcome):
        print("replay does not match the stored trace", file=sys.stderr)
        return VERIFY_FAILED
    if stored.outcome == PROPER:
        ok = verify_coloring(h, stored.final, stored.r)
        _emit({"outcome": PROPER, "verified": ok})
        return OK if ok else VERIFY_FAILED
    try:
        cert = extract_certificate(h, stored)
    except CertificateError as exc:
        print(f"certificate extraction failed: {exc}", file=sys.stderr)
        return VERIFY_FAILED
    flags = classify_chain(h, cert, stored.birth_times, layout)
    _emit({
        "outcome": IMPROPER,
        "certificate": list(cert.edges),
        "vertices": list(cert.vertices),
        "complete_conflicting": flags.complete_conflicting,
    })
    return OK if flags.complete_conflicting else VERIFY_FAILED


def cmd_chains(args) -> int:
    h = read_hypergraph(args.input)
    if not 0 <= args.vertex < h.vertex_count:
        raise HypergraphError(f"vertex {args.vertex} is out of range")
    if args.cycles:
        seqs = [c.chain.edges for c in enumerate_adc_at(h, args.vertex, args.length)]
    elif args.not_b_disjoint is not None:
        seqs = [c.edges for c in enumerate_non_b_disjoint_at(h, args.vertex, args.length, args.not_b_disjoint)]
    else:
        seqs = [c.edges for c in enumerate_chains_at(h, args.vertex, args.length)]
    for s in seqs:
        print(" ".join(map(str, s)))
    return OK


def _params(args) -> ParamSet:
    if args.case == "simple2":
        P = ParamSet.simple(args.n)
    elif args.case == "vdw":
        P = ParamSet.vdw(args.n, args.r)
    else:
        P = ParamSet.bsimple(args.n, args.r, args.b, args.epsilon)
    overrides = {k: getattr(args, k) for k in ("p", "tau0", "K", "d") if getattr(args, k) is not None}
    return dataclasses.replace(P, **overrides) if overrides else P


def cmd_lll(args) -> int:
    P = _params(args)
    if args.case == "bsimple":
        def build(Q):
            return families_bsimple(Q, fallback=args.fallback)
    else:
        build = FAMILY_BUILDERS[args.case]
    if args.find_threshold:
        d_star = max_degree_threshold(P, build)
        _emit({"case": args.case, "threshold_d": d_star, "log_threshold_d": math.log(d_star),
               "params": dataclasses.asdict(P)})
        return OK
    rep = lll_condition(build(P), P.tau0, P)
    out = rep.to_dict()
    out["case"] = args.case
    _emit(out)
    return OK if rep.passed else VERIFY_FAILED


def cmd_vdw(args) -> int:
    if args.exhaustive:
        h = gen_ap_hypergraph(args.W, args.n)
        col = exhaustive_r_colorable(h, args.r)
        _emit({"W": args.W, "n": args.n, "r": args.r, "colorable": col is not None,
               "coloring": None if col is None else list(col)})
        return OK
    res = run_vdw_search(args.W, args.n, args.r, args.p, args.max_restarts, args.seed)
    _emit(res.to_dict())
    return OK if res.success and res.verified else VERIFY_FAILED


def _instance(args) -> Optional[dict]:
    if args.input:
        return {"kind": "file", "path": args.input}
    if args.instance:
        return json.loads(args.instance)
    return None


def cmd_sweep(args) -> int:
    grid = json.loads(args.grid) if args.grid else None
    rep = run_bound_sweep(args.kind, _instance(args), grid, args.seed)
    if args.output:
        rep.write(args.output)
    _emit(rep.summary)
    return OK if rep.passed else VERIFY_FAILED


def cmd_rate(args) -> int:
    h = read_hypergraph(args.input)
    rep = run_success_rate(h, args.colors, args.p, args.trials, args.seed, args.include_degenerate,
                           instance={"kind": "file", "path": args.input})
    if args.output:
        rep.write(args.output)
    _emit(rep.summary)
    return OK if rep.passed else VERIFY_FAILED


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    seed = default_seed()
    ap = _Parser(prog="mgc", description="Multipass greedy hypergraph coloring toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a hypergraph file")
    gsub = g.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    ga = gsub.add_parser("ap", help="arithmetic-progression hypergraph on [W]")
    ga.add_argument("--W", type=int, required=True)
    ga.add_argument("--n", type=int, required=True)
    ga.add_argument("-o", "--output", required=True)
    gr = gsub.add_parser("random", help="random n-uniform b-simple hypergraph")
    gr.add_argument("--vertices", type=int, required=True)
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--max-degree", type=int, required=True)
    gr.add_argument("--b", type=int, default=1)
    gr.add_argument("--seed", type=int, default=seed)
    gr.add_argument("--edges", type=int, default=None, help="target edge count")
    gr.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="color with restarts")
    c.add_argument("--input", required=True)
    c.add_argument("--colors", type=int, default=2)
    c.add_argument("--p", type=float, required=True)
    c.add_argument("--seed", type=int, default=seed)
    c.add_argument("--max-restarts", type=int, default=1000)
    c.add_argument("--trace", help="write the trace of the final attempt here")
    c.set_defaults(func=cmd_color)

    ce = sub.add_parser("certify", help="replay a stored trace and print its certificate")
    ce.add_argument("--trace", required=True)
    ce.set_defaults(func=cmd_certify)

    ch = sub.add_parser("chains", help="enumerate chains through a vertex")
    ch.add_argument("--input", required=True)
    ch.add_argument("--vertex", type=int, required=True)
    ch.add_argument("--length", type=int, required=True)
    mode = ch.add_mutually_exclusive_group()
    mode.add_argument("--cycles", action="store_true", help="almost disjoint cycles instead")
    mode.add_argument("--not-b-disjoint", type=int, metavar="B", help="only chains that are not B-disjoint")
    ch.set_defaults(func=cmd_chains)

    ll = sub.add_parser("lll", help="evaluate local-lemma polynomial conditions")
    ll.add_argument("--case", choices=sorted(FAMILY_BUILDERS), required=True)
    ll.add_argument("--n", type=int, required=True)
    ll.add_argument("--r", type=int, default=2)
    ll.add_argument("--b", type=int, default=1)
    ll.add_argument("--epsilon", type=float, default=0.1)
    ll.add_argument("--p", type=float)
    ll.add_argument("--tau0", type=float)
    ll.add_argument("--K", type=int)
    ll.add_argument("--d", type=float)
    ll.add_argument("--find-threshold", action="store_true", help="search for the largest passing d")
    ll.add_argument("--fallback", action="store_true",
                    help="use exact factors when the b-simple constants are not justified")
    ll.set_defaults(func=cmd_lll)

    v = sub.add_parser("vdw", help="search for a coloring of [W] without monochromatic n-term APs")
    v.add_argument("--W", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--r", type=int, default=2)
    v.add_argument("--p", type=float, default=None, help="default ln n / n")
    v.add_argument("--max-restarts", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=seed)
    v.add_argument("--exhaustive", action="store_true", help="decide colorability by backtracking")
    v.set_defaults(func=cmd_vdw)

    s = sub.add_parser("sweep", help="check counts or frequencies against closed-form bounds")
    s.add_argument("--kind", choices=SWEEP_KINDS, required=True)
    src = s.add_mutually_exclusive_group()
    src.add_argument("--input", help="hypergraph file for counting sweeps")
    src.add_argument("--instance", help="generator spec as JSON")
    s.add_argument("--grid", help="grid as JSON")
    s.add_argument("--seed", type=int, default=seed)
    s.add_argument("-o", "--output", help="JSON-lines report path")
    s.set_defaults(func=cmd_sweep)

    ra = sub.add_parser("rate", help="success rate with certificate checks")
    ra.add_argument("--input", required=True)
    ra.add_argument("--colors", type=int, default=2)
    ra.add_argument("--p", type=float, required=True)
    ra.add_argument("--trials", type=int, default=1000)
    ra.add_argument("--seed", type=int, default=seed)
    ra.add_argument("--include-degenerate", action="store_true")
    ra.add_argument("-o", "--output")
    ra.set_defaults(func=cmd_rate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error
        sys.stdout = open(os.devnull, "w")
        return OK
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"mgc: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
