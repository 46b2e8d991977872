"""Command-line entry points.

Exit codes: 0 success / confirmed, 1 negative result, 2 bad input or flags,
3 internal inconsistency, 4 undecided (LC search overflow).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from lulc.forge import BUILTIN_OCTAL, builtin_paper_instance, search, search_parallel
from lulc.instance_file import InstanceFile
from lulc.pipeline import EQUIVALENT, NOT_EQUIVALENT, UNDECIDED, certify, decide_lc, graph_pair
from lulc.qfpsolver import QfpInstance
from lulc.quadform import PhaseAssignment
from lulc.stab import Graph

OK, NEGATIVE, BAD_INPUT, INCONSISTENT, UNDECIDED_EXIT = 0, 1, 2, 3, 4



def _emit(report: dict[str, Any], as_json: bool, lines: Sequence[str] = ()) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    for line in lines:
        print(line)
    for key, value in report.items():
        if isinstance(value, (dict, list)) and len(json.dumps(value)) > 100:
            value = json.dumps(value)[:97] + "..."
        print(f"{key}: {value}")


def _fail(msg: str, code: int = BAD_INPUT) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _load_instance(path: str) -> tuple[QfpInstance, PhaseAssignment | None]:
    return InstanceFile.load(path).to_instance()


def _summary(cert) -> str:
    parts = [{True: "QFP witness valid", False: "QFP witness INVALID", None: "no QFP witness"}[cert.witness_valid]]
    if cert.verdict is not None:
        parts.append("mod-4 contradiction 0≡2" if cert.refuted else "mod-4 system solvable")
    if cert.lc is not None:
        parts.append({
            NOT_EQUIVALENT: "graphs NOT LC equivalent",
            EQUIVALENT: "graphs LC equivalent",
            UNDECIDED: "LC equivalence undecided",
        }[cert.lc.verdict])
    return "; ".join(parts)


def _write_graphs(prefix: str, pair) -> list[str]:
    written = []
    for tag, g in (("gs", pair.g_s), ("gqs", pair.g_qs)):
        for ext, text in (("json", g.to_json() + "\n"), ("dot", g.to_dot(tag.upper()))):
            p = Path(f"{prefix}_{tag}.{ext}")
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_text(text)
            written.append(str(p))
    return written


def cmd_paper_check(as_json: bool = False, tamper: int | None = None, out: str | None = None) -> int:
    inst, witness = builtin_paper_instance()
    if tamper is not None:
        if not 1 <= tamper <= inst.n:
            return _fail(f"tamper index must be in 1..{inst.n}")
        octal = list(BUILTIN_OCTAL)
        octal[tamper - 1] = (octal[tamper - 1] + 2) % 8
        witness = PhaseAssignment.from_octal(octal)
    t0 = time.perf_counter()
    cert = certify(inst, witness)
    report = {"instance": "builtin", **cert.to_dict(), "total_s": round(time.perf_counter() - t0, 4)}
    if out and cert.pair is not None:
        report["written"] = _write_graphs(out, cert.pair)
    _emit(report, as_json, [_summary(cert)])
    return OK if cert.confirmed else INCONSISTENT


def cmd_verify(path: str, as_json: bool = False, with_lc: bool = False) -> int:
    try:
        inst, witness = _load_instance(path)
    except (OSError, ValueError) as exc:
        return _fail(f"{path}: {exc}")
    cert = certify(inst, witness, with_lc=with_lc)
    report = {"path": path, **cert.to_dict()}
    _emit(report, as_json, [_summary(cert)])
    stage = cert.failed_stage()
    if stage is None:
        return OK
    if with_lc and stage == f"lc_{UNDECIDED}" and cert.contradiction_verified:
        return UNDECIDED_EXIT
    if stage in ("contradiction_replay", "lu_map"):
        return INCONSISTENT
    return NEGATIVE


def cmd_forge(d: int, seed: int, max_iters: int, out: str | None, deterministic: bool = False,
              workers: int | None = None, as_json: bool = False, with_lc: bool = True) -> int:
    if d != 6:
        return _fail(
            f"--d {d} is not supported: for d <= 5 every instance with a real solution has a "
            "fourth-root solution, so counterexamples are impossible; the generator targets d = 6"
        )
    if max_iters < 1:
        return _fail("--max-iters must be positive")
    if workers is None:
        workers = 1 if deterministic else max(1, min(4, os.cpu_count() or 1))
    if deterministic:
        workers = 1
    t0 = time.perf_counter()
    found = search(d, seed, max_iters) if workers == 1 else search_parallel(d, seed, max_iters, workers)
    elapsed = time.perf_counter() - t0
    report: dict[str, Any] = {"seed": seed, "d": d, "max_iters": max_iters, "workers": workers}
    if found is None:
        report["result"] = "budget_exhausted"
        report["search_s"] = round(elapsed, 3)
        _emit(report, as_json)
        return NEGATIVE
    f = InstanceFile.from_instance(
        found.instance, found.witness, meta={"generator": "forge", "seed": found.seed, "iteration": found.iteration}
    )
    text = f.dumps()
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    report.update(
        result="counterexample",
        worker_seed=found.seed,
        iteration=found.iteration,
        n=found.instance.n,
        search_s=round(elapsed, 3),
        out=out,
    )
    if with_lc:
        pair = graph_pair(found.instance)
        res = decide_lc(pair.g_s, pair.g_qs)
        report["lc_verdict"] = res.verdict
    if out is None and not as_json:
        sys.stdout.write(text)
    _emit(report, as_json)
    return OK


def _load_graph(path: str) -> Graph:
    return Graph.from_json(Path(path).read_text())


def cmd_lc_check(path1: str, path2: str, as_json: bool = False) -> int:
    try:
        g1, g2 = _load_graph(path1), _load_graph(path2)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(str(exc))
    if g1.n != g2.n:
        return _fail(f"graphs have {g1.n} and {g2.n} vertices")
    res = decide_lc(g1, g2)
    report: dict[str, Any] = {"n": g1.n, "lc_verdict": res.verdict}
    if res.layer is not None:
        report["layer"] = res.layer.describe()
    if res.detail:
        report["detail"] = res.detail
    _emit(report, as_json)
    return {EQUIVALENT: OK, NOT_EQUIVALENT: NEGATIVE, UNDECIDED: UNDECIDED_EXIT}[res.verdict]


def cmd_graphs(path: str, out_prefix: str, as_json: bool = False) -> int:
    try:
        inst, _ = _load_instance(path)
    except (OSError, ValueError) as exc:
        return _fail(f"{path}: {exc}")
    pair = graph_pair(inst)
    try:
        written = _write_graphs(out_prefix, pair)
    except OSError as exc:
        return _fail(str(exc))
    res = decide_lc(pair.g_s, pair.g_qs)
    diff = pair.difference
    report = {
        "n": inst.n,
        "g_s_edges": len(pair.g_s.edges()),
        "g_qs_edges": len(pair.g_qs.edges()),
        "graphs_differ": bool(diff),
        "edge_difference": len(diff),
        "lc_verdict": res.verdict,
        "written": written,
    }
    _emit(report, as_json)
    return UNDECIDED_EXIT if res.verdict == UNDECIDED else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lulc", description="LU versus LC equivalence counterexamples.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("paper-check", help="verify the built-in 27-qubit instance end to end")
    pc.add_argument("--json", action="store_true")
    pc.add_argument("--out", help="also write graph exports with this prefix")
    pc.add_argument("--tamper-exponent", type=int, help=argparse.SUPPRESS)

    v = sub.add_parser("verify", help="check that an instance file is a counterexample")
    v.add_argument("path")
    v.add_argument("--json", action="store_true")
    v.add_argument("--lc", action="store_true", help="also build graph states and decide LC equivalence")

    f = sub.add_parser("forge", help="search for a new counterexample")
    f.add_argument("--d", type=int, default=6)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--max-iters", type=int, default=100_000)
    f.add_argument("--deterministic", action="store_true", help="single sequential search")
    f.add_argument("--workers", type=int)
    f.add_argument("--out")
    f.add_argument("--json", action="store_true")
    f.add_argument("--no-lc", action="store_true", help="skip the LC verdict on the result")

    lc = sub.add_parser("lc-check", help="decide LC equivalence of two graph JSON files")
    lc.add_argument("path1")
    lc.add_argument("path2")
    lc.add_argument("--json", action="store_true")

    g = sub.add_parser("graphs", help="export G_S and G_QS for an instance")
    g.add_argument("path")
    g.add_argument("--out", required=True, help="output prefix")
    g.add_argument("--json", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.command == "paper-check":
        return cmd_paper_check(args.json, args.tamper_exponent, args.out)
    if args.command == "verify":
        return cmd_verify(args.path, args.json, args.lc)
    if args.command == "forge":
        return cmd_forge(args.d, args.seed, args.max_iters, args.out, args.deterministic,
                         args.workers, args.json, not args.no_lc)
    if args.command == "lc-check":
        return cmd_lc_check(args.path1, args.path2, args.json)
    if args.command == "graphs":
        return cmd_graphs(args.path, args.out, args.json)
    return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
