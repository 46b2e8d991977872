"""End-to-end certification: phase witness, mod-4 refutation, graph states, LC decision."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from lulc.qfpsolver import QfpInstance, Verdict, VerdictKind, phase_violations, qfp_decide
from lulc.quadform import PhaseAssignment, QuadraticForm
from lulc.stab import (
    Graph,
    LocalCliffordLayer,
    SearchOverflowError,
    apply_diagonal_phases,
    graph_difference,
    lc_decide,
    same_group,
    tableau_from_instance,
    to_graph_state,
)

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not_equivalent"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class LcResult:
    verdict: str
    layer: LocalCliffordLayer | None = None
    detail: str = ""


def decide_lc(g1: Graph, g2: Graph) -> LcResult:
    try:
        layer = lc_decide(g1, g2)
    except SearchOverflowError as exc:
        return LcResult(UNDECIDED, None, str(exc))
    if layer is None:
        return LcResult(NOT_EQUIVALENT)
    return LcResult(EQUIVALENT, layer)


@dataclass(frozen=True)
class StatePair:
    """Graph forms of |S> and |Q,S>."""

    g_s: Graph
    g_qs: Graph

    @property
    def difference(self) -> list[tuple[int, int]]:
        return graph_difference(self.g_s, self.g_qs)


def graph_pair(inst: QfpInstance) -> StatePair:
    empty = QuadraticForm(inst.n)
    g_s, _ = to_graph_state(tableau_from_instance(inst.s, empty))
    g_qs, _ = to_graph_state(tableau_from_instance(inst.s, inst.q))
    return StatePair(g_s, g_qs)


def lu_map_holds(inst: QfpInstance, witness: PhaseAssignment) -> bool:
    """Does the diagonal phase layer built from the witness carry |S> onto |Q,S>?"""
    t_s = tableau_from_instance(inst.s, QuadraticForm(inst.n))
    t_qs = tableau_from_instance(inst.s, inst.q)
    try:
        return same_group(apply_diagonal_phases(t_s, witness), t_qs)
    except ValueError:
        return False


@dataclass
class Certificate:
    """Outcome of every stage; `confirmed` means an LU but not LC equivalent pair."""

    n: int
    d: int
    witness_valid: bool | None = None
    violations: list[int] = field(default_factory=list)
    verdict: Verdict | None = None
    lu_map: bool | None = None
    pair: StatePair | None = None
    lc: LcResult | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def refuted(self) -> bool:
        return self.verdict is not None and not self.verdict.outcome.solvable

    @property
    def contradiction_verified(self) -> bool:
        v = self.verdict
        return bool(v and v.outcome.contradiction and v.outcome.contradiction.verify(v.system))

    @property
    def confirmed(self) -> bool:
        return bool(
            self.witness_valid
            and self.contradiction_verified
            and self.lu_map
            and self.lc is not None
            and self.lc.verdict == NOT_EQUIVALENT
        )

    def failed_stage(self) -> str | None:
        if self.witness_valid is False:
            return "phase_check"
        if self.verdict is not None and not self.refuted:
            return "mod4_solvable"
        if self.witness_valid is None:
            return "no_witness"
        if not self.contradiction_verified:
            return "contradiction_replay"
        if self.lu_map is False:
            return "lu_map"
        if self.lc is not None and self.lc.verdict != NOT_EQUIVALENT:
            return f"lc_{self.lc.verdict}"
        return None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n, "d": self.d, "witness_valid": self.witness_valid}
        if self.violations:
            out["violating_x"] = [format(x, f"0{self.n}b")[::-1] for x in self.violations]
        if self.verdict is not None:
            out["qfp_verdict"] = self.verdict.kind.value
            oc = self.verdict.outcome
            if oc.solvable:
                out["fourth_root_solution"] = list(oc.solution)
            else:
                out["contradiction"] = {
                    "combination": list(oc.contradiction.combination),
                    "verified": self.contradiction_verified,
                }
        if self.lu_map is not None:
            out["lu_map_verified"] = self.lu_map
        if self.pair is not None:
            out["graphs"] = {
                "g_s_edges": len(self.pair.g_s.edges()),
                "g_qs_edges": len(self.pair.g_qs.edges()),
                "edge_difference": len(self.pair.difference),
            }
        if self.lc is not None:
            out["lc_verdict"] = self.lc.verdict
            if self.lc.layer is not None:
                out["lc_layer"] = self.lc.layer.describe()
        out["confirmed"] = self.confirmed
        out["failed_stage"] = self.failed_stage()
        out["timings_s"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


def certify(inst: QfpInstance, witness: PhaseAssignment | None, with_lc: bool = True) -> Certificate:
    """Run the stages in order; later stages are skipped once one fails."""
    cert = Certificate(inst.n, inst.d)
    clock = time.perf_counter
    t0 = clock()
    if witness is not None:
        cert.violations = phase_violations(inst, witness)
        cert.witness_valid = not cert.violations
    cert.timings["phase_check"] = clock() - t0
    if cert.witness_valid is False:
        return cert

    t0 = clock()
    cert.verdict = qfp_decide(inst, witness)
    cert.timings["solve_mod4"] = clock() - t0
    if not cert.refuted or cert.verdict.kind is not VerdictKind.COUNTEREXAMPLE or not with_lc:
        return cert

    t0 = clock()
    cert.lu_map = lu_map_holds(inst, witness) if witness.octal() is not None else None
    cert.pair = graph_pair(inst)
    cert.timings["graphs"] = clock() - t0
    t0 = clock()
    cert.lc = decide_lc(cert.pair.g_s, cert.pair.g_qs)
    cert.timings["lc_decide"] = clock() - t0
    return cert
