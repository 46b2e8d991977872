"""Exact tools for quadratic-form phase relations and LU versus LC equivalence of stabilizer states."""

from lulc.f2core import BitMatrix, BitVec, Subspace, kernel, solve_f2
from lulc.forge import builtin_paper_instance, search
from lulc.instance_file import InstanceFile, InstanceFormatError
from lulc.pipeline import certify
from lulc.qfpsolver import QfpInstance, Verdict, VerdictKind, phase_check, qfp_decide, solve_mod4
from lulc.quadform import PhaseAssignment, QuadraticForm
from lulc.stab import Graph, LocalCliffordLayer, Pauli, StabilizerTableau, lc_decide, to_graph_state

__all__ = [
    "BitMatrix",
    "BitVec",
    "Graph",
    "InstanceFile",
    "InstanceFormatError",
    "LocalCliffordLayer",
    "Pauli",
    "PhaseAssignment",
    "QfpInstance",
    "QuadraticForm",
    "StabilizerTableau",
    "Subspace",
    "Verdict",
    "VerdictKind",
    "builtin_paper_instance",
    "certify",
    "kernel",
    "lc_decide",
    "phase_check",
    "qfp_decide",
    "search",
    "solve_f2",
    "solve_mod4",
    "to_graph_state",
]
