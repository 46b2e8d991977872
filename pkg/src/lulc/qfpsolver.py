"""Deciding whether a quadratic-form phase relation admits fourth-root phases.

The relation (-1)^{Q(x)} = prod_j c_j^{x_j} on a subspace S becomes, with
c_j = i^{r_j}, the congruence sum_j r_j x_j = 2 Q(x) (mod 4) for every x in S.
Fourth roots of unity are exactly the integral r, so the question reduces to
integral solvability of A r = b (mod 4) with one row per nonzero x in S.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Sequence

from lulc.f2core import Subspace
from lulc.patterns import Partition, build_G, build_T, partition_positions, two_ginv_t
from lulc.quadform import EVector, PhaseAssignment, QuadraticForm, eval_terms


class InvalidWitnessError(ValueError):
    pass


class OutOfTheoremError(ValueError):
    pass


@dataclass(frozen=True)
class QfpInstance:
    s: Subspace
    q: QuadraticForm

    def __post_init__(self):
        if self.q.n != self.s.n:
            raise ValueError(f"form on {self.q.n} positions, subspace in F2^{self.s.n}")
        if not self.q.is_pure:
            raise ValueError("instance needs a pure quadratic form; normalize linear terms first")
        partition_positions(self.s)

    @property
    def n(self) -> int:
        return self.s.n

    @property
    def d(self) -> int:
        return self.s.d

    def partition(self) -> Partition:
        return partition_positions(self.s)


def _dot_rational(r: Sequence[Fraction], x: int) -> Fraction:
    total = Fraction(0)
    j = 0
    while x:
        if x & 1:
            total += r[j]
        x >>= 1
        j += 1
    return total


def phase_violations(inst: QfpInstance, p: PhaseAssignment) -> list[int]:
    """Span elements x (packed) where sum r_j x_j != 2 Q(x) mod 4."""
    if p.n != inst.n:
        raise ValueError(f"{p.n} phases for {inst.n} positions")
    bad = []
    for x in inst.s.span_bits():
        diff = _dot_rational(p.r, x) - 2 * eval_terms(inst.q, x)
        if diff.denominator != 1 or diff.numerator % 4:
            bad.append(x)
    return bad


def phase_check(inst: QfpInstance, p: PhaseAssignment) -> bool:
    return not phase_violations(inst, p)


@dataclass(frozen=True)
class Mod4System:
    a: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    nvars: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(tuple(v % 4 for v in row) for row in self.a))
        object.__setattr__(self, "b", tuple(v % 4 for v in self.b))
        if len(self.a) != len(self.b):
            raise ValueError("row count of A and b differ")
        if any(len(row) != self.nvars for row in self.a):
            raise ValueError("ragged coefficient rows")

    @property
    def nrows(self) -> int:
        return len(self.a)

    def satisfied_by(self, x: Sequence[int]) -> bool:
        return all(sum(c * v for c, v in zip(row, x)) % 4 == rhs for row, rhs in zip(self.a, self.b))


def build_mod4_system(inst: QfpInstance) -> Mod4System:
    rows, rhs = [], []
    for x in inst.s.span_bits()[1:]:
        rows.append(tuple((x >> j) & 1 for j in range(inst.n)))
        rhs.append(2 * eval_terms(inst.q, x))
    return Mod4System(tuple(rows), tuple(rhs), inst.n)


@dataclass(frozen=True)
class Contradiction:
    """Integer combination of the original rows reading 0 = 2 (mod 4)."""

    combination: tuple[int, ...]
    trace: tuple[tuple, ...] = ()  # ("scale", row, k) / ("sub", target, source, k), rows by original index

    def replay(self, sys: Mod4System) -> tuple[tuple[int, ...], int]:
        coeffs = [0] * sys.nvars
        rhs = 0
        for lam, row, b in zip(self.combination, sys.a, sys.b):
            if lam:
                for j, c in enumerate(row):
                    coeffs[j] += lam * c
                rhs += lam * b
        return tuple(c % 4 for c in coeffs), rhs % 4

    def verify(self, sys: Mod4System) -> bool:
        if len(self.combination) != sys.nrows:
            return False
        coeffs, rhs = self.replay(sys)
        return not any(coeffs) and rhs == 2


@dataclass(frozen=True)
class SolveOutcome:
    solution: tuple[int, ...] | None = None
    contradiction: Contradiction | None = None

    @property
    def solvable(self) -> bool:
        return self.solution is not None


class _Row:
    __slots__ = ("idx", "coef", "rhs", "comb")

    def __init__(self, idx, coef, rhs, comb):
        self.idx = idx
        self.coef = coef
        self.rhs = rhs
        self.comb = comb

    def scale(self, k: int) -> None:
        self.coef = [(c * k) % 4 for c in self.coef]
        self.rhs = (self.rhs * k) % 4
        self.comb = [(c * k) % 4 for c in self.comb]

    def sub(self, other: _Row, k: int) -> None:
        self.coef = [(a - k * b) % 4 for a, b in zip(self.coef, other.coef)]
        self.rhs = (self.rhs - k * other.rhs) % 4
        self.comb = [(a - k * b) % 4 for a, b in zip(self.comb, other.comb)]


def solve_mod4(sys: Mod4System) -> SolveOutcome:
    """Gaussian elimination over Z4 without division.

    Odd pivots first: a pivot of 3 is scaled by 3 (3*3 = 1 mod 4) and its
    column is cleared from every other row. Columns where no remaining row is
    odd are deferred; afterwards every remaining row has only even entries,
    and those rows are eliminated against each other by plain subtraction.
    Free variables are set to 0.
    """
    m, n = sys.nrows, sys.nvars
    rows = [
        _Row(i, list(a), b, [1 if k == i else 0 for k in range(m)])
        for i, (a, b) in enumerate(zip(sys.a, sys.b))
    ]
    trace: list[tuple] = []

    odd_pivots: dict[int, _Row] = {}
    pending = list(rows)
    for col in range(n):
        pivot = next((r for r in pending if r.coef[col] & 1), None)
        if pivot is None:
            continue
        if pivot.coef[col] == 3:
            pivot.scale(3)
            trace.append(("scale", pivot.idx, 3))
        for r in rows:
            if r is not pivot and r.coef[col]:
                trace.append(("sub", r.idx, pivot.idx, r.coef[col]))
                r.sub(pivot, r.coef[col])
        pending.remove(pivot)
        odd_pivots[col] = pivot

    # every pending row is now even in all remaining columns
    for r in pending:
        if r.rhs & 1:
            r.scale(2)
            trace.append(("scale", r.idx, 2))
            return SolveOutcome(contradiction=Contradiction(tuple(r.comb), tuple(trace)))

    even_rows = list(pending)
    even_pivots: dict[int, _Row] = {}
    for col in range(n):
        if col in odd_pivots:
            continue
        pivot = next((r for r in pending if r.coef[col] == 2), None)
        if pivot is None:
            continue
        for r in even_rows:
            if r is not pivot and r.coef[col] == 2:
                trace.append(("sub", r.idx, pivot.idx, 1))
                r.sub(pivot, 1)
        pending.remove(pivot)
        even_pivots[col] = pivot

    for r in pending:
        if r.rhs == 2:
            return SolveOutcome(contradiction=Contradiction(tuple(r.comb), tuple(trace)))

    x = [0] * n
    for col, r in even_pivots.items():
        x[col] = (r.rhs // 2) & 1
    for col, r in odd_pivots.items():
        acc = r.rhs
        for j, c in enumerate(r.coef):
            if j != col and c:
                acc -= c * x[j]
        x[col] = acc % 4
    if not sys.satisfied_by(x):
        raise AssertionError("mod-4 elimination produced a non-solution")
    return SolveOutcome(solution=tuple(x))


def spread_to_positions(r_patterns: Sequence[Fraction], p: Partition) -> PhaseAssignment:
    """Put r_[m] on the first position of class A_m and 0 elsewhere."""
    r = [Fraction(0)] * p.n
    for m, js in p.classes.items():
        if js:
            r[js[0] - 1] = Fraction(r_patterns[m - 1])
    return PhaseAssignment(tuple(r))


def allpatterns_solution(e: EVector, p: Partition) -> PhaseAssignment:
    """Integral pattern-level r = 2 G^-1 T e when every class A_m is nonempty.

    Edges inside a class add 2|E(Q|A_m)| to r_[m]. Returns one entry per
    pattern (length D-1); use spread_to_positions for the position view.
    """
    missing = p.missing()
    if missing:
        raise ValueError(f"patterns {missing} have no positions")
    base = two_ginv_t(e.d) @ e.to_array()
    r = [Fraction(int(v)) for v in base]
    for m, c in e.internal.items():
        r[m - 1] += 2 * c
    return PhaseAssignment(tuple(r))


def lowrank_integral(r_real: PhaseAssignment, d: int) -> PhaseAssignment:
    """Integral zero-preserving solution from a real pattern-level solution, d <= 5."""
    if d >= 6:
        raise OutOfTheoremError(f"no integrality guarantee for d={d}")
    if len(r_real.r) != 2**d - 1:
        raise ValueError(f"expected {2**d - 1} pattern entries, got {len(r_real.r)}")
    if r_real.is_integral():
        return r_real
    if d <= 3:
        raise ValueError("for d <= 3 every solution of the linearized system is integral")
    if d == 4:
        if not all(v.denominator == 2 for v in r_real.r):
            raise ValueError("d=4 solutions are either integral or entirely half-integral")
        # r + 1/2 differs from the s = 0 solution by a multiple of the all-ones vector
        return PhaseAssignment(tuple(v + Fraction(1, 2) for v in r_real.r))
    return PhaseAssignment(tuple(Fraction(floor(v)) for v in r_real.r))


def pattern_congruence_holds(r: Sequence[Fraction], e: EVector) -> bool:
    """G r = 2 (T e + G internal) (mod 4), checked exactly."""
    d = e.d
    g = build_G(d)
    internal = [0] * (2**d - 1)
    for m, c in e.internal.items():
        internal[m - 1] = c
    rhs = 2 * (build_T(d) @ e.to_array() + g @ internal)
    for row, b in zip(g, rhs):
        acc = sum((Fraction(v) for v, gij in zip(r, row) if gij), Fraction(0)) - int(b)
        if acc.denominator != 1 or acc.numerator % 4:
            return False
    return True


class VerdictKind(enum.Enum):
    FOURTH_ROOT = "fourth_root_solution"
    COUNTEREXAMPLE = "counterexample"
    NO_WITNESS = "no_real_witness_provided"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    outcome: SolveOutcome
    witness: PhaseAssignment | None = None
    system: Mod4System | None = field(default=None, repr=False)


def qfp_decide(inst: QfpInstance, witness: PhaseAssignment | None = None) -> Verdict:
    if witness is not None and not phase_check(inst, witness):
        raise InvalidWitnessError("witness phases violate the relation on S")
    sys = build_mod4_system(inst)
    out = solve_mod4(sys)
    if out.solvable:
        kind = VerdictKind.FOURTH_ROOT
    elif witness is None:
        kind = VerdictKind.NO_WITNESS
    else:
        kind = VerdictKind.COUNTEREXAMPLE
    return Verdict(kind, out, witness, sys)
