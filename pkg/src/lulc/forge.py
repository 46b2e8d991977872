"""Random generation of instances with 8th-root but no 4th-root phase solutions.

Every real solution of G r = 2 T e (mod 4) has the form
r = 2 G^-1 T e + 4 G^-1 s with s integral. The generator works backwards:
pick s, use e to cancel the integral entries of 4 G^-1 s, keep the patterns
where r is nonzero as positions, then ask the mod-4 solver whether an
integral solution exists on the reduced instance.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from lulc.f2core import Subspace, rank_rows
from lulc.patterns import build_G, g_inverse, pattern_bits, two_ginv_t
from lulc.qfpsolver import (
    QfpInstance,
    SolveOutcome,
    build_mod4_system,
    phase_check,
    solve_mod4,
)
from lulc.quadform import EVector, PhaseAssignment, QuadraticForm

log = logging.getLogger(__name__)

S0_RANGE = (0, 63)


class ForgeInternalError(AssertionError):
    """An identity that holds by theorem was violated."""


class RankDeficientError(ValueError):
    """Kept patterns do not span F2^d."""


BUILTIN_BASIS = (
    "100010001010101010100011110",
    "101010111001100000001010101",
    "011001100111100111100110011",
    "000111100000011001100001111",
    "000000011111111000011111111",
    "000000000000000111111111111",
)
BUILTIN_TERMS = (
    (1, 2), (1, 3), (1, 8), (2, 4), (2, 8), (2, 16),
    (3, 4), (3, 8), (3, 16), (4, 8), (8, 16),
)
BUILTIN_OCTAL = (3, 5, 7, 5, 1, 3, 5, 7, 1, 3, 5, 5, 3, 7, 3, 3, 7, 1, 7, 3, 1, 5, 5, 5, 3, 5, 3)


def builtin_paper_instance() -> tuple[QfpInstance, PhaseAssignment]:
    """The published 27-qubit counterexample and its 8th-root phases."""
    s = Subspace.from_strs(BUILTIN_BASIS)
    q = QuadraticForm.from_terms(s.n, BUILTIN_TERMS)
    return QfpInstance(s, q), PhaseAssignment.from_octal(BUILTIN_OCTAL)


def four_ginv(d: int, s: Sequence[int]) -> list[Fraction]:
    """4 G^-1 s, exact."""
    return g_inverse(d).scale(4).apply(s)


def round_s(s0: Sequence[int], d: int = 6) -> list[int]:
    """Replace s0 by s1 with 4 G^-1 s1 = floor(8 G^-1 s0) / 2, which has more integral entries."""
    if d != 6:
        raise ValueError("the rounding step is only established for d = 6")
    g = build_G(d)
    s0 = np.asarray(s0, dtype=np.int64)
    eight = g_inverse(d).scale(8)
    num = eight.num @ s0
    floored = num // eight.den
    gf = g @ floored
    if np.any(gf % 8):
        raise ForgeInternalError("G floor(8 G^-1 s0) is not 0 mod 8")
    return [int(v) for v in gf // 8]


@dataclass(frozen=True)
class Candidate:
    d: int
    s0: tuple[int, ...]
    s1: tuple[int, ...]
    r: tuple[Fraction, ...]
    e: EVector
    kept: tuple[int, ...]
    instance: QfpInstance
    witness: PhaseAssignment

    def key_equation_holds(self) -> bool:
        lhs = [Fraction(int(a)) for a in two_ginv_t(self.d) @ self.e.to_array()]
        rhs = four_ginv(self.d, self.s1)
        return all(r == a + b for r, a, b in zip(self.r, lhs, rhs))


def choose_e(d: int, frac: Sequence[Fraction], targets: Sequence[int], rng: random.Random | None = None) -> EVector | None:
    """Pick unit edge counts so that r = 2 G^-1 T e + frac vanishes mod 4 at every target.

    Only pairs (j, k) of non-target patterns are used. Such a pair adds +1 at
    j and k and -1 at j^k, so target i needs exactly frac_i mod 4 pairs with
    j^k = i. Returns None when a target has too few usable pairs.
    """
    D = 2**d
    tset = set(targets)
    cross: dict[tuple[int, int], int] = {}
    for i in sorted(tset):
        need = int(frac[i - 1]) % 4
        if not need:
            continue
        options = [(j, j ^ i) for j in range(1, D) if j < j ^ i and j not in tset and (j ^ i) not in tset]
        if rng is not None:
            rng.shuffle(options)
        if len(options) < need:
            return None
        for pair in options[:need]:
            cross[pair] = 1
    e = EVector(d, cross, {})
    r = two_ginv_t(d) @ e.to_array()
    for i in tset:
        if (int(r[i - 1]) + frac[i - 1]) % 4:
            return None
    return e


def assemble_instance(d: int, r: Sequence[Fraction], e: EVector) -> tuple[QfpInstance, PhaseAssignment, tuple[int, ...]]:
    """Instance on the patterns with r != 0: full-pattern columns kept, one edge per unit of E."""
    kept = tuple(m for m in range(1, 2**d) if r[m - 1] != 0)
    if not kept:
        raise ValueError("all-zero r gives an empty instance")
    pos = {m: p for p, m in enumerate(kept, start=1)}
    full = pattern_bits(d)
    rows = []
    for row in full:
        bits = 0
        for m, p in pos.items():
            if (row >> (m - 1)) & 1:
                bits |= 1 << (p - 1)
        rows.append(bits)
    if rank_rows(rows) != d:
        raise RankDeficientError(f"kept patterns span less than F2^{d}")
    edges = []
    for (m, mp), c in e.cross.items():
        if not c:
            continue
        if m not in pos or mp not in pos:
            raise ValueError(f"edge between patterns {m},{mp} touches a deleted pattern")
        if c != 1:
            raise ValueError("singleton classes admit at most one edge per pattern pair")
        edges.append((pos[m], pos[mp]))
    if any(e.internal.values()):
        raise ValueError("singleton classes cannot carry internal edges")
    inst = QfpInstance(Subspace(len(kept), tuple(rows)), QuadraticForm.from_terms(len(kept), edges))
    witness = PhaseAssignment(tuple(r[m - 1] for m in kept))
    if not phase_check(inst, witness):
        raise ForgeInternalError("assembled witness fails the phase relation")
    return inst, witness, kept


def _finish(d: int, s0, s, frac: list[Fraction], e: EVector) -> Candidate | None:
    raw = [Fraction(int(a)) + b for a, b in zip(two_ginv_t(d) @ e.to_array(), frac)]
    r = [v % 4 for v in raw]
    # absorb the mod-4 reduction into s so the key equation stays exact
    shift = np.array([int((a - b) / 4) for a, b in zip(r, raw)], dtype=np.int64)
    s_adj = [int(v) for v in np.asarray(s, dtype=np.int64) + build_G(d) @ shift]
    try:
        inst, witness, kept = assemble_instance(d, r, e)
    except ValueError as exc:
        log.debug("candidate rejected: %s", exc)
        return None
    return Candidate(d, tuple(s0), tuple(s_adj), tuple(r), e, kept, inst, witness)


def make_candidate(d: int, s0: Sequence[int], s: Sequence[int], rng: random.Random | None = None) -> Candidate | None:
    """One pass of the backward construction from an already chosen s."""
    frac = four_ginv(d, s)
    targets = [i for i in range(1, 2**d) if frac[i - 1].denominator == 1]
    e = choose_e(d, frac, targets, rng)
    if e is None:
        return None
    return _finish(d, s0, s, frac, e)


@dataclass(frozen=True)
class VerifiedCounterexample:
    candidate: Candidate
    outcome: SolveOutcome
    iteration: int
    seed: int

    @property
    def instance(self) -> QfpInstance:
        return self.candidate.instance

    @property
    def witness(self) -> PhaseAssignment:
        return self.candidate.witness


def sample_s0(rng: random.Random, d: int = 6) -> list[int]:
    lo, hi = S0_RANGE
    return [rng.randint(lo, hi) for _ in range(2**d - 1)]


def search(d: int = 6, seed: int = 0, max_iters: int = 100_000) -> VerifiedCounterexample | None:
    """Sequential, deterministic search; first verified counterexample wins."""
    if d != 6:
        raise ValueError(
            f"d={d}: counterexamples need d >= 6 (none exist for d <= 5) and the generator only supports d = 6"
        )
    rng = random.Random(seed)
    for it in range(1, max_iters + 1):
        s0 = sample_s0(rng, d)
        s1 = round_s(s0, d)
        cand = make_candidate(d, s0, s1, rng)
        if cand is None:
            continue
        out = solve_mod4(build_mod4_system(cand.instance))
        if not out.solvable:
            log.info("iteration %d: counterexample with n=%d", it, cand.instance.n)
            return VerifiedCounterexample(cand, out, it, seed)
    return None


def _worker(args):
    d, seed, iters = args
    return search(d, seed, iters)


def search_parallel(d: int = 6, seed: int = 0, max_iters: int = 100_000, workers: int = 2) -> VerifiedCounterexample | None:
    """Race `workers` independent searches (worker w uses seed ^ w); not reproducible across runs."""
    if workers <= 1:
        return search(d, seed, max_iters)
    import multiprocessing as mp

    per = max(1, max_iters // workers)
    with mp.Pool(workers) as pool:
        for res in pool.imap_unordered(_worker, [(d, seed ^ w, per) for w in range(workers)]):
            if res is not None:
                pool.terminate()
                return res
    return None


def random_lowrank_candidate(d: int, rng: random.Random, s_range: int = 8, cancel: bool = True) -> Candidate | None:
    """Instance for d <= 5 built with a real solution; used to exercise the low-rank theorem."""
    if d > 5:
        raise ValueError("low-rank generator is for d <= 5")
    D = 2**d
    s = [rng.randint(-s_range, s_range) for _ in range(D - 1)]
    if cancel:
        return make_candidate(d, s, s, rng)
    # random sparse edges, kept only when they avoid the zero entries of r
    frac = four_ginv(d, s)
    cross = {}
    for _ in range(rng.randint(0, 2 * d) if D > 2 else 0):
        j, k = sorted(rng.sample(range(1, D), 2))
        cross[(j, k)] = 1
    e = EVector(d, cross, {})
    r = [(Fraction(int(a)) + b) % 4 for a, b in zip(two_ginv_t(d) @ e.to_array(), frac)]
    if any(r[m - 1] == 0 for m in e.touched()):
        return None
    return _finish(d, s, s, frac, e)
