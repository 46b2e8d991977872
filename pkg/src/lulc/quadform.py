"""Quadratic forms over F2 stored as graphs, and per-position phase exponents."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from lulc.f2core import BitVec, DimensionError, Subspace
from lulc.patterns import Partition, ip, pair_index, partition_positions


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = sum_{(i,j) in edges} x_i x_j + sum_{i in linear} x_i over F2 (1-based)."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()
    linear: frozenset[int] = frozenset()

    def __post_init__(self):
        for i, j in self.edges:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"bad edge ({i}, {j}) for n={self.n}")
        for i in self.linear:
            if not 1 <= i <= self.n:
                raise ValueError(f"bad linear term {i} for n={self.n}")

    @classmethod
    def from_terms(cls, n: int, quadratic: Iterable[Sequence[int]] = (), linear: Iterable[int] = ()) -> QuadraticForm:
        """Build from term lists; repeated terms cancel mod 2."""
        counts = Counter(tuple(sorted(t)) for t in quadratic)
        lin = Counter(linear)
        for (i, j) in counts:
            if i == j:
                raise ValueError(f"self-loop term x{i}x{i}; use a linear term instead")
        return cls(
            n,
            frozenset(e for e, c in counts.items() if c % 2),
            frozenset(i for i, c in lin.items() if c % 2),
        )

    @property
    def is_pure(self) -> bool:
        return not self.linear

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_rows(self) -> list[int]:
        """Packed adjacency rows Gamma (row i-1 for vertex i)."""
        rows = [0] * self.n
        for i, j in self.edges:
            rows[i - 1] |= 1 << (j - 1)
            rows[j - 1] |= 1 << (i - 1)
        return rows


def _bits_of(q: QuadraticForm, x: BitVec | int) -> int:
    if isinstance(x, BitVec):
        if x.n != q.n:
            raise DimensionError(f"vector length {x.n} != form length {q.n}")
        return x.bits
    return x


def eval_terms(q: QuadraticForm, x: BitVec | int) -> int:
    bits = _bits_of(q, x)
    v = 0
    for i, j in q.edges:
        v ^= (bits >> (i - 1)) & (bits >> (j - 1)) & 1
    for i in q.linear:
        v ^= (bits >> (i - 1)) & 1
    return v


def eval_subgraph(q: QuadraticForm, x: BitVec | int) -> int:
    """Parity of the edge count of the subgraph induced on the support of x."""
    if not q.is_pure:
        raise ValueError("subgraph evaluation needs a form without linear terms")
    bits = _bits_of(q, x)
    rows = q.adjacency_rows()
    # each induced edge is seen from both endpoints
    twice = sum(bin(rows[i] & bits).count("1") for i in range(q.n) if (bits >> i) & 1)
    return (twice // 2) & 1


@dataclass(frozen=True)
class PhaseAssignment:
    """Exponents r_j with c_j = i^{r_j}; only r_j mod 4 matters."""

    r: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(Fraction(v) for v in self.r))

    @classmethod
    def zeros(cls, n: int) -> PhaseAssignment:
        return cls((Fraction(0),) * n)

    @classmethod
    def from_octal(cls, e: Sequence[int]) -> PhaseAssignment:
        """c_j = exp(i pi e_j / 4), i.e. r_j = e_j / 2."""
        return cls(tuple(Fraction(int(v), 2) for v in e))

    @property
    def n(self) -> int:
        return len(self.r)

    def octal(self) -> tuple[int, ...] | None:
        """Exponents e_j = 2 r_j mod 8, or None if some 2 r_j is not an integer."""
        if any((2 * v).denominator != 1 for v in self.r):
            return None
        return tuple(int(2 * v) % 8 for v in self.r)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.r)

    def reduced(self) -> PhaseAssignment:
        return PhaseAssignment(tuple(v % 4 for v in self.r))

    def __add__(self, other: PhaseAssignment) -> PhaseAssignment:
        if other.n != self.n:
            raise DimensionError("phase assignments of different length")
        return PhaseAssignment(tuple(a + b for a, b in zip(self.r, other.r)))

    def __sub__(self, other: PhaseAssignment) -> PhaseAssignment:
        if other.n != self.n:
            raise DimensionError("phase assignments of different length")
        return PhaseAssignment(tuple(a - b for a, b in zip(self.r, other.r)))


def normalize_linear(q: QuadraticForm) -> tuple[QuadraticForm, PhaseAssignment]:
    """Move linear terms into phases: (-1)^{x_j} = i^{2 x_j}."""
    shift = PhaseAssignment(tuple(Fraction(2 if j in q.linear else 0) for j in range(1, q.n + 1)))
    return QuadraticForm(q.n, q.edges), shift


@dataclass(frozen=True)
class EVector:
    """Edge counts between pattern classes, plus edges inside each class."""

    d: int
    cross: dict[tuple[int, int], int] = field(default_factory=dict)
    internal: dict[int, int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.cross.values()) + sum(self.internal.values())

    def to_array(self) -> np.ndarray:
        """Cross counts indexed like the columns of T."""
        idx = pair_index(self.d)
        out = np.zeros(len(idx), dtype=np.int64)
        for pair, c in self.cross.items():
            out[idx[pair]] = c
        return out

    @classmethod
    def from_array(cls, d: int, arr) -> EVector:
        idx = pair_index(d)
        cross = {pair: int(arr[c]) for pair, c in idx.items() if arr[c]}
        return cls(d, cross, {})

    def touched(self) -> set[int]:
        return {m for pair, c in self.cross.items() if c for m in pair} | {m for m, c in self.internal.items() if c}


def e_vector(q: QuadraticForm, p: Partition) -> EVector:
    if not q.is_pure:
        raise ValueError("e_vector needs a pure quadratic form")
    if q.n != p.n:
        raise DimensionError(f"form on {q.n} positions, partition on {p.n}")
    pattern = p.pattern_map()
    cross: Counter = Counter()
    internal: Counter = Counter()
    for i, j in q.edges:
        mi, mj = pattern[i], pattern[j]
        if mi == mj:
            internal[mi] += 1
        else:
            cross[(min(mi, mj), max(mi, mj))] += 1
    return EVector(p.d, dict(cross), dict(internal))


def q_pattern_decomposition(q: QuadraticForm, s: Subspace, h: BitVec | int) -> int:
    """Q(x^h) via class-level counts: sum <m,h>|E(Q|A_m)| + sum_{m<m'} <m,h><m',h> E_mm'."""
    hb = h.bits if isinstance(h, BitVec) else h
    ev = e_vector(q, partition_positions(s))
    v = 0
    for m, c in ev.internal.items():
        v ^= ip(m, hb) & c & 1
    for (m, mp), c in ev.cross.items():
        v ^= ip(m, hb) & ip(mp, hb) & c & 1
    return v


def restrict_to(q: QuadraticForm, s: Subspace) -> list[int]:
    """Values of q on the span of s, indexed by h."""
    return [eval_terms(q, x) for x in s.span_bits()]


__all__ = [
    "EVector",
    "PhaseAssignment",
    "QuadraticForm",
    "e_vector",
    "eval_subgraph",
    "eval_terms",
    "normalize_linear",
    "q_pattern_decomposition",
    "restrict_to",
]
