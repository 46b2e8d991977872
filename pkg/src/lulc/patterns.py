"""Position patterns and the pattern-indexed matrices G, T, G^-1 and 2 G^-1 T.

Patterns m in F2^d \\ {0} are identified with integers v(m) = sum_k m_k 2^(k-1),
so m_1 (from the first basis vector) is the least significant bit. Rows and
columns of every matrix here run over v = 1..D-1 in increasing order; T's
columns run over pairs (j, k), j < k, lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

import numpy as np

from lulc.f2core import Subspace, parity

MAX_D = 8


class DegeneratePositionError(ValueError):
    """A position is zero on every basis vector (pattern 0)."""


def _check_d(d: int) -> None:
    if not 1 <= d <= MAX_D:
        raise ValueError(f"d must be in 1..{MAX_D}, got {d}")


def ip(i: int, j: int) -> int:
    """<i, j> over F2 for packed patterns."""
    return parity(i & j)


def pattern_of_position(s: Subspace, j: int) -> int:
    """Integer pattern v(m) of 1-based position j; 0 flags an always-zero coordinate."""
    if not 1 <= j <= s.n:
        raise IndexError(f"position {j} outside 1..{s.n}")
    return sum(((xi >> (j - 1)) & 1) << k for k, xi in enumerate(s.basis))


@dataclass(frozen=True)
class Partition:
    n: int
    d: int
    classes: dict[int, tuple[int, ...]] = field(default_factory=dict)  # pattern -> positions

    def positions(self, m: int) -> tuple[int, ...]:
        return self.classes.get(m, ())

    def missing(self) -> list[int]:
        return [m for m in range(1, 2**self.d) if not self.classes.get(m)]

    def pattern_map(self) -> dict[int, int]:
        """position -> pattern."""
        return {j: m for m, js in self.classes.items() for j in js}

    def all_singletons(self) -> bool:
        return all(len(js) <= 1 for js in self.classes.values())


def partition_positions(s: Subspace) -> Partition:
    classes: dict[int, list[int]] = {}
    zero = []
    for j in range(1, s.n + 1):
        m = pattern_of_position(s, j)
        if m == 0:
            zero.append(j)
        classes.setdefault(m, []).append(j)
    if zero:
        raise DegeneratePositionError(f"positions {zero} vanish on the whole subspace")
    return Partition(s.n, s.d, {m: tuple(js) for m, js in sorted(classes.items())})


def pair_index(d: int) -> dict[tuple[int, int], int]:
    """Column index of pattern pair (j, k), j < k, in T."""
    return {pair: c for c, pair in enumerate(_pairs(d))}


@lru_cache(maxsize=None)
def _pairs(d: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(1, 2**d), 2))


def pairs(d: int) -> tuple[tuple[int, int], ...]:
    _check_d(d)
    return _pairs(d)


@lru_cache(maxsize=None)
def _build_G(d: int) -> np.ndarray:
    idx = np.arange(1, 2**d, dtype=np.int64)
    anded = idx[:, None] & idx[None, :]
    g = np.zeros_like(anded)
    for k in range(d):
        g ^= (anded >> k) & 1
    g.setflags(write=False)
    return g


def build_G(d: int) -> np.ndarray:
    _check_d(d)
    return _build_G(d)


@lru_cache(maxsize=None)
def _build_T(d: int) -> np.ndarray:
    g = _build_G(d)
    ps = np.array(_pairs(d), dtype=np.int64).reshape(-1, 2) - 1
    t = g[:, ps[:, 0]] * g[:, ps[:, 1]]
    t.setflags(write=False)
    return t


def build_T(d: int) -> np.ndarray:
    _check_d(d)
    return _build_T(d)


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    """Exact rational matrix num / den with integer numerators."""

    num: np.ndarray
    den: int

    # let ndarray @ RationalMatrix reach __rmatmul__
    __array_ufunc__ = None

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            return RationalMatrix(self.num @ other.num, self.den * other.den).reduced()
        return RationalMatrix(self.num @ np.asarray(other, dtype=np.int64), self.den).reduced()

    def __rmatmul__(self, other):
        return RationalMatrix(np.asarray(other, dtype=np.int64) @ self.num, self.den).reduced()

    def scale(self, k: int) -> RationalMatrix:
        return RationalMatrix(self.num * k, self.den).reduced()

    def reduced(self) -> RationalMatrix:
        g = int(np.gcd.reduce(np.append(self.num.ravel(), self.den)))
        if g > 1:
            return RationalMatrix(self.num // g, self.den // g)
        return self

    def is_integral(self) -> bool:
        return self.den == 1 or not np.any(self.num % self.den)

    def to_int(self) -> np.ndarray:
        if not self.is_integral():
            raise ValueError("matrix is not integral")
        return self.num // self.den

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.num[i, j]), self.den)

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(int(v), self.den) for v in row] for row in self.num]

    def apply(self, vec) -> list[Fraction]:
        """Exact product with an integer or rational vector."""
        fr = [Fraction(v) for v in vec]
        den = 1
        for v in fr:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = np.array([int(v * den) for v in fr], dtype=object)
        prod = self.num.astype(object) @ ints
        return [Fraction(int(p), self.den * den) for p in prod]


def g_inverse(d: int) -> RationalMatrix:
    """(2/D)(2<i,j> - 1)."""
    _check_d(d)
    g = _build_G(d)
    return RationalMatrix(2 * (2 * g - 1), 2**d).reduced()


@lru_cache(maxsize=None)
def _two_ginv_t(d: int) -> np.ndarray:
    D = 2**d
    out = np.zeros((D - 1, len(_pairs(d))), dtype=np.int64)
    for c, (j, k) in enumerate(_pairs(d)):
        out[j - 1, c] = 1
        out[k - 1, c] = 1
        out[(j ^ k) - 1, c] = -1
    out.setflags(write=False)
    return out


def two_ginv_t(d: int) -> np.ndarray:
    """2 G^-1 T from its closed form: +1 at rows j and k, -1 at row j^k of column (j, k)."""
    _check_d(d)
    return _two_ginv_t(d)


def pattern_bits(d: int) -> list[int]:
    """Rows of the d x (D-1) full-pattern matrix: column m is the bit expansion of m."""
    _check_d(d)
    D = 2**d
    return [sum(((m >> k) & 1) << (m - 1) for m in range(1, D)) for k in range(d)]
