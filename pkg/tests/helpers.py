"""Shared strategies and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from lulc.f2core import Subspace
from lulc.qfpsolver import Mod4System, QfpInstance
from lulc.quadform import QuadraticForm
from lulc.stab import Graph


def basis_from_patterns(d: int, pats: list[int]) -> Subspace:
    """Basis rows whose column j is the d-bit pattern pats[j]."""
    rows = []
    for k in range(d):
        rows.append(sum(((p >> k) & 1) << j for j, p in enumerate(pats)))
    return Subspace(len(pats), tuple(rows))


def random_patterns(rng: random.Random, d: int, extra: int) -> list[int]:
    """Every unit pattern once (so the rank is d) plus `extra` random nonzero ones, shuffled."""
    pats = [1 << k for k in range(d)] + [rng.randrange(1, 2**d) for _ in range(extra)]
    rng.shuffle(pats)
    return pats


def random_edges(rng: random.Random, n: int, p: float = 0.3) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]


def random_instance(rng: random.Random, d: int, extra: int, p: float = 0.3) -> QfpInstance:
    s = basis_from_patterns(d, random_patterns(rng, d, extra))
    return QfpInstance(s, QuadraticForm.from_terms(s.n, random_edges(rng, s.n, p)))


def full_pattern_instance(rng: random.Random, d: int, p: float = 0.3) -> QfpInstance:
    """One position per nonzero pattern, position m carrying pattern m."""
    s = basis_from_patterns(d, list(range(1, 2**d)))
    return QfpInstance(s, QuadraticForm.from_terms(s.n, random_edges(rng, s.n, p)))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, random_edges(rng, n, p))


@st.composite
def instances(draw, max_d: int = 4, max_extra: int = 5):
    d = draw(st.integers(1, max_d))
    seed = draw(st.integers(0, 2**32 - 1))
    extra = draw(st.integers(0, max_extra))
    return random_instance(random.Random(seed), d, extra, draw(st.sampled_from([0.0, 0.3, 0.6])))


@st.composite
def graphs(draw, max_n: int = 7):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_graph(random.Random(seed), n, draw(st.sampled_from([0.2, 0.5, 0.8])))


# --- oracles -------------------------------------------------------------------


def brute_force_mod4(sys: Mod4System) -> bool:
    """Is A x = b (mod 4) solvable? Exhaustive over Z4^n."""
    if sys.nrows == 0:
        return True
    a = np.array(sys.a, dtype=np.int64)
    b = np.array(sys.b, dtype=np.int64)
    xs = np.array(list(itertools.product(range(4), repeat=sys.nvars)), dtype=np.int64).reshape(-1, sys.nvars)
    ok = ((xs @ a.T) % 4 == b).all(axis=1)
    return bool(ok.any())


def fraction_inverse(m: list[list[int]]) -> list[list[Fraction]]:
    """Plain Gauss-Jordan over the rationals."""
    n = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def brute_eval(edges, linear, x_bits: list[int]) -> int:
    """Q(x) straight from the term list, x given as 0/1 list (position 1 first)."""
    v = sum(x_bits[i - 1] * x_bits[j - 1] for i, j in edges) + sum(x_bits[i - 1] for i in linear)
    return v % 2


def bits_list(x: int, n: int) -> list[int]:
    return [(x >> j) & 1 for j in range(n)]
