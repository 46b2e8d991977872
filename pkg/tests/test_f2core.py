import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lulc.f2core import (
    BitMatrix,
    BitVec,
    CapacityError,
    DimensionError,
    Subspace,
    enumerate_span,
    f2_dot,
    kernel,
    solve_f2,
)
from lulc.forge import BUILTIN_BASIS


@pytest.mark.parametrize("u, v, expected", [("101", "110", 1), ("000", "111", 0), ("11", "11", 0)])
def test_f2_dot_examples(u, v, expected):
    assert f2_dot(BitVec.from_str(u), BitVec.from_str(v)) == expected


def test_f2_dot_length_mismatch():
    with pytest.raises(DimensionError):
        f2_dot(BitVec.from_str("10"), BitVec.from_str("101"))


def test_bitvec_positions_are_one_based_leftmost():
    v = BitVec.from_str("1001")
    assert v[1] == 1 and v[2] == 0 and v[4] == 1
    assert v.support() == [1, 4]
    assert v.to_str() == "1001"
    assert BitVec.from_positions(4, [1, 4]) == v


def test_span_full_plane():
    s = Subspace.from_strs(["10", "01"])
    xs = [x.to_str() for _, x in enumerate_span(s)]
    assert xs == ["00", "10", "01", "11"]


def test_span_single_vector():
    pairs = [(h.bits, x.to_str()) for h, x in enumerate_span(Subspace.from_strs(["11"]))]
    assert pairs == [(0, "00"), (1, "11")]


def test_builtin_basis_span_has_64_distinct_elements():
    s = Subspace.from_strs(BUILTIN_BASIS)
    xs = s.span_bits()
    assert len(xs) == 64 and len(set(xs)) == 64


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        Subspace.from_strs(["110", "011", "101"])


def test_span_capacity_guard():
    s = Subspace(25, tuple(1 << j for j in range(25)))
    with pytest.raises(CapacityError):
        s.span_bits()


def test_kernel_examples():
    assert kernel(BitMatrix.identity(3)).d == 0
    assert kernel(BitMatrix.zeros(2, 4)).d == 4
    assert kernel(Subspace.from_strs(BUILTIN_BASIS).matrix()).d == 21


def test_solve_f2_examples():
    a = BitMatrix.from_lists([[1, 1], [0, 1]])
    x, null = solve_f2(a, BitVec.from_bits([1, 1]))
    assert x.to_str() == "01" and null.d == 0
    assert solve_f2(BitMatrix.from_lists([[0]]), BitVec.from_bits([1])) is None


def test_solve_f2_rank3_rows_have_D_over_8_solutions():
    # rows i, k, l independent in F2^d: the system <i,j> = <k,j> = <l,j> = 1 has D/8 solutions j
    for d in range(3, 7):
        a = BitMatrix(3, d, (0b001, 0b010, 0b100))
        x, null = solve_f2(a, BitVec(3, 0b111))
        assert 2 ** null.d == 2**d // 8
        count = sum(1 for j in range(2**d) if all(bin(r & j).count("1") % 2 for r in a.rows))
        assert count == 2**d // 8


vec_triples = st.integers(1, 40).flatmap(
    lambda n: st.tuples(*(st.integers(0, 2**n - 1) for _ in range(3))).map(lambda t: (n, t))
)


@given(vec_triples)
def test_dot_bilinear(arg):
    n, (u, v, w) = arg
    U, V, W = BitVec(n, u), BitVec(n, v), BitVec(n, w)
    assert f2_dot(U ^ V, W) == f2_dot(U, W) ^ f2_dot(V, W)


@st.composite
def matrices(draw, max_rows=8, max_cols=12):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, 2**c - 1), min_size=r, max_size=r))
    return BitMatrix(r, c, tuple(rows))


@given(matrices())
def test_kernel_is_orthogonal_to_rows(m):
    k = kernel(m)
    assert k.d == m.ncols - m.rank()
    for y in k.basis_vecs():
        for i in range(m.nrows):
            assert f2_dot(m.row(i), y) == 0


@given(matrices(), st.integers(0, 2**8 - 1))
def test_solve_f2_solutions_verify(m, rhs):
    b = BitVec(m.nrows, rhs & ((1 << m.nrows) - 1))
    res = solve_f2(m, b)
    brute = [x for x in range(2**m.ncols) if m.mul_vec(BitVec(m.ncols, x)) == b]
    assert (res is None) == (not brute)
    if res is not None:
        x, null = res
        assert m.mul_vec(x) == b
        for y in null.span_bits():
            assert m.mul_vec(BitVec(m.ncols, x.bits ^ y)) == b
        assert 2**null.d == len(brute)


@given(st.integers(1, 20), st.integers(0, 2**32 - 1))
def test_span_size_and_distinctness(n, seed):
    rng = random.Random(seed)
    s = Subspace.spanned_by(n, [rng.randrange(2**n) for _ in range(rng.randint(0, min(n, 8)))])
    xs = s.span_bits()
    assert len(xs) == 2**s.d == len(set(xs))
    assert all(s.contains(x) for x in xs)


def test_transpose_and_rank():
    m = BitMatrix.from_strs(["110", "011"])
    assert m.transpose().to_lists() == [[1, 0], [1, 1], [0, 1]]
    assert m.rank() == m.transpose().rank() == 2
