"""Stabilizer tableaux, graph states and local Clifford equivalence.

Pauli operators are i^k X(x) Z(z) with x, z packed bit masks (qubit j in bit
j-1) and k in Z4; Y = i X Z. A local Clifford is stored per qubit as the
images of X and Z, which fixes it up to a global phase.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from lulc.f2core import BitMatrix, BitVec, Subspace, kernel, parity, rank_rows, solve_f2
from lulc.quadform import PhaseAssignment, QuadraticForm, eval_terms

log = logging.getLogger(__name__)

SEARCH_LIMIT = 2**24


class TableauError(ValueError):
    pass


class SearchOverflowError(RuntimeError):
    """The LC search exceeded its node budget; the question is left undecided."""


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True, slots=True)
class Pauli:
    n: int
    x: int = 0
    z: int = 0
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    @classmethod
    def from_label(cls, label: str) -> Pauli:
        """'+XYZ', '-IZ', 'iXX' style labels; qubit 1 leftmost."""
        k = 0
        if label[:1] in "+-i":
            if label.startswith("-i"):
                k, label = 3, label[2:]
            elif label.startswith("+i"):
                k, label = 1, label[2:]
            elif label[0] == "-":
                k, label = 2, label[1:]
            elif label[0] == "i":
                k, label = 1, label[1:]
            else:
                label = label[1:]
        x = z = 0
        for j, ch in enumerate(label):
            if ch in "XY":
                x |= 1 << j
            if ch in "ZY":
                z |= 1 << j
            if ch == "Y":
                k += 1
            elif ch not in "IXZ":
                raise ValueError(f"bad Pauli letter {ch!r}")
        return cls(len(label), x, z, k)

    def label(self) -> str:
        k = (self.k - _popcount(self.x & self.z)) % 4
        sign = ("+", "+i", "-", "-i")[k]
        letters = "".join(
            "IXZY"[((self.x >> j) & 1) | (((self.z >> j) & 1) << 1)] for j in range(self.n)
        )
        return sign + letters

    def __mul__(self, other: Pauli) -> Pauli:
        # Z(z1) X(x2) = (-1)^{z1.x2} X(x2) Z(z1)
        return Pauli(self.n, self.x ^ other.x, self.z ^ other.z, self.k + other.k + 2 * _popcount(self.z & other.x))

    def commutes(self, other: Pauli) -> bool:
        return not parity((self.x & other.z) ^ (self.z & other.x))

    def is_hermitian(self) -> bool:
        return (self.k - _popcount(self.x & self.z)) % 2 == 0

    def same_operator(self, other: Pauli) -> bool:
        return self.x == other.x and self.z == other.z and self.k == other.k


def identity(n: int) -> Pauli:
    return Pauli(n)


@dataclass(frozen=True)
class StabilizerTableau:
    n: int
    generators: tuple[Pauli, ...]

    def __post_init__(self):
        if any(g.n != self.n for g in self.generators):
            raise TableauError("generator on the wrong number of qubits")

    def validate(self) -> None:
        gens = self.generators
        if len(gens) != self.n:
            raise TableauError(f"{len(gens)} generators for {self.n} qubits")
        for g in gens:
            if not g.is_hermitian():
                raise TableauError(f"non-Hermitian generator {g.label()}")
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if not gens[a].commutes(gens[b]):
                    raise TableauError(f"generators {a + 1} and {b + 1} anticommute")
        if rank_rows([g.x | (g.z << self.n) for g in gens]) != self.n:
            raise TableauError("generators are dependent")
        # independent commuting Hermitian generators cannot multiply to -I

    def is_valid(self) -> bool:
        try:
            self.validate()
        except TableauError:
            return False
        return True

    def labels(self) -> list[str]:
        return [g.label() for g in self.generators]

    def x_rows(self) -> list[int]:
        return [g.x for g in self.generators]

    def z_rows(self) -> list[int]:
        return [g.z for g in self.generators]


def _symplectic(p: Pauli) -> int:
    return p.x | (p.z << p.n)


def decompose(t: StabilizerTableau, p: Pauli) -> int | None:
    """Subset (bit mask over generators) whose product matches p up to phase."""
    a = BitMatrix(len(t.generators), 2 * t.n, tuple(_symplectic(g) for g in t.generators)).transpose()
    sol = solve_f2(a, BitVec(2 * t.n, _symplectic(p)))
    if sol is None:
        return None
    return sol[0].bits


def _product(gens: Sequence[Pauli], mask: int, n: int) -> Pauli:
    acc = identity(n)
    for i, g in enumerate(gens):
        if (mask >> i) & 1:
            acc = acc * g
    return acc


def in_group(t: StabilizerTableau, p: Pauli) -> bool:
    """Exact membership, phase included."""
    mask = decompose(t, p)
    if mask is None:
        return False
    return _product(t.generators, mask, t.n).same_operator(p)


def same_group(t1: StabilizerTableau, t2: StabilizerTableau) -> bool:
    """Both generate the same stabilizer group (both must be full-rank)."""
    if t1.n != t2.n or len(t1.generators) != len(t2.generators):
        return False
    return all(in_group(t1, g) for g in t2.generators)


def stabilizes(p: Pauli, amps: dict[int, int]) -> bool:
    """Does p fix sum_x w^{amps[x]} |x> (w = e^{i pi/4}, amps mod 8)?"""
    image = {}
    for y, a in amps.items():
        image[y ^ p.x] = (a + 2 * p.k + 4 * parity(p.z & y)) % 8
    return image == {y: a % 8 for y, a in amps.items()}


def support_state(s: Subspace, q: QuadraticForm | None = None, phases: PhaseAssignment | None = None) -> dict[int, int]:
    """Amplitude exponents (mod 8) of sum_{x in S} (-1)^{Q(x)} prod c_j^{x_j} |x>."""
    octal = None
    if phases is not None:
        octal = phases.octal()
        if octal is None:
            raise ValueError("phases are not 8th roots of unity")
    amps = {}
    for x in s.span_bits():
        a = 4 * eval_terms(q, x) if q is not None else 0
        if octal is not None:
            a += sum(octal[j] for j in range(s.n) if (x >> j) & 1)
        amps[x] = a % 8
    return amps


def tableau_from_instance(s: Subspace, q: QuadraticForm, with_phases: bool = True) -> StabilizerTableau:
    """Generators of |S> (with_phases=False) or |Q,S> = sum_{x in S} (-1)^{Q(x)} |x>.

    For each basis vector xi: (-1)^{Q(xi)} X(xi) Z(Gamma xi), Gamma the
    adjacency matrix of Q; then Z(y) for y spanning the annihilator of S.
    """
    if not q.is_pure:
        raise ValueError("tableau construction needs a pure quadratic form")
    if q.n != s.n:
        raise ValueError(f"form on {q.n} positions, subspace in F2^{s.n}")
    n = s.n
    gamma = q.adjacency_rows() if with_phases else [0] * n
    gens = []
    for xi in s.basis:
        zpart = sum(parity(gamma[i] & xi) << i for i in range(n))
        sign = 2 * eval_terms(q, xi) if with_phases else 0
        gens.append(Pauli(n, xi, zpart, sign))
    for y in kernel(s.matrix()).basis:
        gens.append(Pauli(n, 0, y, 0))
    t = StabilizerTableau(n, tuple(gens))
    t.validate()
    return t


def _support_of(t: StabilizerTableau) -> Subspace:
    """Linear support of a tableau's state; raises if the support is a proper coset."""
    rows = list(t.generators)
    pivots: dict[int, Pauli] = {}
    zonly = []
    for g in rows:
        for col, pg in pivots.items():
            if (g.x >> col) & 1:
                g = g * pg
        if g.x:
            col = (g.x & -g.x).bit_length() - 1
            for c in list(pivots):
                if (pivots[c].x >> col) & 1:
                    pivots[c] = pivots[c] * g
            pivots[col] = g
        else:
            zonly.append(g)
    if any(g.k != 0 for g in zonly):
        raise ValueError("state support does not contain 0")
    return Subspace.spanned_by(t.n, [g.x for g in pivots.values()])


def apply_diagonal_phases(t: StabilizerTableau, p: PhaseAssignment) -> StabilizerTableau:
    """Conjugate by prod_j diag(1, e^{i pi e_j/4}), each image expressed as a Pauli on the state's support.

    The conjugated operators are in general not Pauli, but on the support
    they act as one; the returned tableau stabilizes the transformed state.
    """
    octal = p.octal()
    if octal is None:
        raise ValueError("phases must be powers of e^{i pi/4}")
    if p.n != t.n:
        raise ValueError(f"{p.n} phases for {t.n} qubits")
    support = _support_of(t)
    span = support.span_bits()
    out = []
    for g in t.generators:
        if not g.x:
            out.append(g)
            continue
        on = [j for j in range(t.n) if (g.x >> j) & 1]

        def phi(y: int) -> int:
            return sum(octal[j] * (1 - 2 * ((y >> j) & 1)) for j in on) % 8

        c0 = phi(0)
        if c0 % 2:
            raise ValueError("generator picks up an odd 8th-root phase; not a stabilizer image")
        ell = []
        for b in support.basis:
            delta = (phi(b) - c0) % 8
            if delta not in (0, 4):
                raise ValueError("image is not a Pauli operator on the support")
            ell.append(delta // 4)
        for h, y in enumerate(span):
            lin = parity(sum(bit << k for k, bit in enumerate(ell)) & h)
            if phi(y) != (c0 + 4 * lin) % 8:
                raise ValueError("image is not a Pauli operator on the support")
        sol = solve_f2(support.matrix(), BitVec(support.d, sum(bit << k for k, bit in enumerate(ell))))
        zshift = sol[0].bits if sol else 0
        out.append(Pauli(t.n, g.x, g.z ^ zshift, g.k + c0 // 2))
    res = StabilizerTableau(t.n, tuple(out))
    res.validate()
    return res


# --- single-qubit Cliffords --------------------------------------------------

@dataclass(frozen=True, slots=True)
class SingleClifford:
    """Images of X and Z as (x, z, k) one-qubit Paulis i^k X^x Z^z."""

    img_x: tuple[int, int, int]
    img_z: tuple[int, int, int]

    def __post_init__(self):
        (a, c, _), (b, d, _) = self.img_x, self.img_z
        if (a * d + b * c) % 2 != 1:
            raise ValueError("images of X and Z must anticommute")
        for x, z, k in (self.img_x, self.img_z):
            if (k - (x & z)) % 2:
                raise ValueError("images must be Hermitian")

    @classmethod
    def from_symplectic(cls, a: int, b: int, c: int, d: int, sx: int = 0, sz: int = 0) -> SingleClifford:
        """Columns (a, c) and (b, d) are the images of X and Z; sx, sz add a sign."""
        return cls((a, c, (a & c) + 2 * sx), (b, d, (b & d) + 2 * sz))

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        (a, c, _), (b, d, _) = self.img_x, self.img_z
        return ((a, b), (c, d))

    def apply(self, x: int, z: int, k: int) -> tuple[int, int, int]:
        """Image of i^k X^x Z^z."""
        acc = (0, 0, k % 4)
        if x:
            acc = _mul1(acc, self.img_x)
        if z:
            acc = _mul1(acc, self.img_z)
        return acc

    def then(self, other: SingleClifford) -> SingleClifford:
        """other o self: apply self first."""
        return SingleClifford(other.apply(*self.img_x), other.apply(*self.img_z))

    def inverse(self) -> SingleClifford:
        for c in single_clifford_group():
            if c.apply(*self.img_x) == (1, 0, 0) and c.apply(*self.img_z) == (0, 1, 0):
                return c
        raise AssertionError("single-qubit Clifford without inverse")

    def is_identity(self) -> bool:
        return self.img_x == (1, 0, 0) and self.img_z == (0, 1, 0)


def _mul1(p: tuple[int, int, int], q: tuple[int, int, int]) -> tuple[int, int, int]:
    return (p[0] ^ q[0], p[1] ^ q[1], (p[2] + q[2] + 2 * (p[1] & q[0])) % 4)


@lru_cache(maxsize=None)
def single_clifford_group() -> tuple[SingleClifford, ...]:
    herm = [(x, z, (x & z) + 2 * s) for x in (0, 1) for z in (0, 1) if x or z for s in (0, 1)]
    out = []
    for px in herm:
        for pz in herm:
            if (px[0] * pz[1] + px[1] * pz[0]) % 2 == 1:
                out.append(SingleClifford(px, pz))
    return tuple(out)


I1 = SingleClifford((1, 0, 0), (0, 1, 0))
H1 = SingleClifford((0, 1, 0), (1, 0, 0))
S1 = SingleClifford((1, 1, 1), (0, 1, 0))
Z1 = SingleClifford((1, 0, 2), (0, 1, 0))


@dataclass(frozen=True)
class LocalCliffordLayer:
    gates: tuple[SingleClifford, ...]

    @classmethod
    def identity(cls, n: int) -> LocalCliffordLayer:
        return cls((I1,) * n)

    @classmethod
    def on(cls, n: int, gate: SingleClifford, qubits: Iterable[int]) -> LocalCliffordLayer:
        """gate on the given 0-based qubits, identity elsewhere."""
        qs = set(qubits)
        return cls(tuple(gate if j in qs else I1 for j in range(n)))

    @property
    def n(self) -> int:
        return len(self.gates)

    def conjugate(self, p: Pauli) -> Pauli:
        x = z = 0
        k = p.k
        for j, g in enumerate(self.gates):
            xj, zj = (p.x >> j) & 1, (p.z >> j) & 1
            if xj or zj:
                ix, iz, ik = g.apply(xj, zj, 0)
                x |= ix << j
                z |= iz << j
                k += ik
        return Pauli(p.n, x, z, k)

    def apply(self, t: StabilizerTableau) -> StabilizerTableau:
        return StabilizerTableau(t.n, tuple(self.conjugate(g) for g in t.generators))

    def then(self, other: LocalCliffordLayer) -> LocalCliffordLayer:
        return LocalCliffordLayer(tuple(a.then(b) for a, b in zip(self.gates, other.gates)))

    def inverse(self) -> LocalCliffordLayer:
        return LocalCliffordLayer(tuple(g.inverse() for g in self.gates))

    def symplectic(self) -> list[tuple[int, int, int, int]]:
        return [(m[0][0], m[0][1], m[1][0], m[1][1]) for m in (g.matrix for g in self.gates)]

    def describe(self) -> list[str]:
        out = []
        for g in self.gates:
            px = Pauli(1, g.img_x[0], g.img_x[1], g.img_x[2]).label()
            pz = Pauli(1, g.img_z[0], g.img_z[1], g.img_z[2]).label()
            out.append(f"X->{px} Z->{pz}")
        return out


# --- graphs -------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]  # adj[v] = packed neighbours of vertex v+1

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length != n")
        for v, row in enumerate(self.adj):
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v + 1}")
            if row >> self.n:
                raise ValueError("neighbour out of range")
            for u in range(self.n):
                if ((row >> u) & 1) != ((self.adj[u] >> v) & 1):
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        adj = [0] * n
        for i, j in edges:
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"bad edge ({i}, {j})")
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i in range(self.n) for j in range(i + 1, self.n) if (self.adj[i] >> j) & 1]

    def neighbours(self, v: int) -> list[int]:
        return [u + 1 for u in range(self.n) if (self.adj[v - 1] >> u) & 1]

    def tableau(self) -> StabilizerTableau:
        """Canonical generators X_v Z_{N(v)}."""
        return StabilizerTableau(self.n, tuple(Pauli(self.n, 1 << v, self.adj[v], 0) for v in range(self.n)))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]})

    @classmethod
    def from_json(cls, text: str) -> Graph:
        data = json.loads(text)
        return cls.from_edges(int(data["n"]), data.get("edges", []))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(1, self.n + 1)]
        lines += [f"  {i} -- {j};" for i, j in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def local_complement(g: Graph, v: int) -> Graph:
    """Toggle every edge inside the neighbourhood of vertex v (1-based)."""
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} outside 1..{g.n}")
    nb = g.adj[v - 1]
    adj = list(g.adj)
    for u in range(g.n):
        if (nb >> u) & 1:
            adj[u] ^= nb & ~(1 << u)
    return Graph(g.n, tuple(adj))


def lc_orbit(g: Graph, cap: int | None = None) -> tuple[set[Graph], bool]:
    """Closure of g under local complementation; second value is True if cap stopped the BFS."""
    if cap is None:
        if g.n > 10:
            raise ValueError("orbit enumeration above 10 vertices needs an explicit cap")
        cap = 10**7
    seen = {g}
    queue = deque([g])
    while queue:
        cur = queue.popleft()
        for v in range(1, g.n + 1):
            nxt = local_complement(cur, v)
            if nxt not in seen:
                if len(seen) >= cap:
                    return seen, True
                seen.add(nxt)
                queue.append(nxt)
    return seen, False


def to_graph_state(t: StabilizerTableau) -> tuple[Graph, LocalCliffordLayer]:
    """Graph G and layer L with L applied to G's canonical tableau generating t's group."""
    t.validate()
    n = t.n

    # pivots of the X part; rows left with X = 0 are pure Z
    pivots: dict[int, Pauli] = {}
    zrows: list[Pauli] = []
    for g in t.generators:
        for col, pg in pivots.items():
            if (g.x >> col) & 1:
                g = g * pg
        if g.x:
            col = (g.x & -g.x).bit_length() - 1
            for c in list(pivots):
                if (pivots[c].x >> col) & 1:
                    pivots[c] = pivots[c] * g
            pivots[col] = g
        else:
            zrows.append(g)
    xcols = sum(1 << c for c in pivots)
    hcols = []
    basis: list[int] = []
    for g in zrows:
        v = g.z & ~xcols
        for b in basis:
            if v & (b & -b):
                v ^= b
        if not v:
            raise AssertionError("pure-Z rows are dependent outside the X pivots")
        low = v & -v
        basis = [b ^ v if b & low else b for b in basis]
        basis.append(v)
        hcols.append(low.bit_length() - 1)

    u_h = LocalCliffordLayer.on(n, H1, hcols)
    gens = [u_h.conjugate(g) for g in t.generators]

    # Gauss-Jordan to X block = identity
    for col in range(n):
        idx = next((i for i in range(col, n) if (gens[i].x >> col) & 1), None)
        if idx is None:
            raise AssertionError("X block is singular after Hadamards")
        gens[col], gens[idx] = gens[idx], gens[col]
        for i in range(n):
            if i != col and (gens[i].x >> col) & 1:
                gens[i] = gens[i] * gens[col]

    diag = [v for v in range(n) if (gens[v].z >> v) & 1]
    u_s = LocalCliffordLayer.on(n, S1, diag)
    gens = [u_s.conjugate(g) for g in gens]
    neg = [v for v in range(n) if gens[v].k == 2]
    u_z = LocalCliffordLayer.on(n, Z1, neg)
    gens = [u_z.conjugate(g) for g in gens]

    graph = Graph(n, tuple(g.z for g in gens))
    layer = u_h.then(u_s).then(u_z).inverse()
    if not same_group(layer.apply(graph.tableau()), t):
        raise AssertionError("graph-state conversion failed its round-trip check")
    return graph, layer


# --- LC equivalence -------------------------------------------------------------

INVERTIBLE = ((1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 1, 0))


def lc_equations(g1: Graph, g2: Graph) -> BitMatrix:
    """Rows over unknowns (a_v, b_v, c_v, d_v) at bits 4v..4v+3.

    The symplectic layer sends X_v to X^a Z^c and Z_v to X^b Z^d; it maps
    g1's stabilizer space onto g2's iff C + D G1 = G2 (A + B G1).
    """
    n = g1.n
    rows = []
    for u in range(n):
        for v in range(n):
            row = 0
            if u == v:
                row ^= 1 << (4 * u + 2)  # c_u
            if (g1.adj[u] >> v) & 1:
                row ^= 1 << (4 * u + 3)  # d_u G1_uv
            if (g2.adj[u] >> v) & 1:
                row ^= 1 << (4 * v + 0)  # G2_uv a_v
            common = g2.adj[u] & g1.adj[v]
            for w in range(n):
                if (common >> w) & 1:
                    row ^= 1 << (4 * w + 1)  # G2_uw b_w G1_wv
            rows.append(row)
    return BitMatrix(n * n, 4 * n, tuple(rows))


class _Affine:
    """Reduced linear system over the solution-space coordinates."""

    __slots__ = ("piv",)

    def __init__(self, piv=None):
        self.piv: dict[int, tuple[int, int]] = piv or {}

    def add(self, mask: int, rhs: int) -> _Affine | None:
        for col, (pm, pr) in self.piv.items():
            if (mask >> col) & 1:
                mask ^= pm
                rhs ^= pr
        if not mask:
            return self if rhs == 0 else None
        col = (mask & -mask).bit_length() - 1
        piv = {}
        for c, (pm, pr) in self.piv.items():
            if (pm >> col) & 1:
                piv[c] = (pm ^ mask, pr ^ rhs)
            else:
                piv[c] = (pm, pr)
        piv[col] = (mask, rhs)
        return _Affine(piv)

    def point(self) -> int:
        """A solution with free coordinates 0."""
        return sum(rhs << col for col, (_, rhs) in self.piv.items())


def lc_decide(g1: Graph, g2: Graph, limit: int = SEARCH_LIMIT) -> LocalCliffordLayer | None:
    """Local Clifford layer taking graph state g1 to g2 (phases included), or None.

    Solves the linear condition over F2, then searches its solution space
    vertex by vertex for a point where every 2x2 block is invertible,
    pruning with the accumulated linear constraints.
    """
    if g1.n != g2.n:
        raise ValueError(f"graphs on {g1.n} and {g2.n} vertices")
    n = g1.n
    if n == 0:
        return LocalCliffordLayer(())
    basis = kernel(lc_equations(g1, g2)).basis
    k = len(basis)
    # coefficient mask (over solution coordinates) of every unknown
    coef = [sum(((b >> var) & 1) << j for j, b in enumerate(basis)) for var in range(4 * n)]
    nodes = 0

    def options(sys: _Affine, v: int) -> list[tuple[tuple[int, int, int, int], _Affine]]:
        out = []
        for vals in INVERTIBLE:
            s = sys
            for off, val in enumerate(vals):
                s = s.add(coef[4 * v + off], val)
                if s is None:
                    break
            if s is not None:
                out.append((vals, s))
        return out

    def dfs(sys: _Affine, todo: frozenset[int]) -> _Affine | None:
        nonlocal nodes
        if not todo:
            return sys
        best = None
        for v in sorted(todo):
            opts = options(sys, v)
            if not opts:
                return None
            if best is None or len(opts) < len(best[1]):
                best = (v, opts)
                if len(opts) == 1:
                    break
        v, opts = best
        for _, s in opts:
            nodes += 1
            if nodes > limit:
                raise SearchOverflowError(f"LC search exceeded {limit} nodes (solution space dim {k})")
            found = dfs(s, todo - {v})
            if found is not None:
                return found
        return None

    found = dfs(_Affine(), frozenset(range(n)))
    log.debug("lc_decide: n=%d, solution space dim %d, %d nodes", n, k, nodes)
    if found is None:
        return None
    t = found.point()
    sol = 0
    for j, b in enumerate(basis):
        if (t >> j) & 1:
            sol ^= b
    blocks = [tuple((sol >> (4 * v + off)) & 1 for off in range(4)) for v in range(n)]
    layer = LocalCliffordLayer(tuple(SingleClifford.from_symplectic(*blk) for blk in blocks))
    layer = _fix_signs(layer, g1, g2)
    if not same_group(layer.apply(g1.tableau()), g2.tableau()):
        raise AssertionError("LC layer failed re-verification")
    return layer


def _fix_signs(layer: LocalCliffordLayer, g1: Graph, g2: Graph) -> LocalCliffordLayer:
    """Append Z gates so the image generators carry g2's signs."""
    t2 = g2.tableau()
    images = layer.apply(g1.tableau()).generators
    rows, rhs = [], 0
    for i, img in enumerate(images):
        ref = _product(t2.generators, img.x, g2.n)  # g2 element with this X part
        if ref.z != img.z:
            raise AssertionError("symplectic layer does not map onto the target space")
        rows.append(img.x)
        if (ref.k - img.k) % 4 == 2:
            rhs |= 1 << i
    # Z(w) flips the sign of an element with X part x by (-1)^{w.x}
    sol = solve_f2(BitMatrix(len(rows), g2.n, tuple(rows)), BitVec(len(rows), rhs))
    if sol is None:
        raise AssertionError("sign correction system is inconsistent")
    w = sol[0].bits
    return layer.then(LocalCliffordLayer.on(g2.n, Z1, [j for j in range(g2.n) if (w >> j) & 1]))


def graph_difference(g1: Graph, g2: Graph) -> list[tuple[int, int]]:
    return sorted(set(g1.edges()) ^ set(g2.edges()))
