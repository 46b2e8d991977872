import itertools
import random
from functools import reduce

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import graphs, instances, random_graph, random_instance
from lulc.f2core import Subspace
from lulc.forge import builtin_paper_instance
from lulc.quadform import PhaseAssignment, QuadraticForm, eval_terms
from lulc.stab import (
    H1,
    I1,
    Graph,
    LocalCliffordLayer,
    Pauli,
    SearchOverflowError,
    StabilizerTableau,
    TableauError,
    apply_diagonal_phases,
    lc_decide,
    lc_orbit,
    local_complement,
    same_group,
    single_clifford_group,
    stabilizes,
    support_state,
    tableau_from_instance,
    to_graph_state,
)

MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
SIGNS = {"+": 1, "-": -1, "+i": 1j, "-i": -1j}


def dense(p: Pauli) -> np.ndarray:
    lab = p.label()
    sign, letters = lab[: len(lab) - p.n], lab[len(lab) - p.n:]
    return SIGNS[sign] * reduce(np.kron, [MATS[ch] for ch in letters])


def statevector(s: Subspace, q: QuadraticForm | None, octal=None) -> np.ndarray:
    # qubit 1 is the most significant tensor factor, matching np.kron order
    v = np.zeros(2**s.n, dtype=complex)
    for x in s.span_bits():
        idx = int(format(x, f"0{s.n}b")[::-1], 2)
        amp = (-1) ** (eval_terms(q, x) if q is not None else 0)
        if octal is not None:
            amp *= np.exp(1j * np.pi / 4 * sum(octal[j] for j in range(s.n) if (x >> j) & 1))
        v[idx] = amp
    return v


letters = st.text("IXYZ", min_size=1, max_size=4)


@given(letters.flatmap(lambda a: st.tuples(st.just(a), st.text("IXYZ", min_size=len(a), max_size=len(a)))),
       st.sampled_from(["+", "-", "i", "-i"]), st.sampled_from(["+", "-", "i", "-i"]))
def test_pauli_product_matches_dense(pair, s1, s2):
    a, b = pair
    p, q = Pauli.from_label(s1 + a), Pauli.from_label(s2 + b)
    assert np.allclose(dense(p * q), dense(p) @ dense(q))
    assert p.commutes(q) == np.allclose(dense(p) @ dense(q), dense(q) @ dense(p))


def test_y_convention():
    y = Pauli.from_label("Y")
    assert (y.x, y.z, y.k) == (1, 1, 1)
    assert y.label() == "+Y"
    assert np.allclose(dense(y), MATS["Y"])


def test_epr_tableaux():
    s = Subspace.from_strs(["11"])
    assert tableau_from_instance(s, QuadraticForm(2)).labels() == ["+XX", "+ZZ"]
    assert tableau_from_instance(s, QuadraticForm.from_terms(2, [(1, 2)])).labels() == ["+YY", "+ZZ"]


def test_epr_statevector_check():
    s = Subspace.from_strs(["11"])
    q = QuadraticForm.from_terms(2, [(1, 2)])
    v = statevector(s, q)
    for g in tableau_from_instance(s, q).generators:
        assert np.allclose(dense(g) @ v, v)


@given(instances(max_d=3, max_extra=3))
def test_tableau_stabilizes_dense_state(inst):
    v = statevector(inst.s, inst.q)
    t = tableau_from_instance(inst.s, inst.q)
    assert t.is_valid()
    for g in t.generators:
        assert np.allclose(dense(g) @ v, v)


@given(instances(max_d=6, max_extra=6))
def test_tableau_support_action(inst):
    t = tableau_from_instance(inst.s, inst.q)
    amps = support_state(inst.s, inst.q)
    assert all(stabilizes(g, amps) for g in t.generators)
    plain = tableau_from_instance(inst.s, inst.q, with_phases=False)
    flat = support_state(inst.s)
    assert all(stabilizes(g, flat) for g in plain.generators)


def test_builtin_tableaux_differ_only_in_phase_data():
    inst, _ = builtin_paper_instance()
    ts = tableau_from_instance(inst.s, QuadraticForm(27))
    tq = tableau_from_instance(inst.s, inst.q)
    assert ts.x_rows() == tq.x_rows()
    assert ts.z_rows() != tq.z_rows()
    assert all(stabilizes(g, support_state(inst.s, inst.q)) for g in tq.generators)


def test_diagonal_zero_phases_is_identity():
    inst, _ = builtin_paper_instance()
    t = tableau_from_instance(inst.s, inst.q)
    assert apply_diagonal_phases(t, PhaseAssignment.zeros(27)).generators == t.generators


def test_diagonal_z_layer_flips_odd_weight_signs():
    s = Subspace.from_strs(["1100", "0111"])
    t = tableau_from_instance(s, QuadraticForm(4))
    out = apply_diagonal_phases(t, PhaseAssignment.from_octal([4] * 4))
    for g, h in zip(t.generators, out.generators):
        flip = 2 * (bin(g.x).count("1") % 2)
        assert (h.x, h.z, h.k) == (g.x, g.z, (g.k + flip) % 4)


def test_builtin_lu_map():
    inst, w = builtin_paper_instance()
    ts = tableau_from_instance(inst.s, QuadraticForm(27))
    tq = tableau_from_instance(inst.s, inst.q)
    assert same_group(apply_diagonal_phases(ts, w), tq)
    assert not same_group(ts, tq)


@given(st.integers(0, 2**32 - 1))
def test_diagonal_phases_match_dense_state(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(1, 3), rng.randint(0, 2))
    octal = [2 * rng.randint(0, 3) for _ in range(inst.n)]
    t = tableau_from_instance(inst.s, inst.q)
    out = apply_diagonal_phases(t, PhaseAssignment.from_octal(octal))
    v = statevector(inst.s, inst.q, octal)
    for g in out.generators:
        assert np.allclose(dense(g) @ v, v)


def test_epr_to_graph():
    t = tableau_from_instance(Subspace.from_strs(["11"]), QuadraticForm(2))
    g, layer = to_graph_state(t)
    assert g.edges() == [(1, 2)]
    assert layer.gates[0] == I1 and layer.gates[1].matrix == H1.matrix
    assert same_group(layer.apply(g.tableau()), t)


@given(graphs(max_n=8))
def test_graph_tableau_is_fixed_point(g):
    g2, layer = to_graph_state(g.tableau())
    assert g2 == g
    assert all(gate.matrix == ((1, 0), (0, 1)) for gate in layer.gates)


@given(st.integers(0, 2**32 - 1))
def test_graph_conversion_round_trip(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 6)
    inst = random_instance(rng, d, rng.randint(0, 12 - d), rng.choice([0.0, 0.3, 0.6]))
    t = tableau_from_instance(inst.s, inst.q)
    g, layer = to_graph_state(t)
    assert same_group(layer.apply(g.tableau()), t)


def test_local_complement_examples():
    tri = Graph.from_edges(3, [(1, 2), (1, 3), (2, 3)])
    for v in (1, 2, 3):
        lc = local_complement(tri, v)
        assert len(lc.edges()) == 2 and all(v in e for e in lc.edges())
    star = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
    assert local_complement(star, 1) == Graph.from_edges(4, itertools.combinations(range(1, 5), 2))


@given(graphs(), st.data())
def test_local_complement_involution(g, data):
    v = data.draw(st.integers(1, g.n))
    assert local_complement(local_complement(g, v), v) == g


def test_orbit_examples():
    assert lc_orbit(Graph.empty(1))[0] == {Graph.empty(1)}
    assert lc_orbit(Graph.empty(4))[0] == {Graph.empty(4)}
    tri = Graph.from_edges(3, [(1, 2), (1, 3), (2, 3)])
    paths = {Graph.from_edges(3, [(a, b), (a, c)]) for a, b, c in [(1, 2, 3), (2, 1, 3), (3, 1, 2)]}
    orbit, capped = lc_orbit(tri)
    assert not capped and orbit == paths | {tri}


def test_orbit_cap():
    g = Graph.from_edges(6, [(i, i + 1) for i in range(1, 6)])
    orbit, capped = lc_orbit(g, cap=3)
    assert capped and len(orbit) == 3


def test_lc_decide_examples():
    g = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    layer = lc_decide(g, g)
    assert layer is not None and same_group(layer.apply(g.tableau()), g.tableau())
    star = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
    k4 = Graph.from_edges(4, itertools.combinations(range(1, 5), 2))
    assert lc_decide(star, k4) is not None
    assert lc_decide(Graph.empty(3), Graph.from_edges(3, [(1, 2)])) is None


def test_builtin_graphs_not_lc():
    inst, _ = builtin_paper_instance()
    gs, _ = to_graph_state(tableau_from_instance(inst.s, QuadraticForm(27)))
    gq, _ = to_graph_state(tableau_from_instance(inst.s, inst.q))
    assert gs.n == gq.n == 27
    assert lc_decide(gs, gq) is None
    assert lc_decide(gs, gs) is not None


def test_lc_search_limit():
    g1 = Graph.from_edges(6, [(1, v) for v in range(2, 7)])
    g2 = Graph.from_edges(6, itertools.combinations(range(1, 7), 2))
    with pytest.raises(SearchOverflowError):
        lc_decide(g1, g2, limit=0)


@given(graphs(max_n=7), graphs(max_n=7))
def test_lc_decide_matches_orbit(g1, g2):
    if g1.n != g2.n:
        g2 = random_graph(random.Random(hash(g2) & 0xFFFF), g1.n)
    orbit, _ = lc_orbit(g1)
    layer = lc_decide(g1, g2)
    assert (layer is not None) == (g2 in orbit)
    if layer is not None:
        assert same_group(layer.apply(g1.tableau()), g2.tableau())


@given(graphs(max_n=7), st.data())
def test_local_complement_preserves_lc_class(g, data):
    v = data.draw(st.integers(1, g.n))
    h = local_complement(g, v)
    layer = lc_decide(g, h)
    assert layer is not None
    assert same_group(layer.apply(g.tableau()), h.tableau())


def test_single_clifford_group():
    group = single_clifford_group()
    assert len(group) == 24
    assert len({(c.img_x, c.img_z) for c in group}) == 24
    for c in group:
        assert c.then(c.inverse()).is_identity()


def test_layer_inverse():
    rng = random.Random(1)
    group = single_clifford_group()
    layer = LocalCliffordLayer(tuple(rng.choice(group) for _ in range(5)))
    g = random_graph(rng, 5)
    t = g.tableau()
    assert same_group(layer.inverse().apply(layer.apply(t)), t)


def test_tableau_validation():
    with pytest.raises(TableauError):
        StabilizerTableau(2, (Pauli.from_label("XI"), Pauli.from_label("ZI"))).validate()
    with pytest.raises(TableauError):
        StabilizerTableau(2, (Pauli.from_label("XX"), Pauli.from_label("XX"))).validate()


def test_graph_json_and_dot():
    g = Graph.from_edges(3, [(1, 3)])
    assert Graph.from_json(g.to_json()) == g
    dot = g.to_dot("G")
    assert dot.startswith("graph G {") and "1 -- 3;" in dot
