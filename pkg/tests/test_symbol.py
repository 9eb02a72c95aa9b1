import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import nx_isomorphic, random_group, random_symbol
from semireg.abelian import AbelianGroup
from semireg.bicayley import gp_graph
from semireg.digraph import Digraph, automorphism_group_oracle
from semireg.errors import BadBaseChoice, NotAbelian, NotInvariantUnderH, NotSemiregular, ValidationError
from semireg.perm import Perm, PermGroup, enumerate_group
from semireg.symbol import (
    Symbol,
    abelian_structure,
    assemble_adjacency,
    build_frame,
    canonical_frame,
    digraph_from_symbol,
    extract_symbol,
)

Z4 = AbelianGroup([4])
H12 = PermGroup(12, (Perm.from_cycles(12, [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)]),))
FIRST = Symbol(Z4, [[[1, 3], [0]], [[0], [1, 3]]])
SECOND = Symbol(Z4, [[[], [1, 2, 3]], [[1, 2, 3], []]])


def hypercube():
    q3 = nx.hypercube_graph(3)
    label = {v: int("".join(map(str, v)), 2) for v in q3.nodes}
    return Digraph.from_edges(8, [(label[a], label[b]) for a, b in q3.edges])


# --- frames -------------------------------------------------------------------


def test_frame_example_2_1():
    f = build_frame(H12)
    assert f.m == 3 and f.base == (0, 4, 8)
    assert [f.point(1, h) for h in range(4)] == [4, 5, 6, 7]


def test_frame_regular():
    h = PermGroup(5, (Perm.from_cycles(5, [(0, 1, 2, 3, 4)]),))
    f = build_frame(h)
    assert f.m == 1 and f.base == (0,)


def test_frame_bad_base():
    with pytest.raises(BadBaseChoice):
        build_frame(H12, [0, 1, 8])


def test_frame_not_semiregular():
    with pytest.raises(NotSemiregular):
        build_frame(PermGroup(4, (Perm.from_cycles(4, [(0, 1, 2)]),)))


def test_frame_not_abelian():
    with pytest.raises(NotAbelian):
        build_frame(PermGroup(3, (Perm.from_cycles(3, [(0, 1)]), Perm.from_cycles(3, [(1, 2)]))))


def test_frame_order_is_bijection():
    f = build_frame(H12, [2, 5, 11])
    assert sorted(f.vertex_order) == list(range(12))
    assert all(f.point(*f.locate(x)) == x for x in range(12))


@pytest.mark.parametrize("factors", [[6], [2, 2], [2, 4], [3, 3], [2, 2, 2]])
def test_abelian_structure_recovers_order(factors):
    g = AbelianGroup(factors)
    group, table = abelian_structure(canonical_frame(g, 2).h)
    assert group.order == g.order
    assert sorted(group.factors) == sorted(factors)
    # the table is a homomorphism
    for a in group.elements():
        for b in group.elements():
            assert table[group.add(a, b)] == table[a] * table[b]


# --- extract_symbol --------------------------------------------------------------


def test_extract_first_form():
    d, f, _ = gp_graph(4, 1)
    assert extract_symbol(d, f) == FIRST


def test_extract_second_form():
    d = hypercube()
    even = {x for x in range(8) if bin(x).count("1") % 2 == 0}
    aut = enumerate_group(automorphism_group_oracle(d))
    sides = {frozenset(even), frozenset(range(8)) - frozenset(even)}
    h = next(PermGroup(8, (p,)) for p in aut if p.order() == 4 and set(PermGroup(8, (p,)).orbits()) == sides)
    # base pair of antipodal points: x_2 is the vertex of the second orbit not adjacent to x_1
    f = build_frame(h, [0, 7])
    sym = extract_symbol(d, f)
    assert sym.entries[0][0] == sym.entries[1][1] == frozenset()
    assert sym == Symbol(sym.group, [[[], [1, 2, 3]], [[1, 2, 3], []]])


def test_extract_edgeless():
    f = build_frame(H12)
    sym = extract_symbol(Digraph(12, []), f)
    assert all(not e for row in sym.entries for e in row)


def test_extract_checks_h_invariance():
    f = build_frame(H12)
    with pytest.raises(NotInvariantUnderH):
        extract_symbol(Digraph(12, [(0, 4)]), f)


# --- adjacency -------------------------------------------------------------------


def test_adjacency_cube():
    a = assemble_adjacency(FIRST)
    assert a.shape == (8, 8) and (a.sum(axis=1) == 3).all() and (a == a.T).all()


def test_adjacency_trivial_cases():
    assert not assemble_adjacency(Symbol(Z4, [[[], []], [[], []]])).any()
    assert (assemble_adjacency(Symbol(Z4, [[Z4.elements()]])) == 1).all()


def test_adjacency_matches_digraph():
    d, f = digraph_from_symbol(FIRST)
    a = assemble_adjacency(FIRST, f)
    assert {(u, v) for u in range(8) for v in range(8) if a[u, v]} == set(d.arcs)


@given(st.integers(0, 10**6))
def test_adjacency_commutes_with_h(seed):
    rng = random.Random(seed)
    g = random_group(rng, 12)
    s = random_symbol(rng, g, rng.randint(1, 3))
    _, f = digraph_from_symbol(s)
    a = assemble_adjacency(s, f)
    eye = np.eye(a.shape[0], dtype=np.int64)
    for p in f.elem_perm.values():
        ph = eye[f.vector_action(p)]
        assert (ph @ a == a @ ph).all()


@given(st.integers(0, 10**6))
def test_block_row_sums(seed):
    rng = random.Random(seed)
    g = random_group(rng, 12)
    s = random_symbol(rng, g, rng.randint(1, 3))
    a = assemble_adjacency(s)
    n = g.order
    for i in range(s.m):
        assert (a[i * n:(i + 1) * n].sum(axis=1) == s.row_valency(i)).all()


# --- round trips -------------------------------------------------------------------


def test_gp_from_symbol():
    d, _ = digraph_from_symbol(Symbol(AbelianGroup([7]), [[[1, -1], [0]], [[0], [2, -2]]]))
    expected = Digraph.from_edges(14, [(i, (i + 1) % 7) for i in range(7)] + [(i, 7 + i) for i in range(7)]
                                  + [(7 + i, 7 + (i + 2) % 7) for i in range(7)])
    assert d.arcs == expected.arcs


def test_directed_cycle_from_symbol():
    d, _ = digraph_from_symbol(Symbol(Z4, [[[1]]]))
    assert d.arcs == {(i, (i + 1) % 4) for i in range(4)}


def test_second_form_is_cube():
    assert nx_isomorphic(digraph_from_symbol(SECOND)[0], hypercube())


def test_symbol_json_round_trip():
    assert Symbol.from_json(FIRST.to_json()) == FIRST
    with pytest.raises(ValidationError):
        Symbol.from_json({"factors": [4], "m": 3, "entries": [[[1]]]})


@given(st.integers(0, 10**6))
def test_round_trip_symbol_digraph_symbol(seed):
    rng = random.Random(seed)
    g = random_group(rng, 12)
    s = random_symbol(rng, g, rng.randint(1, 3))
    d, f = digraph_from_symbol(s)
    assert extract_symbol(d, f) == s


@given(st.integers(0, 10**6))
def test_round_trip_through_relabelled_points(seed):
    rng = random.Random(seed)
    g = random_group(rng, 12)
    s = random_symbol(rng, g, rng.randint(1, 3))
    d, f = digraph_from_symbol(s)
    npts = d.n
    pi = list(range(npts))
    rng.shuffle(pi)
    relabel = Perm(pi)
    d2 = Digraph(npts, [(pi[u], pi[v]) for u, v in d.arcs])
    h2 = PermGroup(npts, tuple(relabel.inverse() * p * relabel for p in f.h.generators))
    # the images of the canonical base points give back the same symbol over the recovered group
    f2 = build_frame(h2, [pi[x] for x in f.base])
    s2 = extract_symbol(d2, f2)
    d3, f3 = digraph_from_symbol(s2)
    # map d2 into the canonical frame of s2 and compare arc sets exactly
    to_canon = {x: f3.point(*f2.locate(x)) for x in range(npts)}
    assert {(to_canon[u], to_canon[v]) for u, v in d2.arcs} == set(d3.arcs)
    assert sum(len(e) for row in s2.entries for e in row) == sum(len(e) for row in s.entries for e in row)


@given(st.integers(0, 10**6))
def test_translation_acts_on_tensors(seed):
    rng = random.Random(seed)
    g = random_group(rng, 10)
    m = rng.randint(1, 3)
    f = canonical_frame(g, m)
    u = np.array([rng.gauss(0, 1) for _ in range(m)])
    fvals = {h: complex(rng.gauss(0, 1), rng.gauss(0, 1)) for h in g.elements()}
    h = rng.choice(g.elements())
    v = np.array([fvals[a] for a in g.elements()])
    v_shift = np.array([fvals[g.add(a, h)] for a in g.elements()])
    w = np.kron(u, v)
    assert np.allclose(w[f.vector_action(f.elem_perm[h])], np.kron(u, v_shift), atol=1e-14)
