import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from helpers import nx_isomorphic, vf2_automorphism_count
from semireg.abelian import AbelianGroup
from semireg.bicayley import gp_graph
from semireg.digraph import (
    Digraph,
    automorphism_group_oracle,
    cayley_digraph,
    is_edge_transitive_oracle,
    is_vertex_transitive_oracle,
    orbital_closure,
)
from semireg.errors import CapExceeded, ValidationError
from semireg.perm import Perm, PermGroup, enumerate_group

Z4 = AbelianGroup([4])
C4 = PermGroup(4, (Perm.from_cycles(4, [(0, 1, 2, 3)]),))


def directed_cycle(n):
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


# --- orbital closure --------------------------------------------------------


def test_orbital_closure_directed_cycle():
    assert orbital_closure(C4, [(0, 1)]).arcs == directed_cycle(4).arcs


def test_orbital_closure_cube():
    d, _, _ = gp_graph(4, 1)
    aut = automorphism_group_oracle(d)
    closed = orbital_closure(aut, [(0, 1), (1, 0)])
    assert len(closed.arcs) == 24 and closed.arcs == d.arcs


def test_orbital_closure_diagonal():
    assert orbital_closure(C4, [(0, 0)]).arcs == {(i, i) for i in range(4)}


def test_orbital_closure_rejects_bad_seed():
    with pytest.raises(ValidationError):
        orbital_closure(C4, [(0, 9)])


@given(st.integers(0, 10**6))
def test_orbital_closure_is_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    gens = []
    for _ in range(2):
        im = list(range(n))
        rng.shuffle(im)
        gens.append(Perm(im))
    g = PermGroup(n, tuple(gens))
    d = orbital_closure(g, [(rng.randrange(n), rng.randrange(n)) for _ in range(2)])
    assert all(d.preserved_by(p) for p in g.generators)


# --- Cayley digraphs ----------------------------------------------------------


def test_cayley_examples():
    cyc = cayley_digraph(Z4, [1, 3])
    assert cyc.is_graph() and cyc.edges() == {frozenset((i, (i + 1) % 4)) for i in range(4)}
    assert cayley_digraph(Z4, []).arcs == frozenset()
    assert cayley_digraph(Z4, [0]).arcs == {(i, i) for i in range(4)}


@given(st.sampled_from([[5], [6], [2, 2], [2, 3], [3, 3], [8]]), st.data())
def test_cayley_valency(factors, data):
    h = AbelianGroup(factors)
    s = data.draw(st.sets(st.sampled_from(h.elements())))
    d = cayley_digraph(h, s)
    assert all(len(x) == len(s) for x in d.out_neighbors())
    assert all(len(x) == len(s) for x in d.in_neighbors())


# --- automorphism search ------------------------------------------------------------


def test_aut_directed_cycle():
    assert automorphism_group_oracle(directed_cycle(4)).order == 4


def test_aut_petersen():
    aut = automorphism_group_oracle(gp_graph(5, 2)[0])
    assert aut.order == 120 == len(enumerate_group(aut))


def test_aut_cube():
    assert automorphism_group_oracle(gp_graph(4, 1)[0]).order == 48


def test_aut_budget():
    with pytest.raises(CapExceeded):
        automorphism_group_oracle(gp_graph(10, 3)[0], cap=5)


def test_aut_elements_are_automorphisms_and_nonmembers_fail():
    d = gp_graph(8, 3)[0]
    aut = automorphism_group_oracle(d)
    elems = enumerate_group(aut)
    assert all(d.preserved_by(p) for p in elems)
    rng = random.Random(7)
    members = set(elems)
    im = list(range(d.n))
    while Perm(im) in members:
        rng.shuffle(im)
    assert not d.preserved_by(Perm(im))


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_aut_order_matches_vf2(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    p = rng.uniform(0.15, 0.6)
    d = Digraph(n, [(u, v) for u in range(n) for v in range(n) if rng.random() < p])
    assert automorphism_group_oracle(d).order == vf2_automorphism_count(d)


@pytest.mark.parametrize("n,s", [(3, 1), (4, 1), (5, 2), (6, 1), (7, 2), (8, 3)])
def test_gp_aut_order_matches_vf2(n, s):
    d = gp_graph(n, s)[0]
    assert automorphism_group_oracle(d).order == vf2_automorphism_count(d)


# --- transitivity ------------------------------------------------------------------


def test_edge_transitive_examples():
    assert is_edge_transitive_oracle(gp_graph(4, 1)[0])
    assert not is_edge_transitive_oracle(gp_graph(7, 2)[0])
    assert is_edge_transitive_oracle(gp_graph(12, 5)[0])


def test_edge_transitivity_needs_graph():
    with pytest.raises(ValidationError):
        is_edge_transitive_oracle(directed_cycle(3))


@pytest.mark.parametrize("n,s", [(4, 1), (5, 2), (8, 3), (10, 2), (10, 3), (12, 5), (24, 5)])
def test_theorem_pairs_vertex_transitive(n, s):
    assert is_vertex_transitive_oracle(gp_graph(n, s)[0])


def test_gp_7_2_not_vertex_transitive():
    assert not is_vertex_transitive_oracle(gp_graph(7, 2)[0])


def test_gp_4_1_is_the_cube():
    q3 = nx.convert_node_labels_to_integers(nx.hypercube_graph(3))
    cube = Digraph.from_edges(8, q3.edges)
    assert nx_isomorphic(cube, gp_graph(4, 1)[0])


def test_json_round_trip():
    d = gp_graph(5, 2)[0]
    assert Digraph.from_json(d.to_json()).arcs == d.arcs
