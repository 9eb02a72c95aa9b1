import cmath
import itertools
import math

import pytest
from hypothesis import given, strategies as st

from semireg.abelian import (
    AbelianGroup,
    Character,
    RootOfUnity,
    char_eval,
    char_sum,
    generates_dual,
    make_subgroup,
    perp_of_characters,
    perp_of_subgroup,
    span,
    subgroup_generated_by_chars,
)
from semireg.errors import NotASubgroup, ValidationError

Z4 = AbelianGroup([4])
Z5 = AbelianGroup([5])
K4 = AbelianGroup([2, 2])


def chi(group, *e):
    return group.character(e if len(e) > 1 else e[0])


# factor lists with order <= 64
FACTORS = [f for f in (
    [[d] for d in range(1, 65)]
    + [[a, b] for a in range(2, 9) for b in range(2, 9) if a * b <= 64]
    + [[2, 2, 2], [2, 2, 4], [2, 2, 2, 2], [3, 3, 3], [2, 2, 2, 2, 2], [2, 4, 4], [2, 2, 8], [2, 3, 6]]
)]


@st.composite
def groups(draw):
    return AbelianGroup(draw(st.sampled_from(FACTORS)))


@st.composite
def group_and_subset(draw):
    g = draw(groups())
    return g, draw(st.lists(st.sampled_from(g.elements()), max_size=4))


def numeric(chi_, h):
    """Independent evaluation exp(2 pi i sum a_k x_k / d_k)."""
    return cmath.exp(2j * math.pi * sum(a * x / d for a, x, d in zip(chi_.exps, chi_.group.elem(h), chi_.group.factors)))


# --- group basics --------------------------------------------------------------


def test_elements_lexicographic():
    assert K4.elements() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert Z4.order == 4 and K4.exponent == 2


def test_bad_factors():
    with pytest.raises(ValidationError):
        AbelianGroup([0])


# --- character evaluation ------------------------------------------------------


def test_char_eval_examples():
    v = char_eval(chi(Z4, 1), 1)
    assert (v.k, v.N) == (1, 4) and complex(v) == 1j
    assert all(char_eval(K4.principal, h).is_one() for h in K4.elements())
    assert char_eval(chi(K4, 1, 1), (1, 1)).is_one()


def test_root_lowest_terms():
    r = RootOfUnity(6, 8)
    assert (r.k, r.N) == (3, 4)
    assert (RootOfUnity(1, 4) * RootOfUnity(1, 4)) == RootOfUnity(1, 2)


@given(groups(), st.data())
def test_char_eval_matches_numeric(g, data):
    c = Character(g, data.draw(st.sampled_from(g.elements())))
    h = data.draw(st.sampled_from(g.elements()))
    assert abs(complex(c(h)) - numeric(c, h)) < 1e-12
    assert c(h).is_one() == (abs(numeric(c, h) - 1) < 1e-9)


@given(groups(), st.data())
def test_characters_are_homomorphisms(g, data):
    c = Character(g, data.draw(st.sampled_from(g.elements())))
    a, b = (data.draw(st.sampled_from(g.elements())) for _ in range(2))
    assert c(g.add(a, b)) == c(a) * c(b)


# --- character sums -----------------------------------------------------------------


def test_char_sum_examples():
    assert char_sum(chi(Z4, 1), [1, 3]) == 0
    assert char_sum(chi(Z4, 2), [1, 2, 3]) == -1
    assert char_sum(chi(Z4, 3), []) == 0


@given(groups())
def test_orthogonality_exact(g):
    for c in g.characters():
        total = char_sum(c, g.elements())
        assert total == (g.order if c.is_principal() else 0)


@given(group_and_subset())
def test_complement_sum(gs):
    g, a = gs
    a = set(a)
    rest = [h for h in g.elements() if h not in a]
    for c in g.characters():
        whole = char_sum(c, g.elements())
        assert abs(char_sum(c, rest) - (whole - char_sum(c, a))) < 1e-9


@pytest.mark.parametrize("factors", [[4], [6], [2, 2], [7], [2, 4]])
def test_vanishing_only_on_empty_or_whole(factors):
    # every nonempty proper subset has a non-principal character not vanishing on it
    g = AbelianGroup(factors)
    elems = g.elements()
    for r in range(1, g.order):
        for a in itertools.combinations(elems, r):
            assert any(abs(char_sum(c, a)) > 1e-9 for c in g.characters() if not c.is_principal())


# --- annihilators ---------------------------------------------------------------------


def test_perp_of_characters_examples():
    assert perp_of_characters(Z4, [chi(Z4, 0), chi(Z4, 1), chi(Z4, 3)]) == {(0,)}
    assert perp_of_characters(Z4, [chi(Z4, 2)]) == {0, 2}
    assert perp_of_characters(K4, [K4.principal]) == set(K4.elements())


def test_perp_of_subgroup_examples():
    assert perp_of_subgroup(Z4, [0, 2]) == {chi(Z4, 0), chi(Z4, 2)}
    assert perp_of_subgroup(Z4, [0, 1, 2, 3]) == {chi(Z4, 0)}
    assert perp_of_subgroup(Z4, [0]) == set(Z4.characters())


def test_perp_of_non_subgroup():
    with pytest.raises(NotASubgroup):
        perp_of_subgroup(Z4, [0, 1])


def test_generated_examples():
    assert subgroup_generated_by_chars([chi(Z4, 1)]) == set(Z4.characters())
    assert subgroup_generated_by_chars([chi(Z4, 2)]) == {chi(Z4, 0), chi(Z4, 2)}
    assert subgroup_generated_by_chars([chi(Z5, 1), chi(Z5, 2)]) == set(Z5.characters())
    assert generates_dual([chi(K4, 1, 0), chi(K4, 0, 1)])
    assert not generates_dual([chi(K4, 1, 1)])


@given(group_and_subset())
def test_duality_count(gs):
    g, gens = gs
    sub = span(g, gens)
    perp = perp_of_subgroup(g, sub)
    # independent count by numeric evaluation
    count = sum(all(abs(numeric(c, h) - 1) < 1e-9 for h in sub) for c in g.characters())
    assert len(perp) == count
    assert len(sub) * len(perp) == g.order


@given(group_and_subset())
def test_double_perp_of_subgroup(gs):
    g, gens = gs
    sub = span(g, gens)
    assert perp_of_characters(g, perp_of_subgroup(g, sub)).elements == sub


@given(groups(), st.data())
def test_double_perp_of_characters(g, data):
    chars = [Character(g, e) for e in data.draw(st.lists(st.sampled_from(g.elements()), min_size=1, max_size=4))]
    assert perp_of_subgroup(g, perp_of_characters(g, chars)) == subgroup_generated_by_chars(chars)


def test_make_subgroup_generators():
    sub = make_subgroup(AbelianGroup([2, 4]), [(0, 0), (0, 2), (1, 0), (1, 2)])
    assert span(sub.group, sub.gens) == sub.elements
