import pytest
from hypothesis import given, settings, strategies as st

from tpact.clifford import (
    Ideal,
    certify_clifford,
    chain_catalog,
    chain_clifford,
    element_multiplier,
    endomorphisms,
    ideals,
    identity_multiplier,
    iend_iui_isomorphism,
    inner_endo,
    is_multiplier,
    multiplier_monoid,
    rel_invertible_endos,
    rel_invertible_witness,
)
from tpact.corpus import symmetric_inverse_monoid
from tpact.errors import NotClifford, SizeCapExceeded
from tpact.groups import cyclic, trivial
from tpact.semigroup import load_table

CATALOG = chain_catalog([trivial(), cyclic(2), cyclic(3)], max_height=3, max_size=5)


@pytest.fixture
def e2():
    return certify_clifford(load_table("2\n0 1\n1 1\n"))


@pytest.fixture
def z2():
    return certify_clifford(load_table("2\n0 1\n1 0\n"))


@pytest.fixture
def one_z2():
    """Trivial group above Z2: three elements, ideals of sizes 2 and 3."""
    return chain_clifford([trivial(), cyclic(2)])


def test_components(e2, z2):
    assert {e: sorted(c) for e, c in e2.components.items()} == {0: [0], 1: [1]}
    assert len(z2.components) == 1 and len(next(iter(z2.components.values()))) == 2


def test_i2_is_not_clifford():
    with pytest.raises(NotClifford):
        certify_clifford(symmetric_inverse_monoid(2))


def test_ideals(e2, z2, one_z2):
    assert [I.sorted for I in ideals(e2)] == [(1,), (0, 1)]
    assert all(I.is_unital for I in ideals(e2))
    assert len(ideals(z2)) == 1
    assert [len(I) for I in ideals(one_z2)] == [2, 3]


def test_component_multiplicativity():
    for A in CATALOG:
        for a in range(A.n):
            for b in range(A.n):
                assert A.comp(A.mul(a, b)) == A.mul(A.comp(a), A.comp(b))


def test_singleton_multiplier_monoid_is_trivial(e2):
    M = multiplier_monoid(Ideal(e2, {1}))
    assert len(M.elements) == 1


def test_unital_ideal_multipliers_match_ideal():
    for A in CATALOG:
        for I in ideals(A):
            if not I.is_unital:
                continue
            M = multiplier_monoid(I)
            assert len(M.elements) == len(I)
            assert M.unit_iso is not None


def test_bottom_group_units(one_z2):
    bottom = ideals(one_z2)[0]
    M = multiplier_monoid(bottom)
    assert len(M.units) == 2


def test_multiplier_cap(one_z2):
    with pytest.raises(SizeCapExceeded):
        multiplier_monoid(ideals(one_z2)[-1], cap=1)


def test_invertible_multipliers_fix_ideals_and_invert():
    for A in CATALOG:
        for I in ideals(A):
            M = multiplier_monoid(I)
            for u in M.units:
                w = M.elements[u]
                wi = w.inverse()
                assert w.compose(wi).is_identity()
                conj = {wi.right[w.left[s]] for s in I.sorted}
                assert conj == set(I.sorted)
                for s in I.sorted:
                    assert A.inv[w.left[s]] == wi.right[A.inv[s]]
                    assert A.inv[w.right[s]] == wi.left[A.inv[s]]


def test_element_and_identity_multipliers(one_z2):
    dom = tuple(range(one_z2.n))
    assert is_multiplier(one_z2, identity_multiplier(dom))
    for c in range(one_z2.n):
        assert is_multiplier(one_z2, element_multiplier(one_z2, dom, c))


def test_e2_endomorphisms(e2):
    assert len(endomorphisms(e2)) == 3
    assert len(rel_invertible_endos(e2)) == 2


def test_z2_iend_is_aut(z2):
    assert len(rel_invertible_endos(z2)) == 1


def test_inner_endomorphisms_are_rel_invertible():
    for A in CATALOG:
        for b in range(A.n):
            r = inner_endo(A, b)
            assert rel_invertible_witness(A, r.map, r.bar, r.e_phi) is None


def test_iend_respects_components():
    for A in CATALOG[:12]:
        for r in rel_invertible_endos(A):
            for f in A.idempotents:
                if A.mul(f, r.e_phi) == f:
                    img = {r.map[a] for a in A.components[f]}
                    assert img == set(A.components[r.map[f]])


def test_iend_iui_e2(e2):
    m = iend_iui_isomorphism(e2)
    assert len(m.iend) == len(m.iui) == 2


def test_iend_iui_catalog():
    for A in CATALOG:
        m = iend_iui_isomorphism(A)
        assert len(m.iend) == len(m.iui) == len(m.forward)


def test_catalog_size():
    assert len(CATALOG) == 24


@settings(max_examples=30, deadline=None)
@given(st.integers(0, len(CATALOG) - 1), st.data())
def test_ideal_intersection_is_product(k, data):
    A = CATALOG[k]
    ids = ideals(A)
    I = data.draw(st.sampled_from(ids))
    J = data.draw(st.sampled_from(ids))
    assert (I & J).elements == I.times(J).elements
