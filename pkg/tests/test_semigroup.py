import pytest

from tpact.corpus import brandt, symmetric_inverse_monoid
from tpact.errors import TpactError, InvalidKNS, MalformedInput, NotAssociative, NotHomomorphism, NotInverse, NotRegular, SizeCapExceeded
from tpact.groups import cyclic, direct_product
from tpact.semigroup import (
    Congruence,
    FiniteSemigroup,
    Homomorphism,
    KernelNormalSystem,
    congruence_from_kns,
    find_isomorphism,
    group_congruences,
    hasse_pairs,
    inverse_structure,
    is_e_unitary,
    is_f_inverse,
    load_table,
    max_group_image,
    natural_leq,
    sigma_congruence,
    sigma_maxima,
)

E2_TEXT = "2\n0 1\n1 1\n"
Z2_TEXT = "# cyclic\n2\n0 1\n1 0\n"


@pytest.fixture
def e2():
    return inverse_structure(load_table(E2_TEXT))


@pytest.fixture
def z2():
    return inverse_structure(load_table(Z2_TEXT))


@pytest.fixture
def i2():
    return inverse_structure(symmetric_inverse_monoid(2))


def test_load_semilattice_and_group(e2, z2):
    assert e2.table == ((0, 1), (1, 1))
    assert z2.table == ((0, 1), (1, 0))


def test_right_zero_band_is_associative_but_not_inverse():
    band = load_table("2\n0 1\n0 1\n")
    with pytest.raises((NotInverse, NotRegular)):
        inverse_structure(band)


@pytest.mark.parametrize(
    "text",
    ["", "2\n0 1\n", "2\n0 1\n1 2\n", "x\n", "2\n0 a\n1 1\n", "0\n"],
)
def test_malformed_tables(text):
    with pytest.raises(MalformedInput):
        load_table(text)


def test_non_associative_reports_triple():
    with pytest.raises(NotAssociative) as exc:
        load_table("2\n1 0\n0 0\n")
    a, b, c = exc.value.witness
    t = ((1, 0), (0, 0))
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_inverse_structure_examples(e2, z2, i2):
    assert e2.inv == (0, 1) and sorted(e2.idempotents) == [0, 1]
    assert z2.inv == (0, 1) and list(z2.idempotents) == [0]
    assert i2.n == 7 and len(i2.idempotents) == 4


def test_inverse_laws_exhaustive(i2):
    S = i2
    for s in range(S.n):
        assert S.inv[S.inv[s]] == s
        for t in range(S.n):
            assert S.inv[S.mul(s, t)] == S.mul(S.inv[t], S.inv[s])


def test_natural_order(e2, z2, i2):
    assert natural_leq(e2, 1, 0)
    assert not natural_leq(z2, 1, 0)
    zero = next(z for z in range(i2.n) if all(i2.mul(z, a) == z for a in range(i2.n)))
    assert all(natural_leq(i2, zero, t) for t in range(i2.n))


def test_natural_order_is_partial_order(i2):
    S, leq = i2, i2.leq
    for a in range(S.n):
        assert leq[a][a]
        for b in range(S.n):
            if a != b:
                assert not (leq[a][b] and leq[b][a])
            for c in range(S.n):
                if leq[a][b] and leq[b][c]:
                    assert leq[a][c]


def test_hasse_pairs_cover_relation(e2):
    assert list(hasse_pairs(e2)) == [(1, 0)]


def test_sigma_examples(e2, z2, i2):
    assert len(sigma_congruence(z2).classes) == 2
    assert len(sigma_congruence(e2).classes) == 1
    G, nat = max_group_image(i2)
    assert G.n == 1
    G, nat = max_group_image(z2)
    assert G.n == 2 and nat.is_bijective()


def test_e_unitary_and_f_inverse(e2, z2, i2):
    assert is_e_unitary(e2) and is_e_unitary(z2)
    assert not is_e_unitary(i2)
    assert is_f_inverse(z2) and is_f_inverse(e2)
    assert sigma_maxima(e2) == {0: 0}


def test_semilattice_without_top_is_not_f_inverse():
    v = inverse_structure(load_table("3\n0 2 2\n2 1 2\n2 2 2\n"))
    assert is_e_unitary(v) and not is_f_inverse(v)


def test_congruence_rejects_incompatible_partition():
    chain = inverse_structure(load_table("3\n0 1 2\n1 1 2\n2 2 2\n"))
    Congruence(chain, (0, 0, 1))
    with pytest.raises(TpactError):
        Congruence(chain, (0, 1, 0))


def test_kns_trivial_groups_give_identity(i2):
    kns = KernelNormalSystem(i2, {e: frozenset({e}) for e in i2.idempotents})
    cong, nat = congruence_from_kns(i2, kns)
    assert len(cong.classes) == i2.n


def test_kns_normal_subgroup_gives_quotient_group():
    Z4 = cyclic(4)
    S = inverse_structure(Z4.base)
    kns = KernelNormalSystem(S, {Z4.e: frozenset({0, 2})})
    cong, nat = congruence_from_kns(S, kns)
    assert nat.target.n == 2


def test_kns_rejects_non_subgroup():
    Z4 = cyclic(4)
    S = inverse_structure(Z4.base)
    with pytest.raises(InvalidKNS):
        KernelNormalSystem(S, {Z4.e: frozenset({0, 1})})


def test_isomorphism_examples(e2):
    h = find_isomorphism(e2.base, e2.base)
    assert h.map == (0, 1)
    assert find_isomorphism(cyclic(4).base, direct_product(cyclic(2), cyclic(2)).base) is None


def test_isomorphism_cap():
    big = cyclic(3)
    with pytest.raises(SizeCapExceeded):
        find_isomorphism(big.base, big.base, cap=2)


def test_homomorphism_rejects_non_multiplicative(z2):
    with pytest.raises(NotHomomorphism):
        Homomorphism(z2, z2, (1, 0))


def test_sigma_is_least_group_congruence(i2):
    B = inverse_structure(brandt(2))
    for S in (i2, B):
        sig = sigma_congruence(S)
        for c in group_congruences(S):
            assert c.contains(sig)


def test_subsemigroup_closure():
    with pytest.raises(MalformedInput):
        cyclic(3).base.subsemigroup([1])
