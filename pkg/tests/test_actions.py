import pytest

from tpact.actions import (
    conjugate_tpa,
    crossed_product_action,
    is_admissible,
    natural_tau,
    refine_extension,
    restrict_to_idempotents,
    rho_to_tau,
    tau_order_witness,
    tau_rho_correspondence,
    tau_to_rho,
    theta_inverse,
    tpa_from_tau,
    tpas_equivalent,
    verify_tpa,
)
from tpact.clifford import element_multiplier
from tpact.corpus import e2_z2_action, klein_on_chain, z2_on_z2
from tpact.errors import AxiomViolation
from tpact.semigroup import is_e_unitary, sigma_congruence


def _orders(U):
    out = []
    for u in range(U.n):
        p, k = u, 1
        while U.mul(p, p) != p:
            p, k = U.mul(p, u), k + 1
        out.append(k)
    return sorted(out)


def test_z2_twisted_vs_trivial_orders():
    tw = crossed_product_action(z2_on_z2(True)).U
    tr = crossed_product_action(z2_on_z2(False)).U
    assert tw.n == tr.n == 4
    assert 4 in _orders(tw)
    assert _orders(tr) == [1, 2, 2, 2]


def test_e2_partial_crossed_product_size():
    assert crossed_product_action(e2_z2_action()).U.n == 3


def test_theta_inverse_matches_stored_inverse(corpus):
    for T in corpus[".tpa"].values():
        for x in range(T.G.n):
            for a in T.domains[x]:
                assert T.theta[x][theta_inverse(T, x, a)] == a


def test_corrupted_theta_is_rejected():
    T = e2_z2_action()
    th = [dict(t) for t in T.theta]
    th[0][0] = 1 if th[0][0] == 0 else 0
    with pytest.raises(AxiomViolation):
        verify_tpa(T.G, T.A, T.domains, tuple(th), T.w)


def test_restriction_is_untwisted(corpus):
    for T in corpus[".tpa"].values():
        R = restrict_to_idempotents(T).action
        assert all(len(m.domain) == 0 or all(m.left[a] == a for a in m.domain) for m in R.w.values())


def test_inequivalent_twist_detected():
    assert not tpas_equivalent(z2_on_z2(True), z2_on_z2(False))


def test_conjugate_is_equivalent():
    T = z2_on_z2(True)
    full = tuple(range(T.A.n))
    eps = (element_multiplier(T.A, full, 0), element_multiplier(T.A, full, 1))
    T2 = conjugate_tpa(T, eps)
    assert tpas_equivalent(T, T2, eps)
    assert tpas_equivalent(T, T2)


def test_refinement_kernel_is_sigma(suite):
    for item in suite[:40]:
        cp = crossed_product_action(item.action)
        ref = refine_extension(cp.extension)
        assert is_e_unitary(ref.S)
        sig = sigma_congruence(ref.S)
        for s in range(ref.S.n):
            for t in range(ref.S.n):
                assert sig.related(s, t) == (ref.kappa(s) == ref.kappa(t))


def test_tau_rho_round_trips(corpus):
    for T in corpus[".tpa"].values():
        cp = crossed_product_action(T, refine=False)
        pairs = tau_rho_correspondence(cp.extension)
        assert pairs
        ref = refine_extension(cp.extension)
        for rho, tau in pairs:
            assert tau_to_rho(ref, tau).rho == rho.rho
            assert rho_to_tau(ref, rho).key() == tau.key()


def test_natural_tau_recovers_action(corpus):
    for name, T in corpus[".tpa"].items():
        cp = crossed_product_action(T, refine=False)
        tau = natural_tau(cp)
        assert tau_order_witness(tau) is None
        assert tpa_from_tau(cp.extension, tau).same_as(T), name


def test_crossed_products_are_admissible(corpus):
    for T in corpus[".tpa"].values():
        v = is_admissible(crossed_product_action(T, refine=False).extension)
        assert v.admissible and v.tau is not None


def test_klein_partial_action():
    T = klein_on_chain()
    cp = crossed_product_action(T)
    assert cp.U.n == len(T.domains[0]) + 3 * len(T.domains[1])
