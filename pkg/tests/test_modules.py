import pytest

from tpact.actions import crossed_product_action, verify_tpa, trivial_w
from tpact.clifford import chain_clifford
from tpact.corpus import e2, nonmonotone_extension
from tpact.correspondence import lambda_from_theta
from tpact.errors import AxiomViolation, DiagramFailure
from tpact.groups import cyclic, trivial
from tpact.modules import (
    extensions_equivalent_S,
    f_inverse_transversal,
    factorize,
    idempotent_module,
    inverse_twist_witness,
    is_order_preserving,
    is_sieben,
    module_from_extension,
    modules_equivalent,
    mu_from_factorization,
    crossed_product_module,
    order_preserving_transversals,
    twist_monotonicity_witness,
    twist_sigma_agreement_witness,
    transversal_difference,
    transversals,
    trivial_extension,
    verify_module,
)
from tpact.semigroup import find_isomorphism, is_f_inverse


def test_idempotent_module_is_sieben():
    mod = idempotent_module(e2())
    assert is_sieben(mod)


def test_trivial_extension_gives_idempotent_module():
    for A in (e2(), chain_clifford([trivial(), cyclic(2)]), chain_clifford([cyclic(3), cyclic(2)], [(0, 0, 0)])):
        ext, rho = trivial_extension(A)
        assert is_order_preserving(ext, rho)
        assert module_from_extension(ext, rho).same_as(idempotent_module(A))


def test_corrupted_cocycle_fails_axiom_v(corpus):
    mod = corpus[".tsm"]["Z3_Z3_twisted.tsm"]
    f = [list(r) for r in mod.f]
    s = next(s for s in range(mod.S.n) if s not in mod.S.idempotent_set)
    f[s][s] = mod.A.mul(f[s][s], 1 if f[s][s] != 1 else 2)
    with pytest.raises(AxiomViolation) as exc:
        verify_module(mod.S, mod.A, mod.alpha, mod.lam, f)
    assert exc.value.axiom == "v"
    assert len(exc.value.witness) == 3


def test_crossed_product_of_idempotent_module_is_e2():
    A = e2()
    cp = crossed_product_module(idempotent_module(A))
    assert find_isomorphism(cp.U.base, A.base.base) is not None


def test_crossed_product_size_counts_components():
    # Z2 with an adjoined zero; partial Z2 action whose non-identity domain is the zero
    A, G = chain_clifford([cyclic(2), trivial()]), cyclic(2)
    zero = next(e for e in A.idempotents if all(A.mul(e, a) == e for a in range(A.n)))
    doms = (frozenset(range(A.n)), frozenset({zero}))
    T = verify_tpa(G, A, doms, ({a: a for a in range(A.n)}, {zero: zero}), trivial_w(G, doms))
    mod = lambda_from_theta(T)
    cp = crossed_product_module(mod)
    assert mod.S.n == 3
    assert cp.U.n == sum(len(A.components[mod.ran_alpha(s)]) for s in range(mod.S.n)) == 4


def test_natural_transversal_reproduces_sieben_module(corpus):
    for name, mod in corpus[".tsm"].items():
        if not is_sieben(mod):
            continue
        cp = crossed_product_module(mod)
        assert module_from_extension(cp.extension, cp.natural_transversal()).same_as(mod), name


def test_factorization_is_a_bijection(corpus):
    for name, mod in corpus[".tsm"].items():
        cp = crossed_product_module(mod)
        rho = cp.natural_transversal()
        pairs = {factorize(cp.extension, rho, u) for u in range(cp.U.n)}
        assert len(pairs) == cp.U.n
        mu = mu_from_factorization(cp, cp.extension, rho)
        assert mu.is_bijective()


def test_nonmonotone_transversals():
    ext = nonmonotone_extension()
    rs = list(transversals(ext))
    flags = [is_order_preserving(ext, r) for r in rs]
    assert True in flags and False in flags
    for r, ok in zip(rs, flags):
        assert bool(is_sieben(module_from_extension(ext, r))) == ok


def test_sieben_failure_has_witness():
    ext = nonmonotone_extension()
    bad = next(r for r in transversals(ext) if not is_order_preserving(ext, r))
    flag = is_sieben(module_from_extension(ext, bad))
    assert not flag and flag.witnesses


def test_transversal_change_gives_equivalent_modules():
    ext = nonmonotone_extension()
    rs = list(transversals(ext))
    m0 = module_from_extension(ext, rs[0])
    for r in rs[1:]:
        g = transversal_difference(ext, rs[0], r)
        assert modules_equivalent(m0, module_from_extension(ext, r), g)
        assert modules_equivalent(m0, module_from_extension(ext, r))


def test_reflexive_equivalence(corpus):
    for mod in corpus[".tsm"].values():
        g = tuple(mod.ran_alpha(s) for s in range(mod.S.n))
        assert modules_equivalent(mod, mod, g)


def test_twisted_and_untwisted_modules_are_not_equivalent(corpus):
    a = corpus[".tsm"]["Z2_Z2_twisted.tsm"]
    b = corpus[".tsm"]["Z2_Z2_trivial.tsm"]
    assert not modules_equivalent(a, b)


def test_f_inverse_build_is_order_preserving(corpus):
    for name, ext in corpus[".ext"].items():
        if not hasattr(ext, "S") or not is_f_inverse(ext.S):
            continue
        ops = order_preserving_transversals(ext)
        assert ops
        built = f_inverse_transversal(ext)
        assert tuple(built.rho) in {tuple(r.rho) for r in ops}, name


def test_twist_identities(corpus):
    for name, mod in corpus[".tsm"].items():
        assert inverse_twist_witness(mod) is None, name
        if is_sieben(mod):
            assert twist_monotonicity_witness(mod) is None, name
            assert twist_sigma_agreement_witness(mod) is None or not _e_unitary(mod), name


def _e_unitary(mod):
    from tpact.semigroup import is_e_unitary

    return is_e_unitary(mod.S)


def test_extension_equivalence_identity_and_mutation():
    ext = nonmonotone_extension()
    ident = tuple(range(ext.U.n))
    assert extensions_equivalent_S(ext, ext, ident)
    bad = list(ident)
    bad[ext.i(0)] = ext.i(1) if ext.i(1) != ext.i(0) else bad[ext.i(0)]
    with pytest.raises(DiagramFailure):
        extensions_equivalent_S(ext, ext, tuple(bad))


def test_crossed_product_is_equivalent_to_extension():
    ext = nonmonotone_extension()
    for r in transversals(ext):
        mod = module_from_extension(ext, r)
        cp = crossed_product_module(mod)
        mu = mu_from_factorization(cp, ext, r)
        assert extensions_equivalent_S(cp.extension, ext, mu, cp.natural_transversal())
