import random

import pytest
from hypothesis import given, settings, strategies as st

from tpact.correspondence import (
    admissible_to_crossed_product,
    crossed_products_isomorphic,
    equivalence_preserved,
    lambda_from_theta,
    phi_equivalence,
    roundtrip_lambda,
    roundtrip_theta,
    theta_from_lambda,
)
from tpact.actions import crossed_product_action
from tpact.corpus import z2_on_z2
from tpact.errors import NotEUnitary, NotSieben
from tpact.modules import is_sieben, modules_equivalent
from tpact.suite import random_conjugate


def test_roundtrips_on_corpus_actions(corpus):
    for name, T in corpus[".tpa"].items():
        assert roundtrip_theta(T).verdict, name
        assert roundtrip_lambda(lambda_from_theta(T)).verdict, name


def test_roundtrip_on_sieben_modules(corpus):
    for name, mod in corpus[".tsm"].items():
        if name.startswith("conj_") or not is_sieben(mod):
            continue
        rep = roundtrip_lambda(mod)
        assert rep.verdict and not rep.failures(), name


def test_non_sieben_module_is_refused(corpus):
    with pytest.raises(NotSieben) as exc:
        theta_from_lambda(corpus[".tsm"]["nonmono_not_sieben.tsm"])
    assert exc.value.witness


def test_non_e_unitary_module_is_refused(corpus):
    with pytest.raises(NotEUnitary):
        theta_from_lambda(corpus[".tsm"]["conj_I2.tsm"])


def test_phi_is_extension_equivalence(corpus):
    for T in corpus[".tpa"].values():
        assert phi_equivalence(lambda_from_theta(T)).is_bijective()


def test_admissible_extension_recovers_action(corpus):
    for name, T in corpus[".tpa"].items():
        res = admissible_to_crossed_product(crossed_product_action(T, refine=False).extension)
        assert res.action.same_as(T), name
        assert res.mu.is_bijective()


def _conjugated_pairs(corpus, seed=3):
    rng = random.Random(seed)
    out = []
    for name, T in sorted(corpus[".tpa"].items()):
        if T.G.n > 1:
            T2, eps = random_conjugate(T, rng)
            out.append((name, T, T2, eps))
    return out


def test_equivalence_moves_from_actions_to_modules(corpus):
    pairs = _conjugated_pairs(corpus)
    assert len(pairs) >= 3
    for name, T, T2, eps in pairs:
        assert equivalence_preserved("theta", T, T2, eps).verdict, name


def test_equivalence_moves_from_modules_to_actions(corpus):
    for name, T, T2, _ in _conjugated_pairs(corpus):
        m1, m2 = lambda_from_theta(T), lambda_from_theta(T2)
        v = modules_equivalent(m1, m2)
        assert v, name
        assert equivalence_preserved("lambda", m1, m2, v.witness).verdict, name


def test_twisted_and_untwisted_are_not_equivalent():
    tw, tr = z2_on_z2(True), z2_on_z2(False)
    assert crossed_products_isomorphic(tw, tr) is None
    assert not modules_equivalent(lambda_from_theta(tw), lambda_from_theta(tr))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 199), st.integers(0, 10**6))
def test_conjugation_preserves_crossed_product(suite, k, seed):
    T = suite[k].action
    if T.G.n == 1:
        return
    T2, eps = random_conjugate(T, random.Random(seed))
    assert crossed_products_isomorphic(T, T2) is not None
    assert equivalence_preserved("theta", T, T2, eps).verdict
