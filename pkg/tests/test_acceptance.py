"""The ten acceptance criteria, one test each; every test records a PASS/FAIL line."""
import random
import time

from tpact.actions import crossed_product_action, refine_extension
from tpact.checks import inverse_axiom_witness, inverse_formula_witness, sieben_order_witness, sigma_minimality_witness
from tpact.clifford import chain_catalog, iend_iui_isomorphism
from tpact.correspondence import (
    crossed_products_isomorphic,
    equivalence_preserved,
    lambda_from_theta,
    phi_equivalence,
    roundtrip_lambda,
    roundtrip_theta,
)
from tpact.corpus import z2_on_z2
from tpact.errors import TpactError
from tpact.groups import cyclic, trivial
from tpact.modules import (
    ExtensionByS,
    is_order_preserving,
    is_sieben,
    modules_equivalent,
    transversal_count,
    transversals,
)
from tpact.semigroup import find_isomorphism, inverse_structure, is_e_unitary, sigma_congruence
from tpact.suite import random_conjugate


def _element_orders(U):
    out = []
    for u in range(U.n):
        p, k = u, 1
        while U.mul(p, p) != p:
            p, k = U.mul(p, u), k + 1
        out.append(k)
    return sorted(out)


def _sieben_modules(suite, corpus):
    mods = [lambda_from_theta(item.action) for item in suite]
    hand = [m for name, m in sorted(corpus[".tsm"].items()) if is_e_unitary(m.S) and is_sieben(m)]
    return mods, hand


def test_roundtrip_theta(suite, report):
    t0 = time.perf_counter()
    bad = [item.name for item in suite if not roundtrip_theta(item.action).verdict]
    dt = time.perf_counter() - t0
    ok = len(suite) >= 50 and not bad and dt < 30
    ok &= all(it.action.A.n <= 6 and it.action.G.n <= 4 for it in suite)
    assert report(1, "round trip theta->lambda->theta", ok, f"{len(suite)} actions, {len(bad)} failures, {dt:.1f}s"), bad[:5]


def test_roundtrip_lambda(suite, corpus, report):
    t0 = time.perf_counter()
    mods, hand = _sieben_modules(suite, corpus)
    bad = [k for k, m in enumerate(mods + hand) if not roundtrip_lambda(m).verdict]
    dt = time.perf_counter() - t0
    ok = len(hand) >= 10 and not bad and dt < 30
    detail = f"{len(mods)} suite + {len(hand)} hand-built modules, {len(bad)} failures, {dt:.1f}s"
    assert report(2, "round trip lambda->theta->lambda", ok, detail), bad[:5]


def test_crossed_product_soundness(suite, report):
    bad = []
    for item in suite:
        cp = crossed_product_action(item.action, refine=False)
        w = inverse_axiom_witness(cp.U) or inverse_formula_witness(item.action, cp)
        if w is not None:
            bad.append((item.name, w))
    assert report(3, "crossed product is an inverse semigroup", not bad, f"{len(suite)} crossed products"), bad[:5]


def test_extension_refinement(suite, report):
    bad = []
    for item in suite:
        cp = crossed_product_action(item.action)
        ref = refine_extension(cp.extension)
        sig = sigma_congruence(ref.S)
        same = all(sig.related(s, t) == (ref.kappa(s) == ref.kappa(t)) for s in range(ref.S.n) for t in range(ref.S.n))
        if not (is_e_unitary(ref.S) and same and find_isomorphism(ref.S.base, cp.S.base) is not None):
            bad.append(item.name)
    assert report(4, "refinement is E-unitary with kernel sigma", not bad, f"{len(suite)} extensions"), bad[:5]


def test_phi_equivalence(suite, report):
    bad = []
    count = 0
    for item in suite:
        mod = lambda_from_theta(item.action)
        if not is_sieben(mod):
            continue
        count += 1
        try:
            phi_equivalence(mod)
        except TpactError as exc:
            bad.append((item.name, str(exc)))
    assert report(5, "phi is an extension equivalence", count > 0 and not bad, f"{count} modules"), bad[:5]


def test_iend_iui(report):
    catalog = chain_catalog([trivial(), cyclic(2), cyclic(3)], max_height=3, max_size=5)
    bad = []
    for k, A in enumerate(catalog):
        try:
            m = iend_iui_isomorphism(A)
            if len(m.iend) != len(m.iui):
                bad.append(k)
        except TpactError as exc:
            bad.append((k, str(exc)))
    assert report(6, "iend(A) matches I_ui(A)", catalog and not bad, f"{len(catalog)} algebras"), bad


def test_sieben_iff_order_preserving(corpus, report):
    exts = [(n, e) for n, e in sorted(corpus[".ext"].items()) if isinstance(e, ExtensionByS) and transversal_count(e) <= 200]
    bad, seen_good, seen_bad = [], 0, 0
    for name, ext in exts:
        if sieben_order_witness(ext) is not None:
            bad.append(name)
        for r in transversals(ext):
            if is_order_preserving(ext, r):
                seen_good += 1
            else:
                seen_bad += 1
    ok = exts and not bad and seen_good and seen_bad
    detail = f"{len(exts)} extensions, {seen_good} order-preserving and {seen_bad} other transversals"
    assert report(7, "Sieben iff order-preserving", ok, detail), bad


def test_equivalence_preservation(corpus, report):
    rng = random.Random(11)
    pairs = []
    for name, T in sorted(corpus[".tpa"].items()):
        if T.G.n > 1:
            T2, eps = random_conjugate(T, rng)
            pairs.append((T, T2, eps))
    forward = all(equivalence_preserved("theta", T, T2, eps).verdict for T, T2, eps in pairs)
    backward = True
    for T, T2, _ in pairs:
        m1, m2 = lambda_from_theta(T), lambda_from_theta(T2)
        v = modules_equivalent(m1, m2)
        backward &= bool(v) and equivalence_preserved("lambda", m1, m2, v.witness).verdict
    tw, tr = z2_on_z2(True), z2_on_z2(False)
    census = (_element_orders(crossed_product_action(tw).U), _element_orders(crossed_product_action(tr).U))
    negative = census[0] != census[1] and crossed_products_isomorphic(tw, tr) is None
    negative &= not modules_equivalent(lambda_from_theta(tw), lambda_from_theta(tr))
    ok = len(pairs) >= 3 and forward and backward and negative
    detail = f"{len(pairs)} pairs, orders {census[0]} vs {census[1]}"
    assert report(8, "equivalence preserved both ways", ok, detail)


def test_classical_extension(report):
    tw = crossed_product_action(z2_on_z2(True)).U
    tr = crossed_product_action(z2_on_z2(False)).U
    ok = tw.n == 4 and 4 in _element_orders(tw) and tr.n == 4 and 4 not in _element_orders(tr)
    assert report(9, "twisted Z2 on Z2 gives Z4", ok, f"orders {_element_orders(tw)} vs {_element_orders(tr)}")


def _corpus_inverse_semigroups(corpus):
    found = {}
    for S in corpus[".sgp"].values():
        try:
            S = inverse_structure(S)
        except TpactError:
            continue
        found.setdefault(S.table, S)
    for m in corpus[".tsm"].values():
        found.setdefault(m.S.table, m.S)
    for e in corpus[".ext"].values():
        found.setdefault(e.U.table, e.U)
        if isinstance(e, ExtensionByS):
            found.setdefault(e.S.table, e.S)
    return [S for S in found.values() if S.n <= 8]


def test_sigma_minimality(corpus, report):
    t0 = time.perf_counter()
    sems = _corpus_inverse_semigroups(corpus)
    bad = [S.n for S in sems if sigma_minimality_witness(S) is not None]
    dt = time.perf_counter() - t0
    ok = sems and not bad and dt < 60
    assert report(10, "sigma inside every group congruence", ok, f"{len(sems)} semigroups, {dt:.1f}s"), bad
