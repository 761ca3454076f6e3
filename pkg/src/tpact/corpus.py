"""Hand-built example bundles shipped with the package, and the code that regenerates them."""
from __future__ import annotations

import random
from itertools import permutations, product
from pathlib import Path

from .actions import (
    ExtensionByG,
    crossed_product_action,
    global_action,
    trivial_w,
    verify_tpa,
)
from .clifford import certify_clifford, chain_clifford, element_multiplier, strong_semilattice
from .correspondence import lambda_from_theta
from .formats import load_bundle, write_ext, write_sgp, write_tpa, write_tsm
from .groups import cyclic, klein, trivial
from .modules import (
    ExtensionByS,
    TransversalRho,
    idempotent_module,
    is_order_preserving,
    module_from_extension,
    transversals,
    verify_module,
)
from .semigroup import FiniteSemigroup, inverse_structure

CORPUS_DIR = Path(__file__).with_name("corpus_data")


def symmetric_inverse_monoid(k):
    """All partial bijections of {0..k-1} under composition (apply left factor first)."""
    pts = range(k)
    elems = []
    for mask in product([False, True], repeat=k):
        dom = [p for p in pts if mask[p]]
        for img in permutations(pts, len(dom)):
            elems.append(tuple(sorted(zip(dom, img))))
    elems.sort(key=lambda m: (-len(m), m))

    def op(a, b):
        da, db = dict(a), dict(b)
        return tuple(sorted((p, db[q]) for p, q in da.items() if q in db))

    return FiniteSemigroup.from_operation(elems, op)


def brandt(k):
    """Brandt semigroup B_k: matrix units e_ij plus zero."""
    elems = [(i, j) for i in range(k) for j in range(k)] + [None]

    def op(a, b):
        if a is None or b is None or a[1] != b[0]:
            return None
        return (a[0], b[1])

    return FiniteSemigroup.from_operation(elems, op)


def e2():
    return chain_clifford([trivial(), trivial()])


def e2_z2_action():
    A, G = e2(), cyclic(2)
    low = max(A.idempotents, key=lambda e: sum(A.mul(e, a) == e for a in range(A.n)))
    doms = (frozenset(range(A.n)), frozenset({low}))
    theta = ({a: a for a in range(A.n)}, {low: low})
    return verify_tpa(G, A, doms, theta, trivial_w(G, doms))


def z2_on_z2(twisted):
    A, G = chain_clifford([cyclic(2)]), cyclic(2)
    full = tuple(range(A.n))
    w = {(x, y): element_multiplier(A, full, 1 if twisted and x == y == 1 else 0) for x in range(2) for y in range(2)}
    return global_action(G, A, w=w)


def v_semilattice():
    v = [[0, 2, 2], [2, 1, 2], [2, 2, 2]]
    one = trivial()
    return strong_semilattice(v, [one] * 3, {(0, 2): (0,), (1, 2): (0,)})


def v_partial():
    """ℤ₂ on the V with 𝒟_g = {0}."""
    A, G = v_semilattice(), cyclic(2)
    zero = next(e for e in A.idempotents if all(A.mul(e, a) == e for a in range(A.n)))
    doms = (frozenset(range(A.n)), frozenset({zero}))
    return verify_tpa(G, A, doms, ({a: a for a in range(A.n)}, {zero: zero}), trivial_w(G, doms))


def v_global_swap():
    A, G = v_semilattice(), cyclic(2)
    atoms = [e for e in A.idempotents if sum(A.mul(e, a) == e for a in range(A.n)) == 1]
    swap = list(range(A.n))
    swap[atoms[0]], swap[atoms[1]] = atoms[1], atoms[0]
    return global_action(G, A, autos=[tuple(range(A.n)), tuple(swap)])


def z3_on_z3_twisted():
    A, G = chain_clifford([cyclic(3)]), cyclic(3)
    full = tuple(range(A.n))
    # carry cocycle: c(x, y) = 1 when x + y wraps around
    w = {(x, y): element_multiplier(A, full, 1 if x + y >= 3 else 0) for x in range(3) for y in range(3)}
    return global_action(G, A, w=w)


def klein_on_chain():
    """Klein four-group on the chain 1 > Z2 with 𝒟_x = the bottom ideal for x ≠ 1."""
    A, G = chain_clifford([trivial(), cyclic(2)]), klein()
    top = min(A.idempotents, key=lambda e: -sum(A.mul(e, a) == a for a in range(A.n)))
    bottom = frozenset(a for a in range(A.n) if A.comp(a) != top)
    doms = tuple(frozenset(range(A.n)) if x == G.e else bottom for x in range(G.n))
    theta = tuple({a: a for a in doms[x]} for x in range(G.n))
    return verify_tpa(G, A, doms, theta, trivial_w(G, doms))


def conjugation_module(S):
    """S acting on its own semilattice by e ↦ ses⁻¹, with f(s, t) = stt⁻¹s⁻¹."""
    S = inverse_structure(S)
    E, embed = S.base.subsemigroup(S.idempotents)
    A = certify_clifford(E)
    local = {e: k for k, e in enumerate(embed)}
    alpha = {e: local[e] for e in S.idempotents}
    lam = [tuple(local[S.product(s, embed[a], S.inv[s])] for a in range(A.n)) for s in range(S.n)]
    f = [tuple(local[S.product(s, t, S.inv[t], S.inv[s])] for t in range(S.n)) for s in range(S.n)]
    return verify_module(S, A, alpha, lam, f)


def nonmonotone_extension():
    """A = {1} ∪ ℤ₂ with the trivial global ℤ₂ action, viewed as an extension by E(A)×ℤ₂."""
    A = chain_clifford([trivial(), cyclic(2)])
    T = global_action(cyclic(2), A)
    cp = crossed_product_action(T)
    return ExtensionByS(A, cp.U, cp.S, cp.extension.i, cp.pi)


def permuted_extension(ext, seed):
    """The same extension with U's elements relabelled by a seeded permutation."""
    U = ext.U
    perm = list(range(U.n))
    random.Random(seed).shuffle(perm)
    back = {p: k for k, p in enumerate(perm)}
    rows = [[back[U.mul(perm[a], perm[b])] for b in range(U.n)] for a in range(U.n)]
    U2 = inverse_structure(FiniteSemigroup(rows))
    i2 = tuple(back[u] for u in ext.i.map)
    j2 = tuple(ext.j(perm[k]) for k in range(U.n))
    if isinstance(ext, ExtensionByG):
        return ExtensionByG(ext.A, U2, ext.G, i2, j2)
    return ExtensionByS(ext.A, U2, ext.S, i2, j2)


def _rho_split(ext):
    good = bad = None
    for r in transversals(ext):
        if is_order_preserving(ext, r):
            good = good or r
        else:
            bad = bad or r
    return good, bad


def corpus_bundles():
    """filename -> file text, deterministic."""
    out = {}
    A2 = e2()
    out["E2.sgp"] = write_sgp(A2, ["two-element semilattice, 0 on top"])
    out["Z2.sgp"] = write_sgp(cyclic(2), ["cyclic group of order 2"])
    out["Z3.sgp"] = write_sgp(cyclic(3), ["cyclic group of order 3"])
    out["I2.sgp"] = write_sgp(symmetric_inverse_monoid(2), ["partial bijections of a 2-point set"])
    out["B2.sgp"] = write_sgp(brandt(2), ["Brandt semigroup on 2 points"])
    out["V.sgp"] = write_sgp(v_semilattice(), ["two atoms above a zero"])
    out["chain_1_Z2.sgp"] = write_sgp(chain_clifford([trivial(), cyclic(2)]), ["trivial group above Z2"])

    actions = {
        "E2_Z2.tpa": e2_z2_action(),
        "Z2_Z2_trivial.tpa": z2_on_z2(False),
        "Z2_Z2_twisted.tpa": z2_on_z2(True),
        "V_Z2_partial.tpa": v_partial(),
        "V_Z2_swap.tpa": v_global_swap(),
        "Z3_Z3_twisted.tpa": z3_on_z3_twisted(),
        "klein_chain.tpa": klein_on_chain(),
    }
    for name, T in actions.items():
        out[name] = write_tpa(T)
    for name, T in actions.items():
        out[name.replace(".tpa", ".tsm")] = write_tsm(lambda_from_theta(T), [f"module of {name}"])
    out["idem_E2.tsm"] = write_tsm(idempotent_module(A2), ["idempotent module over E2"])
    out["idem_V.tsm"] = write_tsm(idempotent_module(v_semilattice()))
    out["idem_Z2.tsm"] = write_tsm(idempotent_module(chain_clifford([cyclic(2)])), ["S trivial, A = Z2"])
    out["conj_I2.tsm"] = write_tsm(conjugation_module(symmetric_inverse_monoid(2)), ["I2 on its semilattice; not E-unitary"])
    out["conj_B2.tsm"] = write_tsm(conjugation_module(brandt(2)), ["B2 on its semilattice; not E-unitary"])
    nm = nonmonotone_extension()
    good, bad = _rho_split(nm)
    out["nonmono_sieben.tsm"] = write_tsm(module_from_extension(nm, good), ["order-preserving transversal"])
    out["nonmono_not_sieben.tsm"] = write_tsm(module_from_extension(nm, bad), ["transversal that is not order-preserving"])

    out["nonmono.ext"] = write_ext(nm, ["trivial Z2 action on {1} u Z2, refined to E(A) x Z2"])
    for name in ("E2_Z2", "Z2_Z2_twisted", "Z2_Z2_trivial"):
        cp = crossed_product_action(actions[f"{name}.tpa"], refine=False)
        out[f"{name}_crossed.ext"] = write_ext(cp.extension)
    for name, T in actions.items():
        cp = crossed_product_action(T)
        ext = ExtensionByS(T.A, cp.U, cp.S, cp.extension.i, cp.pi)
        out[name.replace(".tpa", "_refined.ext")] = write_ext(ext, [f"crossed product of {name} over E(A)*G"])
    cp = crossed_product_action(global_action(cyclic(2), chain_clifford([trivial(), cyclic(2)])), refine=False)
    out["chain_1_Z2_by_Z2.ext"] = write_ext(permuted_extension(cp.extension, 7), ["relabelled crossed product"])
    return out


def write_corpus(directory=CORPUS_DIR):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in corpus_bundles().items():
        (directory / name).write_text(text, encoding="utf-8")


def corpus_files(suffix=None, directory=CORPUS_DIR):
    files = sorted(Path(directory).iterdir())
    return [p for p in files if suffix is None or p.suffix == suffix]


def load_corpus(suffix, directory=CORPUS_DIR):
    return [(p.name, load_bundle(p)) for p in corpus_files(suffix, directory)]
