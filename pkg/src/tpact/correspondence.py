"""Passing between Sieben twisted modules over E-unitary semigroups and twisted partial actions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .actions import (
    CrossedProductG,
    ExtensionByG,
    TwistedPartialAction,
    crossed_product_action,
    extensions_equivalent_G,
    is_admissible,
    rho_to_tau,
    tau_to_rho,
    tpa_from_tau,
    tpas_equivalent,
    verify_tpa,
)
from .clifford import Multiplier
from .errors import (
    DiagramFailure,
    InternalInvariantViolation,
    NotAdmissible,
    NotEUnitary,
    NotSieben,
    TpactError,
)
from .groups import FiniteGroup
from .modules import (
    TransversalRho,
    TwistedSModule,
    crossed_product_module,
    factorize,
    is_sieben,
    module_from_extension,
    modules_equivalent,
    verify_module,
)
from .semigroup import Homomorphism, find_isomorphism, is_e_unitary, max_group_image


@dataclass
class CorrespondenceReport:
    direction: str
    nu: Optional[Homomorphism]
    verdict: bool
    diagnostics: list = field(default_factory=list)

    def add(self, name, witness=None):
        self.diagnostics.append((name, witness))
        if witness is not None:
            self.verdict = False

    def failures(self):
        return [(n, w) for n, w in self.diagnostics if w is not None]


def group_image(S):
    """(𝒢(S) as a FiniteGroup, σ♮)."""
    Gs, nat = max_group_image(S)
    return FiniteGroup(Gs), nat


@dataclass(frozen=True, eq=False)
class ThetaFromLambda:
    module: TwistedSModule
    action: TwistedPartialAction
    G: FiniteGroup
    sigma_nat: Homomorphism
    by_range: dict  # (x, e ∈ E(A)) -> s ∈ x with α(ss⁻¹) = e
    by_domain: dict  # (x, e) -> s ∈ x with α(s⁻¹s) = e


def theta_from_lambda_full(mod):
    S, A = mod.S, mod.A
    if not is_e_unitary(S):
        raise NotEUnitary("S is not E-unitary")
    flag = is_sieben(mod)
    if not flag:
        raise NotSieben("sieben condition fails", flag.witnesses[0])
    G, nat = group_image(S)
    by_range, by_domain = {}, {}
    for s in range(S.n):
        x = nat(s)
        for table, e in ((by_range, mod.ran_alpha(s)), (by_domain, mod.dom_alpha(s))):
            if (x, e) in table:
                raise InternalInvariantViolation("σ-related elements share an idempotent", (table[(x, e)], s))
            table[(x, e)] = s
    doms = [set() for _ in range(G.n)]
    for (x, e) in by_range:
        doms[x].update(A.components[e])
    doms = tuple(frozenset(d) for d in doms)
    theta = []
    for x in range(G.n):
        th = {}
        for a in doms[G.inv[x]]:
            s = by_domain[(x, A.comp(a))]
            th[a] = mod.lam[s][a]
        theta.append(th)
    w = {}
    for x in range(G.n):
        for y in range(G.n):
            xy = G.mul(x, y)
            dom = tuple(sorted(doms[x] & doms[xy]))
            left, right = {}, {}
            for a in dom:
                e = A.comp(a)
                s = by_range[(x, e)]
                t = by_range[(xy, e)]
                c = mod.f[s][S.mul(S.inv[s], t)]
                left[a] = A.mul(c, a)
                right[a] = A.mul(a, c)
            w[(x, y)] = Multiplier(dom, left, right)
    T = verify_tpa(G, A, doms, tuple(theta), w)
    return ThetaFromLambda(mod, T, G, nat, by_range, by_domain)


def theta_from_lambda(mod):
    return theta_from_lambda_full(mod).action


@dataclass(frozen=True, eq=False)
class LambdaFromTheta:
    action: TwistedPartialAction
    module: TwistedSModule
    crossed: CrossedProductG


def lambda_from_theta_full(T):
    cp = crossed_product_action(T)
    S, A, G = cp.S, T.A, T.G
    one = G.e
    alpha = {}
    for e in A.idempotents:
        alpha[cp.s_index(e, one)] = e
    lam, f = [], []
    for k in range(S.n):
        e1, x = cp.s_pair(k)
        pre = T.theta_inv_table[x][e1]
        lam.append(tuple(T.theta[x][A.mul(pre, a)] for a in range(A.n)))
        row = []
        for l in range(S.n):
            e2, y = cp.s_pair(l)
            row.append(T.w[(x, y)].right[T.theta[x][A.mul(pre, e2)]])
        f.append(tuple(row))
    mod = verify_module(S, A, alpha, lam, f)
    if not is_sieben(mod):
        raise InternalInvariantViolation("module built from an action is not Sieben")
    if not is_e_unitary(S):
        raise InternalInvariantViolation("E(A)∗_θG is not E-unitary")
    ext = TransversalRho(_ext_by_S(cp), cp.idempotent_transversal)
    via_ext = module_from_extension(ext.extension, ext)
    if not via_ext.same_as(mod):
        raise InternalInvariantViolation("displayed formulas disagree with the module of (A∗_ΘG, ρ = id)")
    return LambdaFromTheta(T, mod, cp)


def _ext_by_S(cp):
    from .modules import ExtensionByS

    return ExtensionByS(cp.action.A, cp.U, cp.S, cp.extension.i, cp.pi)


def lambda_from_theta(T):
    return lambda_from_theta_full(T).module


# ---------------------------------------------------------------------------
# round trips


def roundtrip_lambda(mod):
    rep = CorrespondenceReport("roundtrip-lambda", None, True)
    try:
        tl = theta_from_lambda_full(mod)
        lt = lambda_from_theta_full(tl.action)
    except TpactError as exc:
        rep.add(f"construction: {exc}", getattr(exc, "witness", None) or ())
        return rep
    S, A = mod.S, mod.A
    cp = lt.crossed
    m2 = lt.module
    nu_map = tuple(cp.s_index(mod.ran_alpha(s), tl.sigma_nat(s)) for s in range(S.n))
    try:
        nu = Homomorphism(S, cp.S, nu_map)
    except TpactError as exc:
        rep.add("nu-homomorphism", exc.witness or ())
        return rep
    rep.nu = nu
    rep.add("nu-bijective", None if nu.is_bijective() else ())
    if not nu.is_bijective():
        return rep
    wit = None
    for e in S.idempotents:
        if mod.alpha[e] != m2.alpha[nu(e)]:
            wit = (e,)
            break
    rep.add("alpha", wit)
    wit = None
    for s in range(S.n):
        if mod.lam[s] != m2.lam[nu(s)]:
            wit = (s,)
            break
    rep.add("lambda", wit)
    wit = None
    for s in range(S.n):
        for t in range(S.n):
            if mod.f[s][t] != m2.f[nu(s)][nu(t)]:
                wit = (s, t)
                break
        if wit:
            break
    rep.add("f", wit)
    return rep


def roundtrip_theta(T):
    rep = CorrespondenceReport("roundtrip-theta", None, True)
    try:
        lt = lambda_from_theta_full(T)
        tl = theta_from_lambda_full(lt.module)
    except TpactError as exc:
        rep.add(f"construction: {exc}", getattr(exc, "witness", None) or ())
        return rep
    G, A = T.G, T.A
    cp = lt.crossed
    T2 = tl.action
    nu_map = []
    for x in range(G.n):
        vals = {tl.sigma_nat(cp.s_index(e, x)) for e in T.domains[x] if e in A.idempotent_set}
        if len(vals) != 1:
            rep.add("nu-well-defined", (x,))
            return rep
        nu_map.append(vals.pop())
    try:
        nu = Homomorphism(G.base, tl.G.base, tuple(nu_map))
    except TpactError as exc:
        rep.add("nu-homomorphism", exc.witness or ())
        return rep
    rep.nu = nu
    rep.add("nu-bijective", None if nu.is_bijective() else ())
    if not nu.is_bijective():
        return rep
    wit = None
    for x in range(G.n):
        if T.domains[x] != T2.domains[nu(x)]:
            wit = (x,)
            break
    rep.add("domains", wit)
    wit = None
    for x in range(G.n):
        if T.theta[x] != T2.theta[nu(x)]:
            wit = (x,)
            break
    rep.add("theta", wit)
    wit = None
    for x in range(G.n):
        for y in range(G.n):
            if T.w[(x, y)] != T2.w[(nu(x), nu(y))]:
                wit = (x, y)
                break
        if wit:
            break
    rep.add("w", wit)
    return rep


# ---------------------------------------------------------------------------
# crossed products of Λ and of Θ^Λ


def lambda_extension_by_group(mod, cpm, nat):
    """A → A∗_ΛS → 𝒢(S) with j(aδ_s) = σ♮(s)."""
    G = FiniteGroup(nat.target)
    j = tuple(nat(s) for _, s in cpm.pairs)
    return ExtensionByG(mod.A, cpm.U, G, cpm.extension.i, j)


def phi_equivalence(mod):
    """Verify aδ_x ↦ aδ_s (s ∈ x, α(ss⁻¹) = aa⁻¹) is an equivalence A∗_Θ𝒢S → A∗_ΛS."""
    tl = theta_from_lambda_full(mod)
    cpt = crossed_product_action(tl.action, refine=False)
    cpm = crossed_product_module(mod)
    ext_l = lambda_extension_by_group(mod, cpm, tl.sigma_nat)
    A = mod.A
    phi = tuple(cpm.index[(a, tl.by_range[(x, A.comp(a))])] for a, x in cpt.pairs)
    h = Homomorphism(cpt.U, cpm.U, phi)
    ext_t = cpt.extension
    if ext_l.G.base.table != ext_t.G.base.table:
        raise InternalInvariantViolation("group images are built differently")
    surjective = extensions_equivalent_G(ext_t, ext_l, h)
    if not surjective:
        raise InternalInvariantViolation("φ is not surjective")
    return h


# ---------------------------------------------------------------------------
# admissible extensions


def reindex_tpa(T, G, nu):
    """Θ∘ν for a group isomorphism ν: G → T.G (given as a tuple)."""
    doms = tuple(T.domains[nu[x]] for x in range(G.n))
    theta = tuple(T.theta[nu[x]] for x in range(G.n))
    w = {(x, y): T.w[(nu[x], nu[y])] for x in range(G.n) for y in range(G.n)}
    return verify_tpa(G, T.A, doms, theta, w)


@dataclass(frozen=True, eq=False)
class AdmissibleResult:
    action: TwistedPartialAction
    mu: Homomorphism
    crossed: CrossedProductG
    module: TwistedSModule


def admissible_to_crossed_product(ext):
    verdict = is_admissible(ext)
    if not verdict.admissible:
        raise NotAdmissible("no order-preserving transversal exists")
    ref = verdict.refinement
    rho = tau_to_rho(ref, verdict.tau)
    extS = ref.as_extension_by_S
    mod = module_from_extension(extS, rho)
    if not is_sieben(mod):
        raise InternalInvariantViolation("order-preserving transversal gave a non-Sieben module")
    tl = theta_from_lambda_full(mod)
    G = ext.G
    nu = []
    for x in range(G.n):
        vals = {tl.sigma_nat(s) for s in range(ref.S.n) if ref.kappa(s) == x}
        if len(vals) != 1:
            raise InternalInvariantViolation("κ does not induce 𝒢(S) ≅ G", (x,))
        nu.append(vals.pop())
    T = reindex_tpa(tl.action, G, tuple(nu))
    from_tau = tpa_from_tau(ext, verdict.tau)
    if not from_tau.same_as(T):
        raise InternalInvariantViolation("Θ from τ differs from Θ built through Λ")
    cp = crossed_product_action(T, refine=False)
    mu_map = []
    for u in range(ext.U.n):
        a, s = factorize(extS, rho, u)
        mu_map.append(cp.index[(a, ref.kappa(s))])
    mu = Homomorphism(ext.U, cp.U, tuple(mu_map))
    if not mu.is_surjective():
        raise InternalInvariantViolation("μ is not surjective")
    extensions_equivalent_G(ext, cp.extension, mu)
    if not mu.is_bijective():
        raise InternalInvariantViolation("an epimorphism making the diagram commute is not injective")
    return AdmissibleResult(T, mu, cp, mod)


# ---------------------------------------------------------------------------
# equivalence transfer


def epsilon_from_g(tl, g):
    """ε_x a = g(s)a, a ε_x = a g(s) with s ∈ x and α(ss⁻¹) = aa⁻¹."""
    T, A = tl.action, tl.module.A
    out = []
    for x in range(T.G.n):
        dom = tuple(sorted(T.domains[x]))
        left, right = {}, {}
        for a in dom:
            c = g[tl.by_range[(x, A.comp(a))]]
            left[a] = A.mul(c, a)
            right[a] = A.mul(a, c)
        out.append(Multiplier(dom, left, right))
    return tuple(out)


def g_from_epsilon(lt, eps):
    """g(s) = α(ss⁻¹)ε_{κ(s)}."""
    mod, cp = lt.module, lt.crossed
    return tuple(eps[cp.kappa(s)].right[mod.ran_alpha(s)] for s in range(mod.S.n))


def equivalence_preserved(kind, first, second, witness):
    """``kind`` is 'lambda' (modules with g) or 'theta' (actions with ε)."""
    if kind == "lambda":
        rep = CorrespondenceReport("lambda->theta", None, True)
        v = modules_equivalent(first, second, witness)
        rep.add("input-pair", None if v else (v.witness or ()))
        if not v:
            return rep
        t1, t2 = theta_from_lambda_full(first), theta_from_lambda_full(second)
        eps = epsilon_from_g(t1, witness)
        out = tpas_equivalent(t1.action, t2.action, eps)
        rep.add("derived-epsilon", None if out else (out.witness or ()))
        return rep
    if kind == "theta":
        rep = CorrespondenceReport("theta->lambda", None, True)
        v = tpas_equivalent(first, second, witness)
        rep.add("input-pair", None if v else (v.witness or ()))
        if not v:
            return rep
        l1, l2 = lambda_from_theta_full(first), lambda_from_theta_full(second)
        if l1.crossed.S.table != l2.crossed.S.table:
            rep.add("same-S", ())
            return rep
        g = g_from_epsilon(l1, witness)
        out = modules_equivalent(l1.module, l2.module, g)
        rep.add("derived-g", None if out else (out.witness or ()))
        return rep
    raise ValueError(f"unknown kind {kind!r}")


def crossed_products_isomorphic(T1, T2):
    """Independent isomorphism test between two crossed products."""
    c1 = crossed_product_action(T1, refine=False)
    c2 = crossed_product_action(T2, refine=False)
    return find_isomorphism(c1.U.base, c2.U.base)
