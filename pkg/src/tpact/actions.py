"""Twisted partial actions of finite groups on Clifford semigroups, crossed products and transversals."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Optional

from .clifford import (
    Ideal,
    Multiplier,
    certify_clifford,
    identity_multiplier,
    multiplier_monoid,
    multiplier_witness,
)
from .errors import (
    AxiomViolation,
    InternalInvariantViolation,
    InvalidExtension,
    InvalidTransversal,
    NotAdmissible,
    NotAssociative,
    SizeCapExceeded,
)
from .groups import FiniteGroup
from .modules import (
    DEFAULT_SEARCH_CAP,
    ExtensionByS,
    TransversalRho,
    is_order_preserving,
    order_preserving_transversals,
    transversals,
)
from .semigroup import (
    FiniteSemigroup,
    Homomorphism,
    KernelNormalSystem,
    congruence_from_kns,
    find_isomorphism,
    inverse_structure,
    is_e_unitary,
    is_f_inverse,
    sigma_congruence,
)


@dataclass(frozen=True, eq=False)
class TwistedPartialAction:
    G: FiniteGroup
    A: object  # CliffordAlgebra
    domains: tuple  # x -> frozenset
    theta: tuple  # x -> dict D_{x^-1} -> D_x
    w: dict  # (x, y) -> Multiplier on D_x D_{xy}
    w_inv: dict

    def dprod(self, *xs):
        """Product of the domain ideals 𝒟_{x1}⋯𝒟_{xk}, memoized."""
        key = tuple(sorted(set(xs)))
        cache = self.__dict__.setdefault("_dprod", {})
        hit = cache.get(key)
        if hit is None:
            hit = self.domains[key[0]]
            for x in key[1:]:
                hit = hit & self.domains[x]
            cache[key] = hit
        return hit

    @cached_property
    def theta_inv_table(self):
        return tuple({v: k for k, v in th.items()} for th in self.theta)

    def act(self, x, a):
        return self.theta[x][a]

    def same_as(self, other):
        if self.domains != other.domains or self.theta != other.theta:
            return False
        return all(self.w[k] == other.w[k] for k in self.w)


def _as_frozensets(domains):
    return tuple(frozenset(int(a) for a in d) for d in domains)


def verify_tpa(G, A, domains, theta, w):
    """Build a TwistedPartialAction after checking all six axioms exhaustively."""
    A = certify_clifford(A)
    gn = G.n
    one = G.e
    ginv = G.inv
    domains = _as_frozensets(domains)
    if len(domains) != gn or len(theta) != gn:
        raise AxiomViolation("shape", None, "need one domain and one theta per group element")
    for x, D in enumerate(domains):
        if not D:
            raise AxiomViolation("domain", (x,), "empty domain")
        try:
            Ideal(A, D)
        except Exception:
            raise AxiomViolation("domain", (x,), "domain is not an ideal") from None
    prodset = A.base.base.set_product
    for x in range(gn):
        if prodset(domains[x], domains[x]) != domains[x]:
            raise AxiomViolation("i", (x,), "domain is not idempotent")
        for y in range(gn):
            dxy = prodset(domains[x], domains[y])
            if dxy != prodset(domains[y], domains[x]):
                raise AxiomViolation("i", (x, y), "domains do not commute")
            if dxy != domains[x] & domains[y]:
                raise InternalInvariantViolation("D_x D_y differs from D_x ∩ D_y", (x, y))
    if domains[one] != frozenset(range(A.n)):
        raise AxiomViolation("ii", (one,), "D_1 is not A")
    theta = tuple({int(k): int(v) for k, v in dict(th).items()} for th in theta)
    for x in range(gn):
        th = theta[x]
        src, dst = domains[ginv[x]], domains[x]
        if set(th) != src:
            raise AxiomViolation("theta", (x,), "theta_x is not defined exactly on D_{x^-1}")
        if sorted(th.values()) != sorted(dst):
            raise AxiomViolation("theta", (x,), "theta_x is not a bijection onto D_x")
        for a in src:
            for b in src:
                if th[A.mul(a, b)] != A.mul(th[a], th[b]):
                    raise AxiomViolation("theta", (x, a, b), "theta_x is not multiplicative")
    if any(theta[one][a] != a for a in range(A.n)):
        raise AxiomViolation("ii", (one,), "theta_1 is not the identity")
    for x in range(gn):
        for y in range(gn):
            src = domains[ginv[x]] & domains[y]
            img = {theta[x][a] for a in src}
            if img != domains[x] & domains[G.mul(x, y)]:
                raise AxiomViolation("iii", (x, y))
    w = dict(w)
    w_inv = {}
    for x in range(gn):
        for y in range(gn):
            if (x, y) not in w:
                raise AxiomViolation("w", (x, y), "missing multiplier")
            m = w[(x, y)]
            dom = tuple(sorted(domains[x] & domains[G.mul(x, y)]))
            if m.domain != dom:
                raise AxiomViolation("w", (x, y), "multiplier lives on the wrong ideal")
            wit = multiplier_witness(A, m)
            if wit is not None:
                raise AxiomViolation("w", (x, y) + wit[1:], f"multiplier law {wit[0]} fails")
            if not m.is_invertible():
                raise AxiomViolation("w", (x, y), "multiplier is not invertible")
            mi = m.inverse()
            if multiplier_witness(A, mi) is not None:
                raise AxiomViolation("w", (x, y), "inverse pair is not a multiplier")
            w_inv[(x, y)] = mi
    for x in range(gn):
        if not w[(one, x)].is_identity() or not w[(x, one)].is_identity():
            raise AxiomViolation("v", (x,))
    for x in range(gn):
        for y in range(gn):
            xy = G.mul(x, y)
            wxy, wixy = w[(x, y)], w_inv[(x, y)]
            for s in domains[ginv[y]] & domains[ginv[xy]]:
                lhs = theta[x][theta[y][s]]
                rhs = wixy.right[wxy.left[theta[xy][s]]]
                if lhs != rhs:
                    raise AxiomViolation("iv", (x, y, s))
    for x in range(gn):
        for y in range(gn):
            xy = G.mul(x, y)
            for z in range(gn):
                yz = G.mul(y, z)
                wyz, wxyz, wx_y, wxy_z = w[(y, z)], w[(x, yz)], w[(x, y)], w[(xy, z)]
                for s in domains[ginv[x]] & domains[y] & domains[yz]:
                    try:
                        lhs = wxyz.right[theta[x][wyz.right[s]]]
                        rhs = wxy_z.right[wx_y.right[theta[x][s]]]
                    except KeyError:
                        raise AxiomViolation("vi", (x, y, z, s), "multiplier applied outside its ideal") from None
                    if lhs != rhs:
                        raise AxiomViolation("vi", (x, y, z, s))
    return TwistedPartialAction(G, A, domains, theta, w, w_inv)


def check_tpa(T):
    return verify_tpa(T.G, T.A, T.domains, T.theta, T.w)


def theta_inverse(T, x, a):
    """θ_x⁻¹(a) = w⁻¹_{x⁻¹,x} θ_{x⁻¹}(a) w_{x⁻¹,x}, cross-checked against the stored bijection."""
    G = T.G
    xi = G.inv[x]
    t = T.theta[xi][a]
    val = T.w[(xi, x)].right[T.w_inv[(xi, x)].left[t]]
    if val != T.theta_inv_table[x][a]:
        raise InternalInvariantViolation("inverse formula disagrees with the stored bijection", (x, a))
    return val


def trivial_w(G, domains):
    out = {}
    for x in range(G.n):
        for y in range(G.n):
            out[(x, y)] = identity_multiplier(domains[x] & domains[G.mul(x, y)])
    return out


def global_action(G, A, autos=None, w=None):
    """𝒟_x = A for all x; θ_x = autos[x] (identity by default)."""
    doms = tuple(frozenset(range(A.n)) for _ in range(G.n))
    if autos is None:
        autos = [tuple(range(A.n))] * G.n
    theta = tuple({a: autos[x][a] for a in range(A.n)} for x in range(G.n))
    return verify_tpa(G, A, doms, theta, w if w is not None else trivial_w(G, doms))


# ---------------------------------------------------------------------------
# extensions by a group


@dataclass(frozen=True, eq=False)
class ExtensionByG:
    A: object
    U: object
    G: FiniteGroup
    i: Homomorphism
    j: Homomorphism

    def __post_init__(self):
        A, U, G = self.A, self.U, self.G
        for name in ("i", "j"):
            val = getattr(self, name)
            if not isinstance(val, Homomorphism):
                src, dst = (A, U) if name == "i" else (U, G.base)
                try:
                    val = Homomorphism(src, dst, tuple(val))
                except Exception as exc:
                    raise InvalidExtension(f"{name} is not a homomorphism", getattr(exc, "witness", None)) from None
                object.__setattr__(self, name, val)
        if not self.i.is_injective():
            raise InvalidExtension("i is not injective")
        if not self.j.is_surjective():
            raise InvalidExtension("j is not surjective")
        kernel = {u for u in range(U.n) if self.j(u) == G.e}
        if set(self.i.map) != kernel:
            raise InvalidExtension("i(A) differs from j^-1(1)", (sorted(set(self.i.map) ^ kernel)[0],))
        if sorted(self.i(e) for e in A.idempotents) != sorted(U.idempotents):
            raise InternalInvariantViolation("E(U) differs from i(E(A))")

    @cached_property
    def i_inv(self):
        return {u: a for a, u in enumerate(self.i.map)}

    @cached_property
    def cells(self):
        """(x, e) -> sorted list U(x, e) = {u : j(u) = x, uu⁻¹ = e}, nonempty cells only."""
        out = {}
        for u in range(self.U.n):
            out.setdefault((self.j(u), self.U.ran(u)), []).append(u)
        return {k: tuple(v) for k, v in sorted(out.items())}


@dataclass(frozen=True, eq=False)
class Refinement:
    extension: ExtensionByG
    S: object  # InverseSemigroup
    pi: Homomorphism
    kappa: Homomorphism

    @cached_property
    def as_extension_by_S(self):
        ext = self.extension
        return ExtensionByS(ext.A, ext.U, self.S, ext.i, self.pi)

    @cached_property
    def idempotent_lift(self):
        return {self.pi(e): e for e in self.extension.U.idempotents}


def refine_extension(ext):
    """S = U/ρ_𝒜 for the kernel normal system 𝒜 = {i(A)_e}, with π and κ (j = κ∘π)."""
    A, U, G = ext.A, ext.U, ext.G
    groups = {}
    for e in U.idempotents:
        a_e = ext.i_inv[e]
        groups[e] = frozenset(ext.i(a) for a in A.components[a_e])
    kns = KernelNormalSystem(U, groups)
    cong, nat = congruence_from_kns(U, kns)
    S = inverse_structure(nat.target)
    pi = Homomorphism(U, S, nat.map)
    kmap = [None] * S.n
    for u in range(U.n):
        s = pi(u)
        if kmap[s] is None:
            kmap[s] = ext.j(u)
        elif kmap[s] != ext.j(u):
            raise InternalInvariantViolation("ker π is not contained in ker j", (u,))
    kappa = Homomorphism(S, ext.G.base, tuple(kmap))
    for e in U.idempotents:
        if groups[e] != cong.classes[cong.class_of[e]]:
            raise InternalInvariantViolation("kernel classes do not reproduce 𝒜", (e,))
    if not is_e_unitary(S):
        raise InternalInvariantViolation("refinement is not E-unitary")
    sigma = sigma_congruence(S)
    if sigma.class_of != _normalize([kappa(s) for s in range(S.n)]):
        raise InternalInvariantViolation("ker κ differs from σ")
    for u in range(U.n):
        for v in range(U.n):
            same = pi(u) == pi(v)
            crit = ext.j(u) == ext.j(v) and U.ran(u) == U.ran(v)
            if same != crit:
                raise InternalInvariantViolation("ker π characterization fails", (u, v))
    ExtensionByS(A, U, S, ext.i, pi)
    return Refinement(ext, S, pi, kappa)


def _normalize(labels):
    relabel = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in labels)


def extensions_equivalent_G(ext, ext2, mu):
    """Check μ∘i = i′ and j′∘μ = j; then μ must be bijective."""
    from .errors import DiagramFailure

    m = mu.map if isinstance(mu, Homomorphism) else tuple(mu)
    for a in range(ext.A.n):
        if m[ext.i(a)] != ext2.i(a):
            raise DiagramFailure("left", (a,))
    for u in range(ext.U.n):
        if ext2.j(m[u]) != ext.j(u):
            raise DiagramFailure("right", (u,))
    h = mu if isinstance(mu, Homomorphism) else Homomorphism(ext.U, ext2.U, m)
    if not h.is_injective():
        raise InternalInvariantViolation("diagram commutes but μ is not injective")
    return h.is_surjective()


# ---------------------------------------------------------------------------
# crossed product


@dataclass(frozen=True, eq=False)
class CrossedProductG:
    action: TwistedPartialAction
    U: object
    extension: ExtensionByG
    pairs: tuple  # index -> (a, x)
    refinement: Optional["CrossedProductG"] = None
    pi: Optional[Homomorphism] = None
    kappa: Optional[Homomorphism] = None
    restriction: Optional["RestrictedAction"] = None

    @cached_property
    def index(self):
        return {p: k for k, p in enumerate(self.pairs)}

    @property
    def S(self):
        return self.refinement.U

    def s_index(self, e, x):
        """Index in E(A)∗_θG of eδ_x, e given as an element of A."""
        loc = self.restriction.local[e]
        return self.refinement.index[(loc, x)]

    def s_pair(self, k):
        """(e as element of A, x) for an index of E(A)∗_θG."""
        loc, x = self.refinement.pairs[k]
        return self.restriction.embed[loc], x

    @cached_property
    def idempotent_transversal(self):
        """ρ = id on E(A)∗_θG, viewed inside U."""
        return tuple(self.index[self.s_pair(k)] for k in range(self.S.n))


def crossed_product_action(T, refine=True):
    A, G = T.A, T.G
    pairs = sorted(((a, x) for x in range(G.n) for a in T.domains[x]), key=lambda p: (p[1], p[0]))
    index = {p: k for k, p in enumerate(pairs)}
    rows = []
    for s, x in pairs:
        th, thi = T.theta[x], T.theta_inv_table[x]
        row = []
        for t, y in pairs:
            c = T.w[(x, y)].right[th[A.mul(thi[s], t)]]
            row.append(index[(c, G.mul(x, y))])
        rows.append(row)
    try:
        base = FiniteSemigroup(rows, tuple(pairs))
    except NotAssociative as exc:
        raise AxiomViolation("associativity", tuple(pairs[k] for k in exc.witness)) from None
    try:
        U = inverse_structure(base)
    except Exception as exc:
        raise AxiomViolation("inverse", getattr(exc, "witness", None), str(exc)) from None
    one = G.e
    expected_idem = sorted(index[(e, one)] for e in A.idempotents)
    if sorted(U.idempotents) != expected_idem:
        raise InternalInvariantViolation("idempotents are not the eδ_1")
    for k, (s, x) in enumerate(pairs):
        xi = G.inv[x]
        b = T.w_inv[(xi, x)].left[T.theta[xi][A.inv[s]]]
        if index[(b, xi)] != U.inv[k]:
            raise AxiomViolation("inverse-formula", (s, x))
        if U.ran(k) != index[(A.comp(s), one)]:
            raise InternalInvariantViolation("sδ_x(sδ_x)^-1 differs from ss^-1δ_1", (s, x))
        if U.dom(k) != index[(theta_inverse(T, x, A.comp(s)), one)]:
            raise InternalInvariantViolation("(sδ_x)^-1sδ_x differs from θ_x^-1(s^-1s)δ_1", (s, x))
    ext = ExtensionByG(A, U, G, tuple(index[(a, one)] for a in range(A.n)), tuple(x for _, x in pairs))
    if not refine:
        return CrossedProductG(T, U, ext, tuple(pairs))
    R = restrict_to_idempotents(T)
    Ecp = crossed_product_action(R.action, refine=False)
    pi = Homomorphism(U, Ecp.U, tuple(Ecp.index[(R.local[A.comp(a)], x)] for a, x in pairs))
    kappa = Homomorphism(Ecp.U, G.base, tuple(x for _, x in Ecp.pairs))
    if not pi.is_surjective():
        raise InternalInvariantViolation("π is not surjective")
    if not is_e_unitary(Ecp.U):
        raise InternalInvariantViolation("E(A)∗_θG is not E-unitary")
    sigma = sigma_congruence(Ecp.U)
    if sigma.class_of != _normalize(kappa.map):
        raise InternalInvariantViolation("ker κ differs from σ on E(A)∗_θG")
    for u in range(U.n):
        if kappa(pi(u)) != ext.j(u):
            raise InternalInvariantViolation("κ∘π differs from j", (u,))
    ExtensionByS(A, U, Ecp.U, ext.i, pi)
    return CrossedProductG(T, U, ext, tuple(pairs), Ecp, pi, kappa, R)


# ---------------------------------------------------------------------------
# restriction to idempotents


@dataclass(frozen=True, eq=False)
class RestrictedAction:
    action: TwistedPartialAction
    embed: tuple  # local index -> element of A
    local: dict  # element of A -> local index


def restrict_to_idempotents(T):
    A, G = T.A, T.G
    E, embed = A.base.base.subsemigroup(A.idempotents)
    EA = certify_clifford(inverse_structure(E))
    local = {e: k for k, e in enumerate(embed)}
    idem = A.idempotent_set
    doms = []
    for x in range(G.n):
        doms.append(frozenset(local[e] for e in T.domains[x] if e in idem))
    theta = []
    for x in range(G.n):
        th = {}
        for e in T.domains[G.inv[x]]:
            if e in idem:
                img = T.theta[x][e]
                if img not in idem:
                    raise InternalInvariantViolation("θ_x maps an idempotent outside E(A)", (x, e))
                th[local[e]] = local[img]
        theta.append(th)
    for x in range(G.n):
        for y in range(G.n):
            lhs = {local[e] for e in (T.domains[x] & T.domains[y]) if e in idem}
            rhs = {EA.mul(a, b) for a in doms[x] for b in doms[y]}
            if lhs != rhs:
                raise InternalInvariantViolation("E(IJ) differs from E(I)E(J)", (x, y))
    R = verify_tpa(G, EA, tuple(doms), tuple(theta), trivial_w(G, tuple(doms)))
    return RestrictedAction(R, embed, local)


# ---------------------------------------------------------------------------
# equivalence of twisted partial actions


@dataclass(frozen=True)
class TpaVerdict:
    equivalent: bool
    witness: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.equivalent


def tpa_equivalence_witness(T1, T2, eps):
    A, G = T1.A, T1.G
    if T1.domains != T2.domains:
        return ("i",)
    for x in range(G.n):
        e = eps[x]
        if e.domain != tuple(sorted(T1.domains[x])) or not e.is_invertible():
            return ("eps", x)
        ei = e.inverse()
        for s in T1.domains[G.inv[x]]:
            if T2.theta[x][s] != ei.right[e.left[T1.theta[x][s]]]:
                return ("ii", x, s)
    for x in range(G.n):
        for y in range(G.n):
            xy = G.mul(x, y)
            for s in T1.domains[G.inv[x]] & T1.domains[y]:
                lhs = eps[xy].right[T2.w[(x, y)].right[T2.theta[x][s]]]
                rhs = eps[x].left[T1.w[(x, y)].right[T1.theta[x][eps[y].right[s]]]]
                if lhs != rhs:
                    return ("iii", x, y, s)
    return None


def tpas_equivalent(T1, T2, eps=None, cap=DEFAULT_SEARCH_CAP, mult_cap=10):
    A, G = T1.A, T1.G
    if T1.domains != T2.domains:
        return TpaVerdict(False, None, "domains differ")
    if eps is not None:
        eps = tuple(eps)
        w = tpa_equivalence_witness(T1, T2, eps)
        if w is not None:
            return TpaVerdict(False, w, "given ε fails")
        _check_same_restriction(T1, T2)
        return TpaVerdict(True, eps)
    cands = []
    for x in range(G.n):
        M = multiplier_monoid(Ideal(A, T1.domains[x]), cap=mult_cap)
        ok = []
        for e in M.unit_multipliers():
            ei = e.inverse()
            if all(T2.theta[x][s] == ei.right[e.left[T1.theta[x][s]]] for s in T1.domains[G.inv[x]]):
                ok.append(e)
        cands.append(ok)
    space = prod(len(c) for c in cands)
    if space > cap:
        raise SizeCapExceeded(f"ε search space {space} exceeds cap {cap}", (space,))
    eps = [None] * G.n

    def pair_ok(x, y):
        xy = G.mul(x, y)
        for s in T1.domains[G.inv[x]] & T1.domains[y]:
            lhs = eps[xy].right[T2.w[(x, y)].right[T2.theta[x][s]]]
            rhs = eps[x].left[T1.w[(x, y)].right[T1.theta[x][eps[y].right[s]]]]
            if lhs != rhs:
                return False
        return True

    def ok(k):
        for x in range(k + 1):
            for y in range(k + 1):
                xy = G.mul(x, y)
                if xy <= k and k in (x, y, xy) and not pair_ok(x, y):
                    return False
        return True

    def rec(k):
        if k == G.n:
            return tuple(eps)
        for c in cands[k]:
            eps[k] = c
            if ok(k):
                res = rec(k + 1)
                if res is not None:
                    return res
        eps[k] = None
        return None

    found = rec(0)
    if found is None:
        return TpaVerdict(False, None, "no ε exists")
    if tpa_equivalence_witness(T1, T2, found) is not None:
        raise InternalInvariantViolation("ε search returned an invalid witness")
    _check_same_restriction(T1, T2)
    return TpaVerdict(True, found)


def _check_same_restriction(T1, T2):
    r1, r2 = restrict_to_idempotents(T1), restrict_to_idempotents(T2)
    if not r1.action.same_as(r2.action):
        raise InternalInvariantViolation("equivalent actions restrict differently to E(A)")


def multiplier_from_right(A, domain, right):
    """Invertible multiplier with the given right part; left part L(s) = (R⁻¹(s⁻¹))⁻¹."""
    domain = tuple(sorted(domain))
    rinv = {v: k for k, v in right.items()}
    left = {s: A.inv[rinv[A.inv[s]]] for s in domain}
    return Multiplier(domain, left, dict(right))


def conjugate_tpa(T, eps):
    """Θ′ with θ′_x = ε_xθ_xε_x⁻¹ and w′ solved from θ′_x(s)w′_{x,y}ε_{xy} = ε_xθ_x(sε_y)w_{x,y}."""
    A, G = T.A, T.G
    theta2 = []
    for x in range(G.n):
        e, ei = eps[x], eps[x].inverse()
        theta2.append({s: ei.right[e.left[T.theta[x][s]]] for s in T.domains[G.inv[x]]})
    w2 = {}
    for x in range(G.n):
        inv2 = {v: k for k, v in theta2[x].items()}
        for y in range(G.n):
            xy = G.mul(x, y)
            dom = T.domains[x] & T.domains[xy]
            exy_inv = eps[xy].inverse()
            right = {}
            for t in dom:
                s = inv2[t]
                v = eps[x].left[T.w[(x, y)].right[T.theta[x][eps[y].right[s]]]]
                right[t] = exy_inv.right[v]
            w2[(x, y)] = multiplier_from_right(A, dom, right)
    return verify_tpa(G, A, T.domains, tuple(theta2), w2)


# ---------------------------------------------------------------------------
# transversals τ of j


@dataclass(frozen=True, eq=False)
class TransversalTau:
    extension: ExtensionByG
    tau: dict  # (x, e) -> u

    def __post_init__(self):
        ext = self.extension
        tau = dict(self.tau)
        object.__setattr__(self, "tau", tau)
        if set(tau) != set(ext.cells):
            raise InvalidTransversal("τ is not defined exactly on the nonempty cells")
        for (x, e), u in tau.items():
            if u not in ext.cells[(x, e)]:
                raise InvalidTransversal("τ(x,e) lies outside U(x,e)", (x, e))
            if x == ext.G.e and u != e:
                raise InvalidTransversal("τ(1,e) differs from e", (e,))

    def __call__(self, x, e):
        return self.tau[(x, e)]

    def key(self):
        return tuple(sorted(self.tau.items()))


def tau_order_witness(tau):
    ext = tau.extension
    U = ext.U
    leq = U.leq
    for u in range(U.n):
        for v in range(U.n):
            if leq[u][v]:
                a = tau.tau[(ext.j(u), U.ran(u))]
                b = tau.tau[(ext.j(v), U.ran(v))]
                if not leq[a][b]:
                    return (u, v)
    return None


def rho_to_tau(ref, rho):
    ext = ref.extension
    r = rho.rho if isinstance(rho, TransversalRho) else rho
    tau = {}
    for (x, e), cell in ext.cells.items():
        vals = {r[ref.pi(u)] for u in cell}
        if len(vals) != 1:
            raise InternalInvariantViolation("ρ∘π is not constant on a cell", (x, e))
        tau[(x, e)] = vals.pop()
    return TransversalTau(ext, tau)


def tau_to_rho(ref, tau):
    S = ref.S
    lift = ref.idempotent_lift
    r = tuple(tau.tau[(ref.kappa(s), lift[S.ran(s)])] for s in range(S.n))
    return TransversalRho(ref.as_extension_by_S, r)


def tau_rho_correspondence(ext, ref=None, cap=DEFAULT_SEARCH_CAP):
    """All (ρ, τ) pairs, with both round trips and the order equivalence asserted."""
    ref = ref or refine_extension(ext)
    out = []
    for rho in transversals(ref.as_extension_by_S, cap):
        tau = rho_to_tau(ref, rho)
        if tau_to_rho(ref, tau).rho != rho.rho:
            raise InternalInvariantViolation("ρ -> τ -> ρ′ is not the identity", rho.rho)
        if rho_to_tau(ref, tau_to_rho(ref, tau)).key() != tau.key():
            raise InternalInvariantViolation("τ -> ρ -> τ′ is not the identity")
        if is_order_preserving(ref.as_extension_by_S, rho) != (tau_order_witness(tau) is None):
            raise InternalInvariantViolation("order preservation of ρ and τ disagree", rho.rho)
        out.append((rho, tau))
    return out


def tpa_from_tau(ext, tau):
    wit = tau_order_witness(tau)
    if wit is not None:
        raise NotAdmissible("τ is not order-preserving", wit)
    A, U, G = ext.A, ext.U, ext.G
    iinv = ext.i_inv
    t = tau.tau
    doms = [set() for _ in range(G.n)]
    for (x, e) in ext.cells:
        doms[x].update(A.components[iinv[e]])
    doms = tuple(frozenset(d) for d in doms)
    theta = []
    for x in range(G.n):
        xi = G.inv[x]
        th = {}
        for a in doms[xi]:
            e = ext.i(A.comp(a))
            p = t[(xi, e)]
            v = t[(x, U.dom(p))]
            th[a] = iinv[U.product(v, ext.i(a), U.inv[v])]
        theta.append(th)
    w = {}
    for x in range(G.n):
        for y in range(G.n):
            xy = G.mul(x, y)
            dom = tuple(sorted(doms[x] & doms[xy]))
            left, right = {}, {}
            for a in dom:
                e = ext.i(A.comp(a))
                p = t[(x, e)]
                q = t[(y, U.product(U.inv[p], e, p))]
                r = t[(xy, e)]
                om = iinv[U.product(p, q, U.inv[r])]
                left[a] = A.mul(om, a)
                right[a] = A.mul(a, om)
            w[(x, y)] = Multiplier(dom, left, right)
    return verify_tpa(G, A, doms, tuple(theta), w)


def natural_tau(cp):
    """τ(x, eδ_1) = eδ_x on a crossed-product extension."""
    ext = cp.extension
    tau = {}
    for (x, e) in ext.cells:
        a = ext.i_inv[e]
        tau[(x, e)] = cp.index[(a, x)]
    return TransversalTau(ext, tau)


@dataclass(frozen=True, eq=False)
class AdmissibilityVerdict:
    admissible: bool
    tau: Optional[TransversalTau]
    refinement: Refinement
    f_inverse: bool
    coset_reps: Optional[dict]


def coset_representatives(ext):
    """x -> u_x with j⁻¹(x) = u_x·i(A), or None if some x has no such u_x."""
    U, G = ext.U, ext.G
    reps = {}
    image = set(ext.i.map)
    for x in range(G.n):
        fiber = {u for u in range(U.n) if ext.j(u) == x}
        found = None
        for u in sorted(fiber):
            if {U.mul(u, v) for v in image} == fiber:
                found = u
                break
        if found is None:
            return None
        reps[x] = found
    return reps


def is_admissible(ext, cap=DEFAULT_SEARCH_CAP):
    ref = refine_extension(ext)
    ops = order_preserving_transversals(ref.as_extension_by_S, cap)
    f_inv = is_f_inverse(ref.S)
    reps = coset_representatives(ext)
    if (reps is not None) != f_inv:
        raise InternalInvariantViolation("coset criterion disagrees with the F-inverse test")
    if f_inv and not ops:
        raise InternalInvariantViolation("F-inverse refinement without an order-preserving transversal")
    tau = rho_to_tau(ref, ops[0]) if ops else None
    if tau is not None and tau_order_witness(tau) is not None:
        raise InternalInvariantViolation("τ from an order-preserving ρ is not order-preserving")
    return AdmissibilityVerdict(bool(ops), tau, ref, f_inv, reps)


def isomorphic_refinements(ref, cp):
    """find_isomorphism between a refinement and E(A)∗_θG."""
    return find_isomorphism(ref.S.base, cp.S.base)
