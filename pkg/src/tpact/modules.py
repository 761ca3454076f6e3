"""Twisted S-modules, their crossed products, extensions of A by S and transversals."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Optional

from .clifford import CliffordAlgebra, as_rel_invertible, certify_clifford, rel_invertible_witness
from .errors import (
    AxiomViolation,
    DiagramFailure,
    FactorizationFailure,
    InternalInvariantViolation,
    InvalidExtension,
    InvalidTransversal,
    NotAssociative,
    SizeCapExceeded,
)
from .semigroup import (
    FiniteSemigroup,
    Homomorphism,
    InverseSemigroup,
    inverse_structure,
    is_f_inverse,
    sigma_congruence,
    sigma_maxima,
)

DEFAULT_SEARCH_CAP = 10**6


def _hom(source, target, m, what):
    try:
        return Homomorphism(source, target, tuple(m))
    except Exception as exc:
        raise InvalidExtension(f"{what} is not a homomorphism: {exc}", getattr(exc, "witness", None)) from None


@dataclass(frozen=True, eq=False)
class ExtensionByS:
    A: CliffordAlgebra
    U: InverseSemigroup
    S: InverseSemigroup
    i: Homomorphism
    j: Homomorphism

    def __post_init__(self):
        A, U, S = self.A, self.U, self.S
        if not isinstance(self.i, Homomorphism):
            object.__setattr__(self, "i", _hom(A, U, self.i, "i"))
        if not isinstance(self.j, Homomorphism):
            object.__setattr__(self, "j", _hom(U, S, self.j, "j"))
        i, j = self.i, self.j
        if not i.is_injective():
            raise InvalidExtension("i is not injective")
        if not j.is_surjective():
            missing = sorted(set(range(S.n)) - set(j.map))
            raise InvalidExtension("j is not surjective", (missing[0],))
        e_u = list(U.idempotents)
        if len({j(e) for e in e_u}) != len(e_u):
            raise InvalidExtension("j is not idempotent-separating")
        if {j(e) for e in e_u} != set(S.idempotents):
            raise InvalidExtension("j does not map E(U) onto E(S)")
        kernel = {u for u in range(U.n) if j(u) in S.idempotent_set}
        if set(i.map) != kernel:
            bad = sorted(set(i.map) ^ kernel)
            raise InvalidExtension("i(A) differs from j^-1(E(S))", (bad[0],))
        if sorted(i(e) for e in A.idempotents) != sorted(e_u):
            raise InvalidExtension("i does not map E(A) onto E(U)")

    @cached_property
    def i_inv(self):
        return {u: a for a, u in enumerate(self.i.map)}

    @cached_property
    def fibers(self):
        out = [[] for _ in range(self.S.n)]
        for u in range(self.U.n):
            out[self.j(u)].append(u)
        return tuple(tuple(f) for f in out)

    @cached_property
    def idempotent_lift(self):
        """e ∈ E(S) -> the unique idempotent of U over e."""
        return {self.j(e): e for e in self.U.idempotents}


@dataclass(frozen=True, eq=False)
class TransversalRho:
    extension: ExtensionByS
    rho: tuple

    def __post_init__(self):
        ext = self.extension
        rho = tuple(self.rho)
        object.__setattr__(self, "rho", rho)
        U, S = ext.U, ext.S
        if len(rho) != S.n:
            raise InvalidTransversal("transversal has the wrong length")
        for s in range(S.n):
            if ext.j(rho[s]) != s:
                raise InvalidTransversal("j(rho(s)) differs from s", (s,))
        for e in S.idempotents:
            if rho[e] not in U.idempotent_set:
                raise InvalidTransversal("rho(e) is not idempotent", (e,))
        for s in range(S.n):
            if U.ran(rho[s]) != rho[S.ran(s)]:
                raise InvalidTransversal("rho(s)rho(s)^-1 differs from rho(ss^-1)", (s,))

    def __call__(self, s):
        return self.rho[s]


def is_order_preserving(ext, rho):
    S, U = ext.S, ext.U
    r = rho.rho if isinstance(rho, TransversalRho) else rho
    for s in range(S.n):
        for t in range(S.n):
            if S.leq[s][t] and not U.leq[r[s]][r[t]]:
                return False
    return True


def order_witness(ext, rho):
    S, U = ext.S, ext.U
    r = rho.rho
    for s in range(S.n):
        for t in range(S.n):
            if S.leq[s][t] and not U.leq[r[s]][r[t]]:
                return (s, t)
    return None


@dataclass(frozen=True, eq=False)
class TwistedSModule:
    S: InverseSemigroup
    A: CliffordAlgebra
    alpha: dict
    lam: tuple
    f: tuple

    @cached_property
    def alpha_inv(self):
        return {a: e for e, a in self.alpha.items()}

    def ran_alpha(self, s):
        """α(ss⁻¹)"""
        return self.alpha[self.S.ran(s)]

    def dom_alpha(self, s):
        """α(s⁻¹s)"""
        return self.alpha[self.S.dom(s)]

    def lam_bar(self, s):
        """λ̄_s = ξ_{f(s⁻¹,s)⁻¹} ∘ λ_{s⁻¹}"""
        A, S = self.A, self.S
        si = S.inv[s]
        c = A.inv[self.f[si][s]]
        return tuple(A.xi(c, self.lam[si][a]) for a in range(A.n))

    def same_as(self, other):
        return self.alpha == other.alpha and self.lam == other.lam and self.f == other.f


def verify_module(S, A, alpha, lam, f):
    """Build a TwistedSModule after checking every axiom exhaustively."""
    A = certify_clifford(A)
    if isinstance(S, FiniteSemigroup):
        S = inverse_structure(S)
    alpha = {int(k): int(v) for k, v in dict(alpha).items()}
    lam = tuple(tuple(int(x) for x in row) for row in lam)
    f = tuple(tuple(int(x) for x in row) for row in f)
    n, m = S.n, A.n
    if len(lam) != n or any(len(r) != m for r in lam):
        raise AxiomViolation("shape", None, "lambda table must be |S| x |A|")
    if len(f) != n or any(len(r) != n for r in f):
        raise AxiomViolation("shape", None, "f table must be |S| x |S|")
    if any(not 0 <= x < m for r in lam for x in r) or any(not 0 <= x < m for r in f for x in r):
        raise AxiomViolation("shape", None, "entry out of range")
    if set(alpha) != S.idempotent_set:
        raise AxiomViolation("alpha", tuple(sorted(set(alpha) ^ S.idempotent_set)), "domain is not E(S)")
    if sorted(alpha.values()) != sorted(A.idempotents):
        raise AxiomViolation("alpha", None, "not a bijection onto E(A)")
    for e in S.idempotents:
        for e2 in S.idempotents:
            if alpha[S.mul(e, e2)] != A.mul(alpha[e], alpha[e2]):
                raise AxiomViolation("alpha", (e, e2), "not a semilattice homomorphism")
    tabA = A.table
    for s in range(n):
        row = lam[s]
        for a in range(m):
            for b in range(m):
                if row[tabA[a][b]] != tabA[row[a]][row[b]]:
                    raise AxiomViolation("endo", (s, a, b), "lambda_s is not an endomorphism")
    for s in range(n):
        for t in range(n):
            st = S.mul(s, t)
            if A.comp(f[s][t]) != alpha[S.ran(st)]:
                raise AxiomViolation("f-range", (s, t), "f(s,t) outside A_alpha(stt^-1s^-1)")
    for e in S.idempotents:
        for a in range(m):
            if lam[e][a] != tabA[alpha[e]][a]:
                raise AxiomViolation("i", (e, a))
    for s in range(n):
        for e in S.idempotents:
            if lam[s][alpha[e]] != alpha[S.product(s, e, S.inv[s])]:
                raise AxiomViolation("ii", (s, e))
    for s in range(n):
        for t in range(n):
            st = S.mul(s, t)
            c = f[s][t]
            for a in range(m):
                if lam[s][lam[t][a]] != A.xi(c, lam[st][a]):
                    raise AxiomViolation("iii", (s, t, a))
    for s in range(n):
        for e in S.idempotents:
            se = S.mul(s, e)
            if f[se][e] != alpha[S.product(s, e, S.inv[s])]:
                raise AxiomViolation("iv", (s, e), "f(se,e)")
            es = S.mul(e, s)
            if f[e][es] != alpha[S.product(e, s, S.inv[s])]:
                raise AxiomViolation("iv", (s, e), "f(e,es)")
    for s in range(n):
        for t in range(n):
            st = S.mul(s, t)
            for u in range(n):
                tu = S.mul(t, u)
                lhs = tabA[lam[s][f[t][u]]][f[s][tu]]
                rhs = tabA[f[s][t]][f[st][u]]
                if lhs != rhs:
                    raise AxiomViolation("v", (s, t, u))
    mod = TwistedSModule(S, A, alpha, lam, f)
    for s in range(n):
        e = alpha[S.dom(s)]
        if as_rel_invertible(A, lam[s]) is None:
            raise AxiomViolation("iend", (s,), "lambda_s is not relatively invertible")
        bar = mod.lam_bar(s)
        for a in range(m):
            if bar[lam[s][a]] != tabA[e][a] or lam[s][bar[a]] != tabA[lam[s][e]][a]:
                raise InternalInvariantViolation("displayed formula for the inverse of lambda_s fails", (s, a))
        r = alpha[S.ran(s)]
        for a in range(m):
            if tabA[r][lam[s][a]] != lam[s][a]:
                raise InternalInvariantViolation("alpha(ss^-1)lambda_s(a) differs from lambda_s(a)", (s, a))
    return mod


def check_module(mod):
    return verify_module(mod.S, mod.A, mod.alpha, mod.lam, mod.f)


@dataclass(frozen=True)
class SiebenFlag:
    holds: bool
    witnesses: tuple = ()

    def __bool__(self):
        return self.holds


def is_sieben(mod):
    S, alpha, f = mod.S, mod.alpha, mod.f
    right_fail, left_fail = [], []
    for s in range(S.n):
        for e in S.idempotents:
            if f[s][e] != alpha[S.product(s, e, S.inv[s])]:
                right_fail.append((s, e))
            if f[e][s] != alpha[S.product(e, s, S.inv[s])]:
                left_fail.append((s, e))
    if bool(right_fail) != bool(left_fail):
        raise InternalInvariantViolation(
            "f(s,e) and f(e,s) conditions disagree", (right_fail or left_fail)[0]
        )
    wits = tuple(sorted(set(right_fail) | set(left_fail)))
    return SiebenFlag(not wits, wits)


def twist_monotonicity_witness(mod):
    """f(s,t) = α(stt⁻¹s⁻¹)f(s′,t′) for s ≤ s′, t ≤ t′ (Sieben modules)."""
    S, A, f = mod.S, mod.A, mod.f
    leq = S.leq
    for s in range(S.n):
        for s2 in range(S.n):
            if not leq[s][s2]:
                continue
            for t in range(S.n):
                for t2 in range(S.n):
                    if not leq[t][t2]:
                        continue
                    e = mod.ran_alpha(S.mul(s, t))
                    if f[s][t] != A.mul(e, f[s2][t2]):
                        return (s, s2, t, t2)
    return None


def twist_sigma_agreement_witness(mod):
    """α(st(s′t′)⁻¹)f(s,t) = α(st(s′t′)⁻¹)f(s′,t′) for σ-related pairs."""
    S, A, f = mod.S, mod.A, mod.f
    sigma = sigma_congruence(S)
    for s in range(S.n):
        for s2 in sigma.classes[sigma.class_of[s]]:
            for t in range(S.n):
                for t2 in sigma.classes[sigma.class_of[t]]:
                    x = S.mul(S.mul(s, t), S.inv[S.mul(s2, t2)])
                    if x not in S.idempotent_set:
                        continue
                    e = mod.alpha[x]
                    if A.mul(e, f[s][t]) != A.mul(e, f[s2][t2]):
                        return (s, s2, t, t2)
    return None


def inverse_twist_witness(mod):
    """λ_s(f(s⁻¹,s)) = f(s,s⁻¹)."""
    S = mod.S
    for s in range(S.n):
        si = S.inv[s]
        if mod.lam[s][mod.f[si][s]] != mod.f[s][si]:
            return (s,)
    return None


# ---------------------------------------------------------------------------
# crossed product


@dataclass(frozen=True, eq=False)
class CrossedProductS:
    module: TwistedSModule
    U: InverseSemigroup
    extension: ExtensionByS
    pairs: tuple  # index -> (a, s)

    @cached_property
    def index(self):
        return {p: k for k, p in enumerate(self.pairs)}

    def natural_transversal(self):
        """ρ(s) = α(ss⁻¹)δ_s"""
        mod = self.module
        rho = tuple(self.index[(mod.ran_alpha(s), s)] for s in range(mod.S.n))
        return TransversalRho(self.extension, rho)


def crossed_product_module(mod):
    S, A = mod.S, mod.A
    pairs = sorted(
        ((a, s) for s in range(S.n) for a in range(A.n) if A.comp(a) == mod.ran_alpha(s)),
        key=lambda p: (p[1], p[0]),
    )
    index = {p: k for k, p in enumerate(pairs)}
    rows = []
    for a, s in pairs:
        row = []
        for b, t in pairs:
            c = A.product(a, mod.lam[s][b], mod.f[s][t])
            st = S.mul(s, t)
            if (c, st) not in index:
                raise AxiomViolation("closure", ((a, s), (b, t)), "product leaves the crossed product")
            row.append(index[(c, st)])
        rows.append(row)
    try:
        base = FiniteSemigroup(rows, tuple(pairs))
    except NotAssociative as exc:
        w = tuple(pairs[k] for k in exc.witness)
        raise AxiomViolation("associativity", w) from None
    try:
        U = inverse_structure(base)
    except Exception as exc:
        raise AxiomViolation("inverse", getattr(exc, "witness", None), str(exc)) from None
    for k, (a, s) in enumerate(pairs):
        si = S.inv[s]
        b = A.mul(A.inv[mod.f[si][s]], mod.lam[si][A.inv[a]])
        if index.get((b, si)) != U.inv[k]:
            raise AxiomViolation("inverse-formula", (a, s))
    i_map = tuple(index[(a, mod.alpha_inv[A.comp(a)])] for a in range(A.n))
    j_map = tuple(s for _, s in pairs)
    ext = ExtensionByS(A, U, S, i_map, j_map)
    return CrossedProductS(mod, U, ext, tuple(pairs))


# ---------------------------------------------------------------------------
# from an extension and a transversal


def module_from_extension(ext, rho):
    if not isinstance(rho, TransversalRho):
        rho = TransversalRho(ext, rho)
    A, U, S = ext.A, ext.U, ext.S
    r = rho.rho
    iinv = ext.i_inv
    alpha = {e: iinv[r[e]] for e in S.idempotents}
    lam = []
    for s in range(S.n):
        u = r[s]
        ui = U.inv[u]
        lam.append(tuple(iinv[U.product(u, ext.i(a), ui)] for a in range(A.n)))
    f = []
    for s in range(S.n):
        row = []
        for t in range(S.n):
            st = S.mul(s, t)
            lhs = U.mul(r[s], r[t])
            v = U.mul(lhs, U.inv[r[st]])
            if v not in iinv:
                raise FactorizationFailure("rho(s)rho(t)rho(st)^-1 is not in i(A)", (s, t))
            c = iinv[v]
            if U.mul(ext.i(c), r[st]) != lhs or A.comp(c) != alpha[S.ran(st)]:
                raise FactorizationFailure("rho(s)rho(t) does not factor through rho(st)", (s, t))
            row.append(c)
        f.append(tuple(row))
    return verify_module(S, A, alpha, lam, f)


def factorize(ext, rho, u):
    """The unique (a, s) with u = i(a)ρ(s) and i(aa⁻¹) = ρ(s)ρ(s)⁻¹."""
    A, U, S = ext.A, ext.U, ext.S
    r = rho.rho if isinstance(rho, TransversalRho) else rho
    found = [
        (a, s)
        for s in range(S.n)
        for a in range(A.n)
        if U.mul(ext.i(a), r[s]) == u and ext.i(A.comp(a)) == U.ran(r[s])
    ]
    if len(found) != 1:
        raise FactorizationFailure(f"{len(found)} factorizations found", (u,))
    s = ext.j(u)
    a = ext.i_inv.get(U.mul(u, U.inv[r[s]]))
    if found[0] != (a, s):
        raise InternalInvariantViolation("factorization disagrees with s = j(u)", (u,))
    return found[0]


def mu_from_factorization(cp, ext, rho):
    """μ(aδ_s) = i(a)ρ(s) from a crossed product to the extension."""
    r = rho.rho
    return Homomorphism(cp.U, ext.U, tuple(ext.U.mul(ext.i(a), r[s]) for a, s in cp.pairs))


# ---------------------------------------------------------------------------
# equivalence of modules


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.equivalent


def module_equivalence_witness(m1, m2, g):
    """None if g witnesses m1 ~ m2, else the first failing condition."""
    S, A = m1.S, m1.A
    if m1.alpha != m2.alpha:
        return ("alpha",)
    for s in range(S.n):
        if A.comp(g[s]) != m1.ran_alpha(s):
            return ("g-range", s)
    for s in range(S.n):
        for a in range(A.n):
            if m2.lam[s][a] != A.xi(g[s], m1.lam[s][a]):
                return ("lambda", s, a)
    for s in range(S.n):
        for t in range(S.n):
            st = S.mul(s, t)
            lhs = A.mul(m2.f[s][t], g[st])
            rhs = A.product(g[s], m1.lam[s][g[t]], m1.f[s][t])
            if lhs != rhs:
                return ("f", s, t)
    return None


def modules_equivalent(m1, m2, g=None, cap=DEFAULT_SEARCH_CAP):
    S, A = m1.S, m1.A
    if m1.alpha != m2.alpha:
        return EquivalenceVerdict(False, None, "alpha differs")
    if g is not None:
        g = tuple(g)
        w = module_equivalence_witness(m1, m2, g)
        if w is not None:
            return EquivalenceVerdict(False, w, "given g fails")
        _check_g_on_idempotents(m1, g)
        return EquivalenceVerdict(True, g)
    cands = []
    for s in range(S.n):
        if s in S.idempotent_set:
            cands.append([m1.alpha[s]])
        else:
            comp = sorted(A.components[m1.ran_alpha(s)])
            cands.append([c for c in comp if all(m2.lam[s][a] == A.xi(c, m1.lam[s][a]) for a in range(A.n))])
    space = prod(len(A.components[m1.ran_alpha(s)]) for s in range(S.n) if s not in S.idempotent_set)
    if space > cap:
        raise SizeCapExceeded(f"g search space {space} exceeds cap {cap}", (space,))
    g = [None] * S.n
    order = list(range(S.n))
    land = [[] for _ in range(S.n)]
    for x in range(S.n):
        for y in range(S.n):
            land[S.mul(x, y)].append((x, y))

    def ok(k):
        assigned = order[: k + 1]
        s = order[k]
        for t in assigned:
            for x, y in ((s, t), (t, s)):
                xy = S.mul(x, y)
                if g[xy] is None:
                    continue
                if A.mul(m2.f[x][y], g[xy]) != A.product(g[x], m1.lam[x][g[y]], m1.f[x][y]):
                    return False
        for (x, y) in land[s]:
            if g[x] is not None and g[y] is not None:
                if A.mul(m2.f[x][y], g[s]) != A.product(g[x], m1.lam[x][g[y]], m1.f[x][y]):
                    return False
        return True

    def rec(k):
        if k == len(order):
            return tuple(g)
        s = order[k]
        for c in cands[s]:
            g[s] = c
            if ok(k):
                res = rec(k + 1)
                if res is not None:
                    return res
            g[s] = None
        return None

    found = rec(0)
    if found is None:
        return EquivalenceVerdict(False, None, "no g exists")
    if module_equivalence_witness(m1, m2, found) is not None:
        raise InternalInvariantViolation("search returned an invalid g")
    _check_g_on_idempotents(m1, found)
    return EquivalenceVerdict(True, found)


def _check_g_on_idempotents(m, g):
    for e in m.S.idempotents:
        if g[e] != m.alpha[e]:
            raise InternalInvariantViolation("g restricted to E(S) differs from alpha", (e,))


def transversal_difference(ext, rho, rho2):
    """g(s) = i⁻¹(ρ′(s)ρ(s)⁻¹), relating the modules induced by ρ and ρ′."""
    U = ext.U
    return tuple(ext.i_inv[U.mul(rho2.rho[s], U.inv[rho.rho[s]])] for s in range(ext.S.n))


# ---------------------------------------------------------------------------
# transversal enumeration


def _free_positions(ext):
    S = ext.S
    return [s for s in range(S.n) if s not in S.idempotent_set]


def transversal_count(ext):
    return prod(len(ext.fibers[s]) for s in _free_positions(ext))


def transversals(ext, cap=DEFAULT_SEARCH_CAP):
    """All transversals with ρ(E(S)) ⊆ E(U), in lexicographic order."""
    total = transversal_count(ext)
    if total > cap:
        raise SizeCapExceeded(f"{total} transversals exceed cap {cap}", (total,))
    base = [None] * ext.S.n
    for e in ext.S.idempotents:
        base[e] = ext.idempotent_lift[e]
    free = _free_positions(ext)
    for choice in product(*(ext.fibers[s] for s in free)):
        r = list(base)
        for s, u in zip(free, choice):
            r[s] = u
        yield TransversalRho(ext, tuple(r))


def order_preserving_transversals(ext, cap=DEFAULT_SEARCH_CAP):
    """Order-preserving transversals, by backtracking with order pruning."""
    total = transversal_count(ext)
    if total > cap:
        raise SizeCapExceeded(f"{total} transversals exceed cap {cap}", (total,))
    S, U = ext.S, ext.U
    r = [None] * S.n
    for e in S.idempotents:
        r[e] = ext.idempotent_lift[e]
    free = _free_positions(ext)
    out = []

    def consistent(s):
        for t in range(S.n):
            if r[t] is None:
                continue
            if S.leq[s][t] and not U.leq[r[s]][r[t]]:
                return False
            if S.leq[t][s] and not U.leq[r[t]][r[s]]:
                return False
        return True

    if not all(consistent(e) for e in S.idempotents):
        return out

    def rec(k):
        if k == len(free):
            out.append(TransversalRho(ext, tuple(r)))
            return
        s = free[k]
        for u in ext.fibers[s]:
            r[s] = u
            if consistent(s):
                rec(k + 1)
            r[s] = None

    rec(0)
    if is_f_inverse(S):
        built = f_inverse_transversal(ext)
        if built.rho not in {t.rho for t in out}:
            raise InternalInvariantViolation("constructed transversal is not order-preserving", built.rho)
    return out


def f_inverse_transversal(ext):
    """ρ(max x) = least lift, extended by ρ(e·max x) = ρ(e)ρ(max x)."""
    S, U = ext.S, ext.U
    maxima = sigma_maxima(S)
    if maxima is None:
        raise InternalInvariantViolation("S is not F-inverse")
    sigma = sigma_congruence(S)
    r = [None] * S.n
    top = {cid: min(ext.fibers[m]) for cid, m in maxima.items()}
    for cid, m in maxima.items():
        if m in S.idempotent_set:
            top[cid] = ext.idempotent_lift[m]
    for s in range(S.n):
        cid = sigma.class_of[s]
        r[s] = U.mul(ext.idempotent_lift[S.ran(s)], top[cid])
    return TransversalRho(ext, tuple(r))


# ---------------------------------------------------------------------------
# equivalence of extensions


def extensions_equivalent_S(ext, ext2, mu, rho=None):
    """Check μ∘i = i′ and j′∘μ = j; on success μ must be bijective and carry ρ to ρ′ inducing the same Λ."""
    m = mu.map if isinstance(mu, Homomorphism) else tuple(mu)
    for a in range(ext.A.n):
        if m[ext.i(a)] != ext2.i(a):
            raise DiagramFailure("left", (a,))
    for u in range(ext.U.n):
        if ext2.j(m[u]) != ext.j(u):
            raise DiagramFailure("right", (u,))
    h = mu if isinstance(mu, Homomorphism) else Homomorphism(ext.U, ext2.U, m)
    if not h.is_bijective():
        raise InternalInvariantViolation("diagram commutes but mu is not bijective")
    if rho is None:
        rho = next(transversals(ext))
    rho2 = TransversalRho(ext2, tuple(m[u] for u in rho.rho))
    if not module_from_extension(ext, rho).same_as(module_from_extension(ext2, rho2)):
        raise InternalInvariantViolation("mu∘rho induces a different module")
    return True


# ---------------------------------------------------------------------------
# standard instances


def semilattice_of(A):
    """E(A) as an inverse semigroup, with the embedding into A."""
    E, embed = A.base.base.subsemigroup(A.idempotents)
    return inverse_structure(E), embed


def idempotent_module(A):
    """S = E(A), α = id, λ_e = multiplication by e, f(e,f) = ef."""
    S, embed = semilattice_of(A)
    alpha = {k: embed[k] for k in range(S.n)}
    lam = [tuple(A.mul(embed[k], a) for a in range(A.n)) for k in range(S.n)]
    f = [tuple(A.mul(embed[k], embed[l]) for l in range(S.n)) for k in range(S.n)]
    return verify_module(S, A, alpha, lam, f)


def trivial_extension(A):
    """A -> A -> E(A) with j(a) = aa⁻¹, together with the identity transversal."""
    S, embed = semilattice_of(A)
    back = {e: k for k, e in enumerate(embed)}
    ext = ExtensionByS(A, A.base, S, tuple(range(A.n)), tuple(back[A.comp(a)] for a in range(A.n)))
    return ext, TransversalRho(ext, embed)
