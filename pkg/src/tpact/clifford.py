"""Semilattices of groups: certification, ideals, multipliers and relatively invertible endomorphisms."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import InternalInvariantViolation, MalformedInput, NotClifford, SizeCapExceeded
from .groups import FiniteGroup, group_homs
from .semigroup import (
    FiniteSemigroup,
    InverseSemigroup,
    _search_maps,
    inverse_structure,
    iter_isomorphisms,
)

DEFAULT_MULT_CAP = 10
DEFAULT_ENDO_CAP = 12


@dataclass(frozen=True, eq=False)
class CliffordAlgebra:
    base: InverseSemigroup
    components: dict

    @property
    def n(self):
        return self.base.n

    @property
    def table(self):
        return self.base.table

    @property
    def inv(self):
        return self.base.inv

    @property
    def idempotents(self):
        return self.base.idempotents

    @property
    def idempotent_set(self):
        return self.base.idempotent_set

    @property
    def labels(self):
        return self.base.labels

    @property
    def leq(self):
        return self.base.leq

    def mul(self, a, b):
        return self.base.table[a][b]

    def product(self, *xs):
        return self.base.product(*xs)

    def comp(self, a):
        """The idempotent e with a ∈ A_e."""
        return self.base.table[a][self.base.inv[a]]

    def ran(self, a):
        return self.comp(a)

    def dom(self, a):
        return self.comp(a)

    def xi(self, b, a):
        """Inner endomorphism ξ_b(a) = b a b⁻¹."""
        t = self.base.table
        return t[t[b][a]][self.base.inv[b]]

    def down(self, e):
        return [f for f in self.idempotents if self.base.table[e][f] == f]

    def principal_ideal(self, e):
        """eA as a sorted tuple."""
        return tuple(sorted({self.base.table[e][a] for a in range(self.n)}))

    def __repr__(self):
        sizes = {e: len(c) for e, c in self.components.items()}
        return f"CliffordAlgebra(n={self.n}, components={sizes})"


def certify_clifford(S):
    """Check aa⁻¹ = a⁻¹a and centrality of idempotents, then build the component map."""
    if isinstance(S, CliffordAlgebra):
        return S
    if isinstance(S, FiniteSemigroup):
        S = inverse_structure(S)
    tab = S.table
    for a in range(S.n):
        if tab[a][S.inv[a]] != tab[S.inv[a]][a]:
            raise NotClifford("aa^-1 differs from a^-1a", (a,))
    for e in S.idempotents:
        for a in range(S.n):
            if tab[e][a] != tab[a][e]:
                raise NotClifford("idempotent is not central", (e, a))
    comps = {e: [] for e in S.idempotents}
    for a in range(S.n):
        comps[tab[a][S.inv[a]]].append(a)
    comps = {e: frozenset(v) for e, v in comps.items()}
    for e, Ae in comps.items():
        for f, Af in comps.items():
            ef = tab[e][f]
            for a in Ae:
                for b in Af:
                    if tab[a][b] not in comps[ef]:
                        raise InternalInvariantViolation("component product escapes A_ef", (a, b))
    return CliffordAlgebra(S, comps)


@dataclass(frozen=True, eq=False)
class Ideal:
    parent: CliffordAlgebra
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        A = self.parent
        for s in self.elements:
            for a in range(A.n):
                if A.mul(a, s) not in self.elements or A.mul(s, a) not in self.elements:
                    raise MalformedInput("subset is not an ideal", (s, a))

    @cached_property
    def sorted(self):
        return tuple(sorted(self.elements))

    @cached_property
    def idempotents(self):
        return tuple(e for e in self.sorted if e in self.parent.idempotent_set)

    @cached_property
    def is_idempotent(self):
        return self.parent.base.base.set_product(self.elements, self.elements) == self.elements

    @cached_property
    def unit(self):
        """Central idempotent 1_I with I = 1_I·A, or None."""
        A = self.parent
        for e in self.idempotents:
            if frozenset(A.principal_ideal(e)) == self.elements:
                return e
        return None

    @property
    def is_unital(self):
        return self.unit is not None

    def __and__(self, other):
        return Ideal(self.parent, self.elements & other.elements)

    def times(self, other):
        return Ideal(self.parent, self.parent.base.base.set_product(self.elements, other.elements))

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self.elements

    def __repr__(self):
        return f"Ideal({sorted(self.elements)})"


def ideal_from_idempotents(A, idems):
    """Union of components over the down-closure of ``idems``."""
    down = set()
    for e in idems:
        down.update(A.down(e))
    return Ideal(A, frozenset().union(*(A.components[f] for f in down)) if down else frozenset())


def ideals(A):
    """All nonempty ideals, each a union of components over a down-set of E(A)."""
    idem = list(A.idempotents)
    leq = A.leq
    downsets = set()
    for mask in range(1, 1 << len(idem)):
        chosen = {idem[k] for k in range(len(idem)) if mask >> k & 1}
        if all(f in chosen for e in chosen for f in idem if leq[f][e]):
            downsets.add(frozenset(chosen))
    out = []
    for ds in sorted(downsets, key=lambda d: (len(d), sorted(d))):
        elems = frozenset().union(*(A.components[e] for e in ds))
        out.append(Ideal(A, elems))
    for I in out:
        for J in out:
            if (I & J).elements != I.times(J).elements:
                raise InternalInvariantViolation("I ∩ J differs from IJ", (I.sorted, J.sorted))
    return out


@dataclass(frozen=True, eq=False)
class Multiplier:
    """Linked pair: ``w·s = left[s]`` and ``s·w = right[s]`` on an ideal."""

    domain: tuple
    left: dict
    right: dict

    @cached_property
    def key(self):
        return (self.domain, tuple(self.left[s] for s in self.domain), tuple(self.right[s] for s in self.domain))

    def __eq__(self, other):
        return isinstance(other, Multiplier) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def lmul(self, s):
        return self.left[s]

    def rmul(self, s):
        return self.right[s]

    def compose(self, other):
        """``self·other``: left parts compose as L∘L′, right parts as R′∘R."""
        if self.domain != other.domain:
            raise MalformedInput("multipliers live on different ideals")
        left = {s: self.left[other.left[s]] for s in self.domain}
        right = {s: other.right[self.right[s]] for s in self.domain}
        return Multiplier(self.domain, left, right)

    def is_invertible(self):
        return len(set(self.left.values())) == len(self.domain) == len(set(self.right.values()))

    def inverse(self):
        if not self.is_invertible():
            raise InternalInvariantViolation("multiplier is not invertible")
        left = {v: k for k, v in self.left.items()}
        right = {v: k for k, v in self.right.items()}
        return Multiplier(self.domain, left, right)

    def restrict(self, sub):
        sub = tuple(sorted(sub))
        left = {s: self.left[s] for s in sub}
        right = {s: self.right[s] for s in sub}
        for s in sub:
            if left[s] not in left or right[s] not in right:
                raise MalformedInput("restriction target is not invariant", (s,))
        return Multiplier(sub, left, right)

    def is_identity(self):
        return all(self.left[s] == s == self.right[s] for s in self.domain)

    def __repr__(self):
        return f"Multiplier(L={[self.left[s] for s in self.domain]}, R={[self.right[s] for s in self.domain]})"


def identity_multiplier(domain):
    domain = tuple(sorted(domain))
    return Multiplier(domain, {s: s for s in domain}, {s: s for s in domain})


def element_multiplier(A, domain, c):
    """Multiplier a ↦ ca, a ↦ ac of an element c of A on an ideal."""
    domain = tuple(sorted(domain))
    return Multiplier(domain, {s: A.mul(c, s) for s in domain}, {s: A.mul(s, c) for s in domain})


def multiplier_witness(A, w):
    """First violated law among w(st) = (ws)t, (st)w = s(tw), s(wt) = (sw)t."""
    dom = w.domain
    for s in dom:
        for t in dom:
            st = A.mul(s, t)
            if w.left[st] != A.mul(w.left[s], t):
                return ("i'", s, t)
            if w.right[st] != A.mul(s, w.right[t]):
                return ("ii'", s, t)
            if A.mul(s, w.left[t]) != A.mul(w.right[s], t):
                return ("iii'", s, t)
    return None


def _translations(A, dom, side):
    """Left (side='L') or right translations of the ideal, determined by idempotent values."""
    idem = [e for e in dom if e in A.idempotent_set]
    domset = set(dom)
    cands = []
    for e in idem:
        if side == "L":
            cands.append([x for x in dom if A.mul(x, e) == x])
        else:
            cands.append([x for x in dom if A.mul(e, x) == x])
    out = []
    for choice in product(*cands):
        val = dict(zip(idem, choice))
        ok = True
        for e in idem:
            for f in idem:
                ef = A.mul(e, f)
                if side == "L" and val[ef] != A.mul(val[e], f):
                    ok = False
                    break
                if side == "R" and val[ef] != A.mul(e, val[f]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if side == "L":
            m = {a: A.mul(val[A.comp(a)], a) for a in dom}
            good = all(m[A.mul(s, t)] == A.mul(m[s], t) for s in dom for t in dom)
        else:
            m = {a: A.mul(a, val[A.comp(a)]) for a in dom}
            good = all(m[A.mul(s, t)] == A.mul(s, m[t]) for s in dom for t in dom)
        if good and all(v in domset for v in m.values()):
            out.append(m)
    return out


@dataclass(frozen=True, eq=False)
class MultiplierMonoid:
    ideal: Ideal
    elements: tuple
    table: tuple
    identity: int
    units: tuple
    unit_iso: tuple = None

    def index(self, w):
        return self._index[w]

    @cached_property
    def _index(self):
        return {w: k for k, w in enumerate(self.elements)}

    def unit_multipliers(self):
        return [self.elements[k] for k in self.units]


def multiplier_monoid(I, cap=DEFAULT_MULT_CAP):
    """All multipliers of I under composition, with the unit group and (if unital) M(I) ≅ I."""
    A = I.parent
    if len(I) > cap:
        raise SizeCapExceeded(f"multiplier enumeration capped at |I| <= {cap}", (len(I),))
    dom = I.sorted
    lefts = _translations(A, dom, "L")
    rights = _translations(A, dom, "R")
    mults = []
    for L in lefts:
        for R in rights:
            if all(A.mul(s, L[t]) == A.mul(R[s], t) for s in dom for t in dom):
                mults.append(Multiplier(dom, L, R))
    mults.sort(key=lambda w: w.key)
    for w in mults:
        wit = multiplier_witness(A, w)
        if wit is not None:
            raise InternalInvariantViolation("enumerated pair is not a multiplier", wit)
    index = {w: k for k, w in enumerate(mults)}
    table = []
    for w in mults:
        row = []
        for v in mults:
            c = w.compose(v)
            if c not in index:
                raise InternalInvariantViolation("multipliers not closed under composition")
            row.append(index[c])
        table.append(tuple(row))
    ident = index.get(identity_multiplier(dom))
    if ident is None:
        raise InternalInvariantViolation("identity multiplier missing")
    units = tuple(
        k for k in range(len(mults))
        if any(table[k][m] == ident == table[m][k] for m in range(len(mults)))
    )
    for k in units:
        if not mults[k].is_invertible():
            raise InternalInvariantViolation("unit with non-bijective translation")
    unit_iso = None
    if I.is_unital:
        one = I.unit
        phi = tuple(w.left[one] for w in mults)
        if sorted(phi) != list(dom):
            raise InternalInvariantViolation("w -> w.1 is not a bijection onto I")
        for a in range(len(mults)):
            for b in range(len(mults)):
                if phi[table[a][b]] != A.mul(phi[a], phi[b]):
                    raise InternalInvariantViolation("w -> w.1 is not multiplicative", (a, b))
        for k, w in enumerate(mults):
            if w != element_multiplier(A, dom, phi[k]):
                raise InternalInvariantViolation("multiplier is not given by its value at 1", (k,))
        unit_iso = phi
    return MultiplierMonoid(I, tuple(mults), tuple(table), ident, units, unit_iso)


def is_multiplier(A, w):
    return multiplier_witness(A, w) is None


# ---------------------------------------------------------------------------
# endomorphisms


def endomorphisms(A, cap=DEFAULT_ENDO_CAP):
    """All endomorphisms of A, pruned by choosing idempotent images first."""
    if A.n > cap:
        raise SizeCapExceeded(f"endomorphism enumeration capped at |A| <= {cap}", (A.n,))
    idem = list(A.idempotents)
    E, embed = A.base.base.subsemigroup(idem)
    e_cands = [list(range(E.n)) for _ in range(E.n)]
    out = []
    for em in _search_maps(E, E, e_cands, injective=False):
        on_idem = {embed[k]: embed[em[k]] for k in range(E.n)}
        cands = [sorted(A.components[on_idem[A.comp(a)]]) for a in range(A.n)]
        for a in idem:
            cands[a] = [on_idem[a]]
        out.extend(_search_maps(A.base.base, A.base.base, cands, injective=False))
    out.sort()
    return out


@dataclass(frozen=True, eq=False)
class RelInvertibleEndo:
    parent: CliffordAlgebra
    map: tuple
    bar: tuple
    e_phi: int

    def __call__(self, a):
        return self.map[a]

    @property
    def f_phi(self):
        return self.map[self.e_phi]

    def restriction(self):
        """φ restricted to e_φA, as a dict."""
        return {a: self.map[a] for a in self.parent.principal_ideal(self.e_phi)}


def rel_invertible_witness(A, phi, bar, e):
    """Check Definition-style conditions (i) and (ii); return a failing tuple or None."""
    for a in range(A.n):
        if bar[phi[a]] != A.mul(e, a):
            return ("i-bar-phi", a)
        if phi[bar[a]] != A.mul(phi[e], a):
            return ("i-phi-bar", a)
    for a in range(A.n):
        x = bar[a]
        if A.mul(e, x) != x or A.mul(x, e) != x:
            return ("ii-e", a)
        y = phi[a]
        f = phi[e]
        if A.mul(f, y) != y or A.mul(y, f) != y:
            return ("ii-f", a)
    if e not in {bar[a] for a in range(A.n)}:
        return ("ii-e-member",)
    return None


def as_rel_invertible(A, phi):
    """Return RelInvertibleEndo for ``phi`` or None.

    e_φ, if it exists, is the unique idempotent with φ(ea) = φ(a) on which φ|eA is an
    isomorphism onto φ(e)A; φ̄ is then ψ⁻¹(φ(e)·a) and the result is re-verified.
    """
    for e in A.idempotents:
        if any(phi[A.mul(e, a)] != phi[a] for a in range(A.n)):
            continue
        f = phi[e]
        eA = A.principal_ideal(e)
        fA = A.principal_ideal(f)
        image = sorted({phi[a] for a in eA})
        if image != list(fA) or len(image) != len(eA):
            continue
        back = {phi[a]: a for a in eA}
        bar = tuple(back[A.mul(f, a)] for a in range(A.n))
        if rel_invertible_witness(A, phi, bar, e) is None:
            return RelInvertibleEndo(A, tuple(phi), bar, e)
    return None


def rel_invertible_endos(A, cap=DEFAULT_ENDO_CAP):
    ends = endomorphisms(A, cap)
    out = []
    for phi in ends:
        r = as_rel_invertible(A, phi)
        if r is not None:
            out.append(r)
    maps = {r.map for r in out}
    for r in out:
        if r.bar not in maps:
            raise InternalInvariantViolation("bar of a relatively invertible endo is not one", r.map)
        for s in out:
            comp = tuple(r.map[s.map[a]] for a in range(A.n))
            if comp not in maps:
                raise InternalInvariantViolation("iend not closed under composition", (r.map, s.map))
    return out


def inner_endo(A, b):
    phi = tuple(A.xi(b, a) for a in range(A.n))
    bar = tuple(A.xi(A.inv[b], a) for a in range(A.n))
    return RelInvertibleEndo(A, phi, bar, A.comp(b))


# ---------------------------------------------------------------------------
# isomorphisms between unital ideals


@dataclass(frozen=True)
class UnitalIdealIso:
    source: int
    target: int
    pairs: tuple

    @cached_property
    def as_dict(self):
        return dict(self.pairs)

    def __call__(self, a):
        return self.as_dict[a]


def unital_ideal_isos(A):
    out = []
    for e in A.idempotents:
        eA = A.principal_ideal(e)
        Se, emb_e = A.base.base.subsemigroup(eA)
        for f in A.idempotents:
            fA = A.principal_ideal(f)
            if len(fA) != len(eA):
                continue
            Sf, emb_f = A.base.base.subsemigroup(fA)
            for h in iter_isomorphisms(Se, Sf):
                pairs = tuple((emb_e[k], emb_f[h.map[k]]) for k in range(Se.n))
                out.append(UnitalIdealIso(e, f, pairs))
    return out


def compose_partial(A, psi, chi):
    """ψ∘χ as a partial isomorphism: defined on χ⁻¹(dom ψ)."""
    dpsi = psi.as_dict
    pairs = tuple((a, dpsi[b]) for a, b in chi.pairs if b in dpsi)
    dom = [a for a, _ in pairs]
    idem = [a for a in dom if a in A.idempotent_set]
    top = [e for e in idem if all(A.mul(e, x) == x for x in dom)]
    if len(top) != 1:
        raise InternalInvariantViolation("composite domain is not a unital ideal")
    return UnitalIdealIso(top[0], dict(pairs)[top[0]], pairs)


def extend_partial(A, psi):
    """φ_ψ(a) = ψ(ea)."""
    d = psi.as_dict
    return tuple(d[A.mul(psi.source, a)] for a in range(A.n))


@dataclass(frozen=True, eq=False)
class IendIuiMatch:
    forward: dict
    iend: tuple
    iui: tuple


def iend_iui_isomorphism(A, cap=DEFAULT_ENDO_CAP):
    """Verified bijection φ ↦ φ|_{e_φA} from iend(A) onto I_ui(A)."""
    iend = rel_invertible_endos(A, cap)
    iui = unital_ideal_isos(A)
    key = {(p.source, p.pairs): k for k, p in enumerate(iui)}
    forward = {}
    for k, r in enumerate(iend):
        restr = tuple(sorted(r.restriction().items()))
        target = key.get((r.e_phi, restr))
        if target is None:
            raise InternalInvariantViolation("restriction is not an isomorphism of unital ideals", r.map)
        if target in forward.values():
            raise InternalInvariantViolation("restriction map is not injective", r.map)
        forward[k] = target
    if len(forward) != len(iui):
        raise InternalInvariantViolation("restriction map is not surjective", (len(iend), len(iui)))
    by_map = {r.map: k for k, r in enumerate(iend)}
    for p in iui:
        phi = extend_partial(A, p)
        if phi not in by_map:
            raise InternalInvariantViolation("φ_ψ is not relatively invertible", p.pairs)
        k = by_map[phi]
        if iui[forward[k]] != p or iend[k].e_phi != p.source:
            raise InternalInvariantViolation("ψ -> φ_ψ is not inverse to restriction", p.pairs)
    for p in iui:
        for q in iui:
            pq = compose_partial(A, p, q)
            lhs = extend_partial(A, pq)
            a, b = extend_partial(A, p), extend_partial(A, q)
            rhs = tuple(a[b[x]] for x in range(A.n))
            if lhs != rhs:
                raise InternalInvariantViolation("ψ -> φ_ψ is not multiplicative", (p.pairs, q.pairs))
    idem_maps = sorted(
        r.map for r in iend if tuple(r.map[r.map[a]] for a in range(A.n)) == r.map
    )
    mults = sorted(tuple(A.mul(e, a) for a in range(A.n)) for e in A.idempotents)
    if idem_maps != mults:
        raise InternalInvariantViolation("idempotents of iend are not the multiplications by e")
    return IendIuiMatch(forward, tuple(iend), tuple(iui))


# ---------------------------------------------------------------------------
# constructing Clifford semigroups


def strong_semilattice(meet, groups, maps):
    """Strong semilattice of groups.

    ``meet`` is the Cayley table of a semilattice Y on 0..k-1, ``groups`` a list of
    FiniteGroup, and ``maps[(α, β)]`` (β < α) a tuple giving φ_{α,β}: G_α -> G_β.
    Missing identity maps are filled in.
    """
    k = len(meet)
    phis = dict(maps)
    for a in range(k):
        phis[(a, a)] = tuple(range(groups[a].n))
    elems = [(a, g) for a in range(k) for g in range(groups[a].n)]

    def op(x, y):
        (a, g), (b, h) = x, y
        c = meet[a][b]
        if (a, c) not in phis or (b, c) not in phis:
            raise MalformedInput("missing structure map", (a, b, c))
        return (c, groups[c].mul(phis[(a, c)][g], phis[(b, c)][h]))

    S = FiniteSemigroup.from_operation(elems, op)
    return certify_clifford(inverse_structure(S))


def chain_clifford(groups, maps=None):
    """Clifford semigroup over a chain, top component first; ``maps[i]`` sends G_i to G_{i+1}."""
    k = len(groups)
    meet = [[max(a, b) for b in range(k)] for a in range(k)]
    if maps is None:
        maps = [tuple(groups[i + 1].e for _ in range(groups[i].n)) for i in range(k - 1)]
    full = {}
    for a in range(k):
        cur = tuple(range(groups[a].n))
        for b in range(a + 1, k):
            cur = tuple(maps[b - 1][x] for x in cur)
            full[(a, b)] = cur
    return strong_semilattice(meet, groups, full)


def chain_catalog(group_choices, max_height=3, max_size=5):
    """All chain Clifford semigroups with components from ``group_choices`` and every structure map."""
    out = []
    for h in range(1, max_height + 1):
        for gs in product(group_choices, repeat=h):
            if sum(g.n for g in gs) > max_size:
                continue
            hom_lists = [group_homs(gs[i], gs[i + 1]) for i in range(h - 1)]
            for ms in product(*hom_lists):
                out.append(chain_clifford(list(gs), list(ms)))
    return out
