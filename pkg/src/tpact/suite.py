"""Seeded generator of verified twisted partial actions over a small catalog."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .actions import TwistedPartialAction, conjugate_tpa, trivial_w, verify_tpa
from .clifford import (
    Ideal,
    certify_clifford,
    chain_catalog,
    element_multiplier,
    identity_multiplier,
    ideals,
    multiplier_monoid,
    strong_semilattice,
)
from .errors import AxiomViolation, SizeCapExceeded
from .groups import cyclic, klein, trivial
from .semigroup import iter_isomorphisms

SUITE_CAP = 200


@dataclass(frozen=True)
class SuiteItem:
    name: str
    action: TwistedPartialAction


def _extra_semilattices():
    one = trivial()
    # V: two incomparable idempotents over a zero; diamond: V with a top added.
    v = [[0, 2, 2], [2, 1, 2], [2, 2, 2]]
    diamond = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
    z2 = cyclic(2)
    specs = [("V", v, [one] * 3), ("diamond", diamond, [one] * 4), ("V+Z2", v, [one, one, z2]),
             ("Z2+Z2/V", v, [z2, z2, one]), ("Z2/V/1", v, [z2, one, one])]
    return [(name, strong_semilattice(meet, gs, _collapse_maps(meet, gs))) for name, meet, gs in specs]


def _collapse_maps(meet, groups):
    """Structure maps sending each group onto the identity of the lower one."""
    k = len(meet)
    return {(a, b): tuple(groups[b].e for _ in range(groups[a].n))
            for a in range(k) for b in range(k) if a != b and meet[a][b] == b}


@lru_cache(maxsize=4)
def algebra_catalog(max_size=6):
    """(name, CliffordAlgebra) pairs: every chain of height ≤ 3 over {1, Z2, Z3}, plus a few non-chains."""
    gs = [trivial(), cyclic(2), cyclic(3)]
    out = []
    for k, A in enumerate(chain_catalog(gs, max_height=3, max_size=max_size)):
        sizes = "/".join(str(len(A.components[e])) for e in A.idempotents)
        out.append((f"chain{k}[{sizes}]", A))
    out += [(n, A) for n, A in _extra_semilattices() if A.n <= max_size]
    return tuple(out)


def group_catalog():
    return (("1", trivial()), ("Z2", cyclic(2)), ("Z3", cyclic(3)), ("Z2xZ2", klein()))


def _generators(G):
    gens, seen = [], {G.e}
    for x in range(G.n):
        if x in seen:
            continue
        gens.append(x)
        frontier = set(seen)
        while True:
            new = {G.mul(a, b) for a in frontier | {x} for b in frontier | {x}} - frontier
            if not new:
                break
            frontier |= new
        seen = frontier
    return gens


def group_actions(G, auts):
    """Homomorphisms G -> Aut(A) with automorphisms as tuples; θ_{xy} = θ_x∘θ_y."""
    gens = _generators(G)
    ident = tuple(range(len(auts[0]))) if auts else ()
    out = []

    def extend(choice):
        img = {G.e: ident}
        queue = [G.e]
        while queue:
            x = queue.pop()
            for g, p in zip(gens, choice):
                y = G.mul(x, g)
                q = tuple(img[x][p[a]] for a in range(len(p)))
                if y in img:
                    if img[y] != q:
                        return None
                else:
                    img[y] = q
                    queue.append(y)
        return tuple(img[x] for x in range(G.n))

    def rec(k, choice):
        if k == len(gens):
            got = extend(choice)
            if got is not None:
                out.append(got)
            return
        for p in auts:
            rec(k + 1, choice + [p])

    rec(0, [])
    return out


def automorphisms(A):
    return [h.map for h in iter_isomorphisms(A.base.base, A.base.base)]


def restricted_action(G, A, theta, J):
    """Restrict the global action ``theta`` to the ideal J: 𝒟_x = J ∩ θ_x(J), on the algebra J."""
    B0, embed = A.base.base.subsemigroup(J)
    B = certify_clifford(B0)
    local = {a: k for k, a in enumerate(embed)}
    Jset = set(J)
    doms, maps = [], []
    for x in range(G.n):
        doms.append(frozenset(local[a] for a in Jset if a in {theta[x][b] for b in Jset}))
    for x in range(G.n):
        xi = G.inv[x]
        maps.append({b: local[theta[x][embed[b]]] for b in doms[xi]})
    return verify_tpa(G, B, tuple(doms), tuple(maps), trivial_w(G, doms))


def ideal_actions(G, A, I):
    """𝒟_1 = A and 𝒟_x = I otherwise, with G acting on I by automorphisms."""
    B0, embed = A.base.base.subsemigroup(I)
    B = certify_clifford(B0)
    out = []
    doms = tuple(frozenset(range(A.n)) if x == G.e else frozenset(I) for x in range(G.n))
    for theta in group_actions(G, automorphisms(B)):
        maps = tuple(
            {a: a for a in range(A.n)} if x == G.e else {embed[b]: embed[theta[x][b]] for b in range(B.n)}
            for x in range(G.n)
        )
        out.append(verify_tpa(G, A, doms, maps, trivial_w(G, doms)))
    return out


def _unit_multipliers(A, D, mult_cap):
    M = multiplier_monoid(Ideal(A, D), mult_cap)
    return [M.elements[u] for u in M.units]


def random_conjugate(T, rng, mult_cap=10):
    G, A = T.G, T.A
    eps = []
    for x in range(G.n):
        if x == G.e:
            eps.append(identity_multiplier(tuple(sorted(T.domains[x]))))
            continue
        eps.append(rng.choice(_unit_multipliers(A, T.domains[x], mult_cap)))
    return conjugate_tpa(T, tuple(eps)), tuple(eps)


def cocycle_twists(T, rng, tries=6):
    """Global actions twisted by multiplications with units of A's top group, filtered by the axioms."""
    G, A = T.G, T.A
    if any(len(D) != A.n for D in T.domains):
        return []
    top = [a for a in range(A.n) if A.comp(a) in A.idempotent_set and _is_identity(A, A.comp(a))]
    if not top or G.n == 1:
        return []
    units = sorted(a for a in range(A.n) if A.comp(a) == A.comp(top[0]))
    pairs = [(x, y) for x in range(G.n) for y in range(G.n) if G.e not in (x, y)]
    out = []
    if len(units) ** len(pairs) <= 64:
        choices = _all_assignments(units, len(pairs))
    else:
        choices = [[rng.choice(units) for _ in pairs] for _ in range(tries)]
    full = tuple(range(A.n))
    for vals in choices:
        if all(v == top[0] for v in vals):
            continue
        c = dict(zip(pairs, vals))
        w = {}
        for x in range(G.n):
            for y in range(G.n):
                w[(x, y)] = element_multiplier(A, full, c.get((x, y), top[0]))
        try:
            out.append(verify_tpa(G, A, T.domains, T.theta, w))
        except AxiomViolation:
            continue
    return out


def _is_identity(A, e):
    return all(A.mul(e, a) == a for a in range(A.n))


def _all_assignments(units, k):
    out = [[]]
    for _ in range(k):
        out = [o + [u] for o in out for u in units]
    return out


def generate_suite(seed=0, cap=SUITE_CAP, max_size=6, mult_cap=10):
    """Deterministic list of SuiteItem; a seeded subset is taken when the grid exceeds ``cap``."""
    rng = random.Random(seed)
    items, seen = [], set()

    def add(name, T):
        key = _tpa_key(T)
        if key in seen:
            return
        seen.add(key)
        items.append(SuiteItem(name, T))

    for aname, A in algebra_catalog(max_size):
        auts = automorphisms(A)
        for gname, G in group_catalog():
            if A.n * G.n > 24:
                continue
            for k, theta in enumerate(group_actions(G, auts)):
                base = f"{aname}/{gname}/act{k}"
                glob = verify_tpa(G, A, tuple(frozenset(range(A.n)) for _ in range(G.n)),
                                  tuple(dict(enumerate(t)) for t in theta),
                                  trivial_w(G, tuple(frozenset(range(A.n)) for _ in range(G.n))))
                add(base, glob)
                for j, T in enumerate(cocycle_twists(glob, rng)):
                    add(f"{base}/cocycle{j}", T)
                for I in ideals(A):
                    if len(I.elements) == A.n:
                        continue
                    T = restricted_action(G, A, theta, I.sorted)
                    if all(len(D) == T.A.n for D in T.domains):
                        continue
                    add(f"{base}/restrict{I.sorted}", T)
            if G.n == 1:
                continue
            for I in ideals(A):
                if len(I.elements) == A.n:
                    continue
                for k, T in enumerate(ideal_actions(G, A, I.sorted)):
                    add(f"{aname}/{gname}/on{I.sorted}/{k}", T)
    grid = list(items)
    for item in grid:
        if item.action.G.n == 1:
            continue
        try:
            T, _ = random_conjugate(item.action, rng, mult_cap)
        except SizeCapExceeded:
            continue
        add(f"{item.name}/conj", T)
    if len(items) > cap:
        # sample partial and global actions separately so both stay well represented
        partial = [k for k, it in enumerate(items) if not is_global(it.action)]
        glob = [k for k, it in enumerate(items) if is_global(it.action)]
        half = min(len(partial), cap // 2)
        keep = rng.sample(partial, half) + rng.sample(glob, min(len(glob), cap - half))
        items = [items[k] for k in sorted(keep)]
    return items


def is_global(T):
    return all(len(D) == T.A.n for D in T.domains)


def _tpa_key(T):
    G = T.G
    return (
        T.G.table,
        T.A.table,
        tuple(tuple(sorted(D)) for D in T.domains),
        tuple(tuple(sorted(th.items())) for th in T.theta),
        tuple(T.w[(x, y)].key for x in range(G.n) for y in range(G.n)),
    )
