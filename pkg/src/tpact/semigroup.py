"""Finite semigroups given by Cayley tables, and inverse-semigroup structure theory.

Elements are the integers ``0..n-1``; all structure lives in the table.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from .errors import (
    InternalInvariantViolation,
    InvalidKNS,
    MalformedInput,
    NotAGroup,
    NotAssociative,
    NotHomomorphism,
    NotInverse,
    NotRegular,
    SizeCapExceeded,
)

DEFAULT_ISO_CAP = 64


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    table: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise MalformedInput("semigroup must have at least one element")
        for i, row in enumerate(table):
            if len(row) != n:
                raise MalformedInput(f"row {i} has {len(row)} entries, expected {n}", (i,))
            for j, x in enumerate(row):
                if not 0 <= x < n:
                    raise MalformedInput(f"entry out of range at ({i},{j})", (i, j, x))
        if self.labels is not None:
            if len(self.labels) != n:
                raise MalformedInput("label count does not match table size")
            object.__setattr__(self, "labels", tuple(self.labels))
        witness = _associativity_witness(table)
        if witness is not None:
            raise NotAssociative("table is not associative", witness)

    @classmethod
    def from_operation(cls, elements, op):
        """Tabulate ``op`` on ``elements`` (any hashable objects); labels are kept."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        try:
            table = [[index[op(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise MalformedInput(f"operation not closed: {exc.args[0]!r}") from None
        return cls(table, tuple(elements))

    @property
    def n(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def product(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = self.table[acc][x]
        return acc

    @cached_property
    def index_of(self):
        if self.labels is None:
            return None
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def idempotent_set(self):
        return frozenset(i for i in range(self.n) if self.table[i][i] == i)

    @cached_property
    def identity(self):
        for e in range(self.n):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(self.n)):
                return e
        return None

    def set_product(self, xs, ys):
        return frozenset(self.table[x][y] for x in xs for y in ys)

    def subsemigroup(self, elements):
        """Return ``(T, embed)`` where ``T`` is the subsemigroup on ``sorted(elements)``."""
        embed = tuple(sorted(elements))
        local = {x: i for i, x in enumerate(embed)}
        rows = []
        for a in embed:
            row = []
            for b in embed:
                c = self.table[a][b]
                if c not in local:
                    raise MalformedInput("subset is not closed under multiplication", (a, b))
                row.append(local[c])
            rows.append(row)
        labels = None if self.labels is None else tuple(self.labels[x] for x in embed)
        return FiniteSemigroup(rows, labels), embed

    def to_sgp(self):
        lines = [str(self.n)]
        lines += [" ".join(str(x) for x in row) for row in self.table]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"FiniteSemigroup(n={self.n})"


def _associativity_witness(table):
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    left = t[t, :]  # left[i,j,k] = (ij)k
    right = t[np.arange(n)[:, None, None], t[None, :, :]]  # right[i,j,k] = i(jk)
    bad = np.argwhere(left != right)
    if bad.size:
        return tuple(int(x) for x in bad[0])
    return None


def load_table(text):
    """Parse ``.sgp`` text into a validated FiniteSemigroup."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedInput("empty .sgp input")
    return parse_sgp_lines(lines)


def parse_sgp_lines(lines):
    try:
        n = int(lines[0])
    except ValueError:
        raise MalformedInput(f"expected element count, got {lines[0]!r}") from None
    if n <= 0:
        raise MalformedInput("element count must be positive")
    if len(lines) != n + 1:
        raise MalformedInput(f"expected {n} table rows, got {len(lines) - 1}")
    rows = []
    for i, ln in enumerate(lines[1:]):
        try:
            rows.append([int(x) for x in ln.split()])
        except ValueError:
            raise MalformedInput(f"non-integer entry in row {i}", (i,)) from None
    return FiniteSemigroup(rows)


@dataclass(frozen=True, eq=False)
class InverseSemigroup:
    base: FiniteSemigroup
    inv: tuple
    idempotents: tuple

    @property
    def n(self):
        return self.base.n

    @property
    def table(self):
        return self.base.table

    @property
    def labels(self):
        return self.base.labels

    def mul(self, a, b):
        return self.base.table[a][b]

    def product(self, *xs):
        return self.base.product(*xs)

    def is_idempotent(self, a):
        return a in self.idempotent_set

    @cached_property
    def idempotent_set(self):
        return frozenset(self.idempotents)

    def dom(self, s):
        """s⁻¹s"""
        return self.base.table[self.inv[s]][s]

    def ran(self, s):
        """ss⁻¹"""
        return self.base.table[s][self.inv[s]]

    @cached_property
    def leq(self):
        """leq[s][t] is True iff s <= t in the natural partial order."""
        n = self.n
        tab = self.base.table
        out = [[False] * n for _ in range(n)]
        for t in range(n):
            for e in self.idempotents:
                out[tab[e][t]][t] = True
        return tuple(tuple(r) for r in out)

    def __repr__(self):
        return f"InverseSemigroup(n={self.n}, |E|={len(self.idempotents)})"


def inverse_structure(S):
    """Certify ``S`` as an inverse semigroup and compute inverses and idempotents."""
    if isinstance(S, InverseSemigroup):
        return S
    tab = S.table
    n = S.n
    inv = []
    for s in range(n):
        cands = [t for t in range(n) if tab[tab[s][t]][s] == s and tab[tab[t][s]][t] == t]
        if not cands:
            raise NotRegular("element has no inverse", (s,))
        if len(cands) > 1:
            raise NotInverse("element has several inverses", (s, cands[0], cands[1]))
        inv.append(cands[0])
    idem = sorted(S.idempotent_set)
    for e in idem:
        for f in idem:
            if tab[e][f] != tab[f][e]:
                raise NotInverse("idempotents do not commute", (e, f))
    return InverseSemigroup(S, tuple(inv), tuple(idem))


def natural_leq(S, s, t):
    """s <= t iff s = et for an idempotent e; cross-checked against s = tf."""
    left = any(S.mul(e, t) == s for e in S.idempotents)
    right = any(S.mul(t, f) == s for f in S.idempotents)
    if left != right:
        raise InternalInvariantViolation("natural order characterizations disagree", (s, t))
    return left


def hasse_pairs(S):
    """Covering pairs (s, t) with s < t and nothing strictly between."""
    leq = S.leq
    n = S.n
    below = [[s for s in range(n) if s != t and leq[s][t]] for t in range(n)]
    out = []
    for t in range(n):
        for s in below[t]:
            if not any(leq[s][u] and u != s for u in below[t]):
                out.append((s, t))
    return sorted(out)


@dataclass(frozen=True, eq=False)
class Congruence:
    parent: object
    class_of: tuple

    def __post_init__(self):
        object.__setattr__(self, "class_of", _normalize_partition(self.class_of))
        w = _compatibility_witness(self.parent, self.class_of)
        if w is not None:
            raise InternalInvariantViolation("partition is not compatible with multiplication", w)

    @cached_property
    def classes(self):
        groups = defaultdict(list)
        for s, c in enumerate(self.class_of):
            groups[c].append(s)
        return tuple(frozenset(groups[c]) for c in range(len(groups)))

    def related(self, s, t):
        return self.class_of[s] == self.class_of[t]

    def contains(self, other):
        """True iff ``other`` ⊆ ``self`` as relations."""
        return all(
            self.class_of[s] == self.class_of[t]
            for cls in other.classes
            for s in cls
            for t in cls
        )

    def same_partition(self, other):
        return self.class_of == other.class_of

    def iker(self):
        """Classes containing an idempotent (the class-set kernel)."""
        idem = self.parent.idempotent_set
        return [c for c in self.classes if c & idem]


def _normalize_partition(class_of):
    relabel = {}
    out = []
    for c in class_of:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


def _compatibility_witness(S, class_of):
    n = S.n
    tab = S.table
    by_class = defaultdict(list)
    for s, c in enumerate(class_of):
        by_class[c].append(s)
    for members in by_class.values():
        s0 = members[0]
        for s1 in members[1:]:
            for t in range(n):
                if class_of[tab[s0][t]] != class_of[tab[s1][t]]:
                    return (s0, s1, t, "right")
                if class_of[tab[t][s0]] != class_of[tab[t][s1]]:
                    return (s0, s1, t, "left")
    return None


def is_congruence(S, class_of):
    return _compatibility_witness(S, class_of) is None


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: object
    target: object
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.n:
            raise MalformedInput("map length does not match source size")
        if any(not 0 <= x < self.target.n for x in self.map):
            raise MalformedInput("map value out of range")
        w = homomorphism_witness(self.source, self.target, self.map)
        if w is not None:
            raise NotHomomorphism("map is not multiplicative", w)

    def __call__(self, s):
        return self.map[s]

    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    def is_surjective(self):
        return len(set(self.map)) == self.target.n

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def then(self, other):
        """``other ∘ self``"""
        return Homomorphism(self.source, other.target, tuple(other.map[x] for x in self.map))

    def inverse(self):
        if not self.is_bijective():
            raise InternalInvariantViolation("inverse of a non-bijective map")
        inv = [0] * len(self.map)
        for s, t in enumerate(self.map):
            inv[t] = s
        return Homomorphism(self.target, self.source, tuple(inv))

    def preimage(self, t):
        return [s for s, x in enumerate(self.map) if x == t]

    def is_idempotent_separating(self):
        idem = sorted(self.source.idempotent_set)
        images = [self.map[e] for e in idem]
        return len(set(images)) == len(images)


def homomorphism_witness(S, T, m):
    st, tt = S.table, T.table
    for a in range(S.n):
        ra = st[a]
        ma = tt[m[a]]
        for b in range(S.n):
            if m[ra[b]] != ma[m[b]]:
                return (a, b)
    return None


def quotient(S, cong):
    """``(S/cong, natural epimorphism)``; class ids are ordered by least member."""
    classes = cong.classes
    reps = [min(c) for c in classes]
    rows = [[cong.class_of[S.mul(r, q)] for q in reps] for r in reps]
    Q = FiniteSemigroup(rows, tuple(tuple(sorted(c)) for c in classes))
    return Q, Homomorphism(S, Q, cong.class_of)


def group_witness(G):
    """Return None if G is a group, else a short reason tuple."""
    idem = sorted(G.idempotent_set)
    if len(idem) != 1:
        return ("idempotents", tuple(idem))
    e = idem[0]
    for a in range(G.n):
        if G.mul(e, a) != a or G.mul(a, e) != a:
            return ("identity", a)
        if not any(G.mul(a, b) == e and G.mul(b, a) == e for b in range(G.n)):
            return ("invertible", a)
    return None


def sigma_congruence(S):
    """Minimum group congruence: s σ t iff es = et for some idempotent e."""
    n = S.n
    tab = S.table
    rel = [[any(tab[e][s] == tab[e][t] for e in S.idempotents) for t in range(n)] for s in range(n)]
    class_of = [-1] * n
    nxt = 0
    for s in range(n):
        if class_of[s] == -1:
            for t in range(n):
                if rel[s][t]:
                    class_of[t] = nxt
            nxt += 1
    for s in range(n):
        for t in range(n):
            if rel[s][t] != (class_of[s] == class_of[t]):
                raise InternalInvariantViolation("sigma is not an equivalence", (s, t))
    try:
        cong = Congruence(S, tuple(class_of))
    except InternalInvariantViolation as exc:
        raise InternalInvariantViolation("sigma is not a congruence", exc.witness) from None
    Q, _ = quotient(S, cong)
    w = group_witness(Q)
    if w is not None:
        raise InternalInvariantViolation("S/sigma is not a group", w)
    return cong


def max_group_image(S):
    """``(S/σ, σ♮)``, certified to be a group."""
    cong = sigma_congruence(S)
    G, nat = quotient(S, cong)
    w = group_witness(G)
    if w is not None:
        raise InternalInvariantViolation("maximum group image is not a group", w)
    return G, nat


def is_e_unitary(S):
    idem = S.idempotent_set
    leq = S.leq
    by_order = all(
        s in idem for e in S.idempotents for s in range(S.n) if leq[e][s]
    )
    sigma = sigma_congruence(S)
    by_sigma = True
    for s in range(S.n):
        for t in range(S.n):
            crit = S.mul(S.inv[s], t) in idem and S.mul(s, S.inv[t]) in idem
            if crit != sigma.related(s, t):
                by_sigma = False
                break
        if not by_sigma:
            break
    if by_order != by_sigma:
        raise InternalInvariantViolation("E-unitary characterizations disagree")
    return by_order


def sigma_maxima(S):
    """Map σ-class id -> maximum element, or None if some class has no maximum."""
    sigma = sigma_congruence(S)
    leq = S.leq
    out = {}
    for cid, cls in enumerate(sigma.classes):
        tops = [m for m in cls if all(leq[s][m] for s in cls)]
        if not tops:
            return None
        out[cid] = tops[0]
    return out


def is_f_inverse(S):
    return sigma_maxima(S) is not None


@dataclass(frozen=True, eq=False)
class KernelNormalSystem:
    parent: InverseSemigroup
    groups: dict

    def __post_init__(self):
        S = self.parent
        groups = {int(e): frozenset(v) for e, v in self.groups.items()}
        object.__setattr__(self, "groups", groups)
        if set(groups) != S.idempotent_set:
            raise InvalidKNS("indexing by E(S)", tuple(sorted(set(groups) ^ S.idempotent_set)))
        for e, N in groups.items():
            if e not in N:
                raise InvalidKNS("identity membership", (e,))
            for a in N:
                if S.mul(e, a) != a or S.mul(a, e) != a:
                    raise InvalidKNS("subgroup identity", (e, a))
                if S.inv[a] not in N:
                    raise InvalidKNS("subgroup inverses", (e, a))
                for b in N:
                    if S.mul(a, b) not in N:
                        raise InvalidKNS("subgroup closure", (e, a, b))
        seen = {}
        for e, N in groups.items():
            for a in N:
                if a in seen:
                    raise InvalidKNS("disjointness", (seen[a], e, a))
                seen[a] = e
        union = frozenset(seen)
        for a in union:
            for b in union:
                if S.mul(a, b) not in union:
                    raise InvalidKNS("subsemigroup closure", (a, b))
        for s in range(S.n):
            for a in union:
                if S.product(s, a, S.inv[s]) not in union:
                    raise InvalidKNS("conjugation closure", (s, a))

    @cached_property
    def union(self):
        return frozenset().union(*self.groups.values())


def congruence_from_kns(S, kns):
    """Idempotent-separating congruence with class of s equal to s·N_{s⁻¹s} = N_{ss⁻¹}·s."""
    n = S.n
    left_classes = []
    for s in range(n):
        left = frozenset(S.mul(u, s) for u in kns.groups[S.ran(s)])
        right = frozenset(S.mul(s, v) for v in kns.groups[S.dom(s)])
        if left != right:
            raise InternalInvariantViolation("N_{ss^-1}s differs from sN_{s^-1s}", (s,))
        left_classes.append(left)
    class_of = [-1] * n
    nxt = 0
    for s in range(n):
        if class_of[s] == -1:
            for t in left_classes[s]:
                class_of[t] = nxt
            nxt += 1
    for s in range(n):
        for t in left_classes[s]:
            if left_classes[t] != left_classes[s]:
                raise InternalInvariantViolation("kernel classes do not partition S", (s, t))
            us = [u for u in kns.groups[S.ran(s)] if S.mul(u, s) == t]
            if us != [S.mul(t, S.inv[s])]:
                raise InternalInvariantViolation("factor u with t = us is not unique", (s, t))
    cong = Congruence(S, tuple(class_of))
    Q, nat = quotient(S, cong)
    if not nat.is_idempotent_separating():
        raise InternalInvariantViolation("kernel congruence is not idempotent-separating")
    return cong, nat


# ---------------------------------------------------------------------------
# isomorphism and homomorphism search


def _element_invariants(S):
    n = S.n
    tab = S.table
    out = []
    for s in range(n):
        seen = {}
        x, k = s, 1
        while x not in seen:
            seen[x] = k
            x = tab[x][s]
            k += 1
        index = seen[x]
        period = k - seen[x]
        row_shape = tuple(sorted(Counter(tab[s]).values()))
        col_shape = tuple(sorted(Counter(tab[r][s] for r in range(n)).values()))
        lfix = sum(1 for r in range(n) if tab[r][s] == s)
        rfix = sum(1 for r in range(n) if tab[s][r] == s)
        out.append((tab[s][s] == s, index, period, row_shape, col_shape, lfix, rfix))
    return out


def _products_landing(S):
    land = defaultdict(list)
    for a in range(S.n):
        for b in range(S.n):
            land[S.table[a][b]].append((a, b))
    return land


def _search_maps(S, T, candidates, injective):
    """Depth-first search for multiplicative maps S -> T, ascending lexicographic order."""
    n = S.n
    st, tt = S.table, T.table
    land = _products_landing(S)
    m = [-1] * n
    used = [False] * T.n

    def consistent(i):
        mi = m[i]
        for b in range(i + 1):
            mb = m[b]
            k = st[i][b]
            if k <= i and tt[mi][mb] != m[k]:
                return False
            k = st[b][i]
            if k <= i and tt[mb][mi] != m[k]:
                return False
        for a, b in land[i]:
            if a <= i and b <= i and tt[m[a]][m[b]] != mi:
                return False
        return True

    def rec(i):
        if i == n:
            yield tuple(m)
            return
        for c in candidates[i]:
            if injective and used[c]:
                continue
            m[i] = c
            if consistent(i):
                if injective:
                    used[c] = True
                yield from rec(i + 1)
                if injective:
                    used[c] = False
            m[i] = -1

    yield from rec(0)


def iter_isomorphisms(S, T, cap=DEFAULT_ISO_CAP):
    if S.n > cap or T.n > cap:
        raise SizeCapExceeded(f"isomorphism search capped at n <= {cap}", (S.n, T.n))
    if S.n != T.n:
        return
    inv_s = _element_invariants(S)
    inv_t = _element_invariants(T)
    if Counter(inv_s) != Counter(inv_t):
        return
    candidates = [[c for c in range(T.n) if inv_t[c] == inv_s[i]] for i in range(S.n)]
    for m in _search_maps(S, T, candidates, injective=True):
        yield Homomorphism(S, T, m)


def find_isomorphism(S, T, cap=DEFAULT_ISO_CAP):
    """Lexicographically least isomorphism S -> T, or None."""
    for h in iter_isomorphisms(S, T, cap):
        if not h.is_bijective():
            raise InternalInvariantViolation("isomorphism search returned a non-bijection")
        return h
    return None


def iter_homomorphisms(S, T, candidates=None):
    if candidates is None:
        t_idem = sorted(T.idempotent_set)
        candidates = [
            t_idem if S.table[i][i] == i else list(range(T.n)) for i in range(S.n)
        ]
    for m in _search_maps(S, T, candidates, injective=False):
        yield m


# ---------------------------------------------------------------------------
# brute-force congruence enumeration


def _set_partitions(n):
    """Restricted growth strings of length n."""
    a = [0] * n

    def rec(i, mx):
        if i == n:
            yield tuple(a)
            return
        for c in range(mx + 2):
            a[i] = c
            yield from rec(i + 1, max(mx, c))

    if n == 0:
        yield ()
        return
    yield from rec(1, 0)


def all_congruences(S, cap=10):
    if S.n > cap:
        raise SizeCapExceeded(f"congruence enumeration capped at n <= {cap}", (S.n,))
    out = []
    for rgs in _set_partitions(S.n):
        if _compatibility_witness(S, rgs) is None:
            out.append(Congruence(S, rgs))
    return out


def group_congruences(S, cap=10):
    out = []
    for c in all_congruences(S, cap):
        Q, _ = quotient(S, c)
        if group_witness(Q) is None:
            out.append(c)
    return out


def as_group_check(S):
    w = group_witness(S)
    if w is not None:
        raise NotAGroup("table is not a group", w)
