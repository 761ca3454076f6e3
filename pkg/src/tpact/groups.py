"""Small finite groups, stored as certified Cayley tables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import NotAGroup
from .semigroup import FiniteSemigroup, group_witness


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    base: FiniteSemigroup
    name: str = ""

    def __post_init__(self):
        w = group_witness(self.base)
        if w is not None:
            raise NotAGroup("table is not a group", w)

    @classmethod
    def from_semigroup(cls, S, name=""):
        return cls(S, name)

    @property
    def n(self):
        return self.base.n

    @property
    def table(self):
        return self.base.table

    @property
    def labels(self):
        return self.base.labels

    @property
    def idempotent_set(self):
        return self.base.idempotent_set

    @cached_property
    def e(self):
        return next(iter(self.base.idempotent_set))

    @cached_property
    def inv(self):
        e = self.e
        return tuple(next(b for b in range(self.n) if self.table[a][b] == e) for a in range(self.n))

    def mul(self, a, b):
        return self.base.table[a][b]

    def product(self, *xs):
        return self.base.product(*xs)

    def order(self, a):
        k, x = 1, a
        while x != self.e:
            x = self.mul(x, a)
            k += 1
        return k

    def __repr__(self):
        return f"FiniteGroup({self.name or self.n})"


def cyclic(k):
    rows = [[(i + j) % k for j in range(k)] for i in range(k)]
    return FiniteGroup(FiniteSemigroup(rows, tuple(range(k))), f"Z{k}" if k > 1 else "1")


def trivial():
    return cyclic(1)


def direct_product(G, H, name=None):
    elems = list(product(range(G.n), range(H.n)))
    S = FiniteSemigroup.from_operation(elems, lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])))
    return FiniteGroup(S, name or f"{G.name}x{H.name}")


def klein():
    return direct_product(cyclic(2), cyclic(2), "Z2xZ2")


def group_homs(G, H):
    """All homomorphisms G -> H as tuples."""
    from .semigroup import iter_homomorphisms

    cands = [list(range(H.n)) for _ in range(G.n)]
    return list(iter_homomorphisms(G.base, H.base, cands))
