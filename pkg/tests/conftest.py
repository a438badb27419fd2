"""Independent brute-force oracles shared by the test modules.

Nothing here touches the bitset kernels: groups are modelled as tuples of
residues with their own index encoding, sets as Python ``frozenset``s.
"""
from __future__ import annotations

import itertools

import pytest
from hypothesis import strategies as st

from kemperman import GroupSet, build_group


class Naive:
    """A finite abelian group as explicit residue tuples (first factor varies fastest)."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        strides, s = [], 1
        for n in self.factors:
            strides.append(s)
            s *= n
        self.strides = strides
        self.order = s
        self.tuples = [self.tup(i) for i in range(s)]

    def tup(self, i):
        return tuple((i // s) % n for s, n in zip(self.strides, self.factors))

    def idx(self, t):
        return sum(c * s for c, s in zip(t, self.strides))

    def add(self, x, y):
        return self.idx(tuple((a + b) % n for a, b, n in zip(self.tup(x), self.tup(y), self.factors)))

    def neg(self, x):
        return self.idx(tuple((-a) % n for a, n in zip(self.tup(x), self.factors)))

    @property
    def all(self):
        return frozenset(range(self.order))

    def sumset(self, A, B):
        return frozenset(self.add(a, b) for a in A for b in B)

    def negset(self, A):
        return frozenset(self.neg(a) for a in A)

    def shift(self, A, g):
        return frozenset(self.add(a, g) for a in A)

    def stabilizer(self, A):
        return frozenset(g for g in range(self.order) if self.shift(A, g) == frozenset(A))

    def is_subgroup(self, H):
        return 0 in H and all(self.add(a, self.neg(b)) in H for a in H for b in H)

    def generated(self, gens):
        H = {0}
        while True:
            grown = H | {self.add(h, g) for h in H for g in gens}
            if grown == H:
                return frozenset(H)
            H = grown

    def subgroups(self):
        """Closures of all generator sets of size <= 2, then joins until nothing new appears."""
        out = {self.generated(gens) for r in (0, 1, 2) for gens in itertools.combinations(range(self.order), r)}
        changed = True
        while changed:
            changed = False
            for H, K in itertools.combinations(sorted(out, key=sorted), 2):
                J = self.generated(H | K)
                if J not in out:
                    out.add(J)
                    changed = True
        return out

    def complement(self, A, U=None):
        U = self.all if U is None else U
        return frozenset(U) - frozenset(A)

    def third(self, A, B, U=None):
        return self.complement(self.negset(self.sumset(A, B)), U)

    def is_trio(self, A, B, C):
        return 0 not in self.sumset(self.sumset(A, B), C)


def naive(G) -> Naive:
    return Naive(G.factors)


def confirm_pure(t, H) -> bool:
    """Naive confirmation that ``t`` is maximal and critical with deficiency ``|H|``."""
    N = naive(t.group)
    A, B, C = (frozenset(X) for X in t.members)
    h = frozenset(H)
    U = frozenset(t.universe)
    maximal = A == N.third(B, C, U) and B == N.third(A, C, U) and C == N.third(A, B, U)
    d = len(A) + len(B) + len(C) - len(U)
    return N.is_subgroup(h) and h <= U and N.is_trio(A, B, C) and maximal and d == len(h) > 0


def fs(X: GroupSet) -> frozenset:
    return frozenset(X)


def gs(G, elems) -> GroupSet:
    return GroupSet.of(G, elems)


def all_subsets(n: int):
    for m in range(1 << n):
        yield frozenset(i for i in range(n) if m >> i & 1)


SMALL_SPECS = ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ3", "Z10"]
MID_SPECS = SMALL_SPECS + ["Z11", "Z12", "Z2xZ6"]


@st.composite
def group_and_sets(draw, specs=tuple(MID_SPECS[1:]), count=2, nonempty=True):
    G = build_group(draw(st.sampled_from(specs)))
    lo = 1 if nonempty else 0
    masks = [draw(st.integers(lo, G.full)) for _ in range(count)]
    return (G, *[GroupSet(G, m) for m in masks])


@pytest.fixture(params=SMALL_SPECS[1:])
def small_group(request):
    return build_group(request.param)
