"""Trios, their deficiency, similarity moves, saturation and purification."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .errors import (
    ContractError,
    CosetNotSplitError,
    EmptySetError,
    GroupMismatchError,
    MalformedSetError,
    NonCriticalSubgroupError,
    NotCriticalError,
    NotSubgroupError,
)
from .groups import Group, GroupSet, Subgroup, iter_bits
from .sets import parse_set, format_set

PERMS = tuple(permutations(range(3)))


@dataclass(frozen=True)
class Trio:
    """Sets ``(A, B, C)`` of a universe ``U <= G`` with ``0`` not in ``A + B + C``.

    ``universe`` defaults to the whole ambient group.  Trios inside a proper
    subgroup (continuations) keep the ambient element labels.
    """

    A: GroupSet
    B: GroupSet
    C: GroupSet
    universe: Optional[Subgroup] = None

    def __post_init__(self):
        G = self.A.group
        if self.B.group != G or self.C.group != G:
            raise GroupMismatchError("trio members live in different groups")
        if self.universe is None:
            object.__setattr__(self, "universe", G.whole())
        elif self.universe.group != G:
            raise GroupMismatchError("universe lives in a different group")
        u = self.universe.mask
        if (self.A.mask | self.B.mask | self.C.mask) & ~u:
            raise ContractError("trio members must lie inside the universe")
        for X in ("A", "B", "C"):
            v = getattr(self, X)
            if type(v) is not GroupSet:
                object.__setattr__(self, X, v.as_set())
        if G.sumset_mask(G.sumset_mask(self.A.mask, self.B.mask), self.C.mask) & 1:
            raise ContractError(f"not a trio: 0 lies in A+B+C for {self}")

    @classmethod
    def from_masks(cls, group: Group, a: int, b: int, c: int, universe: Optional[int] = None) -> "Trio":
        """Build without re-checking the trio condition (callers guarantee it)."""
        t = object.__new__(cls)
        object.__setattr__(t, "A", GroupSet(group, a))
        object.__setattr__(t, "B", GroupSet(group, b))
        object.__setattr__(t, "C", GroupSet(group, c))
        object.__setattr__(t, "universe", Subgroup(group, group.full if universe is None else universe))
        return t

    def __str__(self):
        return ";".join(format_set(X) for X in self.members)

    @property
    def group(self) -> Group:
        return self.A.group

    @property
    def members(self) -> tuple[GroupSet, GroupSet, GroupSet]:
        return (self.A, self.B, self.C)

    @property
    def masks(self) -> tuple[int, int, int]:
        return (self.A.mask, self.B.mask, self.C.mask)

    @property
    def order(self) -> int:
        return self.universe.order

    @property
    def deficiency(self) -> int:
        return trio_deficiency(self)

    @property
    def is_trivial(self) -> bool:
        return not (self.A and self.B and self.C)

    @property
    def is_critical(self) -> bool:
        return self.deficiency > 0

    def __le__(self, other: "Trio") -> bool:
        """Subtrio relation."""
        return all(x <= y for x, y in zip(self.members, other.members))


def _complete(G: Group, u: int, x: int, y: int) -> int:
    """``U \\ -(X+Y)``: the largest third set for ``X, Y``."""
    return u & ~G.neg_mask(G.sumset_mask(x, y))


def make_trio(A: GroupSet, B: GroupSet, universe: Optional[Subgroup] = None) -> Trio:
    """``(A, B, U \\ -(A+B))``."""
    if A.group != B.group:
        raise GroupMismatchError("sets live in different groups")
    if not A or not B:
        raise EmptySetError("make_trio needs nonempty A and B")
    G = A.group
    u = G.full if universe is None else universe.mask
    if (A.mask | B.mask) & ~u:
        raise ContractError("A and B must lie inside the universe")
    return Trio.from_masks(G, A.mask, B.mask, _complete(G, u, A.mask, B.mask), u)


def trio_deficiency(t: Trio) -> int:
    return len(t.A) + len(t.B) + len(t.C) - t.order


def is_maximal(t: Trio) -> bool:
    G, u = t.group, t.universe.mask
    a, b, c = t.masks
    return c == _complete(G, u, a, b) and b == _complete(G, u, a, c) and a == _complete(G, u, b, c)


def saturate(t: Trio, order: tuple[int, ...] = (2, 1, 0)) -> Trio:
    """Grow ``t`` to a maximal supertrio by cyclic completion passes (default C, B, A)."""
    G, u = t.group, t.universe.mask
    sets = list(t.masks)
    changed = True
    while changed:
        changed = False
        for i in order:
            j, k = [x for x in range(3) if x != i]
            new = _complete(G, u, sets[j], sets[k])
            if new != sets[i]:
                sets[i] = new
                changed = True
    return Trio.from_masks(G, *sets, u)


def maximal_supertrios(t: Trio) -> list[Trio]:
    """Distinct saturations over all six pass orders."""
    out = {}
    for order in PERMS:
        s = saturate(t, order)
        out.setdefault(s.masks, s)
    return [out[k] for k in sorted(out)]


# -- similarity --------------------------------------------------------------------


@dataclass(frozen=True)
class Similarity:
    """Permute the members, then translate them by ``shift`` (summing to zero).

    ``apply(t)[i] = t[perm[i]] + shift[i]``.
    """

    perm: tuple[int, int, int] = (0, 1, 2)
    shift: tuple[int, int, int] = (0, 0, 0)

    @classmethod
    def pair_shift(cls, group: Group, g: int, perm=(0, 1, 2)) -> "Similarity":
        """The move ``(A + g, B - g, C)`` after ``perm``."""
        return cls(tuple(perm), (g, group.neg(g), 0))

    def validate(self, group: Group) -> None:
        if sorted(self.perm) != [0, 1, 2]:
            raise ContractError(f"bad permutation {self.perm}")
        x, y, z = (group.check(s) for s in self.shift)
        if group.add(group.add(x, y), z) != 0:
            raise ContractError(f"shifts {self.shift} do not sum to zero")

    @property
    def rank(self) -> tuple:
        return (PERMS.index(tuple(self.perm)), tuple(self.shift))

    def is_identity(self) -> bool:
        return tuple(self.perm) == (0, 1, 2) and not any(self.shift)

    def inverse(self, group: Group) -> "Similarity":
        q = [0, 0, 0]
        for i, p in enumerate(self.perm):
            q[p] = i
        return Similarity(tuple(q), tuple(group.neg(self.shift[q[i]]) for i in range(3)))

    def then(self, other: "Similarity", group: Group) -> "Similarity":
        """Apply ``self`` first, then ``other``."""
        perm = tuple(self.perm[other.perm[i]] for i in range(3))
        shift = tuple(group.add(self.shift[other.perm[i]], other.shift[i]) for i in range(3))
        return Similarity(perm, shift)


def apply_similarity(t: Trio, s: Similarity) -> Trio:
    G = t.group
    s.validate(G)
    u = t.universe.mask
    if any(not u >> x & 1 for x in s.shift):
        raise ContractError("similarity shifts must lie in the trio's universe")
    m = t.masks
    out = [G.translate(m[s.perm[i]], s.shift[i]) for i in range(3)]
    return Trio.from_masks(G, *out, u)


def canonical_form(t: Trio) -> tuple[Trio, Similarity]:
    """Lexicographically least ``(A, B, C)`` bitset triple in the similarity orbit."""
    G = t.group
    u = t.universe.mask
    elems = list(iter_bits(u))
    m = t.masks
    best = None
    for perm in PERMS:
        a, b, c = m[perm[0]], m[perm[1]], m[perm[2]]
        amin, xs = None, []
        for x in elems:
            v = G.translate(a, x)
            if amin is None or v < amin:
                amin, xs = v, [x]
            elif v == amin:
                xs.append(x)
        bmin, ys = None, []
        for y in elems:
            v = G.translate(b, y)
            if bmin is None or v < bmin:
                bmin, ys = v, [y]
            elif v == bmin:
                ys.append(y)
        for x in xs:
            for y in ys:
                z = G.neg(G.add(x, y))
                key = (amin, bmin, G.translate(c, z))
                if best is None or key < best[0]:
                    best = (key, Similarity(perm, (x, y, z)))
    key, sim = best
    return Trio.from_masks(G, *key, u), sim


def canonical_key(t: Trio) -> tuple[int, int, int]:
    return canonical_form(t)[0].masks


# -- purification ----------------------------------------------------------------


def purify(t: Trio, H: GroupSet, R: int) -> Trio:
    """Replace ``(A, B, C)`` by ``(A, B | R, C & S)`` with ``S = U \\ -(A+R)``.

    ``R`` is any element of the coset ``R + H``.  Requires ``t`` critical,
    ``(A, H)`` critical and the coset to split ``B``; the result is a trio whose
    deficiency is at least that of ``t``.
    """
    G, u = t.group, t.universe.mask
    if H.group != G:
        raise GroupMismatchError("subgroup lives in a different group")
    if not G.is_subgroup_mask(H.mask) or H.mask & ~u:
        raise NotSubgroupError(f"{H!r} is not a subgroup of the universe")
    if not u >> G.check(R) & 1:
        raise ContractError("coset representative lies outside the universe")
    a, b, c = t.masks
    if not a:
        raise EmptySetError("purification needs nonempty A")
    if trio_deficiency(t) <= 0:
        raise NotCriticalError("purification needs a critical trio")
    h = H.mask
    if a.bit_count() + h.bit_count() - G.sumset_mask(a, h).bit_count() <= 0:
        raise NonCriticalSubgroupError(f"(A, H) is not critical for H={H!r}")
    coset = G.translate(h, R)
    inter = b & coset
    if inter == 0 or inter == coset:
        raise CosetNotSplitError("the coset must meet B without being contained in it")
    S = _complete(G, u, a, coset)
    return Trio.from_masks(G, a, b | coset, c & S, u)


# -- literal grammar ---------------------------------------------------------------


def parse_trio(text: str, group: Group, universe: Optional[Subgroup] = None) -> Trio:
    parts = text.split(";")
    if len(parts) != 3:
        raise MalformedSetError(f"trio literal needs three ';'-separated sets, got {text!r}")
    A, B, C = (parse_set(p, group, universe) for p in parts)
    return Trio(A, B, C, universe)


def format_trio(t: Trio) -> str:
    return str(t)
