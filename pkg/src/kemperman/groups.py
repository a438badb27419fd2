"""Finite abelian groups as explicit direct sums of cyclic factors.

Elements are dense indices in ``[0, |G|)`` using a little-endian mixed-radix
encoding: the residue tuple ``(r1, ..., rk)`` of ``Z_n1 x ... x Z_nk`` maps to
``r1 + n1*r2 + n1*n2*r3 + ...``.  Subsets of a group are Python ints used as
bitsets (bit ``i`` set iff element ``i`` is a member); :class:`GroupSet` wraps
such a mask together with its group.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    ContractError,
    GroupMismatchError,
    GroupOrderError,
    NotGeneratorError,
    NotSubgroupError,
)

MAX_ORDER = 64

_ATOM = re.compile(r"z(\d+)", re.IGNORECASE)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parse_group_spec(text: str) -> tuple[int, ...]:
    """Parse ``Z2xZ4``-style text into a tuple of cyclic orders.

    The empty string (and ``Z1``) denote the trivial group.
    """
    if text == "":
        return ()
    factors = []
    for atom in text.lower().split("x"):
        m = _ATOM.fullmatch(atom)
        if m is None:
            raise ContractError(f"bad group spec {text!r}: expected Z<n> atoms joined by 'x'")
        n = int(m.group(1))
        if n < 1:
            raise ContractError(f"bad group spec {text!r}: cyclic order must be positive")
        if n > 1:
            factors.append(n)
    return tuple(factors)


@dataclass(frozen=True, eq=True)
class Group:
    """Direct sum ``Z_n1 x ... x Z_nk``; the empty factor tuple is the trivial group."""

    factors: tuple[int, ...]

    def __post_init__(self):
        order = 1
        for n in self.factors:
            if not isinstance(n, int) or n < 2:
                raise ContractError(f"cyclic factor orders must be integers >= 2, got {self.factors}")
            order *= n
        if order > MAX_ORDER:
            raise GroupOrderError(f"group order {order} exceeds the {MAX_ORDER}-element word size")

    def __repr__(self):
        return f"Group({self.spec!r})"

    def __str__(self):
        return self.spec

    @property
    def spec(self) -> str:
        return "x".join(f"Z{n}" for n in self.factors) if self.factors else "Z1"

    @cached_property
    def order(self) -> int:
        order = 1
        for n in self.factors:
            order *= n
        return order

    def __len__(self):
        return self.order

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out, s = [], 1
        for n in self.factors:
            out.append(s)
            s *= n
        return tuple(out)

    @cached_property
    def full(self) -> int:
        return (1 << self.order) - 1

    # -- elements -----------------------------------------------------------

    def check(self, x: int) -> int:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.order:
            raise ContractError(f"element {x!r} out of range for {self.spec} (order {self.order})")
        return x

    def coords(self, x: int) -> tuple[int, ...]:
        self.check(x)
        return self._coords[x]

    @cached_property
    def _coords(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for x in range(self.order):
            out.append(tuple((x // s) % n for s, n in zip(self.strides, self.factors)))
        return tuple(out)

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise ContractError(f"{self.spec} expects {len(self.factors)} coordinates, got {tuple(coords)}")
        return sum((c % n) * s for c, n, s in zip(coords, self.factors, self.strides))

    @cached_property
    def _add_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for x in range(self.order):
            cx = self._coords[x]
            rows.append(tuple(
                sum(((a + b) % n) * s for a, b, n, s in zip(cx, self._coords[y], self.factors, self.strides))
                for y in range(self.order)
            ))
        return tuple(rows)

    @cached_property
    def _neg_table(self) -> tuple[int, ...]:
        return tuple(self._add_table[x].index(0) for x in range(self.order))

    def add(self, x: int, y: int) -> int:
        return self._add_table[self.check(x)][self.check(y)]

    def neg(self, x: int) -> int:
        return self._neg_table[self.check(x)]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def multiple(self, k: int, x: int) -> int:
        return self.index([k * c for c in self.coords(x)])

    def element_order(self, x: int) -> int:
        k, y = 1, self.check(x)
        while y != 0:
            y = self._add_table[y][x]
            k += 1
        return k

    # -- bitset kernels -----------------------------------------------------

    @cached_property
    def _shift_masks(self):
        # hi[i][c]: positions whose i-th coordinate is >= c; lo[i][c]: < c
        hi, lo = [], []
        for i, n in enumerate(self.factors):
            hi_i, lo_i = [], []
            for c in range(n):
                h = 0
                for x in range(self.order):
                    if self._coords[x][i] >= c:
                        h |= 1 << x
                hi_i.append(h)
                lo_i.append(self.full ^ h)
            hi.append(tuple(hi_i))
            lo.append(tuple(lo_i))
        return tuple(hi), tuple(lo)

    def translate(self, mask: int, g: int) -> int:
        """Return the bitset of ``g + mask`` using blocked shifts per factor."""
        if g == 0 or mask == 0:
            return mask
        hi, lo = self._shift_masks
        cg = self._coords[g]
        for i, c in enumerate(cg):
            if c:
                s = self.strides[i]
                mask = ((mask << (c * s)) & hi[i][c]) | ((mask >> ((self.factors[i] - c) * s)) & lo[i][c])
        return mask

    @cached_property
    def _neg_chunks(self):
        tables = []
        for base in range(0, self.order, 8):
            table = []
            for byte in range(256):
                out = 0
                for j in range(8):
                    if byte >> j & 1 and base + j < self.order:
                        out |= 1 << self._neg_table[base + j]
                table.append(out)
            tables.append(tuple(table))
        return tuple(tables)

    def neg_mask(self, mask: int) -> int:
        out = 0
        for i, table in enumerate(self._neg_chunks):
            out |= table[(mask >> (8 * i)) & 0xFF]
        return out

    def sumset_mask(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if a.bit_count() > b.bit_count():
            a, b = b, a
        out = 0
        for x in iter_bits(a):
            out |= self.translate(b, x)
        return out

    def stabilizer_mask(self, mask: int) -> int:
        if mask == 0:
            return self.full
        x0 = (mask & -mask).bit_length() - 1
        out = 0
        # g + mask = mask forces g + x0 in mask
        for y in iter_bits(mask):
            g = self._add_table[y][self._neg_table[x0]]
            if self.translate(mask, g) == mask:
                out |= 1 << g
        return out

    def generated_mask(self, gens: int) -> int:
        """Bitset of the subgroup generated by the elements of ``gens``."""
        sub = 1
        for g in iter_bits(gens):
            if not sub >> g & 1:
                sub = self._extend(sub, g)
        return sub

    def _extend(self, sub: int, g: int) -> int:
        out, cur = sub, self.translate(sub, g)
        while cur != sub:
            out |= cur
            cur = self.translate(cur, g)
        return out

    def is_subgroup_mask(self, mask: int) -> bool:
        if not mask & 1:
            return False
        return self.sumset_mask(mask, mask) == mask

    @cached_property
    def subgroup_masks(self) -> tuple[int, ...]:
        """Every subgroup bitset, sorted by (order, bitset); breadth-first closure."""
        seen = {1}
        frontier = [1]
        while frontier:
            nxt = []
            for sub in frontier:
                outside = self.full ^ sub
                for g in iter_bits(outside):
                    ext = self._extend(sub, g)
                    if ext not in seen:
                        seen.add(ext)
                        nxt.append(ext)
            frontier = nxt
        return tuple(sorted(seen, key=lambda m: (m.bit_count(), m)))

    def subgroup_masks_within(self, universe: int) -> tuple[int, ...]:
        return tuple(m for m in self.subgroup_masks if m & universe == m)

    def mask_of(self, elements: Iterable[int]) -> int:
        mask = 0
        for x in elements:
            mask |= 1 << self.check(x)
        return mask

    def set(self, elements: Iterable[int] = ()) -> "GroupSet":
        return GroupSet(self, self.mask_of(elements))

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.full)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1)


@lru_cache(maxsize=None)
def _build(factors: tuple[int, ...]) -> Group:
    return Group(factors)


def build_group(spec: str | Sequence[int] | Group) -> Group:
    """Build (and intern) a group from ``"Z2xZ4"`` text or a factor sequence."""
    if isinstance(spec, Group):
        return spec
    if isinstance(spec, str):
        factors = parse_group_spec(spec)
    else:
        factors = tuple(int(n) for n in spec)
        if any(n < 2 for n in factors):
            raise ContractError(f"cyclic factor orders must be >= 2, got {factors}")
    order = 1
    for n in factors:
        order *= n
    if order > MAX_ORDER:
        raise GroupOrderError(f"group order {order} exceeds the {MAX_ORDER}-element word size")
    return _build(factors)


class GroupSet:
    """Immutable subset of a group, stored as a bitset."""

    __slots__ = ("group", "mask")

    def __init__(self, group: Group, mask: int = 0):
        if mask < 0 or mask >> group.order:
            raise ContractError(f"bitset {mask:#x} has bits outside {group.spec}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def of(cls, group: Group, elements: Iterable[int]):
        return cls(group, group.mask_of(elements))

    def __len__(self):
        return self.mask.bit_count()

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter_bits(self.mask)

    def __contains__(self, x):
        return isinstance(x, int) and 0 <= x < self.group.order and bool(self.mask >> x & 1)

    def __bool__(self):
        return self.mask != 0

    def __eq__(self, other):
        if not isinstance(other, GroupSet):
            return NotImplemented
        return self.group == other.group and self.mask == other.mask

    def __hash__(self):
        return hash((self.group.factors, self.mask))

    def __repr__(self):
        return "{" + ",".join(map(str, self)) + "}"

    def elements(self) -> list[int]:
        return list(self)

    def _same(self, other: "GroupSet") -> int:
        if not isinstance(other, GroupSet):
            raise TypeError(f"expected GroupSet, got {type(other).__name__}")
        if other.group != self.group:
            raise GroupMismatchError(f"sets live in different groups: {self.group} vs {other.group}")
        return other.mask

    def __or__(self, other):
        return GroupSet(self.group, self.mask | self._same(other))

    def __and__(self, other):
        return GroupSet(self.group, self.mask & self._same(other))

    def __sub__(self, other):
        return GroupSet(self.group, self.mask & ~self._same(other))

    def __le__(self, other):
        return self.mask & ~self._same(other) == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def isdisjoint(self, other) -> bool:
        return self.mask & self._same(other) == 0

    def __add__(self, other):
        if isinstance(other, int):
            return self.shift(other)
        return GroupSet(self.group, self.group.sumset_mask(self.mask, self._same(other)))

    __radd__ = __add__

    def __neg__(self):
        return GroupSet(self.group, self.group.neg_mask(self.mask))

    def shift(self, g: int) -> "GroupSet":
        return GroupSet(self.group, self.group.translate(self.mask, self.group.check(g)))

    def complement(self, universe: "GroupSet | None" = None) -> "GroupSet":
        u = self.group.full if universe is None else self._same(universe)
        return GroupSet(self.group, u & ~self.mask)

    def __invert__(self):
        return self.complement()

    def as_set(self) -> "GroupSet":
        return self if type(self) is GroupSet else GroupSet(self.group, self.mask)


class Subgroup(GroupSet):
    """A subgroup, kept as an element subset of its ambient group."""

    __slots__ = ()

    @classmethod
    def checked(cls, group: Group, mask: int) -> "Subgroup":
        if not group.is_subgroup_mask(mask):
            raise NotSubgroupError(f"{GroupSet(group, mask)!r} is not a subgroup of {group.spec}")
        return cls(group, mask)

    @property
    def members(self) -> GroupSet:
        return GroupSet(self.group, self.mask)

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __repr__(self):
        return "Subgroup(" + super().__repr__() + ")"


def as_subgroup(H: GroupSet) -> Subgroup:
    if isinstance(H, Subgroup):
        return H
    return Subgroup.checked(H.group, H.mask)


def enumerate_subgroups(group: Group) -> list[Subgroup]:
    """All subgroups of ``group`` exactly once, sorted by (order, bitset)."""
    return [Subgroup(group, m) for m in group.subgroup_masks]


# -- quotients -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Canonical map ``U -> U/H`` for a subgroup ``H`` of a universe ``U``.

    Cosets are numbered by their least element.  ``quotient_group`` is an
    explicit direct sum isomorphic to ``U/H``; ``to_coset[q]`` is the coset id of
    quotient element ``q`` and ``from_coset`` its inverse.
    """

    parent: Group
    universe: int
    kernel: Subgroup
    cosets: tuple[int, ...]
    coset_index: dict = field(repr=False)
    quotient_group: Group = None
    to_coset: tuple[int, ...] = field(default=(), repr=False)
    from_coset: tuple[int, ...] = field(default=(), repr=False)
    coset_orders: tuple[int, ...] = field(default=(), repr=False)

    @property
    def order(self) -> int:
        return len(self.cosets)

    def phi(self, x: int) -> int:
        """Quotient-group element index of ``x + H``."""
        return self.from_coset[self.coset_id(x)]

    def coset_id(self, x: int) -> int:
        try:
            return self.coset_index[x]
        except KeyError:
            raise ContractError(f"element {x} is outside the universe") from None

    def coset(self, x: int) -> GroupSet:
        return GroupSet(self.parent, self.cosets[self.coset_id(x)])

    def representative(self, cid: int) -> int:
        m = self.cosets[cid]
        return (m & -m).bit_length() - 1

    def add_ids(self, i: int, j: int) -> int:
        return self.coset_index[self.parent.add(self.representative(i), self.representative(j))]

    @cached_property
    def is_cyclic(self) -> bool:
        return self.order in self.coset_orders

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Coset ids generating ``U/H`` (empty unless the quotient is cyclic)."""
        return tuple(c for c, k in enumerate(self.coset_orders) if k == self.order)

    def generator_representatives(self) -> list[int]:
        return [self.representative(c) for c in self.generators]

    def logs(self, r: int) -> tuple[int, ...]:
        """``logs(r)[c] = t`` with coset ``c = t*(r+H)``; ``r+H`` must generate ``U/H``."""
        return _logs(self, self.coset_id(r))

    def image(self, mask: int) -> int:
        """Bitset over coset ids of the cosets meeting ``mask``."""
        out = 0
        for x in iter_bits(mask):
            out |= 1 << self.coset_index[x]
        return out

    def saturate(self, ids: int) -> int:
        out = 0
        for c in iter_bits(ids):
            out |= self.cosets[c]
        return out


@lru_cache(maxsize=None)
def _logs_cached(q: QuotientMap, cid: int) -> tuple[int, ...]:
    if cid not in q.generators:
        raise NotGeneratorError(f"coset of {q.representative(cid)} does not generate the quotient")
    out = [0] * q.order
    cur = 0
    for t in range(q.order):
        out[cur] = t
        cur = q.add_ids(cur, cid)
    return tuple(out)


def _logs(q, cid):
    return _logs_cached(q, cid)


@lru_cache(maxsize=None)
def _quotient(group: Group, universe: int, kernel: int) -> QuotientMap:
    cosets, index = [], {}
    rest = universe
    while rest:
        x = (rest & -rest).bit_length() - 1
        c = group.translate(kernel, x)
        for y in iter_bits(c):
            index[y] = len(cosets)
        cosets.append(c)
        rest &= ~c
    m = len(cosets)
    reps = [(c & -c).bit_length() - 1 for c in cosets]

    def add_ids(i, j):
        return index[group.add(reps[i], reps[j])]

    orders = []
    for cid in range(m):
        k, cur = 1, cid
        while cur != 0:
            cur = add_ids(cur, cid)
            k += 1
        orders.append(k)

    # Split off a cyclic summand of maximal order, then search the subgroup
    # lattice for a complement and recurse.
    basis = []
    sub_univ = universe
    while True:
        ids = [cid for cid in range(m) if cosets[cid] & sub_univ]
        if len(ids) == 1:
            break
        best = max(ids, key=lambda c: (orders[c], -c))
        cyc = _extend_ids(best, add_ids)
        cyc_mask = 0
        for c in cyc:
            cyc_mask |= cosets[c]
        target = (sub_univ.bit_count()) // orders[best]
        comp = None
        for L in group.subgroup_masks:
            if L & sub_univ == L and L & kernel == kernel and L.bit_count() == target and L & cyc_mask == kernel:
                comp = L
                break
        assert comp is not None, "cyclic summand of maximal order must have a complement"
        basis.append((best, orders[best]))
        sub_univ = comp
    basis.reverse()
    qgroup = build_group([k for _, k in basis])
    to_coset = []
    for q in range(qgroup.order):
        cur = 0
        for (gen, _), coef in zip(basis, qgroup._coords[q]):
            for _ in range(coef):
                cur = add_ids(cur, gen)
        to_coset.append(cur)
    from_coset = [0] * m
    for q, c in enumerate(to_coset):
        from_coset[c] = q
    return QuotientMap(
        parent=group,
        universe=universe,
        kernel=Subgroup(group, kernel),
        cosets=tuple(cosets),
        coset_index=index,
        quotient_group=qgroup,
        to_coset=tuple(to_coset),
        from_coset=tuple(from_coset),
        coset_orders=tuple(orders),
    )


def _extend_ids(g, add_ids):
    out, cur = [0], g
    while cur != 0:
        out.append(cur)
        cur = add_ids(cur, g)
    return out


def quotient(group: Group, H: GroupSet, universe: GroupSet | None = None) -> QuotientMap:
    """Quotient of ``universe`` (default the whole group) by the subgroup ``H``."""
    if H.group != group:
        raise GroupMismatchError("subgroup belongs to a different group")
    u = group.full if universe is None else universe.mask
    if universe is not None and not group.is_subgroup_mask(u):
        raise NotSubgroupError(f"universe {universe!r} is not a subgroup")
    if not group.is_subgroup_mask(H.mask) or H.mask & ~u:
        raise NotSubgroupError(f"{H!r} is not a subgroup of the universe")
    return _quotient(group, u, H.mask)
