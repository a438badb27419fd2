"""Vectorized bitset kernels over numpy ``uint64`` arrays.

Each array entry is one subset of the group.  Translation uses the same
per-factor blocked shifts as :meth:`Group.translate`, so a whole batch of sets
moves in ``O(k)`` array operations.
"""
from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

from .groups import Group, iter_bits

U64 = np.uint64


class BatchKernel:
    def __init__(self, group: Group):
        self.group = group
        self.n = group.order

    @cached_property
    def _moves(self):
        G = self.group
        hi, lo = G._shift_masks
        moves = []
        for g in range(self.n):
            ops = []
            for i, c in enumerate(G._coords[g]):
                if c:
                    s = G.strides[i]
                    ops.append((U64(c * s), U64(hi[i][c]), U64((G.factors[i] - c) * s), U64(lo[i][c])))
            moves.append(tuple(ops))
        return tuple(moves)

    def translate(self, arr: np.ndarray, g: int) -> np.ndarray:
        for left, hmask, right, lmask in self._moves[g]:
            arr = ((arr << left) & hmask) | ((arr >> right) & lmask)
        return arr

    def neg(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros_like(arr)
        negs = self.group._neg_table
        one = U64(1)
        for x in range(self.n):
            out |= ((arr >> U64(x)) & one) << U64(negs[x])
        return out

    def sumset_scalar(self, a: int, arr: np.ndarray) -> np.ndarray:
        out = np.zeros_like(arr)
        for x in iter_bits(a):
            out |= self.translate(arr, x)
        return out

    def sumset(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        out = np.zeros(np.broadcast(left, right).shape, dtype=U64)
        zero = U64(0)
        one = U64(1)
        for g in range(self.n):
            hit = ((left >> U64(g)) & one).astype(bool)
            if hit.any():
                out |= np.where(hit, self.translate(right, g), zero)
        return out

    def stabilizer(self, arr: np.ndarray) -> np.ndarray:
        """Stabilizer bitsets; the empty set maps to the whole group like the scalar path."""
        out = np.zeros_like(arr)
        for g in range(self.n):
            out |= (self.translate(arr, g) == arr).astype(U64) << U64(g)
        return out

    def sums_over_all(self, a: int) -> np.ndarray:
        """``a + B`` for every bitset ``B`` in ``0 .. 2^n - 1`` (index = ``B``)."""
        G = self.group
        out = np.zeros(1 << self.n, dtype=U64)
        for k in range(self.n):
            out[1 << k: 2 << k] = out[: 1 << k] | U64(G.translate(a, k))
        return out

    @cached_property
    def all_masks(self) -> np.ndarray:
        return np.arange(1 << self.n, dtype=U64)

    @cached_property
    def all_popcounts(self) -> np.ndarray:
        return popcount(self.all_masks)

    @property
    def full(self):
        return U64(self.group.full)


def popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr).astype(np.int64)


@lru_cache(maxsize=None)
def kernel(group: Group) -> BatchKernel:
    return BatchKernel(group)
