"""
Sumsets, stabilizers and the Kneser gap
=======================================

Sets live in a finite abelian group as bitsets. This walk-through adds a few
sets in Z12 and measures how far each sumset sits above the Kneser bound.
"""

import numpy as np

from kemperman import GroupSet, build_group, deficiency_pair, stabilizer, sumset
from kemperman.kernels import kernel, popcount

G = build_group("Z12")
A = GroupSet.of(G, [0, 1, 2])
B = GroupSet.of(G, [0, 4, 8])

# The sum of an interval with a subgroup of order 3 is a union of cosets.
S = sumset(A, B)
print("A + B =", S, " stabilizer:", stabilizer(S))
print("deficiency of (A, B):", deficiency_pair(A, B))

# The numpy kernel adds one fixed set to every subset at once.
K = kernel(G)
a = A.mask
sums = K.sums_over_all(a)
H = K.stabilizer(sums)
gap = popcount(sums) - (popcount(K.sumset_scalar(a, H)) + popcount(K.sumset(K.all_masks, H)) - popcount(H))
gap[0] = 0
print("smallest Kneser gap over all partners of A:", int(gap[1:].min()))

# Pairs that meet the bound exactly are the interesting ones.
tight = np.nonzero(gap[1:] == 0)[0] + 1
print(len(tight), "partners B meet the bound with equality, e.g.", GroupSet(G, int(tight[5])))
