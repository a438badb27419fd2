"""
A small structure atlas
=======================

Enumerate every maximal critical trio up to similarity in each abelian group
of order at most 8, then count which kind of structure the first step of its
certificate uses.
"""

from kemperman import check_theorem
from kemperman.oracle import build_atlas
from kemperman.structures import SEARCH_ORDER

kinds = [k.value for k in SEARCH_ORDER]
rows = build_atlas(8)

print("group".ljust(10) + "orbits".rjust(7) + "".join(k.rjust(14) for k in kinds))
for row in rows:
    print(row.group.ljust(10) + str(row.total).rjust(7) + "".join(str(row.first_step[k]).rjust(14) for k in kinds))

# Impure structures first appear once a group has a proper nontrivial subgroup.
first_impure = next(r.group for r in rows if r.first_step["impure-beat"] or r.first_step["impure-chord"])
print("\nfirst group with an impure first step:", first_impure)
print("example:", rows[[r.group for r in rows].index(first_impure)].examples)

# The same enumeration drives the exhaustive theorem check.
report = check_theorem("Z2xZ4", "kemperman")
print("\n" + report.render(), end="")
