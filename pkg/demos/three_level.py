"""Three-level walk-through: from a permutation to its contingency table.

ρ = diag(0.4, 0.3, 0.3) and θ = diag(0.4, 0.4, 0.2).  Each of the 3! permutation
matrices is a critical point of J(U) = tr(UρU†θ), but they collapse onto only
two critical submanifolds, one per contingency table.
"""
from itertools import permutations

from lca import Permutation, analyze, build_spectrum, table_of_permutation
from lca.serialize import render_report_table

rho = build_spectrum([0.4, 0.3, 0.3])
theta = build_spectrum([0.4, 0.4, 0.2])
print("rho  :", rho)
print("theta:", theta)
print()

# how often each table is hit by a permutation
hits = {}
for p in permutations(range(3)):
    table = table_of_permutation(Permutation(p), rho.multiplicities, theta.multiplicities)
    hits.setdefault(table.key(), []).append(p)
for key, perms in hits.items():
    print(f"table {key}: {len(perms)} permutations {perms}")
print()

swap = Permutation.swap(3, 1, 2)
print("swapping positions 2 and 3 gives", table_of_permutation(swap, (1, 2), (2, 1)).tolist())
print()

print(render_report_table(analyze(rho, theta)))
