"""Counting critical submanifolds in a few structured cases.

Pure initial states, non-degenerate observables and projectors onto a
target subspace all have closed-form counts.  Each is compared here with the
exact count from the table enumerator.
"""
from lca import closed_form_counts, count_tables, max_submanifold_dimension_molecular
from lca.topology import molecular_max_table, dimension

cases = [
    ((1, 5), (2, 1, 3)),
    ((3, 3), (1, 1, 1, 1, 1, 1)),
    ((4, 6), (1, 1, 8)),
    ((2, 6), (2, 2, 4)),
    ((12, 12), (2, 3, 1, 18)),
]
for rows, cols in cases:
    form = closed_form_counts(rows, cols)
    print(f"rows {rows} cols {cols}: {form.case:26} closed form {form.count:6d}  enumerated {count_tables(rows, cols)}")

print()
n, m, n_list = 10, 4, (1, 1)
print("largest submanifold, N=10, M=4, n=(1,1):", max_submanifold_dimension_molecular(n, m, n_list))
print("table of the maximum:", molecular_max_table(n, m, n_list).tolist(), "dimension", dimension(molecular_max_table(n, m, n_list)))
