"""Eight-level system with ρ multiplicities (1, 3, 4) and a rank-2 projector θ.

Only five critical submanifolds exist, whatever the actual eigenvalues are.
Their dimensions and Hessian indices depend on the tables alone; the landscape
values and hence their ordering depend on the eigenvalues.
"""
from lca import Spectrum, analyze, count_tables
from lca.serialize import render_report_table

theta = Spectrum((1.0, 0.0), (2, 6))
print("number of tables:", count_tables((1, 3, 4), (2, 6)))
print()

for values in [(0.4, 0.12, 0.06), (0.7, 0.1, 0.0)]:
    rho = Spectrum(values, (1, 3, 4))
    print(f"rho eigenvalues {values}")
    print(render_report_table(analyze(rho, theta)))

# any non-degenerate spectrum has up to N! submanifolds instead
print("non-degenerate N=8:", count_tables((1,) * 8, (1,) * 8))
