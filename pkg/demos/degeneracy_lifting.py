"""A tiny perturbation that lifts degeneracies changes the critical topology.

The landscape values barely move, but the number of critical submanifolds
jumps to N! and their dimensions collapse to N.  There are still exactly one
maximum and one minimum.
"""
from lca import Spectrum, analyze, perturbed_spectrum

rho = Spectrum((0.4, 0.3), (1, 2))
theta = Spectrum((0.4, 0.2), (2, 1))

for delta in (None, 1e-3, 1e-6):
    r = rho if delta is None else perturbed_spectrum(rho, delta)
    t = theta if delta is None else perturbed_spectrum(theta, delta)
    report = analyze(r, t)
    label = "degenerate" if delta is None else f"delta={delta:g}"
    kinds = [rec.kind for rec in report.records]
    dims = sorted({rec.d0 for rec in report.records})
    print(f"{label:>12}: {len(report.records)} submanifolds, dimensions {dims}, "
          f"{kinds.count('maximum')} max / {kinds.count('minimum')} min, "
          f"J in [{report.summary['J_min']:.6f}, {report.summary['J_max']:.6f}]")
