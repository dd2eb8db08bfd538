"""Cross-check the closed forms against the brute-force and numeric oracles.

``run_checks`` returns one :class:`CheckResult` per property; a check passes
only with zero mismatches over every margin pair it was given.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import oracle
from .matcore import make_rng, spawn_rngs
from .spectra import Spectrum
from .tables import Permutation, count_tables, enumerate_tables, table_of_permutation
from .topology import closed_form_counts, dimension, signature, signature_by_pairs

RESIDUAL_TOL = 1e-10


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    mismatches: int = 0
    examples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0

    def fail(self, detail):
        self.mismatches += 1
        if len(self.examples) < 5:
            self.examples.append(detail)

    def as_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "mismatches": self.mismatches,
            "examples": self.examples,
        }


def compositions(n: int):
    """All ordered margin vectors of positive parts summing to ``n``."""
    for cuts in product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def random_composition(n: int, rng) -> tuple[int, ...]:
    """Uniform random composition of ``n`` (each of the n-1 gaps cut with probability 1/2)."""
    rng = make_rng(rng)
    cuts = np.flatnonzero(rng.random(n - 1) < 0.5) + 1
    bounds = np.concatenate([[0], cuts, [n]])
    return tuple(int(x) for x in np.diff(bounds))


def margin_corpus(max_n: int = 6, random_pairs: int = 30, random_ns=(7, 8), seed=0):
    """Every pair of compositions with ``N <= max_n`` plus random pairs at larger N."""
    pairs = []
    for n in range(1, max_n + 1):
        comps = list(compositions(n))
        pairs += [(r, c) for r in comps for c in comps]
    rng = make_rng(seed)
    for i in range(random_pairs):
        n = random_ns[i % len(random_ns)]
        pairs.append((random_composition(n, rng), random_composition(n, rng)))
    return pairs


def random_values(margins, rng) -> np.ndarray:
    """Strictly decreasing random eigenvalues, one per block."""
    return np.sort(rng.uniform(-1.0, 1.0, size=len(margins)))[::-1]


def check_pair(rows, cols, results: dict, value_trials: int = 100, rng=None):
    rng = make_rng(rng if rng is not None else 0)
    n = sum(rows)
    tables = enumerate_tables(rows, cols)

    res = results["tables_vs_brute_force"]
    res.cases += 1
    brute = oracle.brute_force_tables(rows, cols)
    if set(tables) != set(brute) or count_tables(rows, cols) != len(tables):
        res.fail({"rows": rows, "cols": cols, "enumerated": len(tables), "brute_force": len(brute)})

    closed = {t.key(): (dimension(t), *signature(t)) for t in tables}

    res = results["numeric_signature_vs_closed_form"]
    perms, flat, triples = oracle.permutation_sweep(rows, cols)
    for key, triple in zip(map(tuple, flat.tolist()), triples.tolist()):
        res.cases += 1
        if closed.get(key) != tuple(triple):
            res.fail({"rows": rows, "cols": cols, "table": key, "numeric": triple, "closed": closed.get(key)})

    res = results["table_of_permutation_vs_sweep"]
    for k in rng.choice(len(perms), size=min(len(perms), 24), replace=False):
        res.cases += 1
        t = table_of_permutation(Permutation(tuple(perms[k].tolist())), rows, cols)
        if t.key() != tuple(flat[k].tolist()):
            res.fail({"rows": rows, "cols": cols, "perm": perms[k].tolist()})

    res = results["index_sum_and_pair_loop"]
    for t in tables:
        res.cases += 1
        d0, dp, dm = closed[t.key()]
        if d0 + dp + dm != n * n or (dp, dm) != signature_by_pairs(t) or dp % 2 or dm % 2:
            res.fail({"table": t.tolist(), "indices": (d0, dp, dm)})

    res = results["unique_extrema"]
    res.cases += 1
    maxima = [t for t in tables if closed[t.key()][1] == 0]
    minima = [t for t in tables if closed[t.key()][2] == 0]
    if len(rows) >= 2 and len(cols) >= 2:
        ok = len(maxima) == 1 and len(minima) == 1 and maxima[0] != minima[0]
    else:
        ok = len(tables) == 1 and maxima == minima == tables
    if not ok:
        res.fail({"rows": rows, "cols": cols, "maxima": len(maxima), "minima": len(minima)})

    res = results["maximum_attains_max_J"]
    if len(maxima) == 1:
        stack = np.array([t.array() for t in tables], dtype=float)
        top = tables.index(maxima[0])
        for _ in range(value_trials):
            res.cases += 1
            lam, eps = random_values(rows, rng), random_values(cols, rng)
            values = np.einsum("i,tij,j->t", lam, stack, eps)
            if values[top] < values.max() - 1e-12 * max(1.0, abs(values.max())):
                res.fail({"rows": rows, "cols": cols, "lam": lam.tolist(), "eps": eps.tolist()})
                break

    form = closed_form_counts(rows, cols)
    if form is not None:
        res = results["closed_form_counts"]
        res.cases += 1
        if form.count != len(tables):
            res.fail({"rows": rows, "cols": cols, "case": form.case, "closed": form.count, "tables": len(tables)})


def check_double_coset_points(samples: int, seed, ns=range(3, 9)) -> CheckResult:
    """Random double-coset points are critical and sit at the level of their table."""
    res = CheckResult("double_coset_points_critical")
    ns = list(ns)
    for k, rng in enumerate(spawn_rngs(seed, samples)):
        n = ns[k % len(ns)]
        rows, cols = random_composition(n, rng), random_composition(n, rng)
        lam = Spectrum(tuple(random_values(rows, rng)), rows)
        eps = Spectrum(tuple(random_values(cols, rng)), cols)
        pi = Permutation(tuple(rng.permutation(n).tolist()))
        u = oracle.random_critical_point(pi, rows, cols, rng)
        a, t = lam.expanded(), eps.expanded()
        table = table_of_permutation(pi, rows, cols)
        expected = float(np.array(lam.distinct) @ table.array() @ np.array(eps.distinct))
        residual = oracle.commutator_residual(u, a, t)
        gap = abs(oracle.landscape_at(u, a, t) - expected)
        res.cases += 1
        if residual > RESIDUAL_TOL or gap > RESIDUAL_TOL:
            res.fail({"rows": rows, "cols": cols, "perm": list(pi.mapping), "residual": residual, "gap": gap})
    return res


def check_hessian_basis(pairs, seed, per_pair: int = 2) -> CheckResult:
    """Signs of the trace-form Hessian on the elementary basis at ``U_π``."""
    res = CheckResult("hessian_trace_form_at_permutations")
    rng = make_rng(seed)
    for rows, cols in pairs:
        n = sum(rows)
        a = np.repeat(random_values(rows, rng), rows)
        t = np.repeat(random_values(cols, rng), cols)
        for _ in range(per_pair):
            pi = Permutation(tuple(rng.permutation(n).tolist()))
            table = table_of_permutation(pi, rows, cols)
            expected = (dimension(table), *signature(table))
            res.cases += 1
            got = oracle.hessian_basis_signature(pi.unitary(), a, t)
            if got != expected:
                res.fail({"rows": rows, "cols": cols, "perm": list(pi.mapping), "numeric": got, "closed": expected})
    return res


PAIR_CHECKS = (
    "tables_vs_brute_force",
    "numeric_signature_vs_closed_form",
    "table_of_permutation_vs_sweep",
    "index_sum_and_pair_loop",
    "unique_extrema",
    "maximum_attains_max_J",
    "closed_form_counts",
)


def run_checks(pairs, seed=0, coset_samples: int = 100, value_trials: int = 100) -> list[CheckResult]:
    results = {name: CheckResult(name) for name in PAIR_CHECKS}
    rngs = spawn_rngs(seed, len(pairs) + 2)
    for (rows, cols), rng in zip(pairs, rngs):
        check_pair(tuple(rows), tuple(cols), results, value_trials=value_trials, rng=rng)
    out = list(results.values())
    out.append(check_double_coset_points(coset_samples, rngs[-2]))
    small = [(r, c) for r, c in pairs if sum(r) <= 5]
    out.append(check_hessian_basis(small[:: max(1, len(small) // 60)], rngs[-1]))
    return out
