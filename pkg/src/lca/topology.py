"""Closed-form characteristics of critical submanifolds.

Everything here is computed from a contingency table alone, with exact
integer arithmetic; only the landscape value ``J`` touches floating point.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import factorial, prod

import numpy as np

from .errors import InternalInvariantViolation, MarginMismatch
from .spectra import Spectrum, as_profile
from .tables import DEFAULT_MAX_TABLES, ContingencyTable, enumerate_tables

MAXIMUM, MINIMUM, SADDLE, FLAT = "maximum", "minimum", "saddle", "flat"
TRACE_TOL = 1e-9


class RegimeWarning(UserWarning):
    """A closed-form formula was evaluated outside the regime it was derived for."""


@dataclass(frozen=True)
class SubmanifoldRecord:
    table: ContingencyTable
    J: float
    d0: int
    dplus: int
    dminus: int
    kind: str

    def __post_init__(self):
        n = self.table.n
        if self.d0 + self.dplus + self.dminus != n * n:
            raise InternalInvariantViolation(
                f"indices ({self.d0}, {self.dplus}, {self.dminus}) do not sum to N^2={n * n}"
            )


@dataclass
class LandscapeReport:
    records: list[SubmanifoldRecord]
    summary: dict
    rho: Spectrum | None = None
    theta: Spectrum | None = None
    warnings: list[str] = field(default_factory=list)


def index_matrix(t: int) -> np.ndarray:
    """Strictly upper-triangular ones: ``σ_ij = 1`` iff ``i < j``."""
    return np.triu(np.ones((t, t), dtype=np.int64), k=1)


def dimension(table: ContingencyTable) -> int:
    """Dimension of the critical submanifold: ``Σn_i² + Σm_j² - Σk_ij²``."""
    return (
        sum(n * n for n in table.row_margins)
        + sum(m * m for m in table.col_margins)
        - sum(k * k for row in table.entries for k in row)
    )


def signature(table: ContingencyTable) -> tuple[int, int]:
    """``(D+, D-)``: numbers of positive and negative Hessian eigenvalues.

    ``D+ = 2 tr(J_r K J_s Kᵀ)`` counts discordant block pairs and
    ``D- = 2 tr(J_r K J_sᵀ Kᵀ)`` concordant ones.
    """
    k = table.array()
    r, s = k.shape
    jr, js = index_matrix(r), index_matrix(s)
    dplus = 2 * int(np.trace(jr @ k @ js @ k.T))
    dminus = 2 * int(np.trace(jr @ k @ js.T @ k.T))
    return dplus, dminus


def signature_by_pairs(table: ContingencyTable) -> tuple[int, int]:
    """Same as :func:`signature`, by an explicit loop over block pairs.

    Each unordered pair of distinct diagonal positions is counted once: the
    ordered sum over ``(i, j), (p, q)`` with ``i < p`` covers every pair whose
    row blocks differ, and pairs inside a row block contribute zero.
    """
    k = table.entries
    r, s = table.shape
    dplus = dminus = 0
    for i in range(r):
        for p in range(i + 1, r):
            for j in range(s):
                for q in range(s):
                    if j < q:
                        dminus += k[i][j] * k[p][q]
                    elif j > q:
                        dplus += k[i][j] * k[p][q]
    return 2 * dplus, 2 * dminus


def landscape_value(table: ContingencyTable, lam: Spectrum, eps: Spectrum) -> float:
    """``J(K) = Σ_ij k_ij λ_i ε_j``."""
    if table.row_margins != lam.multiplicities or table.col_margins != eps.multiplicities:
        raise MarginMismatch(
            f"table margins {table.row_margins}/{table.col_margins} do not match spectra "
            f"{lam.multiplicities}/{eps.multiplicities}"
        )
    return float(np.array(lam.distinct) @ table.array() @ np.array(eps.distinct))


def classify(d0: int, dplus: int, dminus: int, n: int | None = None) -> str:
    if min(d0, dplus, dminus) < 0:
        raise InternalInvariantViolation(f"negative index in ({d0}, {dplus}, {dminus})")
    if n is not None and d0 + dplus + dminus != n * n:
        raise InternalInvariantViolation(
            f"indices ({d0}, {dplus}, {dminus}) do not sum to N^2={n * n}"
        )
    if dplus == 0 and dminus == 0:
        return FLAT
    if dplus == 0:
        return MAXIMUM
    if dminus == 0:
        return MINIMUM
    return SADDLE


def characterize(table: ContingencyTable, lam: Spectrum, eps: Spectrum) -> SubmanifoldRecord:
    d0 = dimension(table)
    dplus, dminus = signature(table)
    return SubmanifoldRecord(
        table=table,
        J=landscape_value(table, lam, eps),
        d0=d0,
        dplus=dplus,
        dminus=dminus,
        kind=classify(d0, dplus, dminus, table.n),
    )


def _check_extrema(records, r, s):
    kinds = [rec.kind for rec in records]
    if r == 1 or s == 1:
        if kinds != [FLAT]:
            raise InternalInvariantViolation(f"degenerate landscape produced kinds {kinds}")
    elif kinds.count(MAXIMUM) != 1 or kinds.count(MINIMUM) != 1 or FLAT in kinds:
        raise InternalInvariantViolation(
            f"expected one maximum and one minimum, got {kinds.count(MAXIMUM)} and "
            f"{kinds.count(MINIMUM)}"
        )


def analyze(rho: Spectrum, theta: Spectrum, max_tables: int | None = DEFAULT_MAX_TABLES) -> LandscapeReport:
    """Enumerate and characterise every critical submanifold of ``tr(UρU†θ)``.

    Records are sorted by descending ``J``; ties keep canonical table order.
    """
    if rho.n != theta.n:
        raise MarginMismatch(f"rho has dimension {rho.n} but theta has {theta.n}")
    tables = enumerate_tables(rho.multiplicities, theta.multiplicities, max_tables=max_tables)
    records = [characterize(t, rho, theta) for t in tables]
    # stable sort keeps the canonical order among equal J
    records.sort(key=lambda rec: -rec.J)
    _check_extrema(records, rho.r, theta.r)

    notes = []
    if abs(rho.trace() - 1.0) > TRACE_TOL:
        notes.append(f"rho is not unit-trace (tr rho = {rho.trace()!r})")
    summary = {
        "n": rho.n,
        "table_count": len(records),
        "J_max": max(rec.J for rec in records),
        "J_min": min(rec.J for rec in records),
        "maxima": sum(rec.kind == MAXIMUM for rec in records),
        "minima": sum(rec.kind == MINIMUM for rec in records),
        "saddles": sum(rec.kind == SADDLE for rec in records),
        "warnings": notes,
    }
    return LandscapeReport(records, summary, rho, theta, notes)


@dataclass(frozen=True)
class CountReport:
    """Closed-form count for one of the special margin shapes.

    ``indices`` lists ``(D0, D+, D-)`` per table where the closed forms give
    them, in the order the formulas index the tables.  ``max_d0`` is the
    dimension of the global maximum when a formula for it exists.
    """

    case: str
    count: int
    indices: tuple[tuple[int, int, int], ...] | None = None
    max_d0: int | None = None
    common_d0: int | None = None


def _pure_state_indices(n, cols):
    out = []
    for j, m in enumerate(cols):
        out.append((n * (n - 2) + 2 * m, 2 * sum(cols[:j]), 2 * sum(cols[j + 1:])))
    return tuple(out)


def _equal_projector(two_rows, cols):
    """Match ``(n, N-n)`` against ``(n, ..., n, N_0)`` with ``N_0 >= n``; return ``(n, r)``."""
    if len(two_rows) != 2 or len(cols) < 2:
        return None
    k = two_rows[0]
    blocks = cols[:-1]
    if all(b == k for b in blocks) and cols[-1] >= k:
        return k, len(blocks)
    return None


def _molecular(two_rows, cols):
    """Match ``(M, N-M)`` against ``(n_1..n_r, N_0)`` with ``M, N-M >= Σn_i``."""
    if len(two_rows) != 2 or len(cols) < 2:
        return None
    n = sum(cols)
    m = two_rows[0]
    n_list = cols[:-1]
    populated = sum(n_list)
    if m >= populated and n - m >= populated:
        return m, n_list
    return None


def closed_form_counts(rho_profile, theta_profile) -> CountReport | None:
    """Closed-form submanifold count when the margins have a special shape.

    Detection is purely structural.  Cases, in priority order: pure initial
    state, non-degenerate observable, equal-degeneracy projector target and
    the general two-level molecular projector.  Returns ``None`` otherwise.
    """
    rows = as_profile(rho_profile).margins
    cols = as_profile(theta_profile).margins
    n = sum(rows)
    if sum(cols) != n:
        raise MarginMismatch(f"row margins sum to {n} but column margins to {sum(cols)}")

    if n >= 2 and rows == (1, n - 1):
        indices = _pure_state_indices(n, cols)
        return CountReport("pure_state", len(cols), indices, max_d0=indices[0][0])

    if all(m == 1 for m in cols):
        count = factorial(n) // prod(factorial(k) for k in rows)
        d0 = sum(k * k for k in rows)
        return CountReport("nondegenerate_observable", count, max_d0=d0, common_d0=d0)

    orientations = ((rows, cols), (cols, rows))
    for two_rows, other in orientations:
        match = _equal_projector(two_rows, other)
        if match is not None:
            k, r = match
            count = factorial(k + r) // (factorial(k) * factorial(r))
            return CountReport("molecular_equal_projector", count, max_d0=(n - k) ** 2 + k**2)
    for two_rows, other in orientations:
        match = _molecular(two_rows, other)
        if match is not None:
            m, n_list = match
            return CountReport(
                "molecular",
                prod(k + 1 for k in n_list),
                max_d0=n * n - 2 * (n - m) * sum(n_list),
            )
    return None


def max_submanifold_dimension_molecular(n: int, m: int, n_list) -> int:
    """``N² - 2(N-M)(n_1 + ... + n_r)``, dimension of the global maximum for a
    projector onto an ``M``-dimensional target."""
    populated = sum(n_list)
    if not (m > populated and n - m > populated):
        warnings.warn(
            f"M={m} and N-M={n - m} should both exceed sum(n)={populated}",
            RegimeWarning,
            stacklevel=2,
        )
    return n * n - 2 * (n - m) * populated


def molecular_max_table(n: int, m: int, n_list) -> ContingencyTable:
    """Table of the global maximum: rows ``(M, N-M)``, first row ``(n_1..n_r, M-Σn)``."""
    populated = sum(n_list)
    first = tuple(n_list) + (m - populated,)
    second = (0,) * len(n_list) + (n - m,)
    return ContingencyTable((first, second), (m, n - m), tuple(n_list) + (n - populated,))
