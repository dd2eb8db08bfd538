"""Contingency tables with fixed row and column margins.

Each critical submanifold of the landscape corresponds to exactly one
non-negative integer table whose row sums are the multiplicities of the
initial state and whose column sums are those of the observable.  This module
enumerates and counts such tables and maps permutations onto them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .errors import EnumerationBudgetExceeded, MarginMismatch
from .spectra import as_profile

DEFAULT_MAX_TABLES = 10**6


@dataclass(frozen=True)
class ContingencyTable:
    entries: tuple[tuple[int, ...], ...]
    row_margins: tuple[int, ...]
    col_margins: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(tuple(int(k) for k in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "row_margins", tuple(int(n) for n in self.row_margins))
        object.__setattr__(self, "col_margins", tuple(int(m) for m in self.col_margins))
        r, s = len(self.row_margins), len(self.col_margins)
        if len(entries) != r or any(len(row) != s for row in entries):
            raise MarginMismatch(f"table shape does not match margins {r}x{s}")
        if any(k < 0 for row in entries for k in row):
            raise MarginMismatch("table entries must be non-negative")
        if tuple(sum(row) for row in entries) != self.row_margins:
            raise MarginMismatch(f"row sums of {entries} differ from {self.row_margins}")
        if tuple(sum(col) for col in zip(*entries)) != self.col_margins:
            raise MarginMismatch(f"column sums of {entries} differ from {self.col_margins}")

    @classmethod
    def from_entries(cls, entries) -> ContingencyTable:
        """Build a table, reading the margins off its entries."""
        entries = tuple(tuple(int(k) for k in row) for row in entries)
        rows = tuple(sum(row) for row in entries)
        cols = tuple(sum(col) for col in zip(*entries))
        return cls(entries, rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_margins), len(self.col_margins)

    @property
    def n(self) -> int:
        return sum(self.row_margins)

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.shape)

    def key(self) -> tuple[int, ...]:
        """Canonical sort key: row-major flattening."""
        return tuple(k for row in self.entries for k in row)

    def fingerprint(self) -> tuple[int, ...]:
        """Sorted multiset of non-zero entries.

        Two tables with equal fingerprints have isomorphic stabiliser groups.
        """
        return tuple(sorted((k for row in self.entries for k in row if k), reverse=True))

    def transpose(self) -> ContingencyTable:
        return ContingencyTable(tuple(zip(*self.entries)), self.col_margins, self.row_margins)

    def __lt__(self, other):
        return self.key() < other.key()

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``0..N-1``.

    ``mapping[k]`` is the diagonal position that the observable's k-th
    eigenvalue is moved to.
    """

    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(p) for p in self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise MarginMismatch(f"{mapping} is not a permutation of 0..{len(mapping) - 1}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> Permutation:
        mapping = list(range(n))
        mapping[i], mapping[j] = mapping[j], mapping[i]
        return cls(tuple(mapping))

    def __len__(self):
        return len(self.mapping)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.mapping)
        for k, p in enumerate(self.mapping):
            inv[p] = k
        return Permutation(tuple(inv))

    def apply(self, diag) -> np.ndarray:
        """Diagonal of ``π θ π†``: entry k of ``diag`` lands at ``mapping[k]``."""
        diag = np.asarray(diag)
        out = np.empty_like(diag)
        out[list(self.mapping)] = diag
        return out

    def unitary(self) -> np.ndarray:
        """Permutation matrix ``U`` with ``tr(U ρ U† θ) = Σ_p ρ_pp (πθπ†)_pp``."""
        n = len(self.mapping)
        u = np.zeros((n, n), dtype=complex)
        u[np.arange(n), list(self.mapping)] = 1.0
        return u


def _check_totals(rows, cols):
    rows, cols = as_profile(rows), as_profile(cols)
    if rows.n != cols.n:
        raise MarginMismatch(f"row margins sum to {rows.n} but column margins to {cols.n}")
    return rows.margins, cols.margins


def _row_fillings(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` bounded entrywise by ``caps``, in ascending lex order."""
    s = len(caps)
    suffix = [0] * (s + 1)
    for j in range(s - 1, -1, -1):
        suffix[j] = suffix[j + 1] + caps[j]
    row = [0] * s

    def rec(j, remaining):
        if j == s - 1:
            if remaining <= caps[j]:
                row[j] = remaining
                yield tuple(row)
            return
        # what is not placed here must fit in the columns to the right
        lo = max(0, remaining - suffix[j + 1])
        for k in range(lo, min(caps[j], remaining) + 1):
            row[j] = k
            yield from rec(j + 1, remaining - k)

    if total <= suffix[0]:
        yield from rec(0, total)


def _iter_tables(rows, cols):
    r = len(rows)
    caps = list(cols)
    current: list[tuple[int, ...]] = []

    def rec(i):
        if i == r - 1:
            # the last row is forced to the remaining capacity
            yield tuple(current) + (tuple(caps),)
            return
        for fill in _row_fillings(rows[i], caps):
            for j, k in enumerate(fill):
                caps[j] -= k
            current.append(fill)
            yield from rec(i + 1)
            current.pop()
            for j, k in enumerate(fill):
                caps[j] += k

    yield from rec(0)


def enumerate_tables(rows, cols, max_tables: int | None = DEFAULT_MAX_TABLES) -> list[ContingencyTable]:
    """All tables with the given margins, sorted by row-major flattening.

    Rows are filled one at a time, each as a bounded composition of its margin
    against the remaining column capacity.  The count is checked first so that
    oversize requests fail fast with :class:`EnumerationBudgetExceeded`.
    """
    rows, cols = _check_totals(rows, cols)
    if max_tables is not None:
        total = count_tables(rows, cols)
        if total > max_tables:
            raise EnumerationBudgetExceeded(total, max_tables)
    # depth-first over ascending row compositions already yields canonical order
    return [ContingencyTable(e, rows, cols) for e in _iter_tables(rows, cols)]


def _group_splits(cap: int, copies: int, budget: int):
    """Ways to pour at most ``budget`` units into ``copies`` columns of capacity ``cap``.

    Yields ``(residual_caps, used, weight)`` where ``weight`` counts the
    distinct assignments to labelled columns that produce that residual multiset.
    """

    def rec(t, left, budget, residual, weight):
        if t == 0:
            yield residual + [cap] * left, 0, weight
            return
        for x in range(0, min(left, budget // t) + 1):
            w = weight * comb(left, x)
            for res, used, ww in rec(t - 1, left - x, budget - t * x, residual + [cap - t] * x, w):
                yield res, used + t * x, ww

    yield from rec(cap, copies, budget, [], 1)


@lru_cache(maxsize=None)
def _count_from(rows: tuple[int, ...], caps: tuple[int, ...]) -> int:
    # caps is a sorted multiset of residual column capacities
    if len(rows) == 1:
        return 1 if sum(caps) == rows[0] else 0
    groups: dict[int, int] = {}
    for c in caps:
        groups[c] = groups.get(c, 0) + 1
    items = sorted(groups.items())
    need = rows[0]
    total = 0

    def rec(g, budget, residual, weight):
        nonlocal total
        if g == len(items):
            if budget == 0:
                total += weight * _count_from(rows[1:], tuple(sorted(residual)))
            return
        cap, copies = items[g]
        remaining_cap = sum(c * k for c, k in items[g + 1:])
        for res, used, w in _group_splits(cap, copies, budget):
            if budget - used <= remaining_cap:
                rec(g + 1, budget - used, residual + res, weight * w)

    rec(0, need, [], 1)
    return total


def count_tables(rows, cols) -> int:
    """Exact number of tables with the given margins.

    Dynamic programming over the multiset of residual column capacities; never
    materialises a table.
    """
    rows, cols = _check_totals(rows, cols)
    return _count_from(tuple(rows), tuple(sorted(cols)))


def block_labels(margins: Sequence[int]) -> np.ndarray:
    """Block index of every diagonal position, e.g. ``(1, 2) -> [0, 1, 1]``."""
    return np.repeat(np.arange(len(margins)), margins)


def table_of_permutation(pi, rows, cols) -> ContingencyTable:
    """Overlap table of ρ's eigenvalue blocks with the blocks of ``πθπ†``."""
    rows, cols = _check_totals(rows, cols)
    if not isinstance(pi, Permutation):
        pi = Permutation(tuple(pi))
    if len(pi) != sum(rows):
        raise MarginMismatch(f"permutation of length {len(pi)} for N={sum(rows)}")
    row_of = block_labels(rows)
    col_of = pi.apply(block_labels(cols))
    k = np.zeros((len(rows), len(cols)), dtype=np.int64)
    np.add.at(k, (row_of, col_of), 1)
    return ContingencyTable(tuple(map(tuple, k.tolist())), rows, cols)


def permutation_of_table(table: ContingencyTable) -> Permutation:
    """A permutation whose overlap table is ``table``.

    Within each row block the observable's blocks are laid out in column
    order, consuming the observable's positions left to right.
    """
    cols = table.col_margins
    starts = np.concatenate([[0], np.cumsum(cols)[:-1]]).astype(int)
    next_free = list(starts)
    mapping = [0] * table.n
    pos = 0
    for row in table.entries:
        for j, k in enumerate(row):
            for _ in range(k):
                mapping[next_free[j]] = pos
                next_free[j] += 1
                pos += 1
    return Permutation(tuple(mapping))
