from collections import Counter
from itertools import permutations
from math import factorial, prod

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lca.errors import EnumerationBudgetExceeded, MarginMismatch
from lca.tables import (
    ContingencyTable,
    Permutation,
    count_tables,
    enumerate_tables,
    permutation_of_table,
    table_of_permutation,
)

# the five tables of the (1,3,4) x (2,6) eight-level case, canonical order
EIGHT_LEVEL = [
    [[0, 1], [0, 3], [2, 2]],
    [[0, 1], [1, 2], [1, 3]],
    [[0, 1], [2, 1], [0, 4]],
    [[1, 0], [0, 3], [1, 3]],
    [[1, 0], [1, 2], [0, 4]],
]


def test_table_validation():
    with pytest.raises(MarginMismatch):
        ContingencyTable(((1, 0), (0, 1)), (1, 1), (2, 0))
    with pytest.raises(MarginMismatch):
        ContingencyTable(((1, 0), (1, 0)), (1, 2), (2, 0))
    with pytest.raises(MarginMismatch):
        ContingencyTable.from_entries([[1, -1], [0, 2]])


def test_table_accessors():
    t = ContingencyTable.from_entries([[0, 1], [0, 3], [2, 2]])
    assert t.row_margins == (1, 3, 4) and t.col_margins == (2, 6)
    assert t.shape == (3, 2) and t.n == 8
    assert t.key() == (0, 1, 0, 3, 2, 2)
    assert t.transpose().tolist() == [[0, 0, 2], [1, 3, 2]]
    assert sorted(t.fingerprint()) == sorted(k for k in t.key() if k)


@pytest.mark.parametrize(
    "rows, cols, expected",
    [
        ((1, 2), (2, 1), [[[0, 1], [2, 0]], [[1, 0], [1, 1]]]),
        ((1, 3, 4), (2, 6), EIGHT_LEVEL),
        ((5,), (5,), [[[5]]]),
        ((1, 1), (1, 1), [[[0, 1], [1, 0]], [[1, 0], [0, 1]]]),
    ],
)
def test_enumerate_examples(rows, cols, expected):
    assert [t.tolist() for t in enumerate_tables(rows, cols)] == expected


@pytest.mark.parametrize(
    "rows, cols, n",
    [((1, 3, 4), (2, 6), 5), ((1, 1, 1), (1, 1, 1), 6), ((2, 2), (1, 1, 1, 1), 6), ((1,) * 12, (1,) * 12, factorial(12))],
)
def test_count_examples(rows, cols, n):
    assert count_tables(rows, cols) == n


def test_count_is_exact_for_large_cases():
    assert count_tables((1,) * 20, (1,) * 20) == factorial(20)
    assert count_tables((10, 10), (1,) * 20) == factorial(20) // factorial(10) ** 2


def test_margin_mismatch():
    with pytest.raises(MarginMismatch):
        enumerate_tables((1, 2), (2, 2))
    with pytest.raises(MarginMismatch):
        count_tables((1, 2), (2, 2))


def test_budget_exceeded_reports_count():
    with pytest.raises(EnumerationBudgetExceeded) as info:
        enumerate_tables((1,) * 6, (1,) * 6, max_tables=100)
    assert info.value.count == 720


def test_swap_example_and_identity():
    assert table_of_permutation(Permutation.swap(3, 1, 2), (1, 2), (2, 1)).tolist() == [[1, 0], [1, 1]]
    assert table_of_permutation(Permutation.identity(3), (1, 2), (2, 1)).tolist() == [[1, 0], [1, 1]]


def test_permutation_multiplicities_small_case():
    counts = Counter(
        table_of_permutation(Permutation(p), (1, 2), (2, 1)).key() for p in permutations(range(3))
    )
    assert sorted(counts.values()) == [2, 4]
    assert counts[(1, 0, 1, 1)] == 4


def test_permutation_basics():
    p = Permutation((2, 0, 1))
    assert p.inverse().inverse() == p
    np.testing.assert_array_equal(p.apply([10, 20, 30]), [20, 30, 10])
    u = p.unitary()
    np.testing.assert_allclose(u.conj().T @ u, np.eye(3))
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_permutation_unitary_realises_apply():
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = Permutation(tuple(rng.permutation(6).tolist()))
        a, b = rng.standard_normal(6), rng.standard_normal(6)
        u = p.unitary()
        lhs = np.trace(u @ np.diag(a) @ u.conj().T @ np.diag(b)).real
        assert lhs == pytest.approx(float(a @ p.apply(b)))


@st.composite
def margin_pairs(draw, max_n=7):
    n = draw(st.integers(1, max_n))

    def comp():
        cuts = draw(st.lists(st.booleans(), min_size=n - 1, max_size=n - 1))
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        return tuple(parts + [run])

    return comp(), comp()


@settings(max_examples=60, deadline=None)
@given(margin_pairs())
def test_enumeration_properties(pair):
    rows, cols = pair
    tables = enumerate_tables(rows, cols)
    assert len(tables) == count_tables(rows, cols)
    keys = [t.key() for t in tables]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for t in tables:
        a = t.array()
        assert tuple(a.sum(axis=1)) == rows and tuple(a.sum(axis=0)) == cols
        # permutation_of_table is a section of table_of_permutation
        assert table_of_permutation(permutation_of_table(t), rows, cols) == t
    # symmetry under transposition
    assert count_tables(cols, rows) == len(tables)


@settings(max_examples=40, deadline=None)
@given(margin_pairs(max_n=6))
def test_permutation_images_cover_all_tables(pair):
    rows, cols = pair
    n = sum(rows)
    images = {table_of_permutation(Permutation(p), rows, cols) for p in permutations(range(n))}
    assert images == set(enumerate_tables(rows, cols))
    # orbit sizes: |stab(rows)| |stab(cols)| / prod k_ij!
    stab = prod(factorial(k) for k in rows) * prod(factorial(k) for k in cols)
    total = sum(stab // prod(factorial(k) for k in t.key()) for t in images)
    assert total == factorial(n)
