import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lca import oracle
from lca.errors import BruteForceCapExceeded, MarginMismatch
from lca.matcore import random_hermitian, random_unitary
from lca.tables import Permutation, enumerate_tables, table_of_permutation


def test_numeric_signature_examples():
    assert oracle.numeric_signature([1, 0], [1, 0]) == (2, 0, 2)
    assert oracle.numeric_signature([0.4, 0.3, 0.3], [0.4, 0.4, 0.2]) == (7, 0, 2)
    assert oracle.numeric_signature([1, 0], [0, 1]) == (2, 2, 0)
    with pytest.raises(MarginMismatch):
        oracle.numeric_signature([1, 0], [1, 0, 0])


def test_brute_force_examples():
    bf = oracle.brute_force_tables((1, 2), (2, 1))
    assert sorted(bf.values()) == [2, 4]
    assert len(oracle.brute_force_tables((1, 1), (1, 1))) == 2
    bf = oracle.brute_force_tables((1, 3, 4), (2, 6))
    assert set(bf) == set(enumerate_tables((1, 3, 4), (2, 6)))
    assert sum(bf.values()) == 40320
    with pytest.raises(BruteForceCapExceeded):
        oracle.brute_force_tables((11,), (11,))


def test_synthetic_diagonal():
    np.testing.assert_array_equal(oracle.synthetic_diagonal((1, 2, 1)), [2, 1, 1, 0])


def test_identity_blocks_give_permutation_matrix():
    pi = Permutation((1, 2, 0))
    u = oracle.double_coset_point(pi, np.eye(3), np.eye(3), (1, 2), (2, 1))
    np.testing.assert_array_equal(u, pi.unitary())
    with pytest.raises(ValueError):
        oracle.double_coset_point(pi, random_unitary(3, 0), np.eye(3), (1, 2), (2, 1))


def test_commutator_residual_examples():
    a, b = np.array([0.5, 0.3, 0.2]), np.array([1.0, 0.5, 0.0])
    for p in [(0, 1, 2), (2, 0, 1), (1, 0, 2)]:
        assert oracle.commutator_residual(Permutation(p).unitary(), a, b) == 0.0
    rng = np.random.default_rng(0)
    for n in range(2, 9):
        a, b = np.sort(rng.uniform(size=n))[::-1], np.sort(rng.uniform(size=n))[::-1]
        assert oracle.commutator_residual(random_unitary(n, n), a, b) > 1e-3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_double_coset_points_are_critical(seed):
    rng = np.random.default_rng(seed)
    rows, cols = (2, 1, 3), (3, 3)
    pi = Permutation(tuple(rng.permutation(6).tolist()))
    u = oracle.random_critical_point(pi, rows, cols, seed)
    a = np.repeat([0.5, 0.3, 0.1], rows)
    b = np.repeat([1.0, -1.0], cols)
    assert oracle.commutator_residual(u, a, b) <= 1e-10
    table = table_of_permutation(pi, rows, cols)
    assert oracle.landscape_at(u, a, b) == pytest.approx(float([0.5, 0.3, 0.1] @ table.array() @ [1.0, -1.0]), abs=1e-12)


def test_landscape_is_invariant_under_stabilizer():
    rows = (2, 1)
    a = np.repeat([0.7, 0.3], rows)
    b = np.array([0.5, 0.4, 0.1])
    u = random_unitary(3, 9)
    q = oracle.block_unitary(rows, 4)
    assert oracle.landscape_at(u @ q, a, b) == pytest.approx(oracle.landscape_at(u, a, b), abs=1e-14)


def test_hessian_form_examples():
    a = np.array([[0, 1], [1, 0]], dtype=complex)
    assert oracle.hessian_form_value(a, np.eye(2), [1, 0], [1, 0]) == pytest.approx(-1.0)
    u = Permutation((0, 1, 2)).unitary()
    h = random_hermitian(3, 2)
    rho, theta = [0.5, 0.3, 0.2], [1.0, 0.5, 0.0]
    assert oracle.hessian_form_value(2.5 * h, u, rho, theta) == pytest.approx(6.25 * oracle.hessian_form_value(h, u, rho, theta))


def test_hessian_flat_directions_vanish():
    # within a degenerate block of ρ the form is flat
    rho, theta = [0.5, 0.5, 0.2], [1.0, 0.5, 0.0]
    e = np.zeros((3, 3), dtype=complex)
    e[0, 1] = e[1, 0] = 1
    assert abs(oracle.hessian_form_value(e, np.eye(3), rho, theta)) <= 1e-10


def test_basis_signature_matches_pair_count():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = 5
        pi = Permutation(tuple(rng.permutation(n).tolist()))
        a = np.repeat([2.0, 1.0, 0.0], (2, 2, 1))
        b = np.repeat([1.0, 0.0], (3, 2))
        got = oracle.hessian_basis_signature(pi.unitary(), a, b)
        assert got == oracle.numeric_signature(*oracle.expanded_diagonals(pi, a, b))


def test_elementary_basis_spans():
    basis = list(oracle.elementary_hermitian_basis(3))
    assert len(basis) == 9
    flat = np.array([np.concatenate([m.real.ravel(), m.imag.ravel()]) for _, m in basis])
    assert np.linalg.matrix_rank(flat) == 9


def test_permutation_sweep_shapes():
    perms, tables, triples = oracle.permutation_sweep((1, 2), (2, 1))
    assert perms.shape == (6, 3) and tables.shape == (6, 4) and triples.shape == (6, 3)
    assert (triples.sum(axis=1) == 9).all()
