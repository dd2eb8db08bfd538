"""Brute-force and numeric checks of the closed-form results.

Nothing in here calls into :mod:`lca.topology`; the functions work from
permutations, expanded diagonals and explicit matrices only, so they can be
used to cross-check it.
"""
from __future__ import annotations

from itertools import permutations
from math import factorial

import numpy as np

from .errors import BruteForceCapExceeded, MarginMismatch
from .matcore import (
    check_hermitian,
    check_unitary,
    commutator,
    dagger,
    frobenius_norm,
    make_rng,
    random_unitary,
)
from .spectra import as_profile
from .tables import ContingencyTable, Permutation, block_labels

BRUTE_FORCE_MAX_N = 10
SIGN_TOL_FACTOR = 1e-12


def expanded_diagonals(pi: Permutation, rho_diag, theta_diag):
    """``(a, b)``: ρ's diagonal and the diagonal of ``πθπ†``."""
    return np.asarray(rho_diag, dtype=float), pi.apply(np.asarray(theta_diag, dtype=float))


def synthetic_diagonal(margins) -> np.ndarray:
    """Strictly decreasing stand-in eigenvalues ``r-1, ..., 0`` expanded by ``margins``."""
    margins = as_profile(margins).margins
    return np.repeat(np.arange(len(margins) - 1, -1, -1, dtype=float), margins)


def numeric_signature(a, b, tol: float | None = None) -> tuple[int, int, int]:
    """``(D0, D+, D-)`` by counting the sign of ``(a_β - a_γ)(b_β - b_γ)`` over pairs.

    Every unordered pair contributes two real coordinates: to ``D+`` when the
    product is negative, to ``D-`` when positive, else to ``D0``.  The N
    diagonal phase directions always count towards ``D0``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise MarginMismatch(f"diagonals of shapes {a.shape} and {b.shape}")
    n = a.size
    if tol is None:
        tol = SIGN_TOL_FACTOR * float(np.ptp(a) * np.ptp(b)) if n else 0.0
    beta, gamma = np.triu_indices(n, k=1)
    prod = (a[beta] - a[gamma]) * (b[beta] - b[gamma])
    dplus = 2 * int(np.count_nonzero(prod < -tol))
    dminus = 2 * int(np.count_nonzero(prod > tol))
    return n * n - dplus - dminus, dplus, dminus


def _all_permutations(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(factorial(n), n)


def _check_cap(n: int):
    if n > BRUTE_FORCE_MAX_N:
        raise BruteForceCapExceeded(f"N={n} exceeds the brute-force cap of {BRUTE_FORCE_MAX_N}")


def permutation_sweep(rows, cols, rho_diag=None, theta_diag=None):
    """Run every permutation of ``S_N`` at once.

    Returns ``(perms, tables, triples)``: the ``(N!, N)`` permutation array,
    the row-major flattened overlap table of each permutation and its numeric
    ``(D0, D+, D-)``.  Eigenvalues default to :func:`synthetic_diagonal`.
    """
    rows, cols = as_profile(rows).margins, as_profile(cols).margins
    n = sum(rows)
    if sum(cols) != n:
        raise MarginMismatch(f"row margins sum to {n} but column margins to {sum(cols)}")
    _check_cap(n)
    r, s = len(rows), len(cols)
    perms = _all_permutations(n)
    idx = np.arange(len(perms))

    # position mapping[k] receives the observable's k-th entry
    placed = np.empty_like(perms)
    np.put_along_axis(placed, perms, np.broadcast_to(block_labels(cols), perms.shape), axis=1)
    codes = block_labels(rows)[None, :] * s + placed
    tables = np.zeros((len(perms), r * s), dtype=np.int64)
    for p in range(n):
        np.add.at(tables, (idx, codes[:, p]), 1)

    a = synthetic_diagonal(rows) if rho_diag is None else np.asarray(rho_diag, dtype=float)
    theta = synthetic_diagonal(cols) if theta_diag is None else np.asarray(theta_diag, dtype=float)
    b = np.empty((len(perms), n))
    np.put_along_axis(b, perms, np.broadcast_to(theta, perms.shape), axis=1)
    beta, gamma = np.triu_indices(n, k=1)
    prod = (a[beta] - a[gamma])[None, :] * (b[:, beta] - b[:, gamma])
    tol = SIGN_TOL_FACTOR * float(np.ptp(a) * np.ptp(theta))
    dplus = 2 * np.count_nonzero(prod < -tol, axis=1)
    dminus = 2 * np.count_nonzero(prod > tol, axis=1)
    triples = np.stack([n * n - dplus - dminus, dplus, dminus], axis=1)
    return perms, tables, triples


def brute_force_tables(rows, cols) -> dict[ContingencyTable, int]:
    """Overlap tables of all ``N!`` permutations, with how many permutations give each.

    The returned dict iterates in canonical table order.
    """
    rows, cols = as_profile(rows).margins, as_profile(cols).margins
    _, flat, _ = permutation_sweep(rows, cols)
    r, s = len(rows), len(cols)
    uniq, counts = np.unique(flat, axis=0, return_counts=True)
    out = {}
    for entries, c in zip(uniq.tolist(), counts.tolist()):
        table = ContingencyTable(tuple(tuple(entries[i * s:(i + 1) * s]) for i in range(r)), rows, cols)
        out[table] = int(c)
    return dict(sorted(out.items(), key=lambda kv: kv[0].key()))


def block_unitary(margins, rng) -> np.ndarray:
    """Random element of ``U(m_1) x ... x U(m_s)`` as a block-diagonal matrix."""
    margins = as_profile(margins).margins
    rng = make_rng(rng)
    n = sum(margins)
    out = np.zeros((n, n), dtype=complex)
    start = 0
    for m in margins:
        out[start:start + m, start:start + m] = random_unitary(m, rng)
        start += m
    return out


def _is_block_diagonal(u, margins, tol=1e-12) -> bool:
    mask = np.equal.outer(block_labels(margins), block_labels(margins))
    return bool(np.all(np.abs(u[~mask]) <= tol))


def double_coset_point(pi: Permutation, p, q, rows, cols) -> np.ndarray:
    """``P · U_π · Q`` with ``P`` block-diagonal over θ's blocks and ``Q`` over ρ's."""
    rows, cols = as_profile(rows).margins, as_profile(cols).margins
    p, q = check_unitary(p), check_unitary(q)
    if not _is_block_diagonal(p, cols):
        raise MarginMismatch("P is not block-diagonal over the observable's eigenspaces")
    if not _is_block_diagonal(q, rows):
        raise MarginMismatch("Q is not block-diagonal over the initial state's eigenspaces")
    return check_unitary(p @ pi.unitary() @ q)


def random_critical_point(pi: Permutation, rows, cols, seed) -> np.ndarray:
    """Random point of the double coset ``U(m) π U(n)``, which is critical by construction."""
    rows, cols = as_profile(rows).margins, as_profile(cols).margins
    if len(pi) != sum(rows) or sum(rows) != sum(cols):
        raise MarginMismatch(f"permutation of length {len(pi)} for margins {rows}/{cols}")
    rng = make_rng(seed)
    p = block_unitary(cols, rng)
    q = block_unitary(rows, rng)
    return double_coset_point(pi, p, q, rows, cols)


def _conjugated(u, rho_diag):
    u = np.asarray(u)
    return (u * np.asarray(rho_diag)) @ dagger(u)


def landscape_at(u, rho_diag, theta_diag) -> float:
    """``tr(U ρ U† θ)`` for diagonal ρ and θ."""
    u = np.asarray(u)
    return float(np.real(np.sum(np.abs(u) ** 2 * np.outer(theta_diag, rho_diag))))


def commutator_residual(u, rho_diag, theta_diag) -> float:
    """``||[θ, U ρ U†]||_F``."""
    return frobenius_norm(commutator(np.diag(np.asarray(theta_diag, dtype=complex)), _conjugated(u, rho_diag)))


def hessian_form_value(a, u, rho_diag, theta_diag) -> float:
    """``tr(A X A θ - A² X θ)`` with ``X = U ρ U†``."""
    a = check_hermitian(a)
    x = _conjugated(u, rho_diag)
    theta = np.diag(np.asarray(theta_diag, dtype=complex))
    return float(np.real(np.trace(a @ x @ a @ theta - a @ a @ x @ theta)))


def elementary_hermitian_basis(n: int):
    """Yield ``(label, A)`` over the N² real coordinates of the Hermitian matrices.

    Labels are ``("d", β, β)`` for diagonal units and ``("x"|"y", β, γ)`` for the
    real and imaginary off-diagonal pairs with ``β < γ``.
    """
    for b in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[b, b] = 1.0
        yield ("d", b, b), e
    for b in range(n):
        for g in range(b + 1, n):
            ex = np.zeros((n, n), dtype=complex)
            ex[b, g] = ex[g, b] = 1.0
            yield ("x", b, g), ex
            ey = np.zeros((n, n), dtype=complex)
            ey[b, g] = -1j
            ey[g, b] = 1j
            yield ("y", b, g), ey


def hessian_basis_signature(u, rho_diag, theta_diag, tol: float = 1e-10) -> tuple[int, int, int]:
    """``(D0, D+, D-)`` from the signs of the form on the elementary basis.

    Only meaningful where the form is diagonal in that basis, i.e. at a
    permutation point.
    """
    n = np.asarray(u).shape[0]
    d0 = dplus = dminus = 0
    for _, a in elementary_hermitian_basis(n):
        h = hessian_form_value(a, u, rho_diag, theta_diag)
        if h > tol:
            dplus += 1
        elif h < -tol:
            dminus += 1
        else:
            d0 += 1
    return d0, dplus, dminus
