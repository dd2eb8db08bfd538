"""Small dense complex-matrix kernel.

Matrices are plain complex ``numpy`` arrays.  The Hermitian eigensolver is a
cyclic Jacobi iteration, which is simple and very accurate for the small
dimensions (N <= 16) this package targets.
"""
from __future__ import annotations

import numpy as np

from .errors import NotHermitian, NotUnitary

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def make_rng(seed) -> np.random.Generator:
    """Counter-based (Philox) generator; passes existing generators through."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def spawn_rngs(seed, n: int) -> list[np.random.Generator]:
    """``n`` independent child streams of ``seed`` (an int, SeedSequence or Generator)."""
    if isinstance(seed, np.random.Generator):
        return seed.spawn(n)
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.Generator(np.random.Philox(child)) for child in ss.spawn(n)]


def _square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def commutator(a, b) -> np.ndarray:
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")
    return a @ b - b @ a


def frobenius_norm(a) -> float:
    return float(np.sqrt(np.sum(np.abs(np.asarray(a)) ** 2)))


def dagger(a) -> np.ndarray:
    return np.asarray(a).conj().T


def unitarity_defect(u) -> float:
    u = np.asarray(u)
    return frobenius_norm(dagger(u) @ u - np.eye(u.shape[0]))


def check_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    u = _square(u)
    defect = unitarity_defect(u)
    if defect > tol:
        raise NotUnitary(f"||U'U - I||_F = {defect:.3e} exceeds {tol:.1e}")
    return u


def check_hermitian(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = _square(h)
    defect = frobenius_norm(h - dagger(h))
    if defect > tol:
        raise NotHermitian(f"||H - H'||_F = {defect:.3e} exceeds {tol:.1e}")
    return h


def hermitian_eigen(h, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(values, vectors)`` with ``values`` descending and
    ``h = vectors @ diag(values) @ vectors†``.  Iteration stops once the
    off-diagonal Frobenius norm drops below ``tol * ||h||_F``.
    """
    a = check_hermitian(h).copy()
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = frobenius_norm(a)
    if n > 1 and scale > 0:
        target = tol * scale
        for _ in range(max_sweeps):
            off = np.sqrt(2.0 * sum(abs(a[p, q]) ** 2 for p in range(n) for q in range(p + 1, n)))
            if off <= target:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    mag = abs(apq)
                    if mag <= 1e-300:
                        continue
                    phase = apq / mag
                    app, aqq = a[p, p].real, a[q, q].real
                    tau = (aqq - app) / (2.0 * mag)
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    # phase rotation makes a[p, q] real, then a real Givens rotation zeroes it
                    g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                    idx = [p, q]
                    a[:, idx] = a[:, idx] @ g
                    a[idx, :] = dagger(g) @ a[idx, :]
                    a[p, q] = a[q, p] = 0.0
                    a[p, p] = a[p, p].real
                    a[q, q] = a[q, q].real
                    v[:, idx] = v[:, idx] @ g
    values = np.real(np.diag(a)).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def reunitarize(u) -> np.ndarray:
    """Nearest unitary matrix (polar factor ``U (U†U)^{-1/2}``)."""
    u = _square(u)
    w, vecs = hermitian_eigen(dagger(u) @ u)
    return u @ (vecs * (1.0 / np.sqrt(w))) @ dagger(vecs)


def exp_from_eigen(values, vectors, s: float) -> np.ndarray:
    """``exp(i s H)`` from a precomputed decomposition of ``H``."""
    u = (vectors * np.exp(1j * s * np.asarray(values))) @ dagger(vectors)
    if unitarity_defect(u) > UNITARY_TOL:
        u = reunitarize(u)
    return u


def unitary_exp(h, s: float = 1.0) -> np.ndarray:
    """``exp(i s H)`` for Hermitian ``H``, via its eigen-decomposition."""
    values, vectors = hermitian_eigen(h)
    return check_unitary(exp_from_eigen(values, vectors, s))


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    phases of ``diag(R)`` folded back into ``Q``."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rng = make_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    if unitarity_defect(q) > UNITARY_TOL:
        q = reunitarize(q)
    return check_unitary(q)


def random_hermitian(dim: int, rng, norm: float | None = None) -> np.ndarray:
    rng = make_rng(rng)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = 0.5 * (z + dagger(z))
    if norm is not None:
        h *= norm / frobenius_norm(h)
    return h
