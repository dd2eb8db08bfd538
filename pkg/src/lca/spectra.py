"""Eigenvalue spectra of the initial state and the observable.

A :class:`Spectrum` stores the distinct eigenvalues of a diagonal operator in
strictly decreasing order together with their multiplicities.  Its
:class:`DegeneracyProfile` (the multiplicities alone) is all the
combinatorics downstream ever looks at.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ClusterOverlap, InvalidSpectrum, PerturbationTooLarge

DEFAULT_CLUSTER_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    distinct: tuple[float, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        distinct = tuple(float(v) for v in self.distinct)
        mult = tuple(self.multiplicities)
        object.__setattr__(self, "distinct", distinct)
        object.__setattr__(self, "multiplicities", mult)
        if not distinct:
            raise InvalidSpectrum("spectrum has no eigenvalues")
        if len(distinct) != len(mult):
            raise InvalidSpectrum(
                f"{len(distinct)} distinct values but {len(mult)} multiplicities"
            )
        if not all(np.isfinite(distinct)):
            raise InvalidSpectrum("eigenvalues must be finite")
        for m in mult:
            if isinstance(m, bool) or int(m) != m or m < 1:
                raise InvalidSpectrum(f"multiplicity {m!r} is not a positive integer")
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in mult))
        for hi, lo in zip(distinct, distinct[1:]):
            if not hi > lo:
                raise InvalidSpectrum(
                    f"distinct eigenvalues must be strictly decreasing ({hi!r} then {lo!r})"
                )

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    @property
    def r(self) -> int:
        return len(self.distinct)

    def expanded(self) -> np.ndarray:
        """Diagonal of the operator: each eigenvalue repeated by its multiplicity."""
        return np.repeat(np.array(self.distinct), self.multiplicities)

    def trace(self) -> float:
        return float(sum(v * m for v, m in zip(self.distinct, self.multiplicities)))


@dataclass(frozen=True)
class DegeneracyProfile:
    margins: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "margins", tuple(int(m) for m in self.margins))
        if any(m < 1 for m in self.margins):
            raise InvalidSpectrum(f"margins must be positive: {self.margins}")
        if sum(self.margins) != self.n:
            raise InvalidSpectrum(f"margins {self.margins} do not sum to {self.n}")

    @classmethod
    def of(cls, margins: Sequence[int]) -> DegeneracyProfile:
        margins = tuple(int(m) for m in margins)
        return cls(margins, sum(margins))

    def __len__(self):
        return len(self.margins)

    def __iter__(self):
        return iter(self.margins)


def build_spectrum(values, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    """Cluster raw diagonal entries into a :class:`Spectrum`.

    Values are sorted descending and grouped greedily: a value joins the
    current cluster when it lies within ``cluster_tol`` of the cluster's
    first (largest) member.  Each cluster is represented by its mean.

    >>> build_spectrum([0.4, 0.3, 0.3]).multiplicities
    (1, 2)
    """
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size == 0:
        raise InvalidSpectrum("cannot build a spectrum from no values")
    if not np.all(np.isfinite(vals)):
        raise InvalidSpectrum("eigenvalues must be finite")
    if not cluster_tol >= 0:
        raise InvalidSpectrum(f"cluster_tol must be non-negative, got {cluster_tol!r}")

    clusters: list[list[float]] = []
    for v in sorted(vals.tolist(), reverse=True):
        if clusters and clusters[-1][0] - v <= cluster_tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])

    # clamp guards against the mean rounding outside its own cluster
    reps = [c[0] if c[0] == c[-1] else min(max(float(np.mean(c)), c[-1]), c[0]) for c in clusters]
    for hi, lo in zip(reps, reps[1:]):
        if not hi > lo:
            raise ClusterOverlap(hi, lo)
    return Spectrum(tuple(reps), tuple(len(c) for c in clusters))


def degeneracy_profile(s: Spectrum) -> DegeneracyProfile:
    return DegeneracyProfile(s.multiplicities, s.n)


def perturbed_spectrum(s: Spectrum, delta: float) -> Spectrum:
    """Lift every degeneracy by spreading a level of multiplicity k into
    ``λ, λ-delta, ..., λ-(k-1)·delta``.

    ``delta·max(multiplicity)`` must stay below half the smallest gap between
    distinct eigenvalues.
    """
    if not delta > 0:
        raise InvalidSpectrum(f"delta must be positive, got {delta!r}")
    if s.r > 1:
        min_gap = min(hi - lo for hi, lo in zip(s.distinct, s.distinct[1:]))
        if delta * max(s.multiplicities) >= 0.5 * min_gap:
            raise PerturbationTooLarge(
                f"delta={delta!r} with multiplicity {max(s.multiplicities)} "
                f"is not below half the minimum gap {min_gap!r}"
            )
    split = [lam - k * delta for lam, m in zip(s.distinct, s.multiplicities) for k in range(m)]
    for hi, lo in zip(split, split[1:]):
        if not hi > lo:
            raise PerturbationTooLarge(f"perturbed values {hi!r}, {lo!r} collide")
    return Spectrum(tuple(split), (1,) * len(split))


def spectrum_from_matrix(h, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    """Spectrum of a Hermitian matrix (diagonalised with the Jacobi solver)."""
    from .matcore import hermitian_eigen

    values, _ = hermitian_eigen(h)
    return build_spectrum(values, cluster_tol)


def as_profile(x) -> DegeneracyProfile:
    """Accept a profile, a spectrum, or a plain sequence of margins."""
    if isinstance(x, DegeneracyProfile):
        return x
    if isinstance(x, Spectrum):
        return degeneracy_profile(x)
    return DegeneracyProfile.of(x)
