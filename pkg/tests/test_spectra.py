import numpy as np
import pytest
from hypothesis import given, strategies as st

from lca.errors import ClusterOverlap, InvalidSpectrum, PerturbationTooLarge
from lca.spectra import (
    DegeneracyProfile,
    Spectrum,
    as_profile,
    build_spectrum,
    degeneracy_profile,
    perturbed_spectrum,
    spectrum_from_matrix,
)


@pytest.mark.parametrize(
    "values, tol, distinct, mult",
    [
        ([0.4, 0.3, 0.3], 1e-9, (0.4, 0.3), (1, 2)),
        ([1.0], 0.0, (1.0,), (1,)),
        ([0.3, 0.4, 0.3], 1e-9, (0.4, 0.3), (1, 2)),
        ([0.2, 0.5, 0.5 + 1e-12], 1e-9, (0.5 + 5e-13, 0.2), (2, 1)),
    ],
)
def test_build_spectrum_examples(values, tol, distinct, mult):
    s = build_spectrum(values, tol)
    assert s.multiplicities == mult
    np.testing.assert_allclose(s.distinct, distinct, rtol=0, atol=1e-15)


def test_clustering_is_anchored_on_first_member():
    # 0.3 is within tol of 0.32 but not of the anchor 0.34
    s = build_spectrum([0.34, 0.32, 0.30], cluster_tol=0.025)
    assert s.multiplicities == (2, 1)


def test_build_spectrum_errors():
    with pytest.raises(InvalidSpectrum):
        build_spectrum([])
    with pytest.raises(InvalidSpectrum):
        build_spectrum([1.0, np.nan])
    with pytest.raises(InvalidSpectrum):
        build_spectrum([1.0], cluster_tol=-1)


def test_cluster_overlap_carries_the_pair():
    err = ClusterOverlap(0.5, 0.5)
    assert isinstance(err, InvalidSpectrum)
    assert err.pair == (0.5, 0.5)


def test_identical_values_keep_their_exact_value():
    x = 5.972669103467885
    assert build_spectrum([x, x, x]).distinct == (x,)


@pytest.mark.parametrize(
    "distinct, mult",
    [((0.3, 0.4), (1, 1)), ((0.4, 0.4), (1, 1)), ((0.4,), (0,)), ((0.4, 0.3), (1,)), ((np.inf,), (1,))],
)
def test_spectrum_rejects_invalid(distinct, mult):
    with pytest.raises(InvalidSpectrum):
        Spectrum(distinct, mult)


def test_spectrum_fields():
    s = Spectrum((0.4, 0.3), (1, 2))
    assert s.n == 3 and s.r == 2
    np.testing.assert_array_equal(s.expanded(), [0.4, 0.3, 0.3])
    assert s.trace() == pytest.approx(1.0)


@pytest.mark.parametrize(
    "s, margins, n",
    [
        (Spectrum((0.4, 0.3), (1, 2)), (1, 2), 3),
        (Spectrum((0.7,), (5,)), (5,), 5),
        (Spectrum((0.4, 0.12, 0.06), (1, 3, 4)), (1, 3, 4), 8),
    ],
)
def test_degeneracy_profile(s, margins, n):
    p = degeneracy_profile(s)
    assert p.margins == margins and p.n == n
    assert as_profile(s) == p == as_profile(list(margins))


def test_profile_validation():
    with pytest.raises(InvalidSpectrum):
        DegeneracyProfile((1, 2), 4)
    with pytest.raises(InvalidSpectrum):
        DegeneracyProfile.of([1, 0])


@pytest.mark.parametrize(
    "distinct, mult, delta, expected",
    [
        ((0.4, 0.3), (1, 2), 0.01, (0.4, 0.3, 0.29)),
        ((1.0, 0.0), (2, 2), 0.1, (1.0, 0.9, 0.0, -0.1)),
        ((0.5, 0.2, -0.1), (1, 1, 1), 0.01, (0.5, 0.2, -0.1)),
    ],
)
def test_perturbed_spectrum_examples(distinct, mult, delta, expected):
    p = perturbed_spectrum(Spectrum(distinct, mult), delta)
    assert p.multiplicities == (1,) * len(expected)
    np.testing.assert_allclose(p.distinct, expected, atol=1e-15)


def test_perturbation_too_large():
    with pytest.raises(PerturbationTooLarge):
        perturbed_spectrum(Spectrum((1.0, 0.0), (2, 2)), 0.3)
    with pytest.raises(InvalidSpectrum):
        perturbed_spectrum(Spectrum((1.0,), (2,)), 0.0)


def test_spectrum_from_matrix_is_basis_independent():
    rng = np.random.default_rng(5)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    h = q @ np.diag([0.5, 0.5, 0.2, -0.1]) @ q.conj().T
    s = spectrum_from_matrix(h, cluster_tol=1e-9)
    assert s.multiplicities == (2, 1, 1)
    np.testing.assert_allclose(s.distinct, (0.5, 0.2, -0.1), atol=1e-12)


values = st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=12)


@given(values, st.sampled_from([0.0, 1e-9, 1e-3, 0.5]))
def test_build_spectrum_properties(vals, tol):
    try:
        s = build_spectrum(vals, tol)
    except ClusterOverlap:
        return
    assert s.n == len(vals)
    assert all(a > b for a, b in zip(s.distinct, s.distinct[1:]))
    # order of input does not matter
    assert build_spectrum(list(reversed(vals)), tol) == s


@given(values)
def test_exact_clustering_round_trip(vals):
    s = build_spectrum(vals, 0.0)
    assert sorted(s.expanded().tolist(), reverse=True) == sorted(vals, reverse=True)
