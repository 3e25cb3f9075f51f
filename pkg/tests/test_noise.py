import numpy as np
import pytest

from dampedwave.basis import SineBasis
from dampedwave.noise import QWiener, exponential_spectrum, flat_spectrum, power_spectrum


def test_spectrum_factories():
    q = power_spectrum(4, 2.0, scale=3.0)
    assert np.max(np.abs(q - 3.0 / np.arange(1, 5) ** 2)) < 1e-14
    e = exponential_spectrum(3, 1.0, scale=2.0)
    assert np.max(np.abs(e - 2.0 * np.exp(-np.arange(3)))) < 1e-14
    f = flat_spectrum(5, 0.5)
    assert np.all(f == 0.5)


def test_seeded_reproducibility():
    basis = SineBasis(6, 1.0)
    q = power_spectrum(6, 1.0)
    a = QWiener(basis, q, seed=123).standard_increments(0.01, 5, 3)
    b = QWiener(basis, q, seed=123).standard_increments(0.01, 5, 3)
    assert np.array_equal(a, b)


def test_increment_statistics_match_spectrum():
    basis = SineBasis(5, 1.0)
    q = power_spectrum(5, 1.5)
    sampler = QWiener(basis, q, seed=7)
    dt = 0.02
    n = 40000
    incs = sampler.color(sampler.standard_increments(dt, n))
    sample_var = np.var(incs, axis=0)
    expected = q**2 * dt
    # variance of a variance estimate is 2 var^2 / n
    tol = 5.0 * expected * np.sqrt(2.0 / n)
    assert np.all(np.abs(sample_var - expected) < tol)
    # modes are uncorrelated
    corr = np.corrcoef(incs.T)
    off = corr[~np.eye(5, dtype=bool)]
    assert np.max(np.abs(off)) < 5.0 / np.sqrt(n)


def test_kernel_diagonal_matches_direct_sum():
    basis = SineBasis(8, 1.0)
    q = power_spectrum(8, 2.0)
    sampler = QWiener(basis, q, seed=0)
    direct = np.zeros(basis.n_points)
    for i in range(8):
        c = np.zeros(8)
        c[i] = 1.0
        direct += q[i] ** 2 * basis.to_grid(c) ** 2
    assert np.max(np.abs(sampler.kernel_diagonal() - direct)) < 1e-12


def test_kernel_diagonal_is_pointwise_variance_rate():
    basis = SineBasis(6, 1.0)
    q = power_spectrum(6, 1.0)
    sampler = QWiener(basis, q, seed=21)
    dt = 0.05
    draws = np.stack([sampler.increment_on_grid(dt) for _ in range(30000)])
    var = np.var(draws, axis=0) / dt
    expected = sampler.kernel_diagonal()
    assert np.max(np.abs(var - expected)) < 6.0 * np.max(expected) * np.sqrt(2.0 / 30000)


def test_trace_and_hq_norm():
    basis = SineBasis(4, 1.0)
    q = np.array([1.0, 0.5, 0.25, 0.125])
    sampler = QWiener(basis, q, seed=2)
    assert sampler.trace() == pytest.approx(np.sum(q**2), rel=1e-14)
    phi = np.array([1.0, 2.0, 0.0, -1.0])
    assert sampler.cameron_martin_norm_sq(phi) == pytest.approx(6.0, rel=1e-14)
    assert np.max(np.abs(sampler.apply(phi) - q * phi)) < 1e-14


def test_validation():
    basis = SineBasis(4, 1.0)
    with pytest.raises(ValueError):
        QWiener(basis, np.ones(3))
    with pytest.raises(ValueError):
        QWiener(basis, -np.ones(4))
