import numpy as np
import pytest

from dampedwave.basis import SineBasis
from dampedwave.coefficients import (
    LinearForce,
    NoiseAmplitude,
    PowerForce,
    constant_friction,
    tanh_friction,
)
from dampedwave.noise import QWiener, power_spectrum
from dampedwave.presets import lipschitz_system
from dampedwave.system import System
from dampedwave.wave import integrate_wave, max_stable_dt, wave_energy


def _system(n_modes=8, seed=0, friction=None, force=None, amp=None):
    basis = SineBasis(n_modes, 1.0)
    return System(
        basis=basis,
        friction=friction or tanh_friction(1.0, 0.5),
        force=force if force is not None else LinearForce(1.0),
        amplitude=amp or NoiseAmplitude.sine(1.0, 0.4),
        noise=QWiener(basis, power_spectrum(n_modes, 2.0), seed=seed),
    )


def test_stability_guard():
    system = _system()
    mass = 0.01
    with pytest.raises(ValueError):
        integrate_wave(system, mass, np.zeros(8), np.zeros(8), 1.0, 10)


def test_single_mode_oscillation_frequency():
    # undamped-ish linear mode: period 2 pi sqrt(mass / alpha)
    basis = SineBasis(4, 1.0)
    system = System(
        basis=basis,
        friction=constant_friction(1e-6),
        force=LinearForce(0.0),
        amplitude=NoiseAmplitude.constant(1.0),
        noise=QWiener(basis, power_spectrum(4, 1.0), seed=0),
    )
    mass = 1.0
    u0 = np.zeros(4)
    u0[0] = 1.0
    period = 2 * np.pi * np.sqrt(mass / basis.eigenvalues[0])
    dt = period / 4000
    path = integrate_wave(system, mass, u0, np.zeros(4), dt, 4000)
    # after one full period the mode returns to its initial value
    assert abs(path.displacement[-1][0] - 1.0) < 5e-3
    assert np.max(np.abs(path.displacement[-1][1:])) < 1e-12


def test_energy_dissipates_without_noise():
    system = _system(force=PowerForce(1.0, 3.0))
    mass = 0.05
    u0 = np.zeros(8)
    u0[0], u0[1] = 0.8, -0.3
    v0 = np.zeros(8)
    path = integrate_wave(system, mass, u0, v0, 2e-4, 2500, store_every=250)
    energies = [
        wave_energy(system, mass, path.displacement[k], path.velocity[k])
        for k in range(len(path.times))
    ]
    diffs = np.diff(energies)
    assert np.all(diffs < 1e-10)
    assert energies[-1] < 0.1 * energies[0]


def test_store_every_keeps_final_state():
    system = _system()
    full = integrate_wave(system, 0.05, np.ones(8) * 0.1, np.zeros(8), 1e-3, 7)
    thin = integrate_wave(system, 0.05, np.ones(8) * 0.1, np.zeros(8), 1e-3, 7, store_every=3)
    assert thin.times[-1] == pytest.approx(full.times[-1])
    assert np.max(np.abs(thin.displacement[-1] - full.displacement[-1])) < 1e-14
    assert np.array_equal(thin.times, np.array([0.0, 3e-3, 6e-3, 7e-3]))


def test_batch_matches_loop():
    system = _system()
    rng = np.random.default_rng(3)
    u0 = rng.normal(0, 0.2, (4, 8))
    v0 = rng.normal(0, 0.2, (4, 8))
    incs = system.noise.standard_increments(1e-3, 50, 4)
    batch = integrate_wave(system, 0.05, u0, v0, 1e-3, 50, noise_scale=1.0, increments=incs)
    for p in range(4):
        single = integrate_wave(
            system, 0.05, u0[p], v0[p], 1e-3, 50, noise_scale=1.0, increments=incs[:, p]
        )
        assert np.max(np.abs(single.displacement[-1] - batch.displacement[-1][p])) < 1e-12


def test_sign_flip_equivariance_for_odd_dynamics():
    # constant friction and amplitude, odd force: flipping data and control
    # flips the whole deterministic trajectory
    basis = SineBasis(6, 1.0)
    system = System(
        basis=basis,
        friction=constant_friction(1.0),
        force=PowerForce(1.0, 3.0),
        amplitude=NoiseAmplitude.constant(1.0),
        noise=QWiener(basis, power_spectrum(6, 1.0), seed=0),
    )
    rng = np.random.default_rng(4)
    u0 = rng.normal(0, 0.3, 6)
    control = rng.normal(0, 0.5, (40, 6))
    a = integrate_wave(system, 0.05, u0, np.zeros(6), 1e-3, 40, control=control)
    b = integrate_wave(system, 0.05, -u0, np.zeros(6), 1e-3, 40, control=-control)
    assert np.max(np.abs(a.displacement[-1] + b.displacement[-1])) < 1e-12


def test_noise_scale_zero_ignores_increments():
    system = _system()
    u0 = np.ones(8) * 0.1
    a = integrate_wave(system, 0.05, u0, np.zeros(8), 1e-3, 20)
    b = integrate_wave(system, 0.05, u0, np.zeros(8), 1e-3, 20, noise_scale=0.0,
                       increments=np.ones((20, 8)))
    assert np.array_equal(a.displacement[-1], b.displacement[-1])


def test_small_mass_tracks_limit_drift():
    # crude sanity: at tiny mass the deterministic wave follows the
    # quasistatic balance gamma(u) u_t = Lap u + f
    from dampedwave.parabolic import integrate_limit

    system = lipschitz_system(8, seed=0)
    u0 = np.zeros(8)
    u0[0] = 0.5
    dt = 5e-5
    n = 2000
    wave = integrate_wave(system, 0.002, u0, np.zeros(8), dt, n, store_every=n)
    limit = integrate_limit(system, u0, dt, n, store_every=n)
    gap = np.linalg.norm(wave.displacement[-1] - limit.state[-1])
    assert gap < 5e-3


def test_max_stable_dt_scaling():
    system = _system()
    assert max_stable_dt(system, 0.04) == pytest.approx(2 * max_stable_dt(system, 0.01))


def test_shape_validation():
    system = _system()
    with pytest.raises(ValueError):
        integrate_wave(system, 0.05, np.zeros(7), np.zeros(8), 1e-4, 5)
