"""Ready-made problem instances used by the command line and the tests.

Three families cover the regimes of interest:

* lipschitz_system: smooth bounded friction, linear reaction, bounded
  state-dependent noise amplitude.  Every hypothesis is comfortable, so
  this is the default for limit and rare-event experiments.

* polynomial_system: odd power reaction -|r|^(theta-1) r, optionally with
  the linear far-field truncation that makes it globally Lipschitz.

* linear_system: constant coefficients throughout; the control problems
  on it have closed forms, so it anchors the oracles.
"""

from __future__ import annotations

import numpy as np

from .basis import SineBasis
from .coefficients import (
    LinearForce,
    NoiseAmplitude,
    PowerForce,
    TruncatedForce,
    constant_friction,
    tanh_friction,
)
from .noise import QWiener, power_spectrum
from .system import System

__all__ = ["lipschitz_system", "polynomial_system", "linear_system", "bump"]


def lipschitz_system(
    n_modes: int = 16,
    length: float = 1.0,
    *,
    friction_base: float = 1.0,
    friction_swing: float = 0.5,
    force_slope: float = 1.0,
    amp_base: float = 1.0,
    amp_swing: float = 0.4,
    spectrum_decay: float = 2.0,
    spectrum_scale: float = 1.0,
    n_points: int | None = None,
    seed: int | None = 0,
) -> System:
    basis = SineBasis(n_modes, length, n_points=n_points)
    return System(
        basis=basis,
        friction=tanh_friction(friction_base, friction_swing),
        force=LinearForce(force_slope),
        amplitude=NoiseAmplitude.sine(amp_base, amp_swing),
        noise=QWiener(basis, power_spectrum(n_modes, spectrum_decay, spectrum_scale), seed=seed),
    )


def polynomial_system(
    n_modes: int = 16,
    length: float = 1.0,
    *,
    exponent: float = 3.0,
    strength: float = 1.0,
    truncation: float | None = 8.0,
    friction_base: float = 1.0,
    friction_swing: float = 0.5,
    amp_base: float = 1.0,
    amp_swing: float = 0.4,
    spectrum_decay: float = 2.0,
    spectrum_scale: float = 1.0,
    n_points: int | None = None,
    seed: int | None = 0,
) -> System:
    force = PowerForce(strength, exponent)
    if truncation is not None:
        force = TruncatedForce(force, truncation)
    basis = SineBasis(n_modes, length, n_points=n_points)
    return System(
        basis=basis,
        friction=tanh_friction(friction_base, friction_swing),
        force=force,
        amplitude=NoiseAmplitude.sine(amp_base, amp_swing),
        noise=QWiener(basis, power_spectrum(n_modes, spectrum_decay, spectrum_scale), seed=seed),
    )


def linear_system(
    n_modes: int = 8,
    length: float = 1.0,
    *,
    friction: float = 1.0,
    amplitude: float = 1.0,
    spectrum_decay: float = 1.0,
    spectrum_scale: float = 1.0,
    n_points: int | None = None,
    seed: int | None = 0,
) -> System:
    basis = SineBasis(n_modes, length, n_points=n_points)
    return System(
        basis=basis,
        friction=constant_friction(friction),
        force=LinearForce(0.0),
        amplitude=NoiseAmplitude.constant(amplitude),
        noise=QWiener(basis, power_spectrum(n_modes, spectrum_decay, spectrum_scale), seed=seed),
    )


def bump(basis: SineBasis, height: float = 0.8) -> np.ndarray:
    """Smooth initial profile concentrated in the first two modes."""
    u0 = np.zeros(basis.n_modes)
    u0[0] = height
    if basis.n_modes > 1:
        u0[1] = -0.375 * height
    return u0
