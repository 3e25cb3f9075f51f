"""Convergence checks against manufactured solutions.

A two-mode field with analytic time dependence is substituted into each
equation; whatever it fails to satisfy is added back as a deterministic
source, so the exact solution of the forced problem is known in closed
form.  Temporal orders are then measured by halving the step.  The
manufactured fields live exactly in the span of the basis, which removes
spatial truncation error from the temporal measurement; spatial accuracy
is checked separately through the spectral decay of a smooth profile.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .parabolic import integrate_limit, integrate_transformed
from .system import System
from .wave import integrate_wave

__all__ = [
    "OrderStudy",
    "manufactured_modes",
    "wave_order",
    "limit_order",
    "transformed_order",
    "spatial_decay",
]


@dataclass
class OrderStudy:
    steps: np.ndarray      # dt values, descending
    errors: np.ndarray     # terminal H-norm errors
    order: float           # least-squares slope of log err vs log dt


def _fit(steps, errors) -> OrderStudy:
    steps = np.asarray(steps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
    return OrderStudy(steps, errors, float(slope))


def manufactured_modes(n_modes: int):
    """Modal amplitudes c(t), c'(t), c''(t) of the reference field.

    Two active modes with offsets keep the friction and amplitude state
    dependence engaged along the whole trajectory.
    """

    def coeffs(t):
        c = np.zeros(n_modes)
        c[0] = 0.8 + 0.3 * np.sin(1.3 * t)
        c[1] = -0.4 + 0.25 * np.cos(0.9 * t)
        return c

    def d_coeffs(t):
        c = np.zeros(n_modes)
        c[0] = 0.39 * np.cos(1.3 * t)
        c[1] = -0.225 * np.sin(0.9 * t)
        return c

    def dd_coeffs(t):
        c = np.zeros(n_modes)
        c[0] = -0.507 * np.sin(1.3 * t)
        c[1] = -0.2025 * np.cos(0.9 * t)
        return c

    return coeffs, d_coeffs, dd_coeffs


def wave_order(system: System, mass: float, duration: float, dt0: float, levels: int = 4) -> OrderStudy:
    """Temporal order of the wave integrator on the manufactured field."""
    basis = system.basis
    coeffs, d_coeffs, dd_coeffs = manufactured_modes(basis.n_modes)

    def source(t, x):
        u = basis.to_grid(coeffs(t))
        du = basis.to_grid(d_coeffs(t))
        ddu = basis.to_grid(dd_coeffs(t))
        lap = basis.laplacian_on_grid(coeffs(t))
        return mass * ddu + system.friction(u) * du - lap - system.reaction_grid(u)

    errors, steps = [], []
    for level in range(levels):
        dt = dt0 / 2**level
        n = int(round(duration / dt))
        path = integrate_wave(system, mass, coeffs(0.0), d_coeffs(0.0), dt, n,
                              forcing=source, store_every=n)
        errors.append(basis.norm(path.displacement[-1] - coeffs(n * dt)))
        steps.append(dt)
    return _fit(steps, errors)


def limit_order(system: System, duration: float, dt0: float, levels: int = 4) -> OrderStudy:
    """Temporal order of the limit-equation integrator (original variable)."""
    basis = system.basis
    coeffs, d_coeffs, _ = manufactured_modes(basis.n_modes)

    def source(t, x):
        u = basis.to_grid(coeffs(t))
        du = basis.to_grid(d_coeffs(t))
        lap = basis.laplacian_on_grid(coeffs(t))
        return system.friction(u) * du - lap - system.reaction_grid(u)

    errors, steps = [], []
    for level in range(levels):
        dt = dt0 / 2**level
        n = int(round(duration / dt))
        path = integrate_limit(system, coeffs(0.0), dt, n, forcing=source, store_every=n)
        errors.append(basis.norm(path.state[-1] - coeffs(n * dt)))
        steps.append(dt)
    return _fit(steps, errors)


def transformed_order(system: System, duration: float, dt0: float, levels: int = 4) -> OrderStudy:
    """Temporal order of the divergence-form integrator.

    The manufactured field plays the role of rho; the flux divergence
    div(b(rho) grad rho) expands to b'(rho)|grad rho|^2 + b(rho) Lap rho
    with b = 1/gamma(g^{-1}(rho)) and b' = -gamma'(u)/gamma(u)^3.
    """
    basis = system.basis
    fr = system.friction
    coeffs, d_coeffs, _ = manufactured_modes(basis.n_modes)

    def source(t, x):
        c = coeffs(t)
        rho = basis.to_grid(c)
        drho = basis.to_grid(d_coeffs(t))
        grad = basis.gradient_on_grid(c)
        lap = basis.laplacian_on_grid(c)
        u = fr.primitive_inverse(rho)
        gam = fr(u)
        flux_div = (-fr.derivative(u) / gam**3) * grad**2 + lap / gam
        return drho - flux_div - system.force(x, u)

    errors, steps = [], []
    for level in range(levels):
        dt = dt0 / 2**level
        n = int(round(duration / dt))
        path = integrate_transformed(system, coeffs(0.0), dt, n, forcing=source, store_every=n)
        errors.append(basis.norm(path.state[-1] - coeffs(n * dt)))
        steps.append(dt)
    return _fit(steps, errors)


def spatial_decay(lengths=(8, 12, 16, 24, 32), n_points: int = 512, length: float = 1.0) -> OrderStudy:
    """Truncation error of the sine expansion of a smooth non-modal profile.

    The profile x^2 (L - x) vanishes at both ends but has a corner in its
    odd periodic extension, so its coefficients decay like 1/i^3 and the
    L2 truncation error like M^{-2.5}; the fitted slope (against M, stored
    in the `steps` field) should be close to that.
    """
    from .basis import SineBasis

    errors = []
    for n_modes in lengths:
        basis = SineBasis(n_modes, length, n_points=n_points)
        profile = basis.x**2 * (length - basis.x)
        recon = basis.to_grid(basis.project(profile))
        errors.append(basis.lp_norm_grid(profile - recon, 2.0))
    return _fit(np.asarray(lengths, dtype=float), np.asarray(errors))
