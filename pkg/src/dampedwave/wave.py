"""Time stepping for the damped stochastic wave system.

Integrates, in sine coefficients,

    mass * u_tt = Lap u - gamma(u) u_t + f(x, u)
                  + s(x, u) (Q phi)(x) + forcing(t, x)
                  + noise_scale * s(x, u) Q dW/dt

with a semi-implicit Euler scheme: the velocity update uses the new
velocity in the damping term (solved pointwise on the grid, since the
friction acts by multiplication) and the position update uses the new
velocity.  For the undamped linear part this is the symplectic Euler
method, stable for dt <= 2 sqrt(mass / alpha_max); damping only enlarges
the stable region, so the constructor enforces that bound.

The damping time scale is mass / gamma, which the step must resolve for
the small-mass dynamics (and in particular the limit drift correction)
to be captured; integrate_wave checks this only loosely (warn threshold
dt < mass/gamma_max) because over-damped runs are sometimes wanted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .system import System

__all__ = ["WavePath", "integrate_wave", "wave_energy", "max_stable_dt"]


@dataclass
class WavePath:
    """Stored trajectory of the second-order system, in coefficients.

    displacement/velocity have shape (n_stored, ..., n_modes) where the
    middle axes are whatever batch shape the initial data carried.
    """

    times: np.ndarray
    displacement: np.ndarray
    velocity: np.ndarray


def max_stable_dt(system: System, mass: float) -> float:
    """Stability bound of the explicit oscillation part, 2 sqrt(mass)/sqrt(alpha_max)."""
    return 2.0 * np.sqrt(mass) / np.sqrt(system.basis.eigenvalues[-1])


def integrate_wave(
    system: System,
    mass: float,
    u0: np.ndarray,
    v0: np.ndarray,
    dt: float,
    n_steps: int,
    *,
    noise_scale: float = 0.0,
    increments: np.ndarray | None = None,
    control: np.ndarray | None = None,
    forcing: Callable[[float, np.ndarray], np.ndarray] | None = None,
    store_every: int = 1,
) -> WavePath:
    """Run the damped wave system for n_steps of size dt.

    Parameters
    ----------
    u0, v0 : arrays (..., n_modes)
        Initial displacement and velocity coefficients; leading batch axes
        propagate through (one path per batch element).
    noise_scale : float
        Intensity multiplying the colored noise.  0 gives the deterministic
        (possibly controlled) system and ignores `increments`.
    increments : array (n_steps, ..., n_modes), optional
        Standard mode increments (already carrying sqrt(dt)); drawn from
        the system sampler when omitted and noise_scale > 0.  Passing them
        explicitly couples runs across parameters.
    control : array (n_steps, n_modes) or (n_steps, ..., n_modes), optional
        Mode coefficients of the control phi, entering as s(x,u) Q phi.
    forcing : callable (t, x_grid) -> grid values, optional
        Extra deterministic source, used by the manufactured-solution checks.
    store_every : int
        Keep every k-th state (plus the final one).

    Returns
    -------
    WavePath
    """
    basis = system.basis
    u = np.array(u0, dtype=float, copy=True)
    v = np.array(v0, dtype=float, copy=True)
    if u.shape != v.shape or u.shape[-1] != basis.n_modes:
        raise ValueError("u0 and v0 must both have trailing length n_modes")
    if dt > max_stable_dt(system, mass):
        raise ValueError(
            f"dt={dt:g} exceeds the stability bound {max_stable_dt(system, mass):g} "
            f"for mass={mass:g}; refine the step or drop modes"
        )
    if noise_scale > 0.0 and increments is None:
        increments = system.noise.standard_increments(
            dt, n_steps, None if u.ndim == 1 else u.shape[0]
        )

    n_stored = n_steps // store_every + 1 + (1 if n_steps % store_every else 0)
    times = np.empty(n_stored)
    disp = np.empty((n_stored,) + u.shape)
    velo = np.empty((n_stored,) + v.shape)
    times[0], disp[0], velo[0] = 0.0, u, v

    x = basis.x
    kept = 1
    for n in range(n_steps):
        t = n * dt
        u_grid = basis.to_grid(u)
        drift = basis.laplacian_on_grid(u) + system.reaction_grid(u_grid)
        if control is not None:
            drift = drift + system.control_force_grid(u_grid, control[n])
        if forcing is not None:
            drift = drift + forcing(t, x)

        rhs = mass * basis.to_grid(v) + dt * drift
        if noise_scale > 0.0:
            colored = basis.to_grid(system.noise.color(increments[n]))
            rhs = rhs + noise_scale * system.amplitude_grid(u_grid) * colored

        v = basis.project(rhs / (mass + dt * system.friction(u_grid)))
        u = u + dt * v

        if (n + 1) % store_every == 0 or n == n_steps - 1:
            times[kept], disp[kept], velo[kept] = (n + 1) * dt, u, v
            kept += 1

    return WavePath(times[:kept], disp[:kept], velo[:kept])


def wave_energy(system: System, mass: float, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Mechanical energy mass/2 |v|^2 + 1/2 |grad u|^2 - int F(x, u) dx.

    F is the antiderivative of the reaction in the state variable, so for
    dissipative forces the last term is coercive.  Without noise and
    forcing the scheme should dissipate this along trajectories.
    """
    basis = system.basis
    kinetic = 0.5 * mass * basis.norm(v) ** 2
    elastic = 0.5 * basis.norm(u, order=1.0) ** 2
    u_grid = basis.to_grid(u)
    potential = basis.integrate(system.force.antiderivative(basis.x, u_grid))
    return kinetic + elastic - potential
