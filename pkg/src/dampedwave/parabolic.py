"""Quasilinear parabolic equations arising in the vanishing-mass limit.

Two equivalent descriptions are integrated:

* original variable,

      gamma(u) u_t = Lap u + f(x, u) - noise_scale^2 * c(u)
                     + s(x, u) (Q phi) + forcing
                     + noise_scale * s(x, u) Q dW/dt,

  where ``c`` is the drift correction produced by the state dependence of
  the friction (see System.corrector_grid);

* transformed variable rho = g(u), g' = gamma, which is in divergence form
  with diffusivity b(rho) = 1/gamma(g^{-1}(rho)) and NO correction term,

      rho_t = div(b(rho) grad rho) + f(x, g^{-1}(rho))
              + s(x, g^{-1}(rho)) (Q phi) + forcing
              + noise_scale * s(x, g^{-1}(rho)) Q dW/dt.

Mapping the second back through g^{-1} reproduces the first (the
correction term is exactly what the chain rule generates), which gives an
end-to-end consistency check between two independently coded right-hand
sides.

Both use a semi-implicit Euler step: a constant shift diffusivity
``b_max = 1/gamma_min`` is treated implicitly (diagonal in the sine
basis) and the remainder explicitly.  Since the true diffusivity never
exceeds the shift, the frozen-coefficient amplification factor
(1 + dt (b_max - b) alpha) / (1 + dt b_max alpha) lies in (0, 1] for
every mode, so the splitting is stable for any dt.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .system import System

__all__ = ["ParabolicPath", "integrate_limit", "integrate_transformed", "skeleton"]


@dataclass
class ParabolicPath:
    times: np.ndarray
    state: np.ndarray  # (n_stored, ..., n_modes)


def _storage(n_steps: int, store_every: int):
    return n_steps // store_every + 1 + (1 if n_steps % store_every else 0)


def integrate_limit(
    system: System,
    u0: np.ndarray,
    dt: float,
    n_steps: int,
    *,
    noise_scale: float = 0.0,
    corrector: bool = True,
    increments: np.ndarray | None = None,
    control: np.ndarray | None = None,
    forcing: Callable[[float, np.ndarray], np.ndarray] | None = None,
    store_every: int = 1,
) -> ParabolicPath:
    """Integrate the limit equation in the original variable.

    The drift correction is included by default and scales with the
    squared noise intensity; pass corrector=False for the uncorrected
    flow (the controlled skeleton of the rate functional has none).
    Other arguments mirror integrate_wave.
    """
    basis = system.basis
    u = np.array(u0, dtype=float, copy=True)
    if u.shape[-1] != basis.n_modes:
        raise ValueError("u0 must have trailing length n_modes")
    if noise_scale > 0.0 and increments is None:
        increments = system.noise.standard_increments(
            dt, n_steps, None if u.ndim == 1 else u.shape[0]
        )

    b_max = 1.0 / system.friction.lower
    denom = 1.0 + dt * b_max * basis.eigenvalues

    n_stored = _storage(n_steps, store_every)
    times = np.empty(n_stored)
    states = np.empty((n_stored,) + u.shape)
    times[0], states[0] = 0.0, u
    kept = 1

    x = basis.x
    for n in range(n_steps):
        t = n * dt
        u_grid = basis.to_grid(u)
        gam = system.friction(u_grid)
        lap = basis.laplacian_on_grid(u)

        drift = system.reaction_grid(u_grid)
        if corrector and noise_scale != 0.0:
            drift = drift - noise_scale**2 * system.corrector_grid(u_grid)
        if control is not None:
            drift = drift + system.control_force_grid(u_grid, control[n])
        if forcing is not None:
            drift = drift + forcing(t, x)

        # explicit part: (1/gamma) Lap u - b_max Lap u, plus everything else
        explicit = (1.0 / gam - b_max) * lap + drift / gam
        rhs_grid = dt * explicit
        if noise_scale > 0.0:
            colored = basis.to_grid(system.noise.color(increments[n]))
            rhs_grid = rhs_grid + noise_scale * system.amplitude_grid(u_grid) / gam * colored

        u = (u + basis.project(rhs_grid)) / denom

        if (n + 1) % store_every == 0 or n == n_steps - 1:
            times[kept], states[kept] = (n + 1) * dt, u
            kept += 1

    return ParabolicPath(times[:kept], states[:kept])


def integrate_transformed(
    system: System,
    rho0: np.ndarray,
    dt: float,
    n_steps: int,
    *,
    noise_scale: float = 0.0,
    increments: np.ndarray | None = None,
    control: np.ndarray | None = None,
    forcing: Callable[[float, np.ndarray], np.ndarray] | None = None,
    store_every: int = 1,
) -> ParabolicPath:
    """Integrate the divergence-form equation for rho = g(u).

    The nonlinear flux divergence is applied weakly, pairing the flux with
    derivatives of the test modes, so no second derivatives of rho are
    formed.  There is no correction term in this variable.
    """
    basis = system.basis
    rho = np.array(rho0, dtype=float, copy=True)
    if rho.shape[-1] != basis.n_modes:
        raise ValueError("rho0 must have trailing length n_modes")
    if noise_scale > 0.0 and increments is None:
        increments = system.noise.standard_increments(
            dt, n_steps, None if rho.ndim == 1 else rho.shape[0]
        )

    b_max = 1.0 / system.friction.lower
    denom = 1.0 + dt * b_max * basis.eigenvalues

    n_stored = _storage(n_steps, store_every)
    times = np.empty(n_stored)
    states = np.empty((n_stored,) + rho.shape)
    times[0], states[0] = 0.0, rho
    kept = 1

    x = basis.x
    for n in range(n_steps):
        t = n * dt
        rho_grid = basis.to_grid(rho)
        u_grid = system.friction.primitive_inverse(rho_grid)
        b = 1.0 / system.friction(u_grid)
        grad = basis.gradient_on_grid(rho)

        # weak form of div((b - b_max) grad rho); the b_max part is implicit
        flux_modes = basis.weak_divergence((b - b_max) * grad)

        drift = system.force(x, u_grid)
        if control is not None:
            drift = drift + system.amplitude(x, u_grid) * basis.to_grid(
                system.noise.apply(control[n])
            )
        if forcing is not None:
            drift = drift + forcing(t, x)

        rhs_grid = dt * drift
        if noise_scale > 0.0:
            colored = basis.to_grid(system.noise.color(increments[n]))
            rhs_grid = rhs_grid + noise_scale * system.amplitude(x, u_grid) * colored

        rho = (rho + dt * flux_modes + basis.project(rhs_grid)) / denom

        if (n + 1) % store_every == 0 or n == n_steps - 1:
            times[kept], states[kept] = (n + 1) * dt, rho
            kept += 1

    return ParabolicPath(times[:kept], states[:kept])


def skeleton(
    system: System,
    u0: np.ndarray,
    control: np.ndarray,
    dt: float,
    n_steps: int,
    *,
    store_every: int = 1,
) -> ParabolicPath:
    """Deterministic controlled flow gamma(u) u_t = Lap u + f + s (Q phi).

    This is the path on which the rate functional charges the squared
    control; note it carries no drift correction.
    """
    return integrate_limit(
        system,
        u0,
        dt,
        n_steps,
        noise_scale=0.0,
        corrector=False,
        control=control,
        store_every=store_every,
    )
