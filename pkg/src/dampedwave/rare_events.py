"""Rare-event probabilities for the small-mass, small-noise wave system.

The regime of interest couples the noise intensity to the mass through
noise_scale = sqrt(mass), where terminal events have probabilities of
order exp(-I/mass) with I the steering cost of the limit dynamics.  Two
estimators are provided:

* plain Monte Carlo over independent wave paths;
* a tilted estimator: paths are simulated with an added drift
  s(x, u) Q phi built from a (near-)optimal steering control, and each
  sample is reweighted by the exact change-of-measure density

      dP/dP~ = exp( -(1/eps) sum_i int phi_i dB~_i
                    - 1/(2 eps^2) int |phi|^2 dt ),

  evaluated on the standard mode increments actually drawn.  With phi
  from minimum_action the weighted variance collapses by orders of
  magnitude once exp(-I/mass) is small.

Estimates are combined in log space so that vanishing weights cannot
underflow the running sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from .system import System
from .wave import integrate_wave

__all__ = ["EstimatorResult", "terminal_ball", "naive_probability", "tilted_probability"]


@dataclass
class EstimatorResult:
    probability: float
    stderr: float
    n_samples: int
    n_hits: int
    rate: float              # -noise_scale^2 * log(probability)
    effective_samples: float  # inverse normalized second moment of the weights

    def consistent_with(self, other: "EstimatorResult", n_sigma: float = 3.0) -> bool:
        gap = abs(self.probability - other.probability)
        return gap <= n_sigma * float(np.hypot(self.stderr, other.stderr))


def terminal_ball(system: System, target: np.ndarray, radius: float) -> Callable:
    """Event: terminal displacement within `radius` of `target` in the L2 norm."""
    target = np.asarray(target, dtype=float)

    def event(displacement_final: np.ndarray) -> np.ndarray:
        gap = np.sqrt(np.sum((displacement_final - target) ** 2, axis=-1))
        return gap <= radius

    return event


def _batched_terminals(system, mass, u0, v0, dt, n_steps, noise_scale, n_samples,
                       batch, control):
    """Yield (terminal displacements, standard increments) batch by batch."""
    done = 0
    while done < n_samples:
        size = min(batch, n_samples - done)
        incs = system.noise.standard_increments(dt, n_steps, size)
        tiled = np.broadcast_to(u0, (size,) + u0.shape)
        tiled_v = np.broadcast_to(v0, (size,) + v0.shape)
        path = integrate_wave(
            system, mass, tiled, tiled_v, dt, n_steps,
            noise_scale=noise_scale, increments=incs, control=control,
            store_every=n_steps,
        )
        yield path.displacement[-1], incs
        done += size


def naive_probability(
    system: System,
    mass: float,
    u0: np.ndarray,
    v0: np.ndarray,
    dt: float,
    n_steps: int,
    noise_scale: float,
    event: Callable,
    n_samples: int,
    batch: int = 256,
) -> EstimatorResult:
    """Plain Monte Carlo estimate of P(event at final time)."""
    hits = 0
    for terminal, _ in _batched_terminals(
        system, mass, u0, v0, dt, n_steps, noise_scale, n_samples, batch, None
    ):
        hits += int(np.sum(event(terminal)))
    p = hits / n_samples
    stderr = float(np.sqrt(max(p * (1.0 - p), 1e-300) / n_samples))
    rate = float("inf") if p == 0.0 else -noise_scale**2 * float(np.log(p))
    return EstimatorResult(p, stderr, n_samples, hits, rate, float(n_samples))


def tilted_probability(
    system: System,
    mass: float,
    u0: np.ndarray,
    v0: np.ndarray,
    dt: float,
    n_steps: int,
    noise_scale: float,
    event: Callable,
    control: np.ndarray,
    n_samples: int,
    batch: int = 256,
) -> EstimatorResult:
    """Estimate P(event) by sampling under the control-shifted dynamics.

    `control` is a (n_steps, n_modes) array of mode coefficients phi; the
    shifted paths see the extra drift s(x,u) Q phi while the weights undo
    the shift exactly, so the estimator is unbiased for any control.
    """
    eps = noise_scale
    run_cost = 0.5 * dt * np.sum(control**2)
    log_weights = []
    hit_mask = []
    for terminal, incs in _batched_terminals(
        system, mass, u0, v0, dt, n_steps, eps, n_samples, batch, control
    ):
        # incs: (n_steps, size, n_modes); control: (n_steps, n_modes)
        stochastic = np.einsum("ni,nsi->s", control, incs)
        log_weights.append(-stochastic / eps - run_cost / eps**2)
        hit_mask.append(event(terminal))

    log_w = np.concatenate(log_weights)
    hits = np.concatenate(hit_mask)
    n_hits = int(np.sum(hits))
    if n_hits == 0:
        return EstimatorResult(0.0, 0.0, n_samples, 0, float("inf"), 0.0)

    log_hit_w = log_w[hits]
    log_p = logsumexp(log_hit_w) - np.log(n_samples)
    p = float(np.exp(log_p))
    # second moment of the weighted indicator, again in log space
    log_m2 = logsumexp(2.0 * log_hit_w) - np.log(n_samples)
    var = max(float(np.exp(log_m2)) - p**2, 0.0) / n_samples
    ess = float(np.exp(2.0 * logsumexp(log_hit_w) - logsumexp(2.0 * log_hit_w)))
    rate = -eps**2 * float(log_p)
    return EstimatorResult(p, float(np.sqrt(var)), n_samples, n_hits, rate, ess)
