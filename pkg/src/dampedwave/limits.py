"""Parameter studies for the vanishing-mass and small-noise regimes.

Each study couples every run to the same driving noise (one array of
standard mode increments shared across the mass values and the limit
equation), so the reported gaps measure the dynamics, not the draw.

* small_mass_study: pathwise and ensemble-mean distance between the wave
  system and the limit equation, with and without the drift correction.
  The correction is a mean effect, so the ensemble means separate the
  corrected from the uncorrected limit far more sharply than paths do.

* controlled_convergence_study: the controlled wave system with noise
  intensity sqrt(mass) against the deterministic controlled limit flow,
  the continuity ingredient behind the variational treatment of rare
  events.

* ldp_rate_study: tilted estimates of a terminal-ball probability at
  noise sqrt(mass); the decay rates -mass log p are bracketed by the
  steering cost to the ball and to its center.

* tightness_study: uniform-in-mass bounds on fractional-Sobolev norms of
  the transformed paths and the scaling of their time increments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action import minimum_action
from .parabolic import integrate_limit, skeleton
from .rare_events import EstimatorResult, terminal_ball, tilted_probability
from .system import System
from .wave import integrate_wave

__all__ = [
    "SmallMassStudy",
    "small_mass_study",
    "ControlledStudy",
    "controlled_convergence_study",
    "RateStudy",
    "ldp_rate_study",
    "TightnessStudy",
    "tightness_study",
]


def _resample_control(control: np.ndarray, duration: float, n_steps: int) -> np.ndarray:
    """Piecewise-linear resampling of a stepwise control onto a new grid."""
    n_old = control.shape[0]
    t_old = (np.arange(n_old) + 0.5) * (duration / n_old)
    t_new = (np.arange(n_steps) + 0.5) * (duration / n_steps)
    out = np.empty((n_steps, control.shape[1]))
    for j in range(control.shape[1]):
        out[:, j] = np.interp(t_new, t_old, control[:, j])
    return out


# ----------------------------------------------------------------------
# vanishing mass at fixed noise
# ----------------------------------------------------------------------


@dataclass
class SmallMassStudy:
    masses: np.ndarray
    path_gaps: np.ndarray          # E |u_mass(T) - u_lim(T)|_H, same noise
    mean_gaps: np.ndarray          # |E u_mass(T) - E u_lim(T)|_H
    mean_gaps_uncorrected: np.ndarray  # same, against the corrector-free limit
    correction_size: float         # |E u_lim(T) - E u_lim,uncorrected(T)|_H


def small_mass_study(
    system: System,
    masses,
    duration: float,
    dt: float,
    u0: np.ndarray,
    *,
    noise_scale: float = 1.0,
    n_paths: int = 128,
) -> SmallMassStudy:
    """Compare the wave system against its limit as the mass shrinks.

    All masses and both limit variants see identical noise.  dt must
    resolve the fastest damping time mass_min / gamma_max; the wave
    integrator raises if it misses the oscillation stability bound.
    """
    masses = np.asarray(sorted(masses, reverse=True), dtype=float)
    n_steps = int(round(duration / dt))
    incs = system.noise.standard_increments(dt, n_steps, n_paths)
    u0b = np.broadcast_to(np.asarray(u0, dtype=float), (n_paths, system.basis.n_modes))
    v0b = np.zeros_like(u0b)

    lim_on = integrate_limit(system, u0b, dt, n_steps, noise_scale=noise_scale,
                             corrector=True, increments=incs, store_every=n_steps)
    lim_off = integrate_limit(system, u0b, dt, n_steps, noise_scale=noise_scale,
                              corrector=False, increments=incs, store_every=n_steps)
    end_on, end_off = lim_on.state[-1], lim_off.state[-1]
    mean_on, mean_off = end_on.mean(axis=0), end_off.mean(axis=0)

    path_gaps, mean_gaps, mean_gaps_off = [], [], []
    for mass in masses:
        path = integrate_wave(system, float(mass), u0b, v0b, dt, n_steps,
                              noise_scale=noise_scale, increments=incs, store_every=n_steps)
        end = path.displacement[-1]
        path_gaps.append(np.mean(np.linalg.norm(end - end_on, axis=-1)))
        mean = end.mean(axis=0)
        mean_gaps.append(np.linalg.norm(mean - mean_on))
        mean_gaps_off.append(np.linalg.norm(mean - mean_off))

    return SmallMassStudy(
        masses,
        np.asarray(path_gaps),
        np.asarray(mean_gaps),
        np.asarray(mean_gaps_off),
        float(np.linalg.norm(mean_on - mean_off)),
    )


# ----------------------------------------------------------------------
# controlled paths in the joint regime
# ----------------------------------------------------------------------


@dataclass
class ControlledStudy:
    masses: np.ndarray
    gaps: np.ndarray               # E |u_mass^phi(T) - skeleton^phi(T)|_H


def controlled_convergence_study(
    system: System,
    masses,
    duration: float,
    dt: float,
    u0: np.ndarray,
    control: np.ndarray,
    *,
    n_paths: int = 64,
) -> ControlledStudy:
    """Controlled wave paths with noise sqrt(mass) against the limit skeleton.

    As the mass (and with it the noise) shrinks, the controlled wave
    system should settle on the deterministic controlled limit flow; the
    terminal gap is the quantity whose vanishing underpins the rare-event
    asymptotics.
    """
    masses = np.asarray(sorted(masses, reverse=True), dtype=float)
    n_steps = int(round(duration / dt))
    if control.shape[0] != n_steps:
        control = _resample_control(control, duration, n_steps)
    incs = system.noise.standard_increments(dt, n_steps, n_paths)
    u0 = np.asarray(u0, dtype=float)
    u0b = np.broadcast_to(u0, (n_paths, system.basis.n_modes))
    v0b = np.zeros_like(u0b)

    ref = skeleton(system, u0, control, dt, n_steps, store_every=n_steps).state[-1]

    gaps = []
    for mass in masses:
        path = integrate_wave(system, float(mass), u0b, v0b, dt, n_steps,
                              noise_scale=float(np.sqrt(mass)), increments=incs,
                              control=control, store_every=n_steps)
        gaps.append(np.mean(np.linalg.norm(path.displacement[-1] - ref, axis=-1)))
    return ControlledStudy(masses, np.asarray(gaps))


# ----------------------------------------------------------------------
# decay rates of terminal-ball probabilities
# ----------------------------------------------------------------------


@dataclass
class RateStudy:
    masses: np.ndarray
    rates: np.ndarray              # -mass * log p(mass)
    estimates: list                # EstimatorResult per mass
    cost_center: float             # steering cost to the ball center
    cost_ball: float               # steering cost to the nearest boundary point


def ldp_rate_study(
    system: System,
    masses,
    duration: float,
    u0: np.ndarray,
    target: np.ndarray,
    radius: float,
    *,
    n_samples: int = 4000,
    mam_steps: int = 160,
    steps_per_relaxation: int = 12,
    penalties=(1e2, 1e3, 1e4),
) -> RateStudy:
    """Estimate -mass log P(|u(T) - target| <= radius) at noise sqrt(mass).

    The probabilities are sampled under the steering tilt of the limit
    dynamics (computed once and resampled onto each mass's time grid), so
    they remain estimable when exponentially small.  The reported rates
    should land between the steering cost to the nearest point of the
    ball and the cost to its center, approaching the bracket from within
    as the mass shrinks.
    """
    masses = np.asarray(sorted(masses, reverse=True), dtype=float)
    u0 = np.asarray(u0, dtype=float)
    target = np.asarray(target, dtype=float)

    best = minimum_action(system, u0, target, duration, mam_steps, penalties=penalties)
    free = skeleton(system, u0, np.zeros((mam_steps, system.basis.n_modes)),
                    duration / mam_steps, mam_steps, store_every=mam_steps).state[-1]
    gap_dir = target - free
    boundary = target - radius * gap_dir / np.linalg.norm(gap_dir)
    low = minimum_action(system, u0, boundary, duration, mam_steps, penalties=penalties)

    event = terminal_ball(system, target, radius)
    v0 = np.zeros_like(u0)
    estimates, rates = [], []
    for mass in masses:
        mass = float(mass)
        dt = mass / (steps_per_relaxation * system.friction.upper)
        n_steps = max(1, int(round(duration / dt)))
        dt = duration / n_steps
        ctrl = _resample_control(best.control, duration, n_steps)
        est = tilted_probability(system, mass, u0, v0, dt, n_steps,
                                 float(np.sqrt(mass)), event, ctrl, n_samples)
        estimates.append(est)
        rates.append(est.rate)
    return RateStudy(masses, np.asarray(rates), estimates, best.cost, low.cost)


# ----------------------------------------------------------------------
# tightness diagnostics for the transformed paths
# ----------------------------------------------------------------------


@dataclass
class TightnessStudy:
    masses: np.ndarray
    sup_norms: np.ndarray          # E sup_t |g(u_mass)(t)|_{H^delta} per mass
    increment_exponent: float      # fitted kappa in E|rho(t+h)-rho(t)|^2 ~ h^kappa
    lags: np.ndarray
    increment_moments: np.ndarray


def tightness_study(
    system: System,
    masses,
    duration: float,
    dt: float,
    u0: np.ndarray,
    *,
    noise_scale: float = 1.0,
    n_paths: int = 32,
    sobolev_order: float = 0.75,
    lags=(0.02, 0.04, 0.08, 0.16),
) -> TightnessStudy:
    """Fractional-norm boundedness of transformed paths, uniformly in mass.

    The transformed variable rho = g(u) is the one whose laws remain tight
    as the mass vanishes; the study reports E sup_t of its H^delta norm
    per mass (these should stay of one size rather than grow) and the
    time-increment scaling at the smallest mass, measured above the
    relaxation crossover (lags below mass/gamma see ballistic motion).
    """
    masses = np.asarray(sorted(masses, reverse=True), dtype=float)
    n_steps = int(round(duration / dt))
    store = max(1, int(round(min(lags) / (4 * dt))))
    incs = system.noise.standard_increments(dt, n_steps, n_paths)
    u0b = np.broadcast_to(np.asarray(u0, dtype=float), (n_paths, system.basis.n_modes))
    v0b = np.zeros_like(u0b)

    sup_norms = []
    rho_small = None
    times = None
    for mass in masses:
        path = integrate_wave(system, float(mass), u0b, v0b, dt, n_steps,
                              noise_scale=noise_scale, increments=incs, store_every=store)
        rho = system.transform(path.displacement)
        norms = system.basis.norm(rho, order=sobolev_order)
        sup_norms.append(float(np.mean(np.max(norms, axis=0))))
        rho_small, times = rho, path.times

    lag_steps = np.maximum(1, np.round(np.asarray(lags) / (times[1] - times[0])).astype(int))
    moments = []
    for k in lag_steps:
        diff = rho_small[k:] - rho_small[:-k]
        moments.append(float(np.mean(np.sum(diff**2, axis=-1))))
    moments = np.asarray(moments)
    actual_lags = lag_steps * (times[1] - times[0])
    kappa = float(np.polyfit(np.log(actual_lags), np.log(moments), 1)[0])
    return TightnessStudy(masses, np.asarray(sup_norms), kappa, actual_lags, moments)
