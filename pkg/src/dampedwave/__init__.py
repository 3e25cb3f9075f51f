"""Stochastic damped wave equations with state-dependent friction.

Spectral solvers for the second-order system and its vanishing-mass
limit, the monotone change of variables linking the two, steering
controls and their costs, and tilted estimators for rare terminal
events in the joint small-mass small-noise regime.
"""

from .action import (
    ActionResult,
    least_norm_control,
    lq_steering_cost,
    lq_steering_cost_discrete,
    minimum_action,
    path_action,
)
from .basis import SineBasis
from .coefficients import (
    Force,
    Friction,
    LinearForce,
    NoiseAmplitude,
    PowerForce,
    TruncatedForce,
    constant_friction,
    tanh_friction,
)
from .limits import (
    ControlledStudy,
    RateStudy,
    SmallMassStudy,
    TightnessStudy,
    controlled_convergence_study,
    ldp_rate_study,
    small_mass_study,
    tightness_study,
)
from .noise import QWiener, exponential_spectrum, flat_spectrum, power_spectrum
from .parabolic import ParabolicPath, integrate_limit, integrate_transformed, skeleton
from .presets import bump, linear_system, lipschitz_system, polynomial_system
from .rare_events import (
    EstimatorResult,
    naive_probability,
    terminal_ball,
    tilted_probability,
)
from .system import System
from .verification import (
    OrderStudy,
    limit_order,
    spatial_decay,
    transformed_order,
    wave_order,
)
from .wave import WavePath, integrate_wave, max_stable_dt, wave_energy

__version__ = "0.1.0"

__all__ = [
    "ActionResult",
    "ControlledStudy",
    "EstimatorResult",
    "Force",
    "Friction",
    "LinearForce",
    "NoiseAmplitude",
    "OrderStudy",
    "ParabolicPath",
    "PowerForce",
    "QWiener",
    "RateStudy",
    "SineBasis",
    "SmallMassStudy",
    "System",
    "TightnessStudy",
    "TruncatedForce",
    "WavePath",
    "bump",
    "constant_friction",
    "controlled_convergence_study",
    "exponential_spectrum",
    "flat_spectrum",
    "integrate_limit",
    "integrate_transformed",
    "integrate_wave",
    "ldp_rate_study",
    "least_norm_control",
    "limit_order",
    "linear_system",
    "lipschitz_system",
    "lq_steering_cost",
    "lq_steering_cost_discrete",
    "max_stable_dt",
    "minimum_action",
    "naive_probability",
    "path_action",
    "polynomial_system",
    "power_spectrum",
    "skeleton",
    "small_mass_study",
    "spatial_decay",
    "tanh_friction",
    "terminal_ball",
    "tightness_study",
    "tilted_probability",
    "transformed_order",
    "wave_energy",
    "wave_order",
]
