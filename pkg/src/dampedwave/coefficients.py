"""Coefficient models: friction, reaction force and noise amplitude.

The equations treated here share three scalar coefficient fields,

* a friction ``gamma(r)`` bounded between positive constants,
* a reaction force ``f(x, r)``, either globally Lipschitz in ``r`` or of
  odd power type ``-a |r|**(theta-1) r``,
* a multiplicative noise amplitude ``s(x, r)``, Lipschitz in ``r``.

The friction carries its antiderivative ``g(r) = int_0^r gamma`` and the
inverse ``g^{-1}``, which turn the quasilinear equations into divergence
form: with ``rho = g(u)`` the diffusion coefficient becomes
``b(rho) = 1 / gamma(g^{-1}(rho))``, pinched between ``1/gamma_max`` and
``1/gamma_min``.

All value/derivative callables are vectorized over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Friction",
    "constant_friction",
    "tanh_friction",
    "Force",
    "PowerForce",
    "LinearForce",
    "TruncatedForce",
    "NoiseAmplitude",
]


# ----------------------------------------------------------------------
# friction
# ----------------------------------------------------------------------


class Friction:
    """State-dependent friction coefficient with its primitive.

    Parameters
    ----------
    value, derivative : callable
        ``gamma(r)`` and ``gamma'(r)``.
    lower, upper : float
        Bounds ``0 < gamma_min <= gamma(r) <= gamma_max``.
    primitive : callable, optional
        Closed form for ``g(r) = int_0^r gamma``.  When omitted it is
        computed with fixed Gauss-Legendre quadrature, which is exact to
        rounding for smooth ``gamma``.
    primitive_inverse : callable, optional
        Closed form for ``g^{-1}``; defaults to a guarded Newton iteration
        using the bracket ``g^{-1}(p) in [p/gamma_max, p/gamma_min]``.
    """

    _GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)

    def __init__(
        self,
        value: Callable[[np.ndarray], np.ndarray],
        derivative: Callable[[np.ndarray], np.ndarray],
        lower: float,
        upper: float,
        primitive: Callable[[np.ndarray], np.ndarray] | None = None,
        primitive_inverse: Callable[[np.ndarray], np.ndarray] | None = None,
    ):
        if not 0 < lower <= upper:
            raise ValueError("need 0 < lower <= upper")
        self.value = value
        self.derivative = derivative
        self.lower = float(lower)
        self.upper = float(upper)
        self._primitive = primitive
        self._primitive_inverse = primitive_inverse

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return self.value(r)

    def primitive(self, r: np.ndarray) -> np.ndarray:
        """The strictly increasing map ``g(r) = int_0^r gamma(s) ds``."""
        if self._primitive is not None:
            return self._primitive(r)
        r = np.asarray(r, dtype=float)
        # g(r) = r * int_0^1 gamma(r t) dt on Gauss-Legendre nodes for [0, 1]
        t = 0.5 * (self._GL_NODES + 1.0)
        w = 0.5 * self._GL_WEIGHTS
        samples = self.value(r[..., None] * t)
        return r * np.sum(w * samples, axis=-1)

    def primitive_inverse(self, p: np.ndarray) -> np.ndarray:
        """Inverse of ``g``, solved by bracketed Newton when no closed form."""
        if self._primitive_inverse is not None:
            return self._primitive_inverse(p)
        p = np.asarray(p, dtype=float)
        lo = np.minimum(p / self.upper, p / self.lower)
        hi = np.maximum(p / self.upper, p / self.lower)
        r = 0.5 * (lo + hi)
        for _ in range(60):
            resid = self.primitive(r) - p
            if np.max(np.abs(resid)) < 1e-13 * max(1.0, np.max(np.abs(p))):
                break
            r = np.clip(r - resid / self.value(r), lo, hi)
        return r

    def diffusivity(self, rho: np.ndarray) -> np.ndarray:
        """Divergence-form coefficient ``b(rho) = 1 / gamma(g^{-1}(rho))``."""
        return 1.0 / self.value(self.primitive_inverse(rho))

    def validate(self, sample_radius: float = 50.0, n_samples: int = 20001) -> None:
        """Spot-check the declared bounds and the derivative on a grid."""
        r = np.linspace(-sample_radius, sample_radius, n_samples)
        vals = self.value(r)
        if np.any(vals < self.lower - 1e-12) or np.any(vals > self.upper + 1e-12):
            raise ValueError("friction violates its declared bounds")
        step = r[1] - r[0]
        fd = np.gradient(vals, step)
        if np.max(np.abs(fd - self.derivative(r))) > 1e-3 * (1 + np.max(np.abs(fd))):
            raise ValueError("friction derivative inconsistent with value")


def constant_friction(gamma: float) -> Friction:
    """Friction that does not depend on the state."""
    return Friction(
        value=lambda r: np.full_like(np.asarray(r, dtype=float), gamma),
        derivative=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        lower=gamma,
        upper=gamma,
        primitive=lambda r: gamma * np.asarray(r, dtype=float),
        primitive_inverse=lambda p: np.asarray(p, dtype=float) / gamma,
    )


def tanh_friction(base: float, swing: float) -> Friction:
    """Smooth monotone friction ``base + swing * tanh(r)``.

    Bounded in ``(base - swing, base + swing)``; requires ``base > swing >= 0``.
    The primitive has the closed form ``base*r + swing*log(cosh r)``.
    """
    if not base > swing >= 0:
        raise ValueError("need base > swing >= 0 for positivity")
    # log(cosh r) written to avoid overflow for large |r|
    logcosh = lambda r: np.abs(r) + np.log1p(np.exp(-2.0 * np.abs(r))) - np.log(2.0)
    return Friction(
        value=lambda r: base + swing * np.tanh(r),
        derivative=lambda r: swing / np.cosh(r) ** 2,
        lower=base - swing,
        upper=base + swing,
        primitive=lambda r: base * np.asarray(r, dtype=float) + swing * logcosh(r),
    )


# ----------------------------------------------------------------------
# reaction force
# ----------------------------------------------------------------------


@dataclass
class Force:
    """Reaction force ``f(x, r)`` with derivative and antiderivative in r.

    ``growth`` is the polynomial growth exponent theta (1 for Lipschitz
    forces); ``antiderivative`` returns ``int_0^r f(x, s) ds`` and is used
    by the energy diagnostics.
    """

    value: Callable[[np.ndarray, np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray, np.ndarray], np.ndarray]
    antiderivative: Callable[[np.ndarray, np.ndarray], np.ndarray]
    growth: float = 1.0

    def __call__(self, x: np.ndarray, r: np.ndarray) -> np.ndarray:
        return self.value(x, r)


def PowerForce(strength: float, exponent: float) -> Force:
    """Odd dissipative power force ``f(r) = -strength * |r|**(exponent-1) r``.

    The canonical non-Lipschitz nonlinearity: decreasing in ``r`` with
    antiderivative ``-strength |r|**(exponent+1) / (exponent+1)``.
    """
    if strength < 0 or exponent < 1:
        raise ValueError("need strength >= 0 and exponent >= 1")
    a, th = float(strength), float(exponent)

    def value(x, r):
        r = np.asarray(r, dtype=float)
        return -a * np.abs(r) ** (th - 1.0) * r

    def derivative(x, r):
        r = np.asarray(r, dtype=float)
        return -a * th * np.abs(r) ** (th - 1.0)

    def antiderivative(x, r):
        r = np.asarray(r, dtype=float)
        return -a / (th + 1.0) * np.abs(r) ** (th + 1.0)

    return Force(value, derivative, antiderivative, growth=th)


def LinearForce(slope: float) -> Force:
    """Lipschitz force ``f(r) = -slope * r``."""

    def value(x, r):
        return -slope * np.asarray(r, dtype=float)

    def derivative(x, r):
        return np.full_like(np.asarray(r, dtype=float), -slope)

    def antiderivative(x, r):
        r = np.asarray(r, dtype=float)
        return -0.5 * slope * r**2

    return Force(value, derivative, antiderivative, growth=1.0)


def TruncatedForce(force: Force, radius: float) -> Force:
    """Globally Lipschitz truncation, linear beyond ``|r| > radius``.

    Replaces ``f(x, .)`` outside ``[-radius, radius]`` by its tangent line
    at the nearer endpoint, keeping the value and slope continuous.  Useful
    both as the approximating sequence for non-Lipschitz forces and as a
    safety clamp for explicit time stepping.
    """
    n = float(radius)

    def value(x, r):
        r = np.asarray(r, dtype=float)
        rc = np.clip(r, -n, n)
        return force.value(x, rc) + (r - rc) * force.derivative(x, rc)

    def derivative(x, r):
        r = np.asarray(r, dtype=float)
        return force.derivative(x, np.clip(r, -n, n))

    def antiderivative(x, r):
        r = np.asarray(r, dtype=float)
        rc = np.clip(r, -n, n)
        tail = (r - rc) * force.value(x, rc) + 0.5 * (r - rc) ** 2 * force.derivative(x, rc)
        return force.antiderivative(x, rc) + tail

    return Force(value, derivative, antiderivative, growth=force.growth)


# ----------------------------------------------------------------------
# noise amplitude
# ----------------------------------------------------------------------


@dataclass
class NoiseAmplitude:
    """Pointwise noise amplitude ``s(x, r)``, Lipschitz in ``r``.

    The noise term acts as multiplication by ``s(x, u(x))`` on the covariant
    increment, so the operator mapped mode-wise is
    ``h -> s(., u(.)) * (Q h)(.)``.
    """

    value: Callable[[np.ndarray, np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def __call__(self, x: np.ndarray, r: np.ndarray) -> np.ndarray:
        return self.value(x, r)

    @staticmethod
    def constant(level: float) -> "NoiseAmplitude":
        return NoiseAmplitude(
            value=lambda x, r: np.full_like(np.asarray(r, dtype=float), level),
            derivative=lambda x, r: np.zeros_like(np.asarray(r, dtype=float)),
        )

    @staticmethod
    def sine(base: float, swing: float) -> "NoiseAmplitude":
        """Bounded amplitude ``base + swing * sin(r)``; positive if base > |swing|."""
        return NoiseAmplitude(
            value=lambda x, r: base + swing * np.sin(np.asarray(r, dtype=float)),
            derivative=lambda x, r: swing * np.cos(np.asarray(r, dtype=float)),
        )

    @staticmethod
    def affine(base: float, slope: float) -> "NoiseAmplitude":
        """Linear-growth amplitude ``base + slope * r``."""
        return NoiseAmplitude(
            value=lambda x, r: base + slope * np.asarray(r, dtype=float),
            derivative=lambda x, r: np.full_like(np.asarray(r, dtype=float), slope),
        )
