"""Bundles a spatial basis with the coefficient fields of one problem.

A :class:`System` fixes everything except the dynamical regime: the sine
basis, the friction ``gamma``, the reaction ``f``, the noise amplitude
``s`` and the covariance spectrum.  The wave and parabolic integrators,
the action machinery and the rare-event samplers all consume the same
object, so one preset can be pushed through every experiment unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import SineBasis
from .coefficients import Force, Friction, NoiseAmplitude
from .noise import QWiener

__all__ = ["System"]


@dataclass
class System:
    basis: SineBasis
    friction: Friction
    force: Force
    amplitude: NoiseAmplitude
    noise: QWiener

    _kernel_diag: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.noise.basis is not self.basis:
            raise ValueError("noise sampler must be built on the system basis")
        self._kernel_diag = self.noise.kernel_diagonal()

    # -- pointwise fields on the quadrature grid ------------------------

    def reaction_grid(self, u_grid: np.ndarray) -> np.ndarray:
        return self.force(self.basis.x, u_grid)

    def amplitude_grid(self, u_grid: np.ndarray) -> np.ndarray:
        return self.amplitude(self.basis.x, u_grid)

    def corrector_grid(self, u_grid: np.ndarray) -> np.ndarray:
        """Ito drift correction of the vanishing-mass limit, per unit noise.

        c(u)(x) = gamma'(u) / (2 gamma(u)^2) * s(x, u)^2 * k(x)

        with ``k`` the pointwise variance rate of the colored noise.  The
        caller scales it by the squared noise intensity.
        """
        gam = self.friction(u_grid)
        dgam = self.friction.derivative(u_grid)
        s = self.amplitude_grid(u_grid)
        return dgam / (2.0 * gam**2) * s**2 * self._kernel_diag

    # -- monotone change of variables rho = g(u) ------------------------

    def transform(self, u_coeffs: np.ndarray) -> np.ndarray:
        """Map displacement coefficients to coefficients of ``rho = g(u)``."""
        return self.basis.project(self.friction.primitive(self.basis.to_grid(u_coeffs)))

    def untransform(self, rho_coeffs: np.ndarray) -> np.ndarray:
        """Inverse map, ``u = g^{-1}(rho)``, coefficients to coefficients."""
        return self.basis.project(
            self.friction.primitive_inverse(self.basis.to_grid(rho_coeffs))
        )

    # -- controls --------------------------------------------------------

    def control_force_grid(self, u_grid: np.ndarray, phi: np.ndarray) -> np.ndarray:
        """Deterministic forcing ``s(x, u) (Q phi)(x)`` of a mode control phi."""
        return self.amplitude_grid(u_grid) * self.basis.to_grid(self.noise.apply(phi))
