"""Q-Wiener noise on the sine eigenbasis.

The driving noise is white in time and colored in space, with covariance
operator ``Q`` diagonal in the Dirichlet sine basis: ``Q e_i = q_i e_i``
with ``q_i >= 0``.  A truncated increment over a step ``dt`` is

    dW(x) = sum_i q_i e_i(x) xi_i sqrt(dt),    xi_i ~ N(0, 1) iid,

so mode ``i`` of the increment has standard deviation ``q_i sqrt(dt)``.
The state-dependent amplitude ``s(x, u(x))`` multiplies the increment
pointwise in ``x`` and is applied by the integrators, not here.
"""

from __future__ import annotations

import numpy as np

from .basis import SineBasis

__all__ = ["QWiener", "power_spectrum", "exponential_spectrum", "flat_spectrum"]


def power_spectrum(n_modes: int, decay: float, scale: float = 1.0) -> np.ndarray:
    """Eigenvalues ``q_i = scale * i**(-decay)``, i = 1..n_modes."""
    i = np.arange(1, n_modes + 1, dtype=float)
    return scale * i ** (-decay)

def exponential_spectrum(n_modes: int, rate: float, scale: float = 1.0) -> np.ndarray:
    """Eigenvalues ``q_i = scale * exp(-rate * (i - 1))``."""
    i = np.arange(n_modes, dtype=float)
    return scale * np.exp(-rate * i)

def flat_spectrum(n_modes: int, scale: float = 1.0) -> np.ndarray:
    """Equal weight on every retained mode (space-time white up to cutoff)."""
    return np.full(n_modes, scale)


class QWiener:
    """Sampler and bookkeeping for a diagonal Q-Wiener process.

    Parameters
    ----------
    basis : SineBasis
        Spatial basis; the covariance eigenfunctions are its modes.
    spectrum : array of shape (n_modes,)
        The eigenvalues ``q_i`` of Q (amplitudes, not variances).
    seed : int or numpy Generator, optional
        Seeds the internal RNG; pass a Generator to share a stream.
    """

    def __init__(self, basis: SineBasis, spectrum, seed=None):
        spectrum = np.asarray(spectrum, dtype=float)
        if spectrum.shape != (basis.n_modes,):
            raise ValueError("spectrum must have one eigenvalue per mode")
        if np.any(spectrum < 0):
            raise ValueError("covariance eigenvalues must be nonnegative")
        self.basis = basis
        self.spectrum = spectrum
        self.rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    # -- sampling ------------------------------------------------------

    def standard_increments(self, dt: float, n_steps: int, n_paths: int | None = None):
        """Unit Brownian mode increments, shape (n_steps[, n_paths], n_modes).

        These carry the sqrt(dt) scaling but not the spectrum, so a whole
        experiment can reuse one draw across couplings (same noise for the
        wave system and its limit equation, or across mass parameters).
        """
        shape = (n_steps, self.basis.n_modes) if n_paths is None else (n_steps, n_paths, self.basis.n_modes)
        return self.rng.standard_normal(shape) * np.sqrt(dt)

    def color(self, increments: np.ndarray) -> np.ndarray:
        """Apply Q to raw mode increments: multiply mode i by q_i."""
        return increments * self.spectrum

    def increment_on_grid(self, dt: float, n_paths: int | None = None) -> np.ndarray:
        """One colored increment evaluated on the quadrature grid."""
        raw = self.standard_increments(dt, 1, n_paths)[0]
        return self.basis.to_grid(self.color(raw))

    # -- derived quantities --------------------------------------------

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        """Q acting on sine coefficients."""
        return coeffs * self.spectrum

    def kernel_diagonal(self) -> np.ndarray:
        """Pointwise variance rate ``k(x) = sum_i q_i^2 e_i(x)^2``.

        This is the diagonal of the covariance kernel of ``Q dW``; the
        drift corrector of the small-mass limit is proportional to it.
        """
        return (self.spectrum**2) @ (self.basis._eval**2)

    def trace(self) -> float:
        """Trace of ``Q Q^*`` (total variance rate of the increment)."""
        return float(np.sum(self.spectrum**2))

    def cameron_martin_norm_sq(self, coeffs: np.ndarray) -> np.ndarray:
        """Squared H-norm ``|phi|^2 = sum_i phi_i^2`` of mode coefficients.

        Controls enter the dynamics through Q, so their cost is the plain
        L^2 norm of the coefficient vector; kept explicit for readability
        at call sites.
        """
        return np.sum(np.asarray(coeffs) ** 2, axis=-1)
