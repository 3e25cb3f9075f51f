"""Sine spectral basis for Dirichlet problems on an interval.

Everything in this package is discretized with the eigenfunctions of the
Dirichlet Laplacian on ``[0, L]``,

    e_i(x) = sqrt(2/L) sin(i pi x / L),      -e_i'' = alpha_i e_i,
    alpha_i = (i pi / L)**2,                 i = 1, 2, ...

Coefficient vectors live in the leading ``n_modes`` of this basis; grid
values live on a uniform midpoint grid, where the discrete sine transform
is exactly orthogonal.  Nonlinear terms are evaluated pointwise on the
grid and projected back (pseudo-spectral Galerkin), so the grid should be
finer than the mode cutoff to keep aliasing small; the default uses twice
as many points as modes.

All operations broadcast over leading batch axes: coefficient arrays have
shape ``(..., n_modes)`` and grid arrays ``(..., n_points)``.
"""

from __future__ import annotations

import numpy as np


class SineBasis:
    """Truncated sine basis with midpoint-rule quadrature.

    Parameters
    ----------
    n_modes : int
        Number of retained eigenfunctions.
    length : float
        Domain length ``L``; the domain is ``(0, L)``.
    n_points : int, optional
        Number of quadrature/collocation points.  Defaults to ``2 * n_modes``,
        which keeps products of moderate degree alias-free.  Must exceed
        ``n_modes``.
    """

    def __init__(self, n_modes: int, length: float = 1.0, n_points: int | None = None):
        if n_modes < 1:
            raise ValueError("n_modes must be positive")
        if length <= 0:
            raise ValueError("length must be positive")
        if n_points is None:
            n_points = 2 * n_modes
        if n_points <= n_modes:
            raise ValueError("n_points must exceed n_modes")

        self.n_modes = n_modes
        self.length = float(length)
        self.n_points = n_points

        i = np.arange(1, n_modes + 1)
        self.wavenumbers = i * np.pi / self.length
        # Laplacian eigenvalues (positive convention): -e_i'' = alpha_i e_i.
        self.eigenvalues = self.wavenumbers**2

        # Midpoint grid: sums of sin(i pi x_q / L) over it are exactly
        # orthogonal for i < n_points, so project/to_grid are mutual inverses
        # on the retained band.
        h = self.length / n_points
        self.x = (np.arange(n_points) + 0.5) * h
        self.quad_weight = h

        scale = np.sqrt(2.0 / self.length)
        phase = np.outer(self.wavenumbers, self.x)
        self._eval = scale * np.sin(phase)                         # (N, M)
        self._eval_dx = scale * self.wavenumbers[:, None] * np.cos(phase)

    # ------------------------------------------------------------------
    # transforms
    # ------------------------------------------------------------------

    def to_grid(self, coeffs: np.ndarray) -> np.ndarray:
        """Evaluate a coefficient array on the quadrature grid."""
        return np.asarray(coeffs) @ self._eval

    def gradient_on_grid(self, coeffs: np.ndarray) -> np.ndarray:
        """Evaluate the spatial derivative of a coefficient array on the grid."""
        return np.asarray(coeffs) @ self._eval_dx

    def laplacian_on_grid(self, coeffs: np.ndarray) -> np.ndarray:
        """Evaluate the Laplacian of a coefficient array on the grid."""
        return -(np.asarray(coeffs) * self.eigenvalues) @ self._eval

    def project(self, values: np.ndarray) -> np.ndarray:
        """L2-project grid values onto the retained modes.

        Exact for functions in the span of the first ``n_points - 1`` sine
        modes; otherwise the quadrature aliases the unresolved tail.
        """
        return self.quad_weight * (np.asarray(values) @ self._eval.T)

    def weak_divergence(self, flux_values: np.ndarray) -> np.ndarray:
        """Coefficients of div(flux) for a flux given by grid values.

        Uses the weak form <div F, e_i> = -<F, e_i'>, valid because the
        basis functions vanish on the boundary.
        """
        return -self.quad_weight * (np.asarray(flux_values) @ self._eval_dx.T)

    def evaluate(self, coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Evaluate a coefficient array at arbitrary locations ``x``."""
        x = np.asarray(x)
        basis = np.sqrt(2.0 / self.length) * np.sin(np.outer(self.wavenumbers, x))
        return np.asarray(coeffs) @ basis

    # ------------------------------------------------------------------
    # norms and inner products
    # ------------------------------------------------------------------

    def inner(self, coeffs_a: np.ndarray, coeffs_b: np.ndarray) -> np.ndarray:
        """L2 inner product of two coefficient arrays."""
        return np.sum(np.asarray(coeffs_a) * np.asarray(coeffs_b), axis=-1)

    def norm(self, coeffs: np.ndarray, order: float = 0.0) -> np.ndarray:
        """Fractional Sobolev norm of a coefficient array.

        ``order=0`` is the L2 norm, ``order=1`` the H^1 seminorm induced by
        the Dirichlet Laplacian, negative orders give dual norms; fractional
        values interpolate through the spectral weights alpha_i**order.
        """
        weights = self.eigenvalues**order if order != 0.0 else 1.0
        coeffs = np.asarray(coeffs)
        return np.sqrt(np.sum(weights * coeffs**2, axis=-1))

    def lp_norm_grid(self, values: np.ndarray, p: float = 2.0) -> np.ndarray:
        """L^p norm of grid values by midpoint quadrature."""
        values = np.asarray(values)
        if np.isinf(p):
            return np.max(np.abs(values), axis=-1)
        return (self.quad_weight * np.sum(np.abs(values) ** p, axis=-1)) ** (1.0 / p)

    def lp_norm(self, coeffs: np.ndarray, p: float = 2.0) -> np.ndarray:
        """L^p norm of a coefficient array (evaluated on the grid)."""
        return self.lp_norm_grid(self.to_grid(coeffs), p)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Integral of grid values over the domain."""
        return self.quad_weight * np.sum(np.asarray(values), axis=-1)
