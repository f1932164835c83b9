"""Relative modular operator of a state pair, represented spectrally.

On Hilbert-Schmidt space the map ``X -> rho X sigma^{-1}`` has eigenvectors
``|a_x><b_y|`` with eigenvalues ``lambda_x / mu_y``, where ``rho = sum
lambda_x |a_x><a_x|`` and ``sigma = sum mu_y |b_y><b_y|``. Everything
downstream only needs the two spectra and the overlaps ``<a_x|b_y>``, so the
``dim**2 x dim**2`` superoperator is never formed.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import IND_TOL, apply_fn, indicator_le
from .measure import MERGE_TOL, AtomicMeasure


@dataclass(frozen=True)
class ModularSpectrum:
    lambdas: np.ndarray
    mus: np.ndarray
    a: np.ndarray  # eigenvectors of rho, as columns
    b: np.ndarray  # eigenvectors of sigma, as columns
    overlaps: np.ndarray  # overlaps[x, y] = <a_x|b_y>

    @property
    def dim(self):
        return self.lambdas.size

    @property
    def ratios(self):
        return self.lambdas[:, None] / self.mus[None, :]

    @property
    def log_ratios(self):
        return np.log(self.lambdas)[:, None] - np.log(self.mus)[None, :]

    @property
    def weight_sigma(self):
        return self.mus[None, :] * np.abs(self.overlaps) ** 2

    @property
    def weight_rho(self):
        return self.lambdas[:, None] * np.abs(self.overlaps) ** 2

    def below(self, eps, ind_tol=IND_TOL):
        """Mask of pairs with ``lambda_x <= eps * mu_y`` (closed, banded)."""
        c = eps * self.mus[None, :]
        return self.lambdas[:, None] <= c + ind_tol * (1.0 + np.abs(c))


def modular_spectrum(pair):
    a = pair.rho.eig.eigenvectors
    b = pair.sigma.eig.eigenvectors
    return ModularSpectrum(
        pair.rho.eigenvalues, pair.sigma.eigenvalues, a, b, a.conj().T @ b
    )


def omega_sigma(pair):
    """Hilbert-Schmidt vector ``sigma^{1/2}`` representing sigma."""
    return apply_fn(pair.sigma.matrix, np.sqrt, eig=pair.sigma.eig)


def project_omega_sigma(spec, eps, ind_tol=IND_TOL):
    """Spectral projection of ``Delta`` on ``(0, eps]`` applied to ``sigma^{1/2}``.

    Returns the matrix ``sum_{lambda_x <= eps mu_y} mu_y^{1/2} <a_x|b_y>
    |a_x><b_y|``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    coef = np.where(spec.below(eps, ind_tol), spec.overlaps, 0.0) * np.sqrt(spec.mus)[None, :]
    return spec.a @ coef @ spec.b.conj().T


def spectral_distribution(spec, reference="sigma", merge_tol=MERGE_TOL):
    """Law of ``log Delta`` in the vector state of ``sigma`` or ``rho``."""
    if reference == "sigma":
        w = spec.weight_sigma
    elif reference == "rho":
        w = spec.weight_rho
    else:
        raise ValueError(f"reference must be 'sigma' or 'rho', got {reference!r}")
    return AtomicMeasure.from_atoms(spec.log_ratios, w, total=1.0, merge_tol=merge_tol)


def verify_modular_relation(pair, x):
    """Residual of ``J Delta^{1/2} (X sigma^{1/2}) = X* rho^{1/2}`` (max-entry norm)."""
    x = np.asarray(x, dtype=np.complex128)
    sqrt_rho = apply_fn(pair.rho.matrix, np.sqrt, eig=pair.rho.eig)
    sqrt_sigma = apply_fn(pair.sigma.matrix, np.sqrt, eig=pair.sigma.eig)
    inv_sqrt_sigma = apply_fn(pair.sigma.matrix, lambda w: w**-0.5, eig=pair.sigma.eig)
    delta_half = sqrt_rho @ (x @ sqrt_sigma) @ inv_sqrt_sigma
    lhs = delta_half.conj().T
    rhs = x.conj().T @ sqrt_rho
    return float(np.max(np.abs(lhs - rhs)))
