"""Projective tests between two states and their error probabilities.

Convention: outcome 1 of a test ``T`` means "sigma", so
``alpha(T) = tr(rho T)`` and ``beta(T) = tr(sigma (1 - T))``.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import IND_TOL, apply_fn, eig_hermitian, is_projector, support_projector
from .modular import modular_spectrum, project_omega_sigma
from .states import _rng

ERROR_TOL = 1e-10


@dataclass(frozen=True)
class Test:
    """An orthogonal projector on ``C^dim``."""

    __test__ = False  # keep pytest from collecting this class

    projector: np.ndarray

    @property
    def dim(self):
        return self.projector.shape[0]

    def is_valid(self, tol=1e-9):
        return is_projector(self.projector, tol)

    @classmethod
    def zero(cls, dim):
        return cls(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim, dtype=np.complex128))


@dataclass(frozen=True)
class ErrorPair:
    alpha: float
    beta: float


def keli_test(pair, eps, rank_tol=None, ind_tol=IND_TOL):
    """Left support of the projected vector ``1_(0,eps](Delta) sigma^{1/2}``."""
    x = project_omega_sigma(modular_spectrum(pair), eps, ind_tol)
    return Test(support_projector(x, rank_tol))


def keli_test_spanning(pair, eps, rank_tol=None, ind_tol=IND_TOL):
    """Projector onto ``span{Q_y b_y}`` with ``Q_y = 1[rho <= eps mu_y]``.

    Builds the same test as :func:`keli_test` from the eigenvectors of sigma
    directly, one spectral projector of rho per eigenvalue of sigma.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    rho = pair.rho
    mus = pair.sigma.eigenvalues
    b = pair.sigma.eig.eigenvectors
    xi = np.empty_like(b)
    for y, mu in enumerate(mus):
        c = eps * mu
        q = apply_fn(rho.matrix, lambda w, c=c: (w <= c + ind_tol * (1.0 + c)).astype(float),
                     eig=rho.eig)
        xi[:, y] = q @ b[:, y]
    return Test(support_projector(xi, rank_tol))


def tie_tolerance(h):
    return 1e-12 * (1.0 + float(np.linalg.norm(h, 2)))


def neyman_pearson_test(pair, p):
    """Projector minimizing ``p alpha + (1 - p) beta``.

    That is the spectral projector of ``p rho - (1 - p) sigma`` onto its
    strictly negative eigenvalues; eigenvalues within the tie band are left
    out, which does not change the risk beyond ``dim * tie_tol``.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    h = p * pair.rho.matrix - (1 - p) * pair.sigma.matrix
    tie = tie_tolerance(h)
    es = eig_hermitian(h)
    return Test(apply_fn(h, lambda w: (w < -tie).astype(float), eig=es))


def error_pair(pair, test, tol=ERROR_TOL):
    t = test.projector if isinstance(test, Test) else np.asarray(test)
    if t.shape != (pair.dim, pair.dim):
        raise ValueError(f"test has shape {t.shape}, states have dim {pair.dim}")
    alpha = float(np.real(np.vdot(pair.rho.matrix, t)))
    beta = 1.0 - float(np.real(np.vdot(pair.sigma.matrix, t)))
    for name, v in (("alpha", alpha), ("beta", beta)):
        if not -tol <= v <= 1 + tol:
            raise ValueError(f"{name} = {v} outside [0, 1]; is the test a projector?")
    return ErrorPair(min(max(alpha, 0.0), 1.0), min(max(beta, 0.0), 1.0))


def bayes_risk(pair, p, test):
    e = error_pair(pair, test)
    return p * e.alpha + (1 - p) * e.beta


def random_projector_tests(dim, count, seed):
    """``count`` seeded random projectors, shape ``(count, dim, dim)``.

    Ranks are uniform on ``0..dim``; ranges are spanned by leading columns of
    Haar unitaries.
    """
    rng = _rng(seed)
    ranks = rng.integers(0, dim + 1, size=count)
    g = rng.standard_normal((count, dim, dim)) + 1j * rng.standard_normal((count, dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r, axis1=1, axis2=2)
    q = q * (d / np.abs(d))[:, None, :]
    q = q * (np.arange(dim)[None, :] < ranks[:, None])[:, None, :]
    return q @ q.conj().transpose(0, 2, 1)


def bayes_risks(pair, p, projectors):
    """Vectorized Bayes risk over a stack of projectors."""
    alpha = np.einsum("ij,kji->k", pair.rho.matrix, projectors).real
    beta = 1.0 - np.einsum("ij,kji->k", pair.sigma.matrix, projectors).real
    return p * alpha + (1 - p) * beta
