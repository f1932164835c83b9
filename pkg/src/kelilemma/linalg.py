"""Dense Hermitian linear algebra used throughout the package.

Matrices are plain complex ``numpy`` arrays. ``hermitian`` validates and
symmetrizes; every other routine assumes its input already went through it.
"""

from dataclasses import dataclass

import numpy as np

IND_TOL = 1e-12
HERMITIAN_TOL = 1e-8


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and unit eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _as_square(a):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitian(a, tol=HERMITIAN_TOL):
    """Return the Hermitian part of ``a`` after checking it is nearly Hermitian.

    Raises:
        ValueError: if ``a`` is not square, has non-finite entries, or departs
            from Hermiticity by more than ``tol * (1 + max|a|)``.
    """
    a = _as_square(a)
    skew = np.max(np.abs(a - a.conj().T))
    if skew > tol * (1.0 + np.max(np.abs(a))):
        raise ValueError(f"matrix is not Hermitian (max |A - A*| = {skew:.3e})")
    return 0.5 * (a + a.conj().T)


def indicator_le(values, c, ind_tol=IND_TOL):
    """Boolean mask ``values <= c`` with a relative tolerance band at ``c``."""
    return np.asarray(values) <= c + ind_tol * (1.0 + abs(c))


def _fix_phases(vecs, zero_tol=1e-10):
    vecs = vecs.copy()
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        nz = np.flatnonzero(np.abs(col) > zero_tol)
        if nz.size:
            z = col[nz[0]]
            vecs[:, k] = col * (abs(z) / z)
    return vecs


def eig_hermitian(h):
    """Eigendecomposition with a reproducible phase convention.

    Eigenvalues come back ascending; each eigenvector is rotated so its first
    non-negligible component is real and positive.
    """
    h = hermitian(h)
    w, v = np.linalg.eigh(h)
    return EigenSystem(w, _fix_phases(v))


def apply_fn(h, f, eig=None):
    """Functional calculus: ``sum_k f(w_k) |v_k><v_k|``.

    ``f`` is applied to the whole eigenvalue array at once and must return
    finite reals there; otherwise a ``ValueError`` is raised.
    """
    es = eig if eig is not None else eig_hermitian(h)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(es.eigenvalues), dtype=np.float64)
    if fw.shape != es.eigenvalues.shape:
        fw = np.broadcast_to(fw, es.eigenvalues.shape)
    if not np.all(np.isfinite(fw)):
        raise ValueError(
            f"function undefined on spectrum {es.eigenvalues.tolist()}"
        )
    v = es.eigenvectors
    out = (v * fw) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def support_projector(x, rank_tol=None):
    """Orthogonal projector onto the column space of ``x``.

    Singular values at or below ``rank_tol * max(1, s_max)`` count as zero.
    ``rank_tol`` defaults to ``1e-10 * dim``. The zero matrix maps to the
    zero projector.
    """
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 2 or not np.all(np.isfinite(x)):
        raise ValueError("expected a finite 2-D matrix")
    n = x.shape[0]
    if rank_tol is None:
        rank_tol = 1e-10 * n
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    if x.size == 0:
        return np.zeros((n, n), dtype=np.complex128)
    u, s, _ = np.linalg.svd(x, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((n, n), dtype=np.complex128)
    keep = s > rank_tol * max(1.0, s[0])
    u = u[:, keep]
    p = u @ u.conj().T
    return 0.5 * (p + p.conj().T)


def jordan_parts(h):
    """Split ``h`` into positive and negative parts with ``h = pos - neg``."""
    es = eig_hermitian(h)
    w = es.eigenvalues
    v = es.eigenvectors
    pos = (v * np.where(w > 0, w, 0.0)) @ v.conj().T
    neg = (v * np.where(w < 0, -w, 0.0)) @ v.conj().T
    return 0.5 * (pos + pos.conj().T), 0.5 * (neg + neg.conj().T)


def is_projector(p, tol=1e-9):
    p = np.asarray(p)
    if np.max(np.abs(p - p.conj().T), initial=0.0) > tol:
        return False
    if np.max(np.abs(p @ p - p), initial=0.0) > tol:
        return False
    w = np.linalg.eigvalsh(0.5 * (p + p.conj().T))
    return bool(np.all(np.minimum(np.abs(w), np.abs(w - 1.0)) <= tol))


def max_abs(a):
    """Max-entry norm."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0
