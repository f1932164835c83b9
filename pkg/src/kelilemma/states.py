"""Density matrices, state pairs, seeded samplers and tensor powers."""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidStateError, ResourceError
from .linalg import EigenSystem, eig_hermitian, hermitian

FLOOR = 1e-10
TRACE_TOL = 1e-8
TENSOR_GUARD = 4096


@dataclass(frozen=True)
class DensityMatrix:
    """A faithful state. ``regularized`` records whether eigenvalues were clipped."""

    matrix: np.ndarray
    eig: EigenSystem = field(repr=False)
    regularized: bool = False

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def eigenvalues(self):
        return self.eig.eigenvalues


@dataclass(frozen=True)
class StatePair:
    rho: DensityMatrix
    sigma: DensityMatrix

    def __post_init__(self):
        if self.rho.dim != self.sigma.dim:
            raise InvalidStateError(
                "dim", f"rho is {self.rho.dim}-dimensional, sigma is {self.sigma.dim}"
            )

    @property
    def dim(self):
        return self.rho.dim

    def swapped(self):
        return StatePair(self.sigma, self.rho)


def _clip_spectrum(w, floor):
    # Raise small eigenvalues to the floor and take the extra mass out of the
    # others proportionally; repeat in case that pushes one below the floor.
    w = w / w.sum()
    low = w < floor
    while True:
        k = int(low.sum())
        if k == 0:
            return w
        if k * floor >= 1.0:
            return np.full_like(w, 1.0 / w.size)
        rest = w[~low].sum()
        w = np.where(low, floor, w * (1.0 - k * floor) / rest)
        new_low = low | (w < floor)
        if np.array_equal(new_low, low):
            return w
        low = new_low


def density_from_matrix(m, floor=FLOOR):
    """Validate ``m`` as a density matrix, clipping eigenvalues below ``floor``.

    The trace must be positive and, up to ``TRACE_TOL``, equal to one; it is
    then normalized exactly. When clipping happens the returned state has
    ``regularized=True``.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InvalidStateError("shape", f"expected a square matrix, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidStateError("finite", "matrix has non-finite entries")
    try:
        h = hermitian(a)
    except ValueError as exc:
        raise InvalidStateError("hermitian", str(exc)) from None
    tr = float(np.trace(h).real)
    if tr <= 0:
        raise InvalidStateError("trace", f"trace {tr} is not positive")
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError("trace", f"trace {tr} differs from 1")
    es = eig_hermitian(h / tr)
    w = es.eigenvalues
    if np.all(w >= floor):
        return DensityMatrix(h / tr, es, False)
    w = _clip_spectrum(np.maximum(w, 0.0), floor)
    v = es.eigenvectors
    mat = (v * w) @ v.conj().T
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(mat, EigenSystem(w, v), True)


def _ginibre(rng, dim):
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)


def random_unitary(rng, dim):
    """Haar-distributed unitary (QR of a Ginibre matrix with phase correction)."""
    q, r = np.linalg.qr(_ginibre(rng, dim))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_density(dim, seed, floor=FLOOR):
    """Seeded Ginibre-ensemble density matrix ``G G* / tr(G G*)``."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    g = _ginibre(_rng(seed), dim)
    w = g @ g.conj().T
    return density_from_matrix(w / np.trace(w).real, floor)


def random_pair(dim, seed, floor=FLOOR):
    """Two independent Ginibre states drawn from one generator."""
    rng = _rng(seed)
    return StatePair(random_density(dim, rng, floor), random_density(dim, rng, floor))


def random_commuting_pair(dim, seed, floor=FLOOR):
    """Two states diagonal in a shared Haar-random eigenbasis.

    Spectra are uniform on the simplex (normalized exponentials).
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rng = _rng(seed)
    p = rng.standard_exponential(dim)
    q = rng.standard_exponential(dim)
    u = random_unitary(rng, dim)
    rho = (u * (p / p.sum())) @ u.conj().T
    sigma = (u * (q / q.sum())) @ u.conj().T
    return StatePair(density_from_matrix(rho, floor), density_from_matrix(sigma, floor))


def tensor_power(state, n):
    """n-fold Kronecker power of a state (small sizes only)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if state.dim**n > TENSOR_GUARD:
        raise ResourceError(
            f"dim**n = {state.dim ** n} exceeds {TENSOR_GUARD}; "
            "use the convolution path (iid_keli_beta_bound) instead"
        )
    m = state.matrix
    out = m
    for _ in range(n - 1):
        out = np.kron(out, m)
    return density_from_matrix(out, 0.0)


def diagonal_pair(rho_diag, sigma_diag):
    return StatePair(
        density_from_matrix(np.diag(rho_diag)), density_from_matrix(np.diag(sigma_diag))
    )


# State-pair file: {"dim": n, "rho": M, "sigma": M}, M an n x n array of [re, im].


def _decode_matrix(name, raw, dim):
    try:
        a = np.asarray(raw, dtype=np.float64)
    except (TypeError, ValueError):
        raise InvalidStateError("shape", f"{name}: entries must be [re, im] pairs") from None
    if a.shape != (dim, dim, 2):
        raise InvalidStateError(
            "shape", f"{name}: expected shape ({dim}, {dim}, 2), got {a.shape}"
        )
    return a[..., 0] + 1j * a[..., 1]


def _strict_density(name, m, floor):
    try:
        h = hermitian(m)
    except ValueError as exc:
        kind = "finite" if "non-finite" in str(exc) else "hermitian"
        raise InvalidStateError(kind, f"{name}: {exc}") from None
    w = np.linalg.eigvalsh(h)
    if w[0] < -1e-12:
        raise InvalidStateError("positivity", f"{name}: eigenvalue {w[0]:.3e} < 0")
    try:
        return density_from_matrix(h, floor)
    except InvalidStateError as exc:
        raise InvalidStateError(exc.invariant, f"{name}: {exc}") from None


def pair_from_dict(doc, floor=FLOOR):
    if not isinstance(doc, dict) or not {"dim", "rho", "sigma"} <= doc.keys():
        raise InvalidStateError("shape", "document needs keys 'dim', 'rho', 'sigma'")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidStateError("dim", f"'dim' must be a positive integer, got {dim!r}")
    rho = _strict_density("rho", _decode_matrix("rho", doc["rho"], dim), floor)
    sigma = _strict_density("sigma", _decode_matrix("sigma", doc["sigma"], dim), floor)
    return StatePair(rho, sigma)


def pair_to_dict(pair):
    def enc(m):
        return [[[float(z.real), float(z.imag)] for z in row] for row in m]

    return {"dim": pair.dim, "rho": enc(pair.rho.matrix), "sigma": enc(pair.sigma.matrix)}


def load_pair(path, floor=FLOOR):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidStateError("shape", f"not valid JSON: {exc}") from None
    return pair_from_dict(doc, floor)


def save_pair(pair, path):
    with open(path, "w") as fh:
        json.dump(pair_to_dict(pair), fh, indent=1)
