"""Finite atomic measures on the real line with exact convolution.

Pruned mass is never silently lost: it accumulates in ``defect`` so that
tail queries return a guaranteed enclosure (``TailInterval``).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ResourceError

MERGE_TOL = 1e-12
ATOM_BUDGET = 5_000_000


@dataclass(frozen=True)
class TailInterval:
    lower: float
    upper: float

    @property
    def midpoint(self):
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self):
        return self.upper - self.lower

    def __contains__(self, value):
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class AtomicMeasure:
    """Atoms at strictly increasing ``positions`` with nonnegative ``masses``.

    ``total`` is the mass the measure had before any pruning and ``defect``
    how much of it was dropped, so ``masses.sum() + defect == total``.
    """

    positions: np.ndarray
    masses: np.ndarray
    defect: float = 0.0
    total: float = 1.0
    merge_tol: float = MERGE_TOL

    @classmethod
    def from_atoms(cls, positions, masses, *, defect=0.0, total=None,
                   merge_tol=MERGE_TOL, prune_tol=0.0):
        """Sort, merge atoms closer than ``merge_tol`` and prune light atoms.

        Merged atoms sit at their mass-weighted position. Atoms of zero mass
        are discarded; atoms lighter than ``prune_tol`` go into the defect.
        """
        x = np.asarray(positions, dtype=np.float64).ravel()
        m = np.asarray(masses, dtype=np.float64).ravel()
        if x.shape != m.shape:
            raise ValueError("positions and masses differ in length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(m))):
            raise ValueError("non-finite atom")
        if np.any(m < 0):
            raise ValueError("negative mass")
        if total is None:
            total = float(m.sum()) + defect
        keep = m > 0
        x, m = x[keep], m[keep]
        order = np.argsort(x, kind="stable")
        x, m = x[order], m[order]
        if x.size > 1:
            starts = np.concatenate(([0], np.flatnonzero(np.diff(x) > merge_tol) + 1))
            if starts.size < x.size:
                mass = np.add.reduceat(m, starts)
                x = np.add.reduceat(m * x, starts) / mass
                m = mass
        if prune_tol > 0:
            light = m < prune_tol
            if light.any():
                defect += float(m[light].sum())
                x, m = x[~light], m[~light]
        return cls(x, m, float(defect), float(total), merge_tol)

    @classmethod
    def dirac(cls, position=0.0):
        return cls(np.array([float(position)]), np.array([1.0]))

    def __len__(self):
        return self.positions.size

    @property
    def mass(self):
        return float(self.masses.sum())

    def mean(self):
        return float(np.dot(self.masses, self.positions) / self.mass)

    def central_moment(self, k, absolute=False):
        d = self.positions - self.mean()
        if absolute:
            d = np.abs(d)
        return float(np.dot(self.masses, d**k) / self.mass)

    def variance(self):
        return self.central_moment(2)


def convolve(a, b, merge_tol=MERGE_TOL, prune_tol=0.0, budget=ATOM_BUDGET):
    """Distribution of the sum of independent draws from ``a`` and ``b``."""
    if len(a) * len(b) > budget:
        raise ResourceError(
            f"convolution would create {len(a) * len(b)} atoms (budget {budget}); "
            "increase prune_tol"
        )
    x = np.add.outer(a.positions, b.positions)
    m = np.multiply.outer(a.masses, b.masses)
    lost = a.defect * b.total + b.defect * a.total - a.defect * b.defect
    return AtomicMeasure.from_atoms(
        x, m, defect=lost, total=a.total * b.total, merge_tol=merge_tol, prune_tol=prune_tol
    )


def convolve_power(m, n, merge_tol=MERGE_TOL, prune_tol=0.0, budget=ATOM_BUDGET):
    """n-fold self-convolution by binary exponentiation."""
    if n < 1:
        raise ValueError("n must be at least 1")
    result = None
    base = m
    while True:
        if n & 1:
            result = base if result is None else convolve(result, base, merge_tol, prune_tol, budget)
        n >>= 1
        if not n:
            return result
        base = convolve(base, base, merge_tol, prune_tol, budget)


def tail_mass(m, threshold, strict=True):
    """Enclosure of the mass above ``threshold``.

    Atoms within ``merge_tol`` of the threshold cannot be placed reliably on
    either side, so they only count toward ``upper``, as does the defect.
    ``strict`` selects ``>`` versus ``>=`` for the remaining atoms.
    """
    x, w = m.positions, m.masses
    band = np.abs(x - threshold) <= m.merge_tol
    above = (x > threshold) if strict else (x >= threshold)
    lower = float(w[above & ~band].sum())
    upper = lower + float(w[band].sum()) + m.defect
    return TailInterval(lower, min(upper, m.total + 1e-12))
