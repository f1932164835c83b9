"""Ke Li's bound for tensor powers and the second-order Stein experiment.

``log Delta`` for ``rho^{(x)n}, sigma^{(x)n}`` is a sum of ``n`` independent
copies of ``log Delta`` for one copy, so its law is an n-fold convolution of
the single-copy spectral distribution.
"""

import math
from dataclasses import dataclass

from .bounds import divergences, keli_beta_bound, second_order_prediction
from .measure import ATOM_BUDGET, MERGE_TOL, TailInterval, convolve_power, tail_mass
from .modular import modular_spectrum, spectral_distribution
from .states import StatePair, tensor_power


@dataclass(frozen=True)
class SteinRow:
    n: int
    log_eps_n: float
    alpha_tail: TailInterval
    minus_log_beta: float
    predicted: float


def iid_distribution(pair, n, reference="sigma", merge_tol=MERGE_TOL, prune_tol=0.0,
                     budget=ATOM_BUDGET):
    base = spectral_distribution(modular_spectrum(pair), reference, merge_tol)
    return convolve_power(base, n, merge_tol, prune_tol, budget)


def iid_keli_beta_bound(pair, eps, n, merge_tol=MERGE_TOL, prune_tol=0.0,
                        budget=ATOM_BUDGET):
    """Enclosure of Ke Li's beta bound for ``n`` copies of ``pair``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    m = iid_distribution(pair, n, "sigma", merge_tol, prune_tol, budget)
    return tail_mass(m, math.log(eps), strict=True)


def tensor_beta_bound_direct(pair, eps, n):
    """Same bound from explicit Kronecker powers; an oracle for small ``dim**n``."""
    big = StatePair(tensor_power(pair.rho, n), tensor_power(pair.sigma, n))
    return keli_beta_bound(big, eps)


def berry_esseen_budget(pair, n, slack=1.2):
    """``slack * E|X - D|^3 / V^{3/2} / sqrt(n)`` for the single-copy log-ratio law under rho."""
    base = spectral_distribution(modular_spectrum(pair), "rho")
    v = base.variance()
    return slack * base.central_moment(3, absolute=True) / v**1.5 / math.sqrt(n)


def stein_experiment(pair, eps, n_list, merge_tol=MERGE_TOL, prune_tol=0.0,
                     budget=ATOM_BUDGET):
    """Rows tracking the type-I error of a test with ``-log beta = nD + sqrt(n) t``.

    For each ``n`` the lemma is applied to the swapped pair
    ``(sigma^{(x)n}, rho^{(x)n})`` at ``eps_n = exp(-(nD + sqrt(n) t))`` with
    ``t = sqrt(V) Phi^{-1}(eps)``; the complement of that test has
    ``beta <= eps_n`` and ``alpha`` at most the tail recorded in the row,
    which should approach ``eps`` as ``n`` grows.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    rep = divergences(pair)
    swapped = pair.swapped()
    # The swapped pair's sigma is rho: atoms at log(mu/lambda) weighted by rho.
    base = spectral_distribution(modular_spectrum(swapped), "sigma", merge_tol)
    rows = []
    for n in n_list:
        predicted = second_order_prediction(rep.D, rep.V, eps, n)
        log_eps_n = -predicted
        m = convolve_power(base, n, merge_tol, prune_tol, budget)
        rows.append(SteinRow(
            n=n,
            log_eps_n=log_eps_n,
            alpha_tail=tail_mass(m, log_eps_n, strict=True),
            minus_log_beta=-log_eps_n,
            predicted=predicted,
        ))
    return rows
