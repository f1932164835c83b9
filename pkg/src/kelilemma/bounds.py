"""Scalar quantities: Ke Li's beta bound, quasi-entropies, the Chernoff bound,
relative entropy and its variance, and the second-order Stein prediction.

All logarithms are natural.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import IND_TOL, apply_fn, jordan_parts
from .modular import modular_spectrum

INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class DivergenceReport:
    D: float
    V: float


def keli_beta_bound(pair, eps, ind_tol=IND_TOL, spec=None):
    """sigma-weight of the modular spectrum strictly above ``eps``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    spec = spec if spec is not None else modular_spectrum(pair)
    return float(spec.weight_sigma[~spec.below(eps, ind_tol)].sum())


def _mpow(state, s):
    if s == 0:
        return np.eye(state.dim, dtype=np.complex128)
    return apply_fn(state.matrix, lambda w: w**s, eig=state.eig)


def quasi_entropy(pair, s):
    """``tr(rho^s sigma^(1-s))``."""
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    return float(np.real(np.vdot(_mpow(pair.rho, s).conj().T, _mpow(pair.sigma, 1 - s))))


def quasi_entropy_spectral(pair, s, spec=None):
    """Same quantity as :func:`quasi_entropy`, as a modular-spectrum moment."""
    spec = spec if spec is not None else modular_spectrum(pair)
    return float(np.sum(spec.weight_sigma * spec.ratios**s))


def golden_section(f, lo, hi, tol=1e-10, max_iter=200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    Endpoints are compared against the interior result, so minima on the
    boundary are returned exactly.
    """
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    x = 0.5 * (a + b)
    best = (x, f(x))
    for end in (lo, hi):
        fe = f(end)
        if fe < best[1]:
            best = (end, fe)
    return best


def chernoff_bound(pair, p, tol=1e-10):
    """``min_s p^s q^(1-s) tr(rho^s sigma^(1-s))`` over ``s in [0, 1]``.

    The log of the objective is convex in ``s``, so golden-section search
    finds the global minimum. Returns ``(value, s_star)``.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    q = 1 - p

    def log_g(s):
        return s * math.log(p) + (1 - s) * math.log(q) + math.log(quasi_entropy(pair, s))

    s_star, val = golden_section(log_g, 0.0, 1.0, tol)
    return math.exp(val), s_star


def min_bayes_risk_closed_form(pair, p):
    """``q - tr((p rho - q sigma)_-)``, the optimal Bayes risk."""
    q = 1 - p
    _, neg = jordan_parts(p * pair.rho.matrix - q * pair.sigma.matrix)
    return q - float(np.trace(neg).real)


def _log_ratio_operator(pair):
    log_rho = apply_fn(pair.rho.matrix, np.log, eig=pair.rho.eig)
    log_sigma = apply_fn(pair.sigma.matrix, np.log, eig=pair.sigma.eig)
    return log_rho - log_sigma


def relative_entropy(pair):
    """``D = tr(rho (log rho - log sigma))``."""
    return float(np.real(np.vdot(pair.rho.matrix, _log_ratio_operator(pair))))


def relative_entropy_variance(pair):
    """``V = tr(rho (log rho - log sigma)^2) - D^2``."""
    l = _log_ratio_operator(pair)
    d = float(np.real(np.vdot(pair.rho.matrix, l)))
    second = float(np.real(np.vdot(pair.rho.matrix, l @ l)))
    return second - d * d


def divergences(pair):
    return DivergenceReport(relative_entropy(pair), relative_entropy_variance(pair))


def normal_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2))


# Acklam's rational approximation to the normal quantile.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _acklam(u):
    if u < _P_LOW:
        r = math.sqrt(-2 * math.log(u))
        return (((((_C[0] * r + _C[1]) * r + _C[2]) * r + _C[3]) * r + _C[4]) * r + _C[5]) / (
            (((_D[0] * r + _D[1]) * r + _D[2]) * r + _D[3]) * r + 1)
    if u > 1 - _P_LOW:
        return -_acklam(1 - u)
    r = u - 0.5
    t = r * r
    return (((((_A[0] * t + _A[1]) * t + _A[2]) * t + _A[3]) * t + _A[4]) * t + _A[5]) * r / (
        ((((_B[0] * t + _B[1]) * t + _B[2]) * t + _B[3]) * t + _B[4]) * t + 1)


def normal_quantile(u):
    """Inverse standard normal CDF, refined by Newton steps on ``erfc``."""
    if not 0 < u < 1:
        raise ValueError("u must lie in (0, 1)")
    if u > 0.5:
        # 1 - u is exact here; refining in the lower tail keeps full precision
        return -normal_quantile(1.0 - u)
    x = _acklam(u)
    for _ in range(2):
        pdf = math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)
        if pdf == 0:
            break
        x -= (normal_cdf(x) - u) / pdf
    return x


def second_order_prediction(D, V, eps, n):
    """``n D + sqrt(n) sqrt(V) Phi^{-1}(eps)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return n * D + math.sqrt(n) * math.sqrt(max(V, 0.0)) * normal_quantile(eps)
