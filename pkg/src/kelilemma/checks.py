"""Property suites run over seeded random state pairs.

Each check produces a *slack*: a number that must not exceed its tolerance.
Inequalities ``lhs <= rhs`` report ``lhs - rhs``; equalities report the
absolute difference.
"""

import numpy as np

from .bounds import (
    chernoff_bound,
    keli_beta_bound,
    min_bayes_risk_closed_form,
    quasi_entropy,
    quasi_entropy_spectral,
    relative_entropy,
)
from .discrimination import (
    bayes_risk,
    bayes_risks,
    error_pair,
    keli_test,
    keli_test_spanning,
    neyman_pearson_test,
    random_projector_tests,
)
from .iid import iid_keli_beta_bound, tensor_beta_bound_direct
from .linalg import IND_TOL, max_abs
from .modular import modular_spectrum
from .states import random_commuting_pair, random_density, random_pair, StatePair

DEFAULT_EPS = (0.01, 0.1, 0.5, 1.0, 2.0, 10.0)
S_GRID = tuple(round(0.1 * k, 1) for k in range(1, 11))
BOUNDARY_GAP = 1e-9

TOLERANCES = {
    "alpha_keli": 1e-10,
    "beta_keli": 1e-10,
    "route_equivalence": 1e-8,
    "np_closed_form": 1e-10,
    "np_vs_random": 1e-10,
    "chernoff_sandwich": 1e-10,
    "markov_dominance": 1e-10,
    "quasi_entropy_routes": 1e-9,
    "bound_monotone": 1e-12,
    "relative_entropy_nonneg": 1e-10,
    "commuting_tightness": 1e-10,
    "commuting_equivalence": 1e-8,
    "oracle_equivalence": 1e-9,
    "oracle_width": 1e-9,
}


def near_ratio(spec, eps, gap=BOUNDARY_GAP):
    """True when ``eps`` is within ``gap`` of some eigenvalue ratio of Delta."""
    return bool(np.any(np.abs(spec.ratios - eps) <= gap))


def trial_rng(seed, trial):
    return np.random.default_rng([seed, trial])


def pair_slacks(pair, eps_grid=DEFAULT_EPS, commuting=False, rng=None,
                n_random_tests=1000, ind_tol=IND_TOL):
    """All single-pair slacks, as ``{check_name: [slack, ...]}``."""
    spec = modular_spectrum(pair)
    out = {k: [] for k in TOLERANCES if not k.startswith("oracle")}
    randoms = None
    if rng is not None and n_random_tests:
        randoms = random_projector_tests(pair.dim, n_random_tests, rng)
    q_direct = {s: quasi_entropy(pair, s) for s in S_GRID}
    for s in (0.0, 0.25, 0.5, 0.75, 1.0):
        out["quasi_entropy_routes"].append(
            abs(quasi_entropy(pair, s) - quasi_entropy_spectral(pair, s, spec)))
    out["relative_entropy_nonneg"].append(-relative_entropy(pair))

    prev = None
    for eps in sorted(eps_grid):
        bound = keli_beta_bound(pair, eps, ind_tol, spec)
        t_kl = keli_test(pair, eps, ind_tol=ind_tol)
        e_kl = error_pair(pair, t_kl)
        out["alpha_keli"].append(e_kl.alpha - eps)
        out["beta_keli"].append(e_kl.beta - bound)
        boundary = near_ratio(spec, eps)
        if not boundary:
            t_span = keli_test_spanning(pair, eps, ind_tol=ind_tol)
            out["route_equivalence"].append(max_abs(t_kl.projector - t_span.projector))
        if prev is not None:
            out["bound_monotone"].append(bound - prev)
        prev = bound
        out["markov_dominance"].append(
            max(bound - eps**-s * q_direct[s] for s in S_GRID))

        p = 1.0 / (1.0 + eps)
        t_np = neyman_pearson_test(pair, p)
        risk = bayes_risk(pair, p, t_np)
        closed = min_bayes_risk_closed_form(pair, p)
        out["np_closed_form"].append(abs(risk - closed))
        if randoms is not None:
            out["np_vs_random"].append(risk - float(bayes_risks(pair, p, randoms).min()))
        out["chernoff_sandwich"].append(closed - chernoff_bound(pair, p)[0])

        if commuting:
            out["commuting_tightness"].append(abs(e_kl.beta - bound))
            if not boundary:
                out["commuting_equivalence"].append(max_abs(t_kl.projector - t_np.projector))
    return out


def _merge(acc, slacks):
    for k, v in slacks.items():
        acc.setdefault(k, []).extend(v)


def verify_suite(dim, trials, seed, eps_grid=DEFAULT_EPS, n_random_tests=1000,
                 ind_tol=IND_TOL):
    """Run :func:`pair_slacks` over generic and commuting pairs.

    Trial ``i`` draws both of its pairs from a generator seeded by
    ``(seed, i)``, so results do not depend on evaluation order.
    """
    slacks = {}
    failures = []
    instances = 0
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        for kind, pair in (("generic", random_pair(dim, rng)),
                           ("commuting", random_commuting_pair(dim, rng))):
            s = pair_slacks(pair, eps_grid, kind == "commuting", rng,
                            n_random_tests, ind_tol)
            instances += 1
            for name, values in s.items():
                for v in values:
                    if v > TOLERANCES[name]:
                        failures.append({"trial": trial, "kind": kind, "check": name,
                                         "slack": v})
            _merge(slacks, s)
    return {
        "instances": instances,
        "failures": failures,
        "max_slacks": {k: (max(v) if v else None) for k, v in sorted(slacks.items())},
        "tolerances": dict(sorted(TOLERANCES.items())),
    }


def oracle_suite(trials=20, seed=7, n_values=(2, 3), eps_values=(0.25, 0.8, 2.0),
                 prune_tol=0.0):
    """Convolution path versus explicit tensor powers on random qubit pairs."""
    rows = []
    failures = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        pair = StatePair(random_density(2, rng), random_density(2, rng))
        for n in n_values:
            for eps in eps_values:
                iv = iid_keli_beta_bound(pair, eps, n, prune_tol=prune_tol)
                direct = tensor_beta_bound_direct(pair, eps, n)
                miss = max(iv.lower - direct, direct - iv.upper, 0.0)
                row = {"trial": trial, "n": n, "eps": eps, "direct": direct,
                       "lower": iv.lower, "upper": iv.upper,
                       "midpoint_error": abs(iv.midpoint - direct)}
                rows.append(row)
                if miss > TOLERANCES["oracle_equivalence"] or \
                        row["midpoint_error"] > TOLERANCES["oracle_equivalence"] or \
                        (prune_tol == 0 and iv.width > TOLERANCES["oracle_width"]):
                    failures.append(row)
    return {"cases": len(rows), "failures": failures,
            "max_midpoint_error": max(r["midpoint_error"] for r in rows) if rows else None}
