"""Numerics for Ke Li's quantum hypothesis-testing lemma in finite dimension."""

__version__ = "0.1.0"

from .bounds import (
    DivergenceReport,
    chernoff_bound,
    divergences,
    keli_beta_bound,
    min_bayes_risk_closed_form,
    normal_quantile,
    quasi_entropy,
    relative_entropy,
    relative_entropy_variance,
    second_order_prediction,
)
from .discrimination import (
    ErrorPair,
    Test,
    bayes_risk,
    error_pair,
    keli_test,
    keli_test_spanning,
    neyman_pearson_test,
)
from .errors import InvalidStateError, ResourceError
from .iid import SteinRow, iid_keli_beta_bound, stein_experiment, tensor_beta_bound_direct
from .measure import AtomicMeasure, TailInterval, convolve, convolve_power, tail_mass
from .modular import ModularSpectrum, modular_spectrum, project_omega_sigma, spectral_distribution
from .states import (
    DensityMatrix,
    StatePair,
    density_from_matrix,
    diagonal_pair,
    load_pair,
    random_commuting_pair,
    random_density,
    random_pair,
    tensor_power,
)
