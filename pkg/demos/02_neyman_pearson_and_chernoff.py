# %% [markdown]
# # Ke Li's test against the Neyman-Pearson test
#
# With prior ``p = 1/(1+eps)`` the Neyman-Pearson test minimizes the Bayes
# risk. For commuting states it coincides with Ke Li's test; in general it
# does not, and Ke Li's beta bound is always below the Markov-type bound
# ``eps^-s tr(rho^s sigma^(1-s))``.

# %%
import numpy as np

from kelilemma import (
    chernoff_bound,
    error_pair,
    keli_beta_bound,
    keli_test,
    min_bayes_risk_closed_form,
    neyman_pearson_test,
    quasi_entropy,
    random_commuting_pair,
    random_pair,
)

for label, pair in (("commuting", random_commuting_pair(4, 3)), ("generic", random_pair(4, 3))):
    print(f"\n{label} pair")
    print(f"{'eps':>6} {'same test':>9} {'KL bound':>9} {'Markov':>9} {'min risk':>9} "
          f"{'Chernoff':>9}")
    for eps in (0.1, 0.5, 1.0, 3.0):
        p = 1 / (1 + eps)
        t_kl, t_np = keli_test(pair, eps), neyman_pearson_test(pair, p)
        same = np.allclose(t_kl.projector, t_np.projector, atol=1e-8)
        markov = min(eps**-s * quasi_entropy(pair, s) for s in np.linspace(0, 1, 101))
        value, _ = chernoff_bound(pair, p)
        print(f"{eps:6.2f} {str(same):>9} {keli_beta_bound(pair, eps):9.4f} {markov:9.4f} "
              f"{min_bayes_risk_closed_form(pair, p):9.4f} {value:9.4f}")

# %% [markdown]
# In the commuting case the bound is attained exactly.

# %%
pair = random_commuting_pair(5, 11)
for eps in (0.2, 1.0, 4.0):
    print(eps, error_pair(pair, keli_test(pair, eps)).beta, keli_beta_bound(pair, eps))
