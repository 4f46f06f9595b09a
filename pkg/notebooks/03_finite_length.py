# %% [markdown]
# # Finite-length check
#
# The exact expected spectrum at block length `n` is an average over all edge
# permutations. It can be computed exactly for small `n`, estimated by sampling
# random graphs, and compared with the asymptotic rate.

# %%
import math

from dgldpc import Ensemble, exact_average_spectrum, exact_growth_rate, monte_carlo_spectrum

ens = Ensemble.ldpc({2: 1}, {4: 1})
exact = exact_average_spectrum(ens, 4)
mc = monte_carlo_spectrum(ens, 4, trials=2000, seed=1)
for w in exact.weights:
    print(f"w={w}  exact={float(exact[w]):.4f}  sampled={mc[w]:.4f} +/- {mc.standard_error(w):.4f}")

# %% [markdown]
# As `n` grows, `log E[N_w] / n` approaches `G(w/n)`.

# %%
ens = Ensemble.ldpc({2: "1/7", 3: "6/7"}, {6: 1})
alpha = 0.05
limit = exact_growth_rate(ens, alpha)
for n in (120, 240, 480, 960):
    w = round(alpha * n)
    finite = exact_average_spectrum(ens, n, weights=[w]).log_growth(w)
    print(f"n={n:4d}  finite={finite:+.5f}  limit={limit:+.5f}  gap={abs(finite - limit):.5f}")
