# %% [markdown]
# # Asymptotic weight spectrum
#
# The normalized log of the expected number of weight-`alpha n` codewords
# converges to a growth rate `G(alpha)`. Near zero, `G` has a closed-form
# expansion whose sign decides whether light codewords are exponentially rare.

# %%
import numpy as np

from dgldpc import Ensemble, classify, critical_exponent, derive, growth_curve, small_alpha_expansion
from dgldpc.specfile import load_ensemble

ens = load_ensemble("../specs/hamming_rm.json")
par = derive(ens)
print("design rate:", par.design_rate, " r =", par.r, " T =", par.T)
print("classification:", classify(ens))

# %% [markdown]
# The expansion is `a alpha log alpha + K alpha + O(alpha^xi)`.

# %%
exp = small_alpha_expansion(ens)
print("alpha log alpha coefficient:", exp.alpha_log_alpha_coeff)
print("linear coefficient K:", exp.linear_coeff)
print("remainder exponent:", exp.xi)

# %% [markdown]
# Compare the truncated expansion with the exact rate from the optimization.

# %%
curve = growth_curve(ens, np.geomspace(1e-4, 0.3, 8))
for state in curve.states:
    print(f"alpha={state.alpha:.2e}  G={state.value:+.6f}  expansion={exp(state.alpha):+.6f}")
print("first positive crossing alpha*:", curve.alpha_star)

# %% [markdown]
# LDPC sanity check: the (3,6) regular ensemble has the well-known root near 0.0227.

# %%
print("(3,6) alpha*:", critical_exponent(Ensemble.ldpc({3: 1}, {6: 1})))

# %% [markdown]
# With degree-2 variable nodes the sign is decided by a stability product `C V`.

# %%
for lam in ({2: "1/7", 3: "6/7"}, {2: "2/5", 3: "3/5"}):
    e = Ensemble.ldpc(lam, {6: 1})
    c = classify(e)
    print(lam, c.verdict, "C*V =", c.discriminant, "alpha* =", critical_exponent(e))
