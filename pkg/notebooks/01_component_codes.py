# %% [markdown]
# # Component codes
#
# Every node of a D-GLDPC Tanner graph carries a small binary linear code.
# The growth-rate machinery only needs a few enumerators of each component:
# the weight enumerator of a check code, the input-output enumerator of a
# variable code, and their stopping-set counterparts.

# %%
from dgldpc import BitMatrix, ComponentCode, hamming_code, reed_muller_first_order, spc_code
from dgldpc.binary_codes import macwilliams_dual_enumerator

hamming = hamming_code(3)
print(hamming, "n =", hamming.n, "k =", hamming.k, "d =", hamming.min_distance)
print("A(x) coefficients:", list(hamming.weight_enum.coeffs))

# %% [markdown]
# MacWilliams gives the same enumerator from the dual code, a cheap cross-check.

# %%
print("via the dual:     ", list(macwilliams_dual_enumerator(hamming).coeffs))

# %% [markdown]
# A variable node sees its code through a generator matrix: input weight `u`
# (information bits) and output weight `v` (edges). Two generators for the same
# code give different input-output enumerators.

# %%
a = ComponentCode.from_strings(["100", "011"], "a")
b = ComponentCode.from_strings(["100", "111"], "b")
print("same code:", a.weight_enum == b.weight_enum)
print("a:", dict(a.io_enum.items()))
print("b:", dict(b.io_enum.items()))

# %% [markdown]
# Stopping-set enumerators count unrecoverable erasure patterns. For an SPC code
# every pattern of size two or more is a stopping set.

# %%
for s in (3, 4, 6):
    print(f"spc({s}) stopping:", list(spc_code(s).cn_stopping_enum.coeffs))

rm = reed_muller_first_order(3)
print(rm, "stopping:", list(rm.cn_stopping_enum.coeffs))
print(rm, "weights: ", list(rm.weight_enum.coeffs))
