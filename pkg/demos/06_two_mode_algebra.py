# %% [markdown]
# # Two oscillators and a deformed spin algebra
#
# J+ = a1+ a2, J- = a2+ a1, J0 = (N1 - N2)/2 and J3 = (N1 + N2)/2 close into
# [J+, J-] = 2 J0 q^(2 J3 - 1).

# %%
import numpy as np

from tdqo import algebra

mod = algebra.build_spin_module(2, 0.5)
print(mod.j_plus)
print("relation residual:", algebra.check_spin_relations(mod))

# %% [markdown]
# The same matrices appear inside the two-mode construction, on the block of
# fixed total occupation.

# %%
real = algebra.build_two_mode(6, 0.5)
blk = algebra.spin_block(real, 2)
print(np.abs(blk["j_plus"] - mod.j_plus).max())
print("two-mode residual on the safe zone:", algebra.check_two_mode_relations(real))

# %% [markdown]
# ## Large spin
#
# For q < 1 the J+ element shrinks with j, while J3 = j grows without bound.

# %%
for j in (1, 5, 10, 20, 40, 80):
    print(j, algebra.large_j_matrix_element(2 * j, 0, 0.9), algebra.large_j_matrix_element(2 * j, 0, 1.0))
print("below 1e-8 from j =", algebra.large_j_crossover(0.9) / 2)
