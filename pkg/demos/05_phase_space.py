# %% [markdown]
# # Position, momentum and a vanishing commutator
#
# With X = (a + a+)/sqrt 2 and P = i(a+ - a)/sqrt 2, the commutator [X, P]
# equals i[a, a+], which is diagonal with entries q^n (1 + n (1 - 1/q)).

# %%
import numpy as np

from tdqo import fock

rep = fock.build_fock_rep(8, 0.75)
ps = fock.build_phase_space(rep)
print(np.round(ps.commutator_diag[:-1], 6))

# %% [markdown]
# At q = m/(m+1) the state |m> sees a zero commutator, just as a classical
# pair would. A scan over q finds that single zero.

# %%
for m in (1, 3, 10):
    print(m, fock.classical_q(m), fock.xp_zero_crossings(m))

# %% [markdown]
# ## Truncation
#
# A finite matrix cannot satisfy a a+ - q a+ a = q^N on its top state. The
# defect is confined to the corner entry.

# %%
d = fock.eq1_defect(fock.build_fock_rep(6, 0.9))
print(np.round(d, 12))
print(fock.check_defining_relations(fock.build_fock_rep(32, 0.9)))
