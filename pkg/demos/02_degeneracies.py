# %% [markdown]
# # Accidental degeneracies
#
# Tuning q can make two levels coincide. Neighbouring levels m and m+1 meet
# at q = sqrt(m/(m+2)); levels m and m+2 meet at a second closed form.

# %%
from tdqo import core, degeneracy

for m in (1, 2, 9):
    q = degeneracy.q_nearest_neighbor(m)
    print(f"m={m}: q={q:.10f}  E_m={core.energy(m, q):.12f}  E_m+1={core.energy(m + 1, q):.12f}")

# %%
for m in (0, 1, 5):
    q = degeneracy.q_next_nearest(m)
    print(f"m={m}: q={q:.10f}  E_m={core.energy(m, q):.12f}  E_m+2={core.energy(m + 2, q):.12f}")

# %% [markdown]
# ## Arbitrary gaps
#
# Any pair (m, m+k) other than (0, 1) has exactly one tuning value in (0, 1).
# The general solver finds it by bisection and a short Newton polish.

# %%
for m, k in [(1, 3), (4, 7), (20, 15), (3, 25)]:
    sol = degeneracy.q_general(m, k)
    print(f"E_{m} = E_{m + k}: q = {float(sol.q_value):.15f}  rel. residual {sol.relative_residual:.1e}  [{sol.precision}]")

# %% [markdown]
# The ground state can never meet the first excited state.

# %%
try:
    degeneracy.DegeneracyQuery(0, 1)
except degeneracy.ImpossibleDegeneracyError as exc:
    print("rejected:", exc)

# %% [markdown]
# ## Spectra at the special values
#
# Only the tuned pair coincides; every other level stays apart.

# %%
for q in (degeneracy.q_nearest_neighbor(1), degeneracy.q_next_nearest(0), degeneracy.q_next_nearest(5)):
    print(f"q={q:.6f}", core.degenerate_pairs(core.spectrum(q, 30)))
