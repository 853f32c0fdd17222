# %% [markdown]
# # Levels degenerate with the ground state
#
# E_0 = E_n happens at the q_n solving z^n - n z - (n+1) = 0 with z = 1/q.
# Working in z avoids underflow of q^n at large n.

# %%
from tdqo import degeneracy

for row in degeneracy.table1():
    print(f"{row.n:>4}  {float(row.q):.10f}")

# %% [markdown]
# Extended precision carries 50 digits.

# %%
print(degeneracy.table1([3, 400])[1].q)

# %% [markdown]
# q_n creeps towards 1 as n grows.

# %%
qs = [float(r.q) for r in degeneracy.table1([10, 100, 1000, 5000], precision="extended")]
print([f"{1 - q:.3e}" for q in qs])
