# %% [markdown]
# # A two-term recurrence between levels
#
# E_{n+1} = 2q E_n - q^2 E_{n-1} for every n >= 1.

# %%
from tdqo import core

for q in (0.1, 0.5, 0.95, 1.0, 1.3):
    s = core.spectrum(q, 500)
    print(f"q={q:<5} {core.fibonacci_coefficients(q)}  rel. residual {core.fibonacci_residual(s, relative=True):.1e}")

# %% [markdown]
# At a degenerate point the recurrence collapses to a simple ratio between
# nearby levels.

# %%
for variant, m in (("below_degenerate", 2), ("above_degenerate", 1), ("next_nearest", 0), ("next_nearest", 5)):
    r = core.fibonacci_local_ratio(m, variant)
    direct = core.energy(r.numerator, r.q) / core.energy(r.denominator, r.q)
    print(f"{variant:<17} m={m}: E_{r.numerator}/E_{r.denominator} = {r.ratio:.15f} (direct {direct:.15f})")
