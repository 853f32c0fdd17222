# %% [markdown]
# # The spectrum and where it turns over
#
# The TD oscillator has levels E_n = ((n+1) q^n + n q^(n-1)) / 2. For q < 1
# they rise for a while, peak, then fall towards zero.

# %%
import numpy as np

from tdqo import core

for q in (0.3, 0.5, 0.8, 1.0, 1.2):
    s = core.spectrum(q, 8)
    print(f"q={q:<4}", np.array2string(s.energies, precision=4, max_line_width=120))

# %% [markdown]
# ## Truncation index
#
# Past T = floor((1+q^2)/(1-q^2)) every further level is lower than the one
# before it.

# %%
q = 0.8
t = core.truncation_index(q)
s = core.spectrum(q, 3 * t)
spacing = np.diff(s.energies)
print("T =", t)
print("spacings up to T  :", np.array2string(spacing[:t], precision=3))
print("spacings beyond T :", np.array2string(spacing[t:], precision=3))
assert np.all(spacing[t:] < 0)

# %% [markdown]
# Far out the energies vanish. The log form stays finite where the linear
# one underflows.

# %%
for n in (100, 1000, 10_000):
    print(n, core.energy(n, 0.5), core.log_energy(n, 0.5))
