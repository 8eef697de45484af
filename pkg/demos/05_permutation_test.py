# coding: utf-8

# # Testing independence by permutation
#
# Shuffling Y destroys any dependence while keeping both margins, so the
# shuffled dCov values form a reference distribution for the observed one.

# %%
import numpy as np

from depcov import GeneratorSpec, PairedSample, generate
from depcov.inference import level_experiment, perm_test, rejection_rate, spec_sampler

s = generate(GeneratorSpec("uniform_parabola", 100, seed=3))
r = perm_test(s, m=999, seed=42)
print(f"Y = X^2, n = 100: observed dCov {r.observed:.5f}, {r.exceed_count} of {r.m} shuffles larger, p = {r.p_hat:.4f}")

rng = np.random.default_rng(0)
s = PairedSample(rng.standard_normal(100), rng.standard_normal(100))
r = perm_test(s, m=999, seed=42)
print(f"independent normals: p = {r.p_hat:.4f}")

# %% [markdown]
# For tiny samples every permutation can be enumerated.

# %%
tiny = PairedSample([0, 1, 2, 3], [0, 1, 4, 9])
print("exhaustive, n = 4:", perm_test(tiny, exhaustive=True).to_dict())

# %% [markdown]
# Size and power over repeated samples (a few seconds).

# %%
print("size at 0.05, Gaussian margins:", level_experiment("gaussian", n=50, trials=200, alpha=0.05, seed=1))
print("power at 0.05, Y = X^2, n = 30:", rejection_rate(spec_sampler("uniform_parabola"), 30, 100, 0.05, seed=2))
