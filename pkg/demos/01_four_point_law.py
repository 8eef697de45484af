# coding: utf-8

# # Zero covariance of distances, positive dCov
#
# Four equally likely points. Their distances |X-X'| and |Y-Y'| are
# uncorrelated, yet X and Y are dependent, and the distance covariance
# sees it.

# %%
from depcov import DiscreteBivariate
from depcov.population import (
    doubly_centered_distribution,
    pairwise_abs_diff_distribution,
    pop_cov,
    pop_cov_distances,
    pop_cross_cov,
    pop_dcor,
    pop_dcov,
)

d = DiscreteBivariate([(-1, 1, 0.25), (1, 1, 0.25), (0, 0.6, 0.25), (0, -1, 0.25)])

# %% [markdown]
# The law of the absolute differences has five atoms.

# %%
for a in pairwise_abs_diff_distribution(d):
    print(f"  |dx| = {a.x:4.1f}  |dy| = {a.y:4.1f}  p = {a.p:.4f}")

# %% [markdown]
# After double centring, the atom at (0, 0) splits three ways, leaving seven atoms.

# %%
for a in doubly_centered_distribution(d):
    print(f"  Dx = {a.x:6.2f}  Dy = {a.y:6.2f}  p = {a.p:.4f}")

# %%
print("Cov(X, Y)                 ", round(pop_cov(d), 12) + 0.0)
print("Cov(|X-X'|, |Y-Y'|)       ", round(pop_cov_distances(d), 12) + 0.0)
print("Cov(|X-X'|, |Y-Y''|)      ", round(pop_cross_cov(d), 12))
print("dCov(X, Y)                ", round(pop_dcov(d, check=True), 12))
print("dCor(X, Y)                ", round(pop_dcor(d)[0], 6))

# %% [markdown]
# dCov = Cov(|X-X'|, |Y-Y'|) - 2 Cov(|X-X'|, |Y-Y''|) = 0 + 0.1.
