# coding: utf-8

# # Binary variables
#
# For a 2x2 table the distance covariance is the sum of squared departures
# from the product of the margins. This table zeroes the covariance of
# distances but is not a product.

# %%
from depcov import ContingencyTable2x2
from depcov.population import (
    contingency_chisq_pop,
    contingency_cov,
    contingency_cov_dist,
    contingency_dcov,
    pop_dcov,
)

t = ContingencyTable2x2.from_counts(10, 5, 14, 11)
print("cells       ", t.cells)
print("row margins ", t.row_marginals)
print("col margins ", t.col_marginals)

# %%
print("Cov(|X-X'|, |Y-Y'|) ", round(contingency_cov_dist(t), 12) + 0.0)
print("dCov closed form    ", round(contingency_dcov(t), 12))
print("dCov from atoms     ", round(pop_dcov(t.to_bivariate(), check=True), 12))
print("Cov(X, Y)           ", round(contingency_cov(t), 12))
print("chi-square / n limit", round(contingency_chisq_pop(t), 6))

# %% [markdown]
# Every cell departs from independence by 0.025, so dCov = 4 * 0.025^2 = 0.0025.
