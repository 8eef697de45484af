# coding: utf-8

# # Two estimators, one statistic
#
# The naive estimator double-centres the n x n distance matrices; the fast
# one never forms them. They agree to rounding error while their run times
# scale as n^2 and n log n.

# %%
import numpy as np

from depcov import PairedSample, dcov_fast, dcov_naive
from depcov.experiments import run_bench

rng = np.random.default_rng(0)
x = rng.integers(0, 3, 2000).astype(float)  # heavy ties
s = PairedSample(x, x + rng.integers(0, 2, 2000))
print("naive", dcov_naive(s))
print("fast ", dcov_fast(s))

# %%
r = run_bench(fast_sizes=tuple(2**k for k in range(12, 19)), naive_sizes=tuple(2**k for k in range(8, 12)), reps=3)
for row in r["fast"]:
    print(f"fast  n = {row['n']:>7}: {row['seconds'] * 1e3:8.2f} ms")
for row in r["naive"]:
    print(f"naive n = {row['n']:>7}: {row['seconds'] * 1e3:8.2f} ms")
print(f"log-log slopes: fast {r['fast_slope']:.2f}, naive {r['naive_slope']:.2f}")
