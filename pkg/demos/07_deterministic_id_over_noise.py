"""Deterministic identification over two parallel noisy binary channels.

Both parties send an n-bit codeword through independent symmetric channels
and the receiver tests whether the two noisy words came from the same
message, using only their Hamming distance. Matching letters end up
differing with probability beta = 2*gamma*(1-gamma), so equal inputs
concentrate near n*beta while codeword pairs at relative distance delta
concentrate near n*(beta + delta*(1 - 2*beta)). A threshold between the
two regions identifies equality with exponentially small error.
"""

import numpy as np

from lhckit import bsc_id

gamma, delta, eps, n = 0.03, 0.1, 0.3, 1000

b = bsc_id.beta(gamma)
t_far = bsc_id.theta(delta, gamma)
print(f"beta           = {b}")
print(f"theta_delta    = {t_far}")
print(f"epsilon_max    = {bsc_id.epsilon_max(delta, gamma):.5f}")

# Concentration: the exact two-binomial law versus the generic bound.
miss = bsc_id.exact_window_miss(n, n // 10, gamma, eps, delta)
bound = bsc_id.chernoff_bound(n, eps, delta, gamma)
print(f"exact window miss at nominal distance: {miss:.3e} <= bound {bound:.3e}")

# A codebook with guaranteed relative distance delta, drawn greedily.
book = bsc_id.gen_codebook(n, delta, 16, seed=7, strategy="random-greedy")
dists = book.pair_distances()
print(f"codebook: {book.size} words, min pairwise distance "
      f"{dists[~np.eye(book.size, dtype=bool)].min()} (needs {book.dmin})")

# Monte Carlo with raw channel flips, reproducible for any worker count.
est = bsc_id.monte_carlo_id(book, gamma, eps, trials=100_000, seed=1)
fr_exact, fa_exact = bsc_id.exact_error_rates(book, gamma, eps)
print(f"false reject: empirical {est.false_reject_rate:.5f} "
      f"(exact {fr_exact:.5f}, within the equal-window bound "
      f"{bsc_id.chernoff_bound(n, eps, 0.0, gamma):.3e})")
print(f"false accept: empirical {est.false_accept_rate:.2e} "
      f"(exact {fa_exact:.2e}, within the far-window bound {bound:.3e})")

# Rate table: greedy codebook exponent versus plain transmission.
rows = bsc_id.rate_table(gamma, np.arange(0.0, 0.51, 0.1))
print("\ndelta  codebook-rate  transmission-rate")
for d, gv, tx in rows:
    print(f"{d:4.1f}   {gv:12.4f}   {tx:16.4f}")
