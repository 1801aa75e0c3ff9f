"""Finite channels as row-stochastic matrices.

Composition is matrix product, independent parallel use is the Kronecker
product, and a memoryless block channel is a Kronecker power. Two chained
symmetric channels are again symmetric with the crossovers combined.
"""

import numpy as np

from lhckit import bsc, compose, named_rng, power, sample, tensor

# A binary symmetric channel flips each bit with the crossover probability.
phi = bsc(0.03)
print("bsc(0.03) rows:\n", phi.rows)

# Chaining two of them compounds the noise: flip exactly once.
chained = compose(bsc(0.05), bsc(0.05))
print("two bsc(0.05) in series equal one bsc at",
      chained.rows[0, 1], "=", 2 * 0.05 * 0.95)
assert np.allclose(chained.rows, bsc(0.095).rows)

# Parallel independent use multiplies entries; labels pair up with '|'.
pair = tensor(bsc(0.1), bsc(0.2))
print("pair alphabet:", pair.input.labels)
print("both bits flip with probability", pair.rows[0, 3])

# A block of three independent uses keeps a word intact with (1 - g)^3.
block = power(bsc(0.03), 3)
print("000 survives with", block.rows[0, 0], "=", 0.97**3)

# Sampling is reproducible through named generator streams.
rng = named_rng(7, "demo")
draws = [sample(phi, 0, rng) for _ in range(10)]
print("ten draws through bsc(0.03) from input 0:", draws)
