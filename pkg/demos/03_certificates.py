"""Certified approximate structure preservation for noisy channels.

A noisy channel cannot be a homomorphism, but it can map each vertex into
the image of its edge with high probability. The certificate records the
edge map, the per-edge error vector, and per-vertex evidence; the minimal
passing error vector is the profile.
"""

import numpy as np

from lhckit import (
    BITS,
    EdgeMap,
    bsc,
    complete_1_uniform,
    infer_edge_map,
    lambda_profile,
    verify_lhc,
)

bits1 = complete_1_uniform(BITS)
identity = EdgeMap.identity(2)

# The profile of a symmetric channel against the identity edge map is the
# crossover probability on both edges.
profile = lambda_profile(bsc(0.03), bits1, bits1, identity)
print("minimal error vector:", profile)

cert = verify_lhc(bsc(0.03), bits1, bits1, identity, np.array([0.05, 0.05]))
print("at 0.05 budget:", cert.verdict, "| per-vertex success:",
      cert.per_vertex_success)

tight = verify_lhc(bsc(0.03), bits1, bits1, identity, profile - 1e-6)
print("just below the profile:", tight.verdict, "| failing edges:",
      tight.failing_edges)

# When no edge map is given, the best one can be inferred: a clean channel
# aligns with the identity, a mostly-inverting channel with the flip.
for gamma in (0.1, 0.9, 0.5):
    edge_map, lam = infer_edge_map(bsc(gamma), bits1, bits1)
    print(f"bsc({gamma}): best edge map {edge_map.mapping}, profile {lam}")
