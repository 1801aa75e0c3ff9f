"""Splitting certified channels and removing randomness from codes.

If a two-stage channel carries a certificate, thresholding the second
stage's hitting probabilities partitions the intermediate alphabet so that
both stages carry certificates of their own. Applied twice to a code, this
shows the bare channel is certified between blocks of its own alphabets,
and reading one representative per block off gives a deterministic code at
no more than four times the error.
"""

import numpy as np

from lhckit import (
    BITS,
    EdgeMap,
    FunctionCode,
    FunctionTable,
    bsc,
    channel_is_lhc,
    code_error_profile,
    complete_1_uniform,
    decompose,
    derandomize,
    identity_channel,
)
from lhckit.channel import Channel

bits1 = complete_1_uniform(BITS)

# Split two chained symmetric channels around their common alphabet.
result = decompose(bsc(0.05), bsc(0.05), bits1, bits1, EdgeMap.identity(2),
                   kappa=0.25, mu=0.38, lam=0.095)
print("intermediate blocks:", result.intermediate.edges)
print("first stage:", result.cert_phi.verdict,
      "| second stage:", result.cert_gamma.verdict)

# A randomized code: the encoder hedges, the decoder is sharp.
f = FunctionTable(BITS, BITS, (0, 1))
enc = Channel(BITS, BITS, np.array([[0.9, 0.1], [0.1, 0.9]]))
code = FunctionCode(enc, identity_channel(BITS), f, bsc(0.02))
lam = code_error_profile(code)
print("stochastic profile:", lam)

hyper_in, hyper_out, cert = channel_is_lhc(code, kappa=4 * lam)
print("channel certified between input blocks", hyper_in.edges,
      "and output blocks", hyper_out.edges, "->", cert.verdict)

enc_det, dec_det = derandomize(code)
det = FunctionCode(enc_det, dec_det, f, code.channel)
print("deterministic profile:", code_error_profile(det),
      "(bound was", 4 * lam, ")")
