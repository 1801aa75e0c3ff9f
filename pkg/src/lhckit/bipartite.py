"""Bipartite encoders: semi-deterministic splits, branch swapping, ID assembly.

When the encoder factors over two independently chosen messages, the
two-stage split applies to either factorization order and yields
intermediate hypergraphs in which one message is already encoded. The
branch-swap step moves a certificate for "second message encoded, first
still raw" to "second message encoded, first already a codeword"; it is
treated as a checked claim and always re-verified directly, with a
falsification harness collecting any counterexamples. Assembly chains the
three certificates into an identification code whose error is bounded by
their sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import Channel, identity_channel, tensor
from .decomposition import DecompositionResult, decompose
from .codes import FunctionCode, code_error_profile
from .errors import (
    ChainInconsistent,
    DecompositionFailure,
    EdgeCountMismatch,
    HypothesisViolated,
    ShapeError,
)
from .hypergraph import (
    Alphabet,
    BITS,
    EdgeMap,
    FunctionTable,
    Hypergraph,
    characteristic_hypergraph,
    identification_table,
    split_product_alphabet,
)
from .channel import deterministic_channel
from .verify import infer_edge_map, lambda_profile

VERIFY_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class BipartiteInstance:
    """Self-contained branch-swap instance: four alphabets, four hypergraphs,
    the per-branch channel, and the error vector under test."""

    a1: Alphabet
    a2: Alphabet
    x1: Alphabet
    x2: Alphabet
    hyper_h: Hypergraph  # on a1 x a2
    hyper_g: Hypergraph  # on a1 x x2
    hyper_i: Hypergraph  # on x1 x a2
    hyper_f: Hypergraph  # on x1 x x2
    phi: Channel  # a2 -> x2
    lam: np.ndarray


@dataclass(frozen=True, eq=False)
class BranchSwapReport:
    """Direct verification of hypothesis and conclusion of the branch swap."""

    hypothesis_holds: bool
    conclusion_holds: bool
    hypothesis_map: EdgeMap
    conclusion_map: EdgeMap
    hypothesis_profile: np.ndarray
    conclusion_profile: np.ndarray
    instance: BipartiteInstance

    @property
    def is_counterexample(self) -> bool:
        return self.hypothesis_holds and not self.conclusion_holds


@dataclass(frozen=True, eq=False)
class SemiDetSplit:
    """Both factorization orders of a product channel, decomposed."""

    g1: Hypergraph  # on a1 x b2: first message raw, second already sent
    g2: Hypergraph  # on b1 x a2
    split_g1: DecompositionResult
    split_g2: DecompositionResult

    @property
    def cert_h_to_g1(self):
        return self.split_g1.cert_phi

    @property
    def cert_h_to_g2(self):
        return self.split_g2.cert_phi


def semi_det_split(
    phi1: Channel,
    phi2: Channel,
    source: Hypergraph,
    target: Hypergraph,
    e_edge: EdgeMap,
    mu,
    kappa=None,
) -> SemiDetSplit:
    """Split a product channel through both one-sided factorizations.

    The product phi1 x phi2 must be a certified edge-bijective locally
    homomorphic channel from source to target. Decomposing
    (phi1 x id)(id x phi2) yields an intermediate on a1 x b2; the other
    order yields one on b1 x a2. Both intermediates have as many edges as
    the target, and both one-sided channels are certified at mu. The block
    threshold kappa defaults to the most permissive value one half.
    """
    a1 = split_product_alphabet(source.vertices, phi2.input)
    if a1.labels != phi1.input.labels:
        raise ShapeError("source vertices must be the product of the channel inputs")
    b1 = split_product_alphabet(target.vertices, phi2.output)
    if b1.labels != phi1.output.labels:
        raise ShapeError("target vertices must be the product of the channel outputs")

    k = source.edge_count
    product = tensor(phi1, phi2)
    lam = lambda_profile(product, source, target, e_edge)
    if np.any(lam >= 0.5):
        raise HypothesisViolated("product channel profile must be below 1/2")
    kappa_vec = np.full(k, 0.5) if kappa is None else np.asarray(kappa, dtype=float)

    split_g1 = decompose(
        phi=tensor(identity_channel(a1), phi2),
        gamma=tensor(phi1, identity_channel(phi2.output)),
        source=source,
        target=target,
        e_edge=e_edge,
        kappa=kappa_vec,
        mu=mu,
        lam=lam,
    )
    split_g2 = decompose(
        phi=tensor(phi1, identity_channel(phi2.input)),
        gamma=tensor(identity_channel(phi1.output), phi2),
        source=source,
        target=target,
        e_edge=e_edge,
        kappa=kappa_vec,
        mu=mu,
        lam=lam,
    )
    return SemiDetSplit(
        g1=split_g1.intermediate,
        g2=split_g2.intermediate,
        split_g1=split_g1,
        split_g2=split_g2,
    )


def check_branch_swap(
    phi: Channel,
    hyper_h: Hypergraph,
    hyper_g: Hypergraph,
    hyper_i: Hypergraph,
    hyper_f: Hypergraph,
    lam,
) -> BranchSwapReport:
    """Verify hypothesis and conclusion of the branch swap directly.

    Hypothesis: id x phi from hyper_h (raw x raw) to hyper_g (raw x sent)
    passes at lam under the best bijective edge map. Conclusion: id x phi
    from hyper_i (sent x raw) to hyper_f (sent x sent) passes at lam
    likewise. The error vector is applied positionally to the source edges
    on each side. A report with a failed conclusion under a passing
    hypothesis is a counterexample candidate.
    """
    a2 = phi.input
    x2 = phi.output
    a1 = split_product_alphabet(hyper_h.vertices, a2)
    x1 = split_product_alphabet(hyper_i.vertices, a2)
    if hyper_g.vertices.labels != a1.product(x2).labels:
        raise ShapeError("hypothesis target must live on a1 x x2")
    if hyper_f.vertices.labels != x1.product(x2).labels:
        raise ShapeError("conclusion target must live on x1 x x2")
    counts = {
        hyper_h.edge_count,
        hyper_g.edge_count,
        hyper_i.edge_count,
        hyper_f.edge_count,
    }
    if len(counts) != 1:
        raise EdgeCountMismatch(f"edge counts differ: {sorted(counts)}")
    lam = np.asarray(lam, dtype=np.float64)
    if lam.ndim == 0:
        lam = np.full(hyper_h.edge_count, float(lam))

    hyp_map, hyp_profile = infer_edge_map(
        tensor(identity_channel(a1), phi), hyper_h, hyper_g, require_bijective=True
    )
    conc_map, conc_profile = infer_edge_map(
        tensor(identity_channel(x1), phi), hyper_i, hyper_f, require_bijective=True
    )
    instance = BipartiteInstance(
        a1=a1, a2=a2, x1=x1, x2=x2,
        hyper_h=hyper_h, hyper_g=hyper_g, hyper_i=hyper_i, hyper_f=hyper_f,
        phi=phi, lam=lam,
    )
    return BranchSwapReport(
        hypothesis_holds=bool(np.all(hyp_profile <= lam + VERIFY_SLACK)),
        conclusion_holds=bool(np.all(conc_profile <= lam + VERIFY_SLACK)),
        hypothesis_map=hyp_map,
        conclusion_map=conc_map,
        hypothesis_profile=hyp_profile,
        conclusion_profile=conc_profile,
        instance=instance,
    )


def _edge_index_of_set(hyper: Hypergraph, vertex_set: frozenset[int]) -> int:
    for ei, e in enumerate(hyper.edge_sets):
        if e == vertex_set:
            return ei
    raise ShapeError("expected edge not present")


def assemble_id_code(
    enc1: Channel,
    enc2: Channel,
    phi: Channel,
    hyper_h: Hypergraph,
    hyper_g1: Hypergraph,
    hyper_g2: Hypergraph,
    hyper_f: Hypergraph,
    hyper_d: Hypergraph,
    alpha,
    beta,
    mu,
) -> tuple[FunctionCode, np.ndarray]:
    """Build an identification code from two one-sided encoder certificates.

    Verifies the three locally homomorphic channels (first encoder against
    hyper_g1 at alpha, second encoder against hyper_g2 at beta, channel from
    hyper_f to hyper_d at mu), re-verifies the swapped middle hop directly,
    then composes the inferred edge maps so the decoder maps the window
    reached from the all-equal edge to output 1. Returns the product-encoder
    code and the bound alpha + beta + mu per attained function value; the
    code's exact error profile is recomputed and must obey the bound.
    """
    msgs = enc1.input
    if enc2.input.labels != msgs.labels:
        raise ShapeError("both encoders must share the message alphabet")
    m = msgs.size
    f_id = identification_table(m)
    if hyper_h.vertices.labels != f_id.domain.labels:
        raise ShapeError("hyper_h must live on the message-pair alphabet")
    h_ref = characteristic_hypergraph(f_id)
    if set(hyper_h.edge_sets) != set(h_ref.edge_sets):
        raise ShapeError("hyper_h must be the equality-test partition")
    if hyper_d.edge_count != 2:
        raise EdgeCountMismatch(
            f"decoder hypergraph needs exactly 2 edges, got {hyper_d.edge_count}"
        )
    for hg, name in ((hyper_g1, "g1"), (hyper_g2, "g2"), (hyper_f, "f")):
        if hg.edge_count != 2:
            raise EdgeCountMismatch(f"hyper_{name} needs exactly 2 edges")
    if hyper_g1.vertices.labels != enc1.output.product(msgs).labels:
        raise ShapeError("hyper_g1 must live on codewords x messages")
    if hyper_g2.vertices.labels != msgs.product(enc2.output).labels:
        raise ShapeError("hyper_g2 must live on messages x codewords")
    if hyper_f.vertices.labels != enc1.output.product(enc2.output).labels:
        raise ShapeError("hyper_f must live on the codeword-pair alphabet")
    if phi.input.labels != hyper_f.vertices.labels:
        raise ShapeError("channel input must be the vertex set of hyper_f")
    if phi.output.labels != hyper_d.vertices.labels:
        raise ShapeError("channel output must be the vertex set of hyper_d")

    k = hyper_h.edge_count

    def as_vec(v, name):
        arr = np.asarray(v, dtype=float)
        if arr.ndim == 0:
            return np.full(k, float(arr))
        if arr.shape != (k,):
            raise ShapeError(f"{name} must have one entry per edge ({k})")
        return arr

    alpha = as_vec(alpha, "alpha")
    beta = as_vec(beta, "beta")
    mu = as_vec(mu, "mu")

    # Hop 1: first message encoded, second kept.
    m1, prof1 = infer_edge_map(
        tensor(enc1, identity_channel(msgs)), hyper_h, hyper_g1,
        require_bijective=True,
    )
    if np.any(prof1 > alpha + VERIFY_SLACK):
        raise HypothesisViolated(
            f"first encoder hop exceeds alpha: profile {prof1}, alpha {alpha}"
        )
    # Stated hypothesis for the second encoder: raw first message.
    m2h, prof2h = infer_edge_map(
        tensor(identity_channel(msgs), enc2), hyper_h, hyper_g2,
        require_bijective=True,
    )
    if np.any(prof2h > beta + VERIFY_SLACK):
        raise HypothesisViolated(
            f"second encoder hop exceeds beta: profile {prof2h}, beta {beta}"
        )
    # Swapped middle hop, re-verified directly rather than assumed.
    m2, prof2 = infer_edge_map(
        tensor(identity_channel(enc1.output), enc2), hyper_g1, hyper_f,
        require_bijective=True,
    )
    m1_inv = m1.inverse()
    beta_on_g1 = beta[[m1_inv(j) for j in range(k)]]
    if np.any(prof2 > beta_on_g1 + VERIFY_SLACK):
        raise HypothesisViolated(
            "swapped second-encoder hop fails at beta "
            f"(profile {prof2} vs {beta_on_g1}); branch swap does not transfer"
        )
    # Final hop through the channel into the decision windows.
    m3, prof3 = infer_edge_map(phi, hyper_f, hyper_d, require_bijective=True)
    if np.any(prof3 > mu + VERIFY_SLACK):
        raise HypothesisViolated(
            f"channel hop exceeds mu: profile {prof3}, mu {mu}"
        )

    chain = m3.after(m2.after(m1))
    if not chain.bijective:
        raise ChainInconsistent("composed edge maps are not bijective")
    if not hyper_d.edges_disjoint:
        raise ChainInconsistent("decision windows overlap; decoder undefined")

    diag = frozenset(
        a for a in range(f_id.domain.size) if f_id.mapping[a] == 1
    )
    diag_edge = _edge_index_of_set(hyper_h, diag)
    accept_edge = chain(diag_edge)
    dec_map = [0] * hyper_d.vertices.size
    for y in hyper_d.edges[accept_edge]:
        dec_map[y] = 1
    decoder = deterministic_channel(
        FunctionTable(hyper_d.vertices, BITS, tuple(dec_map))
    )

    code = FunctionCode(tensor(enc1, enc2), decoder, f_id, phi)
    bound_by_edge = alpha + beta + mu[[m2.after(m1)(i) for i in range(k)]]
    # Express the bound per attained value (0 then 1).
    off_edge = _edge_index_of_set(
        hyper_h, frozenset(range(f_id.domain.size)) - diag
    )
    bound = np.array([bound_by_edge[off_edge], bound_by_edge[diag_edge]])

    profile = code_error_profile(code)
    if np.any(profile > bound + VERIFY_SLACK):
        raise DecompositionFailure(
            f"assembled code error {profile} exceeds bound {bound} "
            "although all three hops were certified"
        )
    return code, bound


# ---------------------------------------------------------------------------
# Falsification harness: the branch swap quantifies over all shape-valid
# hypergraph quadruples, but its construction builds compatible bijections.
# Whether it holds for arbitrary quadruples is open; this harness samples
# them and keeps any instance where the hypothesis passes but the
# conclusion fails.
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HarnessSummary:
    """Tally of one falsification run plus all counterexample instances."""

    trials: int
    hypothesis_held: int
    conclusion_held: int
    counterexamples: tuple[BranchSwapReport, ...] = field(default=())
    seed: int = 0


def random_partition(rng: np.random.Generator, alphabet: Alphabet,
                     edge_count: int) -> Hypergraph:
    """Uniformly shuffled split of the vertices into edge_count blocks."""
    n = alphabet.size
    order = rng.permutation(n)
    cuts = np.sort(rng.choice(np.arange(1, n), size=edge_count - 1, replace=False)) \
        if edge_count > 1 else np.array([], dtype=int)
    blocks = np.split(order, cuts)
    return Hypergraph(alphabet, tuple(tuple(sorted(int(v) for v in b)) for b in blocks))


def random_channel(rng: np.random.Generator, inp: Alphabet, out: Alphabet,
                   sharp: bool = False, noise: float = 0.2) -> Channel:
    """Dirichlet rows, or a noisy deterministic map when sharp is set."""
    if sharp:
        rows = np.full((inp.size, out.size), noise / out.size)
        targets = rng.integers(out.size, size=inp.size)
        rows[np.arange(inp.size), targets] += 1.0 - noise
    else:
        rows = rng.dirichlet(np.ones(out.size), size=inp.size)
    rows = rows / rows.sum(axis=1, keepdims=True)
    return Channel(inp, out, rows)


def random_branch_swap_instance(
    rng: np.random.Generator, max_edges: int = 3, max_symbols: int = 3
) -> tuple[Channel, Hypergraph, Hypergraph, Hypergraph, Hypergraph, float]:
    """Shape-valid random instance for check_branch_swap."""
    sizes = rng.integers(1, max_symbols + 1, size=4)
    a1 = Alphabet.of_size(int(sizes[0]), "a")
    a2 = Alphabet.of_size(int(sizes[1]), "b")
    x1 = Alphabet.of_size(int(sizes[2]), "u")
    x2 = Alphabet.of_size(int(sizes[3]), "v")
    min_vertices = min(
        a1.size * a2.size, a1.size * x2.size, x1.size * a2.size, x1.size * x2.size
    )
    edges = int(rng.integers(1, min(max_edges, min_vertices) + 1))
    hyper_h = random_partition(rng, a1.product(a2), edges)
    hyper_g = random_partition(rng, a1.product(x2), edges)
    hyper_i = random_partition(rng, x1.product(a2), edges)
    hyper_f = random_partition(rng, x1.product(x2), edges)
    phi = random_channel(rng, a2, x2, sharp=bool(rng.integers(2)),
                         noise=float(rng.uniform(0.0, 0.3)))
    lam = float(rng.uniform(0.1, 0.45))
    return phi, hyper_h, hyper_g, hyper_i, hyper_f, lam


def run_branch_swap_harness(
    trials: int, seed: int, max_edges: int = 3, max_symbols: int = 3
) -> HarnessSummary:
    """Sample instances, verify both sides, and collect counterexamples."""
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), 0x51AB]))
    hypothesis_held = 0
    conclusion_held = 0
    counterexamples: list[BranchSwapReport] = []
    for _ in range(trials):
        phi, h, g, i, f, lam = random_branch_swap_instance(
            rng, max_edges=max_edges, max_symbols=max_symbols
        )
        report = check_branch_swap(phi, h, g, i, f, lam)
        hypothesis_held += report.hypothesis_holds
        conclusion_held += report.conclusion_holds
        if report.is_counterexample:
            counterexamples.append(report)
    return HarnessSummary(
        trials=trials,
        hypothesis_held=hypothesis_held,
        conclusion_held=conclusion_held,
        counterexamples=tuple(counterexamples),
        seed=seed,
    )
