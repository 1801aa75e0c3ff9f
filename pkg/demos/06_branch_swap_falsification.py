"""Hunting for counterexamples to the branch-swap claim.

The claim: if encoding the second message while the first stays raw
preserves structure, the same encoding also preserves structure once the
first message is already a codeword, for any shape-compatible hypergraph
quadruple with equal edge counts. Its construction needs compatible
bijections, so whether arbitrary quadruples work is open; this harness
samples random ones and keeps every instance where the hypothesis passes
but the conclusion fails.
"""

from lhckit import jsonio, run_branch_swap_harness
from lhckit.bipartite import check_branch_swap

summary = run_branch_swap_harness(trials=300, seed=11)
print(f"trials:            {summary.trials}")
print(f"hypothesis held:   {summary.hypothesis_held}")
print(f"conclusion held:   {summary.conclusion_held}")
print(f"counterexamples:   {len(summary.counterexamples)}")

if summary.counterexamples:
    report = summary.counterexamples[0]
    dump = jsonio.counterexample_to_dict(report)
    inst = jsonio.instance_from_dict(dump["instance"])
    print("\nfirst counterexample:")
    print("  alphabet sizes:", inst.a1.size, inst.a2.size, inst.x1.size,
          inst.x2.size)
    print("  hypothesis profile:", report.hypothesis_profile,
          "<= lam", report.instance.lam[0])
    print("  conclusion profile:", report.conclusion_profile, "(fails)")
    again = check_branch_swap(inst.phi, inst.hyper_h, inst.hyper_g,
                              inst.hyper_i, inst.hyper_f, inst.lam)
    print("  dump reproduces verdicts:",
          (again.hypothesis_holds, again.conclusion_holds))
