"""
Checking the interpreters against the oracles
=============================================

Every two-atom program with up to three rules (one per renaming) is solved
both ways.  Disagreements are written out as small .lp files.
"""

import tempfile

from nlpgs.checker import exhaustive_programs, run_corpus, run_reference_suite

comps, failures = run_reference_suite()
print("reference programs: %d/%d agree" % (len(comps) - len(failures), len(comps)))
for c in failures:
    print("  ", c.name, c.semantics.value, "oracle", c.oracle, "pipeline", c.pipeline)

programs = list(exhaustive_programs(n_atoms=2, max_rules=3))
out = tempfile.mkdtemp(prefix="nlpgs-repro-")
for sem in ("stable", "costable", "wfs"):
    rep = run_corpus(programs, sem)
    rep.write_reproducers(out)
    print("%-9s %d/%d  (%.1f%%)  invalid models: %d" % (sem, rep.agreed, rep.total, 100 * rep.rate, len(rep.invalid)))
    for c in rep.disagreements[:2]:
        print("    e.g.", c.program.replace("\n", " "), " oracle", c.oracle, " pipeline", c.pipeline)
print("reproducers in", out)
