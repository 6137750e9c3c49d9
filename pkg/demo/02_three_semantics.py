"""
One graph, three semantics
==========================

The same facts are solved with each interpreter rule set on clingo, and
compared with the built-in brute-force oracles.
"""

from nlpgs import parse_program, program_to_graph, emit_augmented_program, solve_external, strip_conjuncts
from nlpgs.emitter import Semantics
from nlpgs.checker import native_models

src = "p :- not q, r.  q :- not p.  r :- p."
g = program_to_graph(parse_program(src))

for sem in Semantics:
    res = solve_external(emit_augmented_program(g, sem))
    print(sem.value, res.status)
    for m in res.models:
        print("   clingo:", strip_conjuncts(m))
    print("   oracle:", sorted(map(sorted, native_models(parse_program(src), sem))))

# stable and co-stable agree.  For the well-founded semantics the graph
# interpreter leaves everything unknown, while the alternating fixpoint finds
# {p, r} unfounded and makes q true.  The conjunct node turns the positive
# p/r loop into a loop through negation, which is why.
