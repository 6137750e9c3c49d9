"""
Why is q true?
==============

Effective edges carry truth: a positive edge out of a true node or a negative
edge out of a false one.  A model checks out when the true nodes are exactly
the facts and the targets of effective edges.
"""

from nlpgs import parse_program, program_to_graph, emit_augmented_program, solve_external
from nlpgs.graph import node_from_term
from nlpgs.justification import effective_edges, validate_model, justify_atom, render_justification

g = program_to_graph(parse_program("p :- not q, r.  q :- not p.  r :- p."))
res = solve_external(emit_augmented_program(g, "costable"))

for m in res.models:
    print(m)
    print("  effective:", sorted(map(str, effective_edges(g, m))))
    print("  valid:", validate_model(g, m).valid)
    for atom in "pqr":
        print(render_justification(justify_atom(g, m, atom)))
    print()

# a broken model is caught
bad = res.models[0].with_value(node_from_term("q"), "true")
print(bad, [str(v) for v in validate_model(g, bad).violations])

# json for tools
print(render_justification(justify_atom(g, res.models[0], "q"), "json"))
