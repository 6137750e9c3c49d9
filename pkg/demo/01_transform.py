"""
From rules to a graph
=====================

Parse a small program, build the conjunction-node graph, flip the edges
around the conjunct and print the facts the interpreters read.
"""

from nlpgs import parse_program
from nlpgs.graph import build_cnr_graph, cnr_to_dependency_graph, classify_loops
from nlpgs.emitter import emit_graph_facts, emit_dot

prog = parse_program("p :- not q, r.  q :- not p.  r :- p.")
print(prog)

# the body "not q, r" gets its own node; edges keep the literal signs for now
cnr = build_cnr_graph(prog)
for e in cnr.edges:
    print(" ", e)

# De Morgan: every edge touching the conjunct is negated
dg = cnr_to_dependency_graph(cnr)
print(emit_graph_facts(dg))

# both cycles pass through an even number of negative edges
for loop in classify_loops(dg):
    print(loop.kind, " -> ".join(str(n) for n in loop.nodes))

# paste into graphviz to look at it
print(emit_dot(dg))
