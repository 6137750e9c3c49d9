"""
Even, odd and positive loops
============================
"""

from nlpgs import parse_program, program_to_graph
from nlpgs.graph import classify_loops
from nlpgs.oracles import stable_models, co_stable_models, well_founded_model

programs = {
    "even": "p :- not q. q :- not p.",
    "odd": "p :- not q. q :- not r. r :- not p.",
    "positive": "p :- q. q :- p.",
    "positive with fact": "p :- q, r. q :- p. r.",
}

for name, src in programs.items():
    prog = parse_program(src)
    kinds = [l.kind for l in classify_loops(program_to_graph(prog))]
    wfm = well_founded_model(prog)
    print("%-20s loops=%s" % (name, kinds))
    print("    stable    ", sorted(map(sorted, stable_models(prog))))
    print("    co-stable ", sorted(map(sorted, co_stable_models(prog))))
    print("    wfs        true=%s false=%s unknown=%s" % (sorted(wfm.true_set), sorted(wfm.false_set), sorted(wfm.unknown_set)))

# the last one: in the graph the positive loop p/q runs through the conjunct
# node and so becomes even, yet only {r} is stable
