import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import FIG3, PROGRAM5, WORKED, graph_of
from nlpgs.graph import (
    CONSTRAINT,
    AtomNode,
    ConjunctNode,
    DepGraph,
    Edge,
    Sign,
    Stage,
    StageError,
    build_cnr_graph,
    classify_loops,
    cnr_to_dependency_graph,
    graph_to_program,
    is_isomorphic,
    program_to_graph,
)
from nlpgs.parser import Literal, Program, Rule, format_program, normalize_program, parse_program

P, Q, R = AtomNode("p"), AtomNode("q"), AtomNode("r")
C0 = ConjunctNode(0)
POS, NEG = Sign.POSITIVE, Sign.NEGATIVE


def edges(g):
    return {(str(e.src), str(e.dst), e.sign.value) for e in g.edges}


def cnr(text):
    return build_cnr_graph(normalize_program(parse_program(text)))


def test_cnr_of_program5():
    g = cnr(PROGRAM5)
    assert g.stage is Stage.CNR
    assert g.nodes == (P, C0, Q, R)
    assert edges(g) == {
        ("q", "conjunct(0)", "negative"),
        ("r", "conjunct(0)", "positive"),
        ("conjunct(0)", "p", "positive"),
        ("p", "q", "negative"),
    }


def test_fact_only():
    g = cnr("r.")
    assert g.nodes == (R,)
    assert g.facts == {R}
    assert g.edges == ()


def test_headless_constraint_feeds_constraint_node():
    g = cnr(":- not q, not r.")
    assert edges(g) == {
        ("q", "conjunct(0)", "negative"),
        ("r", "conjunct(0)", "negative"),
        ("conjunct(0)", "constraint", "positive"),
    }
    assert g.has_constraint


def test_constraint_node_only_with_constraints():
    assert not graph_of(WORKED).has_constraint
    g = graph_of("p :- not q. :- p. :- q, not p.")
    assert g.has_constraint
    # both constraints share the one constraint node
    assert [e.src for e in g.in_edges(CONSTRAINT)] == [P, ConjunctNode(0)]


def test_conjunct_nodes_are_not_shared():
    g = graph_of("p :- q, r. s :- q, r.")
    assert g.conjuncts == (ConjunctNode(0), ConjunctNode(1))


def test_fig3_conversion():
    g = cnr(FIG3)
    assert edges(g) == {
        ("q", "conjunct(0)", "positive"),
        ("r", "conjunct(0)", "negative"),
        ("conjunct(0)", "p", "positive"),
    }
    d = cnr_to_dependency_graph(g)
    assert d.stage is Stage.DEPENDENCY
    assert edges(d) == {
        ("q", "conjunct(0)", "negative"),
        ("r", "conjunct(0)", "positive"),
        ("conjunct(0)", "p", "negative"),
    }


def test_program5_conversion():
    d = graph_of(PROGRAM5)
    assert edges(d) == {
        ("q", "conjunct(0)", "positive"),
        ("r", "conjunct(0)", "negative"),
        ("conjunct(0)", "p", "negative"),
        ("p", "q", "negative"),
    }


def test_worked_example_edge_order():
    d = graph_of(WORKED)
    assert [str(e) for e in d.edges] == [
        "edge(p,q,negative)",
        "edge(p,r,positive)",
        "edge(conjunct(0),p,negative)",
        "edge(q,conjunct(0),positive)",
        "edge(r,conjunct(0),negative)",
    ]


def test_conversion_without_conjuncts_is_identity():
    g = cnr("p :- not q. q :- r. r.")
    d = cnr_to_dependency_graph(g)
    assert d.edges == g.edges and d.nodes == g.nodes and d.facts == g.facts


def test_stage_guard():
    d = graph_of(FIG3)
    with pytest.raises(StageError):
        cnr_to_dependency_graph(d)
    with pytest.raises(StageError):
        graph_to_program(cnr(FIG3))


def test_programs_1_and_2_have_distinct_cnr_graphs():
    g1 = cnr("p :- q, not r, not p.")
    g2 = cnr("p :- q, not p. p :- not r.")
    # plain dependency graphs (atoms only, sign of the literal) coincide
    def plain(prog):
        return {(l.atom, r.head, l.positive) for r in parse_program(prog).rules for l in r.body}

    assert plain("p :- q, not r, not p.") == plain("p :- q, not p. p :- not r.")
    assert len(g1.conjuncts) == 1 and len(g1.in_edges(g1.conjuncts[0])) == 3
    assert len(g2.conjuncts) == 1 and len(g2.in_edges(g2.conjuncts[0])) == 2
    assert Edge(R, P, NEG) in g2.edges
    assert edges(g1) != edges(g2)


def test_dependency_stage_conjunct_shape():
    d = graph_of("p :- q, not r, s. :- a, b. t :- not u, not v.")
    for c in d.conjuncts:
        (out,) = d.out_edges(c)
        assert out.sign is NEG
        assert len(d.in_edges(c)) >= 2


def test_edge_endpoints_checked():
    with pytest.raises(ValueError):
        DepGraph((P,), (Edge(P, Q, POS),))


def test_duplicate_edges_collapse():
    g = DepGraph((P, Q), (Edge(P, Q, POS), Edge(P, Q, POS), Edge(P, Q, NEG)))
    assert len(g.edges) == 2


# -- loops -------------------------------------------------------------------


def test_even_loop():
    report = classify_loops(graph_of("p :- not q. q :- not p."))
    assert [(tuple(map(str, l.nodes)), l.kind) for l in report] == [(("p", "q"), "even")]
    assert not report.partial


def test_positive_loop():
    report = classify_loops(graph_of("p :- q. q :- p."))
    assert [(tuple(map(str, l.nodes)), l.kind) for l in report] == [(("p", "q"), "positive")]


def test_positive_loop_becomes_even_through_conjunct():
    report = classify_loops(graph_of("p :- q, r. q :- p. r."))
    assert [(tuple(map(str, l.nodes)), l.kind) for l in report] == [
        (("conjunct(0)", "p", "q"), "even")
    ]


def test_odd_loop_and_self_loops():
    report = classify_loops(graph_of("p :- not q. q :- not r. r :- not p."))
    assert [l.kind for l in report] == ["odd"]
    assert [l.kind for l in classify_loops(graph_of("p :- p."))] == ["positive"]
    assert [l.kind for l in classify_loops(graph_of("p :- not p."))] == ["odd"]


def test_parallel_edges_give_two_loops():
    report = classify_loops(graph_of("p :- q. p :- not q. q :- p."))
    assert sorted(l.kind for l in report) == ["odd", "positive"]


def test_worked_example_loops():
    report = classify_loops(graph_of(WORKED))
    got = [(tuple(map(str, l.nodes)), l.kind) for l in report]
    assert got == [
        (("conjunct(0)", "p", "q"), "even"),
        (("conjunct(0)", "p", "r"), "even"),
    ]


def test_acyclic_graph_has_no_loops():
    assert len(classify_loops(graph_of("p :- q. q :- not r. r."))) == 0


def test_loop_cap_marks_partial():
    # complete graph on 5 atoms has many elementary cycles
    atoms = "abcde"
    src = " ".join("%s :- %s." % (x, y) for x in atoms for y in atoms if x != y)
    full = classify_loops(graph_of(src))
    assert len(full) == 84
    capped = classify_loops(graph_of(src), max_loops=10)
    assert capped.partial and len(capped) == 10


def brute_force_cycles(g):
    # every simple cycle as a rotation-normalized tuple of edges
    out = set()
    n = len(g.nodes)

    def extend(path):
        last = path[-1].dst
        if last == path[0].src:
            rot = min(range(len(path)), key=lambda i: str(path[i].src))
            out.add(tuple(path[rot:] + path[:rot]))
            return
        if len(path) >= n or last in {e.src for e in path}:
            return
        for e in g.out_edges(last):
            extend(path + [e])

    for e in g.edges:
        extend([e])
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("abcd"), st.lists(st.tuples(st.sampled_from("abcd"), st.booleans()), min_size=1, max_size=2)), max_size=5))
def test_loop_enumeration_matches_brute_force(raw):
    prog = Program([Rule(h, [Literal(a, s) for a, s in body]) for h, body in raw])
    g = program_to_graph(prog)
    report = classify_loops(g)
    got = {tuple(l.edges) for l in report}
    assert len(got) == len(report.loops)
    assert got == brute_force_cycles(g)
    for l in report:
        neg = sum(not e.positive for e in l.edges)
        assert l.kind == ("positive" if neg == 0 else "even" if neg % 2 == 0 else "odd")


# -- re-translation ----------------------------------------------------------


def test_fig3_retranslation():
    prog = graph_to_program(graph_of(FIG3))
    assert format_program(prog, " ") == "p :- not conjunct_0. conjunct_0 :- not q. conjunct_0 :- r."


def test_worked_example_retranslation():
    prog = graph_to_program(graph_of(WORKED))
    assert [str(r) for r in prog.rules] == [
        "p :- not conjunct_0.",
        "conjunct_0 :- q.",
        "conjunct_0 :- not r.",
        "q :- not p.",
        "r :- p.",
    ]


def test_empty_graph_retranslation():
    assert len(graph_to_program(graph_of(""))) == 0


def test_retranslation_with_facts_and_constraint():
    prog = graph_to_program(graph_of("r. :- r, not q."))
    assert [str(r) for r in prog.rules] == [
        "r.",
        "constraint :- not conjunct_0.",
        "conjunct_0 :- not r.",
        "conjunct_0 :- q.",
        ":- constraint.",
    ]


def test_count_of_conjuncts():
    prog = parse_program("a :- b, c. d :- e. f :- g, not h, i. j.")
    assert len(graph_of(str(prog)).conjuncts) == 2


small_programs = st.builds(
    Program,
    st.lists(
        st.builds(
            Rule,
            st.sampled_from("abcd"),
            st.lists(st.builds(Literal, st.sampled_from("abcd"), st.booleans()), max_size=3),
        ),
        max_size=5,
    ),
)


@settings(max_examples=100, deadline=None)
@given(small_programs)
def test_retranslation_round_trip(prog):
    g = program_to_graph(prog)
    back = program_to_graph(graph_to_program(g))
    assert is_isomorphic(g, back)


@given(small_programs)
def test_short_bodies_need_no_conversion(prog):
    prog = Program([Rule(r.head, r.body[:1]) for r in prog.rules])
    g = build_cnr_graph(normalize_program(prog))
    assert not g.conjuncts
    d = cnr_to_dependency_graph(g)
    assert d.edges == g.edges
