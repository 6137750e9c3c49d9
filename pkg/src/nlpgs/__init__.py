"""Graph-based interpretation of propositional normal logic programs.

Programs are turned into signed dependency graphs with conjunction nodes,
emitted as ASP facts together with an interpreter rule set, and solved with
clingo under the stable, co-stable or well-founded semantics.  Brute-force
oracles and effective-edge justifications are included.
"""

from .parser import Literal, ParseError, Program, Rule, format_program, normalize_program, parse_program
from .graph import (
    CONSTRAINT,
    AtomNode,
    ConjunctNode,
    DepGraph,
    Edge,
    Sign,
    Stage,
    build_cnr_graph,
    classify_loops,
    cnr_to_dependency_graph,
    graph_to_program,
    program_to_graph,
)
from .emitter import Semantics, emit_augmented_program, emit_dot, emit_graph_facts, interpreter_rules
from .solver import Model, SolveResult, TruthValue, lift_model, solve_external, strip_conjuncts
from .justification import effective_edges, justify_atom, render_justification, validate_model

__version__ = "0.1.0"
