"""Shared programs and markers for the test suite."""

import pytest

from nlpgs.graph import program_to_graph
from nlpgs.parser import parse_program
from nlpgs.solver import SolverNotFound, resolve_solver

WORKED = "p :- not q, r. q :- not p. r :- p."
PROGRAM5 = "p :- not q, r. q :- not p."
FIG3 = "p :- q, not r."


def _have_solver():
    try:
        resolve_solver()
    except SolverNotFound:
        return False
    return True


HAVE_SOLVER = _have_solver()

requires_solver = pytest.mark.skipif(not HAVE_SOLVER, reason="no clingo executable available")


def graph_of(text):
    return program_to_graph(parse_program(text))

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def record(criterion, ok, detail=""):
    line = "criterion %s: %s" % (criterion, "PASS" if ok else "FAIL")
    if detail:
        line += "  (%s)" % detail
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok
