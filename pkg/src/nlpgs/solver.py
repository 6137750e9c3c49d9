"""Running encoded programs on an external clingo-compatible solver."""

from __future__ import annotations

import enum
import importlib.util
import logging
import os
import re
import shlex
import shutil
import subprocess
import sys
import time
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .emitter import Semantics
from .graph import AtomNode, ConjunctNode, Node, node_from_term

__all__ = [
    "SOLVER_ENV",
    "TruthValue",
    "Model",
    "Status",
    "SolveResult",
    "SolverError",
    "SolverNotFound",
    "SolverTimeout",
    "OutputParseError",
    "resolve_solver",
    "solve_external",
    "parse_answer_sets",
    "parse_solver_output",
    "strip_conjuncts",
    "lift_model",
]

log = logging.getLogger(__name__)

SOLVER_ENV = "NLPGS_SOLVER"


class TruthValue(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Model:
    """Three-valued assignment over graph nodes."""

    assignment: Mapping[Node, TruthValue]
    semantics: Optional[Semantics] = None

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))

    def __getitem__(self, node):
        if isinstance(node, str):
            node = node_from_term(node)
        return self.assignment[node]

    def __iter__(self):
        return iter(self.assignment)

    def __len__(self):
        return len(self.assignment)

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return self.assignment == other.assignment

    def __hash__(self):
        return hash(frozenset(self.assignment.items()))

    def with_value(self, node, value):
        d = dict(self.assignment)
        d[node] = TruthValue(value)
        return Model(d, self.semantics)

    def nodes_with(self, value):
        return frozenset(n for n, v in self.assignment.items() if v is value)

    @property
    def true_atoms(self):
        return frozenset(
            n.name for n, v in self.assignment.items()
            if v is TruthValue.TRUE and isinstance(n, AtomNode)
        )

    def key(self):
        """Sortable, hashable form used for deterministic ordering."""
        return tuple(sorted((str(n), v.value) for n, v in self.assignment.items()))

    def __str__(self):
        return "{%s}" % ", ".join("%s(%s)" % (v, n) for n, v in self.key_items())

    def key_items(self):
        return sorted(self.assignment.items(), key=lambda kv: str(kv[0]))


class Status(str, enum.Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    ERROR = "error"

    def __str__(self):
        return self.value


@dataclass
class SolveResult:
    models: list
    status: Status
    wall_time: float = 0.0
    raw: str = field(default="", repr=False)

    @property
    def model_count(self):
        return len(self.models)


class SolverError(RuntimeError):
    pass


class SolverNotFound(SolverError):
    pass


class SolverTimeout(SolverError):
    pass


class OutputParseError(SolverError):
    def __init__(self, message, raw):
        super().__init__(message)
        self.raw = raw


def resolve_solver(solver=None):
    """Command prefix for the solver.

    Order: explicit argument, ``$NLPGS_SOLVER``, ``clingo`` on PATH, and
    finally the clingo application shipped with the ``clingo`` Python package
    (run as ``python -m clingo`` in a subprocess).
    """
    if solver is None:
        solver = os.environ.get(SOLVER_ENV) or None
    if solver is not None:
        cmd = shlex.split(solver) if isinstance(solver, str) else list(solver)
        if not cmd:
            raise SolverNotFound("empty solver command")
        exe = shutil.which(cmd[0])
        if exe is None:
            raise SolverNotFound("solver executable %r not found" % cmd[0])
        return [exe] + cmd[1:]
    exe = shutil.which("clingo")
    if exe is not None:
        return [exe]
    if importlib.util.find_spec("clingo") is not None:
        return [sys.executable, "-m", "clingo"]
    raise SolverNotFound(
        "no clingo executable found; pass --solver, set %s, or install clingo" % SOLVER_ENV
    )


_VALUE_ATOM = re.compile(r"(true|false|unknown)\((.*)\)\Z")


def _split_atoms(line):
    # split on spaces outside parentheses
    out, depth, cur = [], 0, []
    for ch in line:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == " " and depth == 0:
            if cur:
                out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur))
    if depth != 0:
        raise ValueError("unbalanced parentheses")
    return out


def _model_from_line(line, semantics):
    assignment = {}
    for atom in _split_atoms(line.strip()):
        m = _VALUE_ATOM.match(atom)
        if not m:
            continue
        node = node_from_term(m.group(2))
        value = TruthValue(m.group(1))
        if assignment.get(node, value) is not value:
            raise ValueError("node %s has two values" % node)
        assignment[node] = value
    return Model(assignment, semantics)


def parse_solver_output(raw, semantics=None):
    """Parse clingo's default text output into ``(models, status)``."""
    models = []
    status = None
    lines = raw.splitlines()
    i = 0
    try:
        while i < len(lines):
            line = lines[i].strip()
            if line.startswith("Answer:"):
                i += 1
                if i >= len(lines):
                    raise ValueError("answer block without atom line")
                models.append(_model_from_line(lines[i], semantics))
            elif line == "SATISFIABLE":
                status = Status.SATISFIABLE
            elif line == "UNSATISFIABLE":
                status = Status.UNSATISFIABLE
            elif line == "UNKNOWN" and status is None:
                status = Status.ERROR
            i += 1
    except ValueError as exc:
        raise OutputParseError("malformed solver output: %s" % exc, raw) from None
    if status is None:
        raise OutputParseError("no SATISFIABLE/UNSATISFIABLE verdict in solver output", raw)
    if status is Status.UNSATISFIABLE and models:
        raise OutputParseError("UNSATISFIABLE output carries models", raw)
    return models, status


def parse_answer_sets(raw, semantics=None):
    """Models found in clingo's default text output, one per ``Answer:`` block."""
    return parse_solver_output(raw, semantics)[0]


def solve_external(encoded, solver=None, max_models=0, timeout=30.0, extra_args=()):
    """Solve ``encoded`` (an :class:`EncodedProgram`) with an external solver.

    The program text is passed on stdin.  ``max_models=0`` enumerates all
    answer sets.
    """
    if max_models < 0:
        raise ValueError("max_models must be >= 0")
    cmd = resolve_solver(solver) + [str(max_models), "--warn=none", *extra_args, "-"]
    start = time.perf_counter()
    try:
        proc = subprocess.run(
            cmd, input=encoded.text, capture_output=True, text=True, timeout=timeout
        )
    except subprocess.TimeoutExpired:
        raise SolverTimeout("solver did not finish within %.1f s" % timeout) from None
    except OSError as exc:
        raise SolverNotFound(str(exc)) from None
    elapsed = time.perf_counter() - start
    log.debug("solver exit code %d after %.3fs", proc.returncode, elapsed)
    # clingo: 10 sat, 20 unsat, 30 sat + exhausted; 65 input error, 1 interrupted.
    # `python -m clingo` always exits 0, so a verdict line is required as well.
    verdict = re.search(r"^(UN)?SATISFIABLE$", proc.stdout, re.M)
    if proc.returncode not in (0, 10, 20, 30) or verdict is None:
        raise SolverError(
            "solver failed (exit %d):\n%s\n--- program ---\n%s"
            % (proc.returncode, proc.stderr.strip(), encoded.text)
        )
    models, status = parse_solver_output(proc.stdout, encoded.semantics)
    models.sort(key=Model.key)
    return SolveResult(models, status, elapsed, proc.stdout)


def strip_conjuncts(model, graph=None):
    """Restrict ``model`` to atom nodes (conjunct and constraint nodes dropped)."""
    kept = {n: v for n, v in model.assignment.items() if isinstance(n, AtomNode)}
    return Model(kept, model.semantics)


def lift_model(graph, values, semantics=None):
    """Extend an atom-level assignment to every node of ``graph``.

    ``values`` maps atom names (or AtomNodes) to truth values; atoms of the
    graph that are missing count as false.  Helper nodes get the Kleene
    disjunction of their in-edges, where an edge is true when it is effective
    and false when its source has the opposite value.
    """
    assignment = {}
    for k, v in values.items():
        node = AtomNode(k) if isinstance(k, str) else k
        assignment[node] = TruthValue(v)
    for n in graph.atoms:
        assignment.setdefault(n, TruthValue.FALSE)

    def edge_value(e):
        src = assignment[e.src]
        if src is TruthValue.UNKNOWN:
            return TruthValue.UNKNOWN
        fires = (src is TruthValue.TRUE) == e.positive
        return TruthValue.TRUE if fires else TruthValue.FALSE

    # conjuncts only read atoms; the constraint node may read conjuncts
    helpers = [n for n in graph.nodes if not isinstance(n, AtomNode)]
    helpers.sort(key=lambda n: 0 if isinstance(n, ConjunctNode) else 1)
    for n in helpers:
        vals = [edge_value(e) for e in graph.in_edges(n)]
        if TruthValue.TRUE in vals:
            assignment[n] = TruthValue.TRUE
        elif TruthValue.UNKNOWN in vals:
            assignment[n] = TruthValue.UNKNOWN
        else:
            assignment[n] = TruthValue.FALSE
    return Model({n: assignment[n] for n in graph.nodes}, semantics)
