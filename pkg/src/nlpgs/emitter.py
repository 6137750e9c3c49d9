"""Serialization of dependency graphs into ASP facts, interpreter rules and DOT."""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from importlib import resources

from .graph import ConjunctNode, ConstraintNode, Stage, StageError

__all__ = [
    "Semantics",
    "EncodedProgram",
    "WFS_CONSTRAINT_VERBATIM",
    "WFS_CONSTRAINT_REPLACEMENT",
    "emit_graph_facts",
    "interpreter_rules",
    "interpreter_checksum",
    "emit_augmented_program",
    "emit_dot",
]


class Semantics(str, enum.Enum):
    STABLE = "stable"
    CO_STABLE = "costable"
    WELL_FOUNDED = "wfs"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {
            "stable": cls.STABLE,
            "costable": cls.CO_STABLE,
            "co_stable": cls.CO_STABLE,
            "co-stable": cls.CO_STABLE,
            "wfs": cls.WELL_FOUNDED,
            "well_founded": cls.WELL_FOUNDED,
            "well-founded": cls.WELL_FOUNDED,
        }
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError("unknown semantics %r" % value) from None


_RULE_FILES = {
    Semantics.CO_STABLE: "costable.lp",
    Semantics.STABLE: "stable.lp",
    Semantics.WELL_FOUNDED: "wellfounded.lp",
}

# As printed, this line forces the constraint node to be unknown, which can
# never hold (no node(constraint) -> no unknown(constraint); with the node it
# has no unknown in-neighbour, so can_unknown fails).  Every program would be
# unsatisfiable.  The replacement rejects only a violated constraint.
WFS_CONSTRAINT_VERBATIM = ":- not unknown(constraint)."
WFS_CONSTRAINT_REPLACEMENT = ":- true(constraint)."


@dataclass(frozen=True)
class EncodedProgram:
    facts_text: str
    rules_text: str
    semantics: Semantics

    @property
    def text(self):
        return self.facts_text + self.rules_text

    def __str__(self):
        return self.text


def _require_dependency(graph):
    if graph.stage is not Stage.DEPENDENCY:
        raise StageError("emission needs a dependency-stage graph")


def emit_graph_facts(graph):
    """Node, conjunct, fact and edge facts, one per line, in graph order."""
    _require_dependency(graph)
    lines = ["node(%s)." % n for n in graph.nodes]
    lines += ["conjunct(%s)." % n for n in graph.conjuncts]
    lines += ["fact(%s)." % n for n in graph.nodes if n in graph.facts]
    lines += ["%s." % e for e in graph.edges]
    return "".join(line + "\n" for line in lines)


def interpreter_rules(semantics, verbatim=False):
    """Interpreter rule set for ``semantics``.

    ``verbatim=True`` returns the listing exactly as published.  The default
    differs only for the well-founded rules, where the final constraint line is
    replaced (see ``WFS_CONSTRAINT_VERBATIM``).
    """
    semantics = Semantics.parse(semantics)
    text = (
        resources.files(__package__)
        .joinpath("interpreters", _RULE_FILES[semantics])
        .read_text(encoding="utf-8")
    )
    if semantics is Semantics.WELL_FOUNDED and not verbatim:
        text = text.replace(WFS_CONSTRAINT_VERBATIM, WFS_CONSTRAINT_REPLACEMENT)
    return text


def interpreter_checksum(semantics, verbatim=False):
    return hashlib.sha256(interpreter_rules(semantics, verbatim).encode()).hexdigest()


def emit_augmented_program(graph, semantics, verbatim=False):
    semantics = Semantics.parse(semantics)
    return EncodedProgram(
        emit_graph_facts(graph), interpreter_rules(semantics, verbatim), semantics
    )


def _dot_id(node):
    return '"%s"' % str(node).replace('"', '\\"')


def emit_dot(graph):
    """Graphviz rendering: black conjunct nodes, dashed negative edges, double-circled facts."""
    lines = ["digraph {"]
    for n in graph.nodes:
        if isinstance(n, ConjunctNode):
            attrs = 'shape=circle, style=filled, fillcolor=black, fontcolor=white, label="%s"' % n.index
        elif isinstance(n, ConstraintNode):
            attrs = "shape=box"
        elif n in graph.facts:
            attrs = "shape=doublecircle"
        else:
            attrs = "shape=circle"
        lines.append("  %s [%s];" % (_dot_id(n), attrs))
    for e in graph.edges:
        if e.positive:
            attrs = 'style=solid, label="+"'
        else:
            attrs = 'style=dashed, label="-"'
        lines.append("  %s -> %s [%s];" % (_dot_id(e.src), _dot_id(e.dst), attrs))
    lines.append("}")
    return "\n".join(lines) + "\n"
