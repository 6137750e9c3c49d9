"""Effective edges, model validation and per-atom justification trees.

An edge is effective when it propagates truth to its target: a positive edge
out of a true node, or a negative edge out of a false node.  A model is
justified when the true non-fact nodes are exactly the targets of effective
edges (facts may be true on their own).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .graph import CONSTRAINT, Edge, node_from_term
from .solver import TruthValue

__all__ = [
    "IncompleteModelError",
    "Violation",
    "ValidationReport",
    "JustificationTree",
    "effective_edges",
    "validate_model",
    "justify_atom",
    "justify_model",
    "render_justification",
]


class IncompleteModelError(ValueError):
    pass


def _check_total(graph, model):
    missing = [str(n) for n in graph.nodes if n not in model.assignment]
    if missing:
        raise IncompleteModelError("model has no value for: %s" % ", ".join(missing))


def _is_effective(edge, model):
    v = model.assignment[edge.src]
    if edge.positive:
        return v is TruthValue.TRUE
    return v is TruthValue.FALSE


def effective_edges(graph, model):
    _check_total(graph, model)
    return frozenset(e for e in graph.edges if _is_effective(e, model))


@dataclass(frozen=True)
class Violation:
    node: object
    reason: str

    def __str__(self):
        return "%s: %s" % (self.node, self.reason)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()
    effective: frozenset = frozenset()

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid


def validate_model(graph, model):
    eff = effective_edges(graph, model)
    supported = {e.dst for e in eff}
    violations = []
    for n in graph.nodes:
        v = model.assignment[n]
        if v is TruthValue.TRUE and n not in graph.facts and n not in supported:
            violations.append(Violation(n, "true-without-support"))
        if n in supported and v is not TruthValue.TRUE:
            violations.append(Violation(n, "supported-but-not-true"))
    if CONSTRAINT in graph and model.assignment[CONSTRAINT] is TruthValue.TRUE:
        violations.append(Violation(CONSTRAINT, "constraint-satisfied"))
    return ValidationReport(tuple(violations), eff)


@dataclass(frozen=True)
class JustificationTree:
    """Why ``node`` has ``value``.

    ``basis`` is one of ``fact``, ``effective-edge``, ``no-support``,
    ``unknown-loop`` or ``visited`` (a node already being explained higher up
    on the same path).  Each child pairs an in-edge of ``node`` with the
    explanation of that edge's source.
    """

    node: object
    value: TruthValue
    basis: str
    children: tuple = ()
    loop: tuple = field(default=(), compare=False)

    def walk(self):
        yield self
        for _, child in self.children:
            yield from child.walk()

    def leaves(self):
        return [t for t in self.walk() if not t.children]

    def to_dict(self):
        d = {
            "node": str(self.node),
            "value": self.value.value,
            "basis": self.basis,
            "children": [],
        }
        for edge, child in self.children:
            c = {"edge": str(edge)}
            c.update(child.to_dict())
            d["children"].append(c)
        if self.loop:
            d["loop"] = [str(n) for n in self.loop]
        return d


def _unknown_cycle(graph, model, start):
    """Shortest cycle through ``start`` that stays among unknown nodes."""
    unknown = {n for n, v in model.assignment.items() if v is TruthValue.UNKNOWN}
    parent = {start: None}
    queue = deque([start])
    while queue:
        n = queue.popleft()
        for e in graph.out_edges(n):
            if e.dst == start:
                path = [n]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if e.dst in unknown and e.dst not in parent:
                parent[e.dst] = n
                queue.append(e.dst)
    return ()


def _edge_key(graph):
    return lambda e: (graph.position(e.src), graph.position(e.dst), e.sign.value)


def justify_atom(graph, model, node):
    """Justification tree for ``node`` (a node or its term string)."""
    if isinstance(node, str):
        node = node_from_term(node)
    if node not in graph:
        raise KeyError("%s is not a node of the graph" % node)
    _check_total(graph, model)
    key = _edge_key(graph)

    def build(n, on_path):
        v = model.assignment[n]
        if n in on_path:
            return JustificationTree(n, v, "visited")
        if v is TruthValue.TRUE and n in graph.facts:
            return JustificationTree(n, v, "fact")
        if v is TruthValue.UNKNOWN:
            return JustificationTree(n, v, "unknown-loop", loop=_unknown_cycle(graph, model, n))
        path = on_path | {n}
        ins = sorted(graph.in_edges(n), key=key)
        if v is TruthValue.TRUE:
            kids = tuple((e, build(e.src, path)) for e in ins if _is_effective(e, model))
            return JustificationTree(n, v, "effective-edge", kids)
        kids = tuple((e, build(e.src, path)) for e in ins)
        return JustificationTree(n, v, "no-support", kids)

    return build(node, frozenset())


def justify_model(graph, model, nodes=None):
    nodes = graph.atoms if nodes is None else nodes
    return [justify_atom(graph, model, n) for n in nodes]


def _reason(tree):
    if tree.basis == "fact":
        return "(fact)"
    if tree.basis == "visited":
        return "(see above)"
    if tree.basis == "unknown-loop":
        if tree.loop:
            cyc = " -> ".join(str(n) for n in tree.loop + (tree.loop[0],))
            return "(unknown: loop %s)" % cyc
        return "(unknown)"
    if tree.basis == "effective-edge":
        edges = " and ".join(str(e) for e, _ in tree.children)
        return "because %s %s effective" % (edges, "is" if len(tree.children) == 1 else "are")
    if not tree.children:
        return "(no rule supports it)"
    return "because no in-edge is effective"


def render_justification(tree, format="text"):
    """Render a tree as an indented text trace or as compact JSON."""
    if format == "json":
        return json.dumps(tree.to_dict(), separators=(",", ":"))
    if format != "text":
        raise ValueError("unknown format %r" % format)
    lines = []

    def emit(t, depth):
        lines.append("%s%s=%s %s" % ("  " * depth, t.node, t.value.value.upper(), _reason(t)))
        for _, child in t.children:
            emit(child, depth + 1)

    emit(tree, 0)
    return "\n".join(lines)
