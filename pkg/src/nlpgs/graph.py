"""Dependency graphs with conjunction nodes.

A program is first turned into a CNR graph (conjunction node representation):
every rule body with two or more literals gets its own conjunction node that
collects the body literals and feeds the rule head.  Negating every edge that
touches a conjunction node (De Morgan) yields an ordinary signed dependency
graph over atoms plus helper nodes, which is what the interpreters reason on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

from .parser import Literal, Program, Rule

__all__ = [
    "Sign",
    "AtomNode",
    "ConjunctNode",
    "ConstraintNode",
    "CONSTRAINT",
    "Node",
    "Edge",
    "Stage",
    "DepGraph",
    "Loop",
    "LoopReport",
    "StageError",
    "node_from_term",
    "build_cnr_graph",
    "cnr_to_dependency_graph",
    "program_to_graph",
    "classify_loops",
    "graph_to_program",
    "is_isomorphic",
]


class Sign(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    def __str__(self):
        return self.value

    def negate(self):
        return Sign.NEGATIVE if self is Sign.POSITIVE else Sign.POSITIVE

    @classmethod
    def of(cls, literal):
        return cls.POSITIVE if literal.positive else cls.NEGATIVE


@dataclass(frozen=True)
class AtomNode:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ConjunctNode:
    index: int

    def __str__(self):
        return "conjunct(%d)" % self.index


@dataclass(frozen=True)
class ConstraintNode:
    def __str__(self):
        return "constraint"


CONSTRAINT = ConstraintNode()

Node = Union[AtomNode, ConjunctNode, ConstraintNode]


def node_from_term(term):
    """Inverse of ``str(node)`` for the terms used in the encoding."""
    term = term.strip()
    if term == "constraint":
        return CONSTRAINT
    if term.startswith("conjunct(") and term.endswith(")"):
        return ConjunctNode(int(term[len("conjunct("):-1]))
    return AtomNode(term)


@dataclass(frozen=True)
class Edge:
    src: Node
    dst: Node
    sign: Sign

    @property
    def positive(self):
        return self.sign is Sign.POSITIVE

    def __str__(self):
        return "edge(%s,%s,%s)" % (self.src, self.dst, self.sign)


class Stage(str, enum.Enum):
    CNR = "cnr"
    DEPENDENCY = "dependency"


class StageError(ValueError):
    pass


@dataclass(frozen=True)
class DepGraph:
    """Signed graph over atom, conjunct and constraint nodes.

    ``nodes`` keeps first-appearance order (rule head, then the rule's
    conjunct, then body atoms).  ``edges`` are kept sorted by the positions of
    their endpoints in ``nodes``; this is the order used for emission.
    """

    nodes: tuple = ()
    edges: tuple = ()
    facts: frozenset = frozenset()
    stage: Stage = Stage.DEPENDENCY
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(dict.fromkeys(self.nodes))
        index = {n: i for i, n in enumerate(nodes)}
        for e in self.edges:
            if e.src not in index or e.dst not in index:
                raise ValueError("edge %s has an endpoint outside the graph" % e)
        edges = sorted(
            set(self.edges), key=lambda e: (index[e.src], index[e.dst], e.sign.value)
        )
        if not set(self.facts) <= set(nodes):
            raise ValueError("facts must be graph nodes")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "facts", frozenset(self.facts))
        object.__setattr__(self, "stage", Stage(self.stage))
        object.__setattr__(self, "_index", index)

    @property
    def conjuncts(self):
        return tuple(n for n in self.nodes if isinstance(n, ConjunctNode))

    @property
    def atoms(self):
        return tuple(n for n in self.nodes if isinstance(n, AtomNode))

    @property
    def has_constraint(self):
        return CONSTRAINT in self._index

    def in_edges(self, node):
        return tuple(e for e in self.edges if e.dst == node)

    def out_edges(self, node):
        return tuple(e for e in self.edges if e.src == node)

    def position(self, node):
        return self._index[node]

    def __contains__(self, node):
        return node in self._index


def build_cnr_graph(program):
    """Build the CNR graph of ``program`` (expected to be normalized).

    Empty bodies mark their head as a fact, one-literal bodies become a single
    edge carrying the literal's sign, and longer bodies get a fresh conjunct
    node with one edge per literal plus a positive edge into the head.
    Headless constraints all share the single constraint node as head.
    """
    nodes, edges, facts = [], [], set()
    conj_cnt = 0
    for rule in program.rules:
        head = CONSTRAINT if rule.head is None else AtomNode(rule.head)
        nodes.append(head)
        if not rule.body:
            facts.add(head)
        elif len(rule.body) == 1:
            lit = rule.body[0]
            nodes.append(AtomNode(lit.atom))
            edges.append(Edge(AtomNode(lit.atom), head, Sign.of(lit)))
        else:
            conj = ConjunctNode(conj_cnt)
            conj_cnt += 1
            nodes.append(conj)
            for lit in rule.body:
                nodes.append(AtomNode(lit.atom))
                edges.append(Edge(AtomNode(lit.atom), conj, Sign.of(lit)))
            edges.append(Edge(conj, head, Sign.POSITIVE))
    return DepGraph(nodes, edges, facts, Stage.CNR)


def cnr_to_dependency_graph(graph):
    """Flip the sign of every edge incident to a conjunct node."""
    if graph.stage is not Stage.CNR:
        raise StageError("expected a CNR-stage graph, got stage %r" % graph.stage.value)
    edges = []
    for e in graph.edges:
        if isinstance(e.src, ConjunctNode) or isinstance(e.dst, ConjunctNode):
            e = Edge(e.src, e.dst, e.sign.negate())
        edges.append(e)
    return DepGraph(graph.nodes, edges, graph.facts, Stage.DEPENDENCY)


def program_to_graph(program):
    """Normalize, build the CNR graph and convert it to a dependency graph."""
    from .parser import normalize_program

    return cnr_to_dependency_graph(build_cnr_graph(normalize_program(program)))


# -- loops -------------------------------------------------------------------


@dataclass(frozen=True)
class Loop:
    edges: tuple
    kind: str

    @property
    def nodes(self):
        return tuple(e.src for e in self.edges)

    @property
    def negative_count(self):
        return sum(1 for e in self.edges if not e.positive)

    def __str__(self):
        path = " -> ".join(str(n) for n in self.nodes + (self.edges[0].src,))
        return "%s (%s)" % (path, self.kind)


@dataclass(frozen=True)
class LoopReport:
    loops: tuple = ()
    partial: bool = False

    def __iter__(self):
        return iter(self.loops)

    def __len__(self):
        return len(self.loops)

    def of_kind(self, kind):
        return tuple(l for l in self.loops if l.kind == kind)


def _loop_kind(edges):
    neg = sum(1 for e in edges if not e.positive)
    if neg == 0:
        return "positive"
    return "even" if neg % 2 == 0 else "odd"


def classify_loops(graph, max_loops=10000):
    """Enumerate elementary cycles and tag each as positive, even or odd.

    Parallel edges of different sign between the same nodes give distinct
    cycles.  Each cycle is rooted at its least node (by name), and cycles are
    reported in lexicographic order of their node names.  At most
    ``max_loops`` cycles are collected; ``partial`` is set when the cap was hit.
    """
    order = sorted(graph.nodes, key=str)
    rank = {n: i for i, n in enumerate(order)}
    out_edges = {n: [] for n in graph.nodes}
    for e in graph.edges:
        out_edges[e.src].append(e)
    for n in out_edges:
        out_edges[n].sort(key=lambda e: (rank[e.dst], e.sign.value))

    found = []
    partial = False

    for start in order:
        lo = rank[start]
        path = []
        on_path = {start}
        stack = [iter(out_edges[start])]
        while stack:
            e = next(stack[-1], None)
            if e is None:
                stack.pop()
                if path:
                    on_path.discard(path.pop().dst)
                continue
            if rank[e.dst] < lo:
                continue
            if e.dst == start:
                cyc = tuple(path) + (e,)
                found.append(Loop(cyc, _loop_kind(cyc)))
                if len(found) >= max_loops:
                    partial = True
                    break
            elif e.dst not in on_path:
                path.append(e)
                on_path.add(e.dst)
                stack.append(iter(out_edges[e.dst]))
        if partial:
            break

    found.sort(key=lambda l: ([str(n) for n in l.nodes], [e.sign.value for e in l.edges]))
    return LoopReport(tuple(found), partial)


# -- re-translation ----------------------------------------------------------


def _atom_name(node):
    if isinstance(node, ConjunctNode):
        return "conjunct_%d" % node.index
    return str(node)


def graph_to_program(graph):
    """Read a dependency graph back as a normal program, one rule per edge.

    Conjunct nodes become ordinary atoms ``conjunct_N``.  The constraint node
    becomes the atom ``constraint`` together with ``:- constraint.``; such a
    program can be built and solved but does not print back to parseable
    source, because ``constraint`` is reserved in the input language.
    """
    if graph.stage is not Stage.DEPENDENCY:
        raise StageError("expected a dependency-stage graph")
    rules = []
    for node in graph.nodes:
        name = _atom_name(node)
        if node in graph.facts:
            rules.append(Rule(name, ()))
        for e in graph.in_edges(node):
            rules.append(Rule(name, (Literal(_atom_name(e.src), e.positive),)))
    if graph.has_constraint:
        rules.append(Rule(None, (Literal("constraint", True),)))
    return Program(rules)


def is_isomorphic(g1, g2):
    """Signed-graph isomorphism test that ignores node kinds.

    Atom nodes must map to atoms of the same name, except atoms named
    ``conjunct_N`` which may pair with conjunct nodes; other nodes are matched
    by brute force over the remaining candidates.
    """
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return False

    def key(n):
        if isinstance(n, ConjunctNode) or (
            isinstance(n, AtomNode) and n.name.startswith("conjunct_")
        ):
            return None
        return str(n)

    fixed = {}
    free1, free2 = [], []
    names2 = {key(n): n for n in g2.nodes if key(n) is not None}
    for n in g1.nodes:
        k = key(n)
        if k is None:
            free1.append(n)
        elif k in names2:
            fixed[n] = names2[k]
        else:
            return False
    free2 = [n for n in g2.nodes if key(n) is None]
    if len(free1) != len(free2):
        return False

    target = {(e.src, e.dst, e.sign) for e in g2.edges}
    facts2 = set(g2.facts)

    def check(mapping):
        if {mapping[f] for f in g1.facts} != facts2:
            return False
        return {(mapping[e.src], mapping[e.dst], e.sign) for e in g1.edges} == target

    from itertools import permutations

    for perm in permutations(free2):
        mapping = dict(fixed)
        mapping.update(zip(free1, perm))
        if check(mapping):
            return True
    return False
