"""Parsing of propositional normal logic programs.

The accepted language is the small Prolog-like fragment::

    p.                      % fact
    p :- q, not r.          % rule
    :- not q, not r.        % headless constraint

Atoms are lowercase identifiers without arguments.  Anything that looks like
a variable, a compound term or a directive is rejected, since grounding is
not performed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

__all__ = [
    "RESERVED",
    "ParseError",
    "Literal",
    "Rule",
    "Program",
    "parse_program",
    "normalize_program",
    "format_program",
]

# names used by the emitted node/edge encoding
RESERVED = frozenset(
    ["constraint", "conjunct", "node", "edge", "fact", "true", "false", "unknown", "not"]
)

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    positive: bool = True

    def __str__(self):
        return self.atom if self.positive else "not " + self.atom

    def negate(self):
        return Literal(self.atom, not self.positive)


@dataclass(frozen=True)
class Rule:
    head: Optional[str]
    body: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        if self.head is None and not self.body:
            raise ValueError("a headless constraint needs a non-empty body")

    @property
    def is_fact(self):
        return self.head is not None and not self.body

    @property
    def is_constraint(self):
        return self.head is None

    @property
    def positive_body(self):
        return tuple(l.atom for l in self.body if l.positive)

    @property
    def negative_body(self):
        return tuple(l.atom for l in self.body if not l.positive)

    @property
    def atoms(self):
        out = [] if self.head is None else [self.head]
        out.extend(l.atom for l in self.body)
        return out

    def __str__(self):
        if not self.body:
            return "%s." % self.head
        body = ", ".join(str(l) for l in self.body)
        if self.head is None:
            return ":- %s." % body
        return "%s :- %s." % (self.head, body)


@dataclass(frozen=True)
class Program:
    rules: tuple = ()
    atoms: frozenset = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(
            self, "atoms", frozenset(a for r in self.rules for a in r.atoms)
        )

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __str__(self):
        return format_program(self)

    @property
    def constraints(self):
        return tuple(r for r in self.rules if r.is_constraint)

    @property
    def facts(self):
        return tuple(r.head for r in self.rules if r.is_fact)


def format_program(program, sep="\n"):
    """Print ``program`` in the concrete syntax accepted by :func:`parse_program`."""
    text = sep.join(str(r) for r in program.rules)
    if text and sep == "\n":
        text += "\n"
    return text


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<dot>\.)
  | (?P<comma>,)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<other>.)
    """,
    re.VERBOSE,
)


def _tokenize(text):
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind not in ("ws", "comment"):
            yield kind, m.group(), line, col
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
    yield "eof", "", line, len(text) - line_start + 1


class _Parser:
    def __init__(self, text):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def expect(self, kind, what):
        tok = self.peek()
        if tok[0] != kind:
            self.fail("expected %s, found %s" % (what, _describe(tok)))
        return self.advance()

    def program(self):
        rules = []
        while self.peek()[0] != "eof":
            rules.append(self.rule())
        return Program(rules)

    def rule(self):
        tok = self.peek()
        if tok[0] == "if":
            self.advance()
            body = self.body()
            self.expect("dot", "'.'")
            return Rule(None, body)
        head = self.atom()
        if self.peek()[0] == "dot":
            self.advance()
            return Rule(head, ())
        self.expect("if", "':-' or '.'")
        body = self.body()
        self.expect("dot", "'.'")
        return Rule(head, body)

    def body(self):
        lits = [self.literal()]
        while self.peek()[0] == "comma":
            self.advance()
            lits.append(self.literal())
        return lits

    def literal(self):
        tok = self.peek()
        if tok[0] == "ident" and tok[1] == "not":
            nxt = self.tokens[self.pos + 1]
            if nxt[0] == "ident":
                self.advance()
                return Literal(self.atom(), False)
        return Literal(self.atom(), True)

    def atom(self):
        tok = self.peek()
        if tok[0] == "other" and tok[1] == "#":
            self.fail("directives are not part of the input language")
        if tok[0] == "other" and tok[1] == "-":
            self.fail("classical negation is not supported")
        if tok[0] != "ident":
            self.fail("expected an atom, found %s" % _describe(tok))
        name = tok[1]
        if not ATOM_RE.match(name):
            self.fail(
                "%r is a variable; only ground (propositional) programs are "
                "accepted, grounding is out of scope" % name
            )
        if name in RESERVED:
            self.fail("%r is a reserved word and cannot be used as an atom" % name)
        self.advance()
        if self.peek()[0] == "other" and self.peek()[1] == "(":
            self.fail(
                "compound term %s(...) found; only propositional atoms are "
                "accepted, grounding is out of scope" % name
            )
        return name


def _describe(tok):
    if tok[0] == "eof":
        return "end of input"
    return repr(tok[1])


def parse_program(text):
    """Parse ``text`` into a :class:`Program`.

    Raises :class:`ParseError` carrying the line and column of the offending
    token.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text).program()


def _dedup(items: Iterable):
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def normalize_program(program):
    """Drop duplicate body literals and duplicate rules, keeping first occurrences."""
    rules = [Rule(r.head, _dedup(r.body)) for r in program.rules]
    return Program(_dedup(rules))
