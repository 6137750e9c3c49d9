"""Brute-force reference semantics computed directly on the source program.

These never look at the dependency graph, so they serve as independent
oracles for the graph interpreters.  Stable and co-stable models are found by
checking every subset of the program's atoms, which is why the atom count is
capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .parser import Rule

__all__ = [
    "DEFAULT_CAP",
    "OracleCapExceeded",
    "ThreeValuedModel",
    "gl_reduct",
    "least_model",
    "greatest_fixpoint_model",
    "immediate_consequence",
    "violated_constraints",
    "is_stable_model",
    "is_co_stable_model",
    "stable_models",
    "co_stable_models",
    "well_founded_model",
]

DEFAULT_CAP = 22


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ThreeValuedModel:
    true_set: frozenset
    false_set: frozenset
    unknown_set: frozenset
    consistent: bool = True

    def value(self, atom):
        if atom in self.true_set:
            return "true"
        if atom in self.false_set:
            return "false"
        return "unknown"

    def as_dict(self):
        out = {a: "true" for a in self.true_set}
        out.update((a, "false") for a in self.false_set)
        out.update((a, "unknown") for a in self.unknown_set)
        return out


def gl_reduct(program, s):
    """Gelfond-Lifschitz reduct of the non-constraint rules w.r.t. atom set ``s``."""
    s = frozenset(s)
    out = []
    for r in program.rules:
        if r.is_constraint:
            continue
        if any(a in s for a in r.negative_body):
            continue
        out.append(Rule(r.head, tuple(l for l in r.body if l.positive)))
    return tuple(out)


def _rules_of(r):
    return r.rules if hasattr(r, "rules") else tuple(r)


def immediate_consequence(reduct, interp):
    """T_P(I) for a positive rule set."""
    return frozenset(
        r.head for r in _rules_of(reduct) if all(a in interp for a in r.positive_body)
    )


def least_model(reduct):
    rules = _rules_of(reduct)
    model = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.head not in model and all(a in model for a in r.positive_body):
                model.add(r.head)
                changed = True
    return frozenset(model)


def greatest_fixpoint_model(reduct, within=None):
    """Greatest fixpoint of T_P, optionally below the bound ``within``.

    Starts from every head atom (intersected with ``within``) and repeatedly
    drops atoms with no rule whose body lies inside the current set.
    """
    rules = _rules_of(reduct)
    current = {r.head for r in rules}
    if within is not None:
        current &= set(within)
    while True:
        nxt = {r.head for r in rules if r.head in current and all(a in current for a in r.positive_body)}
        if nxt == current:
            return frozenset(current)
        current = nxt


def violated_constraints(program, s):
    s = frozenset(s)
    return [
        r for r in program.constraints
        if all(a in s for a in r.positive_body) and not any(a in s for a in r.negative_body)
    ]


def is_stable_model(program, s):
    s = frozenset(s)
    return least_model(gl_reduct(program, s)) == s and not violated_constraints(program, s)


def is_co_stable_model(program, s):
    """``s`` is closed under its reduct and equals the greatest fixpoint below it."""
    s = frozenset(s)
    reduct = gl_reduct(program, s)
    if not immediate_consequence(reduct, s) <= s:
        return False
    return greatest_fixpoint_model(reduct, within=s) == s and not violated_constraints(program, s)


def _subsets(atoms, cap):
    atoms = sorted(atoms)
    if len(atoms) > cap:
        raise OracleCapExceeded(
            "%d atoms exceed the enumeration cap of %d; use the external backend"
            % (len(atoms), cap)
        )
    for k in range(len(atoms) + 1):
        for combo in combinations(atoms, k):
            yield frozenset(combo)


def stable_models(program, cap=DEFAULT_CAP):
    return {s for s in _subsets(program.atoms, cap) if is_stable_model(program, s)}


def co_stable_models(program, cap=DEFAULT_CAP):
    return {s for s in _subsets(program.atoms, cap) if is_co_stable_model(program, s)}


def well_founded_model(program):
    """Alternating-fixpoint well-founded model.

    ``gamma(S)`` is the least model of the reduct w.r.t. ``S``.  Starting from
    an empty underestimate of true atoms, the overestimate ``gamma(true)`` and
    the underestimate ``gamma(over)`` are refined until neither changes.
    """
    atoms = frozenset(program.atoms)

    def gamma(s):
        return least_model(gl_reduct(program, s))

    true = frozenset()
    while True:
        over = gamma(true)
        nxt = gamma(over)
        if nxt == true:
            break
        true = nxt
    false = atoms - over
    unknown = atoms - true - false
    consistent = not any(
        all(a in true for a in r.positive_body) and all(a in false for a in r.negative_body)
        for r in program.constraints
    )
    return ThreeValuedModel(true, false, unknown, consistent)
