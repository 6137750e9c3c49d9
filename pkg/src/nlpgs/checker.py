"""Differential testing of the graph interpreters against the reference oracles."""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path

from . import oracles
from .emitter import Semantics, emit_augmented_program
from .graph import program_to_graph
from .justification import validate_model
from .parser import Literal, Program, Rule, normalize_program, parse_program
from .solver import SolverError, Status, TruthValue, lift_model, solve_external, strip_conjuncts

__all__ = [
    "REFERENCE_PROGRAMS",
    "Comparison",
    "AgreementReport",
    "native_models",
    "pipeline_models",
    "compare_on",
    "exhaustive_programs",
    "random_programs",
    "run_corpus",
    "run_reference_suite",
    "oracle_self_check",
]

# the worked and illustrative programs of the method; exact agreement is required on all of them
REFERENCE_PROGRAMS = [
    ("program1", "p :- q, not r, not p."),
    ("program2", "p :- q, not p. p :- not r."),
    ("program3", "p :- not q, not r, not p."),
    ("program4", ":- not q, not r."),
    ("program5", "p :- not q, r. q :- not p."),
    ("cnr_to_dg", "p :- q, not r."),
    ("positive_loop_with_fact", "p :- q, r. q :- p. r."),
    ("positive_loop", "p :- q. q :- p."),
    ("even_loop", "p :- not q. q :- not p."),
    ("odd_loop", "p :- not q. q :- not r. r :- not p."),
    ("worked_example", "p :- not q, r. q :- not p. r :- p."),
]


def _wfs_key(model):
    return tuple(sorted(model.items()))


def native_models(program, semantics, cap=oracles.DEFAULT_CAP):
    """Oracle answer in the shape used for comparison.

    Stable and co-stable: frozenset of frozensets of true atoms.  Well-founded:
    frozenset holding one sorted (atom, value) tuple, or empty when a
    constraint body is true in the well-founded model.
    """
    semantics = Semantics.parse(semantics)
    program = normalize_program(program)
    if semantics is Semantics.STABLE:
        return frozenset(oracles.stable_models(program, cap))
    if semantics is Semantics.CO_STABLE:
        return frozenset(oracles.co_stable_models(program, cap))
    wfm = oracles.well_founded_model(program)
    if not wfm.consistent:
        return frozenset()
    return frozenset([_wfs_key(wfm.as_dict())])


def pipeline_models(program, semantics, solver=None, timeout=30.0):
    """Solve through the graph encoding; returns (comparable models, raw models, graph)."""
    semantics = Semantics.parse(semantics)
    graph = program_to_graph(program)
    result = solve_external(emit_augmented_program(graph, semantics), solver=solver, timeout=timeout)
    if result.status is Status.ERROR:
        raise SolverError("solver returned no verdict")
    out = set()
    for m in result.models:
        atoms = strip_conjuncts(m, graph)
        if semantics is Semantics.WELL_FOUNDED:
            out.add(_wfs_key({n.name: v.value for n, v in atoms.assignment.items()}))
        else:
            out.add(frozenset(n.name for n, v in atoms.assignment.items() if v is TruthValue.TRUE))
    return frozenset(out), result.models, graph


def _oracle_graph_models(program, semantics, answer):
    graph = program_to_graph(program)
    out = []
    for m in answer:
        if semantics is Semantics.WELL_FOUNDED:
            out.append(lift_model(graph, dict(m), semantics))
        else:
            out.append(lift_model(graph, {a: "true" for a in m}, semantics))
    return graph, out


def _fmt(semantics, models):
    if semantics is Semantics.WELL_FOUNDED:
        return [dict(m) for m in sorted(models)]
    return [sorted(m) for m in sorted(models, key=lambda s: (len(s), sorted(s)))]


@dataclass
class Comparison:
    program: str
    semantics: Semantics
    agreed: bool
    oracle: list
    pipeline: list
    reason: str = ""
    invalid_models: list = field(default_factory=list)
    name: str = ""

    def to_dict(self):
        d = {
            "program": self.program,
            "semantics": self.semantics.value,
            "agreed": self.agreed,
            "oracle": self.oracle,
            "pipeline": self.pipeline,
        }
        if self.name:
            d["name"] = self.name
        if self.reason:
            d["reason"] = self.reason
        if self.invalid_models:
            d["invalid_models"] = self.invalid_models
        return d


def compare_on(program, semantics, solver=None, timeout=30.0, cap=oracles.DEFAULT_CAP, name=""):
    """Run both backends on ``program`` and compare conjunct-stripped model sets.

    Every model from either side is also checked with :func:`validate_model`;
    failures are listed in ``invalid_models`` without affecting agreement.
    """
    semantics = Semantics.parse(semantics)
    if isinstance(program, str):
        program = parse_program(program)
    program = normalize_program(program)
    text = program.__str__().strip()
    oracle = native_models(program, semantics, cap)
    invalid = []
    graph, lifted = _oracle_graph_models(program, semantics, oracle)
    for m in lifted:
        rep = validate_model(graph, m)
        if not rep.valid:
            invalid.append({"source": "oracle", "model": str(m), "violations": [str(v) for v in rep.violations]})
    try:
        pipe, raw, graph = pipeline_models(program, semantics, solver, timeout)
    except SolverError as exc:
        return Comparison(text, semantics, False, _fmt(semantics, oracle), [], "backend failure: %s" % exc, invalid, name)
    for m in raw:
        rep = validate_model(graph, m)
        if not rep.valid:
            invalid.append({"source": "pipeline", "model": str(m), "violations": [str(v) for v in rep.violations]})
    agreed = pipe == oracle
    reason = "" if agreed else "model sets differ"
    return Comparison(text, semantics, agreed, _fmt(semantics, oracle), _fmt(semantics, pipe), reason, invalid, name)


# -- corpora -----------------------------------------------------------------


def _all_rules(atoms, max_body, constraints=True):
    lits = [Literal(a, pos) for a in atoms for pos in (True, False)]
    bodies = [c for k in range(max_body + 1) for c in combinations(lits, k)]
    heads = list(atoms) + ([None] if constraints else [])
    return [Rule(h, b) for h in heads for b in bodies if h is not None or b]


def _canonical_key(rules, atoms):
    best = None
    for perm in permutations(atoms):
        m = dict(zip(atoms, perm))
        key = tuple(sorted(
            (m[r.head] if r.head else "", tuple(sorted((m[l.atom], l.positive) for l in r.body)))
            for r in rules
        ))
        if best is None or key < best:
            best = key
    return best


def exhaustive_programs(n_atoms=3, max_rules=3, max_body=2, constraints=True, canonical=True):
    """Every program over ``n_atoms`` atoms with at most ``max_rules`` distinct rules.

    With ``canonical`` only one representative per atom renaming is produced.
    Programs are yielded in a fixed order.
    """
    atoms = ["a", "b", "c", "d", "e", "f"][:n_atoms]
    if len(atoms) < n_atoms:
        raise ValueError("at most 6 atoms are supported")
    rules = _all_rules(atoms, max_body, constraints)
    seen = set()
    for k in range(max_rules + 1):
        for combo in combinations(rules, k):
            if canonical:
                key = _canonical_key(combo, atoms)
                if key in seen:
                    continue
                seen.add(key)
            yield Program(combo)


def random_programs(n_atoms=4, max_rules=4, seed=0, count=100, max_body=2, constraints=True):
    """Seeded random programs; deterministic for a given argument tuple."""
    rng = random.Random(seed)
    atoms = ["a", "b", "c", "d", "e", "f", "g", "h"][:n_atoms] if n_atoms <= 8 else [
        "a%d" % i for i in range(n_atoms)
    ]
    for _ in range(count):
        rules = []
        for _ in range(rng.randint(1, max_rules)):
            k = rng.randint(0, max_body)
            chosen = rng.sample(atoms, min(k, len(atoms)))
            body = tuple(Literal(a, rng.random() < 0.5) for a in chosen)
            head = None if (constraints and body and rng.random() < 0.1) else rng.choice(atoms)
            rules.append(Rule(head, body))
        yield Program(rules)


@dataclass
class AgreementReport:
    semantics: Semantics
    total: int = 0
    agreed: int = 0
    disagreements: list = field(default_factory=list)
    invalid: list = field(default_factory=list)

    @property
    def rate(self):
        return self.agreed / self.total if self.total else 1.0

    def to_dict(self):
        return {
            "semantics": self.semantics.value,
            "total": self.total,
            "agreed": self.agreed,
            "rate": round(self.rate, 6),
            "disagreements": [c.to_dict() for c in self.disagreements],
            "invalid": [c.to_dict() for c in self.invalid],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def table(self):
        lines = [
            "semantics  total  agreed  rate",
            "%-9s  %5d  %6d  %.4f" % (self.semantics.value, self.total, self.agreed, self.rate),
        ]
        for c in self.disagreements:
            lines.append("  DISAGREE %s" % c.program.replace("\n", " "))
            lines.append("    oracle:   %s" % json.dumps(c.oracle))
            lines.append("    pipeline: %s" % json.dumps(c.pipeline))
        return "\n".join(lines)

    def write_reproducers(self, directory):
        """One ``.lp`` file per disagreement, headed by both model sets as comments."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for i, c in enumerate(self.disagreements):
            path = directory / ("%s_%04d.lp" % (self.semantics.value, i))
            path.write_text(
                "%% semantics: %s\n%% oracle:   %s\n%% pipeline: %s\n%s\n"
                % (c.semantics.value, json.dumps(c.oracle), json.dumps(c.pipeline), c.program)
            )
            paths.append(path)
        return paths


def run_corpus(programs, semantics, solver=None, timeout=30.0, jobs=1):
    semantics = Semantics.parse(semantics)
    report = AgreementReport(semantics)
    programs = list(programs)

    def one(p):
        return compare_on(p, semantics, solver, timeout)

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(one, programs))
    else:
        results = [one(p) for p in programs]
    for c in results:
        report.total += 1
        if c.agreed:
            report.agreed += 1
        else:
            report.disagreements.append(c)
        if c.invalid_models:
            report.invalid.append(c)
    return report


def run_reference_suite(solver=None, timeout=30.0):
    """Compare every reference program under every semantics.

    Returns ``(comparisons, failures)``.
    """
    comparisons, failures = [], []
    for name, src in REFERENCE_PROGRAMS:
        for sem in Semantics:
            c = compare_on(src, sem, solver, timeout, name=name)
            comparisons.append(c)
            if not c.agreed:
                failures.append(c)
    return comparisons, failures


def oracle_self_check(programs, cap=oracles.DEFAULT_CAP):
    """Check the oracles' answers against the defining conditions.

    Every stable model must be the least model of its reduct, every co-stable
    model the greatest fixpoint of its reduct below itself, and the
    well-founded true/false sets must bound the stable models when there are
    any.  Returns ``(programs checked, list of violation strings)``.
    """
    checked, problems = 0, []
    for p in programs:
        p = normalize_program(p)
        checked += 1
        text = str(p).replace("\n", " ")
        sms = oracles.stable_models(p, cap)
        for s in sms:
            if oracles.least_model(oracles.gl_reduct(p, s)) != s:
                problems.append("stable %s not least model of reduct: %s" % (sorted(s), text))
        for s in oracles.co_stable_models(p, cap):
            r = oracles.gl_reduct(p, s)
            if oracles.greatest_fixpoint_model(r, within=s) != s or not oracles.immediate_consequence(r, s) <= s:
                problems.append("co-stable %s fails gfp condition: %s" % (sorted(s), text))
        wfm = oracles.well_founded_model(p)
        if sms and not (wfm.true_set <= frozenset.intersection(*sms)
                        and not wfm.false_set & frozenset.union(*sms)):
            problems.append("well-founded model outside stable bounds: %s" % text)
    return checked, problems
