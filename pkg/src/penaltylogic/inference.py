"""Nonmonotonic inference induced by a penalty knowledge base.

``premise |~ conclusion`` holds when every cheapest model of the premise
satisfies the conclusion.  :func:`nm_entails` computes this on the model side
with the solver; :func:`nm_entails_by_subtheories` goes through the cheapest
premise-consistent sub-theories instead and exists so the two characterisations
can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence, Union

from penaltylogic.kb import PenaltyKB, add_hard, subtheory_formulas
from penaltylogic.logic import (
    TOP,
    And,
    Formula,
    Interpretation,
    Not,
    Or,
    as_formula,
    conjunction,
    entails,
    evaluate,
    is_satisfiable,
    make_vocabulary,
    truth_table,
    vocabulary,
)
from penaltylogic.solver import (
    SearchConfig,
    brute_force_min_cost,
    min_cost_interpretations,
    phi_preferred_subtheories,
)


@dataclass(frozen=True)
class Query:
    premise: Formula
    conclusion: Formula

    @classmethod
    def of(cls, premise: Union[Formula, str], conclusion: Union[Formula, str]) -> Query:
        return cls(as_formula(premise), as_formula(conclusion))


def preferred_models(
    pk: PenaltyKB,
    premise: Union[Formula, str],
    vocab: Iterable[str] = (),
    oracle: bool = False,
) -> tuple[Interpretation, ...]:
    """Models of ``premise`` of minimal cost, over ``pk``'s atoms plus ``vocab``.

    Empty when the premise is unsatisfiable.  When every model of the premise
    has infinite cost, all of them are returned.
    """
    premise = as_formula(premise)
    extra = set(vocab) | vocabulary(premise)
    hardened = add_hard(pk, premise)
    if oracle:
        result = brute_force_min_cost(hardened, vocabulary=extra)
    else:
        result = min_cost_interpretations(hardened, SearchConfig(witness_mode="all"), extra)
    # With an infinite optimum the solver returns the whole space.
    return tuple(w for w in result.witnesses if evaluate(premise, w))


def nm_entails(pk: PenaltyKB, q: Query, oracle: bool = False) -> bool:
    """Does ``q.premise |~ q.conclusion`` hold under ``pk``?"""
    vocab = vocabulary(q.premise, q.conclusion)
    return all(evaluate(q.conclusion, w) for w in preferred_models(pk, q.premise, vocab, oracle))


def nm_entails_by_subtheories(pk: PenaltyKB, q: Query) -> bool:
    """Same relation, decided through the cheapest premise-consistent sub-theories."""
    for a in phi_preferred_subtheories(pk, q.premise):
        kept = conjunction(subtheory_formulas(pk, a) + (q.premise,))
        if not entails(kept, q.conclusion):
            return False
    return True


class ReductionMismatch(AssertionError):
    """The add-the-premise reduction disagreed with direct inference."""


def reduction_check(pk: PenaltyKB, q: Query) -> bool:
    """Return ``nm_entails(pk, q)`` after checking it against the reduction.

    The reduction: ``premise |~ conclusion`` iff ``premise |= conclusion`` or
    the base hardened with the premise entails the conclusion from ``T``.

    Raises:
        ValueError: if the premise is unsatisfiable.
        ReductionMismatch: if the two sides differ.
    """
    if not is_satisfiable(q.premise):
        raise ValueError("reduction requires a satisfiable premise")
    lhs = nm_entails(pk, q)
    rhs = entails(q.premise, q.conclusion) or nm_entails(
        add_hard(pk, q.premise), Query(TOP, q.conclusion)
    )
    if lhs != rhs:
        raise ReductionMismatch(f"{q}: direct={lhs} reduced={rhs}")
    return lhs


# --------------------------------------------------------------------------
# Postulate harness

POSTULATES = (
    "reflexivity",
    "left_logical_equivalence",
    "right_weakening",
    "and",
    "or",
    "cautious_monotony",
    "cut",
    "rational_monotony",
    "supraclassicality",
)


@dataclass(frozen=True)
class Counterexample:
    postulate: str
    formulas: tuple[Formula, ...]

    def __str__(self) -> str:
        return f"{self.postulate}: " + ", ".join(str(f) for f in self.formulas)


@dataclass
class PostulateReport:
    checked: dict[str, int] = field(default_factory=lambda: dict.fromkeys(POSTULATES, 0))
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return not self.counterexamples

    def failures(self, postulate: str) -> list[Counterexample]:
        return [c for c in self.counterexamples if c.postulate == postulate]

    def summary(self) -> str:
        lines = []
        for name in POSTULATES:
            bad = len(self.failures(name))
            status = "pass" if not bad else f"FAIL ({bad})"
            lines.append(f"{name}: {status} [{self.checked[name]} instances]")
        return "\n".join(lines)


class _Relation:
    """|~ over a fixed vocabulary, memoised by the premise's truth table."""

    def __init__(self, pk: PenaltyKB, vocab: Sequence[str]):
        self.pk = pk
        self.vocab = tuple(vocab)
        self._preferred: dict[int, int] = {}

    def table(self, f: Formula) -> int:
        return truth_table(f, self.vocab)

    def preferred(self, premise: Formula) -> int:
        key = self.table(premise)
        hit = self._preferred.get(key)
        if hit is None:
            hit = 0
            for w in preferred_models(self.pk, premise, self.vocab):
                hit |= 1 << w.restrict(self.vocab).index
            self._preferred[key] = hit
        return hit

    def __call__(self, premise: Formula, conclusion: Formula) -> bool:
        return self.preferred(premise) & ~self.table(conclusion) == 0

    def classical(self, f: Formula, g: Formula) -> bool:
        return self.table(f) & ~self.table(g) == 0


def check_postulates(
    pk: PenaltyKB, sample_formulas: Iterable[Union[Formula, str]]
) -> PostulateReport:
    """Test the rational-consequence postulates plus supraclassicality.

    Every postulate is instantiated with all pairs or triples drawn from the
    sample.  Left logical equivalence also pairs each sample formula with its
    double negation so that it is exercised even without equivalent samples.
    Rational monotony's negative premise is decided directly.
    """
    samples = [as_formula(f) for f in sample_formulas]
    vocab = make_vocabulary(set(pk.vocabulary) | vocabulary(*samples))
    nm = _Relation(pk, vocab)
    report = PostulateReport()

    def record(name: str, ok: bool, *formulas: Formula):
        report.checked[name] += 1
        if not ok:
            report.counterexamples.append(Counterexample(name, formulas))

    for a in samples:
        record("reflexivity", nm(a, a), a)

    for a, b in product(samples, repeat=2):
        record("supraclassicality", not nm.classical(a, b) or nm(a, b), a, b)
        variants = [Not(Not(a))] + [c for c in samples if nm.table(c) == nm.table(a)]
        for a2 in variants:
            record("left_logical_equivalence", not nm(a, b) or nm(a2, b), a, a2, b)

    for a, b, c in product(samples, repeat=3):
        ab, ac = nm(a, b), nm(a, c)
        record("right_weakening", not (nm.classical(b, c) and ab) or ac, a, b, c)
        record("and", not (ab and ac) or nm(a, And(b, c)), a, b, c)
        record("or", not (ac and nm(b, c)) or nm(Or(a, b), c), a, b, c)
        record("cautious_monotony", not (ab and ac) or nm(And(a, b), c), a, b, c)
        record("cut", not (nm(And(a, b), c) and ab) or ac, a, b, c)
        record(
            "rational_monotony",
            not (ac and not nm(a, Not(b))) or nm(And(a, b), c),
            a,
            b,
            c,
        )
    return report


def replay(pk: PenaltyKB, cex: Counterexample) -> bool:
    """Re-check a counterexample from scratch; True if it really fails."""

    def nm(p: Formula, c: Formula) -> bool:
        return nm_entails(pk, Query(p, c))

    f = cex.formulas
    name = cex.postulate
    if name == "reflexivity":
        return not nm(f[0], f[0])
    if name == "supraclassicality":
        return entails(f[0], f[1]) and not nm(f[0], f[1])
    if name == "left_logical_equivalence":
        a, a2, b = f
        return entails(a, a2) and entails(a2, a) and nm(a, b) and not nm(a2, b)
    a, b, c = f
    if name == "right_weakening":
        return entails(b, c) and nm(a, b) and not nm(a, c)
    if name == "and":
        return nm(a, b) and nm(a, c) and not nm(a, And(b, c))
    if name == "or":
        return nm(a, c) and nm(b, c) and not nm(Or(a, b), c)
    if name == "cautious_monotony":
        return nm(a, b) and nm(a, c) and not nm(And(a, b), c)
    if name == "cut":
        return nm(And(a, b), c) and nm(a, b) and not nm(a, c)
    if name == "rational_monotony":
        return nm(a, c) and not nm(a, Not(b)) and not nm(And(a, b), c)
    raise ValueError(f"unknown postulate {name!r}")
