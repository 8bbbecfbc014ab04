"""Penalty knowledge bases and their cost functions.

Penalties and costs are exact: finite values are :class:`fractions.Fraction`
and the infinite penalty is ``math.inf``.  Python orders and adds the two
correctly (``Fraction(5) < inf``, ``Fraction(5) + inf == inf``), so sums of
penalties never go through floating point unless an infinite term is present.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from penaltylogic.errors import FormulaSyntaxError, VocabularyError
from penaltylogic.logic import (
    Formula,
    Interpretation,
    canonicalize,
    check_cap,
    conjunction,
    enumerate_interpretations,
    evaluate,
    full_table,
    make_vocabulary,
    parse_formula,
    to_text,
    truth_table,
    vocabulary,
)

INF = math.inf

#: A strictly positive rational or ``INF``.
Penalty = Union[Fraction, float]
#: A nonnegative rational or ``INF``.
Cost = Union[Fraction, float]

PenaltyLike = Union[Fraction, int, float, str]


def as_penalty(value: PenaltyLike) -> Penalty:
    """Convert ``value`` into an exact penalty.

    Strings are read as decimal literals (``"2.5"`` is exactly 5/2) or
    ``"inf"``.  Floats are read through their shortest decimal repr.

    Raises:
        ValueError: if the value is zero, negative or not a number.
    """
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        try:
            p = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"invalid penalty {value!r}") from None
    elif isinstance(value, float):
        if math.isnan(value):
            raise ValueError("penalty is NaN")
        if value == INF:
            return INF
        if math.isinf(value):
            raise ValueError(f"penalty must be positive, got {value}")
        p = Fraction(repr(value))
    elif isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        p = Fraction(value)
    else:
        raise ValueError(f"invalid penalty {value!r}")
    if p <= 0:
        raise ValueError(f"penalty must be strictly positive, got {value!r}")
    return p


def is_infinite(c: Cost) -> bool:
    return c == INF


def format_cost(c: Cost) -> str:
    """``inf``, an integer, or ``p/q``."""
    if c == INF:
        return "inf"
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def total(costs: Iterable[Cost]) -> Cost:
    """Sum of costs; the empty sum is 0."""
    s: Cost = Fraction(0)
    for c in costs:
        s = s + c
    return s


@dataclass(frozen=True)
class WeightedFormula:
    formula: Formula
    penalty: Penalty
    tag: int

    def __post_init__(self):
        object.__setattr__(self, "penalty", as_penalty(self.penalty))


@dataclass(frozen=True)
class PenaltyKB:
    """A finite multiset of weighted formulas.

    Identical ``(formula, penalty)`` pairs may repeat; each occurrence has its
    own tag and counts separately in every cost.
    """

    items: tuple[WeightedFormula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        tags = [it.tag for it in self.items]
        if len(set(tags)) != len(tags):
            raise ValueError("duplicate tags in penalty knowledge base")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Union[Formula, str], PenaltyLike]]) -> PenaltyKB:
        items = []
        for tag, (f, p) in enumerate(pairs):
            f = parse_formula(f) if isinstance(f, str) else f
            items.append(WeightedFormula(f, as_penalty(p), tag))
        return cls(tuple(items))

    @cached_property
    def vocabulary(self) -> tuple[str, ...]:
        return make_vocabulary(vocabulary(*self.formulas))

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return tuple(it.formula for it in self.items)

    @property
    def penalties(self) -> tuple[Penalty, ...]:
        return tuple(it.penalty for it in self.items)

    @property
    def tags(self) -> tuple[int, ...]:
        return tuple(it.tag for it in self.items)

    def item(self, tag: int) -> WeightedFormula:
        for it in self.items:
            if it.tag == tag:
                return it
        raise KeyError(tag)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[WeightedFormula]:
        return iter(self.items)

    def __str__(self) -> str:
        return format_kb(self)


#: A sub-theory is identified by the tags of the items it keeps.
SubTheory = frozenset


def _union_vocab(*parts: Iterable[str]) -> tuple[str, ...]:
    names: set[str] = set()
    for p in parts:
        names.update(p)
    return make_vocabulary(names)


def item_tables(pk: PenaltyKB, vocab: Sequence[str]) -> list[int]:
    """Truth table of every item formula over ``vocab``."""
    return [truth_table(f, vocab) for f in pk.formulas]


def cost_table(pk: PenaltyKB, vocab: Sequence[str]) -> list[Cost]:
    """``k_PK`` for every interpretation of ``vocab``, indexed as in :mod:`logic`."""
    vocab = tuple(vocab)
    check_cap(vocab)
    tables = item_tables(pk, vocab)
    costs: list[Cost] = []
    for i in range(1 << len(vocab)):
        costs.append(total(p for t, p in zip(tables, pk.penalties) if not (t >> i) & 1))
    return costs


# --------------------------------------------------------------------------
# Costs


def interpretation_cost(pk: PenaltyKB, w: Interpretation) -> Cost:
    """Sum of the penalties of the items that ``w`` falsifies."""
    missing = set(pk.vocabulary) - set(w.vocabulary)
    if missing:
        raise VocabularyError(f"interpretation does not cover atoms {sorted(missing)}")
    values = w.as_dict()
    return total(it.penalty for it in pk.items if not evaluate(it.formula, values))


def _check_tags(pk: PenaltyKB, a: Iterable[int]) -> frozenset[int]:
    a = frozenset(a)
    foreign = a - set(pk.tags)
    if foreign:
        raise ValueError(f"tags {sorted(foreign)} do not belong to the knowledge base")
    return a


def subtheory_cost(pk: PenaltyKB, a: Iterable[int]) -> Cost:
    """Sum of the penalties of the items *not* kept in ``a``."""
    a = _check_tags(pk, a)
    return total(it.penalty for it in pk.items if it.tag not in a)


def satisfied_subtheory(pk: PenaltyKB, w: Interpretation) -> SubTheory:
    """Tags of the items satisfied by ``w``."""
    values = w.as_dict()
    return frozenset(it.tag for it in pk.items if evaluate(it.formula, values))


def subtheory_formulas(pk: PenaltyKB, a: Iterable[int]) -> tuple[Formula, ...]:
    a = _check_tags(pk, a)
    return tuple(it.formula for it in pk.items if it.tag in a)


class Preference(enum.Enum):
    A_PREFERRED = "a_preferred"
    B_PREFERRED = "b_preferred"
    TIE = "tie"


def prefer(pk: PenaltyKB, a: Iterable[int], b: Iterable[int]) -> Preference:
    """Compare two subsets of ``pk`` by cost; the cheaper one is preferred."""
    ca, cb = subtheory_cost(pk, a), subtheory_cost(pk, b)
    if cb < ca:
        return Preference.B_PREFERRED
    if ca < cb:
        return Preference.A_PREFERRED
    return Preference.TIE


# --------------------------------------------------------------------------
# Transformations


def add_hard(pk: PenaltyKB, f: Union[Formula, str]) -> PenaltyKB:
    """``pk`` plus one occurrence of ``f`` with infinite penalty."""
    f = parse_formula(f) if isinstance(f, str) else f
    tag = max(pk.tags, default=-1) + 1
    return PenaltyKB(pk.items + (WeightedFormula(f, INF, tag),))


def add_item(pk: PenaltyKB, f: Union[Formula, str], penalty: PenaltyLike) -> PenaltyKB:
    f = parse_formula(f) if isinstance(f, str) else f
    tag = max(pk.tags, default=-1) + 1
    return PenaltyKB(pk.items + (WeightedFormula(f, as_penalty(penalty), tag),))


def hard_core(pk: PenaltyKB) -> frozenset[Formula]:
    """Formulas carrying an infinite penalty."""
    return frozenset(it.formula for it in pk.items if it.penalty == INF)


def normalize(pk: PenaltyKB, semantic: bool = False) -> PenaltyKB:
    """Merge repeated formulas into one item carrying the summed penalty.

    By default formulas are grouped when their canonical forms coincide.  With
    ``semantic=True`` they are grouped by logical equivalence (truth tables
    over the knowledge base vocabulary).  Groups keep the position of their
    first member; the merged formula is that member's canonical form.
    """
    groups: dict[object, list] = {}
    if semantic:
        vocab = pk.vocabulary
        check_cap(vocab)
    for it in pk.items:
        canon = canonicalize(it.formula)
        key = truth_table(it.formula, vocab) if semantic else canon
        if key in groups:
            groups[key][1] = groups[key][1] + it.penalty
        else:
            groups[key] = [canon, it.penalty]
    return PenaltyKB.from_pairs((f, p) for f, p in groups.values())


def semantically_equivalent(pk: PenaltyKB, pk2: PenaltyKB) -> bool:
    """True iff both bases induce the same interpretation cost function."""
    vocab = _union_vocab(pk.vocabulary, pk2.vocabulary)
    return cost_table(pk, vocab) == cost_table(pk2, vocab)


def less_expensive(pk: PenaltyKB, pk2: PenaltyKB) -> bool:
    """True iff ``k_pk(w) <= k_pk2(w)`` for every interpretation ``w``."""
    vocab = _union_vocab(pk.vocabulary, pk2.vocabulary)
    return all(c1 <= c2 for c1, c2 in zip(cost_table(pk, vocab), cost_table(pk2, vocab)))


def conjunction_of(pk: PenaltyKB) -> Formula:
    return conjunction(pk.formulas)


def kb_is_consistent(pk: PenaltyKB) -> bool:
    vocab = pk.vocabulary
    table = full_table(len(vocab))
    for t in item_tables(pk, vocab):
        table &= t
    return table != 0


def interpretations(pk: PenaltyKB, extra: Iterable[str] = ()) -> Iterator[Interpretation]:
    return enumerate_interpretations(_union_vocab(pk.vocabulary, extra))


# --------------------------------------------------------------------------
# Text format


def parse_kb(text: str) -> PenaltyKB:
    """Read the line format ``<penalty> <formula>``.

    ``#`` starts a comment and blank lines are skipped.  Repeated lines are
    separate occurrences.

    >>> str(parse_kb("inf a\\n10 b | c"))
    'inf a\\n10 b | c\\n'
    """
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        offset = len(line) - len(line.lstrip())
        head, _, rest = stripped.partition(" ")
        if not rest.strip():
            raise FormulaSyntaxError("expected '<penalty> <formula>'", lineno, offset + 1)
        try:
            penalty = as_penalty(head)
        except ValueError as exc:
            raise FormulaSyntaxError(str(exc), lineno, offset + 1) from None
        try:
            formula = parse_formula(rest)
        except FormulaSyntaxError as exc:
            column = offset + len(head) + 1 + (len(rest) - len(rest.lstrip())) + exc.column
            raise FormulaSyntaxError(exc.message, lineno, column) from None
        pairs.append((formula, penalty))
    return PenaltyKB.from_pairs(pairs)


def format_kb(pk: PenaltyKB) -> str:
    return "".join(f"{format_cost(it.penalty)} {to_text(it.formula)}\n" for it in pk.items)


def read_kb(path: str) -> PenaltyKB:
    with open(path, encoding="utf-8") as fh:
        return parse_kb(fh.read())
