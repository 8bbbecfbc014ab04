"""Dempster-Shafer counterpart of penalty knowledge bases.

Each item ``(f, a)`` becomes the simple support function
``m(f) = 1 - exp(-a)``, ``m(T) = exp(-a)``.  Their unnormalised Dempster
combination has contour ``pl(w) = exp(-k(w))``, so interpretation costs are
negative log-contours.  Formula costs are recovered as the exponent of the
leading term of the plausibility when the masses are replaced by powers of an
infinitesimal; that side is computed symbolically in
:func:`infinitesimal_plausibility`.

Masses are floats by default.  Fractions work too, and then mass is conserved
exactly by :func:`combine`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from penaltylogic.errors import CapExceededError
from penaltylogic.kb import (
    INF,
    Cost,
    PenaltyKB,
    as_penalty,
    format_cost,
    interpretation_cost,
    item_tables,
)
from penaltylogic.logic import (
    BOTTOM,
    TOP,
    And,
    Formula,
    Interpretation,
    as_formula,
    canonicalize,
    check_cap,
    enumerate_interpretations,
    evaluate,
    is_consistent,
    is_satisfiable,
    make_vocabulary,
    to_text,
    truth_table,
    vocabulary,
)
from penaltylogic.solver import MAX_ITEMS

Mass = Union[float, Fraction]

MASS_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class MassFunction:
    """Finitely many focal formulas with positive masses summing to one.

    Keys are stored in canonical form and merged when they coincide.  ``F``
    may be focal: conflict is kept, never renormalised away.
    """

    focal: Mapping[Formula, Mass]

    def __post_init__(self):
        merged: dict[Formula, Mass] = {}
        for f, m in self.focal.items():
            if m < 0:
                raise ValueError(f"negative mass {m} on {f}")
            if m == 0:
                continue
            key = canonicalize(as_formula(f))
            merged[key] = merged.get(key, 0) + m
        s = sum(merged.values())
        if abs(s - 1) > MASS_TOLERANCE:
            raise ValueError(f"masses sum to {s}, not 1")
        ordered = dict(sorted(merged.items(), key=lambda kv: (len(to_text(kv[0])), to_text(kv[0]))))
        object.__setattr__(self, "focal", MappingProxyType(ordered))

    @classmethod
    def vacuous(cls) -> MassFunction:
        return cls({TOP: 1})

    def __getitem__(self, f: Union[Formula, str]) -> Mass:
        return self.focal.get(canonicalize(as_formula(f)), 0)

    def __len__(self) -> int:
        return len(self.focal)

    def total(self) -> Mass:
        return sum(self.focal.values())

    def items(self):
        return self.focal.items()

    def __repr__(self) -> str:
        body = ", ".join(f"{to_text(f)}: {m!r}" for f, m in self.focal.items())
        return f"MassFunction({{{body}}})"


def simple_support(f: Union[Formula, str], penalty) -> MassFunction:
    """Simple support function for one weighted formula.

    ``penalty`` may be an exact penalty, ``inf``, or any positive float such
    as ``math.log(2)``.  ``exp(-inf)`` is taken as 0.
    """
    f = as_formula(f)
    if isinstance(penalty, float) and math.isfinite(penalty):
        if penalty <= 0:
            raise ValueError("penalty must be strictly positive")
        a = penalty
    else:
        p = as_penalty(penalty)
        a = INF if p == INF else float(p)
    if a == INF:
        return MassFunction({f: 1.0})
    focal = {f: -math.expm1(-a)}
    focal[TOP] = focal.get(TOP, 0) + math.exp(-a)  # f may itself be T
    return MassFunction(focal)


def _conjoin(f: Formula, g: Formula) -> Formula:
    if f == TOP:
        return g
    if g == TOP:
        return f
    h = canonicalize(And(f, g))
    return h if is_satisfiable(h) else BOTTOM


def _merge_equivalent(focal: dict[Formula, Mass]) -> dict[Formula, Mass]:
    vocab = make_vocabulary(vocabulary(*focal))
    if len(vocab) > 16:
        return focal
    groups: dict[int, list] = {}
    for f in sorted(focal, key=lambda g: (len(to_text(g)), to_text(g))):
        t = truth_table(f, vocab)
        if t in groups:
            groups[t][1] += focal[f]
        else:
            groups[t] = [f, focal[f]]
    return {f: m for f, m in groups.values()}


def combine(m1: MassFunction, m2: MassFunction, semantic: bool = False) -> MassFunction:
    """Unnormalised Dempster combination.

    Every pair of focal elements sends the product of their masses to their
    conjunction; inconsistent conjunctions go to ``F``.  With ``semantic`` the
    resulting focal elements are also merged up to logical equivalence.
    """
    out: dict[Formula, Mass] = {}
    for f, a in m1.items():
        for g, b in m2.items():
            key = _conjoin(f, g)
            out[key] = out.get(key, 0) + a * b
    if semantic:
        out = _merge_equivalent(out)
    return MassFunction(out)


def kb_mass(pk: PenaltyKB, cap: int = MAX_ITEMS) -> MassFunction:
    """Combination of the simple support functions of all items of ``pk``."""
    if len(pk) > cap:
        raise CapExceededError(f"{len(pk)} items; combination cap is {cap}")
    m = MassFunction.vacuous()
    for it in pk.items:
        m = combine(m, simple_support(it.formula, it.penalty), semantic=True)
    return m


def contour(m: MassFunction, w: Interpretation) -> Mass:
    """Plausibility of the singleton ``{w}``."""
    values = w.as_dict()
    return sum((mass for f, mass in m.items() if evaluate(f, values)), 0)


def plausibility(m: MassFunction, f: Union[Formula, str]) -> Mass:
    """Total mass of the focal elements consistent with ``f``."""
    f = as_formula(f)
    return sum((mass for g, mass in m.items() if is_consistent([g, f])), 0)


def contour_deviation(cost: Cost, pl: Mass) -> float:
    """``|k + ln pl|`` with an infinite cost and zero contour counting as agreement."""
    if cost == INF:
        return 0.0 if pl == 0 else math.inf
    if pl <= 0:
        return math.inf
    return abs(float(cost) + math.log(pl))


def check_contour_identity(pk: PenaltyKB) -> float:
    """Largest ``|k(w) + ln pl(w)|`` over the interpretations of ``pk``."""
    m = kb_mass(pk)
    worst = 0.0
    for w in enumerate_interpretations(pk.vocabulary):
        worst = max(worst, contour_deviation(interpretation_cost(pk, w), contour(m, w)))
    return worst


@dataclass(frozen=True)
class OrderOfMagnitude:
    """Leading term ``multiplicity * eps**exponent`` of an infinitesimal plausibility.

    A term ``eps**inf`` is zero, so an infinite exponent has multiplicity 0.
    """

    exponent: Cost
    multiplicity: int

    def __str__(self) -> str:
        return f"exponent {format_cost(self.exponent)} multiplicity {self.multiplicity}"


def consistent_index_subsets(pk: PenaltyKB, f: Union[Formula, str]) -> Iterable[tuple[frozenset, Cost]]:
    """Index subsets ``I`` with the conjunction of ``I``'s formulas and ``f`` consistent.

    Yields ``(I, excluded_penalty)``; indices are positions in ``pk.items``.
    """
    f = as_formula(f)
    vocab = make_vocabulary(set(pk.vocabulary) | vocabulary(f))
    check_cap(vocab)
    tables = item_tables(pk, vocab)
    penalties = pk.penalties
    n = len(tables)
    start = truth_table(f, vocab)

    def visit(i: int, table: int, kept: tuple, excluded: Cost):
        if i == n:
            yield frozenset(kept), excluded
            return
        narrowed = table & tables[i]
        if narrowed:
            yield from visit(i + 1, narrowed, kept + (i,), excluded)
        yield from visit(i + 1, table, kept, excluded + penalties[i])

    if start:
        yield from visit(0, start, (), Fraction(0))


def infinitesimal_plausibility(
    pk: PenaltyKB, f: Union[Formula, str], cap: int = MAX_ITEMS
) -> OrderOfMagnitude:
    """Order of magnitude of ``Pl(f)`` when item ``i`` carries mass ``eps**a_i`` on ``T``.

    The exponent is the least excluded-penalty sum over the index subsets
    consistent with ``f``; the multiplicity counts the subsets reaching it.
    """
    if len(pk) > cap:
        raise CapExceededError(f"{len(pk)} items; subset enumeration cap is {cap}")
    best: Cost = INF
    count = 0
    for _, excluded in consistent_index_subsets(pk, f):
        if excluded < best:
            best, count = excluded, 1
        elif excluded == best:
            count += 1
    if best == INF:
        count = 0
    return OrderOfMagnitude(best, count)


def infinitesimal_plausibility_value(pk: PenaltyKB, f: Union[Formula, str], eps: Fraction) -> Fraction:
    """Exact ``Pl_eps(f)`` for a concrete ``eps``; integral penalties only.

    Used to check the symbolic order of magnitude numerically.
    """
    penalties = pk.penalties
    if any(a != INF and Fraction(a).denominator != 1 for a in penalties):
        raise ValueError("exact evaluation needs integral penalties")
    total = Fraction(0)
    for kept, _ in consistent_index_subsets(pk, f):
        term = Fraction(1)
        for i, a in enumerate(penalties):
            small = Fraction(0) if a == INF else eps ** int(a)
            term *= (1 - small) if i in kept else small
        total += term
    return total
