"""Minimum-cost interpretation search and preferred sub-theories.

:func:`min_cost_interpretations` is a depth-first branch-and-bound in the
style of Davis-Putnam: variables are assigned one at a time, every item whose
Kleene value becomes false adds its penalty to the lower bound, and a branch
is cut as soon as the bound cannot beat (or, when collecting every witness,
tie) the incumbent.  :func:`brute_force_min_cost` enumerates the whole space
and serves as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from penaltylogic.errors import CapExceededError
from penaltylogic.kb import (
    INF,
    Cost,
    PenaltyKB,
    SubTheory,
    add_hard,
    hard_core,
    item_tables,
)
from penaltylogic.logic import (
    MAX_VARIABLES,
    TOP,
    Formula,
    Interpretation,
    as_formula,
    check_cap,
    enumerate_interpretations,
    evaluate,
    full_table,
    is_consistent,
    kleene,
    make_vocabulary,
    truth_table,
    vocabulary,
)

#: Largest knowledge base whose subsets are enumerated.
MAX_ITEMS = 20

WITNESS_MODES = ("one", "all")
VARIABLE_ORDERS = ("frequency", "lexicographic")


@dataclass(frozen=True)
class SearchConfig:
    witness_mode: str = "all"
    variable_order: str = "frequency"
    max_variables: int = MAX_VARIABLES

    def __post_init__(self):
        if self.witness_mode not in WITNESS_MODES:
            raise ValueError(f"witness_mode must be one of {WITNESS_MODES}")
        if self.variable_order not in VARIABLE_ORDERS:
            raise ValueError(f"variable_order must be one of {VARIABLE_ORDERS}")


@dataclass(frozen=True)
class SolveResult:
    optimum: Cost
    witnesses: tuple[Interpretation, ...]
    nodes_explored: int = field(default=0, compare=False)

    @property
    def witness(self) -> Interpretation:
        return self.witnesses[0]


def _solve_vocab(pk: PenaltyKB, extra: Iterable[str], cap: int) -> tuple[str, ...]:
    vocab = make_vocabulary(set(pk.vocabulary).union(extra))
    check_cap(vocab, cap)
    return vocab


def _variable_order(pk: PenaltyKB, vocab: Sequence[str], how: str) -> list[str]:
    if how == "lexicographic":
        return list(vocab)
    counts = {a: 0 for a in vocab}
    for f in pk.formulas:
        for a in vocabulary(f):
            counts[a] += 1
    return sorted(vocab, key=lambda a: (-counts[a], a))


def _lex_can_improve(values: dict, vocab: Sequence[str], incumbent: Interpretation) -> bool:
    """Can some completion of ``values`` be lexicographically below ``incumbent``?"""
    for a, best in zip(vocab, incumbent.values):
        v = values.get(a)
        if v is None:
            if best:
                return True  # set it false here
            continue  # match the incumbent's false
        if v != best:
            return v < best
    return False


def min_cost_interpretations(
    pk: PenaltyKB,
    config: Optional[SearchConfig] = None,
    vocabulary: Iterable[str] = (),
    observer: Optional[Callable[[dict, Cost], None]] = None,
) -> SolveResult:
    """Interpretations of minimal cost, found by branch-and-bound.

    Args:
        pk: the knowledge base.
        config: witness mode, variable order and variable cap.
        vocabulary: extra atoms to include in the search space.
        observer: called as ``observer(partial_values, lower_bound)`` at every
            search node; diagnostics only.

    Returns:
        The optimum and its witnesses in ascending interpretation order.  In
        ``one`` mode the single witness is the lexicographically smallest.

    Raises:
        CapExceededError: if the vocabulary exceeds ``config.max_variables``.
    """
    config = config or SearchConfig()
    vocab = _solve_vocab(pk, vocabulary, config.max_variables)
    one = config.witness_mode == "one"
    formulas = pk.formulas
    penalties = pk.penalties

    # An inconsistent hard core makes every interpretation infinitely costly.
    if not is_consistent(hard_core(pk)):
        if one:
            return SolveResult(INF, (Interpretation.from_index(vocab, 0),), 0)
        return SolveResult(INF, tuple(enumerate_interpretations(vocab)), 0)

    order = _variable_order(pk, vocab, config.variable_order)
    values: dict[str, bool] = {}
    best: list = [INF]
    found: list[Interpretation] = []
    nodes = 0

    def complete(free: Sequence[str]):
        if one:
            yield {**values, **{a: False for a in free}}
            return
        for i in range(1 << len(free)):
            extra = {a: bool((i >> (len(free) - 1 - j)) & 1) for j, a in enumerate(free)}
            yield {**values, **extra}

    def leaf(depth: int, bound: Cost):
        for full in complete(order[depth:]):
            w = Interpretation.from_mapping(full, vocab)
            if bound < best[0]:
                best[0] = bound
                found[:] = [w]
            elif one:
                if w.index < found[0].index:
                    found[0] = w
            else:
                found.append(w)

    def search(depth: int, pending: list[int], bound: Cost):
        nonlocal nodes
        nodes += 1
        if observer is not None:
            observer(dict(values), bound)
        if bound == INF:
            return  # a hard item is violated; the optimum is finite
        if bound > best[0]:
            return
        if bound == best[0] and one and not _lex_can_improve(values, vocab, found[0]):
            return
        if not pending or depth == len(order):
            leaf(depth, bound)
            return
        var = order[depth]
        for val in (False, True):
            values[var] = val
            still = []
            b = bound
            for i in pending:
                r = kleene(formulas[i], values)
                if r is None:
                    still.append(i)
                elif r is False:
                    b = b + penalties[i]
            search(depth + 1, still, b)
        del values[var]

    pending, bound = [], Fraction(0)
    for i, f in enumerate(formulas):
        r = kleene(f, values)
        if r is None:
            pending.append(i)
        elif r is False:
            bound = bound + penalties[i]
    search(0, pending, bound)
    witnesses = sorted(found, key=lambda w: w.index)
    return SolveResult(best[0], tuple(witnesses), nodes)


def brute_force_min_cost(
    pk: PenaltyKB,
    vocabulary: Iterable[str] = (),
    witness_mode: str = "all",
    cap: int = MAX_VARIABLES,
) -> SolveResult:
    """Exhaustive oracle with the same contract as :func:`min_cost_interpretations`."""
    vocab = _solve_vocab(pk, vocabulary, cap)
    best: Cost = INF
    found: list[Interpretation] = []
    count = 0
    for w in enumerate_interpretations(vocab, cap):
        count += 1
        values = w.as_dict()
        cost: Cost = Fraction(0)
        for it in pk.items:
            if not evaluate(it.formula, values):
                cost = cost + it.penalty
        if not found or cost < best:
            best, found = cost, [w]
        elif cost == best:
            found.append(w)
    if witness_mode == "one":
        found = found[:1]
    return SolveResult(best, tuple(found), count)


def consistency_cost(
    pk: PenaltyKB, f: Union[Formula, str], oracle: bool = False
) -> Cost:
    """Minimal interpretation cost among the models of ``f``; ``INF`` if none.

    Computed by solving ``pk`` with ``f`` added as an inviolable item.
    """
    f = as_formula(f)
    hardened = add_hard(pk, f)
    if oracle:
        return brute_force_min_cost(hardened, witness_mode="one").optimum
    return min_cost_interpretations(hardened, SearchConfig(witness_mode="one")).optimum


# --------------------------------------------------------------------------
# Sub-theories


def _check_items(pk: PenaltyKB, cap: int) -> None:
    if len(pk) > cap:
        raise CapExceededError(f"{len(pk)} items; subset enumeration cap is {cap}")


def _cheapest_consistent_subsets(
    pk: PenaltyKB, start: int, tables: list[int]
) -> tuple[Cost, list[SubTheory]]:
    """All subsets consistent with ``start`` whose excluded penalty is minimal.

    Consistency is anti-monotone, so an inconsistent partial subset is never
    extended; an exclusion sum already above the best known cost is cut.
    """
    tags = pk.tags
    penalties = pk.penalties
    n = len(tags)
    best: list = [INF]
    results: list[SubTheory] = []
    kept: list[int] = []

    def visit(i: int, table: int, excluded: Cost):
        if excluded > best[0]:
            return
        if i == n:
            if excluded < best[0]:
                best[0] = excluded
                results.clear()
            results.append(frozenset(kept))
            return
        narrowed = table & tables[i]
        if narrowed:
            kept.append(tags[i])
            visit(i + 1, narrowed, excluded)
            kept.pop()
        visit(i + 1, table, excluded + penalties[i])

    if start:
        visit(0, start, 0)
    return best[0], results


def _sorted_subsets(subsets: Iterable[SubTheory]) -> tuple[SubTheory, ...]:
    return tuple(sorted(subsets, key=lambda s: (len(s), sorted(s))))


def phi_preferred_subtheories(
    pk: PenaltyKB, f: Union[Formula, str], cap: int = MAX_ITEMS
) -> tuple[SubTheory, ...]:
    """Cheapest ``f``-consistent subsets of ``pk`` (as tag sets).

    When no ``f``-consistent subset has finite cost, all of them tie and all
    are returned.  An unsatisfiable ``f`` yields no subset.
    """
    f = as_formula(f)
    _check_items(pk, cap)
    vocab = make_vocabulary(set(pk.vocabulary) | vocabulary(f))
    check_cap(vocab)
    _, subsets = _cheapest_consistent_subsets(pk, truth_table(f, vocab), item_tables(pk, vocab))
    return _sorted_subsets(subsets)


def preferred_subtheories(pk: PenaltyKB, cap: int = MAX_ITEMS) -> tuple[SubTheory, ...]:
    """Consistent subsets of ``pk`` not beaten by any cheaper consistent subset."""
    return phi_preferred_subtheories(pk, TOP, cap)


def consistent_subtheories(pk: PenaltyKB, cap: int = MAX_ITEMS) -> tuple[SubTheory, ...]:
    """Every consistent subset of ``pk``; exhaustive, for checks at desk scale."""
    _check_items(pk, cap)
    vocab = pk.vocabulary
    tables = item_tables(pk, vocab)
    out: list[SubTheory] = []
    tags = pk.tags

    def visit(i: int, table: int, kept: tuple):
        if i == len(tags):
            out.append(frozenset(kept))
            return
        narrowed = table & tables[i]
        if narrowed:
            visit(i + 1, narrowed, kept + (tags[i],))
        visit(i + 1, table, kept)

    visit(0, full_table(len(vocab)), ())
    return _sorted_subsets(out)
