import random

import pytest

from generators import random_formula, random_kb
from penaltylogic.inference import (
    POSTULATES,
    Counterexample,
    Query,
    check_postulates,
    nm_entails,
    nm_entails_by_subtheories,
    preferred_models,
    reduction_check,
    replay,
)
from penaltylogic.kb import parse_kb
from penaltylogic.logic import BOTTOM, TOP, format_interpretation, is_satisfiable, parse_formula


@pytest.mark.parametrize(
    "premise, conclusion, expected",
    [
        ("T", "!c", True),
        ("a", "c", True),
        ("a & b", "!c", True),
        ("a", "!c", False),
        ("T", "c", False),
    ],
)
def test_inference_triple(inference_kb, premise, conclusion, expected):
    q = Query.of(premise, conclusion)
    assert nm_entails(inference_kb, q) is expected
    assert nm_entails(inference_kb, q, oracle=True) is expected
    assert nm_entails_by_subtheories(inference_kb, q) is expected
    assert reduction_check(inference_kb, q) is expected


def test_nonmonotonic(inference_kb):
    # adding b to the premise a withdraws the conclusion c
    assert nm_entails(inference_kb, Query.of("a", "c"))
    assert not nm_entails(inference_kb, Query.of("a & b", "c"))


def test_preferred_models(inference_kb, pk1):
    assert [format_interpretation(w) for w in preferred_models(pk1, TOP)] == ["a b !c"]
    assert preferred_models(pk1, BOTTOM) == ()
    # every model of !a is infinitely costly: all of them are preferred
    assert len(preferred_models(pk1, parse_formula("!a"))) == 4


def test_infinite_premise_collapses_to_classical(pk1):
    assert nm_entails(pk1, Query.of("!a", "!a | b"))
    assert not nm_entails(pk1, Query.of("!a", "b"))
    assert nm_entails_by_subtheories(pk1, Query.of("!a", "!a | b"))
    assert not nm_entails_by_subtheories(pk1, Query.of("!a", "b"))
    assert not reduction_check(pk1, Query.of("!a", "b"))


def test_unsatisfiable_premise():
    pk = parse_kb("1 a\n")
    assert nm_entails(pk, Query.of("F", "b"))
    with pytest.raises(ValueError):
        reduction_check(pk, Query.of("a & !a", "b"))


def _queries(seed, n=200):
    rng = random.Random(seed)
    for _ in range(n):
        pk = random_kb(rng, max_items=6, max_atoms=4)
        atoms = pk.vocabulary or ("a",)
        yield pk, Query(random_formula(rng, atoms, 2), random_formula(rng, atoms, 2))


def test_model_and_subtheory_routes_agree():
    for pk, q in _queries(51):
        assert nm_entails(pk, q) == nm_entails_by_subtheories(pk, q)


def test_reduction_holds():
    for pk, q in _queries(52):
        if is_satisfiable(q.premise):
            reduction_check(pk, q)


def test_oracle_parity():
    for pk, q in _queries(53, 100):
        assert nm_entails(pk, q) == nm_entails(pk, q, oracle=True)


def test_postulates_on_fixed_kb(inference_kb):
    samples = ["T", "a", "b", "c", "a & b", "!c"]
    report = check_postulates(inference_kb, samples)
    assert report.all_passed, report.summary()
    assert set(report.checked) == set(POSTULATES)
    assert all(n > 0 for n in report.checked.values())


def test_postulates_on_random_kbs():
    rng = random.Random(54)
    for _ in range(40):
        pk = random_kb(rng, max_items=5, max_atoms=4, min_items=1)
        samples = [random_formula(rng, "abcd", 2) for _ in range(5)]
        report = check_postulates(pk, samples)
        assert report.all_passed, [str(c) for c in report.counterexamples]


def test_replay_rejects_non_failures(inference_kb):
    # a |~ c holds but a |~ !b does not, so cautious monotony is vacuous here
    bogus = Counterexample("cautious_monotony", tuple(map(parse_formula, ("a", "c", "!b"))))
    assert replay(inference_kb, bogus) is False
    with pytest.raises(ValueError):
        replay(inference_kb, Counterexample("transitivity", (TOP, TOP, TOP)))


def test_report_summary_lists_every_postulate(inference_kb):
    text = check_postulates(inference_kb, ["a", "b"]).summary()
    for name in POSTULATES:
        assert name in text
