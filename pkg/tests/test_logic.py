import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import formulas, random_formula
from penaltylogic.errors import CapExceededError, FormulaSyntaxError, VocabularyError
from penaltylogic.logic import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Iff,
    Implies,
    Interpretation,
    Not,
    Or,
    PartialAssignment,
    canonicalize,
    check_cap,
    clause_literals,
    entails,
    enumerate_interpretations,
    equivalent,
    evaluate,
    format_interpretation,
    is_consistent,
    is_satisfiable,
    make_vocabulary,
    models,
    parse_formula,
    parse_interpretation,
    partial_evaluate,
    to_text,
    truth_table,
    vocabulary,
)

a, b, c = Atom("a"), Atom("b"), Atom("c")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("a", a),
        ("!a", Not(a)),
        ("a & b | c", Or(And(a, b), c)),
        ("a | b & c", Or(a, And(b, c))),
        ("a -> b -> c", Implies(a, Implies(b, c))),
        ("a <-> b <-> c", Iff(Iff(a, b), c)),
        ("(a | b) & !c", And(Or(a, b), Not(c))),
        ("T", TOP),
        ("F", BOTTOM),
        ("!!a", Not(Not(a))),
        ("a -> b | c", Implies(a, Or(b, c))),
    ],
)
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize(
    "text, line, column",
    [("a &", 1, 4), ("(a | b", 1, 7), ("a b", 1, 3), ("a\n& )", 2, 3), ("", 1, 1), ("a $ b", 1, 3)],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_reserved_atom_names():
    with pytest.raises(ValueError):
        Atom("T")
    with pytest.raises(ValueError):
        Atom("1x")


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) == f


@given(formulas())
def test_canonicalize_preserves_meaning(f):
    g = canonicalize(f)
    assert equivalent(f, g)
    assert canonicalize(g) == g


def test_canonicalize_orders_and_dedupes():
    assert canonicalize(parse_formula("b & a & b")) == canonicalize(parse_formula("a & b"))
    assert canonicalize(parse_formula("a & T")) == a
    assert canonicalize(parse_formula("a | T")) == TOP
    assert canonicalize(parse_formula("!!a")) == a


def test_vocabulary_is_sorted_and_unique():
    f = parse_formula("c & (a | c) -> b")
    assert vocabulary(f) == {"a", "b", "c"}
    assert make_vocabulary(vocabulary(f)) == ("a", "b", "c")
    assert vocabulary(TOP) == frozenset()


def test_enumeration_is_binary_counting():
    rows = [format_interpretation(w) for w in enumerate_interpretations(("a", "b"))]
    assert rows == ["!a !b", "!a b", "a !b", "a b"]
    assert [w.index for w in enumerate_interpretations(("a", "b", "c"))] == list(range(8))


def test_cap_enforced():
    with pytest.raises(CapExceededError):
        check_cap([f"x{i}" for i in range(25)])
    with pytest.raises(CapExceededError):
        list(enumerate_interpretations(("a", "b", "c"), cap=2))


def test_interpretation_round_trips():
    w = parse_interpretation("a !b c")
    assert w.as_dict() == {"a": True, "b": False, "c": True}
    assert Interpretation.from_index(w.vocabulary, w.index) == w
    assert format_interpretation(w) == "a !b c"
    assert w.true_atoms() == {"a", "c"}
    with pytest.raises(VocabularyError):
        w["z"]


def test_evaluate_requires_vocabulary():
    with pytest.raises(VocabularyError):
        evaluate(parse_formula("a & z"), {"a": True})


@settings(max_examples=200)
@given(formulas(), st.dictionaries(st.sampled_from("abcd"), st.booleans()))
def test_partial_evaluation_is_sound(f, assigned):
    vocab = make_vocabulary(set("abcd"))
    p = PartialAssignment.from_mapping(vocab, assigned)
    verdict = partial_evaluate(f, p)
    values = {evaluate(f, w) for w in p.completions()}
    if verdict is None:
        assert len(values) >= 1
    else:
        assert values == {verdict}


def test_partial_evaluation_short_circuits():
    vocab = ("a", "b")
    p = PartialAssignment.from_mapping(vocab, {"a": False})
    assert partial_evaluate(parse_formula("a & b"), p) is False
    assert partial_evaluate(parse_formula("a -> b"), p) is True
    assert partial_evaluate(parse_formula("a | b"), p) is None


@pytest.mark.parametrize(
    "f, g, expected",
    [("a & b", "a", True), ("a", "a | b", True), ("a | b", "a", False), ("F", "a", True), ("a", "T", True)],
)
def test_entails(f, g, expected):
    assert entails(parse_formula(f), parse_formula(g)) is expected


def test_consistency_and_models():
    assert is_consistent([parse_formula("a | b"), parse_formula("!a")])
    assert not is_consistent([a, Not(a)])
    assert is_consistent([])
    assert not is_satisfiable(BOTTOM)
    assert [format_interpretation(w) for w in models(parse_formula("a -> b"), ("a", "b"))] == [
        "!a !b",
        "!a b",
        "a b",
    ]


def test_truth_table_matches_evaluation():
    rng = random.Random(7)
    vocab = ("a", "b", "c", "d")
    for _ in range(100):
        f = random_formula(rng, vocab, 4)
        t = truth_table(f, vocab)
        for w in enumerate_interpretations(vocab):
            assert bool(t >> w.index & 1) == evaluate(f, w)


def test_clause_literals():
    assert sorted(clause_literals(parse_formula("a | !b | c"))) == [("a", True), ("b", False), ("c", True)]
    assert clause_literals(BOTTOM) == []
    assert clause_literals(parse_formula("a & b")) is None
