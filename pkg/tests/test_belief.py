import math
import random
from fractions import Fraction

import pytest

from generators import random_finite_kb, random_formula, random_kb
from penaltylogic.belief import (
    MassFunction,
    OrderOfMagnitude,
    check_contour_identity,
    combine,
    consistent_index_subsets,
    contour,
    infinitesimal_plausibility,
    infinitesimal_plausibility_value,
    kb_mass,
    plausibility,
    simple_support,
)
from penaltylogic.kb import INF, interpretation_cost, parse_kb
from penaltylogic.logic import (
    BOTTOM,
    TOP,
    enumerate_interpretations,
    is_consistent,
    is_satisfiable,
    parse_formula,
    parse_interpretation,
)
from penaltylogic.solver import consistency_cost


def close(x, y, tol=1e-12):
    return abs(x - y) <= tol


def test_simple_support_ln2():
    m = simple_support("a", math.log(2))
    assert close(m["a"], 0.5)
    assert close(m[TOP], 0.5)


def test_simple_support_infinite_penalty():
    m = simple_support("a", INF)
    assert m["a"] == 1.0
    assert m[TOP] == 0
    assert len(m) == 1


def test_mass_function_validation():
    with pytest.raises(ValueError):
        MassFunction({TOP: 0.5})
    with pytest.raises(ValueError):
        MassFunction({TOP: 1.5, parse_formula("a"): -0.5})
    m = MassFunction({"a & b": 0.25, "b & a": 0.25, "T": 0.5})
    assert len(m) == 2
    assert close(m["a & b"], 0.5)


def test_vacuous_is_neutral():
    m = simple_support("a | b", 2)
    assert combine(MassFunction.vacuous(), m).focal == m.focal
    assert combine(m, MassFunction.vacuous()).focal == m.focal


def test_conflict_goes_to_bottom():
    m = combine(simple_support("a", INF), simple_support("!a", INF))
    assert m[BOTTOM] == 1.0
    m = combine(simple_support("a", math.log(2)), simple_support("!a", math.log(2)))
    assert close(m[BOTTOM], 0.25)
    assert close(m.total(), 1.0)


def _exact(f, p):
    p = Fraction(p)
    focal = {parse_formula(f): 1 - 1 / (1 + p)}
    focal[TOP] = focal.get(TOP, 0) + 1 / (1 + p)
    return MassFunction(focal)


def test_exact_mass_conservation():
    m = _exact("a", 1)
    for f, p in [("!a | b", 2), ("b -> c", 3), ("!c", 5)]:
        m = combine(m, _exact(f, p))
        assert m.total() == 1


def test_combination_is_commutative_and_associative():
    rng = random.Random(61)
    for _ in range(30):
        ms = [
            _exact(str(random_formula(rng, "abc", 2)), rng.randint(1, 4)) for _ in range(3)
        ]
        x, y, z = ms
        assert combine(x, y).focal == combine(y, x).focal
        assert combine(combine(x, y), z, semantic=True).focal == combine(
            x, combine(y, z), semantic=True
        ).focal


def test_kb_mass_product_form(pk1):
    pk = parse_kb("2 a\n3 b\n")
    m = kb_mass(pk)
    ea, eb = math.exp(-2), math.exp(-3)
    assert close(m["a & b"], (1 - ea) * (1 - eb))
    assert close(m["a"], (1 - ea) * eb)
    assert close(m["b"], ea * (1 - eb))
    assert close(m[TOP], ea * eb)


def test_contour_identity_pk1(pk1):
    m = kb_mass(pk1)
    for w in enumerate_interpretations(pk1.vocabulary):
        k = interpretation_cost(pk1, w)
        pl = contour(m, w)
        if k == INF:
            assert pl == 0
        else:
            assert close(pl, math.exp(-float(k)))
    assert close(contour(m, parse_interpretation("a b !c")), math.exp(-5))
    assert check_contour_identity(pk1) <= 1e-9


def test_contour_identity_random():
    rng = random.Random(62)
    for _ in range(60):
        pk = random_finite_kb(rng, max_items=6, max_atoms=4, max_penalty=20)
        assert check_contour_identity(pk) <= 1e-9


def test_equivalent_bases_share_contour(pk2, pk3):
    m2, m3 = kb_mass(pk2), kb_mass(pk3)
    for w in enumerate_interpretations(("a", "b")):
        assert close(contour(m2, w), contour(m3, w))


def test_plausibility_against_direct_sum():
    rng = random.Random(63)
    for _ in range(30):
        pk = random_finite_kb(rng, max_items=4, max_atoms=3, max_penalty=5)
        m = kb_mass(pk)
        f = random_formula(rng, pk.vocabulary or ("a",), 2)
        expected = sum(v for g, v in m.items() if is_consistent([g, f]))
        assert close(plausibility(m, f), expected)
        assert plausibility(m, BOTTOM) == 0


@pytest.mark.parametrize(
    "formula, exponent, multiplicity",
    [("a & b", 5, 1), ("T", 5, 1), ("a -> c", 7, 1), ("!a", INF, 0), ("F", INF, 0)],
)
def test_order_of_magnitude_pk1(pk1, formula, exponent, multiplicity):
    assert infinitesimal_plausibility(pk1, formula) == OrderOfMagnitude(exponent, multiplicity)


def test_multiplicity_counts_ties():
    pk = parse_kb("1 a\n1 !a\n")
    assert infinitesimal_plausibility(pk, TOP) == OrderOfMagnitude(1, 2)
    assert str(OrderOfMagnitude(1, 2)) == "exponent 1 multiplicity 2"


def test_exponent_equals_consistency_cost():
    rng = random.Random(64)
    for _ in range(150):
        pk = random_kb(rng, max_items=6, max_atoms=4)
        f = random_formula(rng, pk.vocabulary or ("a",), 3)
        order = infinitesimal_plausibility(pk, f)
        assert order.exponent == consistency_cost(pk, f)
        if order.exponent != INF and is_satisfiable(f):
            assert order.multiplicity >= 1


def test_index_subsets_are_consistent(pk1):
    f = parse_formula("a -> c")
    for kept, excluded in consistent_index_subsets(pk1, f):
        assert is_consistent([pk1.formulas[i] for i in kept] + [f])
        assert excluded == sum(
            (p for i, p in enumerate(pk1.penalties) if i not in kept), Fraction(0)
        )


def test_leading_term_numerically(pk1):
    eps = Fraction(1, 1000)
    for formula in ["a & b", "T", "a -> c"]:
        order = infinitesimal_plausibility(pk1, formula)
        value = infinitesimal_plausibility_value(pk1, formula, eps)
        ratio = value / eps ** int(order.exponent)
        assert abs(ratio - order.multiplicity) < Fraction(1, 50)
    with pytest.raises(ValueError):
        infinitesimal_plausibility_value(parse_kb("1/2 a\n"), TOP, eps)


def test_simple_support_on_tautology():
    m = simple_support("T", 3)
    assert len(m) == 1
    assert close(m[TOP], 1.0)
