import pytest

from csl import (
    ColorTuple,
    FiniteSet,
    Window,
    Z,
    brute_rep_function,
    chromatic_finite_cover,
    cyclic,
    min_translate_cover,
    representation_function,
    translated_monoid,
    verify_cover,
)
from csl.errors import CapacityError, StructuralError
from conftest import ints


def test_verify_pass_and_fail():
    t = ColorTuple.of_finite(Z, [0, 1])
    X = chromatic_finite_cover(t, 2, (3,)).X
    rep = verify_cover(t, 2, (3,), X)
    assert rep.passed and rep.left_count == 7
    rep = verify_cover(t, 2, (3,), ints([0]))
    assert not rep.passed and rep.counterexample == (4,)


def test_verify_equality_on_window():
    t = ColorTuple(Z, (translated_monoid(Z, 5, [1]),))
    rep = verify_cover(t, 3, (2,), ints([20]), Window.interval(0, 60), check_equality=True)
    assert rep.passed and rep.equality


def test_verify_torsion():
    g = cyclic(5)
    t = ColorTuple.of_finite(g, [0, 1])
    assert verify_cover(t, 2, (3,), FiniteSet.of(g, [0, 2, 3])).passed


def test_verify_empty_X():
    with pytest.raises(StructuralError):
        verify_cover(ColorTuple.of_finite(Z, [0, 1]), 2, (1,), FiniteSet(Z, frozenset()))


def test_min_cover_examples():
    S = ints([1, 4, 6])
    assert min_translate_cover(S, S) == ints([0])
    assert min_translate_cover(ints(range(7)), ints(range(4))) == ints([0, 3])


def test_min_cover_capacity():
    with pytest.raises(CapacityError):
        min_translate_cover(ints(range(0, 400, 2)), ints([0, 1]), limit=10)


def test_brute_examples():
    assert brute_rep_function(ColorTuple.of_finite(Z, [0, 1]), (2,)) == representation_function(
        ColorTuple.of_finite(Z, [0, 1]), (2,)
    )
    p = brute_rep_function(ColorTuple.of_finite(Z, [0, 1], [0, 2]), (1, 1))
    assert p.counts == {0: 1, 1: 1, 2: 1, 3: 1}
    assert brute_rep_function(ColorTuple.of_finite(Z, [3, 4]), (0,)).counts == {0: 1}


def test_brute_capacity():
    with pytest.raises(CapacityError):
        brute_rep_function(ColorTuple.of_finite(Z, range(10)), (6,), limit=100)
