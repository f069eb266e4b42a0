import pytest

from csl import (
    ColorTuple,
    FiniteSet,
    LinearSet,
    SemilinearSet,
    Window,
    Z,
    enumerate_window,
    finite,
    finite_plus_monoid,
    free_group,
    member_up_to_bound,
    normalize_tuple,
    refine_to_unbounded,
    semilinear,
    translated_monoid,
)
from csl.errors import CapacityError, StructuralError, UnsupportedStructureError
from conftest import ints, pieces


def test_refine_unbounded_unchanged():
    s = semilinear(Z, [((0,), [(2,)])]).set
    assert refine_to_unbounded(s) == s


def test_refine_bounded_piece():
    s = semilinear(Z, [((0,), [(3,)], (2,))]).set
    assert pieces(refine_to_unbounded(s)) == [((0,), ()), ((3,), ()), ((6,), ())]


def test_refine_mixed():
    s = semilinear(Z, [((0,), [(2,)]), ((1,), [(5,)], (1,))]).set
    assert pieces(refine_to_unbounded(s)) == [((0,), ((2,),)), ((1,), ()), ((6,), ())]


def test_refine_capacity():
    s = semilinear(Z, [((0,), [(1,)], (50,))]).set
    with pytest.raises(CapacityError):
        refine_to_unbounded(s, limit=10)


def test_membership_examples():
    w = Window.interval(0, 20)
    assert member_up_to_bound(finite(Z, [0, 1, 3]), (3,), w)
    m = translated_monoid(Z, 5, [1])
    assert not member_up_to_bound(m, (4,), w)
    assert member_up_to_bound(m, (11,), w)
    n = finite_plus_monoid(Z, [0], [3, 5])
    assert not member_up_to_bound(n, (7,), w)
    assert member_up_to_bound(n, (8,), w)


def test_enumerate_examples():
    assert enumerate_window(finite(Z, [-1, 4]), Window.interval(0, 10)) == ints([4])
    assert enumerate_window(translated_monoid(Z, 5, [1]), Window.interval(0, 8)) == ints([5, 6, 7, 8])
    got = enumerate_window(finite_plus_monoid(Z, [0, 1], [3]), Window.interval(0, 7))
    assert got == ints([0, 1, 3, 4, 6, 7])


def test_enumerate_free_rank_two():
    g = free_group(2)
    c = translated_monoid(g, (0, 0), [(1, 0), (0, 1)])
    got = enumerate_window(c, Window(((0, 2), (0, 1))))
    assert len(got) == 6


def test_orthant_restriction():
    with pytest.raises(UnsupportedStructureError):
        translated_monoid(Z, 0, [-1])


def test_window_shape_mismatch():
    with pytest.raises(StructuralError):
        enumerate_window(translated_monoid(free_group(2), (0, 0), [(1, 0)]), Window.interval(0, 3))


def test_normalize_identity():
    t = ColorTuple.of_finite(Z, [0, 1])
    n, rec = normalize_tuple(t)
    assert n == t and rec.divisor == 1 and rec.offsets == (0,)


def test_normalize_shift_and_divide():
    n, rec = normalize_tuple(ColorTuple.of_finite(Z, [4, 6]))
    assert n == ColorTuple.of_finite(Z, [0, 1])
    assert (rec.divisor, rec.offsets) == (2, (4,))


def test_normalize_drops_singletons():
    n, rec = normalize_tuple(ColorTuple.of_finite(Z, [5], [0, 3, 9]))
    assert n == ColorTuple.of_finite(Z, [0, 1, 3])
    assert rec.divisor == 3 and rec.offsets == (5, 0)
    assert rec.singletons == (0,) and rec.kept == (1,)


def test_normalize_all_singletons():
    n, rec = normalize_tuple(ColorTuple.of_finite(Z, [5], [2]))
    assert n is None and rec.shift((1, 2)) == 9


def test_tuple_validation():
    with pytest.raises(StructuralError):
        ColorTuple(Z, ())
    with pytest.raises(StructuralError):
        ColorTuple(Z, (finite(free_group(2), [(0, 0)]),))
    with pytest.raises(StructuralError):
        ColorTuple.of_finite(Z, [0, 1]).hvector((1, 2))
    with pytest.raises(StructuralError):
        ColorTuple.of_finite(Z, [0, 1]).hvector((-1,))


def test_linear_points():
    p = LinearSet(Z, (1,), ((2,), (3,)), (1, 1))
    assert sorted(p.points()) == [(1,), (3,), (4,), (6,)]


def test_finite_set_helpers():
    A = ints([0, 2])
    assert A.translate((1,)) == ints([1, 3])
    assert A.dilate(3) == ints([0, 6])
    assert FiniteSet.zero(Z) == ints([0])
    assert SemilinearSet(Z, (LinearSet(Z, (0,), ()),)).is_refined
