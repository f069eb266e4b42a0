import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from csl import (
    ColorTuple,
    FiniteSet,
    Homomorphism,
    Semilinear,
    Window,
    Z,
    brute_rep_function,
    chromatic_finite_cover,
    chromatic_sumset,
    chromatic_sumset_window,
    cyclic,
    enumerate_window,
    finite_plus_monoid,
    free_group,
    h_fold,
    member_up_to_bound,
    min_translate_cover,
    minkowski_sum,
    normalize_tuple,
    refine_to_unbounded,
    representation_function,
    semilinear,
    simplex_lattice_cover,
    threshold_layer,
    translated_monoid,
    verify_certificate,
    verify_cover,
)
from csl.covering import simplex_points

small_sets = st.frozensets(st.integers(-6, 6), min_size=1, max_size=4)
tuples = st.lists(small_sets, min_size=1, max_size=2)


def fs(values):
    return FiniteSet.of(Z, values)


@given(small_sets, small_sets, small_sets)
def test_minkowski_assoc_comm(a, b, c):
    A, B, C = fs(a), fs(b), fs(c)
    assert minkowski_sum(A, B) == minkowski_sum(B, A)
    assert minkowski_sum(minkowski_sum(A, B), C) == minkowski_sum(A, minkowski_sum(B, C))


@given(small_sets, st.integers(0, 5))
def test_h_fold_is_repeated_sum(a, h):
    A, acc = fs(a), fs([0])
    for _ in range(h):
        acc = minkowski_sum(acc, A)
    assert h_fold(A, h) == acc


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(0, 12), st.integers(2, 9))
def test_hom_distributes(x, y, n, m):
    phi = Homomorphism.reduction(m)
    g = cyclic(m)
    assert phi(Z.add((x,), (y,))) == g.add(phi((x,)), phi((y,)))
    assert g.scale(n, (x % m,)) == phi((n * x,))


@given(st.integers(-5, 5), st.integers(0, 6))
def test_scale_is_repeated_add(x, n):
    g = free_group(2)
    v, acc = (x, 2 * x), g.zero
    for _ in range(n):
        acc = g.add(acc, v)
    assert g.scale(n, v) == acc


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(1, 4), st.one_of(st.none(), st.integers(0, 3))),
                min_size=1, max_size=3))
def test_refinement_preserves_window(raw):
    s = semilinear(Z, [((b,), [(g,)], None if n is None else (n,)) for b, g, n in raw])
    w = Window.interval(0, 30)
    r = Semilinear(refine_to_unbounded(s.set))
    assert enumerate_window(s, w) == enumerate_window(r, w)
    assert all(not p.is_bounded for p in r.set.pieces)


@given(st.frozensets(st.integers(0, 3), min_size=1, max_size=3), st.frozensets(st.integers(1, 7), max_size=3))
def test_membership_matches_enumeration(core, gens):
    c = finite_plus_monoid(Z, sorted(core), sorted(gens))
    w = Window.interval(0, 25)
    listed = enumerate_window(c, w)
    assert all(member_up_to_bound(c, (x,), w) == ((x,) in listed) for x in range(26))


@given(tuples, st.integers(0, 3), st.integers(0, 3))
def test_normalization_round_trip(sets, h1, h2):
    t = ColorTuple.of_finite(Z, *[sorted(s) for s in sets])
    h = (h1, h2)[: t.q]
    n, rec = normalize_tuple(t)
    full = chromatic_sumset(t, h)
    if n is None:
        assert full.ints() == [rec.shift(h)]
        return
    inner = chromatic_sumset(n, rec.restrict(h))
    assert fs(rec.transport(h, v) for v in inner.ints()) == full


@given(tuples, st.integers(1, 3), st.integers(0, 3), st.integers(0, 3))
def test_scaling_identity(sets, r, h1, h2):
    t = ColorTuple.of_finite(Z, *[sorted(s) for s in sets])
    h = t.hvector((h1, h2)[: t.q])
    assert h_fold(chromatic_sumset(t, h), r) == chromatic_sumset(t, h.scaled(r))


@settings(max_examples=40)
@given(st.integers(1, 3), st.integers(1, 9), st.integers(1, 9))
def test_lattice_cover_complete(d, R, t):
    if t > R:
        t, R = R, t
    p = simplex_lattice_cover(d, R, t)
    assert len(p.translates) <= math.comb(d * R // t + d, d)
    assert all(p.covering_translate(x) is not None for x in simplex_points(d, R))


@given(tuples, st.sampled_from([2, 3]), st.integers(0, 3), st.integers(0, 3))
def test_finite_bound_conformance(sets, r, h1, h2):
    t = ColorTuple.of_finite(Z, *[sorted(s) for s in sets])
    c = verify_certificate(chromatic_finite_cover(t, r, (h1, h2)[: t.q]))
    assert c.verified and c.size <= c.bound


@given(st.lists(st.frozensets(st.integers(0, 4), min_size=1, max_size=4), min_size=1, max_size=2),
       st.integers(0, 5), st.integers(0, 5))
def test_rep_mass(sets, h1, h2):
    t = ColorTuple.of_finite(Z, *[sorted(s) for s in sets])
    h = (h1, h2)[: t.q]
    expected = math.prod(math.comb(len(s) + hi - 1, hi) for s, hi in zip(sets, h))
    assert representation_function(t, h).total == expected


@settings(max_examples=60)
@given(st.lists(st.frozensets(st.integers(-2, 4), min_size=1, max_size=3), min_size=1, max_size=2),
       st.integers(0, 3), st.integers(0, 3))
def test_dp_matches_brute(sets, h1, h2):
    t = ColorTuple.of_finite(Z, *[sorted(s) for s in sets])
    h = (h1, h2)[: t.q]
    assert representation_function(t, h) == brute_rep_function(t, h)


@given(tuples, st.integers(0, 3), st.integers(0, 3), st.integers(1, 4))
def test_layers_nest(sets, h1, h2, thr):
    t = ColorTuple.of_finite(Z, *[sorted(s) for s in sets])
    h = (h1, h2)[: t.q]
    assert threshold_layer(t, h, thr + 1).issubset(threshold_layer(t, h, thr))
    if thr == 1:
        assert threshold_layer(t, h, 1) == chromatic_sumset(t, h)


@given(tuples, st.integers(0, 3), st.integers(0, 3), st.integers(-4, 20), st.integers(0, 24))
def test_window_sumset_matches_full(sets, h1, h2, lo, span):
    t = ColorTuple.of_finite(Z, *[sorted(s) for s in sets])
    h = (h1, h2)[: t.q]
    w = Window.interval(lo, lo + span)
    full = chromatic_sumset(t, h)
    assert chromatic_sumset_window(t, h, w) == fs(x for (x,) in full if w.contains((x,)))


@given(st.integers(0, 4), st.integers(1, 3), st.integers(1, 3), st.integers(0, 3))
def test_monoid_window_sumset(base, g1, g2, h):
    c = translated_monoid(Z, base, [g1, g2])
    t = ColorTuple(Z, (c,))
    w = Window.interval(0, 30)
    got = chromatic_sumset_window(t, (h,), w)
    one = enumerate_window(c, w)
    acc = fs([0])
    for _ in range(h):
        acc = fs(x for (x,) in minkowski_sum(acc, one) if x <= 30)
    assert got == acc


def _exhaustive_min(S, T):
    cands = sorted({s - t for s in S for t in T})
    for k in range(1, len(S) + 1):
        for X in itertools.combinations(cands, k):
            if all(any(s - x in T for x in X) for s in S):
                return k
    raise AssertionError


@settings(max_examples=60, deadline=None)
@given(st.frozensets(st.integers(0, 11), min_size=1, max_size=12), st.frozensets(st.integers(0, 5), min_size=1, max_size=4))
def test_min_cover_optimal(s, t):
    S, T = fs(s), fs(t)
    X = min_translate_cover(S, T)
    assert S.issubset(minkowski_sum(X, T))
    assert len(X) == _exhaustive_min(s, t)


@given(tuples, st.integers(1, 3), st.integers(0, 3))
def test_failing_cover_reports_real_counterexample(sets, r, h1):
    t = ColorTuple.of_finite(Z, sorted(sets[0]))
    rep = verify_cover(t, r, (h1,), fs([10**6]))
    if not rep.passed:
        left = chromatic_sumset(t, (r * h1,))
        right = minkowski_sum(fs([10**6]), chromatic_sumset(t, (h1,)))
        assert rep.counterexample in left and rep.counterexample not in right


@given(st.integers(2, 11), st.lists(st.frozensets(st.integers(0, 20), min_size=1, max_size=3), min_size=1, max_size=2),
       st.frozensets(st.integers(0, 20), min_size=1, max_size=3), st.integers(1, 3), st.integers(0, 3))
def test_cyclic_verify_matches_sparse(n, sets, xs, r, h1):
    g = cyclic(n)
    t = ColorTuple.of_finite(g, *[sorted(s) for s in sets])
    h = t.hvector((h1, 1)[: t.q])
    X = FiniteSet.of(g, xs)
    left = chromatic_sumset(t, h.scaled(r))
    right = {g.add(x, s) for x in X for s in chromatic_sumset(t, h)}
    rep = verify_cover(t, r, h, X)
    missing = sorted(y for y in left if y not in right)
    assert rep.passed == (not missing)
    assert rep.counterexample == (missing[0] if missing else None)
    assert (rep.left_count, rep.right_count) == (len(left), len(right))
