import itertools
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from netarcs.geometry import (
    INF,
    AffinePoint,
    Collineation,
    Slope,
    all_points,
    apply,
    apply_all,
    collinear,
    equivalent,
    finite,
    frame_collineation,
    iter_collineations,
    line_through,
    point,
    quad_collineation,
    slope_image,
    slope_of,
)
from netarcs.gf import field_of_order

SMALL = [2, 3, 4, 5, 7, 8, 9]


@st.composite
def collineations(draw, orders=SMALL):
    F = field_of_order(draw(st.sampled_from(orders)))
    el = lambda: F(draw(st.integers(0, F.q - 1)))  # noqa: E731
    a, b, c, d = el(), el(), el(), el()
    assume(a * d - b * c)
    return Collineation(a, b, c, d, el(), el(), draw(st.integers(0, F.k - 1)))


def rand_point(draw, F):
    return AffinePoint(F(draw(st.integers(0, F.q - 1))), F(draw(st.integers(0, F.q - 1))))


def test_slope_examples():
    F7, F11 = field_of_order(7), field_of_order(11)
    assert slope_of(point(F7, 0, 0), point(F7, 1, 1)) == finite(F7.one)
    assert slope_of(point(F7, 1, 0), point(F7, 1, 5)) == INF
    assert slope_of(point(F11, 1, 0), point(F11, 0, 3)) == finite(F11(8))
    with pytest.raises(ValueError):
        slope_of(point(F7, 1, 1), point(F7, 1, 1))


def test_infinity_sorts_last():
    F = field_of_order(5)
    assert sorted([INF, finite(F(3)), finite(F(0))]) == [finite(F(0)), finite(F(3)), INF]


def test_line_through():
    F = field_of_order(7)
    L = line_through(point(F, 2, 3), finite(F.zero))
    assert L.contains(point(F, 5, 3)) and not L.contains(point(F, 5, 4))
    V = line_through(point(F, 2, 3), INF)
    assert V.contains(point(F, 2, 6)) and not V.contains(point(F, 3, 3))
    F5 = field_of_order(5)
    D = line_through(point(F5, 1, 1), finite(F5.one))
    assert all(D.contains(point(F5, t, t)) for t in range(5))


def test_collinear_examples():
    F = field_of_order(7)
    assert collinear(point(F, 0, 0), point(F, 1, 1), point(F, 2, 2))
    assert not collinear(point(F, 0, 0), point(F, 1, 0), point(F, 0, 1))
    assert collinear(point(F, 0, 0), point(F, 1, 4), point(F, 2, 1))


def test_apply_examples():
    F = field_of_order(5)
    P = point(F, 3, 4)
    assert apply(Collineation.identity(F), P) == P
    assert apply(Collineation.translation(F.one, F.zero), point(F, 0, 0)) == point(F, 1, 0)


def test_golden_ovals_equivalent_gf11():
    F = field_of_order(11)

    def O(b):
        return [point(F, 1, 1), point(F, 1, 0), point(F, 0, 0), point(F, 0, b), point(F, b + 1, b)]

    w = equivalent(O(3), O(7))
    assert w is not None
    assert apply_all(w, O(3)) == sorted(O(7))


def test_slope_image_examples():
    F = field_of_order(7)
    z, o = F.zero, F.one
    swap = Collineation.linear(z, o, o, z)
    for m in range(1, 7):
        assert slope_image(swap, finite(F(m))) == finite(F(m).inverse())
    shear = Collineation.linear(o, z, o, o)
    assert slope_image(shear, finite(z)) == finite(o)
    assert slope_image(Collineation.identity(F), INF) == INF


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_slope_image_consistent(data):
    C = data.draw(collineations())
    F = C.spec
    P = rand_point(data.draw, F)
    Q = rand_point(data.draw, F)
    assume(P != Q)
    assert slope_of(apply(C, P), apply(C, Q)) == slope_image(C, slope_of(P, Q))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_collinearity_preserved(data):
    C = data.draw(collineations())
    F = C.spec
    pts = [rand_point(data.draw, F) for _ in range(3)]
    assume(len(set(pts)) == 3)
    assert collinear(*pts) == collinear(*(apply(C, P) for P in pts))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_compose_and_inverse(data):
    C = data.draw(collineations())
    D = data.draw(collineations(orders=[C.spec.q]))
    P = rand_point(data.draw, C.spec)
    assert apply(C.compose(D), P) == apply(C, apply(D, P))
    assert apply(C.inverse(), apply(C, P)) == P


def test_frame_identity():
    F = field_of_order(7)
    C = frame_collineation(point(F, 0, 0), point(F, 1, 1), finite(F.zero), finite(F.one), INF)
    assert C.as_tuple() == Collineation.identity(F).as_tuple()


def test_frame_swapped_roles():
    F = field_of_order(7)
    A, B = point(F, 0, 0), point(F, 1, 0)
    m0, m1, mi = finite(F.one), finite(F.zero), INF
    C = frame_collineation(A, B, m0, m1, mi)
    assert apply(C, A) == point(F, 0, 0) and apply(C, B) == point(F, 1, 1)
    assert slope_image(C, m0) == finite(F.zero)
    assert slope_image(C, m1) == finite(F.one)
    assert slope_image(C, mi) == INF


def test_frame_rejects_wrong_slope():
    F = field_of_order(7)
    with pytest.raises(ValueError):
        frame_collineation(point(F, 2, 3), point(F, 2, 4), finite(F.zero), finite(F.one), INF)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_frame_postconditions(data):
    F = field_of_order(data.draw(st.sampled_from(SMALL[1:])))
    A = rand_point(data.draw, F)
    B = rand_point(data.draw, F)
    assume(A != B)
    m1 = slope_of(A, B)
    others = [s for s in [finite(x) for x in F.elements()] + [INF] if s != m1]
    m0, mi = data.draw(st.permutations(others))[:2]
    C = frame_collineation(A, B, m0, m1, mi)
    assert apply(C, A) == point(F, 0, 0) and apply(C, B) == point(F, 1, 1)
    assert [slope_image(C, s) for s in (m0, m1, mi)] == [finite(F.zero), finite(F.one), INF]


def test_unit_quad_identity():
    F = field_of_order(3)
    C = quad_collineation(point(F, 0, 0), point(F, 1, 0), point(F, 1, 1), point(F, 0, 1))
    assert C.as_tuple() == Collineation.identity(F).as_tuple()


def test_quad_scaling_gf5():
    F = field_of_order(5)
    C = quad_collineation(point(F, 0, 0), point(F, 2, 0), point(F, 2, 2), point(F, 0, 2))
    assert C.as_tuple() == (3, 0, 0, 3, 0, 0, 0)


def test_quad_rejects_collinear():
    F = field_of_order(5)
    with pytest.raises(ValueError):
        quad_collineation(*(point(F, t, t) for t in range(4)))


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_quad_maps_to_unit_square(q):
    F = field_of_order(q)
    rng = random.Random(q)
    pts = all_points(F)
    unit = [point(F, 0, 0), point(F, 1, 0), point(F, 1, 1), point(F, 0, 1)]
    done = 0
    while done < 40:
        A, B, E = rng.sample(pts, 3)
        if collinear(A, B, E):
            continue
        Cpt = B + E - A  # parallelogram completion
        C = quad_collineation(A, B, Cpt, E)
        assert [apply(C, P) for P in (A, B, Cpt, E)] == unit
        done += 1


def test_equivalent_reflexive():
    F = field_of_order(7)
    S = [point(F, 0, 0), point(F, 1, 1), point(F, 2, 4), point(F, 3, 2)]
    w = equivalent(S, S)
    assert w is not None and apply_all(w, S) == sorted(S)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_equivalent_random_images(q):
    F = field_of_order(q)
    rng = random.Random(100 + q)
    pts = all_points(F)
    group = list(iter_collineations(F))
    for _ in range(15):
        S = rng.sample(pts, rng.randint(3, min(6, q + 1)))
        g = rng.choice(group)
        T = apply_all(g, S)
        w = equivalent(S, T)
        assert w is not None and apply_all(w, S) == T
        back = equivalent(T, S)
        assert back is not None and apply_all(back, T) == sorted(S)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_frame_method_matches_group_sweep(q):
    F = field_of_order(q)
    pts = all_points(F)
    rng = random.Random(q)
    for _ in range(25):
        n = rng.randint(3, 5)
        S, T = rng.sample(pts, n), rng.sample(pts, n)
        fast = equivalent(S, T) is not None
        slow = equivalent(S, T, method="exhaustive") is not None
        assert fast == slow


def test_collinear_sets_equivalence():
    F = field_of_order(5)
    S = [point(F, t, 0) for t in range(3)]
    T = [point(F, 1, t) for t in (0, 2, 4)]
    w = equivalent(S, T)
    assert w is not None and apply_all(w, S) == sorted(T)


def test_group_size_gf4():
    # |AGammaL(2,4)| = 16 * |GL(2,4)| * 2 = 16 * 180 * 2
    assert sum(1 for _ in iter_collineations(field_of_order(4))) == 5760


def test_singular_rejected():
    F = field_of_order(5)
    with pytest.raises(ValueError):
        Collineation(F.one, F.one, F.one, F.one, F.zero, F.zero, 0)


def test_slope_is_hashable_and_distinct():
    F = field_of_order(4)
    assert len({Slope(F(0)), Slope(F(0)), INF}) == 2
    assert len({s for s in itertools.chain([INF], (finite(x) for x in F.elements()))}) == 5
