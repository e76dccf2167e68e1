from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from skewspec.errors import InvalidMap, NotLeoWithinCap, OutOfDomain
from skewspec.nonshrink import shrink_maps
from skewspec.numeric import UnitInterval
from skewspec.pwl import (
    PwlMap,
    compose,
    component_containing,
    evaluate,
    expansion_rate,
    identity_map,
    image_interval,
    is_mixing,
    is_surjective,
    iterate_image,
    leo_exponent,
    preimage_components,
    preimage_points,
    tent,
    valley,
    zigzag3,
)

from conftest import naive_eval, naive_image, pwl_maps, unit_intervals, unit_rationals

F = Fraction
XI = F(1, 5)


def test_eval_examples():
    T = tent()
    assert evaluate(T, F(1, 4)) == F(1, 2)
    assert T(F(1, 2)) == 1
    phi, _, _ = shrink_maps(XI)
    assert phi(0) == XI


def test_eval_rejects_out_of_domain():
    with pytest.raises(OutOfDomain):
        tent()(F(3, 2))


def test_invalid_maps():
    with pytest.raises(InvalidMap):
        PwlMap([(0, 0), (F(1, 2), 1)])          # does not end at 1
    with pytest.raises(InvalidMap):
        PwlMap([(0, 0), (F(1, 2), F(1, 2)), (F(1, 2), 1), (1, 0)])
    with pytest.raises(InvalidMap):
        PwlMap([(0, F(1, 2)), (1, F(1, 2))])    # constant piece


def test_collinear_nodes_are_merged():
    assert PwlMap([(0, 0), (F(1, 4), F(1, 2)), (F(1, 2), 1), (1, 0)]) == tent()


def test_image_examples():
    T = tent()
    assert image_interval(T, UnitInterval(0, F(1, 2))) == UnitInterval(0, 1)
    assert image_interval(T, UnitInterval(F(1, 4), F(3, 4))) == UnitInterval(F(1, 2), 1)
    _, f, _ = shrink_maps(XI)
    assert image_interval(f, UnitInterval(1 - 2 * XI, 1)) == UnitInterval(0, 2 * XI)


def test_preimage_examples():
    T = tent()
    assert preimage_components(T, UnitInterval(0, F(1, 2))) == [UnitInterval(0, F(1, 4)), UnitInterval(F(3, 4), 1)]
    assert preimage_components(T, UnitInterval(1, 1)) == [UnitInterval(F(1, 2), F(1, 2))]
    assert preimage_components(T, UnitInterval(F(1, 2), 1)) == [UnitInterval(F(1, 4), F(3, 4))]


def test_expansion_rates():
    assert expansion_rate(tent()) == 2
    _, _, g = shrink_maps(XI)
    assert expansion_rate(g) == 1
    assert expansion_rate(PwlMap([(0, 0), (F(1, 3), 1), (F(2, 3), 0), (1, 1)])) == 3


def test_surjectivity():
    assert is_surjective(tent())
    assert not is_surjective(PwlMap([(0, F(1, 4)), (1, F(3, 4))]))
    phi, _, _ = shrink_maps(XI)
    assert is_surjective(phi)


def test_mixing():
    assert is_mixing(tent(), cap=10)
    assert is_mixing(valley(), cap=10)
    assert not is_mixing(identity_map(), cap=10)


def _leo_oracle(T, gamma, grid=128):
    """Brute-force covering time over grid- and critical-anchored intervals of length gamma."""
    starts = {F(k, grid) for k in range(grid + 1)}
    for c in T.critical_points:
        starts.update({c, c - gamma})
    worst = 0
    for a in starts:
        if not 0 <= a <= 1 - gamma:
            continue
        lo, hi, i = a, a + gamma, 0
        while (lo, hi) != (0, 1):
            lo, hi = naive_image(T, lo, hi)
            i += 1
            assert i < 64
        worst = max(worst, i)
    return worst


def test_leo_gamma_one():
    assert leo_exponent(tent(), 1) == 0


@pytest.mark.parametrize("gamma, bound", [(F(1, 2), None), (F(1, 4), 4)])
def test_leo_tent_sound(gamma, bound):
    m = leo_exponent(tent(), gamma)
    oracle = _leo_oracle(tent(), gamma)
    assert m >= oracle
    if bound is not None:
        assert m <= bound


def test_leo_tent_half_minimal_is_two():
    assert _leo_oracle(tent(), F(1, 2)) == 2


@pytest.mark.parametrize("T", [valley(), zigzag3()])
@pytest.mark.parametrize("gamma", [F(1, 2), F(1, 3), F(1, 8)])
def test_leo_sound_other_maps(T, gamma):
    assert leo_exponent(T, gamma) >= _leo_oracle(T, gamma, grid=64)


def test_leo_not_mixing():
    with pytest.raises(NotLeoWithinCap):
        leo_exponent(identity_map(), F(1, 2), cap=20)


def test_compose_order():
    T = compose([tent(), valley()])
    for k in range(17):
        x = F(k, 16)
        assert T(x) == valley()(tent()(x))


@given(pwl_maps(), unit_rationals())
def test_eval_matches_interpolation(T, x):
    assert evaluate(T, x) == naive_eval(T, x)


@given(pwl_maps(), unit_intervals(nondegenerate=False))
def test_image_matches_node_hull(T, J):
    assert image_interval(T, J) == UnitInterval(*naive_image(T, J.lo, J.hi))


@given(pwl_maps())
def test_continuity_at_nodes(T):
    for (x, y) in T.nodes:
        assert evaluate(T, x) == y
        assert naive_eval(T, x) == y


@given(pwl_maps(), unit_intervals())
def test_expanding_inequality_within_a_piece(T, J):
    piece = next(((P, s) for P, s in T.pieces() if J.issubset(P)), None)
    assume(piece is not None)
    assert image_interval(T, J).length == abs(piece[1]) * J.length
    assert image_interval(T, J).length >= expansion_rate(T) * J.length


@given(pwl_maps(), unit_intervals(nondegenerate=False), st.lists(unit_rationals(), min_size=1, max_size=8))
def test_preimage_image_adjunction(T, J, xs):
    parts = preimage_components(T, J)
    for C in parts:
        assert image_interval(T, C).issubset(J)
    for x in xs + [c.lo for c in parts] + [c.hi for c in parts]:
        if T(x) in J:
            assert component_containing(parts, x) is not None


@given(pwl_maps(), unit_rationals(), unit_intervals(nondegenerate=False))
def test_preimage_points(T, y, W):
    pts = preimage_points(T, y, within=W)
    assert pts == sorted(pts)
    for x in pts:
        assert T(x) == y and x in W


@settings(max_examples=30)
@given(st.lists(st.sampled_from([tent(), valley(), zigzag3()]), min_size=1, max_size=4),
       unit_intervals(max_den=32, nondegenerate=False))
def test_compose_matches_iterated_images(maps, J):
    C = compose(maps)
    I = J
    for T in maps:
        I = image_interval(T, I)
    assert image_interval(C, J) == I


def test_iterate_image():
    assert iterate_image(tent(), UnitInterval(0, F(1, 4)), 3) == UnitInterval(0, 1)
