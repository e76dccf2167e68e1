from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skewspec.errors import NotPeriodic, PreconditionError
from skewspec.numeric import UnitInterval
from skewspec.pwl import tent, valley, zigzag3
from skewspec.skew import (
    OrbitSegmentSpec,
    SkewPoint,
    SkewSystem,
    TracingAudit,
    fibre_orbit,
    nonaut_compose,
    nonaut_image,
    nonaut_image_chain,
    orbit,
    product_metric,
    return_times,
    step,
    verify_tracing,
)
from skewspec.subshift import BasePoint, Sft, shift

from conftest import base_points, naive_eval, unit_intervals, unit_rationals

F = Fraction
SYS = SkewSystem(Sft.full(2), (tent(), valley()))
SYS3 = SkewSystem(Sft.full(3), (tent(), valley(), zigzag3()))


def bp(s):
    return BasePoint.parse(s)


def test_step_examples():
    assert step(SYS, SkewPoint(bp("1"), F(1, 4))) == SkewPoint(bp("1"), F(1, 2))
    assert step(SYS, SkewPoint(bp("21"), 0)) == SkewPoint(bp("12"), 1)
    assert step(SYS, SkewPoint(bp("1"), 0)) == SkewPoint(bp("1"), 0)


def test_fibre_count_must_match():
    with pytest.raises(PreconditionError):
        SkewSystem(Sft.full(3), (tent(), valley()))


def test_nonaut_compose_examples():
    assert nonaut_compose(SYS, bp("12"), 0, 0, F(3, 7)) == F(3, 7)
    assert nonaut_compose(SYS, bp("1"), 0, 2, F(1, 8)) == F(1, 2)
    assert nonaut_compose(SYS, bp("12"), 0, 2, 0) == 1


def test_nonaut_image_examples():
    J = UnitInterval(0, F(1, 4))
    assert nonaut_image(SYS, bp("1"), 0, 0, J) == J
    assert nonaut_image(SYS, bp("1"), 0, 1, J) == UnitInterval(0, F(1, 2))
    assert nonaut_image(SYS, bp("1"), 0, 3, J) == UnitInterval(0, 1)


def test_product_metric_examples():
    p = SkewPoint(bp("12"), F(1, 3))
    assert product_metric(p, p) == 0
    assert product_metric(SkewPoint(bp("1"), 0), SkewPoint(bp("1"), F(1, 4))) == F(1, 4)
    assert product_metric(SkewPoint(bp("1"), F(1, 2)), SkewPoint(bp("2"), F(1, 2))) == 1


def test_return_times():
    assert return_times([3, 2], [5, 5]) == [0, 8, 15]


def test_verify_tracing_fixed_point_has_zero_defect():
    seg = OrbitSegmentSpec(SkewPoint(bp("1"), 0), 2)
    audit = verify_tracing(SYS, [seg], 1, SkewPoint(bp("1"), 0))
    assert audit.periodic and audit.max_defect == 0 and audit.r == [0, 3]
    assert audit.passes(F(1, 100))


def test_verify_tracing_wrong_period():
    seg = OrbitSegmentSpec(SkewPoint(bp("1"), F(1, 3)), 2)
    with pytest.raises(NotPeriodic):
        verify_tracing(SYS, [seg], 1, SkewPoint(bp("1"), F(1, 3)))


def test_verify_tracing_rejects_bad_input():
    seg = OrbitSegmentSpec(SkewPoint(bp("1"), 0), 2)
    with pytest.raises(PreconditionError):
        verify_tracing(SYS, [seg], 1, SkewPoint(bp("2|1"), 0))
    with pytest.raises(PreconditionError):
        verify_tracing(SYS, [seg], 3, SkewPoint(bp("1"), 0), gaps=[2])
    golden = SkewSystem(Sft.golden_mean(), (tent(), valley()))
    with pytest.raises(PreconditionError):
        verify_tracing(golden, [OrbitSegmentSpec(SkewPoint(bp("2"), 0), 1)], 1, SkewPoint(bp("1"), 0))


def test_verify_tracing_longer_gaps():
    seg = OrbitSegmentSpec(SkewPoint(bp("1"), 0), 2)
    audit = verify_tracing(SYS, [seg, seg], 1, SkewPoint(bp("1"), 0), gaps=[1, 4])
    assert audit.r == [0, 3, 9] and audit.max_defect == 0


def test_audit_json_roundtrip():
    a = TracingAudit(r=[0, 5], gaps=[3], periodic=True, max_defect=F(1, 9), segment_defects=[F(1, 9)])
    assert TracingAudit.from_json(a.to_json()) == a


def _point(draw, B):
    return SkewPoint(draw(base_points(B)), draw(unit_rationals()))


@st.composite
def skew_points(draw, count=1):
    return [_point(draw, SYS3.base) for _ in range(count)]


@given(skew_points(3))
def test_product_metric_axioms(pts):
    p, q, r = pts
    assert product_metric(p, q) == product_metric(q, p)
    assert (product_metric(p, q) == 0) == (p == q)
    assert product_metric(p, r) <= product_metric(p, q) + product_metric(q, r)


@given(skew_points(1), st.integers(0, 8), st.integers(0, 8), st.integers(0, 5))
def test_semigroup_law(pts, i, i2, j):
    (p,) = pts
    eta, x = p.base, p.fibre
    lhs = nonaut_compose(SYS3, eta, j, i + i2, x)
    rhs = nonaut_compose(SYS3, eta, j + i, i2, nonaut_compose(SYS3, eta, j, i, x))
    assert lhs == rhs


@given(skew_points(1), st.integers(0, 10))
def test_factor_property(pts, n):
    (p,) = pts
    path = orbit(SYS3, p, n)
    for a, b in zip(path, path[1:]):
        assert b.base == shift(a.base)
    assert [q.fibre for q in path] == fibre_orbit(SYS3, p.base, 0, n, p.fibre)


@settings(max_examples=40)
@given(skew_points(1), st.integers(0, 4), unit_intervals(max_den=16))
def test_nonaut_image_against_dense_sampling(pts, i, J):
    (p,) = pts
    eta = p.base
    img = nonaut_image(SYS3, eta, 0, i, J)
    samples = [J.lo + (J.hi - J.lo) * F(k, 256) for k in range(257)]
    vals = []
    for x in samples:
        for q in eta.prefix(i):
            x = naive_eval(SYS3.fibre(q), x)
        vals.append(x)
    assert img.lo <= min(vals) and max(vals) <= img.hi
    # the hull is attained: endpoints are images of actual points
    chain = nonaut_image_chain(SYS3, eta, 0, i, J)
    assert chain[0] == J and chain[-1] == img
    # sampling at step 1/256 misses at most slope * step near a turning point
    slack = F(3) ** i / 256
    assert img.lo >= min(vals) - slack and img.hi <= max(vals) + slack
