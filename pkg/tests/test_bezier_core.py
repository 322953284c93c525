import math
import random

import pytest

from beziertrace.bezier_core import (BlendingVector, CubicBezier, Point2,
                                     blend, evaluate, perpendicular_distance,
                                     project_parameter)
from beziertrace.errors import DegenerateChordError, DomainError

from helpers import convex_hull, point_in_hull


def test_blend_endpoints_exact():
    assert blend(0.0) == BlendingVector(1.0, 0.0, 0.0, 0.0)
    assert blend(1.0) == BlendingVector(0.0, 0.0, 0.0, 1.0)


def test_blend_midpoint():
    assert blend(0.5) == BlendingVector(0.125, 0.375, 0.375, 0.125)


def test_blend_third():
    b = blend(1.0 / 3.0)
    assert b.b1 == pytest.approx(4.0 / 9.0, abs=1e-12)
    assert b.b2 == pytest.approx(2.0 / 9.0, abs=1e-12)


@pytest.mark.parametrize("u", [-0.1, 1.0000001, 5.0, float("nan")])
def test_blend_domain_error(u):
    with pytest.raises(DomainError):
        blend(u)


def test_blend_partition_and_symmetry():
    rng = random.Random(42)
    for _ in range(10_000):
        u = rng.random()
        b = blend(u)
        m = blend(1.0 - u)
        assert abs(b.b0 + b.b1 + b.b2 + b.b3 - 1.0) <= 1e-12
        assert abs(b.b1 - m.b2) <= 1e-12
        assert abs(b.b0 - m.b3) <= 1e-12
        assert 0.0 <= min(b) and max(b) <= 1.0


def test_blend_argmax_positions():
    steps = 20_000
    best1 = max(range(steps + 1), key=lambda i: blend(i / steps).b1)
    best2 = max(range(steps + 1), key=lambda i: blend(i / steps).b2)
    assert abs(best1 / steps - 1.0 / 3.0) <= 1.0 / steps + 1e-12
    assert abs(best2 / steps - 2.0 / 3.0) <= 1.0 / steps + 1e-12


def test_evaluate_symmetric_polygon():
    c = CubicBezier(Point2(0, 0), Point2(0, 1), Point2(1, 1), Point2(1, 0))
    assert evaluate(c, 0.5) == Point2(0.5, 0.75)


def test_evaluate_endpoints_bit_exact():
    rng = random.Random(7)
    for _ in range(200):
        c = CubicBezier(*[Point2(rng.uniform(-500, 500), rng.uniform(-500, 500))
                          for _ in range(4)])
        assert evaluate(c, 0.0) == c.p0
        assert evaluate(c, 1.0) == c.p3


def test_evaluate_hand_case_at_third():
    c = CubicBezier(Point2(0, 0), Point2(1 / 3, 1), Point2(2 / 3, 1), Point2(1, 0))
    p = evaluate(c, 1 / 3)
    # y(u) = 3u(1-u) for this control polygon
    assert p.x == pytest.approx(1 / 3, abs=1e-12)
    assert p.y == pytest.approx(2 / 3, abs=1e-12)


def test_evaluate_domain_error():
    c = CubicBezier(Point2(0, 0), Point2(0, 1), Point2(1, 1), Point2(1, 0))
    with pytest.raises(DomainError):
        evaluate(c, 1.5)


def test_evaluate_convex_hull_containment():
    rng = random.Random(99)
    for _ in range(300):
        ctrl = [Point2(rng.uniform(-100, 100), rng.uniform(-100, 100))
                for _ in range(4)]
        c = CubicBezier(*ctrl)
        hull = convex_hull(ctrl)
        for _ in range(10):
            p = evaluate(c, rng.random())
            assert point_in_hull(p, hull, tol=1e-9)


def test_perpendicular_distance_horizontal_chord():
    assert perpendicular_distance(Point2(5, 3), Point2(0, 0), Point2(10, 0)) == 3.0


def test_perpendicular_distance_vertical_chord():
    assert perpendicular_distance(Point2(5, 4), Point2(2, 0), Point2(2, 10)) == 3.0


def test_perpendicular_distance_collinear():
    d = perpendicular_distance(Point2(1, 1), Point2(0, 0), Point2(2, 2))
    assert d == pytest.approx(0.0, abs=1e-12)


def test_perpendicular_distance_degenerate():
    with pytest.raises(DegenerateChordError):
        perpendicular_distance(Point2(1, 1), Point2(3, 3), Point2(3, 3))


def test_project_parameter_midpoint():
    assert project_parameter(Point2(5, 7), Point2(0, 0), Point2(10, 0)) == 0.5


def test_project_parameter_endpoints():
    a, b = Point2(2, 3), Point2(9, -4)
    assert project_parameter(a, a, b) == 0.0
    assert project_parameter(b, a, b) == pytest.approx(1.0, abs=1e-15)


def test_project_parameter_beyond_chord():
    t = project_parameter(Point2(-2, 0), Point2(0, 0), Point2(10, 0))
    assert t == pytest.approx(-0.2, abs=1e-15)


def test_project_parameter_degenerate():
    with pytest.raises(DegenerateChordError):
        project_parameter(Point2(0, 0), Point2(1, 2), Point2(1, 2))


def test_perpendicular_distance_matches_cross_form():
    # slope form agrees with the cross-product distance on random data
    rng = random.Random(11)
    for _ in range(500):
        pi = Point2(rng.uniform(-50, 50), rng.uniform(-50, 50))
        pk = Point2(rng.uniform(-50, 50), rng.uniform(-50, 50))
        pj = Point2(rng.uniform(-50, 50), rng.uniform(-50, 50))
        if pi == pk:
            continue
        d = perpendicular_distance(pj, pi, pk)
        cross = abs((pk.x - pi.x) * (pj.y - pi.y) - (pk.y - pi.y) * (pj.x - pi.x))
        expected = cross / math.hypot(pk.x - pi.x, pk.y - pi.y)
        assert d == pytest.approx(expected, abs=1e-9)
