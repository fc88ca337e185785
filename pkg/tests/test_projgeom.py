import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercone.errors import DegenerateInput, OutOfArc
from hypercone.projgeom import (PI, ArcP1, MultiCone, ProjPoint, angle_dist,
                                contraction_factor, cross_ratio, cyclic_between,
                                cyclically_ordered, hilbert_density,
                                hilbert_dist, merge_spans)
from hypercone.sl2core import Mat2


def pts(*slopes):
    return [ProjPoint.from_slope(s) for s in slopes]


def test_cross_ratio_chart_values():
    a, b, c, d = pts(0.0, 1.0, 2.0, 3.0)
    # (c-a)/(b-a) * (d-b)/(d-c) on chart values 0,1,2,3
    assert cross_ratio(a, b, c, d) == pytest.approx(4.0, rel=1e-12)


def test_cross_ratio_with_point_at_infinity():
    a, b, c = pts(0.0, 1.0, 2.0)
    d = ProjPoint(math.pi / 2)  # vertical direction = the chart's infinity
    assert cross_ratio(a, b, c, d) == pytest.approx(2.0, rel=1e-12)


def test_cross_ratio_degenerate_input():
    a, b, c, _ = pts(0.0, 1.0, 2.0, 3.0)
    with pytest.raises(DegenerateInput):
        cross_ratio(a, b, c, ProjPoint(a.angle + 1e-14))


def test_cross_ratio_moebius_invariance_sampled():
    rng = random.Random(0)
    for _ in range(10_000):
        angles = []
        while len(angles) < 4:
            t = rng.uniform(0, math.pi)
            if all(angle_dist(t, u) > 1e-3 for u in angles):
                angles.append(t)
        p = [ProjPoint(t) for t in angles]
        a_, b_, c_, d_ = (rng.uniform(-3, 3) for _ in range(4))
        det = a_ * d_ - b_ * c_
        if abs(det) < 1e-3:
            continue
        s = 1.0 / math.sqrt(abs(det))
        m = Mat2(a_ * s, b_ * s, c_ * s, d_ * s)
        if det < 0:
            m = Mat2(m.a, -m.b, m.c, -m.d)  # keep det positive
        before = cross_ratio(*p)
        after = cross_ratio(*(m.act(x) for x in p))
        assert after == pytest.approx(before, rel=1e-9, abs=1e-9)


def test_hilbert_dist_unit_interval_example():
    arc = ArcP1(ProjPoint(0.0), ProjPoint(math.pi / 2))  # the chart (0, inf)
    x = ProjPoint.from_slope(1.0)
    y = ProjPoint.from_slope(math.e)
    assert hilbert_dist(arc, x, y) == pytest.approx(1.0, rel=1e-12)
    assert hilbert_dist(arc, x, x) == 0.0


def test_hilbert_dist_requires_interior_points():
    arc = ArcP1(ProjPoint(0.0), ProjPoint(1.0))
    with pytest.raises(OutOfArc):
        hilbert_dist(arc, ProjPoint(2.0), ProjPoint(0.5))


def test_hilbert_symmetry_and_positivity():
    arc = ArcP1(ProjPoint(0.3), ProjPoint(1.9))
    x, y = ProjPoint(0.8), ProjPoint(1.2)
    assert hilbert_dist(arc, x, y) == pytest.approx(hilbert_dist(arc, y, x))
    assert hilbert_dist(arc, x, y) > 0


def test_nested_arc_metric_inequality():
    outer = ArcP1(ProjPoint(0.1), ProjPoint(2.1))
    inner = ArcP1(ProjPoint(0.5), ProjPoint(1.6))
    lam = contraction_factor(outer, inner)
    assert lam > 1.0
    rng = random.Random(1)
    for _ in range(200):
        a = rng.uniform(0.55, 1.55)
        b = rng.uniform(0.55, 1.55)
        if abs(a - b) < 1e-6:
            continue
        x, y = ProjPoint(a), ProjPoint(b)
        assert hilbert_dist(inner, x, y) >= lam * hilbert_dist(outer, x, y)


def test_hilbert_metric_comparable_with_angle_metric_on_compact_subarc():
    outer = ArcP1(ProjPoint(0.0), ProjPoint(2.0))
    inner = ArcP1(ProjPoint(0.4), ProjPoint(1.5))
    lo = min(hilbert_density(outer, 0.4 + 1.1 * k / 64) for k in range(1, 64))
    hi = max(hilbert_density(outer, 0.4 + 1.1 * k / 64) for k in range(1, 64))
    rng = random.Random(2)
    for _ in range(200):
        a, b = sorted((rng.uniform(0.4, 1.5), rng.uniform(0.4, 1.5)))
        if b - a < 1e-9:
            continue
        d = hilbert_dist(outer, ProjPoint(a), ProjPoint(b))
        assert 0.99 * lo * (b - a) <= d <= 1.01 * hi * (b - a)


def test_cyclic_between_examples():
    a, b, c = ProjPoint(0.0), ProjPoint(1.0), ProjPoint(2.0)
    assert cyclic_between(a, b, c)
    # the arc from 2 to 1 wraps through 0, so 0.5 lies inside it
    assert cyclic_between(ProjPoint(2.0), ProjPoint(0.5), ProjPoint(1.0))
    assert not cyclic_between(ProjPoint(0.5), ProjPoint(2.0), ProjPoint(1.0))


@given(st.tuples(st.floats(0, math.pi - 1e-9), st.floats(0, math.pi - 1e-9),
                 st.floats(0, math.pi - 1e-9)))
@settings(max_examples=300)
def test_cyclic_between_exactly_one_orientation(triple):
    a, b, c = (ProjPoint(t) for t in triple)
    if (angle_dist(a.angle, b.angle) < 1e-6 or
            angle_dist(b.angle, c.angle) < 1e-6 or
            angle_dist(a.angle, c.angle) < 1e-6):
        return
    assert cyclic_between(a, b, c) != cyclic_between(c, b, a)


def test_cyclically_ordered_rotation_invariance():
    points = [ProjPoint(t) for t in (0.2, 0.9, 1.7, 2.6)]
    assert cyclically_ordered(points)
    assert cyclically_ordered(points[2:] + points[:2])
    assert not cyclically_ordered([points[0], points[2], points[1], points[3]])


def test_multicone_validation():
    good = MultiCone((ArcP1(ProjPoint(0.0), ProjPoint(0.5)),
                      ArcP1(ProjPoint(1.0), ProjPoint(1.5))))
    assert good.rank == 2
    with pytest.raises(DegenerateInput):
        MultiCone((ArcP1(ProjPoint(0.0), ProjPoint(1.2)),
                   ArcP1(ProjPoint(1.0), ProjPoint(1.5))))


def test_multicone_complement_alternates():
    cone = MultiCone((ArcP1(ProjPoint(0.0), ProjPoint(0.5)),
                      ArcP1(ProjPoint(1.0), ProjPoint(1.5))))
    comp = cone.complement()
    assert comp.rank == 2
    assert comp.arcs[0].start.angle == pytest.approx(0.5)


def test_merge_spans_wraparound():
    spans = [(3.0, 0.3), (0.05, 0.2), (1.0, 0.5)]
    merged = merge_spans(spans)
    # the first span wraps past pi and swallows the second
    assert len(merged) == 2
    total = sum(ln for _, ln in merged)
    assert total == pytest.approx(0.3 + 0.2 + 0.5 - ((3.0 + 0.3 - PI) - 0.05),
                                  abs=1e-12)


def test_merge_spans_full_circle():
    assert merge_spans([(0.0, 2.0), (1.9, 2.0)]) == [(0.0, PI)]


def test_arc_json_roundtrip():
    cone = MultiCone((ArcP1(ProjPoint(0.1), ProjPoint(0.4)),))
    again = MultiCone.from_json(cone.to_json())
    assert again.arcs[0].start.angle == pytest.approx(0.1)


@given(st.lists(st.tuples(st.floats(0, math.pi - 1e-6),
                          st.floats(1e-4, 1.0)), min_size=1, max_size=6),
       st.floats(0, math.pi - 1e-9))
@settings(max_examples=300)
def test_merge_spans_preserves_membership(spans, probe):
    def inside(span_list, t):
        for s, ln in span_list:
            if (t - s) % PI < ln:
                return True
        return False

    merged = merge_spans(spans)
    # keep the probe away from span boundaries, where closure conventions
    # may differ between raw and merged representations
    near_edge = any(min((probe - s) % PI, (s - probe) % PI) < 1e-9 or
                    min((probe - s - ln) % PI, (s + ln - probe) % PI) < 1e-9
                    for s, ln in spans)
    if near_edge:
        return
    assert inside(merged, probe) == inside(spans, probe)
    # merged spans are pairwise disjoint and sorted
    for i in range(len(merged) - 1):
        assert merged[i][0] + merged[i][1] < merged[i + 1][0]
