import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsyscurves.curves import (
    CATALOG,
    CATALOG_IDS,
    bezier_oracle,
    bspline_oracle,
    convex_hull,
    extract_polyline,
    hull_signed_distance,
    point_sequence,
    polyline_from_points,
    rational_bezier_oracle,
    run_catalog,
    state_transition,
)
from lsyscurves.errors import (
    DimensionError,
    DomainError,
    ExtractionError,
    StateError,
)
from lsyscurves.geometry import Point, WeightedPoint, distance
from lsyscurves.rewriting import Module, ModuleString

coord = st.floats(min_value=-50, max_value=50, allow_nan=False)


# ---------------------------------------------------------------------------
# Oracles


def test_bezier_oracle_quadratic_midpoint():
    ctrl = [Point(0, 0), Point(1, 2), Point(2, 0)]
    # Bernstein weights at t=0.5 are (0.25, 0.5, 0.25).
    assert bezier_oracle(ctrl, 0.5) == Point(1, 1)


def test_bezier_oracle_endpoints():
    ctrl = [Point(0, 0), Point(3, 5), Point(-1, 2), Point(4, 4)]
    assert bezier_oracle(ctrl, 0.0) == ctrl[0]
    assert bezier_oracle(ctrl, 1.0) == ctrl[-1]


def test_rational_oracle_reduces_to_plain_at_unit_weights():
    ctrl = [Point(0, 0), Point(2, 3), Point(4, 0)]
    weighted = [WeightedPoint(p, 1.0) for p in ctrl]
    for t in (0.0, 0.3, 0.5, 0.9, 1.0):
        assert distance(rational_bezier_oracle(weighted, t),
                        bezier_oracle(ctrl, t)) <= 1e-15


def test_bspline_oracle_quadratic_knot_values():
    # Degree-2 uniform B-spline: curve at a knot = edge midpoint (1/2, 1/2).
    square = [Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4)]
    degree, m = 2, 4
    for j in range(m):
        got = bspline_oracle(square, degree, float(degree + j), closed=True)
        a, b = square[j], square[(j + 1) % m]
        mid = Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        assert distance(got, mid) <= 1e-12


def test_bspline_oracle_cubic_knot_values():
    # Degree-3 uniform basis at a knot: coefficients (1/6, 4/6, 1/6).
    square = [Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4)]
    degree, m = 3, 4
    for j in range(m):
        got = bspline_oracle(square, degree, float(degree + j), closed=True)
        p0 = square[j]
        p1 = square[(j + 1) % m]
        p2 = square[(j + 2) % m]
        want = Point(
            (p0[0] + 4 * p1[0] + p2[0]) / 6,
            (p0[1] + 4 * p1[1] + p2[1]) / 6,
        )
        assert distance(got, want) <= 1e-12


def test_bspline_oracle_domain():
    square = [Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4)]
    with pytest.raises(DomainError):
        bspline_oracle(square, 2, 1.0, closed=True)
    with pytest.raises(DomainError):
        bspline_oracle(square, 2, 6.5, closed=True)


# ---------------------------------------------------------------------------
# Hulls and states


def test_state_transition_table():
    assert state_transition(0, 0) == 0
    assert state_transition(0, 1) == 1
    assert state_transition(1, 1) == 2
    assert state_transition(2, 1) == 2
    assert state_transition(2, 2) == 2
    with pytest.raises(StateError):
        state_transition(3, 0)


def test_convex_hull_and_containment():
    pts = [Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4), Point(2, 2)]
    hull = convex_hull(pts)
    assert len(hull) == 4
    assert hull_signed_distance(Point(2, 2), hull) < 0
    assert hull_signed_distance(Point(5, 2), hull) > 0
    assert abs(hull_signed_distance(Point(4, 2), hull)) <= 1e-12


@given(st.lists(st.tuples(coord, coord), min_size=3, max_size=12))
def test_hull_contains_all_inputs(coords):
    pts = [Point(x, y) for x, y in coords]
    hull = convex_hull(pts)
    for p in pts:
        assert hull_signed_distance(p, hull) <= 1e-9


# ---------------------------------------------------------------------------
# Extraction


def test_extract_polyline_empty_and_errors():
    assert extract_polyline(ModuleString([])).segments == []
    bad = ModuleString([Module("L", (1.0, 2.0))])
    with pytest.raises(ExtractionError):
        extract_polyline(bad)


def test_polyline_round_trip_closed_square():
    result = run_catalog("chaikin_edges", cycles=0)
    poly = result.polyline
    assert len(poly.segments) == 4
    assert poly.closed
    verts = poly.vertices()
    assert verts == [Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4)]
    assert polyline_from_points(verts, closed=True).segments == poly.segments


# ---------------------------------------------------------------------------
# Catalog behaviour


def test_catalog_registry():
    assert len(CATALOG) == 10
    assert list(CATALOG) == list(CATALOG_IDS)
    for entry in CATALOG.values():
        assert entry.summary
        result = run_catalog(entry)
        assert result.final.modules


def test_chaikin_square_step():
    result = run_catalog("chaikin", cycles=1)
    got = point_sequence(result.final)
    expected = [Point(*c) for c in
                [(1, 0), (3, 0), (4, 1), (4, 3), (3, 4), (1, 4), (0, 3),
                 (0, 1)]]
    shift = expected.index(got[0])
    assert got == expected[shift:] + expected[:shift]


def test_chaikin_vertex_count_doubles():
    for cycles in range(1, 5):
        result = run_catalog("chaikin", cycles=cycles)
        assert len(point_sequence(result.final)) == 4 * 2 ** cycles


def test_subdivision_vertex_count_and_midpoint():
    pts = [Point(0, 0), Point(2, 4), Point(5, 5), Point(8, 3), Point(9, 0)]
    result = run_catalog("decasteljau_subdivision", points=pts, t=0.4,
                         cycles=1)
    verts = point_sequence(result.final, {"P": (0, 2)})
    assert len(verts) == 9
    middle = verts[4]
    single = run_catalog("decasteljau_point", points=pts, t=0.4).curve_point()
    assert distance(middle, single) <= 1e-12


def test_decasteljau_point_collapse_length():
    pts = [Point(0, 0), Point(1, 1), Point(2, 0), Point(3, 2)]
    result = run_catalog("decasteljau_point", points=pts, t=0.5)
    assert len(point_sequence(result.final)) == 1


def test_exact_point_count_enforced():
    with pytest.raises(DimensionError):
        run_catalog("bezier_quadratic",
                    points=[Point(0, 0), Point(1, 1), Point(2, 0),
                            Point(3, 1)])
    with pytest.raises(DimensionError):
        run_catalog("chaikin", points=[Point(0, 0), Point(1, 1)])


def test_unknown_entry():
    with pytest.raises(DomainError):
        run_catalog("nope")


def test_weight_count_mismatch():
    with pytest.raises(DimensionError):
        run_catalog("decasteljau_edges",
                    points=[Point(0, 0), Point(2, 3), Point(4, 0)],
                    weights=[1.0, 2.0])


def test_out_of_range_t_warns_but_runs():
    with pytest.warns(UserWarning):
        run_catalog("decasteljau_point",
                    points=[Point(0, 0), Point(4, 0)], t=1.5)


def test_lane_riesenfeld_schedule_length():
    result = run_catalog("lane_riesenfeld", n=2, cycles=1,
                         collect_trace=True)
    # axiom + one insertion step + two averaging steps
    assert len(result.trace) == 4


def test_rational_run_matches_oracle():
    pts = [Point(0, 0), Point(2, 3), Point(4, 0)]
    weights = [1.0, 2.5, 1.0]
    got = run_catalog("decasteljau_edges", points=pts, t=0.5,
                      weights=weights).curve_point()
    want = rational_bezier_oracle(
        [WeightedPoint(p, w) for p, w in zip(pts, weights)], 0.5)
    assert distance(got, want) <= 1e-12


@given(st.integers(min_value=2, max_value=6),
       st.integers(min_value=0, max_value=100))
def test_decasteljau_matches_bernstein_property(count, ti):
    pts = [Point(float(i), float((i * 3) % 5)) for i in range(count)]
    t = ti / 100
    got = run_catalog("decasteljau_point", points=pts, t=t).curve_point()
    assert distance(got, bezier_oracle(pts, t)) <= 1e-10
