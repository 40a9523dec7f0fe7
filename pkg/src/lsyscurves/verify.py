"""Oracle-equivalence property suite shared by the CLI and the test suite.

Each property runs the rewriting engine on catalog systems and cross-checks
the result against an independent closed-form oracle or an equivalent
construction.  Properties report their worst observed error so regressions
are visible even while they still pass.

Polygons for the exact-equality properties use dyadic coordinates (integers
divided by 8): every affine combination in those systems scales by powers of
two, so both construction routes produce bit-identical floats and equality
can be asserted exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, List, Optional

from . import dsl
from .curves import (
    CATALOG,
    CATALOG_IDS,
    QUADRATIC,
    SQUARE,
    bezier_oracle,
    bspline_oracle,
    convex_hull,
    hull_signed_distance,
    point_sequence,
    rational_bezier_oracle,
    run_catalog,
)
from .errors import LsysError
from .geometry import Point, WeightedPoint, distance

DEFAULT_SEED = 20250823


@dataclass
class PropertyResult:
    name: str
    passed: bool
    max_error: Optional[float]
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        err = "" if self.max_error is None else f"  max error {self.max_error:.3e}"
        detail = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name}{err}{detail}"


def _random_polygon(rng, count, lo=-10.0, hi=10.0) -> List[Point]:
    return [Point(rng.uniform(lo, hi), rng.uniform(lo, hi)) for _ in range(count)]


def _dyadic_polygon(rng, count) -> List[Point]:
    return [
        Point(rng.randrange(-64, 65) / 8, rng.randrange(-64, 65) / 8)
        for _ in range(count)
    ]


def check_decasteljau_bernstein(seed=DEFAULT_SEED, **_) -> PropertyResult:
    rng = random.Random(seed)
    entry = CATALOG["decasteljau_point"]
    worst = 0.0
    for degree in range(1, 9):
        for _ in range(20):
            pts = _random_polygon(rng, degree + 1)
            for i in range(101):
                t = i / 100
                p = run_catalog(entry, points=pts, t=t).curve_point()
                worst = max(worst, distance(p, bezier_oracle(pts, t)))
    return PropertyResult(
        "decasteljau_bernstein", worst <= 1e-10, worst,
        "degrees 1..8, 20 polygons each, 101-point t grid",
    )


def check_variant_equivalence(seed=DEFAULT_SEED, **_) -> PropertyResult:
    rng = random.Random(seed)
    worst = 0.0
    for count in (2, 3, 5, 7):
        pts = _random_polygon(rng, count)
        for t in (0.0, 0.25, 0.5, 0.8, 1.0):
            a = run_catalog("decasteljau_point", points=pts, t=t).curve_point()
            b = run_catalog("decasteljau_point_left", points=pts, t=t).curve_point()
            c = run_catalog("decasteljau_edges", points=pts, t=t).curve_point()
            worst = max(worst, distance(a, b), distance(a, c))
    return PropertyResult(
        "variant_equivalence", worst <= 1e-12, worst,
        "right-, left- and edge-based point collapse agree",
    )


def check_cubic_pseudo_proper(seed=DEFAULT_SEED, **_) -> PropertyResult:
    rng = random.Random(seed)
    worst = 0.0
    structural = True
    for _ in range(5):
        pts = _random_polygon(rng, 4)
        for cycles in (1, 2, 3):
            a = run_catalog("bezier_cubic_pseudo", points=pts, cycles=cycles).final
            b = run_catalog("bezier_cubic_proper", points=pts, cycles=cycles).final
            if [m.symbol for m in a] != [m.symbol for m in b]:
                structural = False
                continue
            for ma, mb in zip(a, b):
                if ma.params:
                    worst = max(worst, distance(ma.params[0], mb.params[0]))
    passed = structural and worst <= 1e-12
    return PropertyResult(
        "cubic_pseudo_proper", passed, worst,
        "pseudo and proper cubic systems emit identical strings",
    )


def check_chaikin_lane_riesenfeld(seed=DEFAULT_SEED, **_) -> PropertyResult:
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(10):
        pts = _dyadic_polygon(rng, rng.randrange(3, 9))
        for cycles in (1, 2, 3):
            a = run_catalog("chaikin_edges", points=pts, cycles=cycles).final
            b = run_catalog("lane_riesenfeld", points=pts, n=1, cycles=cycles).final
            if a != b:
                mismatches += 1
    return PropertyResult(
        "chaikin_lane_riesenfeld", mismatches == 0, float(mismatches),
        "exact string equality on dyadic polygons, cycles 1..3",
    )


def _min_distance_to_curve(p: Point, curve: Callable[[float], Point], lo, hi, samples):
    best_u, best_d = lo, math.inf
    step = (hi - lo) / samples
    for i in range(samples):
        u = lo + i * step
        d = distance(p, curve(u))
        if d < best_d:
            best_d, best_u = d, u
    a, b = best_u - step, best_u + step
    for _ in range(40):
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        if distance(p, curve(max(lo, min(m1, hi - 1e-12)))) < distance(
            p, curve(max(lo, min(m2, hi - 1e-12)))
        ):
            b = m2
        else:
            a = m1
    u = max(lo, min((a + b) / 2, hi - 1e-12))
    return min(best_d, distance(p, curve(u)))


def check_bspline_convergence(**_) -> PropertyResult:
    square = [Point(*c) for c in SQUARE]
    diag = math.sqrt(32.0)
    worst_final = 0.0
    monotone = True
    for degree in (2, 3):
        n = degree - 1
        m = len(square)

        def curve(u, _d=degree):
            return bspline_oracle(square, _d, u, closed=True)

        lo, hi = degree, degree + m
        samples = [curve(lo + (hi - lo) * i / 512) for i in range(512)]
        errors = []
        for cycles in range(1, 6):
            final = run_catalog(
                "lane_riesenfeld", points=square, n=n, cycles=cycles
            ).final
            verts = point_sequence(final)
            err = 0.0
            for v in verts:
                coarse = min(distance(v, s) for s in samples)
                refined = _min_distance_to_curve(v, curve, lo, hi, 256)
                err = max(err, min(coarse, refined))
            errors.append(err)
        monotone = monotone and all(
            errors[i + 1] < errors[i] for i in range(len(errors) - 1)
        )
        worst_final = max(worst_final, errors[-1])
    passed = monotone and worst_final <= 1e-3 * diag
    return PropertyResult(
        "bspline_convergence", passed, worst_final,
        "degrees 2 and 3 on the closed square, 5 refinement cycles",
    )


def check_subdivision_consistency(seed=DEFAULT_SEED, **_) -> PropertyResult:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(5):
        pts = _random_polygon(rng, 5)
        for t in (0.3, 0.5, 0.8):
            final = run_catalog(
                "decasteljau_subdivision", points=pts, t=t, cycles=1
            ).final
            verts = point_sequence(final, {"P": (0, 2)})
            left = verts[: len(pts)]
            for i in range(21):
                u = i / 20
                worst = max(
                    worst,
                    distance(bezier_oracle(left, u), bezier_oracle(pts, t * u)),
                )
    return PropertyResult(
        "subdivision_consistency", worst <= 1e-10, worst,
        "left half polygon reparameterizes the original curve",
    )


def check_fixed_degree_shortcut(seed=DEFAULT_SEED, **_) -> PropertyResult:
    rng = random.Random(seed)
    worst = 0.0
    polygons = [[Point(*c) for c in QUADRATIC]] + [
        _random_polygon(rng, 3) for _ in range(4)
    ]
    for pts in polygons:
        a = run_catalog("bezier_quadratic", points=pts, cycles=1).final
        b = run_catalog("decasteljau_subdivision", points=pts, t=0.5, cycles=1).final
        va = point_sequence(a, {"P": (0, 1), "Q": (0, 1)})
        vb = point_sequence(b, {"P": (0, 2)})
        if len(va) != len(vb):
            return PropertyResult(
                "fixed_degree_shortcut", False, None, "vertex counts differ"
            )
        for p, q in zip(va, vb):
            worst = max(worst, distance(p, q))
    return PropertyResult(
        "fixed_degree_shortcut", worst <= 1e-12, worst,
        "quadratic one-step system matches a generic cycle at t=1/2",
    )


def check_rational_weights(**_) -> PropertyResult:
    pts = [Point(*c) for c in QUADRATIC]
    interior = pts[1]
    distances = []
    worst = 0.0
    for w in (0.5, 1.0, 2.5):
        r = run_catalog(
            "decasteljau_edges", points=pts, t=0.5, weights=[1.0, w, 1.0]
        )
        p = r.curve_point()
        oracle = rational_bezier_oracle(
            [WeightedPoint(pts[0], 1.0), WeightedPoint(interior, w), WeightedPoint(pts[2], 1.0)],
            0.5,
        )
        worst = max(worst, distance(p, oracle))
        distances.append(distance(p, interior))
    plain = run_catalog("decasteljau_edges", points=pts, t=0.5).curve_point()
    unit = run_catalog(
        "decasteljau_edges", points=pts, t=0.5, weights=[1.0, 1.0, 1.0]
    ).curve_point()
    worst = max(worst, distance(plain, unit))
    monotone = distances[0] > distances[1] > distances[2]
    passed = monotone and worst <= 1e-12
    return PropertyResult(
        "rational_weights", passed, worst,
        "higher interior weight pulls the midpoint toward the control point",
    )


def check_corner_cutting_containment(seed=DEFAULT_SEED, **_) -> PropertyResult:
    rng = random.Random(seed)
    worst = -math.inf
    for _ in range(10):
        pts = _random_polygon(rng, rng.randrange(3, 9))
        result = run_catalog("chaikin", points=pts, cycles=4, collect_trace=True)
        polygons = [point_sequence(s) for _, _, s in result.trace]
        for prev, cur in zip(polygons, polygons[1:]):
            hull = convex_hull(prev)
            for p in cur:
                worst = max(worst, hull_signed_distance(p, hull))
    return PropertyResult(
        "corner_cutting_containment", worst <= 1e-12, max(worst, 0.0),
        "every corner-cut polygon stays inside the previous hull",
    )


def default_catalog_dir() -> Path:
    return Path(resources.files("lsyscurves") / "catalog")


def check_dsl_roundtrip(catalog_dir=None, **_) -> PropertyResult:
    directory = Path(catalog_dir) if catalog_dir else default_catalog_dir()
    for cid in CATALOG_IDS:
        path = directory / f"{cid}.lsys"
        try:
            defn = dsl.parse_file(path)
        except (LsysError, OSError) as exc:
            return PropertyResult("dsl_roundtrip", False, None, f"{cid}: {exc}")
        if defn.warnings:
            return PropertyResult(
                "dsl_roundtrip", False, None, f"{cid}: {defn.warnings[0]}"
            )
        text = dsl.format_definition(defn)
        if dsl.format_definition(dsl.parse(text)) != text:
            return PropertyResult(
                "dsl_roundtrip", False, None, f"{cid}: format round-trip differs"
            )
        parsed_final = defn.derive()
        parsed_interp = defn.interpret(parsed_final)
        builtin = run_catalog(cid)
        if parsed_final != builtin.final or parsed_interp != builtin.interpreted:
            return PropertyResult(
                "dsl_roundtrip", False, None,
                f"{cid}: parsed file and built-in derivations differ",
            )
    return PropertyResult(
        "dsl_roundtrip", True, None,
        "all 10 catalog files parse cleanly and match the built-ins exactly",
    )


ALL_CHECKS = [
    check_decasteljau_bernstein,
    check_variant_equivalence,
    check_cubic_pseudo_proper,
    check_chaikin_lane_riesenfeld,
    check_bspline_convergence,
    check_subdivision_consistency,
    check_fixed_degree_shortcut,
    check_rational_weights,
    check_corner_cutting_containment,
    check_dsl_roundtrip,
]


def run_all(only=None, seed=DEFAULT_SEED, catalog_dir=None) -> List[PropertyResult]:
    results = []
    for check in ALL_CHECKS:
        name = check.__name__.removeprefix("check_")
        if only and only not in name:
            continue
        results.append(check(seed=seed, catalog_dir=catalog_dir))
    return results
