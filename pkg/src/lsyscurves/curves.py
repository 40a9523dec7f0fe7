"""Built-in catalog of curve-generating L-systems plus independent oracles.

Every entry is constructed programmatically from Production objects with
closure parameters, deliberately bypassing the DSL, so the text files under
catalog/ exercise the parser against an independent construction of the same
systems.  The oracles (Bernstein form, weighted Bernstein ratio, Cox-de Boor
recursion) are closed-form cross-checks that never touch the rewriting
engine.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .dsl import LSystemDefinition, Name
from .errors import (
    DimensionError,
    DomainError,
    ExtractionError,
    StateError,
)
from .geometry import Point, WeightedPoint, affine_combine, lift_with_weight
from .rewriting import (
    Module,
    ModuleString,
    PatternModule,
    Production,
    Table,
    TemplateModule,
)

# Default control polygons, shared with the catalog/*.lsys twins.
SQUARE = [(0, 0), (4, 0), (4, 4), (0, 4)]
QUARTIC = [(0, 0), (2, 4), (5, 5), (8, 3), (9, 0)]
QUADRATIC = [(0, 0), (2, 3), (4, 0)]
CUBIC = [(0, 0), (1, 3), (3, 3), (4, 0)]

CATALOG_IDS = [
    "chaikin",
    "chaikin_edges",
    "lane_riesenfeld",
    "decasteljau_point",
    "decasteljau_point_left",
    "decasteljau_edges",
    "decasteljau_subdivision",
    "bezier_quadratic",
    "bezier_cubic_pseudo",
    "bezier_cubic_proper",
]


# ---------------------------------------------------------------------------
# Vertex states and polylines


def state_transition(s_l: int, s_r: int) -> int:
    """New-vertex state from its neighbours: min(s_l,1) + min(s_r,1)."""
    for s in (s_l, s_r):
        if s not in (0, 1, 2):
            raise StateError(f"vertex state must be 0, 1 or 2, got {s!r}")
    return min(s_l, 1) + min(s_r, 1)


@dataclass
class Polyline:
    segments: List[Tuple[Point, Point]] = field(default_factory=list)
    closed: bool = False

    def vertices(self) -> List[Point]:
        if not self.segments:
            return []
        verts = [self.segments[0][0]]
        for _, b in self.segments:
            verts.append(b)
        if self.closed and len(verts) > 1 and verts[-1] == verts[0]:
            verts.pop()
        return verts


def extract_polyline(interpreted: ModuleString) -> Polyline:
    """Collect drawable L(v_l, v_r) modules, in order."""
    segments = []
    for m in interpreted.modules:
        if m.symbol != "L":
            continue
        if len(m.params) != 2 or not all(isinstance(p, Point) for p in m.params):
            raise ExtractionError(
                f"L module must carry two points, got {m.params!r}"
            )
        segments.append((m.params[0], m.params[1]))
    return Polyline(segments, closed=interpreted.circular)


def point_sequence(s: ModuleString, point_params=None) -> List[Point]:
    """Positions of all point-carrying modules, in string order."""
    pts = []
    for m in s.modules:
        if point_params is not None:
            info = point_params.get(m.symbol)
            if info is None or len(m.params) != info[1]:
                continue
            pts.append(m.params[info[0]])
        else:
            for p in m.params:
                if isinstance(p, Point):
                    pts.append(p)
                    break
    return pts


def polyline_from_points(points: Sequence[Point], closed: bool) -> Polyline:
    segments = []
    n = len(points)
    if n >= 2:
        last = n if closed else n - 1
        for i in range(last):
            segments.append((points[i], points[(i + 1) % n]))
    return Polyline(segments, closed=closed)


# ---------------------------------------------------------------------------
# Analytic oracles (independent of the rewriting engine)


def _binomials(n: int) -> List[int]:
    row = [1]
    for _ in range(n):
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
    return row


def bezier_oracle(ctrl: Sequence[Point], t: float) -> Point:
    """Bernstein-form evaluation of the Bezier curve of the control polygon."""
    if len(ctrl) < 2:
        raise DomainError("need at least two control points")
    n = len(ctrl) - 1
    binom = _binomials(n)
    weights = [binom[i] * t**i * (1 - t) ** (n - i) for i in range(n + 1)]
    dim = ctrl[0].dim
    coords = [
        math.fsum(w * p.coords[k] for w, p in zip(weights, ctrl)) for k in range(dim)
    ]
    return Point(*coords)


def rational_bezier_oracle(ctrl: Sequence[WeightedPoint], t: float) -> Point:
    """Weighted Bernstein ratio for the rational Bezier curve."""
    if len(ctrl) < 2:
        raise DomainError("need at least two weighted control points")
    n = len(ctrl) - 1
    binom = _binomials(n)
    basis = [binom[i] * t**i * (1 - t) ** (n - i) for i in range(n + 1)]
    denom = math.fsum(b * wp.weight for b, wp in zip(basis, ctrl))
    coords = [
        math.fsum(b * wp.weight * wp.base.coords[k] for b, wp in zip(basis, ctrl))
        / denom
        for k in range(2)
    ]
    return Point(*coords)


def _cox_de_boor(x: float, k: int, i: int, knots: Sequence[float]) -> float:
    if k == 0:
        return 1.0 if knots[i] <= x < knots[i + 1] else 0.0
    c1 = 0.0
    if knots[i + k] != knots[i]:
        c1 = (x - knots[i]) / (knots[i + k] - knots[i]) * _cox_de_boor(x, k - 1, i, knots)
    c2 = 0.0
    if knots[i + k + 1] != knots[i + 1]:
        c2 = (
            (knots[i + k + 1] - x)
            / (knots[i + k + 1] - knots[i + 1])
            * _cox_de_boor(x, k - 1, i + 1, knots)
        )
    return c1 + c2


def bspline_oracle(
    ctrl: Sequence[Point], degree: int, u: float, closed: bool = True
) -> Point:
    """Uniform B-spline point via the Cox-de Boor recursion.

    Closed polygons use periodic uniform knots; the valid parameter range is
    [degree, degree + m) for m control points, one period of the curve.
    Open polygons use clamped uniform knots with range [0, m - degree).
    """
    m = len(ctrl)
    if degree < 1:
        raise DomainError("degree must be >= 1")
    if closed:
        if m < degree + 1:
            raise DomainError(f"need at least {degree + 1} control points")
        if not (degree <= u < degree + m):
            raise DomainError(f"u={u!r} outside [{degree}, {degree + m})")
        pts = [ctrl[j % m] for j in range(m + degree)]
        knots = list(range(m + 2 * degree + 1))
    else:
        if m < degree + 1:
            raise DomainError(f"need at least {degree + 1} control points")
        if not (0 <= u < m - degree):
            raise DomainError(f"u={u!r} outside [0, {m - degree})")
        pts = list(ctrl)
        knots = [0] * (degree + 1) + list(range(1, m - degree)) + [m - degree] * (
            degree + 1
        )
    dim = pts[0].dim
    coords = [0.0] * dim
    for i, p in enumerate(pts):
        b = _cox_de_boor(u, degree, i, knots)
        if b:
            for k in range(dim):
                coords[k] += b * p.coords[k]
    return Point(*coords)


# ---------------------------------------------------------------------------
# Convex hulls (for the corner-cutting containment property)


def convex_hull(points: Sequence[Point]) -> List[Point]:
    """Monotone-chain convex hull of 2-D points, counterclockwise."""
    pts = sorted({p.coords for p in points})
    if len(pts) <= 2:
        return [Point(*c) for c in pts]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [Point(*c) for c in lower[:-1] + upper[:-1]]


def hull_signed_distance(p: Point, hull: Sequence[Point]) -> float:
    """Largest outward distance of p from the hull; <= 0 means inside."""
    if not hull:
        raise DomainError("empty hull")
    if len(hull) == 1:
        return math.dist(p.coords, hull[0].coords)
    if len(hull) == 2:
        return _segment_distance(p, hull[0], hull[1])
    worst = -math.inf
    n = len(hull)
    for i in range(n):
        a = hull[i].coords
        b = hull[(i + 1) % n].coords
        ex, ey = b[0] - a[0], b[1] - a[1]
        length = math.hypot(ex, ey)
        if length == 0:
            continue
        # CCW hull: outward side of edge a->b is the negative cross side
        d = -((ex) * (p.coords[1] - a[1]) - (ey) * (p.coords[0] - a[0])) / length
        worst = max(worst, d)
    return worst


def _segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a.coords
    bx, by = b.coords
    px, py = p.coords
    ex, ey = bx - ax, by - ay
    denom = ex * ex + ey * ey
    if denom == 0:
        return math.hypot(px - ax, py - ay)
    s = max(0.0, min(1.0, ((px - ax) * ex + (py - ay) * ey) / denom))
    return math.hypot(px - (ax + s * ex), py - (ay + s * ey))


# ---------------------------------------------------------------------------
# Closure helpers for programmatic productions


def _var(name):
    return lambda env: env[name]


def _aff(*pairs):
    """Affine-combination closure over (coefficient, variable name) pairs.

    A coefficient is a float or a callable env -> float.
    """

    def value(env):
        coeffs = [c(env) if callable(c) else c for c, _ in pairs]
        pts = [env[v] for _, v in pairs]
        return affine_combine(coeffs, pts)

    return value


def _one_minus_t(env):
    return 1.0 - env["t"]


def _t(env):
    return env["t"]


def _pat(sym, *vars):
    return PatternModule(sym, vars)


def _tmpl(sym, *params):
    return TemplateModule(sym, params)


def _edge_split_quarters(reverse=False):
    # successor of the corner-cutting edge rule
    return [
        _tmpl("P", _aff((0.75, "vl"), (0.25, "vr"))),
        _tmpl("E"),
        _tmpl("P", _aff((0.25, "vl"), (0.75, "vr"))),
    ]


def _edge_pass(point_params: Dict[str, Tuple[int, int]], primed: bool) -> Table:
    """Interpretation pass turning each E into L(v_l, v_r)."""
    prods = []
    idx = 0
    for sa, (ia, aa) in point_params.items():
        for sb, (ib, ab) in point_params.items():
            la = sa + "'" if primed else sa
            lb = sb + "'" if primed else sb
            vars_a = tuple(f"a{j}" for j in range(aa))
            vars_b = tuple(f"b{j}" for j in range(ab))
            prods.append(
                Production(
                    f"hE{idx}",
                    strict=[_pat("E")],
                    left=[PatternModule(la, vars_a)],
                    right=[PatternModule(lb, vars_b)],
                    successor=[_tmpl("L", _var(f"a{ia}"), _var(f"b{ib}"))],
                )
            )
            idx += 1
    return Table("edge_interpretation", prods)


def _projection_pass(point_params: Dict[str, Tuple[int, int]]) -> Table:
    """Interpretation pass projecting 3-D point modules onto the z=1 plane."""
    from .geometry import project_to_plane

    prods = []
    for i, (sym, (idx, arity)) in enumerate(point_params.items()):
        vars = tuple(f"x{j}" for j in range(arity))
        params = []
        for j in range(arity):
            if j == idx:
                params.append(lambda env, _v=f"x{j}": project_to_plane(env[_v]))
            else:
                params.append(_var(f"x{j}"))
        prods.append(
            Production(
                f"hP{i}",
                strict=[PatternModule(sym, vars)],
                successor=[TemplateModule(sym + "'", params)],
            )
        )
    return Table("projection_interpretation", prods)


# ---------------------------------------------------------------------------
# Entry builders


def _as_points(raw) -> List[Point]:
    pts = []
    for p in raw:
        pts.append(p if isinstance(p, Point) else Point(*p))
    dims = {p.dim for p in pts}
    if len(dims) > 1:
        raise DimensionError("control points mix dimensions")
    return pts


def _polygon_axiom(points, circular, with_edges, states=None):
    modules = []
    for i, p in enumerate(points):
        params = [p] if states is None else [p, states[i]]
        modules.append(Module("P", params))
        if with_edges and (circular or i < len(points) - 1):
            modules.append(Module("E"))
    return ModuleString(modules, circular)


def _defn(name, axiom, tables, interpretation, schedule_items, cycles, consts,
          point_params):
    return LSystemDefinition(
        name=name,
        circular=axiom.circular,
        axiom=axiom,
        tables={t.name: t for t in tables},
        interpretation=list(interpretation),
        schedule_items=list(schedule_items),
        schedule_cycles=cycles,
        consts=consts,
        functions={},
        point_symbols={sym: info[0] for sym, info in point_params.items()},
    )


_P1 = {"P": (0, 1)}  # symbol -> (position index, arity)


def build_chaikin(points, cycles=4):
    axiom = _polygon_axiom(points, circular=True, with_edges=False)
    main = Table(
        "main",
        [
            Production(
                "p",
                strict=[_pat("P", "v")],
                left=[_pat("P", "vl")],
                right=[_pat("P", "vr")],
                successor=[
                    _tmpl("P", _aff((0.25, "vl"), (0.75, "v"))),
                    _tmpl("P", _aff((0.75, "v"), (0.25, "vr"))),
                ],
            )
        ],
    )
    return _defn(
        "chaikin", axiom, [main], [], [("main", 1)], Name(id="cycles"),
        {"cycles": float(cycles)}, _P1,
    )


def build_chaikin_edges(points, cycles=4):
    axiom = _polygon_axiom(points, circular=True, with_edges=True)
    main = Table(
        "main",
        [
            Production(
                "p1",
                strict=[_pat("E")],
                left=[_pat("P", "vl")],
                right=[_pat("P", "vr")],
                successor=_edge_split_quarters(),
            ),
            Production("p2", strict=[_pat("P", "v")], successor=[_tmpl("E")]),
        ],
    )
    return _defn(
        "chaikin_edges", axiom, [main], [_edge_pass(_P1, primed=False)],
        [("main", 1)], Name(id="cycles"), {"cycles": float(cycles)}, _P1,
    )


def build_lane_riesenfeld(points, n=1, cycles=4):
    axiom = _polygon_axiom(points, circular=True, with_edges=True)
    mid = _aff((0.5, "vl"), (0.5, "vr"))
    table_p = Table(
        "p",
        [
            Production(
                "p",
                strict=[_pat("E")],
                left=[_pat("P", "vl")],
                right=[_pat("P", "vr")],
                successor=[_tmpl("E"), _tmpl("P", mid), _tmpl("E")],
            )
        ],
    )
    table_q = Table(
        "q",
        [
            Production(
                "q1",
                strict=[_pat("E")],
                left=[_pat("P", "vl")],
                right=[_pat("P", "vr")],
                successor=[_tmpl("P", mid)],
            ),
            Production("q2", strict=[_pat("P", "v")], successor=[_tmpl("E")]),
        ],
    )
    return _defn(
        "lane_riesenfeld", axiom, [table_p, table_q],
        [_edge_pass(_P1, primed=False)],
        [("p", 1), ("q", Name(id="n"))], Name(id="cycles"),
        {"n": float(n), "cycles": float(cycles)}, _P1,
    )


def build_decasteljau_point(points, t=0.5, steps=None):
    axiom = _polygon_axiom(points, circular=False, with_edges=False)
    if steps is None:
        steps = len(points) - 1
    main = Table(
        "main",
        [
            Production(
                "p1",
                strict=[_pat("P", "v")],
                right=[_pat("P", "vr")],
                successor=[_tmpl("P", _aff((_one_minus_t, "v"), (_t, "vr")))],
            ),
            Production("p2", strict=[_pat("P", "v")], successor=[]),
        ],
    )
    return _defn(
        "decasteljau_point", axiom, [main], [],
        [("main", Name(id="steps"))], 1,
        {"t": float(t), "steps": float(steps)}, _P1,
    )


def build_decasteljau_point_left(points, t=0.5, steps=None):
    axiom = _polygon_axiom(points, circular=False, with_edges=False)
    if steps is None:
        steps = len(points) - 1
    main = Table(
        "main",
        [
            Production(
                "p1",
                strict=[_pat("P", "v")],
                left=[_pat("P", "vl")],
                successor=[_tmpl("P", _aff((_one_minus_t, "vl"), (_t, "v")))],
            ),
            Production("p2", strict=[_pat("P", "v")], successor=[]),
        ],
    )
    return _defn(
        "decasteljau_point_left", axiom, [main], [],
        [("main", Name(id="steps"))], 1,
        {"t": float(t), "steps": float(steps)}, _P1,
    )


def build_decasteljau_edges(points, t=0.5, steps=None):
    axiom = _polygon_axiom(points, circular=False, with_edges=True)
    if steps is None:
        steps = len(points) - 1
    main = Table(
        "main",
        [
            Production(
                "p1",
                strict=[_pat("E")],
                left=[_pat("P", "vl")],
                right=[_pat("P", "vr")],
                successor=[_tmpl("P", _aff((_one_minus_t, "vl"), (_t, "vr")))],
            ),
            Production(
                "p2",
                strict=[_pat("P", "v")],
                left=[_pat("E")],
                right=[_pat("E")],
                successor=[_tmpl("E")],
            ),
            Production("p3", strict=[_pat("P", "v")], successor=[]),
        ],
    )
    return _defn(
        "decasteljau_edges", axiom, [main], [_edge_pass(_P1, primed=False)],
        [("main", Name(id="steps"))], 1,
        {"t": float(t), "steps": float(steps)}, _P1,
    )


_P2 = {"P": (0, 2)}


def _state_fn(env):
    return float(state_transition(int(env["sl"]), int(env["sr"])))


def build_decasteljau_subdivision(points, t=0.5, cycles=4):
    states = [2.0] + [0.0] * (len(points) - 2) + [2.0]
    axiom = _polygon_axiom(points, circular=False, with_edges=True, states=states)
    sub = Table(
        "sub",
        [
            Production(
                "p1",
                strict=[_pat("E")],
                left=[_pat("P", "vl", "sl")],
                right=[_pat("P", "vr", "sr")],
                successor=[
                    _tmpl("P", _aff((_one_minus_t, "vl"), (_t, "vr")), _state_fn)
                ],
            ),
            Production(
                "p2",
                strict=[_pat("P", "v", "s")],
                left=[_pat("E")],
                right=[_pat("E")],
                condition=lambda env: env["s"] == 0,
                successor=[_tmpl("E")],
            ),
            Production(
                "p3",
                strict=[_pat("P", "v", "s")],
                left=[_pat("E")],
                right=[_pat("E")],
                condition=lambda env: env["s"] != 0,
                successor=[_tmpl("I"), _tmpl("P", _var("v"), _var("s")), _tmpl("I")],
            ),
            Production(
                "p4",
                strict=[_pat("P", "v", "s")],
                right=[_pat("E")],
                condition=lambda env: env["s"] != 0,
                successor=[_tmpl("P", _var("v"), _var("s")), _tmpl("I")],
            ),
            Production(
                "p5",
                strict=[_pat("P", "v", "s")],
                left=[_pat("E")],
                condition=lambda env: env["s"] != 0,
                successor=[_tmpl("I"), _tmpl("P", _var("v"), _var("s"))],
            ),
        ],
    )
    reinit = Table(
        "reinit",
        [
            Production(
                "q1",
                strict=[_pat("P", "v", "s")],
                condition=lambda env: env["s"] == 1,
                successor=[_tmpl("P", _var("v"), lambda env: 0.0)],
            ),
            Production("q2", strict=[_pat("I")], successor=[_tmpl("E")]),
        ],
    )
    return _defn(
        "decasteljau_subdivision", axiom, [sub, reinit],
        [_edge_pass(_P2, primed=False)],
        [("sub", Name(id="n")), ("reinit", 1)], Name(id="cycles"),
        {"t": float(t), "n": float(len(points) - 1), "cycles": float(cycles)}, _P2,
    )


_PQ = {"P": (0, 1), "Q": (0, 1)}


def build_bezier_quadratic(points, cycles=4):
    p1, p2, p3 = points
    axiom = ModuleString(
        [
            Module("P", [p1]),
            Module("E"),
            Module("Q", [p2]),
            Module("E"),
            Module("P", [p3]),
        ],
        circular=False,
    )
    main = Table(
        "main",
        [
            Production(
                "p",
                strict=[_pat("Q", "v")],
                left=[_pat("P", "vl"), _pat("E")],
                right=[_pat("E"), _pat("P", "vr")],
                successor=[
                    _tmpl("Q", _aff((0.5, "vl"), (0.5, "v"))),
                    _tmpl("E"),
                    _tmpl("P", _aff((0.25, "vl"), (0.5, "v"), (0.25, "vr"))),
                    _tmpl("E"),
                    _tmpl("Q", _aff((0.5, "v"), (0.5, "vr"))),
                ],
            )
        ],
    )
    return _defn(
        "bezier_quadratic", axiom, [main], [_edge_pass(_PQ, primed=False)],
        [("main", 1)], Name(id="cycles"), {"cycles": float(cycles)}, _PQ,
    )


def _cubic_axiom(points):
    p1, p2, p3, p4 = points
    return ModuleString(
        [
            Module("P", [p1]),
            Module("E"),
            Module("Q", [p2]),
            Module("E"),
            Module("Q", [p3]),
            Module("E"),
            Module("P", [p4]),
        ],
        circular=False,
    )


_CUBIC_SUCC = [
    ("Q", _aff((0.5, "vll"), (0.5, "vl"))),
    ("E", None),
    ("Q", _aff((0.25, "vll"), (0.5, "vl"), (0.25, "vr"))),
    ("E", None),
    ("P", _aff((0.125, "vll"), (0.375, "vl"), (0.375, "vr"), (0.125, "vrr"))),
    ("E", None),
    ("Q", _aff((0.25, "vl"), (0.5, "vr"), (0.25, "vrr"))),
    ("E", None),
    ("Q", _aff((0.5, "vr"), (0.5, "vrr"))),
]


def build_bezier_cubic_pseudo(points, cycles=4):
    axiom = _cubic_axiom(points)
    succ = [
        TemplateModule(sym, (fn,) if fn else ()) for sym, fn in _CUBIC_SUCC
    ]
    main = Table(
        "main",
        [
            Production(
                "p",
                strict=[_pat("Q", "vl"), _pat("E"), _pat("Q", "vr")],
                left=[_pat("P", "vll"), _pat("E")],
                right=[_pat("E"), _pat("P", "vrr")],
                successor=succ,
            )
        ],
    )
    return _defn(
        "bezier_cubic_pseudo", axiom, [main], [_edge_pass(_PQ, primed=False)],
        [("main", 1)], Name(id="cycles"), {"cycles": float(cycles)}, _PQ,
    )


def build_bezier_cubic_proper(points, cycles=4):
    axiom = _cubic_axiom(points)
    main = Table(
        "main",
        [
            Production(
                "p1",
                strict=[_pat("Q", "vl")],
                left=[_pat("P", "vll"), _pat("E")],
                right=[_pat("E"), _pat("Q", "vr"), _pat("E"), _pat("P", "vrr")],
                successor=[
                    _tmpl("Q", _aff((0.5, "vll"), (0.5, "vl"))),
                    _tmpl("E"),
                    _tmpl("Q", _aff((0.25, "vll"), (0.5, "vl"), (0.25, "vr"))),
                ],
            ),
            Production(
                "p2",
                strict=[_pat("E")],
                left=[_pat("P", "vll"), _pat("E"), _pat("Q", "vl")],
                right=[_pat("Q", "vr"), _pat("E"), _pat("P", "vrr")],
                successor=[
                    _tmpl("E"),
                    _tmpl(
                        "P",
                        _aff(
                            (0.125, "vll"),
                            (0.375, "vl"),
                            (0.375, "vr"),
                            (0.125, "vrr"),
                        ),
                    ),
                    _tmpl("E"),
                ],
            ),
            Production(
                "p3",
                strict=[_pat("Q", "vr")],
                left=[_pat("P", "vll"), _pat("E"), _pat("Q", "vl"), _pat("E")],
                right=[_pat("E"), _pat("P", "vrr")],
                successor=[
                    _tmpl("Q", _aff((0.25, "vl"), (0.5, "vr"), (0.25, "vrr"))),
                    _tmpl("E"),
                    _tmpl("Q", _aff((0.5, "vr"), (0.5, "vrr"))),
                ],
            ),
        ],
    )
    return _defn(
        "bezier_cubic_proper", axiom, [main], [_edge_pass(_PQ, primed=False)],
        [("main", 1)], Name(id="cycles"), {"cycles": float(cycles)}, _PQ,
    )


# ---------------------------------------------------------------------------
# Catalog registry


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    summary: str
    closed: bool
    has_edges: bool
    point_params: Dict[str, Tuple[int, int]]
    default_points: List[Tuple[float, float]]
    min_points: int
    exact_points: Optional[int]
    params: Tuple[str, ...]  # accepted run parameters
    builder: callable

    def build(self, points=None, **kwargs) -> LSystemDefinition:
        pts = _as_points(points if points is not None else self.default_points)
        if self.exact_points is not None and len(pts) != self.exact_points:
            raise DimensionError(
                f"{self.id} requires exactly {self.exact_points} control points, "
                f"got {len(pts)}"
            )
        if len(pts) < self.min_points:
            raise DimensionError(
                f"{self.id} requires at least {self.min_points} control points, "
                f"got {len(pts)}"
            )
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return self.builder(pts, **kwargs)


CATALOG: Dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    CATALOG[entry.id] = entry


_register(CatalogEntry(
    "chaikin", "corner cutting on a closed polygon (vertices only)",
    closed=True, has_edges=False, point_params=_P1, default_points=SQUARE,
    min_points=3, exact_points=None, params=("cycles",), builder=build_chaikin,
))
_register(CatalogEntry(
    "chaikin_edges", "corner cutting on a closed vertex/edge polygon",
    closed=True, has_edges=True, point_params=_P1, default_points=SQUARE,
    min_points=3, exact_points=None, params=("cycles",),
    builder=build_chaikin_edges,
))
_register(CatalogEntry(
    "lane_riesenfeld", "midpoint insertion plus n rounds of averaging",
    closed=True, has_edges=True, point_params=_P1, default_points=SQUARE,
    min_points=3, exact_points=None, params=("n", "cycles"),
    builder=build_lane_riesenfeld,
))
_register(CatalogEntry(
    "decasteljau_point", "repeated interpolation collapsing to one curve point",
    closed=False, has_edges=False, point_params=_P1, default_points=QUARTIC,
    min_points=2, exact_points=None, params=("t", "steps"),
    builder=build_decasteljau_point,
))
_register(CatalogEntry(
    "decasteljau_point_left", "left-context variant of the point collapse",
    closed=False, has_edges=False, point_params=_P1, default_points=QUARTIC,
    min_points=2, exact_points=None, params=("t", "steps"),
    builder=build_decasteljau_point_left,
))
_register(CatalogEntry(
    "decasteljau_edges", "cell-complex variant with explicit edges",
    closed=False, has_edges=True, point_params=_P1, default_points=QUARTIC,
    min_points=2, exact_points=None, params=("t", "steps"),
    builder=build_decasteljau_edges,
))
_register(CatalogEntry(
    "decasteljau_subdivision", "stateful subdivision into two half polygons",
    closed=False, has_edges=True, point_params=_P2, default_points=QUARTIC,
    min_points=2, exact_points=None, params=("t", "cycles"),
    builder=build_decasteljau_subdivision,
))
_register(CatalogEntry(
    "bezier_quadratic", "fixed-degree quadratic subdivision",
    closed=False, has_edges=True, point_params=_PQ, default_points=QUADRATIC,
    min_points=3, exact_points=3, params=("cycles",),
    builder=build_bezier_quadratic,
))
_register(CatalogEntry(
    "bezier_cubic_pseudo", "fixed-degree cubic subdivision (pseudo-L-system)",
    closed=False, has_edges=True, point_params=_PQ, default_points=CUBIC,
    min_points=4, exact_points=4, params=("cycles",),
    builder=build_bezier_cubic_pseudo,
))
_register(CatalogEntry(
    "bezier_cubic_proper", "fixed-degree cubic subdivision (proper L-system)",
    closed=False, has_edges=True, point_params=_PQ, default_points=CUBIC,
    min_points=4, exact_points=4, params=("cycles",),
    builder=build_bezier_cubic_proper,
))


# ---------------------------------------------------------------------------
# Running entries


@dataclass
class RunResult:
    definition: LSystemDefinition
    final: ModuleString
    interpreted: ModuleString
    polyline: Polyline
    trace: Optional[list] = None

    def curve_point(self) -> Point:
        """The single curve point of a fully collapsed point-variant run."""
        pts = point_sequence(self.interpreted)
        if len(pts) != 1:
            raise ExtractionError(
                f"expected a single point module, found {len(pts)}"
            )
        return pts[0]


def run_catalog(
    entry,
    points=None,
    t=None,
    n=None,
    cycles=None,
    steps=None,
    weights=None,
    collect_trace=False,
) -> RunResult:
    """Build an entry, run its schedule, interpret, and extract the polyline."""
    if isinstance(entry, str):
        if entry not in CATALOG:
            raise DomainError(f"unknown catalog entry {entry!r}")
        entry = CATALOG[entry]
    if t is not None and not (0.0 <= t <= 1.0):
        _warnings.warn(f"t={t} outside [0, 1]; the construction still applies")
    pts = _as_points(points if points is not None else entry.default_points)

    rational = weights is not None
    if rational:
        if len(weights) != len(pts):
            raise DimensionError(
                f"{len(weights)} weights for {len(pts)} control points"
            )
        pts = [lift_with_weight(WeightedPoint(p, w)) for p, w in zip(pts, weights)]

    kwargs = {}
    if t is not None and "t" in entry.params:
        kwargs["t"] = t
    if n is not None and "n" in entry.params:
        kwargs["n"] = n
    if cycles is not None and "cycles" in entry.params:
        kwargs["cycles"] = cycles
    if steps is not None and "steps" in entry.params:
        kwargs["steps"] = steps
    defn = entry.build(points=pts, **kwargs)

    if rational:
        passes = [_projection_pass(entry.point_params)]
        if entry.has_edges:
            passes.append(_edge_pass(entry.point_params, primed=True))
        defn.interpretation = passes

    if collect_trace:
        final, trace = defn.derive(collect_trace=True)
    else:
        final, trace = defn.derive(), None
    interpreted = defn.interpret(final)
    polyline = extract_polyline(interpreted)
    if not polyline.segments and not entry.has_edges:
        seq = point_sequence(interpreted)
        if len(seq) >= 2:
            polyline = polyline_from_points(seq, closed=entry.closed)
    return RunResult(defn, final, interpreted, polyline, trace)
