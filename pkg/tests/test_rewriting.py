import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsyscurves.errors import DefinitionError
from lsyscurves.geometry import Point, affine_combine
from lsyscurves.rewriting import (
    Module,
    ModuleString,
    PatternModule,
    Production,
    Schedule,
    Table,
    TemplateModule,
    derive,
    derive_step,
    interpret,
    match_at,
)


def word(*mods):
    return ModuleString([Module(sym, params) for sym, params in mods])


def circular_word(*mods):
    return ModuleString([Module(sym, params) for sym, params in mods],
                        circular=True)


def growth_table():
    """A(x): x<=2 -> A(2x+1); A(x): x>2 -> B(2x+1); A(w) < B(x,y) > A(z) -> A(w+x) A(y+z)."""
    p1 = Production(
        "p1", [PatternModule("A", ["x"])],
        [TemplateModule("A", [lambda e: 2 * e["x"] + 1])],
        condition=lambda e: e["x"] <= 2,
    )
    p2 = Production(
        "p2", [PatternModule("A", ["x"])],
        [TemplateModule("B", [lambda e: 2 * e["x"] + 1])],
        condition=lambda e: e["x"] > 2,
    )
    p3 = Production(
        "p3", [PatternModule("B", ["x", "y"])],
        [
            TemplateModule("A", [lambda e: e["w"] + e["x"]]),
            TemplateModule("A", [lambda e: e["y"] + e["z"]]),
        ],
        left=[PatternModule("A", ["w"])],
        right=[PatternModule("A", ["z"])],
    )
    return Table("main", [p1, p2, p3])


AXIOM = word(("A", (1.5,)), ("B", (2.0, 3.0)), ("A", (4.5,)), ("C", (1.0,)))


def test_derive_step_worked_example():
    out = derive_step(AXIOM, growth_table())
    assert [(m.symbol, m.params) for m in out.modules] == [
        ("A", (4.0,)), ("A", (3.5,)), ("A", (7.5,)), ("B", (10.0,)),
        ("C", (1.0,)),
    ]


def test_match_at_contexts_and_conditions():
    table = growth_table()
    p1, p2, p3 = table.productions
    b = match_at(AXIOM, 0, p1)
    assert b is not None and b.vars == {"x": 1.5} and b.length == 1
    assert match_at(AXIOM, 0, p2) is None  # condition fails
    b = match_at(AXIOM, 1, p3)
    assert b is not None
    assert b.vars == {"w": 1.5, "x": 2.0, "y": 3.0, "z": 4.5}
    assert match_at(AXIOM, 2, p1) is None  # condition x<=2 fails at 4.5
    assert match_at(AXIOM, 3, p1) is None  # symbol mismatch (C)


def test_match_arity_mismatch_is_silent():
    p = Production("p", [PatternModule("A", ["x", "y"])],
                   [TemplateModule("A", [lambda e: e["x"]])])
    assert match_at(AXIOM, 0, p) is None


def test_identity_fallback():
    table = Table("noop", [Production(
        "p", [PatternModule("Z", [])], [TemplateModule("Z", [])])])
    out = derive_step(AXIOM, table)
    assert out == AXIOM


def test_parallelism_reads_predecessor_only():
    # A -> B and B(x) with left context A -> C: the context test must see the
    # original A even though A itself is rewritten in the same step.
    s = word(("A", ()), ("B", (1.0,)))
    table = Table("t", [
        Production("pa", [PatternModule("A", [])],
                   [TemplateModule("B", [lambda e: 0.0])]),
        Production("pb", [PatternModule("B", ["x"])],
                   [TemplateModule("C", [lambda e: e["x"]])],
                   left=[PatternModule("A", [])]),
    ])
    out = derive_step(s, table)
    assert [m.symbol for m in out.modules] == ["B", "C"]


def test_pseudo_production_consumes_span():
    s = word(("A", (1.0,)), ("B", (2.0,)), ("C", (3.0,)))
    pseudo = Production(
        "p", [PatternModule("A", ["x"]), PatternModule("B", ["y"])],
        [TemplateModule("D", [lambda e: e["x"] + e["y"]])],
    )
    out = derive_step(s, Table("t", [pseudo]))
    assert [(m.symbol, m.params) for m in out.modules] == [
        ("D", (3.0,)), ("C", (3.0,))]
    assert pseudo.is_pseudo


def test_pseudo_predecessor_does_not_wrap_on_circular():
    s = circular_word(("B", (2.0,)), ("A", (1.0,)))
    pseudo = Production(
        "p", [PatternModule("A", ["x"]), PatternModule("B", ["y"])],
        [TemplateModule("D", [lambda e: e["x"] + e["y"]])],
    )
    assert match_at(s, 1, pseudo) is None


def test_context_wraps_on_circular_but_not_linear():
    prod = Production(
        "p", [PatternModule("A", ["x"])],
        [TemplateModule("A", [lambda e: e["x"]])],
        left=[PatternModule("B", ["y"])],
    )
    linear = word(("A", (1.0,)), ("B", (2.0,)))
    assert match_at(linear, 0, prod) is None
    ring = circular_word(("A", (1.0,)), ("B", (2.0,)))
    b = match_at(ring, 0, prod)
    assert b is not None and b.vars == {"x": 1.0, "y": 2.0}


def test_chaikin_step_on_circular_square():
    quarter = Production(
        "p", [PatternModule("P", ["v"])],
        [
            TemplateModule("P", [lambda e: affine_combine(
                [0.25, 0.75], [e["vl"], e["v"]])]),
            TemplateModule("P", [lambda e: affine_combine(
                [0.75, 0.25], [e["v"], e["vr"]])]),
        ],
        left=[PatternModule("P", ["vl"])],
        right=[PatternModule("P", ["vr"])],
    )
    square = circular_word(*[("P", (Point(*c),))
                             for c in [(0, 0), (4, 0), (4, 4), (0, 4)]])
    out = derive_step(square, Table("chaikin", [quarter]))
    got = [m.params[0] for m in out.modules]
    expected = [Point(*c) for c in
                [(1, 0), (3, 0), (4, 1), (4, 3), (3, 4), (1, 4), (0, 3),
                 (0, 1)]]
    # The two lists describe the same cyclic polygon.
    assert len(got) == 8
    shift = expected.index(got[0])
    assert got == expected[shift:] + expected[:shift]


@given(st.integers(min_value=3, max_value=8), st.integers(min_value=0, max_value=7))
def test_circular_rewrite_commutes_with_rotation(count, shift):
    prod = Production(
        "p", [PatternModule("P", ["v"])],
        [TemplateModule("P", [lambda e: affine_combine(
            [0.5, 0.5], [e["v"], e["vr"]])])],
        right=[PatternModule("P", ["vr"])],
    )
    table = Table("mid", [prod])
    pts = [Point(float(i), float(i * i % 7)) for i in range(count)]
    ring = circular_word(*[("P", (p,)) for p in pts])
    rotated = ring.rotate(shift % count)
    a = derive_step(ring, table).rotate(shift % count)
    b = derive_step(rotated, table)
    assert a == b


def test_first_match_wins_ordering():
    s = word(("A", (1.0,)))
    always = Production("p1", [PatternModule("A", ["x"])],
                        [TemplateModule("B", [])])
    shadowed = Production("p2", [PatternModule("A", ["x"])],
                          [TemplateModule("C", [])])
    out = derive_step(s, Table("t", [always, shadowed]))
    assert [m.symbol for m in out.modules] == ["B"]


def test_derive_schedule_and_trace():
    table = growth_table()
    sched = Schedule((("main", 2),), cycles=1)
    final, trace = derive(AXIOM, sched, {"main": table}, collect_trace=True)
    assert len(trace) == 3  # axiom + two steps
    assert trace[0] == (0, "axiom", AXIOM)
    assert trace[-1][2] == final
    assert derive(AXIOM, Schedule((("main", 1),)), {"main": table}) == trace[1][2]


def test_derive_zero_cycles_is_identity():
    sched = Schedule((("main", 3),), cycles=0)
    assert derive(AXIOM, sched, {"main": growth_table()}) == AXIOM


def test_derive_unknown_table():
    with pytest.raises(DefinitionError):
        derive(AXIOM, Schedule((("nope", 1),)), {"main": growth_table()})


def test_interpret_applies_passes_in_order():
    to_b = Table("h1", [Production("p", [PatternModule("A", ["x"])],
                                   [TemplateModule("B", [lambda e: e["x"]])])])
    to_c = Table("h2", [Production("p", [PatternModule("B", ["x"])],
                                   [TemplateModule("C", [lambda e: e["x"]])])])
    s = word(("A", (1.0,)))
    out = interpret(s, [to_b, to_c])
    assert [m.symbol for m in out.modules] == ["C"]
    # Single application per pass: the first pass output is not re-scanned.
    out = interpret(s, [to_b])
    assert [m.symbol for m in out.modules] == ["B"]


def test_production_validation():
    with pytest.raises(DefinitionError):
        Production("p", [])
    with pytest.raises(DefinitionError):
        Production("p", [PatternModule("A", ["x"]), PatternModule("B", ["x"])])
    with pytest.raises(DefinitionError):
        Table("t", [
            Production("p", [PatternModule("A", [])]),
            Production("p", [PatternModule("B", [])]),
        ])


def test_erasing_production():
    s = word(("A", (1.0,)), ("B", (2.0,)))
    erase = Production("p", [PatternModule("A", ["x"])], [])
    out = derive_step(s, Table("t", [erase]))
    assert [m.symbol for m in out.modules] == ["B"]
