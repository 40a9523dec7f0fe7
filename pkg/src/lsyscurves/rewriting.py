"""Parametric context-sensitive parallel rewriting on module strings.

A module is a symbol plus a tuple of parameter values (floats or Points).
Productions match a strict predecessor (possibly spanning several modules)
with optional left/right context words and a guard condition; all matches
in a derivation step read the untouched predecessor string, so rewriting is
genuinely parallel.  Strings may be linear or circular; on circular strings
context lookups wrap around, while a multi-module strict predecessor must
fit without wrapping (the scan origin is index 0 of the stored order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DefinitionError
from .geometry import Point

ParamValue = Union[float, Point]
Env = Mapping[str, ParamValue]


class Module:
    """One letter of a parametric word: a symbol with ordered parameters."""

    __slots__ = ("symbol", "params")

    def __init__(self, symbol: str, params: Sequence[ParamValue] = ()):
        self.symbol = symbol
        self.params = tuple(params)

    def __eq__(self, other):
        return (
            isinstance(other, Module)
            and self.symbol == other.symbol
            and self.params == other.params
        )

    def __hash__(self):
        return hash((self.symbol, self.params))

    def __repr__(self):
        return f"Module({self.symbol!r}, {self.params!r})"


class ModuleString:
    """A linear or circular sequence of modules."""

    __slots__ = ("modules", "circular")

    def __init__(self, modules: Sequence[Module], circular: bool = False):
        self.modules = tuple(modules)
        self.circular = bool(circular)

    def __len__(self):
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __getitem__(self, i):
        return self.modules[i]

    def __eq__(self, other):
        return (
            isinstance(other, ModuleString)
            and self.modules == other.modules
            and self.circular == other.circular
        )

    def __repr__(self):
        topo = "circular" if self.circular else "linear"
        return f"ModuleString({list(self.modules)!r}, {topo})"

    def rotate(self, r: int) -> "ModuleString":
        """Rotate a circular string so old index r becomes index 0."""
        if not self.circular:
            raise DefinitionError("rotate only applies to circular strings")
        n = len(self.modules)
        r %= n
        return ModuleString(self.modules[r:] + self.modules[:r], circular=True)


class PatternModule:
    """A pattern letter: matches a module with the same symbol and arity."""

    __slots__ = ("symbol", "vars")

    def __init__(self, symbol: str, vars: Sequence[str] = ()):
        self.symbol = symbol
        self.vars = tuple(vars)

    def __repr__(self):
        return f"PatternModule({self.symbol!r}, {self.vars!r})"


class TemplateModule:
    """A successor letter whose parameters are evaluated against a binding."""

    __slots__ = ("symbol", "params")

    def __init__(self, symbol: str, params: Sequence[Callable[[Env], ParamValue]] = ()):
        self.symbol = symbol
        self.params = tuple(params)

    def __repr__(self):
        return f"TemplateModule({self.symbol!r}, <{len(self.params)} params>)"


@dataclass(frozen=True)
class Binding:
    """Variable values bound by a successful match, plus the matched span."""

    vars: dict
    start: int
    length: int


class Production:
    """left context < strict predecessor > right context : condition -> successor."""

    __slots__ = ("label", "left", "strict", "right", "condition", "successor")

    def __init__(
        self,
        label: str,
        strict: Sequence[PatternModule],
        successor: Sequence[TemplateModule] = (),
        left: Sequence[PatternModule] = (),
        right: Sequence[PatternModule] = (),
        condition: Optional[Callable[[Env], bool]] = None,
    ):
        if not strict:
            raise DefinitionError(f"production {label}: empty strict predecessor")
        self.label = label
        self.left = tuple(left)
        self.strict = tuple(strict)
        self.right = tuple(right)
        self.condition = condition
        self.successor = tuple(successor)
        seen = set()
        for pat in self.left + self.strict + self.right:
            for v in pat.vars:
                if v in seen:
                    raise DefinitionError(
                        f"production {label}: variable {v!r} bound more than once"
                    )
                seen.add(v)

    @property
    def is_pseudo(self) -> bool:
        return len(self.strict) > 1

    def __repr__(self):
        return f"Production({self.label!r})"


class Table:
    """An ordered, uniquely-labelled list of productions."""

    __slots__ = ("name", "productions")

    def __init__(self, name: str, productions: Sequence[Production]):
        self.name = name
        self.productions = tuple(productions)
        labels = [p.label for p in self.productions]
        if len(labels) != len(set(labels)):
            raise DefinitionError(f"table {name}: duplicate production labels")

    def __repr__(self):
        return f"Table({self.name!r}, {[p.label for p in self.productions]})"


@dataclass(frozen=True)
class Schedule:
    """Ordered (table name, repeat count) items, cycled `cycles` times."""

    items: Tuple[Tuple[str, int], ...]
    cycles: int = 1

    def __post_init__(self):
        if self.cycles < 0:
            raise DefinitionError("schedule cycle count must be >= 0")
        for name, count in self.items:
            if count < 0:
                raise DefinitionError(f"schedule count for {name!r} must be >= 0")


def _match(mods, n, circular, i, prod):
    """Return (vars, span) on success, else None.  Hot path of derive_step."""
    strict = prod.strict
    k = len(strict)
    if i + k > n:
        return None
    vars = {}
    for j in range(k):
        pat = strict[j]
        m = mods[i + j]
        if m.symbol != pat.symbol or len(m.params) != len(pat.vars):
            return None
        for name, value in zip(pat.vars, m.params):
            vars[name] = value
    left = prod.left
    nl = len(left)
    if nl:
        if circular:
            for j in range(nl):
                pat = left[j]
                m = mods[(i - nl + j) % n]
                if m.symbol != pat.symbol or len(m.params) != len(pat.vars):
                    return None
                for name, value in zip(pat.vars, m.params):
                    vars[name] = value
        else:
            if i - nl < 0:
                return None
            for j in range(nl):
                pat = left[j]
                m = mods[i - nl + j]
                if m.symbol != pat.symbol or len(m.params) != len(pat.vars):
                    return None
                for name, value in zip(pat.vars, m.params):
                    vars[name] = value
    right = prod.right
    nr = len(right)
    if nr:
        if circular:
            for j in range(nr):
                pat = right[j]
                m = mods[(i + k + j) % n]
                if m.symbol != pat.symbol or len(m.params) != len(pat.vars):
                    return None
                for name, value in zip(pat.vars, m.params):
                    vars[name] = value
        else:
            if i + k + nr > n:
                return None
            for j in range(nr):
                pat = right[j]
                m = mods[i + k + j]
                if m.symbol != pat.symbol or len(m.params) != len(pat.vars):
                    return None
                for name, value in zip(pat.vars, m.params):
                    vars[name] = value
    return vars, k


def match_at(
    s: ModuleString, i: int, prod: Production, consts: Optional[Env] = None
) -> Optional[Binding]:
    """Try to match `prod` with its strict predecessor starting at index i."""
    n = len(s.modules)
    if not (0 <= i < n):
        raise DefinitionError(f"match index {i} out of range for string of length {n}")
    hit = _match(s.modules, n, s.circular, i, prod)
    if hit is None:
        return None
    vars, span = hit
    if prod.condition is not None:
        env = dict(consts, **vars) if consts else vars
        if not prod.condition(env):
            return None
    return Binding(vars=dict(vars), start=i, length=span)


def derive_step(
    s: ModuleString, table: Table, consts: Optional[Env] = None
) -> ModuleString:
    """One parallel derivation step: first matching production wins per position.

    Positions are scanned left to right; a multi-module match consumes its
    whole span; an unmatched module is copied unchanged.  All context lookups
    read the predecessor string, never the output under construction.
    """
    mods = s.modules
    n = len(mods)
    circular = s.circular
    productions = table.productions
    out = []
    append = out.append
    i = 0
    while i < n:
        for prod in productions:
            hit = _match(mods, n, circular, i, prod)
            if hit is None:
                continue
            vars, span = hit
            env = dict(consts, **vars) if consts else vars
            cond = prod.condition
            if cond is not None and not cond(env):
                continue
            for tm in prod.successor:
                append(Module(tm.symbol, tuple(f(env) for f in tm.params)))
            i += span
            break
        else:
            append(mods[i])
            i += 1
    return ModuleString(out, circular)


def derive(
    s: ModuleString,
    schedule: Schedule,
    tables: Mapping[str, Table],
    consts: Optional[Env] = None,
    collect_trace: bool = False,
):
    """Run a schedule of table applications; optionally keep every intermediate.

    Returns the final string, or (final, trace) when collect_trace is set;
    the trace is a list of (step index, table name, string) with the axiom
    at step 0 under the name "axiom".
    """
    for name, _ in schedule.items:
        if name not in tables:
            raise DefinitionError(f"schedule references unknown table {name!r}")
    trace = [(0, "axiom", s)] if collect_trace else None
    step = 0
    for _ in range(schedule.cycles):
        for name, count in schedule.items:
            table = tables[name]
            for _ in range(count):
                s = derive_step(s, table, consts)
                step += 1
                if collect_trace:
                    trace.append((step, name, s))
    if collect_trace:
        return s, trace
    return s


def interpret(
    s: ModuleString, passes: Sequence[Table], consts: Optional[Env] = None
) -> ModuleString:
    """Apply each interpretation pass once, in order, as a full parallel rewrite."""
    for table in passes:
        s = derive_step(s, table, consts)
    return s
