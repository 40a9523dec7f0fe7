"""Textual definition language for L-systems, plus expression evaluation.

A definition looks like:

    lsystem chaikin {
      circular
      const cycles = 4
      axiom: P((0,0)) P((4,0)) P((4,4)) P((0,4))
      table main {
        p: P(vl) < P(v) > P(vr) -> P(1/4*vl + 3/4*v) P(3/4*v + 1/4*vr)
      }
      schedule: (main, 1) * cycles
    }

Pattern words bind variables by position; successor templates are expressions
over those variables and the declared constants.  Point-valued expressions
are evaluated by collecting (coefficient, point) pairs and delegating to
geometry.affine_combine, so the sum-to-1 rule is always enforced at runtime;
where coefficients are literal (or cancel symbolically, like (1-t) + t) the
parser verifies the sum statically and the definition parses without
warnings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import rewriting
from .errors import DefinitionError, EvalError, ParseError
from .geometry import Point, affine_combine, project_to_plane
from .rewriting import (
    Module,
    ModuleString,
    PatternModule,
    Production,
    Schedule,
    Table,
    TemplateModule,
)

KEYWORDS = {
    "lsystem",
    "circular",
    "linear",
    "const",
    "fn",
    "axiom",
    "table",
    "interpret",
    "schedule",
    "eps",
}


# ---------------------------------------------------------------------------
# Expressions


@dataclass(frozen=True)
class Expr:
    loc: Tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True, eq=False)
class Num(Expr):
    value: float = 0.0

    def __eq__(self, other):
        return isinstance(other, Num) and self.value == other.value

    def __hash__(self):
        return hash(("Num", self.value))


@dataclass(frozen=True, eq=False)
class Name(Expr):
    id: str = ""

    def __eq__(self, other):
        return isinstance(other, Name) and self.id == other.id

    def __hash__(self):
        return hash(("Name", self.id))


@dataclass(frozen=True, eq=False)
class Bin(Expr):
    op: str = "+"
    lhs: Expr = None
    rhs: Expr = None

    def __eq__(self, other):
        return (
            isinstance(other, Bin)
            and self.op == other.op
            and self.lhs == other.lhs
            and self.rhs == other.rhs
        )


@dataclass(frozen=True, eq=False)
class Cmp(Expr):
    op: str = "="
    lhs: Expr = None
    rhs: Expr = None

    def __eq__(self, other):
        return (
            isinstance(other, Cmp)
            and self.op == other.op
            and self.lhs == other.lhs
            and self.rhs == other.rhs
        )


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    operand: Expr = None

    def __eq__(self, other):
        return isinstance(other, Neg) and self.operand == other.operand


@dataclass(frozen=True, eq=False)
class Call(Expr):
    fn: str = ""
    args: Tuple[Expr, ...] = ()

    def __eq__(self, other):
        return isinstance(other, Call) and self.fn == other.fn and self.args == other.args


@dataclass(frozen=True, eq=False)
class Tup(Expr):
    items: Tuple[Expr, ...] = ()

    def __eq__(self, other):
        return isinstance(other, Tup) and self.items == other.items


class _Comb:
    """Accumulated (coefficient, point) pairs awaiting affine_combine."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        self.pairs = pairs


def _as_comb(v):
    if isinstance(v, Point):
        return _Comb([(1.0, v)])
    return v


def _eval(e: Expr, env, funcs):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Name):
        try:
            return env[e.id]
        except KeyError:
            raise EvalError(f"unbound name {e.id!r}") from None
    if isinstance(e, Neg):
        v = _eval(e.operand, env, funcs)
        if isinstance(v, float):
            return -v
        v = _as_comb(v)
        if isinstance(v, _Comb):
            return _Comb([(-c, p) for c, p in v.pairs])
        raise EvalError("cannot negate this value")
    if isinstance(e, Bin):
        a = _eval(e.lhs, env, funcs)
        b = _eval(e.rhs, env, funcs)
        op = e.op
        if isinstance(a, float) and isinstance(b, float):
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if op == "/":
                if b == 0:
                    raise EvalError("division by zero")
                return a / b
        if op == "+":
            a, b = _as_comb(a), _as_comb(b)
            if isinstance(a, _Comb) and isinstance(b, _Comb):
                return _Comb(a.pairs + b.pairs)
        if op == "*":
            if isinstance(a, float):
                scale, comb = a, _as_comb(b)
            elif isinstance(b, float):
                scale, comb = b, _as_comb(a)
            else:
                comb = None
            if comb is not None and isinstance(comb, _Comb):
                return _Comb([(scale * c, p) for c, p in comb.pairs])
        raise EvalError(f"operator {op!r} does not apply to these operand types")
    if isinstance(e, Cmp):
        a = _eval(e.lhs, env, funcs)
        b = _eval(e.rhs, env, funcs)
        if not (isinstance(a, float) and isinstance(b, float)):
            raise EvalError(f"comparison {e.op!r} requires scalar operands")
        return {
            "=": a == b,
            "==": a == b,
            "!=": a != b,
            "<": a < b,
            "<=": a <= b,
            ">": a > b,
            ">=": a >= b,
        }[e.op]
    if isinstance(e, Tup):
        vals = [_eval(item, env, funcs) for item in e.items]
        for v in vals:
            if not isinstance(v, float):
                raise EvalError("tuple components must be scalar")
        return Point(*vals)
    if isinstance(e, Call):
        args = [_eval(a, env, funcs) for a in e.args]
        if funcs and e.fn in funcs:
            params, body = funcs[e.fn]
            if len(params) != len(args):
                raise EvalError(f"function {e.fn!r} expects {len(params)} arguments")
            inner = dict(env)
            inner.update(zip(params, args))
            return _eval(body, inner, funcs)
        if e.fn == "min":
            if len(args) != 2 or not all(isinstance(a, float) for a in args):
                raise EvalError("min expects two scalar arguments")
            return min(args)
        if e.fn == "max":
            if len(args) != 2 or not all(isinstance(a, float) for a in args):
                raise EvalError("max expects two scalar arguments")
            return max(args)
        if e.fn == "proj":
            if len(args) != 1 or not isinstance(args[0], Point):
                raise EvalError("proj expects one point argument")
            return project_to_plane(args[0])
        raise EvalError(f"unknown function {e.fn!r}")
    raise EvalError(f"cannot evaluate {e!r}")


def _finalize(v):
    if isinstance(v, _Comb):
        return affine_combine([c for c, _ in v.pairs], [p for _, p in v.pairs])
    if isinstance(v, bool):
        raise EvalError("boolean value where a parameter was expected")
    return v


def eval_expr(e: Expr, binding, consts=None, funcs=None):
    """Evaluate an expression against a variable binding (plus constants)."""
    env = dict(consts) if consts else {}
    env.update(binding)
    return _finalize(_eval(e, env, funcs or {}))


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def expr_to_text(e: Expr, parent_prec: int = 0) -> str:
    if isinstance(e, Num):
        return _fmt_num(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Neg):
        return "-" + expr_to_text(e.operand, 3)
    if isinstance(e, Bin):
        prec = _PREC[e.op]
        text = f"{expr_to_text(e.lhs, prec)}{e.op}{expr_to_text(e.rhs, prec + 1)}"
        return f"({text})" if prec < parent_prec else text
    if isinstance(e, Cmp):
        return f"{expr_to_text(e.lhs, 1)} {e.op} {expr_to_text(e.rhs, 1)}"
    if isinstance(e, Call):
        return f"{e.fn}({','.join(expr_to_text(a) for a in e.args)})"
    if isinstance(e, Tup):
        return f"({','.join(expr_to_text(a) for a in e.items)})"
    raise EvalError(f"cannot format {e!r}")


# ---------------------------------------------------------------------------
# Word formatting


def _fmt_num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_value(v) -> str:
    if isinstance(v, Point):
        return "(" + ",".join(_fmt_num(c) for c in v.coords) + ")"
    return _fmt_num(v)


def format_word(s: ModuleString) -> str:
    """Render a module string as SYMBOL(p1,p2,...) tokens, space separated."""
    parts = []
    for m in s.modules:
        if m.params:
            parts.append(f"{m.symbol}({','.join(format_value(p) for p in m.params)})")
        else:
            parts.append(m.symbol)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Tokenizer


_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>//[^\n]*)
      | (?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'?)
      | (?P<op>->|<=|>=|!=|==|[{}()<>,:*=+\-/])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"<{self.kind} {self.text!r} @{self.line}:{self.col}>"


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character", line, col, text[pos])
        kind = m.lastgroup
        chunk = m.group()
        if kind == "num":
            tokens.append(_Token("NUM", chunk, line, col))
        elif kind == "ident":
            tokens.append(_Token("IDENT", chunk, line, col))
        elif kind == "op":
            tokens.append(_Token("OP", chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Definition data


PatternSpec = Tuple[str, Tuple[str, ...]]  # (symbol, variable names)
TemplateSpec = Tuple[str, Tuple[Expr, ...]]  # (symbol, parameter expressions)


@dataclass
class ProductionSpec:
    label: str
    left: Tuple[PatternSpec, ...]
    strict: Tuple[PatternSpec, ...]
    right: Tuple[PatternSpec, ...]
    condition: Optional[Expr]
    successor: Tuple[TemplateSpec, ...]


@dataclass
class LSystemDefinition:
    """A fully validated L-system: axiom, tables, interpretation, schedule."""

    name: str
    circular: bool
    axiom: ModuleString
    tables: Dict[str, Table]
    interpretation: List[Table]
    schedule_items: List[Tuple[str, Union[int, Expr]]]
    schedule_cycles: Union[int, Expr]
    consts: Dict[str, float]
    functions: Dict[str, Tuple[Tuple[str, ...], Expr]]
    warnings: List[str] = field(default_factory=list)
    tables_src: Optional[Dict[str, List[ProductionSpec]]] = None
    interp_src: Optional[List[List[ProductionSpec]]] = None
    point_symbols: Optional[Dict[str, int]] = None  # symbol -> position param index

    def merged_consts(self, overrides=None) -> Dict[str, float]:
        consts = dict(self.consts)
        if overrides:
            for k, v in overrides.items():
                if v is None:
                    continue
                consts[k] = float(v) if isinstance(v, int) else v
        return consts

    def resolve_schedule(self, consts=None) -> Schedule:
        consts = consts if consts is not None else self.consts
        items = []
        for name, count in self.schedule_items:
            items.append((name, _as_count(count, consts, self.functions, minimum=0)))
        cycles = _as_count(self.schedule_cycles, consts, self.functions, minimum=0)
        return Schedule(tuple(items), cycles)

    def derive(self, overrides=None, collect_trace=False):
        consts = self.merged_consts(overrides)
        schedule = self.resolve_schedule(consts)
        return rewriting.derive(
            self.axiom, schedule, self.tables, consts, collect_trace
        )

    def interpret(self, s: ModuleString, overrides=None) -> ModuleString:
        consts = self.merged_consts(overrides)
        return rewriting.interpret(s, self.interpretation, consts)


def _as_count(value, consts, funcs, minimum):
    if isinstance(value, Expr):
        value = eval_expr(value, {}, consts, funcs)
    if isinstance(value, float) and value == int(value):
        value = int(value)
    if not isinstance(value, int):
        raise DefinitionError(f"schedule count must be an integer, got {value!r}")
    if value < minimum:
        raise DefinitionError(f"schedule count {value} below minimum {minimum}")
    return value


# ---------------------------------------------------------------------------
# Compilation of specs to rewriting objects


def compile_production(spec: ProductionSpec, functions) -> Production:
    def patterns(word):
        return tuple(PatternModule(sym, vars) for sym, vars in word)

    condition = None
    if spec.condition is not None:
        cond_expr = spec.condition

        def condition(env, _e=cond_expr, _f=functions):
            v = _eval(_e, env, _f)
            if not isinstance(v, bool):
                raise EvalError(
                    f"condition of production {spec.label!r} is not boolean"
                )
            return v

    templates = []
    for sym, exprs in spec.successor:
        params = tuple(
            (lambda env, _e=e, _f=functions: _finalize(_eval(_e, env, _f)))
            for e in exprs
        )
        templates.append(TemplateModule(sym, params))
    return Production(
        spec.label,
        strict=patterns(spec.strict),
        successor=templates,
        left=patterns(spec.left),
        right=patterns(spec.right),
        condition=condition,
    )


def _free_names(e: Expr, acc):
    if isinstance(e, Name):
        acc.add(e.id)
    elif isinstance(e, (Bin, Cmp)):
        _free_names(e.lhs, acc)
        _free_names(e.rhs, acc)
    elif isinstance(e, Neg):
        _free_names(e.operand, acc)
    elif isinstance(e, Call):
        for a in e.args:
            _free_names(a, acc)
    elif isinstance(e, Tup):
        for a in e.items:
            _free_names(a, acc)
    return acc


# ---------------------------------------------------------------------------
# Static affine-sum checking (best effort; runtime always re-checks)


def _linform(e: Expr):
    """Reduce a scalar expression to (var coefficients, constant); None if nonlinear."""
    if isinstance(e, Num):
        return {}, e.value
    if isinstance(e, Name):
        return {e.id: 1.0}, 0.0
    if isinstance(e, Neg):
        lf = _linform(e.operand)
        if lf is None:
            return None
        vs, c = lf
        return {k: -v for k, v in vs.items()}, -c
    if isinstance(e, Bin):
        a = _linform(e.lhs)
        b = _linform(e.rhs)
        if a is None or b is None:
            return None
        if e.op == "+":
            vs = dict(a[0])
            for k, v in b[0].items():
                vs[k] = vs.get(k, 0.0) + v
            return vs, a[1] + b[1]
        if e.op == "-":
            vs = dict(a[0])
            for k, v in b[0].items():
                vs[k] = vs.get(k, 0.0) - v
            return vs, a[1] - b[1]
        if e.op == "*":
            if not a[0]:
                return {k: a[1] * v for k, v in b[0].items()}, a[1] * b[1]
            if not b[0]:
                return {k: b[1] * v for k, v in a[0].items()}, b[1] * a[1]
            return None
        if e.op == "/":
            if not b[0] and b[1] != 0:
                return {k: v / b[1] for k, v in a[0].items()}, a[1] / b[1]
            return None
    return None


def _point_comb_coeffs(e: Expr, point_vars):
    """Coefficient linear forms of an affine point combination; None if opaque."""
    if isinstance(e, Name) and e.id in point_vars:
        return [({}, 1.0)]
    if isinstance(e, Bin) and e.op == "+":
        a = _point_comb_coeffs(e.lhs, point_vars)
        b = _point_comb_coeffs(e.rhs, point_vars)
        if a is None or b is None:
            return None
        return a + b
    if isinstance(e, Bin) and e.op == "*":
        for scalar_side, point_side in ((e.lhs, e.rhs), (e.rhs, e.lhs)):
            inner = _point_comb_coeffs(point_side, point_vars)
            if inner is not None:
                s = _linform(scalar_side)
                if s is None:
                    return None
                scaled = []
                for vs, c in inner:
                    if vs:  # nested symbolic coefficients; keep it simple
                        return None
                    svs = {k: v * c for k, v in s[0].items()}
                    scaled.append((svs, s[1] * c))
                return scaled
        return None
    if isinstance(e, Neg):
        inner = _point_comb_coeffs(e.operand, point_vars)
        if inner is None:
            return None
        return [({k: -v for k, v in vs.items()}, -c) for vs, c in inner]
    return None


def _expr_type(e: Expr, var_types, consts, functions):
    if isinstance(e, Num):
        return "scalar"
    if isinstance(e, Name):
        if e.id in consts:
            return "scalar"
        return var_types.get(e.id)
    if isinstance(e, Neg):
        return _expr_type(e.operand, var_types, consts, functions)
    if isinstance(e, Bin):
        a = _expr_type(e.lhs, var_types, consts, functions)
        b = _expr_type(e.rhs, var_types, consts, functions)
        if e.op in ("+", "*"):
            if a == "point" or b == "point":
                return "point"
            if a == "scalar" and b == "scalar":
                return "scalar"
            return None
        if a == "scalar" and b == "scalar":
            return "scalar"
        return None
    if isinstance(e, Cmp):
        return "scalar"
    if isinstance(e, Tup):
        return "point"
    if isinstance(e, Call):
        if e.fn == "proj":
            return "point"
        if e.fn in ("min", "max"):
            return "scalar"
        if e.fn in functions:
            params, body = functions[e.fn]
            inner = {
                p: _expr_type(a, var_types, consts, functions)
                for p, a in zip(params, e.args)
            }
            return _expr_type(body, inner, consts, functions)
        return None
    return None


def _check_affine_sums(defn: LSystemDefinition):
    """Infer parameter types from the axiom and verify literal/symbolic affine sums."""
    signatures = {}
    for m in defn.axiom.modules:
        sig = signatures.setdefault(
            (m.symbol, len(m.params)), [None] * len(m.params)
        )
        for i, p in enumerate(m.params):
            sig[i] = "point" if isinstance(p, Point) else "scalar"

    all_specs = []
    for specs in (defn.tables_src or {}).values():
        all_specs.extend(specs)
    for specs in defn.interp_src or []:
        all_specs.extend(specs)

    for _ in range(len(all_specs) + 2):
        changed = False
        for spec in all_specs:
            var_types = {}
            for sym, vars in spec.left + spec.strict + spec.right:
                sig = signatures.get((sym, len(vars)))
                for i, v in enumerate(vars):
                    var_types[v] = sig[i] if sig else None
            for sym, exprs in spec.successor:
                sig = signatures.setdefault(
                    (sym, len(exprs)), [None] * len(exprs)
                )
                for i, e in enumerate(exprs):
                    t = _expr_type(e, var_types, defn.consts, defn.functions)
                    if t is not None and sig[i] is None:
                        sig[i] = t
                        changed = True
        if not changed:
            break

    for spec in all_specs:
        var_types = {}
        for sym, vars in spec.left + spec.strict + spec.right:
            sig = signatures.get((sym, len(vars)))
            for i, v in enumerate(vars):
                var_types[v] = sig[i] if sig else None
        point_vars = {v for v, t in var_types.items() if t == "point"}
        for sym, exprs in spec.successor:
            for e in exprs:
                if _expr_type(e, var_types, defn.consts, defn.functions) != "point":
                    continue
                if isinstance(e, (Tup, Call)) or (
                    isinstance(e, Name) and e.id in point_vars
                ):
                    continue
                coeffs = _point_comb_coeffs(e, point_vars)
                if coeffs is None:
                    defn.warnings.append(
                        f"production {spec.label}: cannot statically verify "
                        f"affine sum; checked at runtime"
                    )
                    continue
                var_sum = {}
                const_sum = 0.0
                for vs, c in coeffs:
                    const_sum += c
                    for k, v in vs.items():
                        var_sum[k] = var_sum.get(k, 0.0) + v
                residual = {k: v for k, v in var_sum.items() if abs(v) > 1e-9}
                if residual or abs(const_sum - 1.0) > 1e-9:
                    defn.warnings.append(
                        f"production {spec.label}: affine coefficients sum to "
                        f"{expr_to_text(e)} != 1; checked at runtime"
                    )


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, ahead=0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col, tok.text or None)

    def expect_op(self, text) -> _Token:
        tok = self.peek()
        if tok.kind != "OP" or tok.text != text:
            self.error(f"expected {text!r}")
        return self.next()

    def expect_ident(self, what="identifier") -> _Token:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.error(f"expected {what}")
        return self.next()

    def at_op(self, *texts) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text in texts

    def at_keyword(self, *words) -> bool:
        tok = self.peek()
        return tok.kind == "IDENT" and tok.text in words

    # -- expressions --------------------------------------------------------

    def parse_expr(self) -> Expr:
        lhs = self.parse_additive()
        if self.at_op("=", "==", "!=", "<=", ">=", "<", ">"):
            op = self.next().text
            rhs = self.parse_additive()
            return Cmp(loc=(lhs.loc), op=op, lhs=lhs, rhs=rhs)
        return lhs

    def parse_additive(self) -> Expr:
        lhs = self.parse_multiplicative()
        while self.at_op("+", "-"):
            op = self.next().text
            rhs = self.parse_multiplicative()
            lhs = Bin(loc=lhs.loc, op=op, lhs=lhs, rhs=rhs)
        return lhs

    def parse_multiplicative(self) -> Expr:
        lhs = self.parse_unary()
        while self.at_op("*", "/"):
            op = self.next().text
            rhs = self.parse_unary()
            lhs = Bin(loc=lhs.loc, op=op, lhs=lhs, rhs=rhs)
        return lhs

    def parse_unary(self) -> Expr:
        if self.at_op("-"):
            tok = self.next()
            return Neg(loc=(tok.line, tok.col), operand=self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> Expr:
        tok = self.peek()
        loc = (tok.line, tok.col)
        if tok.kind == "NUM":
            self.next()
            return Num(loc=loc, value=float(tok.text))
        if tok.kind == "IDENT":
            self.next()
            if self.at_op("("):
                self.next()
                args = []
                if not self.at_op(")"):
                    args.append(self.parse_expr())
                    while self.at_op(","):
                        self.next()
                        args.append(self.parse_expr())
                self.expect_op(")")
                return Call(loc=loc, fn=tok.text, args=tuple(args))
            return Name(loc=loc, id=tok.text)
        if self.at_op("("):
            self.next()
            first = self.parse_expr()
            if self.at_op(","):
                items = [first]
                while self.at_op(","):
                    self.next()
                    items.append(self.parse_expr())
                self.expect_op(")")
                return Tup(loc=loc, items=tuple(items))
            self.expect_op(")")
            return first
        self.error("expected expression")

    # -- words --------------------------------------------------------------

    def parse_pattern_word(self) -> Tuple[PatternSpec, ...]:
        word = []
        while True:
            tok = self.peek()
            if tok.kind != "IDENT" or tok.text in KEYWORDS:
                break
            self.next()
            vars = ()
            if self.at_op("("):
                self.next()
                names = []
                if not self.at_op(")"):
                    names.append(self.expect_ident("variable name").text)
                    while self.at_op(","):
                        self.next()
                        names.append(self.expect_ident("variable name").text)
                self.expect_op(")")
                vars = tuple(names)
            word.append((tok.text, vars))
        if not word:
            self.error("expected a pattern word")
        return tuple(word)

    def parse_template_word(self) -> Tuple[TemplateSpec, ...]:
        if self.at_keyword("eps"):
            self.next()
            return ()
        word = []
        while True:
            tok = self.peek()
            if tok.kind != "IDENT" or tok.text in KEYWORDS:
                break
            # a following ':' means this identifier labels the next production
            after = self.peek(1)
            if after.kind == "OP" and after.text == ":":
                break
            self.next()
            exprs = ()
            if self.at_op("("):
                self.next()
                args = []
                if not self.at_op(")"):
                    args.append(self.parse_expr())
                    while self.at_op(","):
                        self.next()
                        args.append(self.parse_expr())
                self.expect_op(")")
                exprs = tuple(args)
            word.append((tok.text, exprs))
        return tuple(word)

    def parse_production(self) -> ProductionSpec:
        label = self.expect_ident("production label").text
        self.expect_op(":")
        first = self.parse_pattern_word()
        if self.at_op("<"):
            self.next()
            left = first
            strict = self.parse_pattern_word()
        else:
            left = ()
            strict = first
        right = ()
        if self.at_op(">"):
            self.next()
            right = self.parse_pattern_word()
        condition = None
        if self.at_op(":"):
            self.next()
            condition = self.parse_expr()
        self.expect_op("->")
        successor = self.parse_template_word()
        return ProductionSpec(label, left, strict, right, condition, successor)

    def parse_productions_until_brace(self) -> List[ProductionSpec]:
        specs = []
        while not self.at_op("}"):
            specs.append(self.parse_production())
        self.expect_op("}")
        return specs

    # -- definition ---------------------------------------------------------

    def parse_definition(self) -> LSystemDefinition:
        if not self.at_keyword("lsystem"):
            self.error("expected 'lsystem'")
        self.next()
        name = self.expect_ident("definition name").text
        self.expect_op("{")

        circular = False
        if self.at_keyword("circular", "linear"):
            circular = self.next().text == "circular"

        consts: Dict[str, float] = {}
        functions: Dict[str, Tuple[Tuple[str, ...], Expr]] = {}
        while self.at_keyword("const", "fn"):
            if self.at_keyword("const"):
                self.next()
                cname = self.expect_ident("constant name").text
                self.expect_op("=")
                expr = self.parse_expr()
                value = eval_expr(expr, {}, consts, functions)
                if not isinstance(value, float):
                    self.error(f"constant {cname!r} must be scalar")
                consts[cname] = value
            else:
                self.next()
                fname = self.expect_ident("function name").text
                self.expect_op("(")
                params = [self.expect_ident("parameter").text]
                while self.at_op(","):
                    self.next()
                    params.append(self.expect_ident("parameter").text)
                self.expect_op(")")
                self.expect_op("=")
                functions[fname] = (tuple(params), self.parse_expr())

        if not self.at_keyword("axiom"):
            self.error("expected 'axiom'")
        self.next()
        self.expect_op(":")
        axiom_word = self.parse_template_word()
        if not axiom_word:
            self.error("axiom must be nonempty")
        axiom_modules = []
        for sym, exprs in axiom_word:
            params = []
            for e in exprs:
                free = _free_names(e, set())
                unknown = free - set(consts)
                if unknown:
                    self.error(
                        f"axiom parameter uses unbound name {sorted(unknown)[0]!r}"
                    )
                params.append(eval_expr(e, {}, consts, functions))
            axiom_modules.append(Module(sym, params))
        dims = {p.dim for m in axiom_modules for p in m.params if isinstance(p, Point)}
        if len(dims) > 1:
            self.error("axiom mixes point dimensions")
        axiom = ModuleString(axiom_modules, circular)

        tables_src: Dict[str, List[ProductionSpec]] = {}
        interp_src: List[List[ProductionSpec]] = []
        while self.at_keyword("table", "interpret"):
            if self.at_keyword("table"):
                self.next()
                tname = self.expect_ident("table name").text
                if tname in tables_src:
                    self.error(f"duplicate table {tname!r}")
                self.expect_op("{")
                tables_src[tname] = self.parse_productions_until_brace()
            else:
                self.next()
                self.expect_op("{")
                interp_src.append(self.parse_productions_until_brace())
        if not tables_src:
            self.error("expected at least one table")

        if not self.at_keyword("schedule"):
            self.error("expected 'schedule'")
        self.next()
        self.expect_op(":")
        items: List[Tuple[str, Union[int, Expr]]] = []
        while True:
            self.expect_op("(")
            tname_tok = self.expect_ident("table name")
            if tname_tok.text not in tables_src:
                self.error(f"unknown table {tname_tok.text!r}", tname_tok)
            self.expect_op(",")
            items.append((tname_tok.text, self.parse_expr()))
            self.expect_op(")")
            if self.at_op(","):
                self.next()
                continue
            break
        cycles: Union[int, Expr] = 1
        if self.at_op("*"):
            self.next()
            cycles = self.parse_expr()
        self.expect_op("}")
        if self.peek().kind != "EOF":
            self.error("trailing input after definition")

        defn = LSystemDefinition(
            name=name,
            circular=circular,
            axiom=axiom,
            tables={},
            interpretation=[],
            schedule_items=items,
            schedule_cycles=cycles,
            consts=consts,
            functions=functions,
            tables_src=tables_src,
            interp_src=interp_src,
        )
        self._validate_and_compile(defn)
        return defn

    def _validate_and_compile(self, defn: LSystemDefinition):
        known = set(defn.consts) | set(defn.functions) | {"min", "max", "proj"}
        for tname, specs in defn.tables_src.items():
            self._check_bindings(specs, known)
            defn.tables[tname] = Table(
                tname, [compile_production(s, defn.functions) for s in specs]
            )
        for i, specs in enumerate(defn.interp_src):
            self._check_bindings(specs, known)
            defn.interpretation.append(
                Table(f"interpret_{i}", [compile_production(s, defn.functions) for s in specs])
            )
        for fname, (params, body) in defn.functions.items():
            free = _free_names(body, set()) - set(params) - known
            if free:
                self.error(f"function {fname!r} uses unbound name {sorted(free)[0]!r}")
        _check_affine_sums(defn)

    def _check_bindings(self, specs, known):
        for spec in specs:
            bound = set()
            for sym, vars in spec.left + spec.strict + spec.right:
                for v in vars:
                    if v in bound:
                        self.error(
                            f"production {spec.label}: variable {v!r} bound twice"
                        )
                    bound.add(v)
            exprs = [e for _, es in spec.successor for e in es]
            if spec.condition is not None:
                exprs.append(spec.condition)
            for e in exprs:
                free = _free_names(e, set()) - bound - known
                if free:
                    name = sorted(free)[0]
                    self.error(
                        f"production {spec.label}: unbound variable {name!r}"
                    )


def parse(text: str) -> LSystemDefinition:
    """Parse DSL source text into a validated LSystemDefinition."""
    return _Parser(text).parse_definition()


def parse_file(path) -> LSystemDefinition:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def parse_word(text: str, circular: bool = False) -> ModuleString:
    """Parse a standalone module word with literal parameters."""
    parser = _Parser(text)
    word = parser.parse_template_word()
    if parser.peek().kind != "EOF":
        parser.error("trailing input after word")
    modules = []
    for sym, exprs in word:
        modules.append(Module(sym, [eval_expr(e, {}) for e in exprs]))
    return ModuleString(modules, circular)


# ---------------------------------------------------------------------------
# Definition formatting (inverse of parse, for parsed definitions)


def _pattern_text(word) -> str:
    parts = []
    for sym, vars in word:
        parts.append(f"{sym}({','.join(vars)})" if vars else sym)
    return " ".join(parts)


def _template_text(word) -> str:
    if not word:
        return "eps"
    parts = []
    for sym, exprs in word:
        if exprs:
            parts.append(f"{sym}({','.join(expr_to_text(e) for e in exprs)})")
        else:
            parts.append(sym)
    return " ".join(parts)


def _production_text(spec: ProductionSpec) -> str:
    chunks = [f"{spec.label}:"]
    if spec.left:
        chunks.append(_pattern_text(spec.left))
        chunks.append("<")
    chunks.append(_pattern_text(spec.strict))
    if spec.right:
        chunks.append(">")
        chunks.append(_pattern_text(spec.right))
    if spec.condition is not None:
        chunks.append(":")
        chunks.append(expr_to_text(spec.condition))
    chunks.append("->")
    chunks.append(_template_text(spec.successor))
    return " ".join(chunks)


def format_definition(defn: LSystemDefinition) -> str:
    """Serialize a parsed definition back to DSL text."""
    if defn.tables_src is None:
        raise DefinitionError("only parsed definitions can be formatted")
    lines = [f"lsystem {defn.name} {{"]
    lines.append("  circular" if defn.circular else "  linear")
    for cname, value in defn.consts.items():
        lines.append(f"  const {cname} = {_fmt_num(value)}")
    for fname, (params, body) in defn.functions.items():
        lines.append(f"  fn {fname}({','.join(params)}) = {expr_to_text(body)}")
    lines.append(f"  axiom: {format_word(defn.axiom)}")
    for tname, specs in defn.tables_src.items():
        lines.append(f"  table {tname} {{")
        for spec in specs:
            lines.append(f"    {_production_text(spec)}")
        lines.append("  }")
    for specs in defn.interp_src or []:
        lines.append("  interpret {")
        for spec in specs:
            lines.append(f"    {_production_text(spec)}")
        lines.append("  }")
    items = ", ".join(
        f"({name}, {count if isinstance(count, int) else expr_to_text(count)})"
        for name, count in defn.schedule_items
    )
    cycles = defn.schedule_cycles
    cycles_text = "" if cycles == 1 else (
        f" * {cycles if isinstance(cycles, int) else expr_to_text(cycles)}"
    )
    lines.append(f"  schedule: {items}{cycles_text}")
    lines.append("}")
    return "\n".join(lines) + "\n"
