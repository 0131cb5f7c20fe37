"""A tiny arithmetic expression language for Hurst functions of t.

Supports numbers, ``t``, ``pi``, the operators ``+ - * / ^`` (with ``^``
right-associative and binding tighter than unary minus), comparisons
``< <= > >=``, and the functions ``sin cos exp abs min max ifelse``.
Parsing is a Pratt parser reporting byte offsets on error; evaluation is
pure and accepts scalars or numpy arrays for ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ExprSyntaxError, UnknownNameError
from .hurst import HurstSpec

Node = Union["Num", "Var", "Unary", "Binary", "Compare", "Call"]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # only "t"


@dataclass(frozen=True)
class Unary:
    op: str  # "-"
    operand: Node


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / ^
    left: Node
    right: Node


@dataclass(frozen=True)
class Compare:
    op: str  # < <= > >=
    left: Node
    right: Node


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


_FUNCTIONS = {"sin": 1, "cos": 1, "exp": 1, "abs": 1, "min": 2, "max": 2, "ifelse": 3}
_CONSTANTS = {"pi": math.pi}

# Binding powers: comparisons < additive < multiplicative < unary minus < power.
_BP_CMP = 10
_BP_ADD = 20
_BP_MUL = 30
_BP_UNARY = 40
_BP_POW = 50


@dataclass(frozen=True)
class _Token:
    kind: str  # num ident op lparen rparen comma end
    text: str
    offset: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (source[j].isdigit() or (source[j] == "." and not seen_dot)):
                seen_dot = seen_dot or source[j] == "."
                j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            tokens.append(_Token("num", source[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("ident", source[i:j], i))
            i = j
            continue
        if source.startswith("<=", i) or source.startswith(">=", i):
            tokens.append(_Token("op", source[i : i + 2], i))
            i += 2
            continue
        if c in "+-*/^<>":
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        if c == "(":
            tokens.append(_Token("lparen", c, i))
            i += 1
            continue
        if c == ")":
            tokens.append(_Token("rparen", c, i))
            i += 1
            continue
        if c == ",":
            tokens.append(_Token("comma", c, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        if self.cur.kind != kind:
            raise ExprSyntaxError(f"expected {what}", self.cur.offset)
        return self.advance()

    def parse(self) -> Node:
        node = self.expression(0)
        if self.cur.kind != "end":
            raise ExprSyntaxError("unexpected trailing input", self.cur.offset)
        return node

    def expression(self, min_bp: int) -> Node:
        node = self.prefix()
        while True:
            tok = self.cur
            if tok.kind != "op":
                break
            bp = self.infix_bp(tok.text)
            if bp is None or bp <= min_bp:
                break
            self.advance()
            if tok.text == "^":
                # right-associative
                right = self.expression(bp - 1)
                node = Binary("^", node, right)
            elif tok.text in ("<", "<=", ">", ">="):
                right = self.expression(bp)
                node = Compare(tok.text, node, right)
            else:
                right = self.expression(bp)
                node = Binary(tok.text, node, right)
        return node

    @staticmethod
    def infix_bp(op: str) -> int | None:
        if op in ("<", "<=", ">", ">="):
            return _BP_CMP
        if op in ("+", "-"):
            return _BP_ADD
        if op in ("*", "/"):
            return _BP_MUL
        if op == "^":
            return _BP_POW
        return None

    def prefix(self) -> Node:
        tok = self.advance()
        if tok.kind == "num":
            try:
                return Num(float(tok.text))
            except ValueError:
                raise ExprSyntaxError(f"bad number {tok.text!r}", tok.offset) from None
        if tok.kind == "ident":
            name = tok.text
            if self.cur.kind == "lparen":
                if name not in _FUNCTIONS:
                    raise UnknownNameError(name, tok.offset)
                self.advance()
                args = [self.expression(0)]
                while self.cur.kind == "comma":
                    self.advance()
                    args.append(self.expression(0))
                self.expect("rparen", "')'")
                if len(args) != _FUNCTIONS[name]:
                    raise ExprSyntaxError(
                        f"{name} takes {_FUNCTIONS[name]} argument(s), got {len(args)}",
                        tok.offset,
                    )
                return Call(name, tuple(args))
            if name == "t":
                return Var("t")
            if name in _CONSTANTS:
                return Num(_CONSTANTS[name])
            raise UnknownNameError(name, tok.offset)
        if tok.kind == "op" and tok.text == "-":
            # unary minus binds tighter than * / but looser than ^
            return Unary("-", self.expression(_BP_UNARY))
        if tok.kind == "lparen":
            node = self.expression(0)
            self.expect("rparen", "')'")
            return node
        raise ExprSyntaxError("expected a value", tok.offset)


@dataclass(frozen=True)
class HurstExpr:
    """A parsed Hurst expression: source text plus its syntax tree."""

    source: str
    ast: Node

    def __call__(self, t):
        return evaluate(self.ast, t)


def parse_hurst_expr(source: str) -> HurstExpr:
    """Parse an expression in the variable t; raises positioned errors."""
    if not source or not source.strip():
        raise ExprSyntaxError("empty expression", 0)
    return HurstExpr(source=source, ast=_Parser(source).parse())


def evaluate(node: Node, t):
    """Evaluate a syntax tree at scalar or array t."""
    t_arr = np.asarray(t, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(node, t_arr)
    out = np.broadcast_to(np.asarray(out, dtype=float), t_arr.shape)
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out)
    return np.array(out, dtype=float)


def _eval(node: Node, t: np.ndarray):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t
    if isinstance(node, Unary):
        return -_eval(node.operand, t)
    if isinstance(node, Binary):
        a, b = _eval(node.left, t), _eval(node.right, t)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
        if node.op == "^":
            return np.power(a, b)
    if isinstance(node, Compare):
        a, b = _eval(node.left, t), _eval(node.right, t)
        if node.op == "<":
            return np.less(a, b)
        if node.op == "<=":
            return np.less_equal(a, b)
        if node.op == ">":
            return np.greater(a, b)
        if node.op == ">=":
            return np.greater_equal(a, b)
    if isinstance(node, Call):
        args = [_eval(a, t) for a in node.args]
        if node.name == "sin":
            return np.sin(args[0])
        if node.name == "cos":
            return np.cos(args[0])
        if node.name == "exp":
            return np.exp(args[0])
        if node.name == "abs":
            return np.abs(args[0])
        if node.name == "min":
            return np.minimum(args[0], args[1])
        if node.name == "max":
            return np.maximum(args[0], args[1])
        if node.name == "ifelse":
            return np.where(np.asarray(args[0], dtype=bool), args[1], args[2])
    raise AssertionError(f"unhandled node {node!r}")


def format_expr(node: Node | HurstExpr) -> str:
    """Render a tree back to source; reparsing yields an identical tree."""
    if isinstance(node, HurstExpr):
        node = node.ast
    return _fmt(node, 0)


def _fmt(node: Node, parent_bp: int) -> str:
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Unary):
        inner = _fmt(node.operand, _BP_UNARY - 1)
        text = f"-{inner}"
        return f"({text})" if parent_bp >= _BP_UNARY else text
    if isinstance(node, (Binary, Compare)):
        bp = _Parser.infix_bp(node.op)
        # ^ is right-associative: parenthesize a nested ^ on the left instead.
        left_bp = bp if node.op == "^" else bp - 1
        right_bp = bp - 1 if node.op == "^" else bp
        text = f"{_fmt(node.left, left_bp)} {node.op} {_fmt(node.right, right_bp)}"
        return f"({text})" if parent_bp >= bp else text
    if isinstance(node, Call):
        args = ", ".join(_fmt(a, 0) for a in node.args)
        return f"{node.name}({args})"
    raise AssertionError(f"unhandled node {node!r}")


def to_hurst_spec(expr: HurstExpr) -> HurstSpec:
    """Level-independent HurstSpec evaluating the expression, with clamping."""

    def fn(j: int, t: np.ndarray) -> np.ndarray:
        out = evaluate(expr.ast, t)
        return np.asarray(out, dtype=float)

    return HurstSpec(fn=fn, level_dependent=False)
