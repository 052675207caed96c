"""Scalar expressions of one variable ``t``.

Grammar (loosest to tightest)::

    expr   := expr ('+' | '-') expr
            | expr ('*' | '/') expr
            | '-' expr
            | expr '^' expr            (right-associative)
            | NUMBER | NAME | 't' | FN '(' expr ')' | '(' expr ')'
    FN     := sin | cos | exp | ln | sqrt

Unary minus binds looser than ``^`` so ``-t^2`` is ``-(t^2)``. Exponents must
not depend on ``t``; a non-integer exponent needs a positive base.
"""

import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterator, List, Mapping, Optional, Union

from frenet4.exceptions import (
    ExprDomainError,
    ExprSyntaxError,
    JetDomainError,
    UnboundParameterError,
    UnknownFunctionError,
)
from frenet4.utils.jets import Jet

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt")
VARIABLE = "t"


# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Var:
    name: str = VARIABLE


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Union[Num, Param, Var, Neg, BinOp, Call]


def depends_on_t(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, (Num, Param)):
        return False
    if isinstance(e, Neg):
        return depends_on_t(e.operand)
    if isinstance(e, Call):
        return depends_on_t(e.arg)
    return depends_on_t(e.left) or depends_on_t(e.right)


def parameters(e: Expr) -> FrozenSet[str]:
    """Names of the parameters referenced by an expression."""
    if isinstance(e, Param):
        return frozenset({e.name})
    if isinstance(e, (Num, Var)):
        return frozenset()
    if isinstance(e, Neg):
        return parameters(e.operand)
    if isinstance(e, Call):
        return parameters(e.arg)
    return parameters(e.left) | parameters(e.right)


def to_text(e: Expr) -> str:
    """Print an expression; parse(to_text(e)) == e for every tree built by parse.

    The grammar has no negative literals, so a hand-built negative ``Num`` prints
    as a negation and re-parses as ``Neg(Num(...))`` with the same value.

    Raises:
        ValueError: A literal is NaN or infinite.
    """
    if isinstance(e, Num):
        value = float(e.value)
        if not math.isfinite(value):
            raise ValueError(f"literal {value!r} has no textual form")
        if math.copysign(1.0, value) < 0:
            return f"(-{abs(value)!r})"
        return repr(value)
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Var):
        return VARIABLE
    if isinstance(e, Neg):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, Call):
        return f"{e.fn}({to_text(e.arg)})"
    return f"({to_text(e.left)} {e.op} {to_text(e.right)})"


# Parameter environment


class ParamEnv(Mapping[str, float]):
    """Immutable name -> scalar bindings; ``pi`` is predefined."""

    def __init__(self, bindings: Optional[Mapping[str, float]] = None):
        self._bindings: Dict[str, float] = {"pi": math.pi}
        for name, value in (bindings or {}).items():
            self._bindings[name] = float(value)

    def __getitem__(self, name: str) -> float:
        return self._bindings[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def lookup(self, name: str) -> float:
        try:
            return self._bindings[name]
        except KeyError:
            raise UnboundParameterError(f"unbound parameter {name!r}", name=name) from None

    def __repr__(self) -> str:
        return f"ParamEnv({self._bindings!r})"


# Tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[^\W\d]\w*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)

_OPERAND_START = frozenset({"number", "name", "(", "-"})
_BINARY_POWER = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
_UNARY_POWER = 25


@dataclass(frozen=True)
class _Token:
    kind: str  # number, name, an operator character, or "end"
    text: str
    pos: int


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(
                f"unexpected character {text[pos]!r}",
                _byte_offset(text, pos),
                _OPERAND_START | frozenset(_BINARY_POWER) | {")"},
            )
        kind = m.lastgroup
        if kind == "op":
            tokens.append(_Token(m.group(), m.group(), pos))
        elif kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    """Pratt parser over the token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def token(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.token
        self.index += 1
        return token

    def fail(self, message: str, expected: FrozenSet[str]) -> ExprSyntaxError:
        return ExprSyntaxError(message, _byte_offset(self.text, self.token.pos), expected)

    def expect(self, kind: str) -> _Token:
        if self.token.kind != kind:
            found = self.token.text or "end of input"
            raise self.fail(f"unexpected {found!r}", frozenset({kind}))
        return self.advance()

    def parse(self) -> Expr:
        expr = self.expression(0)
        if self.token.kind != "end":
            raise self.fail(
                f"unexpected {self.token.text!r}",
                frozenset(_BINARY_POWER) | {"end"},
            )
        return expr

    def expression(self, rbp: int) -> Expr:
        left = self.prefix()
        while self.token.kind in _BINARY_POWER and _BINARY_POWER[self.token.kind] > rbp:
            op = self.advance().kind
            lbp = _BINARY_POWER[op]
            # ^ is right-associative
            right = self.expression(lbp - 1 if op == "^" else lbp)
            left = BinOp(op, left, right)
        return left

    def prefix(self) -> Expr:
        token = self.token
        if token.kind == "number":
            value = float(token.text)
            if not math.isfinite(value):
                raise self.fail(f"number {token.text!r} is out of range", frozenset({"number"}))
            self.advance()
            return Num(value)
        if token.kind == "-":
            self.advance()
            return Neg(self.expression(_UNARY_POWER))
        if token.kind == "(":
            self.advance()
            inner = self.expression(0)
            self.expect(")")
            return inner
        if token.kind == "name":
            self.advance()
            if self.token.kind == "(":
                if token.text not in FUNCTIONS:
                    raise UnknownFunctionError(
                        f"unknown function {token.text!r}",
                        name=token.text,
                        offset=_byte_offset(self.text, token.pos),
                    )
                self.advance()
                arg = self.expression(0)
                self.expect(")")
                return Call(token.text, arg)
            if token.text in FUNCTIONS:
                raise self.fail(f"function {token.text!r} needs an argument", frozenset({"("}))
            if token.text == VARIABLE:
                return Var()
            return Param(token.text)
        found = token.text or "end of input"
        raise self.fail(f"unexpected {found!r}", _OPERAND_START)


def parse(text: str) -> Expr:
    """Parse expression text into an AST."""
    return _Parser(text).parse()


# Evaluation


def _int_power(x, n: int, one):
    result = one
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


class _ScalarOps:
    def const(self, value: float) -> float:
        return value

    def var(self, t: float) -> float:
        return t

    def div(self, a: float, b: float) -> float:
        if b == 0:
            raise ExprDomainError("division by zero")
        return a / b

    def call(self, fn: str, x: float) -> float:
        if fn == "sqrt":
            if x < 0:
                raise ExprDomainError(f"sqrt of negative value {x!r}")
            return math.sqrt(x)
        if fn == "ln":
            if x <= 0:
                raise ExprDomainError(f"ln of non-positive value {x!r}")
            return math.log(x)
        if fn == "exp":
            return math.exp(x)
        return getattr(math, fn)(x)

    def pow(self, x: float, p: float) -> float:
        if p.is_integer():
            n = int(p)
            if n < 0:
                if x == 0:
                    raise ExprDomainError("zero raised to a negative power")
                return 1.0 / _int_power(x, -n, 1.0)
            return _int_power(x, n, 1.0)
        if x <= 0:
            raise ExprDomainError(f"non-integer power of non-positive base {x!r}")
        return math.exp(math.log(x) * p)


class _JetOps:
    def __init__(self, order: int):
        self.order = order

    def const(self, value: float) -> Jet:
        return Jet.constant(value, self.order)

    def var(self, t: float) -> Jet:
        if self.order == 0:
            return Jet.constant(t, 0)
        return Jet.variable(t, self.order)

    def div(self, a: Jet, b: Jet) -> Jet:
        return a / b

    def call(self, fn: str, x: Jet) -> Jet:
        return getattr(x, fn)()

    def pow(self, x: Jet, p: float) -> Jet:
        return x.pow_const(p)


def _evaluate(e: Expr, t, env: ParamEnv, ops):
    if isinstance(e, Num):
        return ops.const(e.value)
    if isinstance(e, Var):
        return ops.var(t)
    if isinstance(e, Param):
        return ops.const(env.lookup(e.name))
    if isinstance(e, Neg):
        return -_evaluate(e.operand, t, env, ops)
    if isinstance(e, Call):
        return ops.call(e.fn, _evaluate(e.arg, t, env, ops))
    if e.op == "^":
        if depends_on_t(e.right):
            raise ExprDomainError("exponent must not depend on t")
        exponent = _evaluate(e.right, t, env, _ScalarOps())
        return ops.pow(_evaluate(e.left, t, env, ops), exponent)
    left = _evaluate(e.left, t, env, ops)
    right = _evaluate(e.right, t, env, ops)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    return ops.div(left, right)


def _guarded(fn: Callable[[], object]):
    try:
        return fn()
    except JetDomainError as exc:
        raise ExprDomainError(str(exc)) from exc
    except (OverflowError, ValueError, ZeroDivisionError) as exc:
        raise ExprDomainError(str(exc)) from exc


def eval_scalar(e: Expr, t: float, env: ParamEnv) -> float:
    """Evaluate at a scalar ``t``."""
    return _guarded(lambda: float(_evaluate(e, float(t), env, _ScalarOps())))


def eval_jet(e: Expr, t0: float, order: int, env: ParamEnv) -> Jet:
    """Evaluate as a jet of the given order around ``t0``."""
    return _guarded(lambda: _evaluate(e, float(t0), env, _JetOps(order)))
