"""Arithmetic expression language for problem definitions.

Grammar (loosest to tightest binding):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?          # right associative
    atom   := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'

``^`` is real exponentiation; ``0^0`` evaluates to 1.  Builtins cover the
usual elementary functions plus the Mittag-Leffler family ``mlf1``,
``mlf2`` and ``mlf3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

from . import mittag_leffler as ml
from .errors import ArityError, EvalError, LexError, NonConvergence, ParseError

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


Node = Num | Var | Unary | Binary | Call


def _safe_log(x):
    if x <= 0.0:
        raise EvalError(f"log of nonpositive value {x}")
    return math.log(x)


def _safe_sqrt(x):
    if x < 0.0:
        raise EvalError(f"sqrt of negative value {x}")
    return math.sqrt(x)


def _safe_gamma(x):
    try:
        return math.gamma(x)
    except ValueError as exc:
        raise EvalError(f"gamma pole at {x}") from exc


def _real_pow(base, expo):
    if base == 0.0 and expo == 0.0:
        return 1.0
    try:
        return math.pow(base, expo)
    except (ValueError, OverflowError) as exc:
        raise EvalError(f"pow({base}, {expo}) is not a real number") from exc


#: name -> (arity, implementation)
BUILTINS: dict[str, tuple[int, Callable]] = {
    "sin": (1, math.sin),
    "cos": (1, math.cos),
    "exp": (1, math.exp),
    "log": (1, _safe_log),
    "sqrt": (1, _safe_sqrt),
    "abs": (1, abs),
    "pow": (2, _real_pow),
    "gamma": (1, _safe_gamma),
    "mlf1": (2, ml.ml_one),
    "mlf2": (3, ml.ml_two),
    "mlf3": (4, ml.ml_prabhakar),
}


# ---------------------------------------------------------------------------
# Lexer

_OPERATORS = set("+-*/^(),")


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "ident" | literal operator character
    text: str
    offset: int

    @property
    def value(self) -> float:
        return float(self.text)


def tokenize(source: str) -> list[Token]:
    """Split an expression string into tokens.

    Numbers are decimals with an optional exponent; identifiers match
    ``[a-zA-Z_][a-zA-Z0-9_]*``.  Any other non-whitespace character
    raises :class:`LexError` with its byte offset.
    """
    tokens = []
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPERATORS:
            tokens.append(Token(c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            while j < n and (source[j].isdigit() or source[j] == "."):
                j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            try:
                float(text)
            except ValueError:
                raise LexError(f"malformed number {text!r}", i) from None
            tokens.append(Token("num", text, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("ident", source[i:j], i))
            i = j
            continue
        raise LexError(f"illegal character {c!r}", i)
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.pos)
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok is None or tok.kind != kind:
            got = "end of input" if tok is None else repr(tok.text)
            raise ParseError(f"expected {kind!r}, got {got}", self.pos)
        return self.next()

    def expr(self) -> Node:
        node = self.term()
        while (tok := self.peek()) is not None and tok.kind in "+-":
            self.next()
            node = Binary(tok.kind, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while (tok := self.peek()) is not None and tok.kind in "*/":
            self.next()
            node = Binary(tok.kind, node, self.factor())
        return node

    def factor(self) -> Node:
        tok = self.peek()
        if tok is not None and tok.kind == "-":
            self.next()
            return Unary("-", self.factor())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "^":
            self.next()
            # right associative; exponent may carry a unary minus
            node = Binary("^", node, self.factor())
        return node

    def atom(self) -> Node:
        tok = self.next()
        if tok.kind == "num":
            return Num(tok.value)
        if tok.kind == "ident":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "(":
                return self.call(tok.text)
            return Var(tok.text)
        if tok.kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {tok.text!r}", self.pos - 1)

    def call(self, name: str) -> Node:
        if name not in BUILTINS:
            raise ParseError(f"unknown function {name!r}", self.pos)
        self.expect("(")
        args = [self.expr()]
        while (tok := self.peek()) is not None and tok.kind == ",":
            self.next()
            args.append(self.expr())
        self.expect(")")
        arity = BUILTINS[name][0]
        if len(args) != arity:
            raise ArityError(
                f"{name} takes {arity} argument(s), got {len(args)}", self.pos
            )
        return Call(name, tuple(args))


def parse(source_or_tokens) -> Node:
    """Parse a source string or token list into an AST."""
    tokens = (
        tokenize(source_or_tokens)
        if isinstance(source_or_tokens, str)
        else list(source_or_tokens)
    )
    parser = _Parser(tokens)
    node = parser.expr()
    if parser.peek() is not None:
        raise ParseError(
            f"trailing input starting at {parser.peek().text!r}", parser.pos
        )
    return node


# ---------------------------------------------------------------------------
# Evaluation and printing


def evaluate(node: Node, bindings: Mapping[str, float]) -> float:
    """Evaluate an AST under the given variable bindings."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        try:
            return float(bindings[node.name])
        except KeyError:
            raise EvalError(f"unbound variable {node.name!r}") from None
    if isinstance(node, Unary):
        return -evaluate(node.operand, bindings)
    if isinstance(node, Binary):
        a = evaluate(node.left, bindings)
        b = evaluate(node.right, bindings)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0.0:
                raise EvalError("division by zero")
            return a / b
        return _real_pow(a, b)
    if isinstance(node, Call):
        fn = BUILTINS[node.func][1]
        args = [evaluate(arg, bindings) for arg in node.args]
        try:
            return fn(*args)
        except EvalError:
            raise
        except NonConvergence:
            raise
        except (ValueError, OverflowError, ZeroDivisionError) as exc:
            raise EvalError(f"{node.func}{tuple(args)}: {exc}") from exc
    raise TypeError(f"not an AST node: {node!r}")


def variables(node: Node) -> set[str]:
    """Names of all variables appearing in the tree."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Unary):
        return variables(node.operand)
    if isinstance(node, Binary):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Call):
        out = set()
        for arg in node.args:
            out |= variables(arg)
        return out
    return set()


def to_source(node: Node) -> str:
    """Pretty-print an AST; parse(to_source(ast)) is structurally identical."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Unary):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Binary):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({', '.join(to_source(a) for a in node.args)})"
    raise TypeError(f"not an AST node: {node!r}")


def compile_expression(source: str, allowed: set[str]) -> "Expression":
    """Parse and variable-check an expression in one step."""
    return Expression(source, allowed)


class Expression:
    """A parsed expression restricted to a declared variable set."""

    def __init__(self, source: str, allowed: set[str]):
        self.source = source
        self.ast = parse(source)
        extra = variables(self.ast) - set(allowed)
        if extra:
            raise ParseError(
                f"undeclared variable(s) {sorted(extra)}; allowed: {sorted(allowed)}"
            )

    def __call__(self, **bindings: float) -> float:
        return evaluate(self.ast, bindings)

    def __repr__(self):
        return f"Expression({self.source!r})"
