"""Profile-function expressions: parsing and order-2 forward-mode evaluation.

Profiles are entered as text in a single variable ``u``.  Grammar, from
loosest to tightest binding (``^`` binds above unary minus):

    expr   := term  (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?      # exponent must fold to a constant
    atom   := NUMBER | "u" | NAME "(" expr ")" | "(" expr ")"

Supported functions: sin cos tan exp log sqrt sinh cosh asinh acosh.

Evaluation returns a :class:`Jet2` carrying the value together with the
first and second derivatives with respect to ``u``, propagated by the
product/chain rules, so there is no truncation error.  ASTs are immutable
and evaluation is pure; expressions may be shared across threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    """Malformed expression text; carries the byte offset and, when known,
    the set of token descriptions that would have been accepted."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if expected:
            detail += " (expected " + ", ".join(sorted(expected)) + ")"
        super().__init__(detail)


class UnknownIdentifierError(ParseError):
    def __init__(self, name: str, offset: int):
        self.name = name
        super().__init__(f"unknown identifier '{name}'", offset)


class DomainError(ArithmeticError):
    """Evaluation point lies outside the expression's natural domain
    (log of a non-positive value, fractional power of a negative base, ...)."""


# ---------------------------------------------------------------- jets


class Jet2:
    """(value, d/du, d2/du2) triple with exact forward-mode arithmetic."""

    __slots__ = ("value", "d1", "d2")

    def __init__(self, value: float, d1: float = 0.0, d2: float = 0.0):
        self.value = float(value)
        self.d1 = float(d1)
        self.d2 = float(d2)

    @staticmethod
    def variable(u: float) -> "Jet2":
        return Jet2(u, 1.0, 0.0)

    @staticmethod
    def constant(c: float) -> "Jet2":
        return Jet2(c, 0.0, 0.0)

    @staticmethod
    def _coerce(x) -> "Jet2":
        return x if isinstance(x, Jet2) else Jet2(x)

    def __repr__(self) -> str:
        return f"Jet2({self.value!r}, {self.d1!r}, {self.d2!r})"

    def __add__(self, o):
        o = Jet2._coerce(o)
        return Jet2(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __sub__(self, o):
        o = Jet2._coerce(o)
        return Jet2(self.value - o.value, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, o):
        return Jet2._coerce(o).__sub__(self)

    def __neg__(self):
        return Jet2(-self.value, -self.d1, -self.d2)

    def __mul__(self, o):
        o = Jet2._coerce(o)
        return Jet2(
            self.value * o.value,
            self.d1 * o.value + self.value * o.d1,
            self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Jet2._coerce(o)
        if o.value == 0.0:
            raise DomainError("division by zero")
        g = o.value
        inv = 1.0 / g
        # reciprocal jet: (1/g)' = -g'/g^2, (1/g)'' = (2 g'^2 - g g'')/g^3
        r = Jet2(inv, -o.d1 * inv * inv, (2.0 * o.d1 * o.d1 - g * o.d2) * inv**3)
        return self * r

    def __rtruediv__(self, o):
        return Jet2._coerce(o).__truediv__(self)


def _chain(f: float, df: float, ddf: float, g: Jet2) -> Jet2:
    return Jet2(f, df * g.d1, ddf * g.d1 * g.d1 + df * g.d2)


def _int_pow(base: float, k: int) -> float:
    # negative bases allowed for integer exponents; avoids float ** surprises
    if base == 0.0:
        return 1.0 if k == 0 else 0.0
    m = math.pow(abs(base), k)
    return -m if (base < 0.0 and k % 2) else m


def pow_jet(x: Jet2, p: float) -> Jet2:
    """x**p for a constant real exponent p; guards the usual domain traps."""
    if p == 0.0:
        return Jet2(1.0)
    if p == 1.0:
        return Jet2(x.value, x.d1, x.d2)
    integral = p == round(p)
    if x.value > 0.0:
        v = math.pow(x.value, p)
        d = p * math.pow(x.value, p - 1.0)
        dd = p * (p - 1.0) * math.pow(x.value, p - 2.0)
        return _chain(v, d, dd, x)
    if not integral:
        raise DomainError(
            f"non-integer exponent {p} requires a positive base, got {x.value}"
        )
    k = int(round(p))
    if x.value == 0.0:
        if k < 0:
            raise DomainError("zero base with negative exponent")
        return _chain(_int_pow(0.0, k), k * _int_pow(0.0, k - 1),
                      k * (k - 1) * _int_pow(0.0, k - 2), x)
    v = _int_pow(x.value, k)
    d = k * _int_pow(x.value, k - 1)
    dd = k * (k - 1) * _int_pow(x.value, k - 2)
    return _chain(v, d, dd, x)


def _sin(x: Jet2) -> Jet2:
    s, c = math.sin(x.value), math.cos(x.value)
    return _chain(s, c, -s, x)


def _cos(x: Jet2) -> Jet2:
    s, c = math.sin(x.value), math.cos(x.value)
    return _chain(c, -s, -c, x)


def _tan(x: Jet2) -> Jet2:
    t = math.tan(x.value)
    sec2 = 1.0 + t * t
    return _chain(t, sec2, 2.0 * t * sec2, x)


def _exp(x: Jet2) -> Jet2:
    e = math.exp(x.value)
    return _chain(e, e, e, x)


def _log(x: Jet2) -> Jet2:
    if x.value <= 0.0:
        raise DomainError(f"log of non-positive value {x.value}")
    inv = 1.0 / x.value
    return _chain(math.log(x.value), inv, -inv * inv, x)


def _sqrt(x: Jet2) -> Jet2:
    if x.value <= 0.0:
        raise DomainError(f"sqrt of non-positive value {x.value}")
    s = math.sqrt(x.value)
    return _chain(s, 0.5 / s, -0.25 / (x.value * s), x)


def _sinh(x: Jet2) -> Jet2:
    return _chain(math.sinh(x.value), math.cosh(x.value), math.sinh(x.value), x)


def _cosh(x: Jet2) -> Jet2:
    return _chain(math.cosh(x.value), math.sinh(x.value), math.cosh(x.value), x)


def _asinh(x: Jet2) -> Jet2:
    w = 1.0 + x.value * x.value
    sw = math.sqrt(w)
    return _chain(math.asinh(x.value), 1.0 / sw, -x.value / (w * sw), x)


def _acosh(x: Jet2) -> Jet2:
    if x.value <= 1.0:
        raise DomainError(f"acosh of value {x.value} <= 1")
    w = x.value * x.value - 1.0
    sw = math.sqrt(w)
    return _chain(math.acosh(x.value), 1.0 / sw, -x.value / (w * sw), x)


FUNCTIONS = {
    "sin": _sin, "cos": _cos, "tan": _tan, "exp": _exp, "log": _log,
    "sqrt": _sqrt, "sinh": _sinh, "cosh": _cosh, "asinh": _asinh,
    "acosh": _acosh,
}


# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expression"


@dataclass(frozen=True)
class Add:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Sub:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Mul:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Div:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pow:
    base: "Expression"
    exponent: float


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expression"


Expression = Union[Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call]

VARIABLE_NAME = "u"


# ---------------------------------------------------------------- tokens

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(
                f"unexpected character {text[i]!r}", i,
                ("number", "identifier", "operator"),
            )
        kind = m.lastgroup
        toks.append((kind, m.group(), i))
        i = m.end()
    toks.append(("eof", "", n))
    return toks


_ATOM_EXPECTED = ("number", f"'{VARIABLE_NAME}'", "function name", "'('")


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, off = self.peek()
        if kind == "op" and text == op:
            return self.take()
        raise ParseError(f"got {text!r}" if text else "unexpected end of input",
                         off, (f"'{op}'",))

    def expr(self):
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                rhs = self.term()
                node = Add(node, rhs) if text == "+" else Sub(node, rhs)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.take()
                rhs = self.unary()
                node = Mul(node, rhs) if text == "*" else Div(node, rhs)
            else:
                return node

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            _, _, exp_off = self.peek()
            exp_node = self.unary()
            return Pow(base, _fold_constant(exp_node, exp_off))
        return base

    def atom(self):
        kind, text, off = self.take()
        if kind == "num":
            return Num(float(text))
        if kind == "ident":
            if text == VARIABLE_NAME:
                return Var()
            if text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            raise UnknownIdentifierError(text, off)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"got {text!r}" if text else "unexpected end of input",
                         off, _ATOM_EXPECTED)


def _fold_constant(node: Expression, offset: int) -> float:
    """Exponents must not depend on u; reduce the sub-tree to a float."""
    def ev(n):
        if isinstance(n, Num):
            return n.value
        if isinstance(n, Var):
            raise ParseError("exponent must be a constant", offset)
        if isinstance(n, Neg):
            return -ev(n.arg)
        if isinstance(n, Add):
            return ev(n.left) + ev(n.right)
        if isinstance(n, Sub):
            return ev(n.left) - ev(n.right)
        if isinstance(n, Mul):
            return ev(n.left) * ev(n.right)
        if isinstance(n, Div):
            d = ev(n.right)
            if d == 0.0:
                raise ParseError("division by zero in constant exponent", offset)
            return ev(n.left) / d
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        if isinstance(n, Call):
            j = FUNCTIONS[n.fn](Jet2.constant(ev(n.arg)))
            return j.value
        raise ParseError("exponent must be a constant", offset)

    try:
        return float(ev(node))
    except DomainError as exc:
        raise ParseError(f"invalid constant exponent ({exc})", offset) from exc


def parse(text: str) -> Expression:
    """Parse expression text to an immutable AST.

    Raises :class:`ParseError` with the byte offset of the first offending
    token; :class:`UnknownIdentifierError` for names other than ``u`` and
    the supported functions.
    """
    toks = _tokenize(text)
    if toks[0][0] == "eof":
        raise ParseError("empty expression", 0, ("expression",))
    p = _Parser(toks)
    node = p.expr()
    kind, text_, off = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {text_!r}", off, ("end of input", "operator"))
    return node


# ---------------------------------------------------------------- printing

_LVL_ADD, _LVL_MUL, _LVL_UNARY, _LVL_POW, _LVL_ATOM = 1, 2, 3, 4, 5


def _fmt_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _level(e: Expression) -> int:
    if isinstance(e, (Num, Var, Call)):
        return _LVL_ATOM
    if isinstance(e, Pow):
        return _LVL_POW
    if isinstance(e, Neg):
        return _LVL_UNARY
    if isinstance(e, (Mul, Div)):
        return _LVL_MUL
    return _LVL_ADD


def _emit(e: Expression, minimum: int) -> str:
    lvl = _level(e)
    if isinstance(e, Num):
        s = _fmt_number(e.value)
    elif isinstance(e, Var):
        s = VARIABLE_NAME
    elif isinstance(e, Neg):
        s = "-" + _emit(e.arg, _LVL_UNARY)
    elif isinstance(e, Add):
        s = _emit(e.left, _LVL_ADD) + "+" + _emit(e.right, _LVL_ADD + 1)
    elif isinstance(e, Sub):
        s = _emit(e.left, _LVL_ADD) + "-" + _emit(e.right, _LVL_ADD + 1)
    elif isinstance(e, Mul):
        s = _emit(e.left, _LVL_MUL) + "*" + _emit(e.right, _LVL_MUL + 1)
    elif isinstance(e, Div):
        s = _emit(e.left, _LVL_MUL) + "/" + _emit(e.right, _LVL_MUL + 1)
    elif isinstance(e, Pow):
        exp = _fmt_number(e.exponent)
        if e.exponent < 0:
            # parser reads a negated exponent through its unary rule
            exp = "-" + _fmt_number(-e.exponent)
        s = _emit(e.base, _LVL_ATOM) + "^" + exp
    elif isinstance(e, Call):
        s = e.fn + "(" + _emit(e.arg, _LVL_ADD) + ")"
    else:  # pragma: no cover
        raise TypeError(f"not an expression node: {e!r}")
    if lvl < minimum:
        return "(" + s + ")"
    return s


def to_text(e: Expression) -> str:
    """Render an AST back to text; ``parse(to_text(e))`` reproduces ``e``
    for any parser-produced AST (and for any AST with non-negative literals)."""
    return _emit(e, _LVL_ADD)


# ---------------------------------------------------------------- evaluation


def eval_jet(e: Expression, u: float) -> Jet2:
    """Evaluate e and its first two u-derivatives at u.

    Exact to floating round-off; raises :class:`DomainError` when u falls
    outside the expression's natural domain.
    """
    if isinstance(e, Num):
        return Jet2(e.value)
    if isinstance(e, Var):
        return Jet2.variable(u)
    if isinstance(e, Neg):
        return -eval_jet(e.arg, u)
    if isinstance(e, Add):
        return eval_jet(e.left, u) + eval_jet(e.right, u)
    if isinstance(e, Sub):
        return eval_jet(e.left, u) - eval_jet(e.right, u)
    if isinstance(e, Mul):
        return eval_jet(e.left, u) * eval_jet(e.right, u)
    if isinstance(e, Div):
        return eval_jet(e.left, u) / eval_jet(e.right, u)
    if isinstance(e, Pow):
        return pow_jet(eval_jet(e.base, u), e.exponent)
    if isinstance(e, Call):
        return FUNCTIONS[e.fn](eval_jet(e.arg, u))
    raise TypeError(f"not an expression node: {e!r}")
