"""Expression trees for elementary functions of one variable.

The expression language covers rational constants, the constant pi, symbols,
negation, sums, products, quotients, integer powers and a fixed set of
function heads.  Trees are immutable and hashable; parsing and printing are
exact inverses on the structural level (``parse(to_text(e)) == e``).

Numeric evaluation is done with mpmath at an explicitly requested decimal
precision; precision is never ambient state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

import mpmath as mp

__all__ = [
    "Expr",
    "ExprError",
    "ParseError",
    "EvalError",
    "DomainError",
    "PoleError",
    "BranchCutError",
    "UnboundSymbolError",
    "FUNCTIONS",
    "PI",
    "ZERO",
    "ONE",
    "rational",
    "symbol",
    "neg",
    "add",
    "sub",
    "mul",
    "div",
    "ipow",
    "func",
    "parse_expr",
    "to_text",
    "substitute",
    "fold",
    "free_symbols",
    "eval_real",
    "eval_complex",
    "ComplexVal",
]

# Function heads admitted by the grammar.  tanh/artanh/arcoth occur only in
# operator images, never as operator operands.
FUNCTIONS = (
    "exp", "ln", "sin", "cos", "tan", "cot", "sec", "csc",
    "sinh", "cosh", "tanh", "arctan", "arccot", "artanh", "arcoth", "sqrt",
)

# mpmath.mpc plays the role of a complex value with configurable-precision
# real and imaginary parts (.real / .imag).
ComplexVal = mp.mpc


class ExprError(Exception):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class EvalError(ExprError):
    pass


class DomainError(EvalError):
    pass


class PoleError(EvalError):
    pass


class BranchCutError(EvalError):
    pass


class UnboundSymbolError(EvalError):
    pass


@dataclass(frozen=True)
class Expr:
    """One node of an expression tree.

    kind is one of "rat", "pi", "sym", "neg", "add", "mul", "div", "pow",
    "call".  ``value`` carries the Fraction payload of "rat", the name of a
    "sym", the integer exponent of "pow" or the function name of "call".
    """

    kind: str
    args: tuple["Expr", ...] = ()
    value: object = None

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Expr({to_text(self)!r})"


# ---------------------------------------------------------------------------
# raw constructors (no folding; used by the parser)

PI = Expr("pi")
ZERO = Expr("rat", value=Fraction(0))
ONE = Expr("rat", value=Fraction(1))


def rational(p: Union[int, Fraction], q: int = 1) -> Expr:
    return Expr("rat", value=Fraction(p, q))


def symbol(name: str) -> Expr:
    return Expr("sym", value=name)


def _raw_neg(a: Expr) -> Expr:
    return Expr("neg", (a,))


def _raw_add(a: Expr, b: Expr) -> Expr:
    return Expr("add", (a, b))


def _raw_mul(a: Expr, b: Expr) -> Expr:
    return Expr("mul", (a, b))


def _raw_div(a: Expr, b: Expr) -> Expr:
    return Expr("div", (a, b))


def _raw_pow(a: Expr, n: int) -> Expr:
    return Expr("pow", (a,), int(n))


def _raw_call(name: str, a: Expr) -> Expr:
    if name not in FUNCTIONS:
        raise ExprError(f"unknown function head {name!r}")
    return Expr("call", (a,), name)


# ---------------------------------------------------------------------------
# folding constructors (light, deterministic simplification)

def is_rat(e: Expr) -> bool:
    return e.kind == "rat"


def rat_value(e: Expr) -> Fraction:
    assert e.kind == "rat"
    return e.value  # type: ignore[return-value]


def is_zero(e: Expr) -> bool:
    return e.kind == "rat" and e.value == 0


def is_one(e: Expr) -> bool:
    return e.kind == "rat" and e.value == 1


def neg(a: Expr) -> Expr:
    if is_rat(a):
        return rational(-rat_value(a))
    if a.kind == "neg":
        return a.args[0]
    return _raw_neg(a)


def add(a: Expr, b: Expr) -> Expr:
    if is_rat(a) and is_rat(b):
        return rational(rat_value(a) + rat_value(b))
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    return _raw_add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    return add(a, neg(b))


def mul(a: Expr, b: Expr) -> Expr:
    if is_rat(a) and is_rat(b):
        return rational(rat_value(a) * rat_value(b))
    if is_zero(a) or is_zero(b):
        return ZERO
    if is_one(a):
        return b
    if is_one(b):
        return a
    return _raw_mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if is_rat(b):
        if rat_value(b) == 0:
            raise ExprError("quotient with constant zero denominator")
        if is_rat(a):
            return rational(rat_value(a) / rat_value(b))
        # canonical form: division by a rational becomes a scalar multiple
        return mul(rational(1 / rat_value(b)), a)
    return _raw_div(a, b)


def ipow(a: Expr, n: int) -> Expr:
    n = int(n)
    if n == 0:
        return ONE
    if n == 1:
        return a
    if is_rat(a):
        v = rat_value(a)
        if v == 0 and n < 0:
            raise ExprError("zero to a negative power")
        return rational(v ** n)
    return _raw_pow(a, n)


_EXACT_CALLS = {
    ("exp", Fraction(0)): ONE,
    ("ln", Fraction(1)): ZERO,
    ("sin", Fraction(0)): ZERO,
    ("cos", Fraction(0)): ONE,
    ("tan", Fraction(0)): ZERO,
    ("sinh", Fraction(0)): ZERO,
    ("cosh", Fraction(0)): ONE,
    ("tanh", Fraction(0)): ZERO,
    ("arctan", Fraction(0)): ZERO,
    ("artanh", Fraction(0)): ZERO,
    ("sqrt", Fraction(0)): ZERO,
    ("sqrt", Fraction(1)): ONE,
}


_ODD_HEADS = ("sin", "tan", "cot", "csc", "sinh", "tanh", "arctan", "artanh", "arcoth")
_EVEN_HEADS = ("cos", "sec", "cosh")


def _strip_sign(e: Expr):
    """Pull the sign of a product tree out front: e == sign * result."""
    if e.kind == "neg":
        s, inner = _strip_sign(e.args[0])
        return -s, inner
    if e.kind == "rat" and rat_value(e) < 0:
        return -1, rational(-rat_value(e))
    if e.kind in ("mul", "div"):
        s1, a = _strip_sign(e.args[0])
        s2, b = _strip_sign(e.args[1])
        rebuilt = mul(a, b) if e.kind == "mul" else div(a, b)
        return s1 * s2, rebuilt
    return 1, e


def func(name: str, a: Expr) -> Expr:
    if name not in FUNCTIONS:
        raise ExprError(f"unknown function head {name!r}")
    if is_rat(a):
        hit = _EXACT_CALLS.get((name, rat_value(a)))
        if hit is not None:
            return hit
        if name == "sqrt":
            v = rat_value(a)
            if v >= 0 and _is_square(v.numerator) and _is_square(v.denominator):
                return rational(Fraction(_isqrt_exact(v.numerator),
                                         _isqrt_exact(v.denominator)))
    if name in _ODD_HEADS or name in _EVEN_HEADS:
        sign, inner = _strip_sign(a)
        if sign < 0:
            body = func(name, inner)
            return body if name in _EVEN_HEADS else neg(body)
        a = inner
    if name == "arccot" and is_zero(a):
        return div(PI, rational(2))
    return _raw_call(name, a)


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _isqrt_exact(n: int) -> int:
    return math.isqrt(n)


def fold(e: Expr) -> Expr:
    """Rebuild a tree bottom-up through the folding constructors."""
    if e.kind in ("rat", "pi", "sym"):
        return e
    if e.kind == "neg":
        return neg(fold(e.args[0]))
    if e.kind == "add":
        return add(fold(e.args[0]), fold(e.args[1]))
    if e.kind == "mul":
        return mul(fold(e.args[0]), fold(e.args[1]))
    if e.kind == "div":
        return div(fold(e.args[0]), fold(e.args[1]))
    if e.kind == "pow":
        return ipow(fold(e.args[0]), e.value)  # type: ignore[arg-type]
    if e.kind == "call":
        return func(e.value, fold(e.args[0]))  # type: ignore[arg-type]
    raise ExprError(f"unknown node kind {e.kind!r}")


def substitute(e: Expr, bindings: Mapping[str, Expr]) -> Expr:
    """Replace symbols by expressions; the result is folded."""
    if e.kind == "sym":
        return bindings.get(e.value, e)  # type: ignore[arg-type]
    if e.kind in ("rat", "pi"):
        return e
    args = tuple(substitute(a, bindings) for a in e.args)
    if e.kind == "neg":
        return neg(args[0])
    if e.kind == "add":
        return add(args[0], args[1])
    if e.kind == "mul":
        return mul(args[0], args[1])
    if e.kind == "div":
        return div(args[0], args[1])
    if e.kind == "pow":
        return ipow(args[0], e.value)  # type: ignore[arg-type]
    if e.kind == "call":
        return func(e.value, args[0])  # type: ignore[arg-type]
    raise ExprError(f"unknown node kind {e.kind!r}")


def free_symbols(e: Expr) -> frozenset:
    if e.kind == "sym":
        return frozenset((e.value,))
    out: frozenset = frozenset()
    for a in e.args:
        out |= free_symbols(a)
    return out


# ---------------------------------------------------------------------------
# parser
#
# expr   := term (('+'|'-') term)*
# term   := factor (('*'|'/') factor)*
# factor := ('-' factor) | atom ('^' integer)?
# atom   := number | 'pi' | symbol | func '(' expr ')' | '(' expr ')'
# number := integer ('/' integer)?
#
# Unary minus binds looser than '^' (precedence ^ > unary - > * / > + -),
# so "-x^2" parses as -(x^2).  An integer followed by '/' and another
# integer is a single rational literal.

_TOKEN_OPS = "+-*/^()"


def _tokenize(text: str):
    tokens = []  # (kind, payload, pos); kind in {"int","name","op"}
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in _TOKEN_OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, payload, pos = self.next()
        if kind != "op" or payload != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, payload, _ = self.peek()
            if kind == "op" and payload in "+-":
                self.next()
                rhs = self.term()
                e = _raw_add(e, _raw_neg(rhs) if payload == "-" else rhs)
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, payload, _ = self.peek()
            if kind == "op" and payload in "*/":
                self.next()
                rhs = self.factor()
                e = _raw_mul(e, rhs) if payload == "*" else _raw_div(e, rhs)
            else:
                return e

    def factor(self) -> Expr:
        kind, payload, _ = self.peek()
        if kind == "op" and payload == "-":
            self.next()
            inner = self.factor()
            # fold a literal directly into a negative rational constant
            if inner.kind == "rat":
                return rational(-rat_value(inner))
            return _raw_neg(inner)
        e = self.atom()
        kind, payload, _ = self.peek()
        if kind == "op" and payload == "^":
            self.next()
            e = _raw_pow(e, self.integer())
        return e

    def integer(self) -> int:
        kind, payload, pos = self.next()
        sign = 1
        if kind == "op" and payload == "-":
            sign = -1
            kind, payload, pos = self.next()
        if kind != "int":
            raise ParseError("expected integer exponent", pos)
        return sign * payload

    def atom(self) -> Expr:
        kind, payload, pos = self.next()
        if kind == "int":
            nkind, npayload, _ = self.peek()
            if nkind == "op" and npayload == "/" and self.peek(1)[0] == "int":
                self.next()
                _, den, dpos = self.next()
                if den == 0:
                    raise ParseError("zero denominator in rational literal", dpos)
                return rational(payload, den)
            return rational(payload)
        if kind == "name":
            if payload == "pi":
                return PI
            nkind, npayload, _ = self.peek()
            if nkind == "op" and npayload == "(":
                if payload not in FUNCTIONS:
                    raise ParseError(f"unknown function name {payload!r}", pos)
                self.next()
                inner = self.expr()
                self.expect_op(")")
                return _raw_call(payload, inner)
            return symbol(payload)
        if kind == "op" and payload == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected an atom", pos)


def parse_expr(text: str) -> Expr:
    """Parse ``text`` under standard precedence; whitespace-insensitive."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer

_PREC_ADD, _PREC_NEG, _PREC_MUL, _PREC_POW, _PREC_ATOM = 10, 15, 20, 30, 40


def _prec(e: Expr) -> int:
    if e.kind == "add":
        return _PREC_ADD
    if e.kind == "neg":
        return _PREC_NEG
    if e.kind in ("mul", "div"):
        return _PREC_MUL
    if e.kind == "pow":
        return _PREC_POW
    if e.kind == "rat" and rat_value(e) < 0:
        return _PREC_NEG
    return _PREC_ATOM


def _wrap(e: Expr, minimum: int) -> str:
    s = to_text(e)
    return f"({s})" if _prec(e) < minimum else s


def to_text(e: Expr) -> str:
    if e.kind == "rat":
        v = rat_value(e)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if e.kind == "pi":
        return "pi"
    if e.kind == "sym":
        return str(e.value)
    if e.kind == "neg":
        # unary minus binds a single factor: parenthesize anything looser
        return "-" + _wrap(e.args[0], _PREC_POW)
    if e.kind == "add":
        a, b = e.args
        left = _wrap(a, _PREC_ADD)
        if b.kind == "neg":
            return f"{left} - {_wrap(b.args[0], _PREC_ADD + 1)}"
        return f"{left} + {_wrap(b, _PREC_ADD + 1)}"
    if e.kind == "mul":
        a, b = e.args
        return f"{_wrap(a, _PREC_MUL)}*{_wrap(b, _PREC_MUL + 1)}"
    if e.kind == "div":
        a, b = e.args
        left = _wrap(a, _PREC_MUL)
        right = _wrap(b, _PREC_MUL + 1)
        # an integer right after '/' would re-lex as part of a rational
        # literal; parenthesize rational denominators to keep the node
        if b.kind == "rat":
            right = f"({right})"
        return f"{left}/{right}"
    if e.kind == "pow":
        n = e.value
        base = _wrap(e.args[0], _PREC_ATOM)
        return f"{base}^{n}" if n >= 0 else f"{base}^-{-n}"
    if e.kind == "call":
        return f"{e.value}({to_text(e.args[0])})"
    raise ExprError(f"unknown node kind {e.kind!r}")


# ---------------------------------------------------------------------------
# numeric evaluation

def _arccot_real(x):
    return mp.pi / 2 - mp.atan(x)


_REAL_FUNCS: dict[str, Callable] = {
    "exp": mp.exp, "sin": mp.sin, "cos": mp.cos, "tan": mp.tan,
    "cot": mp.cot, "sec": mp.sec, "csc": mp.csc,
    "sinh": mp.sinh, "cosh": mp.cosh, "tanh": mp.tanh,
    "arctan": mp.atan, "arccot": _arccot_real,
}


def eval_real(e: Expr, bindings: Mapping[str, object] | None = None,
              digits: int = 30) -> mp.mpf:
    """Evaluate on the reals at the requested decimal precision.

    arccot has range (0, pi): arccot(t) = pi/2 - arctan(t), so that
    arccot(-t) = pi - arccot(t).
    """
    bindings = bindings or {}
    with mp.workdps(digits):
        vals = {k: mp.mpf(v) if not isinstance(v, mp.mpf) else v
                for k, v in bindings.items()}
        return +_eval_real(e, vals)


def _eval_real(e: Expr, vals: Mapping[str, mp.mpf]) -> mp.mpf:
    if e.kind == "rat":
        v = rat_value(e)
        return mp.mpf(v.numerator) / v.denominator
    if e.kind == "pi":
        return +mp.pi
    if e.kind == "sym":
        try:
            return vals[e.value]  # type: ignore[index]
        except KeyError:
            raise UnboundSymbolError(f"unbound symbol {e.value!r}") from None
    if e.kind == "neg":
        return -_eval_real(e.args[0], vals)
    if e.kind == "add":
        return _eval_real(e.args[0], vals) + _eval_real(e.args[1], vals)
    if e.kind == "mul":
        return _eval_real(e.args[0], vals) * _eval_real(e.args[1], vals)
    if e.kind == "div":
        den = _eval_real(e.args[1], vals)
        if den == 0:
            raise PoleError("division by zero")
        return _eval_real(e.args[0], vals) / den
    if e.kind == "pow":
        base = _eval_real(e.args[0], vals)
        n = e.value
        if base == 0 and n < 0:
            raise PoleError("zero base with negative exponent")
        return base ** n
    if e.kind == "call":
        x = _eval_real(e.args[0], vals)
        name = e.value
        if name == "ln":
            if x <= 0:
                raise DomainError("ln of a non-positive value")
            return mp.ln(x)
        if name == "sqrt":
            if x < 0:
                raise DomainError("sqrt of a negative value")
            return mp.sqrt(x)
        if name == "artanh":
            if abs(x) >= 1:
                raise DomainError("artanh outside (-1, 1)")
            return mp.atanh(x)
        if name == "arcoth":
            if abs(x) <= 1:
                raise DomainError("arcoth inside [-1, 1]")
            return mp.acoth(x)
        fn = _REAL_FUNCS.get(name)  # type: ignore[arg-type]
        if fn is None:
            raise EvalError(f"no real evaluator for {name!r}")
        try:
            return fn(x)
        except ZeroDivisionError:
            raise PoleError(f"{name} pole hit") from None
    raise ExprError(f"unknown node kind {e.kind!r}")


def eval_complex(e: Expr, bindings: Mapping[str, object] | None = None,
                 digits: int = 30) -> mp.mpc:
    """Principal-branch complex evaluation; ln has Im in (-pi, pi].

    Poles raise PoleError; points exactly on a branch cut raise
    BranchCutError rather than picking a side silently.
    """
    bindings = bindings or {}
    with mp.workdps(digits):
        vals = {k: mp.mpc(v) for k, v in bindings.items()}
        return +_eval_complex(e, vals)


def _eval_complex(e: Expr, vals: Mapping[str, mp.mpc]) -> mp.mpc:
    if e.kind == "rat":
        v = rat_value(e)
        return mp.mpc(mp.mpf(v.numerator) / v.denominator)
    if e.kind == "pi":
        return mp.mpc(mp.pi)
    if e.kind == "sym":
        try:
            return vals[e.value]  # type: ignore[index]
        except KeyError:
            raise UnboundSymbolError(f"unbound symbol {e.value!r}") from None
    if e.kind == "neg":
        return -_eval_complex(e.args[0], vals)
    if e.kind == "add":
        return _eval_complex(e.args[0], vals) + _eval_complex(e.args[1], vals)
    if e.kind == "mul":
        return _eval_complex(e.args[0], vals) * _eval_complex(e.args[1], vals)
    if e.kind == "div":
        den = _eval_complex(e.args[1], vals)
        if den == 0:
            raise PoleError("division by zero")
        return _eval_complex(e.args[0], vals) / den
    if e.kind == "pow":
        base = _eval_complex(e.args[0], vals)
        n = e.value
        if base == 0 and n < 0:
            raise PoleError("zero base with negative exponent")
        return base ** n
    if e.kind == "call":
        z = _eval_complex(e.args[0], vals)
        name = e.value
        if name == "ln":
            if z == 0:
                raise PoleError("ln(0)")
            return mp.log(z)
        if name == "sqrt":
            return mp.sqrt(z)
        if name == "exp":
            return mp.exp(z)
        if name in ("sin", "cos", "sinh", "cosh"):
            return getattr(mp, name)(z)
        if name in ("tan", "cot", "sec", "csc"):
            try:
                return getattr(mp, name)(z)
            except ZeroDivisionError:
                raise PoleError(f"{name} pole hit") from None
        if name == "arctan":
            if z.real == 0 and abs(z.imag) >= 1:
                raise BranchCutError("arctan on its branch cut")
            return mp.atan(z)
        if name == "arccot":
            if z.real == 0 and abs(z.imag) >= 1:
                raise BranchCutError("arccot on its branch cut")
            return mp.pi / 2 - mp.atan(z)
        if name == "artanh":
            if z.imag == 0 and abs(z.real) >= 1:
                raise BranchCutError("artanh on its branch cut")
            return mp.atanh(z)
        if name == "arcoth":
            if z.imag == 0 and abs(z.real) <= 1:
                raise BranchCutError("arcoth on its branch cut")
            return mp.acoth(z)
        if name == "tanh":
            try:
                return mp.tanh(z)
            except ZeroDivisionError:
                raise PoleError("tanh pole hit") from None
    raise ExprError(f"unknown node kind {e.kind!r}")
