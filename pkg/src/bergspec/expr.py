"""Analytic expression trees with forward-mode derivative propagation.

A Jet carries the value of an analytic function together with its first
three derivatives at a point, so one evaluation of an expression tree
yields h, h', h'', h''' simultaneously.  All arithmetic works elementwise
on numpy arrays as well as on python complex scalars.  Branch functions
(log, sqrt, pow) are principal-branch.
"""

from __future__ import annotations

import numpy as np

from .errors import EvaluationError, ExprSyntaxError

__all__ = ["Jet", "AnalyticExpr", "parse_expr", "const", "var", "apply_fn"]


class Jet:
    """Value plus first three derivatives of an analytic function at a point."""

    __slots__ = ("f", "d1", "d2", "d3")

    def __init__(self, f, d1=0.0, d2=0.0, d3=0.0):
        self.f = f
        self.d1 = d1
        self.d2 = d2
        self.d3 = d3

    @staticmethod
    def variable(z):
        zero = np.zeros_like(np.asarray(z)) if isinstance(z, np.ndarray) else 0.0
        one = np.ones_like(np.asarray(z)) if isinstance(z, np.ndarray) else 1.0
        return Jet(z, one, zero, zero)

    @staticmethod
    def constant(c, like=None):
        if isinstance(like, np.ndarray):
            zero = np.zeros_like(like)
            return Jet(np.full_like(like, c), zero, zero, zero)
        return Jet(c, 0.0, 0.0, 0.0)

    def __add__(self, o):
        if not isinstance(o, Jet):
            return Jet(self.f + o, self.d1, self.d2, self.d3)
        return Jet(self.f + o.f, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.f, -self.d1, -self.d2, -self.d3)

    def __sub__(self, o):
        return self + (-o if isinstance(o, Jet) else Jet(-o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Jet):
            return Jet(self.f * o, self.d1 * o, self.d2 * o, self.d3 * o)
        f, g = self, o
        return Jet(
            f.f * g.f,
            f.d1 * g.f + f.f * g.d1,
            f.d2 * g.f + 2 * f.d1 * g.d1 + f.f * g.d2,
            f.d3 * g.f + 3 * f.d2 * g.d1 + 3 * f.d1 * g.d2 + f.f * g.d3,
        )

    __rmul__ = __mul__

    def __truediv__(self, o):
        if not isinstance(o, Jet):
            return self * (1.0 / o)
        f, g = self, o
        v0 = f.f / g.f
        v1 = (f.d1 - v0 * g.d1) / g.f
        v2 = (f.d2 - 2 * v1 * g.d1 - v0 * g.d2) / g.f
        v3 = (f.d3 - 3 * v2 * g.d1 - 3 * v1 * g.d2 - v0 * g.d3) / g.f
        return Jet(v0, v1, v2, v3)

    def __rtruediv__(self, o):
        return Jet(o + 0j) / self

    def ipow(self, n: int):
        """Integer power by repeated squaring (branch free)."""
        if n == 0:
            return Jet(np.ones_like(self.f) if isinstance(self.f, np.ndarray) else 1.0 + 0j)
        if n < 0:
            return 1.0 / self.ipow(-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            base = base * base
            n >>= 1
        return result

    def exp(self):
        e = np.exp(self.f)
        f1, f2, f3 = self.d1, self.d2, self.d3
        return Jet(e, e * f1, e * (f1 * f1 + f2), e * (f1 ** 3 + 3 * f1 * f2 + f3))

    def log(self):
        f0, f1, f2, f3 = self.f, self.d1, self.d2, self.d3
        if np.any(np.asarray(f0) == 0):
            raise EvaluationError("log/pow evaluated at a branch point (argument 0)")
        q1 = f1 / f0
        return Jet(
            np.log(f0),
            q1,
            f2 / f0 - q1 * q1,
            f3 / f0 - 3 * f1 * f2 / (f0 * f0) + 2 * q1 ** 3,
        )

    def sqrt(self):
        if np.any(np.asarray(self.f) == 0):
            raise EvaluationError("sqrt evaluated at a branch point (argument 0)")
        s0 = np.sqrt(self.f)
        s1 = self.d1 / (2 * s0)
        s2 = (self.d2 - 2 * s1 * s1) / (2 * s0)
        s3 = (self.d3 - 6 * s1 * s2) / (2 * s0)
        return Jet(s0, s1, s2, s3)

    def cpow(self, w):
        """Principal-branch power with complex exponent."""
        return (self.log() * w).exp()


# --- expression nodes -------------------------------------------------------

class _Node:
    def jet(self, z_jet: Jet) -> Jet:
        raise NotImplementedError


class _Const(_Node):
    def __init__(self, value):
        self.value = complex(value)

    def jet(self, z_jet):
        like = z_jet.f if isinstance(z_jet.f, np.ndarray) else None
        return Jet.constant(self.value, like=like)

    def __repr__(self):
        return f"{self.value}"


class _Var(_Node):
    def jet(self, z_jet):
        return z_jet

    def __repr__(self):
        return "z"


class _Bin(_Node):
    def __init__(self, op, left, right):
        self.op, self.left, self.right = op, left, right

    def jet(self, z_jet):
        a = self.left.jet(z_jet)
        b = self.right.jet(z_jet)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b

    def __repr__(self):
        return f"({self.left} {self.op} {self.right})"


class _Neg(_Node):
    def __init__(self, child):
        self.child = child

    def jet(self, z_jet):
        return -self.child.jet(z_jet)

    def __repr__(self):
        return f"(-{self.child})"


class _IPow(_Node):
    def __init__(self, base, n):
        self.base, self.n = base, n

    def jet(self, z_jet):
        return self.base.jet(z_jet).ipow(self.n)

    def __repr__(self):
        return f"({self.base}^{self.n})"


class _Fn(_Node):
    def __init__(self, name, args):
        self.name, self.args = name, args

    def jet(self, z_jet):
        a = self.args[0].jet(z_jet)
        if self.name == "exp":
            return a.exp()
        if self.name == "log":
            return a.log()
        if self.name == "sqrt":
            return a.sqrt()
        # pow(base, exponent); constant exponent is the supported form
        exponent = self.args[1]
        if isinstance(exponent, _Const):
            return a.cpow(exponent.value)
        return a.cpow(exponent.jet(z_jet).f)

    def __repr__(self):
        return f"{self.name}({', '.join(map(repr, self.args))})"


class _Deriv(_Node):
    """Derivative of a subtree; shifts the jet down one order.

    The third-order slot of the shifted jet is unavailable and set to 0;
    nothing in the package consumes a third derivative of a _Deriv node.
    """

    def __init__(self, child):
        self.child = child

    def jet(self, z_jet):
        j = self.child.jet(z_jet)
        zero = np.zeros_like(j.f) if isinstance(j.f, np.ndarray) else 0.0
        return Jet(j.d1, j.d2, j.d3, zero)

    def __repr__(self):
        return f"D[{self.child}]"


class AnalyticExpr:
    """Evaluable analytic expression on the unit disk."""

    def __init__(self, root: _Node, text: str | None = None):
        self._root = root
        self._text = text

    def jet(self, z) -> Jet:
        return self._root.jet(Jet.variable(np.asarray(z, dtype=complex) if isinstance(z, (np.ndarray, list)) else complex(z)))

    def __call__(self, z):
        return self.jet(z).f

    def deriv(self, z):
        return self.jet(z).d1

    def deriv2(self, z):
        return self.jet(z).d2

    def derivative(self) -> "AnalyticExpr":
        return AnalyticExpr(_Deriv(self._root), text=f"D[{self._text or self._root!r}]")

    def __repr__(self):
        return f"AnalyticExpr({self._text or self._root!r})"


# --- programmatic constructors (used for built-in models) -------------------

def const(c) -> AnalyticExpr:
    return AnalyticExpr(_Const(c))


def var() -> AnalyticExpr:
    return AnalyticExpr(_Var())


def _wrap(x):
    if isinstance(x, AnalyticExpr):
        return x._root
    return _Const(x)


def combine(op, a, b) -> AnalyticExpr:
    return AnalyticExpr(_Bin(op, _wrap(a), _wrap(b)))


def apply_fn(name, *args) -> AnalyticExpr:
    if name == "ipow":
        return AnalyticExpr(_IPow(_wrap(args[0]), int(args[1])))
    return AnalyticExpr(_Fn(name, [_wrap(a) for a in args]))


def _add_ops():
    def mk(op):
        def f(self, other):
            return combine(op, self, other)

        def rf(self, other):
            return combine(op, other, self)

        return f, rf

    for op, name in (("+", "add"), ("-", "sub"), ("*", "mul"), ("/", "truediv")):
        f, rf = mk(op)
        setattr(AnalyticExpr, f"__{name}__", f)
        setattr(AnalyticExpr, f"__r{name}__", rf)
    AnalyticExpr.__neg__ = lambda self: AnalyticExpr(_Neg(self._root))


_add_ops()


# --- parser -----------------------------------------------------------------

_FUNCS = {"exp": 1, "log": 1, "sqrt": 1, "pow": 2}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ExprSyntaxError(msg, self.pos + 1)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1

    def parse(self) -> _Node:
        node = self.expr()
        if self.peek():
            self.error(f"unexpected character '{self.peek()}'")
        return node

    def expr(self) -> _Node:
        node = self.term()
        while self.peek() and self.peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            node = _Bin(op, node, self.term())
        return node

    def term(self) -> _Node:
        node = self.unary()
        while self.peek() and self.peek() in "*/":
            op = self.text[self.pos]
            self.pos += 1
            node = _Bin(op, node, self.unary())
        return node

    def unary(self) -> _Node:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return _Neg(self.unary())
        if ch == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> _Node:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            n = self.integer()
            return _IPow(base, -n if neg else n)
        return base

    def integer(self) -> int:
        start = self.pos
        self.peek()
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer exponent ('^' takes integers; use pow() otherwise)")
        return int(self.text[start:self.pos])

    def atom(self) -> _Node:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch.isdigit() or ch == ".":
            return self.number()
        if ch.isalpha():
            return self.identifier()
        self.error(f"unexpected character '{ch or '<end>'}'")

    def number(self) -> _Node:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] in ".eE"):
            if self.text[self.pos] in "eE" and self.pos + 1 < len(self.text) and self.text[self.pos + 1] in "+-":
                self.pos += 1
            self.pos += 1
        try:
            value = float(self.text[start:self.pos])
        except ValueError:
            self.pos = start
            self.error("malformed number")
        if self.pos < len(self.text) and self.text[self.pos] == "i":
            self.pos += 1
            return _Const(value * 1j)
        return _Const(value)

    def identifier(self) -> _Node:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        name = self.text[start:self.pos]
        if name == "z":
            return _Var()
        if name == "i":
            return _Const(1j)
        if name == "pi":
            return _Const(np.pi)
        if name in _FUNCS:
            self.expect("(")
            args = [self.expr()]
            for _ in range(_FUNCS[name] - 1):
                self.expect(",")
                args.append(self.expr())
            self.expect(")")
            return _Fn(name, args)
        self.pos = start
        self.error(f"unknown identifier '{name}'")


def parse_expr(text: str) -> AnalyticExpr:
    """Parse an expression string over z into an evaluable tree."""
    return AnalyticExpr(_Parser(text).parse(), text=text)
