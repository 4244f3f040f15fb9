"""Polynomial expressions in (t, x) for initial data.

The grammar accepts numbers (integers, decimals, exponent notation), the variables
``t`` and ``x``, the imaginary unit ``i``, ``+``, ``-``, ``*``, division by a
constant, and powers with a non-negative integer literal exponent written ``^`` or
``**``. Expressions are lowered to exact polynomials over the Gaussian rationals
and from there to truncated series.
"""

__all__ = [
    "ExprAst",
    "Const",
    "Var",
    "ImaginaryUnit",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Neg",
    "parse_expr",
    "lower_expr",
    "format_expr",
    "expr_to_series",
    "series_to_expr",
    "normalise_expr",
]

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

from swallowtail.algebra.series import TruncatedSeries2, to_scalar, tolerance
from swallowtail.utils.exceptions import ExpressionError

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)|(?P<op>\*\*|[-+*/^()]))"
)


@lru_cache(maxsize=None)
def _expression_ring():
    return ring("t,x", QQ_I, lex)


class ExprAst:
    """Base class of expression nodes.

    Every node records the 0-based ``position`` of the token it was built from.
    Positions do not take part in equality.
    """

    precedence = 5

    def lower(self):
        """Return the node as a sympy polynomial in (t, x)."""
        raise NotImplementedError

    def format(self):
        """Return the node as expression text."""
        raise NotImplementedError


@dataclass(frozen=True)
class Const(ExprAst):
    """A real number literal, held exactly."""

    value: Fraction
    position: int = field(default=0, compare=False, repr=False)

    def lower(self):
        R = _expression_ring()[0]
        return R(sympy.Rational(self.value.numerator, self.value.denominator))

    def format(self):
        return _format_fraction(self.value)


@dataclass(frozen=True)
class Var(ExprAst):
    """The variable ``t`` or ``x``."""

    name: str
    position: int = field(default=0, compare=False, repr=False)

    def lower(self):
        R, t, x = _expression_ring()
        return t if self.name == "t" else x

    def format(self):
        return self.name


@dataclass(frozen=True)
class ImaginaryUnit(ExprAst):
    """The imaginary unit ``i``."""

    position: int = field(default=0, compare=False, repr=False)

    def lower(self):
        return _expression_ring()[0](sympy.I)

    def format(self):
        return "i"


@dataclass(frozen=True)
class _Binary(ExprAst):
    left: ExprAst
    right: ExprAst
    position: int = field(default=0, compare=False, repr=False)

    symbol = ""

    def format(self):
        left = _wrap(self.left, self.precedence, strict=False)
        right = _wrap(self.right, self.precedence, strict=True)
        return f"{left} {self.symbol} {right}"


@dataclass(frozen=True)
class Add(_Binary):
    """Sum of two expressions."""

    precedence = 1
    symbol = "+"

    def lower(self):
        return self.left.lower() + self.right.lower()


@dataclass(frozen=True)
class Sub(_Binary):
    """Difference of two expressions."""

    precedence = 1
    symbol = "-"

    def lower(self):
        return self.left.lower() - self.right.lower()


@dataclass(frozen=True)
class Mul(_Binary):
    """Product of two expressions."""

    precedence = 2
    symbol = "*"

    def lower(self):
        return self.left.lower() * self.right.lower()


@dataclass(frozen=True)
class Div(_Binary):
    """Quotient of an expression by a nonzero constant expression."""

    precedence = 2
    symbol = "/"

    def lower(self):
        numerator, denominator = self.left.lower(), self.right.lower()
        if not denominator.is_ground:
            raise ExpressionError(
                "division is only allowed by a constant, the result would not be "
                "a polynomial",
                position=self.position,
            )
        if not denominator:
            raise ExpressionError("division by zero", position=self.position)
        return numerator.quo_ground(denominator.LC)


@dataclass(frozen=True)
class Pow(ExprAst):
    """Power of an expression with a non-negative integer exponent."""

    base: ExprAst
    exponent: int
    position: int = field(default=0, compare=False, repr=False)

    precedence = 4

    def lower(self):
        return self.base.lower() ** self.exponent

    def format(self):
        return f"{_wrap(self.base, self.precedence, strict=True)}^{self.exponent}"


@dataclass(frozen=True)
class Neg(ExprAst):
    """Negation of an expression."""

    operand: ExprAst
    position: int = field(default=0, compare=False, repr=False)

    precedence = 3

    def lower(self):
        return -self.operand.lower()

    def format(self):
        return f"-{_wrap(self.operand, self.precedence, strict=False)}"


def _wrap(node, precedence, strict):
    text = node.format()
    if node.precedence < precedence or (strict and node.precedence == precedence):
        return f"({text})"
    return text


def _format_fraction(value):
    if value.denominator == 1:
        return str(value.numerator)
    # literals are decimals, so the denominator divides a power of ten
    for digits in range(1, 64):
        if 10**digits % value.denominator == 0:
            scaled = abs(value.numerator) * (10**digits // value.denominator)
            whole, frac = divmod(scaled, 10**digits)
            sign = "-" if value < 0 else ""
            return f"{sign}{whole}.{str(frac).zfill(digits).rstrip('0')}"
    return f"({value.numerator}/{value.denominator})"


class _Parser:
    """Recursive descent parser over the token stream of an expression."""

    def __init__(self, source):
        self.source = source
        self.tokens = self._tokenize(source)
        self.index = 0

    def _tokenize(self, source):
        tokens = []
        pos = 0
        while pos < len(source):
            if source[pos:].strip() == "":
                break
            match = _TOKEN.match(source, pos)
            if match is None or match.end() == pos:
                start = len(source) - len(source[pos:].lstrip())
                raise ExpressionError(
                    f"unexpected character {source[start]!r}", source, start
                )
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind)))
            pos = match.end()
        tokens.append(("end", "", len(source)))
        return tokens

    def error(self, message, position=None):
        position = self.peek()[2] if position is None else position
        return ExpressionError(message, self.source, position)

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, *ops):
        kind, text, position = self.peek()
        if kind == "op" and text in ops:
            self.index += 1
            return text, position
        return None

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        node = self.sum()
        kind, text, position = self.peek()
        if kind != "end":
            raise self.error(f"unexpected {text!r}")
        return node

    def sum(self):
        node = self.product()
        while (op := self.accept("+", "-")) is not None:
            cls = Add if op[0] == "+" else Sub
            node = cls(node, self.product(), position=op[1])
        return node

    def product(self):
        node = self.unary()
        while (op := self.accept("*", "/")) is not None:
            cls = Mul if op[0] == "*" else Div
            node = cls(node, self.unary(), position=op[1])
        return node

    def unary(self):
        if (op := self.accept("-")) is not None:
            return Neg(self.unary(), position=op[1])
        if self.accept("+") is not None:
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if (op := self.accept("^", "**")) is not None:
            kind, text, position = self.advance()
            if kind != "number" or not text.isdigit():
                raise self.error(
                    "powers must be non-negative integer literals", position
                )
            node = Pow(node, int(text), position=op[1])
            if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
                raise self.error("chained powers must be parenthesised")
        return node

    def atom(self):
        kind, text, position = self.advance()
        if kind == "number":
            return Const(Fraction(text), position=position)
        if kind == "name":
            if text in ("t", "x"):
                return Var(text, position=position)
            if text == "i":
                return ImaginaryUnit(position=position)
            raise self.error(
                f"unknown name {text!r}, expressions are polynomials in t and x",
                position,
            )
        if kind == "op" and text == "(":
            node = self.sum()
            if self.accept(")") is None:
                raise self.error("expected ')'")
            return node
        if kind == "end":
            raise self.error("unexpected end of expression", position)
        raise self.error(f"unexpected {text!r}", position)


def parse_expr(source):
    """Parse an initial data expression.

    Parameters
    ----------
    source : str
        Expression text, e.g. ``"1 - t^2/10"``.

    Returns
    -------
    ast : ExprAst
        The expression tree.

    Raises
    ------
    ExpressionError
        On a syntax error, with the position of the offending character.

    Examples
    --------
    >>> parse_expr("t/2")
    Div(left=Var(name='t'), right=Const(value=Fraction(2, 1)))
    """
    if not isinstance(source, str):
        raise ExpressionError(f"expression must be a string, got {type(source)}")
    return _Parser(source).parse()


def lower_expr(ast):
    """Lower an expression tree to an exact polynomial.

    Returns
    -------
    poly : sympy PolyElement
        Polynomial in (t, x) over the Gaussian rationals.

    Raises
    ------
    ExpressionError
        If the tree divides by a non-constant or by zero.
    """
    return ast.lower()


def format_expr(ast):
    """Print an expression tree with the fewest parentheses that parse back to it.

    Examples
    --------
    >>> format_expr(parse_expr("(1 - (t^2)/10)"))
    '1 - t^2 / 10'
    """
    return ast.format()


def normalise_expr(source):
    """Canonical text of an expression, ``format_expr(parse_expr(source))``."""
    return format_expr(parse_expr(source))


def _gaussian_parts(c):
    value = QQ_I.to_sympy(c)
    re_part, im_part = sympy.re(value), sympy.im(value)
    return (
        Fraction(int(re_part.p), int(re_part.q)),
        Fraction(int(im_part.p), int(im_part.q)),
    )


def expr_to_series(expr, order, precision):
    """Lower an expression to a truncated series.

    Parameters
    ----------
    expr : str or ExprAst
        The expression.
    order : int
        Truncation order M.
    precision : int
        Significant digits.

    Returns
    -------
    series : TruncatedSeries2
        The polynomial with every term of total degree M or more dropped.
    """
    ast = parse_expr(expr) if isinstance(expr, str) else expr
    try:
        poly = lower_expr(ast)
    except ExpressionError as e:
        if isinstance(expr, str) and e.source is None:
            raise ExpressionError(e.args[0], expr, e.position) from e
        raise
    terms = {}
    for (l, m), c in poly.terms():
        re_part, im_part = _gaussian_parts(c)
        value = to_scalar(re_part, precision)
        if im_part:
            value = value + to_scalar(im_part, precision) * 1j
        terms[(l, m)] = value
    return TruncatedSeries2.from_terms(terms, order, precision)


def _format_number(value, precision):
    if precision <= 15:
        text = repr(float(value))
    else:
        text = mpmath.nstr(value, precision, strip_zeros=True)
    if text.endswith(".0"):
        text = text[:-2]
    return text.replace("e+", "e")


def _format_coefficient(value, precision, tol):
    re_part, im_part = value.real, value.imag
    re_text = _format_number(re_part, precision) if abs(re_part) > tol else ""
    im_text = _format_number(im_part, precision) if abs(im_part) > tol else ""
    if im_text:
        im_text = "i" if im_text == "1" else f"{im_text}*i"
        if im_text.startswith("-1*"):
            im_text = "-" + im_text[3:]
        if re_text:
            sign = " - " if im_text.startswith("-") else " + "
            return f"({re_text}{sign}{im_text.lstrip('-')})"
        return f"({im_text})" if im_text.startswith("-") else im_text
    return re_text


def series_to_expr(series, tol=None):
    """Print a truncated series as an expression that parses back to it.

    Terms are ordered by total degree, then by decreasing power of x.
    Coefficients below ``tol`` are dropped.

    Examples
    --------
    >>> s = TruncatedSeries2.from_terms({(1, 0): 0.5, (0, 1): 1.0}, 4, 15)
    >>> series_to_expr(s)
    'x + 0.5*t'
    """
    tol = tolerance(series.precision) if tol is None else tol
    monomials = sorted(series.terms, key=lambda lm: (lm[0] + lm[1], lm[0]))
    parts = []
    for l, m in monomials:
        coefficient = _format_coefficient(
            series.coefficient(l, m), series.precision, tol
        )
        if not coefficient:
            continue
        powers = [
            name if e == 1 else f"{name}^{e}"
            for name, e in (("t", l), ("x", m))
            if e > 0
        ]
        if not powers:
            parts.append(coefficient)
        elif coefficient in ("1", "-1"):
            parts.append(("-" if coefficient == "-1" else "") + "*".join(powers))
        else:
            parts.append("*".join([coefficient] + powers))
    if not parts:
        return "0"
    text = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            text += f" - {part[1:]}"
        else:
            text += f" + {part}"
    return text
