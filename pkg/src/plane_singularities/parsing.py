"""Text grammars for germs, branches and matrices, and their canonical printing (pure, no I/O).

    polynomial  terms over the allowed variables, integer coefficients,
                + - * / ^ and parentheses; division only by nonzero constants
    branch      x = t^<d>; y = <polynomial in t>[; trunc=<int>|inf]
    matrix      d=<int>; trunc=<int>|inf; <entry>; ...   (d*d entries in e)

Errors carry the byte offset of the offending token. Printing emits exactly
the grammar it is parsed from, so parse(print(obj)) == obj.
"""

import re
from fractions import Fraction

import sympy

from plane_singularities.branch import Branch
from plane_singularities.errors import (
    NegativeExponent,
    NonPositiveRamification,
    ParseError,
    PreconditionError,
    UnknownVariable,
    WrongEntryCount,
)
from plane_singularities.polynomial import SparsePoly, sparse_poly, terms
from plane_singularities.series import INFINITY, PuiseuxSeries
from plane_singularities.spectral import MatrixSeries

GERM_VARIABLES = ("x", "y")

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")
_BRANCH_X = re.compile(r"x\s*=\s*t\s*(?:\^\s*(?P<d>-?\s*\d+))?")
_SETTING = re.compile(r"(?P<key>[a-z]+)\s*=\s*(?P<value>\S+)")


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    """Recursive descent over one expression; offsets are relative to `source`."""

    def __init__(self, source: str, start: int, end: int, variables: tuple[str, ...]):
        self.source = source
        self.end = end
        self.variables = {name: sympy.Symbol(name) for name in variables}
        self.tokens: list[tuple[str, str, int]] = []
        position = start
        while position < end:
            match = _TOKEN.match(source, position, end)
            if not match or match.end() == position:
                if source[position:end].strip():
                    offset = position + len(source[position:end]) - len(source[position:end].lstrip())
                    raise ParseError(f"unexpected character {source[offset]!r}", _byte_offset(source, offset))
                break
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        self.index = 0

    def _error(self, detail: str) -> ParseError:
        offset = self.tokens[self.index][2] if self.index < len(self.tokens) else self.end
        return ParseError(detail, _byte_offset(self.source, offset))

    def _peek(self) -> str | None:
        return self.tokens[self.index][1] if self.index < len(self.tokens) else None

    def _take(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> sympy.Expr:
        if not self.tokens:
            raise self._error("empty expression")
        value = self._expression()
        if self.index < len(self.tokens):
            raise self._error(f"unexpected {self._peek()!r}")
        return value

    def _expression(self) -> sympy.Expr:
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self._take()[1] == "-" else 1
        value = sign * self._term()
        while self._peek() in ("+", "-"):
            op = self._take()[1]
            right = self._term()
            value = value + right if op == "+" else value - right
        return value

    def _term(self) -> sympy.Expr:
        value = self._power()
        while self._peek() in ("*", "/"):
            op = self._take()[1]
            position = self.index
            right = self._power()
            if op == "*":
                value = value * right
                continue
            if not right.is_Number:
                self.index = position
                raise self._error("division is only allowed by a constant")
            if right == 0:
                self.index = position
                raise self._error("division by zero")
            value = value / right
        return value

    def _power(self) -> sympy.Expr:
        base = self._atom()
        if self._peek() != "^":
            return base
        self._take()
        negative = False
        if self._peek() == "-":
            negative = True
            self._take()
        if self.index >= len(self.tokens) or self.tokens[self.index][0] != "number":
            raise self._error("exponent must be an integer")
        _, text, offset = self._take()
        if negative:
            raise NegativeExponent(
                f"negative exponent -{text}", f"offset {_byte_offset(self.source, offset)}"
            )
        return base ** int(text)

    def _atom(self) -> sympy.Expr:
        if self.index >= len(self.tokens):
            raise self._error("unexpected end of expression")
        kind, text, offset = self._take()
        if kind == "number":
            return sympy.Integer(int(text))
        if kind == "name":
            if text not in self.variables:
                raise UnknownVariable(f"unknown variable {text!r}", _byte_offset(self.source, offset))
            return self.variables[text]
        if text == "(":
            value = self._expression()
            if self._peek() != ")":
                raise self._error("missing closing parenthesis")
            self._take()
            return value
        self.index -= 1
        raise self._error(f"unexpected {text!r}")


def _expression(source: str, start: int, end: int, variables: tuple[str, ...]) -> sympy.Expr:
    return _Parser(source, start, end, variables).parse()


def parse_polynomial(src: str, variables: tuple[str, ...] = GERM_VARIABLES) -> SparsePoly:
    """An exact polynomial over Q in `variables` (all of them are generators)."""
    expression = _expression(src, 0, len(src), variables)
    return sparse_poly(sympy.expand(expression), *(sympy.Symbol(name) for name in variables))


def _segments(src: str, separator: str = ";") -> list[tuple[int, int]]:
    """(start, end) of every non-blank piece between separators."""
    pieces, start = [], 0
    for index, char in enumerate(src + separator):
        if char == separator:
            if src[start:index].strip():
                left = start + len(src[start:index]) - len(src[start:index].lstrip())
                right = start + len(src[start:index].rstrip())
                pieces.append((left, right))
            start = index + 1
    return pieces


def _truncation(src: str, start: int, end: int) -> int | float:
    match = _SETTING.fullmatch(src, start, end)
    if not match or match.group("key") != "trunc":
        raise ParseError("expected trunc=<int> or trunc=inf", _byte_offset(src, start))
    value = match.group("value")
    if value == "inf":
        return INFINITY
    if not value.isdigit():
        raise ParseError(f"bad truncation {value!r}", _byte_offset(src, match.start("value")))
    return int(value)


def _series_terms(poly: SparsePoly) -> dict[int, Fraction]:
    return {monomial[0]: c for monomial, c in terms(poly).items()}


def parse_branch(src: str) -> Branch:
    """x = t^d; y = ...; with default truncation one past the highest exponent."""
    segments = _segments(src)
    if len(segments) not in (2, 3):
        raise ParseError("expected 'x = t^d; y = ...' with an optional trunc", _byte_offset(src, 0))
    (x_start, x_end), (y_start, y_end) = segments[:2]
    match = _BRANCH_X.fullmatch(src, x_start, x_end)
    if not match:
        raise ParseError("expected x = t^<int>", _byte_offset(src, x_start))
    d = int(match.group("d").replace(" ", "")) if match.group("d") else 1
    if d < 1:
        raise NonPositiveRamification(
            f"ramification index must be positive, got {d}", f"offset {_byte_offset(src, match.start('d'))}"
        )
    y_match = re.compile(r"y\s*=\s*").match(src, y_start, y_end)
    if not y_match:
        raise ParseError("expected y = <polynomial in t>", _byte_offset(src, y_start))
    poly = sparse_poly(
        sympy.expand(_expression(src, y_match.end(), y_end, ("t",))), sympy.Symbol("t")
    )
    coefficients = _series_terms(poly)
    if len(segments) == 3:
        trunc = _truncation(src, *segments[2])
        beyond = [k for k in coefficients if k >= trunc]
        if beyond:
            raise ParseError(f"term t^{max(beyond)} is at or past trunc={trunc}", _byte_offset(src, segments[2][0]))
    else:
        trunc = max(coefficients) + 1 if coefficients else INFINITY
    return Branch.build(d, coefficients, trunc)


def parse_branches(src: str) -> list[Branch]:
    """Branches separated by '|'."""
    branches = []
    for start, end in _segments(src, "|"):
        try:
            branches.append(parse_branch(src[start:end]))
        except ParseError as exc:
            raise type(exc)(exc.detail, _byte_offset(src, start) + exc.offset) from exc
    return branches


def parse_matrix(src: str) -> MatrixSeries:
    """d=<int>; trunc=<int>|inf; then d*d entries in e, row-major."""
    segments = _segments(src)
    if len(segments) < 2:
        raise ParseError("expected d=<int>; trunc=<int>; entries", _byte_offset(src, 0))
    match = _SETTING.fullmatch(src, *segments[0])
    if not match or match.group("key") != "d" or not match.group("value").isdigit():
        raise ParseError("expected d=<int>", _byte_offset(src, segments[0][0]))
    d = int(match.group("value"))
    if d < 1:
        raise PreconditionError(f"matrix size must be positive, got {d}", f"offset {_byte_offset(src, segments[0][0])}")
    trunc = _truncation(src, *segments[1])
    entries = segments[2:]
    if len(entries) != d * d:
        raise WrongEntryCount(f"a {d} x {d} matrix needs {d * d} entries, got {len(entries)}")
    series = []
    for start, end in entries:
        poly = sparse_poly(sympy.expand(_expression(src, start, end, ("e",))), sympy.Symbol("e"))
        coefficients = _series_terms(poly)
        if any(k >= trunc for k in coefficients):
            raise ParseError(f"entry has a term at or past e^{trunc}", _byte_offset(src, start))
        series.append(PuiseuxSeries.build(coefficients, trunc))
    return MatrixSeries.build(d, series, trunc)


def parse_samples(src: str) -> list[Fraction]:
    """Comma-separated rational constants such as "1, 2, -1, 1/2"."""
    samples = []
    for start, end in _segments(src, ","):
        value = _expression(src, start, end, ())
        samples.append(Fraction(int(value.p), int(value.q)))
    return samples


# --- canonical printing --------------------------------------------------------


def _coefficient_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_terms(items: list[tuple[Fraction, str]]) -> str:
    """Signed terms (coefficient, monomial text) joined with + and -."""
    if not items:
        return "0"
    parts = []
    for index, (c, monomial) in enumerate(items):
        magnitude = abs(c)
        if not monomial:
            body = _coefficient_text(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{_coefficient_text(magnitude)}*{monomial}"
        if index == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts)


def _monomial_text(names: tuple[str, ...], exponents: tuple[int, ...]) -> str:
    factors = [
        name if k == 1 else f"{name}^{k}"
        for name, k in zip(names, exponents) if k
    ]
    return "*".join(factors)


def format_polynomial(poly: SparsePoly) -> str:
    names = tuple(str(g) for g in poly.gens)
    return _format_terms([(c, _monomial_text(names, monomial)) for monomial, c in terms(poly).items()])


def _format_series(series: PuiseuxSeries, name: str) -> str:
    items = []
    for exponent, c in series.terms:
        value = c.as_rational()
        if value is None or exponent.denominator != 1:
            raise PreconditionError(f"{series} has no text form: coefficients must be rational")
        items.append((value, _monomial_text((name,), (int(exponent),))))
    return _format_terms(items)


def _trunc_text(trunc) -> str:
    return "inf" if trunc == INFINITY else str(int(trunc))


def format_branch(branch: Branch) -> str:
    return f"x = t^{branch.d}; y = {_format_series(branch.y, 't')}; trunc={_trunc_text(branch.trunc)}"


def format_matrix(matrix: MatrixSeries) -> str:
    entries = [_format_series(entry, "e") for row in matrix.entries for entry in row]
    return "; ".join([f"d={matrix.d}", f"trunc={_trunc_text(matrix.trunc)}", *entries])
