"""
Text format for polynomial systems and approximate solutions.

System files::

    # comment
    vars x y z
    x^4
    x^2*y + y^4
    z + z^2 - 7*x^3 - 8*x^2

Factors are numbers, ``(a+bi)`` complex literals, declared names and
``name^k``; multiplication must be written with ``*``. Start files hold one
number (or complex literal) per line, in ``vars`` order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from src.core.exceptions import ParseError
from src.poly.polynomial import Exponent, Polynomial, PolySystem, Scalar

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INTEGER = re.compile(r"\d+")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op"
    text: str
    column: int
    value: Scalar | None = None


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.replace("\r\n", "\n").replace("\r", "\n").split("\n"), start=1):
        body = _strip_comment(raw)
        if body.strip():
            yield number, body


def _parse_complex_literal(inner: str, line: int, column: int) -> complex:
    compact = inner.replace(" ", "").replace("\t", "")
    if not compact or "j" in compact or "J" in compact:
        raise ParseError(f"invalid complex literal '({inner})'", line, column)
    try:
        return complex(compact.replace("i", "j"))
    except ValueError:
        raise ParseError(f"invalid complex literal '({inner})'", line, column) from None


def _tokenize(body: str, line: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(body):
        char = body[pos]
        column = pos + 1
        if char.isspace():
            pos += 1
            continue
        if char in "+-*^":
            tokens.append(Token("op", char, column))
            pos += 1
            continue
        if char == "(":
            close = body.find(")", pos)
            if close < 0:
                raise ParseError("unterminated complex literal", line, column)
            value = _parse_complex_literal(body[pos + 1 : close], line, column)
            tokens.append(Token("num", body[pos : close + 1], column, value))
            pos = close + 1
            continue
        number = _NUMBER.match(body, pos)
        if number:
            tokens.append(Token("num", number.group(), column, float(number.group())))
            pos = number.end()
            continue
        name = _NAME.match(body, pos)
        if name:
            tokens.append(Token("name", name.group(), column))
            pos = name.end()
            continue
        raise ParseError(f"unexpected character {char!r}", line, column)
    return tokens


class _PolyParser:
    def __init__(self, tokens: list[Token], var_names: tuple[str, ...], line: int, end_column: int):
        self.tokens = tokens
        self.var_index = {name: i for i, name in enumerate(var_names)}
        self.nvars = len(var_names)
        self.line = line
        self.end_column = end_column
        self.pos = 0

    def _peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> Token:
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of line", self.line, self.end_column)
        self.pos += 1
        return token

    def parse(self) -> Polynomial:
        terms: dict[Exponent, Scalar] = {}
        sign = 1.0
        token = self._peek()
        if token is not None and token.kind == "op" and token.text in "+-":
            sign = -1.0 if token.text == "-" else 1.0
            self.pos += 1
        while True:
            coeff, exponent = self._term()
            terms[exponent] = terms.get(exponent, 0.0) + sign * coeff
            token = self._peek()
            if token is None:
                break
            if token.kind == "op" and token.text in "+-":
                sign = -1.0 if token.text == "-" else 1.0
                self.pos += 1
                continue
            raise ParseError(f"expected '+', '-' or '*' before {token.text!r}", self.line, token.column)
        return Polynomial(terms, self.nvars)

    def _term(self) -> tuple[Scalar, Exponent]:
        coeff: Scalar = 1.0
        exponent = [0] * self.nvars
        while True:
            token = self._next()
            if token.kind == "num":
                coeff = coeff * token.value  # type: ignore[operator]
                if self._at_op("^"):
                    raise ParseError("powers of numbers are not supported", self.line, token.column)
            elif token.kind == "name":
                index = self.var_index.get(token.text)
                if index is None:
                    raise ParseError(f"undeclared variable {token.text!r}", self.line, token.column)
                power = 1
                if self._at_op("^"):
                    self.pos += 1
                    power_token = self._next()
                    if power_token.kind != "num" or not _INTEGER.fullmatch(power_token.text):
                        raise ParseError(
                            f"non-integer exponent {power_token.text!r}", self.line, power_token.column
                        )
                    power = int(power_token.text)
                exponent[index] += power
            else:
                raise ParseError(f"unexpected {token.text!r}", self.line, token.column)
            if self._at_op("*"):
                self.pos += 1
                continue
            return coeff, tuple(exponent)

    def _at_op(self, op: str) -> bool:
        token = self._peek()
        return token is not None and token.kind == "op" and token.text == op


def parse_polynomial(body: str, var_names: tuple[str, ...], line: int = 1) -> Polynomial:
    tokens = _tokenize(body, line)
    if not tokens:
        raise ParseError("empty polynomial", line, 1)
    return _PolyParser(tokens, var_names, line, len(body) + 1).parse()


def parse_system(text: str) -> PolySystem:
    """Parse a ``vars`` header followed by one polynomial per line."""
    var_names: tuple[str, ...] | None = None
    polys: list[Polynomial] = []
    for line, body in _content_lines(text):
        if var_names is None:
            words = body.split()
            if not words or words[0] != "vars":
                raise ParseError("expected 'vars' header", line, body.find(words[0]) + 1 if words else 1)
            names = words[1:]
            if not names:
                raise ParseError("'vars' header declares no variables", line, len(body) + 1)
            for name in names:
                if not _NAME.fullmatch(name):
                    raise ParseError(f"invalid variable name {name!r}", line, body.find(name) + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable in 'vars' header", line, 1)
            var_names = tuple(names)
            continue
        polys.append(parse_polynomial(body, var_names, line))
    if var_names is None:
        raise ParseError("missing 'vars' header", 1, 1)
    if not polys:
        raise ParseError("system has no polynomials", 1, 1)
    return PolySystem(tuple(polys), var_names)


def parse_start(text: str) -> list[Scalar]:
    """One real number or ``(a+bi)`` literal per line."""
    values: list[Scalar] = []
    for line, body in _content_lines(text):
        stripped = body.strip()
        column = body.find(stripped) + 1
        if stripped.startswith("(") and stripped.endswith(")"):
            values.append(_parse_complex_literal(stripped[1:-1], line, column))
            continue
        sign = -1.0 if stripped.startswith("-") else 1.0
        digits = stripped[1:] if stripped[:1] in "+-" else stripped
        if not _NUMBER.fullmatch(digits):
            raise ParseError(f"invalid number {stripped!r}", line, column)
        values.append(sign * float(digits))
    if not values:
        raise ParseError("start file has no values", 1, 1)
    if any(isinstance(v, complex) for v in values):
        return [complex(v) for v in values]
    return values


def _format_coefficient(value: Scalar) -> tuple[str, str]:
    """Sign and magnitude text of a coefficient."""
    if isinstance(value, complex):
        imag_sign = "+" if value.imag >= 0 else "-"
        return "+", f"({value.real!r}{imag_sign}{abs(value.imag)!r}i)"
    return ("-" if value < 0 else "+"), repr(abs(value))


def format_polynomial(p: Polynomial, var_names: tuple[str, ...]) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for exponent, coeff in p:
        factors = [
            name if power == 1 else f"{name}^{power}"
            for name, power in zip(var_names, exponent)
            if power
        ]
        sign, magnitude = _format_coefficient(coeff)
        if factors and magnitude == "1.0":
            body = "*".join(factors)
        else:
            body = "*".join([magnitude] + factors)
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def format_system(system: PolySystem) -> str:
    lines = ["vars " + " ".join(system.var_names)]
    lines.extend(format_polynomial(p, system.var_names) for p in system.polys)
    return "\n".join(lines) + "\n"
