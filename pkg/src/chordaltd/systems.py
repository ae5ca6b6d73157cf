"""Polynomial systems and the text/JSON formats they travel in.

System text format (extension ``.psys``): one polynomial per line, ``#``
comments, and an optional leading ``vars:`` line declaring the variable
ordering, e.g. ``vars: x1 < x2 < x3``.  Without that line only names of the
form ``x<digits>`` are accepted and the ordering ``x1 < x2 < ...`` is
inferred from the numeric suffixes present.  Implicit multiplication is
allowed between a number, ``)`` or variable and a following variable or
``(``, so ``(x2+2)x3`` parses as expected.  Powers use ``^`` and rational
coefficients are written ``a/b``.

Rendering is canonical (descending leading variable, then descending
degree), and ``parse_system(render(S))`` reproduces ``S`` exactly.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import BadPrimeError, ParseError
from .fields import QQ, PrimeField
from .polynomials import CONST_MONOMIAL, Polynomial

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INFERRED_RE = re.compile(r"^x([1-9][0-9]*)$")
_VARS_LINE_RE = re.compile(r"^\s*vars\s*:")


@dataclass(frozen=True)
class PolySystem:
    """An ordered variable list plus a list of polynomials over one field."""

    vars: tuple[str, ...]
    polys: tuple[Polynomial, ...]
    field: object = QQ

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable in ordering")
        n = len(self.vars)
        for p in self.polys:
            if p.field != self.field:
                raise ValueError("polynomial field differs from system field")
            bad = [v for v in p.support() if not 1 <= v <= n]
            if bad:
                raise ValueError(f"polynomial uses undeclared variable index {bad[0]}")

    @property
    def n(self) -> int:
        return len(self.vars)

    def name(self, index: int) -> str:
        return self.vars[index - 1]

    def support(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for p in self.polys:
            out |= p.support()
        return out

    def __repr__(self) -> str:
        body = ", ".join(render_poly(p, self.vars) for p in self.polys)
        return f"PolySystem([{body}])"


# -- tokenizer ---------------------------------------------------------------


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


_OPS = {"+": "PLUS", "-": "MINUS", "*": "STAR", "^": "CARET",
        "/": "SLASH", "(": "LPAREN", ")": "RPAREN"}


def _tokenize(text: str, line_no: int) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUM", int(text[i:j]), line_no, col))
            i = j
        elif ch.isalpha():
            m = _NAME_RE.match(text, i)
            tokens.append(_Token("NAME", m.group(0), line_no, col))
            i = m.end()
        elif ch in _OPS:
            tokens.append(_Token(_OPS[ch], ch, line_no, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line_no, col)
    tokens.append(_Token("END", None, line_no, n + 1))
    return tokens


# -- recursive-descent expression parser -------------------------------------


class _PolyParser:
    """Parses one polynomial line into canonical ``Polynomial`` form."""

    def __init__(self, tokens: list[_Token], resolve: Callable[[str, _Token], int], field):
        self.tokens = tokens
        self.pos = 0
        self.resolve = resolve
        self.field = field

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        shown = "end of line" if tok.kind == "END" else repr(tok.value)
        return ParseError(f"{message}, found {shown}", tok.line, tok.col)

    def parse(self) -> Polynomial:
        poly = self.expr()
        if self.peek().kind != "END":
            raise self.fail("trailing input")
        return poly

    def expr(self) -> Polynomial:
        negate = False
        if self.peek().kind in ("PLUS", "MINUS"):
            negate = self.advance().kind == "MINUS"
        total = self.term()
        if negate:
            total = -total
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.advance().kind
            nxt = self.term()
            total = total - nxt if op == "MINUS" else total + nxt
        return total

    def term(self) -> Polynomial:
        product = self.factor()
        while True:
            kind = self.peek().kind
            if kind == "STAR":
                self.advance()
                product = product * self.factor()
            elif kind in ("NAME", "LPAREN"):
                # implicit multiplication, e.g. "(x2+2)x3" or "2x3"
                product = product * self.factor()
            else:
                return product

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind == "CARET":
            self.advance()
            if self.peek().kind != "NUM":
                raise self.fail("expected a nonnegative integer exponent")
            return base ** self.advance().value
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "NUM":
            self.advance()
            value = tok.value
            if self.peek().kind == "SLASH":
                self.advance()
                if self.peek().kind != "NUM":
                    raise self.fail("expected an integer denominator")
                den_tok = self.advance()
                if den_tok.value == 0:
                    raise ParseError("zero denominator", den_tok.line, den_tok.col)
                from fractions import Fraction

                value = Fraction(value, den_tok.value)
            try:
                return Polynomial.constant(value, self.field)
            except BadPrimeError as exc:
                raise ParseError(str(exc), tok.line, tok.col) from exc
        if tok.kind == "NAME":
            self.advance()
            return Polynomial.variable(self.resolve(tok.value, tok), self.field)
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.expr()
            if self.peek().kind != "RPAREN":
                raise self.fail("expected ')'")
            self.advance()
            return inner
        raise self.fail("expected a number, variable or '('")


def _declared_resolver(names: Sequence[str]) -> Callable[[str, _Token], int]:
    index = {name: i + 1 for i, name in enumerate(names)}

    def resolve(name: str, tok: _Token) -> int:
        if name not in index:
            raise ParseError(f"unknown variable {name!r}", tok.line, tok.col)
        return index[name]

    return resolve


def _inferred_resolver(name: str, tok: _Token) -> int:
    m = _INFERRED_RE.match(name)
    if not m:
        raise ParseError(
            f"variable {name!r} needs a 'vars:' ordering line (only x1, x2, ... "
            "can be inferred)",
            tok.line,
            tok.col,
        )
    return int(m.group(1))


def parse_poly(text: str, names: Sequence[str] | None = None, field=QQ) -> Polynomial:
    """Parse a single polynomial expression."""
    resolve = _declared_resolver(names) if names is not None else _inferred_resolver
    return _PolyParser(_tokenize(text, 1), resolve, field).parse()


def _parse_vars_line(raw: str, line_no: int) -> list[str]:
    body = raw.split(":", 1)[1]
    names = []
    for chunk in body.split("<"):
        name = chunk.strip()
        if not name or not _NAME_RE.fullmatch(name):
            col = raw.index(chunk) + 1 if chunk else len(raw)
            raise ParseError(f"bad variable name {name!r} in ordering", line_no, col)
        if name in names:
            raise ParseError(f"duplicate variable {name!r} in ordering", line_no,
                             raw.rindex(name) + 1)
        names.append(name)
    return names


def parse_system(text: str, field=QQ) -> PolySystem:
    """Parse system text into a ``PolySystem``.

    Zero-polynomial lines are dropped with a warning.  All diagnostics carry
    1-based line/column positions.
    """
    names: list[str] | None = None
    polys: list[Polynomial] = []
    saw_poly = False
    for line_no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if _VARS_LINE_RE.match(body):
            if names is not None:
                raise ParseError("duplicate 'vars:' line", line_no, 1)
            if saw_poly:
                raise ParseError("'vars:' must precede all polynomials", line_no, 1)
            names = _parse_vars_line(body, line_no)
            continue
        resolve = _declared_resolver(names) if names is not None else _inferred_resolver
        poly = _PolyParser(_tokenize(body, line_no), resolve, field).parse()
        saw_poly = True
        if poly.is_zero:
            warnings.warn(f"line {line_no}: zero polynomial dropped")
            continue
        polys.append(poly)
    if names is None:
        top = max((v for p in polys for v in p.support()), default=0)
        names = [f"x{i}" for i in range(1, top + 1)]
    return PolySystem(tuple(names), tuple(polys), field)


# -- rendering ---------------------------------------------------------------


def _name_of(index: int, names: Sequence[str] | None) -> str:
    if names is None:
        return f"x{index}"
    return names[index - 1]


def _mono_str(mono, names: Sequence[str] | None) -> str:
    parts = []
    for v, e in sorted(mono):
        parts.append(_name_of(v, names) if e == 1 else f"{_name_of(v, names)}^{e}")
    return "*".join(parts)


def render_poly(f: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical string form; ``parse_poly`` inverts it over the same field."""
    terms = f.sorted_terms()
    if not terms:
        return "0"
    prime = isinstance(f.field, PrimeField)
    pieces = []
    for mono, coef in terms:
        negative = (not prime) and coef < 0
        mag = -coef if negative else coef
        if mono == CONST_MONOMIAL:
            body = str(mag)
        elif mag == f.field.one:
            body = _mono_str(mono, names)
        else:
            body = f"{mag}*{_mono_str(mono, names)}"
        pieces.append(("-" if negative else "+", body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def render_system(system: PolySystem) -> str:
    """System text with an explicit ``vars:`` header; round-trips exactly."""
    lines = []
    if system.vars:
        lines.append("vars: " + " < ".join(system.vars))
    for p in system.polys:
        lines.append(render_poly(p, system.vars))
    return "\n".join(lines) + "\n"


def render(value) -> str:
    """Render a system as text, or a triangular system / tree as JSON."""
    if isinstance(value, PolySystem):
        return render_system(value)
    if hasattr(value, "equations") and hasattr(value, "inequations"):
        names = getattr(value, "names", None)
        doc = {
            "T": [render_poly(p, names) for p in value.equations],
            "U": [render_poly(p, names) for p in value.inequations],
        }
        return json.dumps(doc, indent=2) + "\n"
    if hasattr(value, "nodes") and hasattr(value, "to_json_dict"):
        return json.dumps(value.to_json_dict(), indent=2) + "\n"
    raise TypeError(f"cannot render {type(value).__name__}")
