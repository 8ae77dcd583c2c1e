"""Text format for triangular systems.

    # comments start with '#'
    ring x1 x2 x3 [q | fp:<p>]
    poly t*x1^2 + x1 + 1
    poly t*x1*x2^2 + x1*x2 + 1
    poly x1*x2*x3 + 1

Expressions use +, -, *, ^ and parentheses over integer or rational
constants, the coordinates x1..xn, and t.  Fractional or negative
exponents are allowed on t only and are written t^(p/q) or t^-1.
Identifiers starting with 'u' are reserved for the engine's tail
variables and rejected.  The i-th poly line may use x1..xi only and must
use xi.
"""

import re
from fractions import Fraction

from .errors import NonTriangularError, ParseError, ReservedIdentifierError
from .puiseux import PuiseuxScalar
from .rationals import format_rat
from .residue import PrimeField, RationalField
from .roottree import TriangularSystem
from .upoly import MPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*^/]))")


class _Tokenizer:
    def __init__(self, text, line_no):
        self.text = text
        self.line_no = line_no
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        pos = 0
        while pos < len(self.text):
            m = _TOKEN.match(self.text, pos)
            if not m or m.end() == pos:
                stripped = self.text[pos:].lstrip()
                if not stripped:
                    break
                col = len(self.text) - len(stripped) + 1
                raise ParseError("unexpected character %r" % stripped[0], self.line_no, col)
            col = m.start(m.lastindex) + 1
            self.tokens.append((m.group(m.lastindex), col))
            pos = m.end()

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def next(self):
        if self.index >= len(self.tokens):
            raise ParseError("unexpected end of expression", self.line_no, len(self.text) + 1)
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, want):
        tok, col = self.next()
        if tok != want:
            raise ParseError("expected %r, found %r" % (want, tok), self.line_no, col)

    def here(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index][1]
        return len(self.text) + 1


class _ExprParser:
    """Recursive descent over one poly line; yields an MPoly."""

    def __init__(self, tokens, field, nvars):
        self.toks = tokens
        self.field = field
        self.nvars = nvars

    def parse(self) -> MPoly:
        value = self.expression()
        if self.toks.peek() is not None:
            tok, col = self.toks.next()
            raise ParseError("unexpected %r after expression" % tok, self.toks.line_no, col)
        return value

    def expression(self) -> MPoly:
        negate = False
        if self.toks.peek() == "-":
            self.toks.next()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while self.toks.peek() in ("+", "-"):
            op, _ = self.toks.next()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> MPoly:
        value = self.factor()
        while self.toks.peek() == "*":
            self.toks.next()
            value = value * self.factor()
        return value

    def factor(self) -> MPoly:
        base, base_kind = self.atom()
        if self.toks.peek() != "^":
            return base
        self.toks.next()
        if base_kind == "t":
            exp = self.signed_rational_exponent()
            return MPoly.constant(self.field, self.nvars, PuiseuxScalar.t_power(self.field, exp))
        exp = self.natural_exponent()
        return base**exp

    def atom(self):
        tok, col = self.toks.next()
        if tok == "(":
            value = self.expression()
            self.toks.expect(")")
            return value, "expr"
        if tok.isdigit():
            value = self.rational_constant(int(tok))
            return MPoly.constant(self.field, self.nvars, PuiseuxScalar.constant(self.field, value)), "num"
        if tok == "t":
            return MPoly.constant(self.field, self.nvars, PuiseuxScalar.t_power(self.field, 1)), "t"
        if tok.startswith("u"):
            raise ReservedIdentifierError(
                "%r is reserved for internal tail variables" % tok, self.toks.line_no, col
            )
        m = re.fullmatch(r"x(\d+)", tok)
        if m:
            idx = int(m.group(1))
            if not 1 <= idx <= self.nvars:
                raise ParseError("unknown variable %r" % tok, self.toks.line_no, col)
            return MPoly.variable(self.field, self.nvars, idx - 1), "var"
        raise ParseError("unexpected %r" % tok, self.toks.line_no, col)

    def rational_constant(self, numerator):
        if self.toks.peek() == "/":
            self.toks.next()
            tok, col = self.toks.next()
            if not tok.isdigit() or int(tok) == 0:
                raise ParseError("expected a nonzero denominator", self.toks.line_no, col)
            value = Fraction(numerator, int(tok))
        else:
            value = Fraction(numerator)
        return self.field.from_int(value.numerator) if value.denominator == 1 else self.field.div(
            self.field.from_int(value.numerator), self.field.from_int(value.denominator)
        )

    def natural_exponent(self) -> int:
        tok, col = self.toks.next()
        if not tok.isdigit():
            raise ParseError(
                "fractional or negative exponents are only allowed on t", self.toks.line_no, col
            )
        return int(tok)

    def signed_rational_exponent(self) -> Fraction:
        tok, col = self.toks.next()
        if tok.isdigit():
            return Fraction(int(tok))
        if tok == "-":
            tok, col = self.toks.next()
            if not tok.isdigit():
                raise ParseError("expected an integer exponent", self.toks.line_no, col)
            return Fraction(-int(tok))
        if tok == "(":
            sign = 1
            tok, col = self.toks.next()
            if tok == "-":
                sign = -1
                tok, col = self.toks.next()
            if not tok.isdigit():
                raise ParseError("expected an integer numerator", self.toks.line_no, col)
            num = int(tok)
            den = 1
            if self.toks.peek() == "/":
                self.toks.next()
                tok, col = self.toks.next()
                if not tok.isdigit() or int(tok) == 0:
                    raise ParseError("expected a nonzero denominator", self.toks.line_no, col)
                den = int(tok)
            self.toks.expect(")")
            return Fraction(sign * num, den)
        raise ParseError("expected an exponent", self.toks.line_no, col)


def parse_system(text: str) -> TriangularSystem:
    """Parse a system file into a validated TriangularSystem."""
    header = None
    header_line = None
    poly_lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            if not line.startswith("ring"):
                raise ParseError("the file must start with a ring header", line_no, 1)
            header = line
            header_line = line_no
            continue
        if not line.startswith("poly"):
            raise ParseError("expected a poly line", line_no, 1)
        poly_lines.append((line_no, raw, line[len("poly"):]))
    if header is None:
        raise ParseError("empty input: no ring header found", 1, 1)

    field, nvars = _parse_header(header, header_line)
    if len(poly_lines) != nvars:
        raise NonTriangularError(
            "expected %d poly lines for %d coordinates, found %d"
            % (nvars, nvars, len(poly_lines))
        )

    polys = []
    for i, (line_no, raw, expr) in enumerate(poly_lines):
        offset = raw.index(expr) if expr and expr in raw else len("poly")
        toks = _Tokenizer(expr, line_no)
        for k in range(len(toks.tokens)):
            tok, col = toks.tokens[k]
            toks.tokens[k] = (tok, col + offset)
        poly = _ExprParser(toks, field, nvars).parse()
        if poly.is_zero():
            raise NonTriangularError("f%d is the zero polynomial" % (i + 1))
        used = poly.variables_used()
        if any(v > i for v in used):
            raise NonTriangularError(
                "f%d uses x%d; only x1..x%d are allowed" % (i + 1, max(used) + 1, i + 1)
            )
        if i not in used:
            raise NonTriangularError("f%d does not use x%d" % (i + 1, i + 1))
        polys.append(poly)
    return TriangularSystem(polys)


def _parse_header(header, line_no):
    parts = header.split()
    assert parts[0] == "ring"
    names = parts[1:]
    field = RationalField()
    if names and (names[-1] == "q" or names[-1].startswith("fp:")):
        spec = names.pop()
        if spec.startswith("fp:"):
            try:
                p = int(spec[3:])
            except ValueError:
                raise ParseError("bad prime in %r" % spec, line_no, 1) from None
            try:
                field = PrimeField(p)
            except ValueError as exc:
                raise ParseError(str(exc), line_no, 1) from None
    if not names:
        raise ParseError("the ring header declares no variables", line_no, 1)
    for i, name in enumerate(names):
        if name.startswith("u"):
            raise ReservedIdentifierError(
                "%r is reserved for internal tail variables" % name, line_no, 1
            )
        if name != "x%d" % (i + 1):
            raise ParseError(
                "variables must be named x1..xn in order; found %r" % name, line_no, 1
            )
    return field, len(names)


def format_system(system: TriangularSystem) -> str:
    """Render a system in the input format; reparsing gives an equal system."""
    field = system.field
    if isinstance(field, PrimeField):
        header = "ring %s fp:%d" % (" ".join("x%d" % (i + 1) for i in range(system.n)), field.p)
    else:
        header = "ring %s" % " ".join("x%d" % (i + 1) for i in range(system.n))
    lines = [header]
    for f in system.polys:
        lines.append("poly %s" % _format_mpoly(f))
    return "\n".join(lines) + "\n"


def _format_mpoly(f: MPoly) -> str:
    # one summand per (x-monomial, t-power) pair; every summand is a plain
    # product of atoms, so the result reparses whatever the signs are
    field = f.field
    parts = []
    for deg in sorted(f.terms, reverse=True):
        scalar = f.terms[deg]
        mono = "*".join(
            "x%d" % (i + 1) if e == 1 else "x%d^%d" % (i + 1, e)
            for i, e in enumerate(deg)
            if e
        )
        for e, c in scalar.terms:
            factors = []
            cs = field.format(c)
            if cs.startswith("-"):
                cs = "(%s)" % cs
            if e != 0:
                if e == 1:
                    ts = "t"
                elif e.denominator == 1 and e > 0:
                    ts = "t^%d" % e.numerator
                else:
                    ts = "t^(%s)" % format_rat(e)
                if cs != "1":
                    factors.append(cs)
                factors.append(ts)
            else:
                if cs != "1" or not mono:
                    factors.append(cs)
            if mono:
                factors.append(mono)
            parts.append("*".join(factors))
    return " + ".join(parts) if parts else "0"
