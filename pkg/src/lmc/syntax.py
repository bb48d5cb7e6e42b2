"""Parsing and printing: elements, polynomials, automorphism JSON.

Element grammar (left-normed brackets, 1-based generator indices):

    element := ['-'] term (('+'|'-') term)*
    term    := [rational '*']? atom
    atom    := 'x' INT | '[' element (',' element)+ ']'
    rational:= INT ['/' INT]

The single literal '0' is also accepted and denotes the zero element.
Polynomial text uses variables t1..tm, '*' for products, '^' for powers and
rational coefficients 'p/q', e.g. '1/2*t1^2*t3 - t2'.

Printers are deterministic: rationals as 'p/q' (integer when q = 1),
monomial variables in index order, basis-style elements in enumeration
order (generators first, then commutator tuples by degree and tuple order).
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import endo as _endo
from . import liealg
from .arith import TruncPoly, format_rational, poly_str
from .errors import ParseError, ValidationError
from .liealg import BasisForm, Context, LieElement

# -- tokenizer ----------------------------------------------------------------

_PUNCT = {"+", "-", "*", "/", "^", "[", "]", ","}


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind  # 'int' | 'name' | punctuation | 'end'
        self.value = value
        self.line = line
        self.col = col

    def describe(self):
        if self.kind == "end":
            return "end of input"
        return repr(str(self.value))


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(line, col, "an index after the letter", repr(ch))
            tokens.append(_Token("name", (ch, int(text[i + 1 : j])), line, col))
            col += j - i
            i = j
            continue
        raise ParseError(line, col, "a token", repr(ch))
    tokens.append(_Token("end", None, line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, expected):
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.line, tok.col, expected, tok.describe())
        return self.next()

    def fail(self, expected):
        tok = self.peek()
        raise ParseError(tok.line, tok.col, expected, tok.describe())


def _parse_rational(cur: _Cursor) -> Fraction:
    num = cur.expect("int", "a number").value
    if cur.peek().kind == "/":
        cur.next()
        den = cur.expect("int", "a denominator").value
        if den == 0:
            tok = cur.tokens[cur.pos - 1]
            raise ParseError(tok.line, tok.col, "a nonzero denominator", "0")
        return Fraction(num, den)
    return Fraction(num)


# -- element parsing ------------------------------------------------------------


def parse_element(ctx: Context, text: str) -> LieElement:
    cur = _Cursor(_tokenize(text))
    if (
        cur.peek().kind == "int"
        and cur.peek().value == 0
        and cur.tokens[cur.pos + 1].kind == "end"
    ):
        return liealg.zero(ctx)
    u = _parse_element(ctx, cur)
    if cur.peek().kind != "end":
        cur.fail("end of input")
    return u


def _parse_element(ctx, cur) -> LieElement:
    sign = Fraction(1)
    if cur.peek().kind == "-":
        cur.next()
        sign = Fraction(-1)
    acc = _parse_term(ctx, cur).scale(sign)
    while cur.peek().kind in ("+", "-"):
        op = cur.next().kind
        term = _parse_term(ctx, cur)
        acc = acc + term if op == "+" else acc - term
    return acc


def _parse_term(ctx, cur) -> LieElement:
    coeff = Fraction(1)
    if cur.peek().kind == "int":
        coeff = _parse_rational(cur)
        cur.expect("*", "'*' between coefficient and atom")
    atom = _parse_atom(ctx, cur)
    return atom.scale(coeff) if coeff != 1 else atom


def _parse_atom(ctx, cur) -> LieElement:
    tok = cur.peek()
    if tok.kind == "name":
        letter, idx = tok.value
        if letter != "x":
            raise ParseError(tok.line, tok.col, "a generator 'xN'", tok.describe())
        cur.next()
        if not 1 <= idx <= ctx.m:
            raise ParseError(
                tok.line, tok.col, f"a generator index in 1..{ctx.m}", f"x{idx}"
            )
        return liealg.generator(ctx, idx)
    if tok.kind == "[":
        cur.next()
        args = [_parse_element(ctx, cur)]
        cur.expect(",", "',' inside a bracket")
        args.append(_parse_element(ctx, cur))
        while cur.peek().kind == ",":
            cur.next()
            args.append(_parse_element(ctx, cur))
        cur.expect("]", "']' closing the bracket")
        return liealg.bracket_chain(*args)
    cur.fail("a generator or '['")


# -- polynomial parsing -----------------------------------------------------------


def parse_poly(text: str, nv: int, cap: int) -> TruncPoly:
    cur = _Cursor(_tokenize(text))
    acc = TruncPoly.zero(nv, cap)
    sign = Fraction(1)
    if cur.peek().kind == "-":
        cur.next()
        sign = Fraction(-1)
    acc = acc + _parse_poly_term(cur, nv, cap).scale(sign)
    while cur.peek().kind in ("+", "-"):
        op = cur.next().kind
        term = _parse_poly_term(cur, nv, cap)
        acc = acc + term if op == "+" else acc - term
    if cur.peek().kind != "end":
        cur.fail("end of input")
    return acc


def _parse_poly_term(cur, nv, cap) -> TruncPoly:
    coeff = Fraction(1)
    exps = [0] * nv
    saw_factor = False
    while True:
        tok = cur.peek()
        if tok.kind == "int":
            coeff *= _parse_rational(cur)
            saw_factor = True
        elif tok.kind == "name":
            letter, idx = tok.value
            if letter != "t":
                raise ParseError(tok.line, tok.col, "a variable 'tN'", tok.describe())
            if not 1 <= idx <= nv:
                raise ParseError(
                    tok.line, tok.col, f"a variable index in 1..{nv}", f"t{idx}"
                )
            cur.next()
            power = 1
            if cur.peek().kind == "^":
                cur.next()
                power = cur.expect("int", "an exponent").value
            exps[idx - 1] += power
            saw_factor = True
        else:
            if not saw_factor:
                cur.fail("a coefficient or a variable")
            break
        if cur.peek().kind == "*":
            cur.next()
            continue
        break
    return TruncPoly(nv, cap, {tuple(exps): coeff})


# -- printers ----------------------------------------------------------------------


def print_poly(p: TruncPoly) -> str:
    return poly_str(p)


def print_element(u: LieElement, style: str = "basis") -> str:
    if style == "basis":
        return _print_basis(liealg.to_basis(u))
    if style == "wreath":
        return _print_wreath(u)
    raise ValidationError(f"unknown element style {style!r}")


def _coeff_atom(coeff: Fraction, atom: str, force_coeff: bool) -> str:
    mag = abs(coeff)
    if mag == 1 and not force_coeff:
        return atom
    return f"{format_rational(mag)}*{atom}"


def _print_basis(b: BasisForm) -> str:
    parts = []  # (negative?, body)
    for i, coeff in enumerate(b.linear, start=1):
        if coeff:
            parts.append((coeff < 0, _coeff_atom(coeff, f"x{i}", False)))
    for tup in sorted(b.comm, key=lambda t: (len(t), t)):
        coeff = b.comm[tup]
        atom = "[" + ",".join(f"x{i}" for i in tup) + "]"
        parts.append((coeff < 0, _coeff_atom(coeff, atom, True)))
    if not parts:
        return "0"
    out = []
    for neg, body in parts:
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def _print_wreath(u: LieElement) -> str:
    parts = []
    for i, beta in enumerate(u.beta, start=1):
        if beta:
            parts.append((beta < 0, _coeff_atom(beta, f"b{i}", False)))
    for i in range(1, u.ctx.m + 1):
        full = u.full_poly(i)
        if not full.is_zero():
            parts.append((False, f"a{i}*({poly_str(full)})"))
    if not parts:
        return "0"
    out = []
    for neg, body in parts:
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


# -- automorphism JSON ----------------------------------------------------------------


def parse_automorphism(data) -> "_endo.Endomorphism":
    """Build an endomorphism from JSON text or an already-decoded dict.

    Expected fields: m, c, and either "images" (m element strings) or
    "jacobian" (m x m polynomial strings, IA maps only).
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.colno, "valid JSON", exc.msg) from exc
    if not isinstance(data, dict):
        raise ValidationError("automorphism JSON must be an object")
    try:
        m = int(data["m"])
        c = int(data["c"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("automorphism JSON needs integer fields m and c") from exc
    ctx = Context(m, c)
    if "images" in data:
        images = data["images"]
        if not isinstance(images, list) or len(images) != m:
            raise ValidationError(f'"images" must list {m} element strings')
        phi = _endo.Endomorphism(ctx, tuple(parse_element(ctx, s) for s in images))
        if not phi.is_automorphism():
            raise ValidationError(
                "images do not define an automorphism (singular linear part)"
            )
        return phi
    if "jacobian" in data:
        rows = data["jacobian"]
        if not isinstance(rows, list) or len(rows) != m:
            raise ValidationError(f'"jacobian" must be an {m}x{m} array')
        entries = []
        for row in rows:
            if not isinstance(row, list) or len(row) != m:
                raise ValidationError(f'"jacobian" must be an {m}x{m} array')
            entries.append(
                tuple(parse_poly(s, m, ctx.module_cap) for s in row)
            )
        jac = _endo.JacobianMatrix(ctx, tuple(entries))
        return _endo.ia_from_jacobian(jac)
    raise ValidationError('automorphism JSON needs "images" or "jacobian"')


def automorphism_dict(phi) -> dict:
    """JSON-ready dict: images in basis style, plus the Jacobian for IA maps."""
    out = {
        "m": phi.ctx.m,
        "c": phi.ctx.c,
        "images": [print_element(im, "basis") for im in phi.images],
    }
    if phi.is_ia():
        jac = _endo.jacobian(phi)
        out["jacobian"] = [[print_poly(p) for p in row] for row in jac.rows]
    return out


def print_automorphism(phi, format: str = "json") -> str:
    d = automorphism_dict(phi)
    if format == "json":
        return json.dumps(d)
    if format == "text":
        lines = [f"x{i} -> {s}" for i, s in enumerate(d["images"], start=1)]
        return "\n".join(lines)
    raise ValidationError(f"unknown automorphism format {format!r}")
