"""Text grammars for field elements, skew polynomials and series.

Every parser here reports failures as :class:`ParseError` carrying the
0-based offset of the offending character inside the literal, so callers
can translate it into a column of a larger command line.
"""

from __future__ import annotations

import re


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(\^)|(\*)|(\+)|(-)|(\()|(\))|(:))")


def tokenize(text: str):
    """Split ``text`` into ``(kind, value, position)`` triples."""
    out = []
    pos = 0
    kinds = ("int", "name", "^", "*", "+", "-", "(", ")", ":")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                start = m.start(m.lastindex)
                out.append((kind, val, start))
                break
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind}, found {t[1] or 'end of input'!r}", t[2], self.text)
        self.i += 1
        return t

    def error(self, msg, pos=None):
        raise ParseError(msg, self.tok[2] if pos is None else pos, self.text)


def parse_int_poly(text: str, var: str = "u") -> dict[int, int]:
    """Parse ``2*u^2+u-1`` into ``{2: 2, 1: 1, 0: -1}`` (integer coefficients)."""
    ps = _Parser(text)
    terms = _parse_sum(ps, var, allow_parens=True)
    if ps.tok[0] != "end":
        ps.error(f"unexpected {ps.tok[1]!r}")
    return terms


def _parse_sum(ps: _Parser, var: str, allow_parens: bool) -> dict[int, int]:
    out: dict[int, int] = {}
    sign = 1
    if ps.tok[0] in "+-":
        sign = -1 if ps.take()[0] == "-" else 1
    while True:
        for e, c in _parse_term(ps, var).items():
            out[e] = out.get(e, 0) + sign * c
        if ps.tok[0] in ("+", "-"):
            sign = -1 if ps.take()[0] == "-" else 1
            continue
        break
    return out


def _parse_exponent(ps: _Parser) -> int:
    caret = ps.take("^")
    t = ps.tok
    if t[0] != "int":
        raise ParseError("exponent must be a non-negative integer", caret[2], ps.text)
    ps.take()
    return int(t[1])


def _parse_term(ps: _Parser, var: str) -> dict[int, int]:
    t = ps.tok
    coeff = 1
    if t[0] == "int":
        coeff = int(ps.take()[1])
        if ps.tok[0] == "*":
            ps.take()
        else:
            return {0: coeff}
    t = ps.tok
    if t[0] == "name" and t[1] == var:
        ps.take()
        exp = 1
        if ps.tok[0] == "^":
            exp = _parse_exponent(ps)
        return {exp: coeff}
    if t[0] == "(":
        ps.take()
        inner = _parse_sum(ps, var, True)
        ps.take(")")
        return {e: coeff * c for e, c in inner.items()}
    raise ParseError(f"expected a term, found {t[1] or 'end of input'!r}", t[2], ps.text)


def parse_skew(text: str, coeff_parser, var: str = "F"):
    """Parse ``F^2+(u+1)*F+1`` into ``{degree: coefficient}``.

    ``coeff_parser`` turns the coefficient substring into a base element;
    coefficients can be bare integers, a bare ``u``-monomial, or a
    parenthesised element literal.  Negative exponents are accepted so the
    same grammar serves Laurent elements (``F^-1``).
    """
    ps = _Parser(text)
    out = {}
    sign = 1
    if ps.tok[0] in "+-":
        sign = -1 if ps.take()[0] == "-" else 1
    while True:
        coeff_text, exp = _parse_skew_term(ps, var)
        try:
            c = coeff_parser(coeff_text)
        except ParseError as exc:
            raise ParseError(exc.message, exc.position, text) from None
        if sign < 0:
            c = -c
        out[exp] = out[exp] + c if exp in out else c
        if ps.tok[0] in ("+", "-"):
            sign = -1 if ps.take()[0] == "-" else 1
            continue
        break
    if ps.tok[0] != "end":
        ps.error(f"unexpected {ps.tok[1]!r}")
    return out


def _parse_skew_term(ps: _Parser, var: str):
    t = ps.tok
    coeff_text = "1"
    if t[0] == "(":
        depth = 0
        start = t[2]
        while True:
            tk = ps.take()
            if tk[0] == "(":
                depth += 1
            elif tk[0] == ")":
                depth -= 1
                if depth == 0:
                    end = tk[2]
                    break
            elif tk[0] == "end":
                raise ParseError("unbalanced parenthesis", start, ps.text)
        coeff_text = ps.text[start + 1:end]
        # keep offsets aligned with the original text
        coeff_text = " " * (start + 1) + coeff_text
        if ps.tok[0] != "*":
            return coeff_text, 0
        ps.take()
    elif t[0] == "int" or (t[0] == "name" and t[1] != var):
        start = t[2]
        # a plain coefficient monomial such as 2, u, 2*u^3
        if t[0] == "int":
            ps.take()
            if ps.tok[0] == "*" and ps.toks[ps.i + 1][0] == "name" and ps.toks[ps.i + 1][1] != var:
                ps.take()
                ps.take("name")
                if ps.tok[0] == "^":
                    _parse_exponent(ps)
        else:
            ps.take()
            if ps.tok[0] == "^":
                _parse_exponent(ps)
        end = ps.tok[2]
        coeff_text = " " * start + ps.text[start:end]
        if ps.tok[0] != "*":
            return coeff_text, 0
        ps.take()
    t = ps.tok
    if t[0] == "name" and t[1] == var:
        ps.take()
        exp = 1
        if ps.tok[0] == "^":
            caret = ps.take()
            neg = False
            if ps.tok[0] == "-":
                ps.take()
                neg = True
            if ps.tok[0] != "int":
                raise ParseError("exponent must be an integer", caret[2], ps.text)
            exp = int(ps.take()[1])
            exp = -exp if neg else exp
        return coeff_text, exp
    raise ParseError(f"expected a term, found {t[1] or 'end of input'!r}", t[2], ps.text)


def parse_series(text: str, coeff_parser, var: str = "t"):
    """Parse ``1+2*t+t^2`` (or ``1-2t``) into ``{exponent: coefficient}``."""
    # accept the juxtaposed form 2t as 2*t
    norm = re.sub(r"(\d)\s*(?=%s)" % re.escape(var), r"\1*", text)
    try:
        raw = parse_skew(norm, coeff_parser, var=var)
    except ParseError as exc:
        # map back to the un-normalised text (one '*' inserted per juxtaposition)
        inserted = sum(1 for m in re.finditer(r"(\d)\s*(?=%s)" % re.escape(var), text) if m.end() <= exc.position)
        raise ParseError(exc.message, max(exc.position - inserted, 0), text) from None
    if any(e < 0 for e in raw):
        raise ParseError("negative exponent in series", 0, text)
    return raw


def parse_field_spec(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s*", text)
    if not m:
        raise ParseError("field must look like p:n", 0, text)
    return int(m.group(1)), int(m.group(2))


def parse_ring_spec(text: str):
    """``Z``, ``Q``, ``p:n`` (field) or ``p:m:n`` (Galois ring)."""
    s = text.strip()
    if s in ("Z", "ZZ"):
        return ("Z",)
    if s in ("Q", "QQ"):
        return ("Q",)
    m = re.fullmatch(r"(\d+):(\d+):(\d+)", s)
    if m:
        return ("galois", int(m.group(1)), int(m.group(2)), int(m.group(3)))
    m = re.fullmatch(r"(\d+):(\d+)", s)
    if m:
        return ("field", int(m.group(1)), int(m.group(2)))
    raise ParseError("ring must be Z, Q, p:n or p:m:n", 0, text)
