"""Canonical text, display text, LaTeX and JSON forms of polynomials, plus a parser.

Canonical text lists the al-free terms and then the al terms, each block in
descending graded-lex order: ``u+v+al*u^2*v+al*u*v^2``.  Display text prefers
the factored shape ``p0*(1+al*q)`` whenever p0 divides the al part, which is
how the formal group laws and most classes read naturally.
"""
from __future__ import annotations

import re

from .coeffs import DivisibilityError
from .polyalg import (
    INHOMOGENEOUS,
    ZERO,
    Poly,
    Var,
    homogeneous_degree,
    make_symbol,
    make_var,
)


class ParseError(ValueError):
    pass


# -- plain text ---------------------------------------------------------------

def _var_text(v: Var, e: int) -> str:
    return v.name if e == 1 else f"{v.name}^{e}"


def mono_text(mono: tuple) -> str:
    return "*".join(_var_text(v, e) for v, e in mono) or "1"


def _term_text(c: int, mono: tuple, alpha: bool) -> str:
    parts = (["al"] if alpha else []) + [_var_text(v, e) for v, e in mono]
    if not parts:
        return str(c)
    body = "*".join(parts)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _join(pieces: list[str]) -> str:
    if not pieces:
        return "0"
    out = pieces[0]
    for s in pieces[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


def _pieces(p: Poly) -> list[str]:
    ordered = p.sorted_terms()
    return [_term_text(a, mono, False) for mono, (a, _) in ordered if a] + [
        _term_text(b, mono, True) for mono, (_, b) in ordered if b
    ]


def to_text(p: Poly) -> str:
    """Canonical expanded text; stable under parse()."""
    return _join(_pieces(p))


def _hoisted(p: Poly) -> str:
    pieces = _pieces(p)
    for i, s in enumerate(pieces):
        if not s.startswith("-"):
            pieces.insert(0, pieces.pop(i))
            break
    return _join(pieces)


def _group(p: Poly) -> str:
    s = _hoisted(p)
    return f"({s})" if len(p) > 1 else s


def _alpha_times(q: Poly) -> str:
    if len(q) == 1:
        (mono, (c, _)), = q.terms.items()
        return _term_text(c, mono, True)
    return "al*(" + _hoisted(q) + ")"


def _alpha_quotient(p0: Poly, p1: Poly) -> Poly | None:
    try:
        return p1.exact_div(p0)
    except (DivisibilityError, ValueError):
        return None


def to_display(p: Poly) -> str:
    """Human-facing text: ``p0*(1+al*q)`` when possible, else ``p0+al*p1``."""
    p0, p1 = p.alpha_parts()
    if not p1:
        return _hoisted(p0)
    if not p0:
        return _alpha_times(p1)
    q = _alpha_quotient(p0, p1)
    if q is None:
        return _join([_hoisted(p0), _alpha_times(p1)])
    bracket = _join(["1", _alpha_times(q)])
    if p0 == 1:
        return bracket
    return f"{_group(p0)}*({bracket})"


def canonicalize(text: str, m: int = 1) -> str:
    return to_display(parse(text, m))


# -- LaTeX ----------------------------------------------------------------------

_LATEX_NAMES = {"tau": r"\tau", "xi": r"\xi"}


def _var_latex(v: Var, e: int) -> str:
    fam = v.family
    if v.is_symbol:
        base = rf"\mathcal{{{fam}}}^{{({v.superscript})}}_{{{v.subscript}}}"
        return base if e == 1 else f"{{{base}}}^{{{e}}}"
    name = _LATEX_NAMES.get(fam, fam)
    if not (fam in ("u", "v", "w", "xi") and v.index == 0):
        name = f"{name}_{{{v.index}}}"
    elif name.startswith("\\"):
        name = "{" + name + "}"
    return name if e == 1 else f"{name}^{{{e}}}"


def _term_latex(c: int, mono: tuple, alpha: bool, m: int) -> str:
    body = (rf"\alpha_{{{2 * m}}}" if alpha else "") + "".join(_var_latex(v, e) for v, e in mono)
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}{body}"


def _latex_pieces(p: Poly, alpha: bool = False) -> list[str]:
    ordered = p.sorted_terms()
    pieces = [_term_latex(a, mono, alpha, p.m) for mono, (a, _) in ordered if a]
    pieces += [_term_latex(b, mono, True, p.m) for mono, (_, b) in ordered if b]
    for i, s in enumerate(pieces):
        if not s.startswith("-"):
            pieces.insert(0, pieces.pop(i))
            break
    return pieces


def to_latex(p: Poly) -> str:
    p0, p1 = p.alpha_parts()
    if not p1 or not p0:
        return _join(_latex_pieces(p))
    q = _alpha_quotient(p0, p1)
    if q is None:
        return _join(_latex_pieces(p))
    alpha_q = _join(_latex_pieces(q, alpha=True)) if len(q) == 1 else (
        rf"\alpha_{{{2 * p.m}}}\left(" + _join(_latex_pieces(q)) + r"\right)"
    )
    bracket = _join(["1", alpha_q])
    if p0 == 1:
        return bracket
    head = _join(_latex_pieces(p0))
    if len(p0) > 1:
        head = rf"\left({head}\right)"
    return head + rf"\left[{bracket}\right]"


# -- JSON -----------------------------------------------------------------------

def to_json_obj(p: Poly) -> dict:
    return {
        "m": p.m,
        "degree": homogeneous_degree(p),
        "terms": [
            {"coeff_a": a, "coeff_b": b, "monomial": mono_text(mono)}
            for mono, (a, b) in p.sorted_terms()
        ],
    }


def from_json_obj(obj: dict) -> Poly:
    m = obj["m"]
    terms = {}
    for t in obj["terms"]:
        mono = parse(t["monomial"], m)
        if len(mono) != 1:
            raise ParseError(f"not a monomial: {t['monomial']!r}")
        (key, c), = mono.terms.items()
        if c != (1, 0):
            raise ParseError(f"not a bare monomial: {t['monomial']!r}")
        terms[key] = (int(t["coeff_a"]), int(t["coeff_b"]))
    return Poly(terms, m)


# -- parser ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<sym>[AC]\[\s*-?\d+\s*;\s*-?\d+\s*\])|(?P<name>[a-z]+)(?P<idx>\d*)|(?P<op>[-+*^()]))"
)
_SYM = re.compile(r"([AC])\[\s*(-?\d+)\s*;\s*(-?\d+)\s*\]")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        pos = mt.end()
        if mt.group("int"):
            tokens.append(("int", mt.group("int")))
        elif mt.group("sym"):
            tokens.append(("sym", mt.group("sym")))
        elif mt.group("name"):
            tokens.append(("name", mt.group("name") + "|" + mt.group("idx")))
        else:
            tokens.append(("op", mt.group("op")))
    return tokens


class _Parser:
    def __init__(self, text: str, m: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.m = m

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            raise ParseError(f"expected {op or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            base = base ** (-int(val) if neg else int(val))
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "int":
            return Poly.const(int(val), self.m)
        if kind == "sym":
            k, sup, sub = _SYM.match(val).groups()
            return Poly.from_var(make_symbol(k, int(sup), int(sub)), self.m)
        if kind == "name":
            fam, idx = val.split("|")
            if fam == "al" and not idx:
                return Poly.alpha(self.m)
            try:
                return Poly.from_var(make_var(fam, int(idx) if idx else 0), self.m)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {val!r}")


def parse(text: str, m: int = 1) -> Poly:
    p = _Parser(text, m)
    out = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input near {p.peek()[1]!r}")
    return out


__all__ = [
    "INHOMOGENEOUS",
    "ZERO",
    "ParseError",
    "canonicalize",
    "from_json_obj",
    "mono_text",
    "parse",
    "to_display",
    "to_json_obj",
    "to_latex",
    "to_text",
]
