"""Text and JSON forms of scalars, letters and elements.

Text grammar::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '·') factor)*
    factor  := scalar | letter
    scalar  := INT | INT '/' INT | 'v' | '(' rat ['*' 'v'] [('+'|'-') rat '*' 'v'] ')'
    letter  := ('U'|'Y'|'Z') '[' CLASS [',' INT] ']'  |  'K' '[' '(' INT (',' INT)* ')' [',' INT] ']'

Class names are the ones printed by the enumeration (``S1``, ``M1_1``,
``S1+S2``, ...).  Rendering sorts terms longest word first and writes
``coeff·word``, dropping the coefficient only when it is 1 on the first term.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .engine import AlgebraSpec, Element, Letter, OBJECT_KINDS
from .scalars import TwistScalar, format_scalar


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# -- rendering ---------------------------------------------------------------

def render_letter(x: Letter) -> str:
    if x.kind in OBJECT_KINDS:
        body = x.payload.name
    else:
        body = "(" + ",".join(str(c) for c in x.payload) + ")"
    kind = "K" if x.kind in ("K", "k") else x.kind
    if x.degree is None:
        return f"{kind}[{body}]"
    return f"{kind}[{body},{x.degree}]"


def render_word(word) -> str:
    return "*".join(render_letter(x) for x in word)


def render(x: Element) -> str:
    terms = x.sorted_terms()
    if not terms:
        return "0"
    parts = []
    for i, (w, c) in enumerate(terms):
        neg = c.vpart == 0 and c.rat < 0 or c.rat == 0 and c.vpart < 0
        mag = -c if (neg and i > 0) else c
        coeff = format_scalar(mag)
        if not w:
            body = coeff
        elif i == 0 and c == 1:
            body = render_word(w)
        else:
            body = f"{coeff}·{render_word(w)}"
        if i == 0:
            parts.append(body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<letter>[UYZK])\[(?P<args>[^\]]*)\]|(?P<num>\d+)|(?P<v>v)|(?P<op>[-+*/()·]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            at = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            if text[at] in "UYZK" and text[at + 1:at + 2] == "[":
                raise ParseError(f"letter {text[at]}[ is missing its closing ']'", at)
            raise ParseError(f"unexpected character {text[at]!r}", at)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group("letter"):
            out.append(("letter", (m.group("letter"), m.group("args")), start))
        elif m.group("num"):
            out.append(("num", int(m.group("num")), start))
        elif m.group("v"):
            out.append(("v", None, start))
        else:
            out.append(("op", "*" if m.group("op") == "·" else m.group("op"), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, spec: AlgebraSpec):
        self.text = text
        self.spec = spec
        self.q = spec.q
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def expr(self) -> Element:
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        out = self.term().scale(sign)
        while True:
            t = self.peek()
            if t[0] == "end":
                return out
            if t[0] == "op" and t[1] in "+-":
                self.take()
                term = self.term()
                out = out + term if t[1] == "+" else out - term
            else:
                raise ParseError("expected '+', '-' or end of input", t[2])

    def term(self) -> Element:
        coeff = TwistScalar(self.q, 1)
        letters = []
        while True:
            t = self.peek()
            if t[0] == "letter":
                self.take()
                letters.append(self.letter(t))
            elif t[0] in ("num", "v") or (t[0] == "op" and t[1] in "(-"):
                if t[0] == "op" and t[1] == "-" and (letters or coeff != 1):
                    raise ParseError("unexpected '-'", t[2])
                coeff = coeff * self.scalar()
            else:
                raise ParseError("expected a scalar or a generator", t[2])
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                continue
            return Element.word(self.q, letters, coeff)

    def rational(self) -> Fraction:
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "num":
            raise ParseError("malformed scalar: expected an integer", t[2])
        val = Fraction(t[1])
        nt = self.peek()
        if nt[0] == "op" and nt[1] == "/":
            self.take()
            d = self.take()
            if d[0] != "num" or d[1] == 0:
                raise ParseError("malformed scalar: bad denominator", d[2])
            val /= d[1]
        return sign * val

    def _v_tail(self) -> bool:
        t = self.peek()
        if t[0] == "op" and t[1] == "*" and self.toks[self.i + 1][0] == "v":
            self.take()
            self.take()
            return True
        return False

    def scalar(self) -> TwistScalar:
        t = self.peek()
        if t[0] == "v":
            self.take()
            return TwistScalar(self.q, 0, 1)
        if t[0] == "op" and t[1] == "-":
            nt = self.toks[self.i + 1]
            if nt[0] == "v":
                self.take()
                self.take()
                return TwistScalar(self.q, 0, -1)
            return TwistScalar(self.q, self.rational())
        if t[0] == "num":
            return TwistScalar(self.q, self.rational())
        if t[0] == "op" and t[1] == "(":
            self.take()
            rat, vpart = Fraction(0), Fraction(0)
            nt = self.peek()
            if nt[0] == "v":
                self.take()
                vpart = Fraction(1)
            else:
                first = self.rational()
                if self._v_tail():
                    vpart = first
                else:
                    rat = first
                    nt = self.peek()
                    if nt[0] == "op" and nt[1] in "+-":
                        self.take()
                        sign = -1 if nt[1] == "-" else 1
                        if self.peek()[0] == "v":
                            self.take()
                            vpart = Fraction(sign)
                        else:
                            vpart = sign * self.rational()
                            if not self._v_tail():
                                raise ParseError("malformed scalar: expected '*v'", self.peek()[2])
            self.expect_op(")")
            return TwistScalar(self.q, rat, vpart)
        raise ParseError("malformed scalar", t[2])

    def letter(self, tok) -> Letter:
        (kind, args), pos = tok[1], tok[2]
        args = args.strip()
        degree = None
        if kind == "K":
            m = re.fullmatch(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*(?:,\s*(-?\d+))?", args)
            if not m:
                raise ParseError(f"malformed K0 class in K[{args}]", pos)
            alpha = tuple(int(c) for c in m.group(1).split(","))
            if len(alpha) != self.spec.cat.quiver.n:
                raise ParseError(f"K0 class {alpha} has the wrong length", pos)
            if m.group(2) is not None:
                degree = int(m.group(2))
            letter = Letter("K" if degree is not None else "k", alpha, degree)
        else:
            m = re.fullmatch(r"([^,]+?)\s*(?:,\s*(-?\d+))?", args)
            if not m:
                raise ParseError(f"malformed generator {kind}[{args}]", pos)
            try:
                cls = self.spec.cat.by_name(m.group(1))
            except KeyError as exc:
                raise ParseError(f"unknown class name {m.group(1)!r}", pos) from exc
            if m.group(2) is not None:
                degree = int(m.group(2))
            letter = Letter(kind, cls, degree)
        try:
            self.spec.check_letter(letter)
        except ValueError as exc:
            raise ParseError(str(exc), pos) from exc
        return letter


def parse_expression(text: str, spec: AlgebraSpec) -> Element:
    """Parse ``text`` into an (unnormalized) Element of ``spec``'s algebra."""
    return _Parser(text, spec).expr()


def parse_scalar(text: str, q: int) -> TwistScalar:
    class _Bare:
        pass
    spec = _Bare()
    spec.q = q
    p = _Parser(text, spec)
    out = p.scalar()
    if p.peek()[0] != "end":
        raise ParseError("trailing input after scalar", p.peek()[2])
    return out


# -- JSON ----------------------------------------------------------------------

def letter_to_json(x: Letter) -> dict:
    cls = x.payload.name if x.kind in OBJECT_KINDS else list(x.payload)
    kind = "K" if x.kind in ("K", "k") else x.kind
    return {"kind": kind, "class": cls, "degree": x.degree}


def element_to_json(x: Element) -> list:
    return [{"word": [letter_to_json(g) for g in w], "coeff": c.to_json()} for w, c in x.sorted_terms()]


def element_from_json(data: list, spec: AlgebraSpec) -> Element:
    out = Element(spec.q)
    for term in data:
        letters = []
        for g in term["word"]:
            deg = g.get("degree")
            if g["kind"] == "K":
                letters.append(Letter("K" if deg is not None else "k", tuple(g["class"]), deg))
            else:
                letters.append(Letter(g["kind"], spec.cat.by_name(g["class"]), deg))
        for g in letters:
            spec.check_letter(g)
        out = out + Element.word(spec.q, letters, TwistScalar.from_json(spec.q, term["coeff"]))
    return out
