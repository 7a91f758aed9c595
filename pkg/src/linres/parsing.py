"""Problem files, polynomial expressions and transform maps.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    ring x1..x6, t1..t10;
    ideal J = x1*x2*x3, x1*x2*x4 - 1/2*x5^3;
    order degrevlex tx;          # optional
    transform x4 -> x1 + x4;     # optional, comma separated
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field


from .polycore import DEGREVLEX_XT, MonomialOrder, Polynomial, RingSpec, format_polynomial


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col = line, col


_TOKEN = re.compile(
    r"\s*(?:(?P<comment>\#[^\n]*)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\.\.|->|[-+*/^(),;=]))"
)


def tokenize(text: str):
    pos, out = 0, []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        pos = mt.end()
        if mt.group("comment"):
            continue
        kind = mt.lastgroup
        out.append((kind, mt.group(kind), mt.start(kind)))
    out.append(("eof", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok[2])

    def accept(self, value):
        if self.tok[1] == value and self.tok[0] != "eof":
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.error(f"expected {value!r}, found {self.tok[1] or 'end of input'!r}")

    def name(self):
        if self.tok[0] != "name":
            self.error(f"expected a name, found {self.tok[1] or 'end of input'!r}")
        v = self.tok[1]
        self.i += 1
        return v

    def integer(self):
        if self.tok[0] != "int":
            self.error(f"expected an integer, found {self.tok[1] or 'end of input'!r}")
        v = int(self.tok[1])
        self.i += 1
        return v

    # -- polynomial expressions
    def expr(self, ring, order):
        if self.accept("-"):
            acc = -self.term(ring, order)
        else:
            self.accept("+")
            acc = self.term(ring, order)
        while True:
            if self.accept("+"):
                acc = acc + self.term(ring, order)
            elif self.accept("-"):
                acc = acc - self.term(ring, order)
            else:
                return acc

    def term(self, ring, order):
        acc = self.factor(ring, order)
        while True:
            if self.accept("*"):
                acc = acc * self.factor(ring, order)
            elif self.tok[1] == "/":
                tok = self.tok
                self.i += 1
                den = self.factor(ring, order)
                if not (den.is_zero() or (den.is_monomial() and den.lm == ring.one())):
                    self.error("only division by a rational constant is supported", tok)
                if den.is_zero():
                    self.error("zero denominator", tok)
                acc = acc.scale(1 / den.lc)
            else:
                return acc

    def factor(self, ring, order):
        base = self.atom(ring, order)
        if self.accept("^"):
            base = base ** self.integer()
        return base

    def atom(self, ring, order):
        kind, val, _ = self.tok
        if kind == "int":
            self.i += 1
            return Polynomial.constant(ring, int(val), order)
        if kind == "name":
            self.i += 1
            try:
                return Polynomial.variable(ring, val, order)
            except KeyError:
                self.i -= 1
                self.error(f"unknown variable {val!r}")
        if self.accept("("):
            e = self.expr(ring, order)
            self.expect(")")
            return e
        self.error(f"unexpected {val or 'end of input'!r}")


def parse_polynomial(text: str, ring: RingSpec, order: MonomialOrder = DEGREVLEX_XT) -> Polynomial:
    p = _Parser(text)
    f = p.expr(ring, order)
    if p.tok[0] != "eof":
        p.error(f"unexpected {p.tok[1]!r}")
    return f


# ------------------------------------------------------------------ problem files


@dataclass
class ProblemFile:
    ring: RingSpec
    ideals: dict = field(default_factory=dict)
    transform: list = field(default_factory=list)  # [(var, image text)]
    order: MonomialOrder | None = None
    declared_t: bool = False

    def ideal(self, name: str | None = None):
        from .groebner import IdealGens

        if not self.ideals:
            raise ValueError("problem declares no ideal")
        name = name or next(iter(self.ideals))
        gens = self.ideals[name]
        return IdealGens(self.ring, tuple(gens), self.order or DEGREVLEX_XT)

    def to_text(self) -> str:
        lines = [f"ring {_ring_decl(self.ring, self.declared_t)};"]
        for name, gens in self.ideals.items():
            lines.append(f"ideal {name} = {', '.join(format_polynomial(g) for g in gens)};")
        if self.order is not None:
            lines.append(f"order {self.order.kind} {self.order.precedence};")
        if self.transform:
            maps = ", ".join(f"{v} -> {' '.join(img.split())}" for v, img in self.transform)
            lines.append(f"transform {maps};")
        return "\n".join(lines) + "\n"


def _ring_decl(ring: RingSpec, with_t: bool) -> str:
    parts = [f"x1..x{ring.xcount}"]
    if with_t and ring.tcount:
        parts.append(f"t1..t{ring.tcount}")
    return ", ".join(parts)


def _parse_ring(p: _Parser):
    counts = {"x": [], "t": []}
    while True:
        tok = p.tok
        first = p.name()
        m = re.fullmatch(r"([xt])(\d+)", first)
        if not m:
            p.error(f"ring variables must be named x<i> or t<j>, got {first!r}", tok)
        block, lo = m.group(1), int(m.group(2))
        hi = lo
        if p.accept(".."):
            tok2 = p.tok
            last = p.name()
            m2 = re.fullmatch(r"([xt])(\d+)", last)
            if not m2 or m2.group(1) != block:
                p.error(f"range end {last!r} does not match {first!r}", tok2)
            hi = int(m2.group(2))
        counts[block].extend(range(lo, hi + 1))
        if not p.accept(","):
            break
    for block, idx in counts.items():
        if idx != list(range(1, len(idx) + 1)):
            p.error(f"{block}-variables must be exactly {block}1..{block}n in order")
    if not counts["x"]:
        p.error("ring needs at least one x variable")
    return RingSpec(len(counts["x"]), len(counts["t"])), bool(counts["t"])


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file; statement order is ring first, then anything."""
    p = _Parser(text)
    if p.tok[1] != "ring":
        p.error("problem must start with a ring declaration")
    p.i += 1
    ring, declared_t = _parse_ring(p)
    p.expect(";")
    prob = ProblemFile(ring, declared_t=declared_t)
    pending_transform = []
    while p.tok[0] != "eof":
        tok = p.tok
        word = p.name()
        if word == "ideal":
            name = p.name()
            if name in prob.ideals:
                p.error(f"ideal {name!r} declared twice", tok)
            p.expect("=")
            gens = [p.expr(ring, DEGREVLEX_XT)]
            while p.accept(","):
                gens.append(p.expr(ring, DEGREVLEX_XT))
            prob.ideals[name] = gens
        elif word == "order":
            kind = p.name().lower()
            prec = p.name().lower() if p.tok[0] == "name" else "xt"
            try:
                prob.order = MonomialOrder(kind, prec)
            except ValueError as exc:
                p.error(str(exc), tok)
        elif word == "transform":
            pending_transform.append(_parse_map_entry(p))
            while p.accept(","):
                pending_transform.append(_parse_map_entry(p))
        else:
            p.error(f"unknown statement {word!r}", tok)
        p.expect(";")
    if prob.order is not None:
        prob.ideals = {k: [g.reorder(prob.order) for g in v] for k, v in prob.ideals.items()}
    prob.transform = pending_transform
    return prob


def _parse_map_entry(p: _Parser):
    # Image text is kept raw; the target ring (with t's) is only known later.
    tok = p.tok
    var = p.name()
    if not re.fullmatch(r"[xt]\d+", var):
        p.error(f"cannot map {var!r}", tok)
    p.expect("->")
    start = p.tok[2]
    depth = 0
    while p.tok[0] != "eof":
        v = p.tok[1]
        if v == "(":
            depth += 1
        elif v == ")":
            depth -= 1
        elif depth == 0 and v in (",", ";"):
            break
        p.i += 1
    end = p.tok[2]
    return var, p.text[start:end].strip()


def parse_map(text: str) -> list[tuple[str, str]]:
    """Transform map lines ``x4 -> x1 + x4``; returns (variable, image text)."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip().rstrip(";").strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError("expected 'var -> image'", text, sum(len(l) + 1 for l in text.splitlines()[:lineno - 1]))
        var, image = (s.strip() for s in line.split("->", 1))
        if not re.fullmatch(r"[xt]\d+", var):
            raise ParseError(f"cannot map {var!r}", text, sum(len(l) + 1 for l in text.splitlines()[:lineno - 1]))
        entries.append((var, image))
    return entries
