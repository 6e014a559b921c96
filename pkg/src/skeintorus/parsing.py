"""Text formats: Laurent expressions in a quantum torus and surface files.

Expression grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := '-'? product
    product := atom ('*'? atom)*
    atom    := INT | ('v' | 'q') ('^' sint)?
             | ident ('^' sint)?
             | '[' item+ ']' ('^' sint)?
             | '(' expr ')' ('^' sint)?
    item    := ident ('^' sint)? | '[' item+ ']' ('^' sint)?

``v`` is the ground variable and ``q = v^2``.  An identifier absorbs a
trailing ``*`` when the starred name is a generator of the torus, so
``a*^-1`` is a power of the generator ``a*`` while ``2*a`` is a product.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .errors import EmptySurface, NonInvertibleImage, ParseError, UnknownGenerator
from .qtorus import CommutationMatrix, TorusElement
from .scalars import GroundScalar, _resolve_ctx, v_power
from .surface import BoundaryComponent, Edge, MarkedSurfaceSpec, Quasitriangulation, half_str

__all__ = [
    "format_element",
    "format_scalar_factor",
    "format_surface",
    "parse_expression",
    "parse_surface",
]

RESERVED = {"v", "q"}

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\]]))"
)


class _Lexer:
    def __init__(self, text: str, labels):
        self.text = text
        self.labels = labels
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        n = len(text)
        while True:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
            start = m.start(m.lastgroup)
            kind = m.lastgroup
            val = m.group(kind)
            pos = m.end()
            if kind == "ident" and val not in RESERVED:
                if pos < n and text[pos] == "*" and (val + "*") in labels:
                    val += "*"
                    pos += 1
            self.tokens.append((kind, val, start))
        self.tokens.append(("eof", "", n))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, val):
        if self.peek()[1] == val and self.peek()[0] == "op":
            self.i += 1
            return True
        return False

    def expect(self, val):
        tok = self.next()
        if tok[1] != val or tok[0] != "op":
            raise ParseError(f"expected {val!r}, found {tok[1] or 'end of input'!r}", position=tok[2])
        return tok


class _TorusTarget:
    def __init__(self, torus: CommutationMatrix, ctx):
        self.torus = torus
        self.ctx = ctx

    def scalar(self, c):
        return TorusElement.scalar(self.torus, c, self.ctx)

    def monomial(self, k, pos):
        return TorusElement.monomial(self.torus, k, 1, self.ctx)


class _SurgeryTarget:
    def __init__(self, algebra, ctx):
        self.algebra = algebra
        self.torus = algebra.matrix
        self.ctx = ctx

    def scalar(self, c):
        return self.algebra.one(self.ctx).scale(c)

    def monomial(self, k, pos):
        if not self.algebra.is_normal(k):
            raise ParseError(
                "not a basis monomial of the surgery algebra (negative monogon power, "
                "or a monogon edge bracketed with its dual)",
                position=pos,
            )
        return self.algebra.element({k: 1}, self.ctx)


class _Parser:
    def __init__(self, text, target, ctx):
        self.target = target
        self.torus = target.torus
        self.ctx = ctx
        self.lex = _Lexer(text, set(self.torus.labels))

    def run(self) -> TorusElement:
        if self.lex.peek()[0] == "eof":
            raise ParseError("empty expression", position=0)
        val = self.expr()
        tok = self.lex.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", position=tok[2])
        return val

    def expr(self):
        val = self.term()
        while True:
            if self.lex.accept("+"):
                val = val + self.term()
            elif self.lex.accept("-"):
                val = val - self.term()
            else:
                return val

    def term(self):
        if self.lex.accept("-"):
            return -self.product()
        return self.product()

    def _starts_atom(self, tok):
        return tok[0] in ("int", "ident") or (tok[0] == "op" and tok[1] in "([")

    def product(self):
        val = self.atom()
        while True:
            tok = self.lex.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.lex.next()
                val = val * self.atom()
            elif self._starts_atom(tok):
                val = val * self.atom()
            else:
                return val

    def sint(self):
        neg = self.lex.accept("-")
        tok = self.lex.next()
        if tok[0] != "int":
            raise ParseError("expected an integer exponent", position=tok[2])
        return -int(tok[1]) if neg else int(tok[1])

    def exponent(self):
        return self.sint() if self.lex.accept("^") else 1

    def _power(self, val, e, pos):
        try:
            return val ** e
        except (ArithmeticError, NonInvertibleImage):
            raise ParseError("negative power of a non-invertible expression", position=pos) from None

    def unit(self, name, pos):
        if name not in self.torus:
            raise UnknownGenerator(f"unknown generator {name!r}", position=pos)
        return self.torus.unit(name)

    def atom(self):
        tok = self.lex.next()
        kind, val, pos = tok
        target = self.target
        if kind == "int":
            return target.scalar(int(val))
        if kind == "ident":
            e = self.exponent()
            if val == "v":
                return target.scalar(v_power(e, self.ctx))
            if val == "q":
                return target.scalar(v_power(2 * e, self.ctx))
            k = self.unit(val, pos)
            return target.monomial(tuple(e * x for x in k), pos)
        if kind == "op" and val == "[":
            k = self.bracket_body()
            e = self.exponent()
            return target.monomial(tuple(e * x for x in k), pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.lex.expect(")")
            if self.lex.accept("^"):
                return self._power(inner, self.sint(), pos)
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", position=pos)

    def bracket_body(self):
        total = [0] * len(self.torus.labels)
        count = 0
        while not self.lex.accept("]"):
            tok = self.lex.next()
            kind, val, pos = tok
            if kind == "ident":
                if val in RESERVED:
                    raise ParseError("scalars are not allowed inside a bracket", position=pos)
                k = self.unit(val, pos)
            elif kind == "op" and val == "[":
                k = self.bracket_body()
            else:
                raise ParseError(f"unexpected {val or 'end of input'!r} inside a bracket", position=pos)
            e = self.exponent()
            total = [t + e * x for t, x in zip(total, k)]
            count += 1
        if not count:
            raise ParseError("empty bracket", position=self.lex.tokens[self.lex.i - 1][2])
        return tuple(total)


def parse_expression(text: str, torus, ctx=None):
    """Parse ``text`` in a torus, or in a surgery algebra when given its context."""
    ctx = _resolve_ctx(ctx)
    if isinstance(torus, CommutationMatrix):
        target = _TorusTarget(torus, ctx)
    else:
        target = _SurgeryTarget(torus, ctx)
    return _Parser(text, target, ctx).run()


# ---------------------------------------------------------------------------
# printing


def _vpow(e: int) -> str:
    return "v" if e == 1 else f"v^{e}"


def format_scalar_factor(c: GroundScalar) -> Tuple[str, str]:
    """Split a scalar into ``(sign, body)`` for use as a coefficient.

    ``body`` is empty for ``±1``, else a literal the parser reads back.
    """
    items = sorted(c.coeffs.items(), reverse=True)
    if len(items) == 1:
        e, k = items[0]
        sign = "-" if k < 0 else ""
        k = abs(k)
        if e == 0:
            return sign, "" if k == 1 else str(k)
        return sign, _vpow(e) if k == 1 else f"{k}*{_vpow(e)}"
    parts = []
    for idx, (e, k) in enumerate(items):
        mono = str(abs(k)) if e == 0 else (_vpow(e) if abs(k) == 1 else f"{abs(k)}*{_vpow(e)}")
        if idx == 0:
            parts.append(("-" if k < 0 else "") + mono)
        else:
            parts.append((" - " if k < 0 else " + ") + mono)
    return "", "(" + "".join(parts) + ")"


def _format_monomial(torus: CommutationMatrix, k) -> str:
    factors = [
        lab if e == 1 else f"{lab}^{e}" for lab, e in zip(torus.labels, k) if e
    ]
    if not factors:
        return ""
    if len(factors) == 1:
        return factors[0]
    return "[" + " ".join(factors) + "]"


def format_element(x: TorusElement) -> str:
    """Canonical text: terms sorted by exponent vector, scalars in front."""
    if x.is_zero():
        return "0"
    out = []
    for k, c in x.items():
        sign, body = format_scalar_factor(c)
        mono = _format_monomial(x.torus, k)
        if not mono:
            text = body or "1"
        elif body:
            text = f"{body}*{mono}"
        else:
            text = mono
        if not out:
            out.append(sign + text)
        else:
            out.append((" - " if sign else " + ") + text)
    return "".join(out)


# ---------------------------------------------------------------------------
# surface files

_EDGE_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*\*?$")


def _parse_half(tok: str, line: int):
    name, dot, end = tok.rpartition(".")
    if not dot or end not in ("0", "1") or not name:
        raise ParseError(f"bad half-edge {tok!r}; expected name.0 or name.1", line=line)
    return (name, int(end))


def parse_surface(text: str, check: bool = True):
    """Read the line-based surface format.

    Directives: ``boundary NAME [POINT ...]``, ``genus G``,
    ``edge NAME P P'``, ``order POINT HALF ...``, ``hole BOUNDARY in EDGE``.
    ``#`` starts a comment.  Without a ``genus`` line the genus is inferred
    from the Euler characteristic of the traced faces.
    """
    comps: List[BoundaryComponent] = []
    edges: List[Edge] = []
    orders: Dict[str, list] = {}
    holes: Dict[str, str] = {}
    genus: Optional[int] = None
    seen_any = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        seen_any = True
        head, args = line[0], line[1:]
        if head == "boundary":
            if not args:
                raise ParseError("boundary needs a name", line=lineno)
            comps.append(BoundaryComponent(args[0], tuple(args[1:])))
        elif head == "genus":
            if len(args) != 1 or not args[0].isdigit():
                raise ParseError("genus takes one nonnegative integer", line=lineno)
            genus = int(args[0])
        elif head == "edge":
            if len(args) != 3:
                raise ParseError("edge takes a name and two marked points", line=lineno)
            if not _EDGE_NAME.match(args[0]) or args[0] in RESERVED:
                raise ParseError(f"bad edge name {args[0]!r}", line=lineno)
            edges.append(Edge(args[0], (args[1], args[2])))
        elif head == "order":
            if len(args) < 2:
                raise ParseError("order needs a point and its half-edges", line=lineno)
            if args[0] in orders:
                raise ParseError(f"second order line for {args[0]!r}", line=lineno)
            orders[args[0]] = [_parse_half(t, lineno) for t in args[1:]]
        elif head == "hole":
            if len(args) != 3 or args[1] != "in":
                raise ParseError("expected: hole BOUNDARY in EDGE", line=lineno)
            holes[args[2]] = args[0]
        else:
            raise ParseError(f"unknown directive {head!r}", line=lineno)
    if not seen_any:
        raise EmptySurface("surface file has no directives")
    if not comps:
        raise ParseError("no boundary components declared")
    if not edges:
        raise ParseError("no edges declared")
    if not orders:
        raise ParseError("no order lines")
    flags = set()
    for comp in comps:
        for p in comp.points:
            if p not in orders:
                raise ParseError(f"missing order line for marked point {p!r}")
            flags.add(orders[p][-1][0])
    if genus is None:
        genus = _infer_genus(comps, edges, orders, holes, flags)
    surface = MarkedSurfaceSpec(tuple(comps), genus)
    q = Quasitriangulation(surface, edges, orders, holes, flags, check=check)
    return surface, q


def _infer_genus(comps, edges, orders, holes, flags) -> int:
    from .surface import Triangle, trace_faces

    probe = Quasitriangulation(MarkedSurfaceSpec(tuple(comps), 0), edges, orders, holes, flags, check=False)
    try:
        cycles = trace_faces(probe)
    except Exception:
        return 0  # let validation report the real problem
    n_tri = sum(1 for c in cycles if len(c) == 3)
    chi = sum(len(c.points) for c in comps) - len(edges) + n_tri
    g2 = 2 - len(comps) - chi
    return g2 // 2 if g2 >= 0 and g2 % 2 == 0 else 0


def format_surface(q: Quasitriangulation) -> str:
    s = q.surface
    lines = []
    for comp in s.components:
        lines.append(" ".join(["boundary", comp.name, *comp.points]))
    if s.genus:
        lines.append(f"genus {s.genus}")
    for e in q.edges:
        lines.append(f"edge {e.name} {e.ends[0]} {e.ends[1]}")
    for p in s.points:
        lines.append(" ".join(["order", p, *(half_str(h) for h in q.vertex_orders[p])]))
    for a, hole in q.monogon_holes.items():
        lines.append(f"hole {hole} in {a}")
    return "\n".join(lines) + "\n"
