"""Plain-text algebra format (header line ``arqlab v1``).

Example::

    arqlab v1
    field Q            # or: field GF(7)
    vertices 3
    arrow a 1 2
    arrow b 2 3
    relation a*b

Relations are sums of terms ``[coefficient[*]]path`` separated by ``+`` or
``-``; a path is arrow names joined by ``*`` and composed left to right.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algcore import Algebra, Quiver, Relation, bound_quiver_algebra, presentation_of
from .errors import ArqlabError, ParseError
from .exactla import Field, fmt_scalar

HEADER = "arqlab v1"
_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TERM = re.compile(rf"^(?:(\d+(?:/\d+)?)\s*\*?\s*)?({_NAME}(?:\s*\*\s*{_NAME})*)$")


def _parse_relation(text: str, lineno: int) -> Relation:
    s = text.strip()
    if not s:
        raise ParseError(f"line {lineno}: empty relation")
    pieces = re.split(r"\s*([+-])\s*", s)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    if len(pieces) % 2:
        raise ParseError(f"line {lineno}: dangling sign in relation")
    terms = []
    for sign, body in zip(pieces[::2], pieces[1::2]):
        m = _TERM.match(body)
        if not m:
            raise ParseError(f"line {lineno}: cannot parse term {body!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if sign == "-":
            c = -c
        path = tuple(x.strip() for x in m.group(2).split("*"))
        terms.append((c, path))
    return Relation(tuple(terms))


def parse_presentation(text: str):
    """Parse the text format into ``(field, Quiver, [Relation])``."""
    lines = text.splitlines()
    body = []
    for k, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            body.append((k, line))
    if not body or body[0][1] != HEADER:
        raise ParseError(f"missing header line {HEADER!r}")
    field = Field(0)
    n = None
    arrows = []
    rel_lines = []
    for k, line in body[1:]:
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "field":
            try:
                field = Field.parse(rest)
            except ValueError as exc:
                raise ParseError(f"line {k}: {exc}") from None
        elif key == "vertices":
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(f"line {k}: vertices needs a positive integer")
            n = int(rest)
        elif key == "arrow":
            parts = rest.split()
            if len(parts) != 3 or not re.fullmatch(_NAME, parts[0]):
                raise ParseError(f"line {k}: expected 'arrow NAME SOURCE TARGET'")
            try:
                arrows.append((parts[0], int(parts[1]), int(parts[2])))
            except ValueError:
                raise ParseError(f"line {k}: arrow endpoints must be integers") from None
        elif key == "relation":
            rel_lines.append((k, rest))
        else:
            raise ParseError(f"line {k}: unknown keyword {key!r}")
    if n is None:
        raise ParseError("missing 'vertices' line")
    try:
        q = Quiver(n, tuple(arrows))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    rels = [_parse_relation(t, k) for k, t in rel_lines]
    for (k, _), r in zip(rel_lines, rels):
        try:
            r.endpoints(q)
        except KeyError as exc:
            raise ParseError(f"line {k}: unknown arrow {exc.args[0]}") from None
        except ArqlabError as exc:
            raise ParseError(f"line {k}: {exc}") from None
    return field, q, rels


def parse_algebra(text: str, field: Field | None = None, length_bound: int | None = None) -> Algebra:
    f, q, rels = parse_presentation(text)
    return bound_quiver_algebra(q, rels, field or f, length_bound)


def _render_term(field: Field, c, path) -> tuple[str, str]:
    neg = (c < 0) if not field.p else False
    a = -c if neg else c
    word = "*".join(path)
    if a == 1:
        return ("-" if neg else "+"), word
    return ("-" if neg else "+"), f"{fmt_scalar(field, field(a))}*{word}"


def render_presentation(field: Field, q: Quiver, rels) -> str:
    out = [HEADER, f"field {field}", f"vertices {q.n}"]
    for name, s, t in q.arrows:
        out.append(f"arrow {name} {s} {t}")
    for r in rels:
        parts = []
        for c, path in r.terms:
            sign, body = _render_term(field, field(c), path)
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        out.append("relation " + " ".join(parts))
    return "\n".join(out) + "\n"


def render_algebra(a: Algebra) -> str:
    q, rels = presentation_of(a)
    return render_presentation(a.field, q, rels)
