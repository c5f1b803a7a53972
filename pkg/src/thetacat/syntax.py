"""Text grammars for cells and Theta maps.

Cells: ``0`` (or ``[]``) is the point; ``[T1 T2 ... Tn]`` is [[n]; T1..Tn];
``g<k>`` is the k-globe and ``A(n0,m1,...,nl)`` a globular sum.
Maps: ``<cell> -> <cell> : {f=(v0 ... vm); c=[ [maps for child 1] ... ]}``
where each nested map is written as a bare ``{...}`` body.
"""

from __future__ import annotations

import re

from . import theta as th
from .simplex import SimplexMap
from .theta import Cell, ThetaMap

_TOKEN = re.compile(r"\s*(->|A\([\d\s,]*\)|g\d+|\d+|[\[\]{}();:=,]|f|c)")


class ParseError(ValueError):
    pass


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Stream:
    def __init__(self, toks):
        self.toks, self.i = toks, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        t = self.peek()
        if t is None:
            raise ParseError(f"unexpected end of input{'; expected ' + repr(want) if want else ''}")
        if want is not None and t != want:
            raise ParseError(f"expected {want!r}, found {t!r}")
        self.i += 1
        return t


def _cell(st):
    t = st.take()
    if t == "0":
        return th.POINT
    if t.startswith("g"):
        return th.globe(int(t[1:]))
    if t.startswith("A("):
        try:
            return th.globular_sum_to_cell([int(x) for x in t[2:-1].replace(",", " ").split()])
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if t == "[":
        if st.peek() == "]":
            st.take()
            return th.POINT
        kids = []
        while st.peek() != "]":
            kids.append(_cell(st))
        st.take("]")
        return Cell(tuple(kids))
    raise ParseError(f"unexpected {t!r} in a cell")


def parse_cell(text: str) -> Cell:
    st = _Stream(_tokens(text))
    c = _cell(st)
    if st.peek() is not None:
        raise ParseError(f"trailing input after cell: {st.toks[st.i:]}")
    return c


def _body(st, src, tgt):
    st.take("{")
    st.take("f")
    st.take("=")
    st.take("(")
    vals = []
    while st.peek() != ")":
        vals.append(int(st.take()))
    st.take(")")
    st.take(";")
    st.take("c")
    st.take("=")
    st.take("[")
    try:
        x = SimplexMap(src.width, tgt.width, vals)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    fams = []
    for i in range(1, src.width + 1):
        st.take("[")
        fam = []
        for j in range(x.values[i - 1] + 1, x.values[i] + 1):
            fam.append(_body(st, src.children[i - 1], tgt.children[j - 1]))
        st.take("]")
        fams.append(tuple(fam))
    st.take("]")
    st.take("}")
    try:
        return ThetaMap(src, tgt, x, tuple(fams))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_map(text: str) -> ThetaMap:
    toks = _tokens(text)
    try:
        arrow = toks.index("->")
        colon = toks.index(":")
    except ValueError:
        raise ParseError("a map needs 'src -> tgt : {...}'") from None
    src = _cell(_Stream(toks[:arrow] + []))
    tgt_st = _Stream(toks[arrow + 1:colon])
    tgt = _cell(tgt_st)
    st = _Stream(toks[colon + 1:])
    f = _body(st, src, tgt)
    if st.peek() is not None:
        raise ParseError("trailing input after map")
    return f


format_cell = th.format_cell
format_map = th.format_map


def format_globular_sum(seq) -> str:
    return "A(" + ",".join(map(str, seq)) + ")"
