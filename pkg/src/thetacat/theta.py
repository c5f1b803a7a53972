"""Cells and morphisms of the cell category Theta.

A cell is a planar rooted tree ``[[n]; T1 ... Tn]``; the leaf is ``[0]``.
In text the leaf is written ``0`` and a node ``[T1 ... Tn]``, so ``[0]`` is
the arrow and ``[0 0]`` the composable pair.
A morphism ``[x; comps] : [[m]; S1..Sm] -> [[n]; T1..Tn]`` is a monotone
``x : [m] -> [n]`` together with, for every ``i`` in ``1..m``, one map
``S_i -> T_j`` for each ``j`` in ``F(x)(i) = {x(i-1)+1, ..., x(i)}``.

Cells and maps are hash-consed: structurally equal values are the same
Python object, so equality and hashing are by identity.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from . import simplex
from .simplex import SimplexMap


class Cell:
    __slots__ = ("children", "width", "degree", "height", "__weakref__")
    _table: dict = {}

    def __new__(cls, children=()):
        children = tuple(children)
        found = cls._table.get(children)
        if found is not None:
            return found
        for c in children:
            if not isinstance(c, Cell):
                raise TypeError(f"child {c!r} is not a Cell")
        obj = object.__new__(cls)
        obj.children = children
        obj.width = len(children)
        obj.degree = len(children) + sum(c.degree for c in children)
        obj.height = 1 + max((c.height for c in children), default=0) if children else 0
        cls._table[children] = obj
        return obj

    def __reduce__(self):
        return (Cell, (self.children,))

    def __repr__(self):
        return f"Cell({format_cell(self)})"

    def __str__(self):
        return format_cell(self)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def is_point(self):
        return not self.children


POINT = Cell(())


def node(*children) -> Cell:
    return Cell(children)


def format_cell(T: Cell) -> str:
    if not T.children:
        return "0"
    return "[" + " ".join(format_cell(c) for c in T.children) + "]"


def sort_key(T: Cell):
    return (T.degree, format_cell(T))


def degree(T: Cell) -> int:
    """lambda([[n]; T1..Tn]) = n + sum lambda(Ti); the number of non-root nodes."""
    return T.degree


class ThetaMap:
    __slots__ = ("src", "tgt", "simplicial", "components", "__weakref__")
    _table: dict = {}

    def __new__(cls, src: Cell, tgt: Cell, simplicial: SimplexMap, components):
        components = tuple(tuple(c) for c in components)
        key = (src, tgt, simplicial, components)
        found = cls._table.get(key)
        if found is not None:
            return found
        _validate(src, tgt, simplicial, components)
        return cls._make(key)

    @classmethod
    def _unchecked(cls, src, tgt, simplicial, components):
        key = (src, tgt, simplicial, components)
        found = cls._table.get(key)
        if found is not None:
            return found
        return cls._make(key)

    @classmethod
    def _make(cls, key):
        obj = object.__new__(cls)
        obj.src, obj.tgt, obj.simplicial, obj.components = key
        cls._table[key] = obj
        return obj

    def __reduce__(self):
        return (ThetaMap, (self.src, self.tgt, self.simplicial, self.components))

    def __repr__(self):
        return f"ThetaMap({self.src} -> {self.tgt} : {format_body(self)})"

    def __str__(self):
        return f"{self.src} -> {self.tgt} : {format_body(self)}"

    def __lt__(self, other):
        return _map_key(self) < _map_key(other)

    def component(self, i: int, j: int) -> "ThetaMap":
        """The component S_i -> T_j (1-based), j in F(x)(i)."""
        lo = self.simplicial.values[i - 1]
        if not lo < j <= self.simplicial.values[i]:
            raise KeyError(f"{j} not in F(x)({i})")
        return self.components[i - 1][j - lo - 1]

    def is_identity(self):
        return self is identity(self.src)

    def __matmul__(self, other):
        return compose(self, other)


def _validate(src, tgt, x, components):
    if x.src != src.width or x.tgt != tgt.width:
        raise ValueError(f"simplicial part {x} does not match widths {src.width}, {tgt.width}")
    if len(components) != src.width:
        raise ValueError("one component family per child of the source")
    v = x.values
    for i in range(1, src.width + 1):
        fam = components[i - 1]
        targets = range(v[i - 1] + 1, v[i] + 1)
        if len(fam) != len(targets):
            raise ValueError(f"family {i} has {len(fam)} maps, expected {len(targets)}")
        for j, comp in zip(targets, fam):
            if not isinstance(comp, ThetaMap):
                raise TypeError("components must be ThetaMaps")
            if comp.src is not src.children[i - 1] or comp.tgt is not tgt.children[j - 1]:
                raise ValueError(f"component ({i},{j}) has the wrong endpoints")


def _map_key(f: ThetaMap):
    return (sort_key(f.src), sort_key(f.tgt), f.simplicial.values,
            tuple(tuple(_map_key(c) for c in fam) for fam in f.components))


@lru_cache(maxsize=None)
def identity(T: Cell) -> ThetaMap:
    return ThetaMap._unchecked(
        T, T, simplex.identity(T.width),
        tuple((identity(c),) for c in T.children))


_compose_cache: dict = {}


def compose(beta: ThetaMap, alpha: ThetaMap) -> ThetaMap:
    """beta . alpha for alpha : S -> T, beta : T -> U."""
    key = (beta, alpha)
    found = _compose_cache.get(key)
    if found is not None:
        return found
    if alpha.tgt is not beta.src:
        raise ValueError(f"cannot compose: {alpha.tgt} is not {beta.src}")
    g = alpha.simplicial.values
    comps = []
    for i in range(1, alpha.src.width + 1):
        fam = []
        afam = alpha.components[i - 1]
        for k in range(g[i - 1] + 1, g[i] + 1):
            a = afam[k - g[i - 1] - 1]
            for b in beta.components[k - 1]:
                fam.append(compose(b, a))
        comps.append(tuple(fam))
    out = ThetaMap._unchecked(alpha.src, beta.tgt,
                              simplex.compose(beta.simplicial, alpha.simplicial),
                              tuple(comps))
    _compose_cache[key] = out
    return out


def compose_all(*maps: ThetaMap) -> ThetaMap:
    """compose_all(f, g, h) = f . g . h"""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


@lru_cache(maxsize=None)
def hom(S: Cell, T: Cell) -> tuple:
    """Every morphism S -> T exactly once, ordered by simplicial part first."""
    out = []
    for x in simplex.hom(S.width, T.width):
        v = x.values
        slots = []
        for i in range(1, S.width + 1):
            si = S.children[i - 1]
            slots.append([hom(si, T.children[j - 1]) for j in range(v[i - 1] + 1, v[i] + 1)])
        # product over i of product over j
        per_i = [list(product(*fams)) for fams in slots]
        for choice in product(*per_i):
            out.append(ThetaMap._unchecked(S, T, x, tuple(choice)))
    return tuple(out)


@lru_cache(maxsize=None)
def hom_index(S: Cell, T: Cell) -> dict:
    return {f: k for k, f in enumerate(hom(S, T))}


def vertices(T: Cell) -> tuple:
    """Hom([0], T) in left-to-right order."""
    return hom(POINT, T)


def vertex(T: Cell, v: int) -> ThetaMap:
    return ThetaMap._unchecked(POINT, T, simplex.constant(0, T.width, v), ())


def terminal(S: Cell) -> ThetaMap:
    """The unique map S -> [0]."""
    return ThetaMap._unchecked(S, POINT, simplex.constant(S.width, 0, 0),
                               ((),) * S.width)


# -- globes -----------------------------------------------------------------

def globe(n: int) -> Cell:
    if n < 0:
        raise ValueError("globe dimension must be non-negative")
    T = POINT
    for _ in range(n):
        T = Cell((T,))
    return T


def shift_cell(T: Cell) -> Cell:
    """J(T) = [[1]; T]"""
    return Cell((T,))


def shift_map(f: ThetaMap) -> ThetaMap:
    """J(f) = [id_[1]; f]"""
    return ThetaMap._unchecked(shift_cell(f.src), shift_cell(f.tgt),
                               simplex.identity(1), ((f,),))


def shift_power(f: ThetaMap, d: int) -> ThetaMap:
    for _ in range(d):
        f = shift_map(f)
    return f


def globe_s(n: int) -> ThetaMap:
    """s : n -> n+1, [id; [id; ... [d^1]]]"""
    return shift_power(vertex(globe(1), 0), n)


def globe_t(n: int) -> ThetaMap:
    """t : n -> n+1, [id; [id; ... [d^0]]]"""
    return shift_power(vertex(globe(1), 1), n)


def globe_i(n: int) -> ThetaMap:
    """i : n+1 -> n, [id; [id; ... [s^0]]]"""
    return shift_power(terminal(globe(1)), n)


def globe_power(kind: str, m: int, n: int) -> ThetaMap:
    """The composite of n-m copies of s, t or i between m-bar and n-bar.

    For kind 's' or 't' this is m -> n (m <= n); for 'i' it is n -> m.
    """
    if n < m:
        raise ValueError("need m <= n")
    if kind == "i":
        out = identity(globe(n))
        for k in range(n - 1, m - 1, -1):
            out = compose(globe_i(k), out)
        return out
    step = globe_s if kind == "s" else globe_t
    out = identity(globe(m))
    for k in range(m, n):
        out = compose(step(k), out)
    return out


# -- enumeration of cells ---------------------------------------------------

@lru_cache(maxsize=None)
def cells_of_degree(d: int) -> tuple:
    if d == 0:
        return (POINT,)
    out = []
    for k in range(1, d + 1):
        for parts in _compositions(d - k, k):
            for kids in product(*(cells_of_degree(p) for p in parts)):
                out.append(Cell(kids))
    return tuple(sorted(out, key=sort_key))


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_cells(max_degree: int) -> tuple:
    """All cells of degree <= max_degree, in degree-then-lexicographic order."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    out = []
    for d in range(max_degree + 1):
        out.extend(cells_of_degree(d))
    return tuple(out)


# -- globular sums ----------------------------------------------------------

def cell_to_globular_sum(T: Cell) -> tuple:
    """The unique (n0, m1, n1, ..., nl) presenting T as globes glued along globes."""
    if not T.children:
        return (0,)
    out = []
    for k, child in enumerate(T.children):
        if k:
            out.append(0)
        out.extend(e + 1 for e in cell_to_globular_sum(child))
    return tuple(out)


def check_globular_sum(seq) -> tuple:
    seq = tuple(int(e) for e in seq)
    if not seq or len(seq) % 2 == 0:
        raise ValueError(f"globular sum needs odd length: {seq}")
    if any(e < 0 for e in seq):
        raise ValueError(f"entries must be non-negative: {seq}")
    for k in range(1, len(seq), 2):
        if seq[k] > seq[k - 1] or seq[k] > seq[k + 1]:
            raise ValueError(f"gluing dimension {seq[k]} exceeds a neighbour in {seq}")
    return seq


def normalize_globular_sum(seq) -> tuple:
    """Drop degenerate gluings m_i = n_{i-1} or m_i = n_i (a globe glued along itself)."""
    seq = list(check_globular_sum(seq))
    changed = True
    while changed:
        changed = False
        for k in range(1, len(seq), 2):
            m, left, right = seq[k], seq[k - 1], seq[k + 1]
            if m == left:
                del seq[k - 1:k + 1]
                changed = True
                break
            if m == right:
                del seq[k:k + 2]
                changed = True
                break
    return tuple(seq)


def globular_sum_to_cell(seq) -> Cell:
    """A(n0, m1, n1, ..., nl), split at the zero gluings and recursing one level down."""
    seq = normalize_globular_sum(seq)
    if seq == (0,):
        return POINT
    ns = seq[0::2]
    ms = seq[1::2]
    segments = []
    start = 0
    for k, m in enumerate(ms):
        if m == 0:
            segments.append(seq[2 * start:2 * k + 1])
            start = k + 1
    segments.append(seq[2 * start:])
    assert all(n >= 1 for n in ns)
    return Cell(tuple(globular_sum_to_cell(tuple(e - 1 for e in s)) for s in segments))


# -- gluing maps along the globular decomposition ---------------------------

def glue_inclusion(T: Cell, i: int, depth: int = 0) -> ThetaMap:
    """J^depth of the inclusion [[1]; T_i] -> T (1-based i)."""
    k = T.width
    if not 1 <= i <= k:
        raise ValueError(f"piece {i} out of range for width {k}")
    piece = Cell((T.children[i - 1],))
    x = SimplexMap._raw(1, k, (i - 1, i))
    inc = ThetaMap._unchecked(piece, T, x, ((identity(T.children[i - 1]),),))
    return shift_power(inc, depth)


def assemble_glued_map(T: Cell, pieces, depth: int = 0) -> ThetaMap:
    """The map J^depth(T) -> S restricting to pieces[i] on J^depth([[1]; T_i]).

    Raises ValueError when consecutive pieces disagree on their shared glue
    globe, when targets differ, or when the result fails to restrict.
    """
    pieces = list(pieces)
    if len(pieces) != T.width or not pieces:
        raise ValueError(f"need {T.width} pieces, got {len(pieces)}")
    S = pieces[0].tgt
    for p in pieces:
        if p.tgt is not S:
            raise ValueError("pieces must share a target")
    for i, p in enumerate(pieces, start=1):
        want = shift_power_cell(Cell((T.children[i - 1],)), depth)
        if p.src is not want:
            raise ValueError(f"piece {i} has source {p.src}, expected {want}")
    for i in range(1, T.width):
        left = compose(pieces[i - 1], _glue_end(T.children[i - 1], depth, last=True))
        right = compose(pieces[i], _glue_end(T.children[i], depth, last=False))
        if left is not right:
            raise ValueError(f"pieces {i} and {i + 1} disagree on their shared globe: "
                             f"{left} vs {right}")
    out = _assemble(T, pieces, depth)
    for i, p in enumerate(pieces, start=1):
        if compose(out, glue_inclusion(T, i, depth)) is not p:
            raise ValueError(f"assembled map does not restrict to piece {i}")
    return out


def shift_power_cell(T: Cell, d: int) -> Cell:
    for _ in range(d):
        T = shift_cell(T)
    return T


def _glue_end(child: Cell, depth: int, last: bool) -> ThetaMap:
    """J^depth of the first or last vertex [0] -> [[1]; child]."""
    piece = Cell((child,))
    return shift_power(vertex(piece, 1 if last else 0), depth)


def _assemble(T, pieces, depth):
    if depth == 0:
        vals = [pieces[0].simplicial.values[0]]
        for p in pieces:
            vals.append(p.simplicial.values[1])
        S = pieces[0].tgt
        x = SimplexMap(T.width, S.width, vals)
        return ThetaMap(T, S, x,
                        tuple(p.components[0] for p in pieces))
    x = pieces[0].simplicial
    for p in pieces:
        if p.simplicial != x:
            raise ValueError("pieces of a shifted gluing must share their outer simplicial part")
    a, b = x.values
    S = pieces[0].tgt
    fam = []
    for j in range(a + 1, b + 1):
        sub = [p.components[0][j - a - 1] for p in pieces]
        fam.append(_assemble(T, sub, depth - 1))
    return ThetaMap(shift_power_cell(T, depth), S, x, (tuple(fam),))


# -- text form of maps ------------------------------------------------------

def format_body(f: ThetaMap) -> str:
    fams = " ".join("[" + " ".join(format_body(c) for c in fam) + "]"
                    for fam in f.components)
    return "{f=(" + " ".join(map(str, f.simplicial.values)) + "); c=[" + fams + "]}"


def format_map(f: ThetaMap) -> str:
    return f"{format_cell(f.src)} -> {format_cell(f.tgt)} : {format_body(f)}"
