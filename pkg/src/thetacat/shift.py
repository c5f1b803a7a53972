"""The shift J, the collapses K_p with their maps C, D, F, and Eckmann-Hilton degeneracies.

K_p clamps every entry of a cell's globular sum at p.  On trees this is the
recursion ``K_p([[k]; T_i]) = [[k]; K_{p-1}(T_i)]`` with ``K_0(T) = [0]``,
and C, D, F follow the same recursion, bottoming out in the unique map to
[0], the first vertex and the last vertex respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import simplex
from .simplex import SimplexMap
from .theta import (Cell, ThetaMap, POINT, assemble_glued_map, cell_to_globular_sum,
                    compose, globular_sum_to_cell, identity, shift_cell, shift_map,
                    terminal, vertex)

__all__ = [
    "shift_cell", "shift_map", "collapse", "collapse_maps", "CollapseData",
    "vertex_in_minus", "vertex_in_plus", "constant_to", "long_edge",
    "eh_aux_F", "eh_aux_D", "eckmann_hilton", "eckmann_hilton_pieces",
]


def collapse(p: int, T: Cell) -> Cell:
    """K_p(T): clamp the globular sum at p and drop the resulting trivial gluings."""
    if p < 1:
        raise ValueError("K_0 is not a cell; use the vertex operations")
    return globular_sum_to_cell(tuple(min(e, p) for e in cell_to_globular_sum(T)))


@lru_cache(maxsize=None)
def _collapse_rec(p, T):
    if p == 0:
        return POINT
    return Cell(tuple(_collapse_rec(p - 1, c) for c in T.children))


@dataclass(frozen=True)
class CollapseData:
    p: int
    cell: Cell
    c_map: ThetaMap      # T -> K_p(T)
    d_map: ThetaMap      # K_p(T) -> T
    f_map: ThetaMap      # K_p(T) -> T


@lru_cache(maxsize=None)
def _c(p, T):
    if p == 0:
        return terminal(T)
    K = _collapse_rec(p, T)
    return ThetaMap(T, K, simplex.identity(T.width),
                    tuple((_c(p - 1, c),) for c in T.children))


@lru_cache(maxsize=None)
def _section(p, T, last):
    if p == 0:
        return vertex(T, T.width if last else 0)
    K = _collapse_rec(p, T)
    return ThetaMap(K, T, simplex.identity(T.width),
                    tuple((_section(p - 1, c, last),) for c in T.children))


def collapse_maps(p: int, T: Cell) -> CollapseData:
    """C : T -> K_p(T) and its two sections D (sources) and F (targets)."""
    if p < 1:
        raise ValueError("p must be at least 1")
    K = collapse(p, T)
    if K is not _collapse_rec(p, T):
        raise AssertionError(f"clamped globular sum {K} disagrees with tree recursion")
    return CollapseData(p, K, _c(p, T), _section(p, T, False), _section(p, T, True))


# -- vertices and constants -------------------------------------------------

def vertex_in_minus(T: Cell) -> ThetaMap:
    """The initial vertex [0] -> T."""
    return vertex(T, 0)


def vertex_in_plus(T: Cell) -> ThetaMap:
    """The final vertex [0] -> T."""
    return vertex(T, T.width)


def constant_to(S: Cell, T: Cell, which: str) -> ThetaMap:
    """S -> [0] -> T through the first ('minus') or last ('plus') vertex of T."""
    if which not in ("minus", "plus"):
        raise ValueError("which must be 'minus' or 'plus'")
    v = vertex_in_minus(T) if which == "minus" else vertex_in_plus(T)
    return compose(v, terminal(S))


def long_edge(t: int) -> ThetaMap:
    """(d^1)^(t-1) : [[1];[0]] -> [[t];[0]...[0]], the edge from vertex 0 to vertex t."""
    if t < 1:
        raise ValueError("need t >= 1")
    tgt = Cell((POINT,) * t)
    return ThetaMap(Cell((POINT,)), tgt, SimplexMap(1, t, (0, t)),
                    ((identity(POINT),) * t,))


def _eh_aux(S, T, last):
    src = shift_cell(S)
    t = T.width
    if t == 0:
        return terminal(src)
    k1 = collapse_maps(1, shift_cell(S)).c_map
    sec = _section(1, T, last)
    return compose(sec, compose(long_edge(t), k1))


def eh_aux_F(S: Cell, T: Cell) -> ThetaMap:
    """S+1 -> K_1(S+1) -> K_1(T) -> T via the long edge and target sections."""
    return _eh_aux(S, T, True)


def eh_aux_D(S: Cell, T: Cell) -> ThetaMap:
    """S+1 -> K_1(S+1) -> K_1(T) -> T via the long edge and source sections."""
    return _eh_aux(S, T, False)


# -- Eckmann-Hilton degeneracies --------------------------------------------

def eckmann_hilton_pieces(T: Cell, verbatim: bool = False) -> list:
    """The maps T_i + 2 -> T whose gluing is E_T.

    Both variants run along the long edge of T.  The components into T_j,
    j != i, are constant at the last vertex (j < i) or first vertex (j > i)
    of T_j.  With ``verbatim`` they are the long-edge maps eh_aux_F / eh_aux_D
    instead; those fail to glue once two children are present and one is not
    a point.
    """
    k = T.width
    pieces = []
    for i in range(1, k + 1):
        Ti = T.children[i - 1]
        src = shift_cell(Ti)
        comps = []
        for j in range(1, k + 1):
            Tj = T.children[j - 1]
            if j == i:
                comps.append(eckmann_hilton(Ti))
            elif verbatim:
                comps.append(eh_aux_F(Ti, Tj) if j < i else eh_aux_D(Ti, Tj))
            else:
                comps.append(constant_to(src, Tj, "plus" if j < i else "minus"))
        pieces.append(ThetaMap(shift_cell(src), T, SimplexMap(1, k, (0, k)), (tuple(comps),)))
    return pieces


@lru_cache(maxsize=None)
def eckmann_hilton(T: Cell) -> ThetaMap:
    """E_T : T+1 -> T, glued from the pieces above; E_[0] is the unique map."""
    if T.width == 0:
        return terminal(shift_cell(T))
    return assemble_glued_map(T, eckmann_hilton_pieces(T), depth=1)


def eckmann_hilton_verbatim(T: Cell) -> ThetaMap:
    """Glue the long-edge pieces; raises ValueError where they disagree."""
    if T.width == 0:
        return terminal(shift_cell(T))
    return assemble_glued_map(T, eckmann_hilton_pieces(T, verbatim=True), depth=1)
