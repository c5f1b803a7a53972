"""Degree-signed classification, +/- factorization and coface data for Theta.

Positive maps are the monomorphisms, negative maps the epimorphisms.  The
factorization below works on families of maps with a common source: the
simplicial parts are factored through their joint image and each slot's
component family is factored recursively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product

from . import gamma, simplex
from .simplex import SimplexMap
from .theta import (Cell, ThetaMap, compose, enumerate_cells, globe, hom,
                    identity, terminal, cells_of_degree)


class MapClass(Enum):
    IDENTITY = "Identity"
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    MIXED = "Mixed"

    def __str__(self):
        return self.value


@lru_cache(maxsize=None)
def is_mono(alpha: ThetaMap) -> bool:
    """Injectivity of alpha . - on maps out of every globe up to degree(src) + 1.

    Every cell is a colimit of globes, so globes detect monomorphisms;
    globes above the source's height only add degenerate maps.
    """
    S = alpha.src
    if not alpha.simplicial.is_injective():
        return False
    for n in range(S.degree + 2):
        G = globe(n)
        seen = set()
        for b in hom(G, S):
            img = compose(alpha, b)
            if img in seen:
                return False
            seen.add(img)
    return True


@lru_cache(maxsize=None)
def is_epi(alpha: ThetaMap) -> bool:
    """Surjective simplicial part and every single component recursively epi."""
    if not alpha.simplicial.is_surjective():
        return False
    for fam in alpha.components:
        for c in fam:
            if not is_epi(c):
                return False
    return True


def classify(alpha: ThetaMap) -> MapClass:
    if alpha.src is alpha.tgt and alpha is identity(alpha.src):
        return MapClass.IDENTITY
    if is_mono(alpha):
        return MapClass.POSITIVE
    if is_epi(alpha):
        return MapClass.NEGATIVE
    return MapClass.MIXED


def map_degree(alpha: ThetaMap) -> int:
    """lambda(tgt) - lambda(src)"""
    return alpha.tgt.degree - alpha.src.degree


# -- factorization ----------------------------------------------------------

def factor_family(src: Cell, maps):
    """Factor a family (alpha_s : src -> d_s) as an epi src -> P and a jointly mono family.

    Returns (pi, deltas) with alpha_s = deltas[s] . pi.
    """
    maps = tuple(maps)
    return _factor_family(src, maps)


@lru_cache(maxsize=None)
def _factor_family(src, maps):
    m = src.width
    if not maps:
        return terminal(src), ()
    xs = [a.simplicial.values for a in maps]
    # epsilon collapses the steps where every simplicial part is constant
    eps = [0]
    for i in range(1, m + 1):
        moved = any(x[i - 1] != x[i] for x in xs)
        eps.append(eps[-1] + (1 if moved else 0))
    k = eps[-1]
    mus = []
    for x in xs:
        vals = [None] * (k + 1)
        for i in range(m + 1):
            vals[eps[i]] = x[i]
        mus.append(tuple(vals))
    pieces = []           # (slot i of src, child cell of P, pi component, per-map delta families)
    for i in range(1, m + 1):
        if eps[i] == eps[i - 1]:
            continue
        family = []
        owners = []
        for s, a in enumerate(maps):
            for c in a.components[i - 1]:
                family.append(c)
                owners.append(s)
        sub_pi, sub_deltas = _factor_family(src.children[i - 1], tuple(family))
        per_map = [[] for _ in maps]
        for s, d in zip(owners, sub_deltas):
            per_map[s].append(d)
        pieces.append((i, sub_pi, per_map))
    P = Cell(tuple(sub_pi.tgt for _, sub_pi, _ in pieces))
    pi_comps = []
    it = iter(pieces)
    for i in range(1, m + 1):
        if eps[i] == eps[i - 1]:
            pi_comps.append(())
        else:
            pi_comps.append((next(it)[1],))
    pi = ThetaMap(src, P, SimplexMap(m, k, eps), tuple(pi_comps))
    deltas = []
    for s, a in enumerate(maps):
        comps = tuple(tuple(per_map[s]) for _, _, per_map in pieces)
        deltas.append(ThetaMap(P, a.tgt, SimplexMap(k, a.tgt.width, mus[s]), comps))
    return pi, tuple(deltas)


def skeletal_factorize(alpha: ThetaMap):
    """(pi, delta) with alpha = delta . pi, pi negative or identity, delta positive or identity."""
    pi, (delta,) = _factor_family(alpha.src, (alpha,))
    return pi, delta


def factorizations_by_search(alpha: ThetaMap, max_degree=None):
    """Every (pi, delta) through a middle cell with pi epi and delta mono, by enumeration."""
    bound = min(alpha.src.degree, alpha.tgt.degree) if max_degree is None else max_degree
    out = []
    for P in enumerate_cells(bound):
        for d in hom(P, alpha.tgt):
            if not is_mono(d):
                continue
            for p in hom(alpha.src, P):
                if compose(d, p) is alpha and is_epi(p):
                    out.append((p, d))
    return out


# -- cofaces ----------------------------------------------------------------

@lru_cache(maxsize=None)
def boundary_cofaces(T: Cell) -> tuple:
    """All monomorphisms into T from cells of degree lambda(T) - 1."""
    if T.degree == 0:
        return ()
    out = []
    for S in cells_of_degree(T.degree - 1):
        for f in hom(S, T):
            if is_mono(f):
                out.append(f)
    return tuple(out)


def is_coface(f: ThetaMap) -> bool:
    return map_degree(f) == 1 and is_mono(f)


def coface_factor(delta: ThetaMap) -> tuple:
    """Cofaces (c_1, ..., c_r), r = lambda(delta), with delta = c_r . ... . c_1."""
    if not is_mono(delta):
        raise ValueError(f"not a positive map: {delta}")
    chain = []
    cur = delta
    while cur.src is not cur.tgt:
        step = _peel(cur)
        if step is None:
            raise ValueError(f"no coface factorization for {cur}")
        c, rest = step
        chain.append(c)
        cur = rest
    if cur is not identity(cur.src):
        raise ValueError(f"degree-zero positive map is not an identity: {cur}")
    return tuple(reversed(chain))


def _peel(delta):
    """A coface c into delta.tgt and delta' with delta = c . delta'."""
    for c in boundary_cofaces(delta.tgt):
        if c.src.degree < delta.src.degree:
            continue
        for d in hom(delta.src, c.src):
            if compose(c, d) is delta:
                return c, d
    return None


# -- fiber products of positive maps ---------------------------------------

class _Empty:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = object.__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Empty"

    def __bool__(self):
        return False


EMPTY = _Empty()


@dataclass
class ComponentLimit:
    """The limit of the maps B_i -> A_y, C_j -> A_y attached to one slot of the pullback.

    Evaluated levelwise: at a cell R it is the set of tuples
    ((b_i) for i in I, (c_j) for j in J) of maps out of R agreeing over every y.
    """
    left_cells: tuple
    right_cells: tuple
    left_maps: dict      # (i, y) -> ThetaMap B_i -> A_y
    right_maps: dict     # (j, y) -> ThetaMap C_j -> A_y
    I: tuple
    J: tuple
    Y: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    def elements(self, R: Cell) -> tuple:
        found = self._cache.get(R)
        if found is not None:
            return found
        lefts = [hom(R, self.left_cells[k]) for k in range(len(self.I))]
        rights = [hom(R, self.right_cells[k]) for k in range(len(self.J))]
        lpos = {i: k for k, i in enumerate(self.I)}
        left_over = {y: (lpos[i], f) for (i, y), f in self.left_maps.items()}
        out = []
        for bs in product(*lefts):
            images = {y: compose(f, bs[k]) for y, (k, f) in left_over.items()}
            choices = []
            for k, j in enumerate(self.J):
                ok = []
                for c in rights[k]:
                    if all(compose(g, c) is images[y]
                           for (jj, y), g in self.right_maps.items() if jj == j):
                        ok.append(c)
                choices.append(ok)
            for cs in product(*choices):
                out.append((bs, cs))
        out = tuple(out)
        self._cache[R] = out
        return out

    def act(self, element, r: ThetaMap):
        bs, cs = element
        return (tuple(compose(b, r) for b in bs), tuple(compose(c, r) for c in cs))

    def representing(self, max_degree: int):
        """(P, universal element) if this limit is representable among cells of degree <= max_degree."""
        probes = enumerate_cells(max_degree + 1)
        for P in enumerate_cells(max_degree):
            for u in self.elements(P):
                if all(_bijective(self, u, P, R) for R in probes):
                    return P, u
        return None


def _bijective(lim, u, P, R):
    target = lim.elements(R)
    homs = hom(R, P)
    if len(homs) != len(target):
        return False
    imgs = {lim.act(u, r) for r in homs}
    return len(imgs) == len(target) and imgs == set(target)


@dataclass
class CofacePullback:
    left: ThetaMap
    right: ThetaMap
    width: int
    proj_simplicial: tuple      # (pr1, pr2) : [k] -> [n], [k] -> [m]
    slots: tuple                # ComponentLimit per slot 1..k
    cell: Cell = None
    proj_left: ThetaMap = None
    proj_right: ThetaMap = None

    @property
    def representable(self):
        return self.cell is not None

    def pairs(self, R: Cell) -> frozenset:
        """The pullback at R, as pairs (b : R -> B, c : R -> C) with f.b = g.c."""
        pr1, pr2 = self.proj_simplicial
        B, C = self.left.src, self.right.src
        out = set()
        for xi in simplex.hom(R.width, self.width):
            b_s = simplex.compose(pr1, xi)
            c_s = simplex.compose(pr2, xi)
            v = xi.values
            per_slot = []
            for i in range(1, R.width + 1):
                per_slot.append([self.slots[t - 1].elements(R.children[i - 1])
                                 for t in range(v[i - 1] + 1, v[i] + 1)])
            for choice in product(*[list(product(*s)) for s in per_slot]):
                bcomps, ccomps = [], []
                for fam in choice:
                    bl, cl = [], []
                    for bs, cs in fam:
                        bl.extend(bs)
                        cl.extend(cs)
                    bcomps.append(tuple(bl))
                    ccomps.append(tuple(cl))
                out.add((ThetaMap(R, B, b_s, bcomps), ThetaMap(R, C, c_s, ccomps)))
        return frozenset(out)


def coface_pullback(f: ThetaMap, g: ThetaMap):
    """Fibre product of positive maps f : B -> A, g : C -> A.

    Empty when the simplicial images are disjoint.  Otherwise the width is the
    intersection of the images, and each slot carries the limit of the
    component maps grouped by the Gamma pullback.  When every slot limit is
    representable the result also carries ``cell`` and the two projections.
    """
    if f.tgt is not g.tgt:
        raise ValueError("pullback legs must share a target")
    if not (is_mono(f) and is_mono(g)):
        raise ValueError("pullback legs must be positive")
    B, C = f.src, g.src
    fv, gv = f.simplicial.values, g.simplicial.values
    common = sorted(set(fv) & set(gv))
    if not common:
        return EMPTY
    k = len(common) - 1
    pr1 = SimplexMap(k, B.width, [fv.index(p) for p in common])
    pr2 = SimplexMap(k, C.width, [gv.index(p) for p in common])
    Fl, Fr = gamma.from_simplex(pr1), gamma.from_simplex(pr2)
    gp = gamma.pullback(gamma.from_simplex(f.simplicial), gamma.from_simplex(g.simplicial))
    slot_pairs = [(Fl(t), Fr(t)) for t in range(1, k + 1)]
    if set(slot_pairs) != set(gp.elements) or len(slot_pairs) != gp.apex:
        raise AssertionError("simplicial and Gamma pullbacks disagree")
    slots = []
    for I, J in slot_pairs:
        I, J = tuple(sorted(I)), tuple(sorted(J))
        Y = []
        lmaps, rmaps = {}, {}
        for i in I:
            for y in range(fv[i - 1] + 1, fv[i] + 1):
                lmaps[(i, y)] = f.component(i, y)
                Y.append(y)
        for j in J:
            for y in range(gv[j - 1] + 1, gv[j] + 1):
                rmaps[(j, y)] = g.component(j, y)
        slots.append(ComponentLimit(
            tuple(B.children[i - 1] for i in I), tuple(C.children[j - 1] for j in J),
            lmaps, rmaps, I, J, tuple(Y)))
    out = CofacePullback(f, g, k, (pr1, pr2), tuple(slots))
    reps = []
    for lim in slots:
        bound = max([c.degree for c in lim.left_cells + lim.right_cells], default=0)
        rep = lim.representing(bound)
        if rep is None:
            return out
        reps.append(rep)
    P = Cell(tuple(p for p, _ in reps))
    lcomps = tuple(u[0] for _, u in reps)
    rcomps = tuple(u[1] for _, u in reps)
    out.cell = P
    out.proj_left = ThetaMap(P, B, pr1, lcomps)
    out.proj_right = ThetaMap(P, C, pr2, rcomps)
    return out


def brute_force_pullback(f: ThetaMap, g: ThetaMap, R: Cell) -> frozenset:
    """{(b, c) : f.b = g.c} at R, straight from hom enumeration."""
    rights = {}
    for c in hom(R, g.src):
        rights.setdefault(compose(g, c), []).append(c)
    out = set()
    for b in hom(R, f.src):
        for c in rights.get(compose(f, b), ()):
            out.add((b, c))
    return frozenset(out)
