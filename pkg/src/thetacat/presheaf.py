"""Truncated presheaves of (pointed) finite sets on Theta.

A presheaf lives on a ``Site``: a finite full subcategory of Theta, either
all cells of degree <= N or the simplicial cells ``[[n]; [0]...[0]]``.
Elements of X(T) are the integers ``0..size-1``; for pointed presheaves
element 0 is the basepoint.  ``X.act(alpha)`` is a tuple sending each
element of X(alpha.tgt) to an element of X(alpha.src).
"""

from __future__ import annotations

from functools import lru_cache

from . import theta as th
from .skeletal import boundary_cofaces, coface_pullback, EMPTY, is_epi
from .theta import Cell, ThetaMap, compose, hom, hom_index, identity


# -- sites ------------------------------------------------------------------

class Site:
    """A finite full subcategory of Theta, closed under epi-mono images."""

    def __init__(self, kind: str, bound: int, cells):
        self.kind = kind
        self.bound = bound
        self.cells = tuple(sorted(cells, key=th.sort_key))
        self._members = frozenset(self.cells)

    def __repr__(self):
        return f"Site({self.kind}, bound={self.bound})"

    def __contains__(self, T):
        return T in self._members

    def restrict(self, bound: int) -> "Site":
        return site(self.kind, bound)

    def maps(self):
        for S in self.cells:
            for T in self.cells:
                yield from hom(S, T)

    def cofaces_into(self, T: Cell) -> tuple:
        return tuple(c for c in boundary_cofaces(T) if c.src in self)

    def elementary_epis_from(self, T: Cell) -> tuple:
        return _elementary_epis(T)

    def epis_from(self, T: Cell) -> tuple:
        return _epis_from(T)

    def generators(self):
        """Cofaces and degree-one epis between cells of the site."""
        out = []
        for T in self.cells:
            out.extend(self.cofaces_into(T))
            out.extend(e for e in self.elementary_epis_from(T) if e.tgt in self)
        return out


@lru_cache(maxsize=None)
def site(kind: str, bound: int) -> Site:
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if kind == "theta":
        return Site(kind, bound, th.enumerate_cells(bound))
    if kind == "simplicial":
        return Site(kind, bound, [simplex_cell(n) for n in range(bound + 1)])
    raise ValueError(f"unknown site {kind!r}")


def theta_site(bound: int) -> Site:
    return site("theta", bound)


def simplicial_site(bound: int) -> Site:
    return site("simplicial", bound)


@lru_cache(maxsize=None)
def simplex_cell(n: int) -> Cell:
    """[n] as the cell [[n]; [0] ... [0]]."""
    return Cell((th.POINT,) * n)


def simplex_width(T: Cell) -> int:
    return T.width


def simplex_theta_map(phi) -> ThetaMap:
    """A monotone map [m] -> [n] as a map between the cells [m] and [n]."""
    v = phi.values
    comps = tuple((identity(th.POINT),) * (v[i] - v[i - 1]) for i in range(1, phi.src + 1))
    return ThetaMap(simplex_cell(phi.src), simplex_cell(phi.tgt), phi, comps)


@lru_cache(maxsize=None)
def _epis_from(T: Cell) -> tuple:
    """Epimorphisms out of T, smallest targets first."""
    out = []
    for U in th.enumerate_cells(T.degree):
        for p in hom(T, U):
            if is_epi(p):
                out.append(p)
    out.sort(key=lambda p: p.tgt.degree)
    return tuple(out)


@lru_cache(maxsize=None)
def _elementary_epis(T: Cell) -> tuple:
    return tuple(p for p in _epis_from(T) if p.tgt.degree == T.degree - 1)


# -- presheaves -------------------------------------------------------------

class Presheaf:
    def __init__(self, site_: Site, sizes: dict, action, pointed: bool = True,
                 skeletal_complete: bool = False, labels=None, name: str = ""):
        self.site = site_
        self.sizes = {T: sizes[T] for T in site_.cells}
        self._action = action
        self._cache: dict = {}
        self.pointed = pointed
        self.skeletal_complete = skeletal_complete
        self.labels = labels
        self.name = name
        if pointed and any(k < 1 for k in self.sizes.values()):
            raise ValueError("a pointed presheaf needs a basepoint in every cell")

    @property
    def bound(self):
        return self.site.bound

    def __repr__(self):
        return f"Presheaf({self.name or '?'}, bound={self.bound})"

    def size(self, T: Cell) -> int:
        return self.sizes[T]

    def act(self, alpha: ThetaMap) -> tuple:
        found = self._cache.get(alpha)
        if found is None:
            if alpha.src not in self.site or alpha.tgt not in self.site:
                raise KeyError(f"{alpha} is outside the truncation")
            found = tuple(self._action(alpha))
            if len(found) != self.sizes[alpha.tgt]:
                raise AssertionError(f"action of {alpha} has wrong length")
            self._cache[alpha] = found
        return found

    def label(self, T: Cell, x: int):
        return None if self.labels is None else self.labels(T, x)

    def total(self) -> int:
        return sum(self.sizes.values())

    def is_basepoint_only(self) -> bool:
        return all(k == (1 if self.pointed else 0) for k in self.sizes.values())


class PresheafMap:
    def __init__(self, src: Presheaf, tgt: Presheaf, comps: dict):
        self.src = src
        self.tgt = tgt
        self.comps = {T: tuple(comps[T]) for T in src.site.cells}

    def __call__(self, T: Cell, x: int) -> int:
        return self.comps[T][x]

    def __eq__(self, other):
        return (isinstance(other, PresheafMap) and self.src is other.src
                and self.tgt is other.tgt and self.comps == other.comps)

    def __hash__(self):
        return hash(tuple(self.comps[T] for T in self.src.site.cells))

    def __repr__(self):
        return f"PresheafMap({self.src!r} -> {self.tgt!r})"


# -- checks -----------------------------------------------------------------

def check_presheaf(X: Presheaf, exhaustive: bool = False) -> None:
    """Raise AssertionError unless X is a functor (on generators, or on all pairs)."""
    st = X.site
    for T in st.cells:
        if X.act(identity(T)) != tuple(range(X.size(T))):
            raise AssertionError(f"identity acts non-trivially at {T}")
    for a in st.maps():
        acted = X.act(a)
        if X.pointed and acted[0] != 0:
            raise AssertionError(f"{a} moves the basepoint")
        n = X.size(a.src)
        if any(not 0 <= v < n for v in acted):
            raise AssertionError(f"{a} leaves the carrier")
    betas = list(st.maps()) if exhaustive else st.generators()
    for b in betas:
        ab = X.act(b)
        for R in st.cells:
            for a in hom(R, b.src):
                aa = X.act(a)
                if X.act(compose(b, a)) != tuple(aa[v] for v in ab):
                    raise AssertionError(f"composition law fails for {b} after {a}")


def is_natural(phi: PresheafMap) -> bool:
    X, Y = phi.src, phi.tgt
    for a in X.site.maps():
        ax, ay = X.act(a), Y.act(a)
        cs, ct = phi.comps[a.src], phi.comps[a.tgt]
        if any(cs[ax[x]] != ay[ct[x]] for x in range(X.size(a.tgt))):
            return False
    if X.pointed and Y.pointed and any(phi.comps[T][0] != 0 for T in X.site.cells):
        return False
    return True


def is_mono(phi: PresheafMap) -> bool:
    return all(len(set(c)) == len(c) for c in phi.comps.values())


def is_iso(phi: PresheafMap) -> bool:
    return is_mono(phi) and all(len(phi.comps[T]) == phi.tgt.size(T) for T in phi.src.site.cells)


def identity_map(X: Presheaf) -> PresheafMap:
    return PresheafMap(X, X, {T: range(X.size(T)) for T in X.site.cells})


def compose_maps(g: PresheafMap, f: PresheafMap) -> PresheafMap:
    return PresheafMap(f.src, g.tgt,
                       {T: [g.comps[T][v] for v in f.comps[T]] for T in f.src.site.cells})


# -- basic presheaves -------------------------------------------------------

def representable(T: Cell, N: int, pointed: bool = True, kind: str = "theta") -> Presheaf:
    """Theta^T (or Theta^T_+) truncated at degree N; one shared object per argument tuple."""
    return _representable(T, N, bool(pointed), kind)


@lru_cache(maxsize=None)
def _representable(T, N, pointed, kind):
    st = site(kind, N)
    off = 1 if pointed else 0
    sizes = {S: len(hom(S, T)) + off for S in st.cells}

    def action(a):
        idx = hom_index(a.src, T)
        out = [0] * off
        out.extend(idx[compose(e, a)] + off for e in hom(a.tgt, T))
        return out

    def labels(S, x):
        if pointed and x == 0:
            return "*"
        return hom(S, T)[x - off]

    return Presheaf(st, sizes, action, pointed, N >= T.degree, labels, f"Theta^{T}")


def point(N: int, kind: str = "theta") -> Presheaf:
    """The basepoint-only presheaf."""
    st = site(kind, N)
    return Presheaf(st, {T: 1 for T in st.cells}, lambda a: (0,), True, True,
                    lambda S, x: "*", "*")


def element_index(X: Presheaf, T: Cell, label) -> int:
    """Position of a labelled element (e.g. a ThetaMap in a representable)."""
    for x in range(X.size(T)):
        if X.label(T, x) == label:
            return x
    raise KeyError(label)


def representable_index(T: Cell, e: ThetaMap, pointed: bool = True) -> int:
    return hom_index(e.src, T)[e] + (1 if pointed else 0)


# -- subobjects and quotients -----------------------------------------------

def subpresheaf(X: Presheaf, subsets: dict, name: str = "", check: bool = False):
    """The subpresheaf on the given elements; returns (A, inclusion).

    With ``check`` every action is computed up front to confirm closure.
    """
    keep = {T: sorted(set(subsets.get(T, ())) | ({0} if X.pointed else set()))
            for T in X.site.cells}
    pos = {T: {x: k for k, x in enumerate(keep[T])} for T in X.site.cells}

    def action(a):
        acted = X.act(a)
        try:
            return [pos[a.src][acted[x]] for x in keep[a.tgt]]
        except KeyError:
            raise ValueError(f"subsets are not closed under {a}") from None

    A = Presheaf(X.site, {T: len(keep[T]) for T in X.site.cells}, action, X.pointed,
                 False, (lambda T, k: X.label(T, keep[T][k])), name)
    if check:
        for a in X.site.maps():
            A.act(a)
    return A, PresheafMap(A, X, keep)


def image(phi: PresheafMap, name: str = ""):
    return subpresheaf(phi.tgt, {T: set(phi.comps[T]) for T in phi.src.site.cells}, name)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def quotient_by_relation(Y: Presheaf, relation: dict, name: str = "", complete=None):
    """Levelwise quotient of Y by the relation generated by relation[T] (pairs).

    The relation must already be compatible with the action (as for a
    coequalizer of two presheaf maps).  Classes are numbered by their
    smallest member, so the basepoint class stays 0.  Returns (Q, q).
    """
    classes, reps = {}, {}
    for T in Y.site.cells:
        uf = _UnionFind(Y.size(T))
        for a, b in relation.get(T, ()):
            uf.union(a, b)
        roots = [uf.find(x) for x in range(Y.size(T))]
        order = {}
        for x in range(Y.size(T)):
            order.setdefault(roots[x], len(order))
        classes[T] = [order[r] for r in roots]
        reps[T] = sorted(order, key=order.get)

    def action(a):
        acted = Y.act(a)
        cls = classes[a.src]
        return [cls[acted[r]] for r in reps[a.tgt]]

    Q = Presheaf(Y.site, {T: len(reps[T]) for T in Y.site.cells}, action, Y.pointed,
                 Y.skeletal_complete if complete is None else complete,
                 (lambda T, k: Y.label(T, reps[T][k])), name)
    return Q, PresheafMap(Y, Q, classes)


def coequalizer(f: PresheafMap, g: PresheafMap, name: str = ""):
    if f.src is not g.src or f.tgt is not g.tgt:
        raise ValueError("coequalizer needs parallel maps")
    rel = {T: list(zip(f.comps[T], g.comps[T])) for T in f.src.site.cells}
    return quotient_by_relation(f.tgt, rel, name)


def quotient(X: Presheaf, sub, name: str = ""):
    """Collapse a subobject (an inclusion PresheafMap into X) to the basepoint."""
    if not X.pointed:
        raise ValueError("quotient by a subobject needs a pointed presheaf")
    if isinstance(sub, PresheafMap):
        if sub.tgt is not X or not is_mono(sub):
            raise ValueError("not a subobject of the given presheaf")
        subsets = {T: set(sub.comps[T]) for T in X.site.cells}
    else:
        subsets = sub
    for a in X.site.generators():
        acted = X.act(a)
        if any(acted[x] not in subsets[a.src] and acted[x] != 0 for x in subsets[a.tgt]):
            raise ValueError("not a subobject: not closed under the action")
    rel = {T: [(0, x) for x in subsets[T]] for T in X.site.cells}
    return quotient_by_relation(X, rel, name)


# -- coproducts, pushouts, products -----------------------------------------

def wedge(*Xs: Presheaf, name: str = ""):
    """Pointed coproduct; returns (W, injections)."""
    st = Xs[0].site
    offsets = {}
    for T in st.cells:
        off, acc = [], 1
        for X in Xs:
            off.append(acc)
            acc += X.size(T) - 1
        offsets[T] = (off, acc)

    def inj(k, T, x):
        return 0 if x == 0 else offsets[T][0][k] + x - 1

    def action(a):
        out = [0]
        for k, X in enumerate(Xs):
            acted = X.act(a)
            out.extend(inj(k, a.src, acted[x]) for x in range(1, X.size(a.tgt)))
        return out

    W = Presheaf(st, {T: offsets[T][1] for T in st.cells}, action, True,
                 all(X.skeletal_complete for X in Xs), None, name or "wedge")
    injections = [PresheafMap(X, W, {T: [inj(k, T, x) for x in range(X.size(T))]
                                     for T in st.cells}) for k, X in enumerate(Xs)]
    return W, injections


def coproduct(*Xs: Presheaf, name: str = ""):
    """Unpointed disjoint union; returns (U, injections)."""
    if any(X.pointed for X in Xs):
        return wedge(*Xs, name=name)
    st = Xs[0].site
    offsets = {T: [sum(X.size(T) for X in Xs[:k]) for k in range(len(Xs) + 1)]
               for T in st.cells}

    def action(a):
        out = []
        for k, X in enumerate(Xs):
            out.extend(offsets[a.src][k] + v for v in X.act(a))
        return out

    U = Presheaf(st, {T: offsets[T][-1] for T in st.cells}, action, False,
                 all(X.skeletal_complete for X in Xs), None, name or "coproduct")
    injections = [PresheafMap(X, U, {T: [offsets[T][k] + x for x in range(X.size(T))]
                                     for T in st.cells}) for k, X in enumerate(Xs)]
    return U, injections


def pushout(f: PresheafMap, g: PresheafMap, name: str = ""):
    """Pushout of X <-f- A -g-> Y; returns (P, map from X, map from Y)."""
    W, (iX, iY) = (wedge if f.src.pointed else coproduct)(f.tgt, g.tgt)
    a = compose_maps(iX, f)
    b = compose_maps(iY, g)
    P, q = coequalizer(a, b, name or "pushout")
    return P, compose_maps(q, iX), compose_maps(q, iY)


def attach_cell(A: Presheaf, T: Cell, phi: PresheafMap, name: str = ""):
    """Glue Theta_+^T onto A along phi : boundary(T) -> A; returns (P, A -> P)."""
    B, inc = boundary(T, A.bound, True, A.site.kind)
    if phi.src is not B or phi.tgt is not A:
        raise ValueError("attaching map must run from the boundary of T into A")
    P, from_T, from_A = pushout(inc, phi, name or f"{A.name} + cell {T}")
    P.skeletal_complete = A.skeletal_complete and A.bound >= T.degree
    return P, from_A


@lru_cache(maxsize=None)
def product(X: Presheaf, Y: Presheaf, name: str = ""):
    """Cellwise product; the pair (x, y) has index x * |Y(T)| + y, so (0, 0) is 0."""
    st = X.site

    def action(a):
        ax, ay = X.act(a), Y.act(a)
        m = Y.size(a.src)
        return [ax[x] * m + ay[y] for x in range(X.size(a.tgt)) for y in range(Y.size(a.tgt))]

    P = Presheaf(st, {T: X.size(T) * Y.size(T) for T in st.cells}, action,
                 X.pointed and Y.pointed, False,
                 lambda T, k: (X.label(T, k // Y.size(T)), Y.label(T, k % Y.size(T))),
                 name or f"({X.name} x {Y.name})")
    pr1 = PresheafMap(P, X, {T: [k // Y.size(T) for k in range(P.size(T))] for T in st.cells})
    pr2 = PresheafMap(P, Y, {T: [k % Y.size(T) for k in range(P.size(T))] for T in st.cells})
    return P, pr1, pr2


@lru_cache(maxsize=None)
def smash(X: Presheaf, Y: Presheaf, name: str = ""):
    """X ^ Y = (X x Y) / (X v Y); returns (Z, quotient map from the product)."""
    P, _, _ = product(X, Y)
    wedge_part = {T: {k for k in range(P.size(T))
                      if k // Y.size(T) == 0 or k % Y.size(T) == 0} for T in X.site.cells}
    Z, q = quotient(P, wedge_part, name or f"({X.name} ^ {Y.name})")
    Z.product = P
    return Z, q


def pullback(f: PresheafMap, g: PresheafMap, name: str = ""):
    """Levelwise fibre product of X -f-> Z <-g- Y; returns (P, p1, p2)."""
    X, Y = f.src, g.src
    st = X.site
    elems = {}
    for T in st.cells:
        by = {}
        for y in range(Y.size(T)):
            by.setdefault(g.comps[T][y], []).append(y)
        elems[T] = [(x, y) for x in range(X.size(T)) for y in by.get(f.comps[T][x], ())]
    pos = {T: {p: k for k, p in enumerate(elems[T])} for T in st.cells}

    def action(a):
        ax, ay = X.act(a), Y.act(a)
        return [pos[a.src][(ax[x], ay[y])] for x, y in elems[a.tgt]]

    P = Presheaf(st, {T: len(elems[T]) for T in st.cells}, action,
                 X.pointed and Y.pointed, False, lambda T, k: elems[T][k], name or "pullback")
    p1 = PresheafMap(P, X, {T: [x for x, _ in elems[T]] for T in st.cells})
    p2 = PresheafMap(P, Y, {T: [y for _, y in elems[T]] for T in st.cells})
    return P, p1, p2


def representable_map(alpha: ThetaMap, N: int, pointed: bool = True, kind: str = "theta"):
    """Theta^S -> Theta^T, postcomposition with alpha."""
    X = representable(alpha.src, N, pointed, kind)
    Y = representable(alpha.tgt, N, pointed, kind)
    return _representable_map(alpha, X, Y, pointed)


def _representable_map(alpha, X, Y, pointed=True):
    off = 1 if pointed else 0
    comps = {}
    for R in X.site.cells:
        idx = hom_index(R, alpha.tgt)
        comps[R] = [0] * off + [idx[compose(alpha, e)] + off for e in hom(R, alpha.src)]
    return PresheafMap(X, Y, comps)


# -- boundaries ---------------------------------------------------------------

def boundary(T: Cell, N: int, pointed: bool = True, kind: str = "theta"):
    """The subpresheaf of maps into T that are not epimorphisms; returns (B, inclusion).

    A map R -> T lies in the boundary exactly when the positive half of its
    factorization is a proper face.
    """
    return _boundary(T, N, bool(pointed), kind)


@lru_cache(maxsize=None)
def _boundary(T, N, pointed, kind):
    X = representable(T, N, pointed, kind)
    off = 1 if pointed else 0
    subsets = {R: {k + off for k, e in enumerate(hom(R, T)) if not is_epi(e)}
               for R in X.site.cells}
    B, inc = subpresheaf(X, subsets, f"boundary({T})")
    B.skeletal_complete = N >= T.degree - 1
    return B, inc


def boundary_by_images(T: Cell, N: int, pointed: bool = True, kind: str = "theta") -> dict:
    """Union over cofaces c of the images c . - , as index sets of the representable."""
    st = site(kind, N)
    off = 1 if pointed else 0
    out = {}
    for R in st.cells:
        idx = hom_index(R, T)
        acc = set()
        for c in st.cofaces_into(T):
            acc.update(idx[compose(c, e)] + off for e in hom(R, c.src))
        out[R] = acc
    return out


def boundary_by_coequalizer(T: Cell, N: int, pointed: bool = True, kind: str = "theta"):
    """Coequalizer of the pairwise coface pullbacks into the coproduct of coface sources.

    Returns (Q, m) with m : Q -> representable(T) induced by the cofaces.
    """
    st = site(kind, N)
    cof = st.cofaces_into(T)
    off = 1 if pointed else 0
    srcs = [representable(c.src, N, pointed, kind) for c in cof]
    target = representable(T, N, pointed, kind)
    if not cof:
        U = point(N, kind) if pointed else Presheaf(st, {R: 0 for R in st.cells},
                                                    lambda a: (), False, True)
        return U, PresheafMap(U, target, {R: [0] * U.size(R) for R in st.cells})
    U, inj = (wedge if pointed else coproduct)(*srcs)
    rel = {}
    for a, ca in enumerate(cof):
        for b, cb in enumerate(cof):
            pb = coface_pullback(ca, cb)
            if pb is EMPTY:
                continue
            for R in st.cells:
                ia, ib = hom_index(R, ca.src), hom_index(R, cb.src)
                for x, y in pb.pairs(R):
                    rel.setdefault(R, []).append(
                        (inj[a].comps[R][ia[x] + off], inj[b].comps[R][ib[y] + off]))
    Q, q = quotient_by_relation(U, rel, f"coeq-boundary({T})")
    comps = {}
    for R in st.cells:
        idx = hom_index(R, T)
        vals = [0] * Q.size(R)
        seen = [False] * Q.size(R)
        for a, c in enumerate(cof):
            ia = hom(R, c.src)
            for k, e in enumerate(ia):
                cls = q.comps[R][inj[a].comps[R][k + off]]
                v = idx[compose(c, e)] + off
                if seen[cls] and vals[cls] != v:
                    raise AssertionError("coequalizer does not map into the cell")
                vals[cls], seen[cls] = v, True
        comps[R] = vals
    return Q, PresheafMap(Q, target, comps)


@lru_cache(maxsize=None)
def sphere(T: Cell, N: int, name: str = "") -> Presheaf:
    """Theta_+^T / boundary(T); the quotient map is kept as ``quotient_map``."""
    X = representable(T, N, True)
    _, inc = boundary(T, N, True)
    S, q = quotient(X, inc, name or f"S{th.format_cell(T)}")
    S.skeletal_complete = X.skeletal_complete
    S.quotient_map = q
    return S


def circle(N: int) -> Presheaf:
    """S^1 = Theta_+^1 / boundary."""
    return sphere(th.globe(1), N, "S1")


# -- Eilenberg-Zilber decomposition ----------------------------------------

class _EZ:
    """Nondegenerate parts of the elements of a presheaf."""

    def __init__(self, X: Presheaf):
        self.X = X
        self._cache = {}

    def decompose(self, T: Cell, x: int):
        """(pi, y) with x = pi^* y, pi an epimorphism and y nondegenerate."""
        key = (T, x)
        found = self._cache.get(key)
        if found is not None:
            return found
        X = self.X
        out = None
        for p in _epis_from(T):
            if p.tgt not in X.site:
                continue
            sec = _a_section(p)
            y = X.act(sec)[x]
            if X.act(p)[y] == x:
                out = (p, y)
                break
        self._cache[key] = out
        return out

    def nondegenerate(self, T: Cell) -> list:
        idT = identity(T)
        return [x for x in range(self.X.size(T)) if self.decompose(T, x)[0] is idT]


@lru_cache(maxsize=None)
def _a_section(p: ThetaMap) -> ThetaMap:
    for s in hom(p.tgt, p.src):
        if compose(p, s) is identity(p.tgt):
            return s
    raise AssertionError(f"epimorphism {p} has no section")


@lru_cache(maxsize=None)
def _ez_for(X):
    return _EZ(X)


def nondegenerate(X: Presheaf, T: Cell) -> list:
    return _ez_for(X).nondegenerate(T)


def ez_decompose(X: Presheaf, T: Cell, x: int):
    return _ez_for(X).decompose(T, x)


# -- suspensions by left Kan extension --------------------------------------

class KanSuspension(Presheaf):
    """Colimit over the elements of X of shifted representables modulo a collapsed part.

    Elements at R are classes of (T, y, e) with y a nondegenerate element of
    X(T) and e : R -> lift(T); relations come from cofaces of X's cells.
    """

    def __init__(self, X: Presheaf, out_site: Site, lift_cell, lift_map, collapsed, name):
        if not X.pointed:
            raise ValueError("suspension needs a pointed presheaf")
        if not X.skeletal_complete:
            raise ValueError("suspension needs a skeletally complete presheaf")
        self.source = X
        self.lift_cell, self.lift_map, self.collapsed = lift_cell, lift_map, collapsed
        self.ez = _ez_for(X)
        self.nd = {T: [y for y in self.ez.nondegenerate(T) if y != 0] for T in X.site.cells}
        self._index, self._class, self._reps = {}, {}, {}
        for R in out_site.cells:
            self._build(R)
        sizes = {R: len(self._reps[R]) for R in out_site.cells}
        super().__init__(out_site, sizes, self._act_fn, True, True,
                         lambda R, k: self._reps[R][k], name)

    def _build(self, R):
        X = self.source
        index, gens = {}, []
        for T in X.site.cells:
            if not self.nd[T]:
                continue
            for e in hom(R, self.lift_cell(T)):
                if self.collapsed(e, T):
                    continue
                for y in self.nd[T]:
                    index[(T, y, e)] = len(gens)
                    gens.append((T, y, e))
        base = len(gens)
        uf = _UnionFind(base + 1)
        self._index[R] = index
        for T in X.site.cells:
            if not self.nd[T]:
                continue
            for d in X.site.cofaces_into(T):
                S = d.src
                Jd = self.lift_map(d)
                ad = X.act(d)
                for e in hom(R, self.lift_cell(S)):
                    if self.collapsed(e, S):
                        continue
                    le = compose(Jd, e)
                    for y in self.nd[T]:
                        a = index.get((T, y, le), base)
                        b = self._canon_gen(R, S, ad[y], e, base)
                        uf.union(a, b)
        # basepoint class first, then classes by smallest generator
        order = {uf.find(base): 0}
        reps = ["*"]
        cls = [0] * (base + 1)
        for g in range(base):
            r = uf.find(g)
            if r not in order:
                order[r] = len(order)
                reps.append(gens[g])
            cls[g] = order[r]
        cls[base] = 0
        self._class[R] = cls
        self._reps[R] = reps

    def _canon_gen(self, R, S, x, e, base):
        if x == 0:
            return base
        p, z = self.ez.decompose(S, x)
        if z == 0:
            return base
        e2 = compose(self.lift_map(p), e) if p is not identity(S) else e
        if self.collapsed(e2, p.tgt):
            return base
        return self._index[R][(p.tgt, z, e2)]

    def element(self, T: Cell, x: int, e: ThetaMap) -> int:
        """The class of (x in X(T), e : R -> lift(T)) in this presheaf at R = e.src."""
        R = e.src
        base = len(self._class[R]) - 1
        return self._class[R][self._canon_gen(R, T, x, e, base)]

    def _act_fn(self, a):
        out = [0]
        for rep in self._reps[a.tgt][1:]:
            T, y, e = rep
            out.append(self.element(T, y, compose(e, a)))
        return out


def _sigma_J_collapsed(e, T):
    v = e.simplicial.values
    return v[0] == v[-1]


def sigma_J(X: Presheaf, N_out: int = None) -> KanSuspension:
    """The suspension of a pointed presheaf, exact up to degree N_out <= bound + 1."""
    return _sigma_J(X, X.bound + 1 if N_out is None else N_out)


@lru_cache(maxsize=None)
def _sigma_J(X, N_out):
    if X.site.kind != "theta":
        raise ValueError("sigma_J acts on presheaves over the full Theta site")
    if N_out > X.bound + 1:
        raise ValueError(f"output bound {N_out} exceeds input bound + 1")
    return KanSuspension(X, theta_site(N_out), th.shift_cell, th.shift_map,
                         _sigma_J_collapsed, f"Sigma_J({X.name})")


def suspension_map(phi: PresheafMap, SX: KanSuspension, SY: KanSuspension) -> PresheafMap:
    """The induced map between two suspensions built by the same recipe."""
    comps = {}
    for R in SX.site.cells:
        vals = [0]
        for T, y, e in SX._reps[R][1:]:
            vals.append(SY.element(T, phi.comps[T][y], e))
        comps[R] = vals
    return PresheafMap(SX, SY, comps)


def sigma_J_map(phi: PresheafMap, N_out: int = None) -> PresheafMap:
    return suspension_map(phi, sigma_J(phi.src, N_out), sigma_J(phi.tgt, N_out))


def sigma_J_wedge(X: Presheaf, N_out: int = None) -> Presheaf:
    """Independent description: (Sigma_J X)([[r]; R_1..R_r]) = X(R_1) v ... v X(R_r)."""
    N_out = X.bound + 1 if N_out is None else N_out
    st = theta_site(N_out)
    offs = {}
    for R in st.cells:
        acc, o = 1, []
        for Ri in R.children:
            o.append(acc)
            acc += X.size(Ri) - 1
        offs[R] = (o, acc)

    def code(R, i, x):
        return 0 if x == 0 else offs[R][0][i - 1] + x - 1

    def action(a):
        R, Rp = a.tgt, a.src
        xi = a.simplicial.values
        out = [0]
        for i, Ri in enumerate(R.children, start=1):
            hit = None
            for ip in range(1, Rp.width + 1):
                if xi[ip - 1] < i <= xi[ip]:
                    hit = ip
                    break
            for x in range(1, X.size(Ri)):
                if hit is None:
                    out.append(0)
                else:
                    c = a.component(hit, i)
                    out.append(code(Rp, hit, X.act(c)[x]))
        return out

    return Presheaf(st, {R: offs[R][1] for R in st.cells}, action, True, True, None,
                    f"wedge-Sigma_J({X.name})")


def sigma_J_wedge_comparison(SX: KanSuspension, W: Presheaf) -> PresheafMap:
    """The map sending the class of (y, e) to (i, c^* y), e stepping at i with component c."""
    X = SX.source
    comps = {}
    for R in SX.site.cells:
        vals = [0]
        for T, y, e in SX._reps[R][1:]:
            v = e.simplicial.values
            i = next(k for k in range(1, R.width + 1) if v[k - 1] == 0 and v[k] == 1)
            x = X.act(e.component(i, 1))[y]
            off = 1 + sum(X.size(Rj) - 1 for Rj in R.children[:i - 1])
            vals.append(0 if x == 0 else off + x - 1)
        comps[R] = vals
    return PresheafMap(SX, W, comps)


# -- loops ------------------------------------------------------------------

class LoopPresheaf(Presheaf):
    """Omega Y(T) = elements of Y(T+1) whose two endpoint vertices are the basepoint."""

    def __init__(self, Y: Presheaf):
        if not Y.pointed:
            raise ValueError("loops need a pointed presheaf")
        if Y.site.kind != "theta" or Y.bound < 1:
            raise ValueError("loops need a Theta presheaf of bound >= 1")
        st = theta_site(Y.bound - 1)
        self.target = Y
        self.members = {}
        for T in st.cells:
            JT = th.shift_cell(T)
            lo = Y.act(th.vertex(JT, 0))
            hi = Y.act(th.vertex(JT, 1))
            self.members[T] = [y for y in range(Y.size(JT)) if lo[y] == 0 and hi[y] == 0]
        self.position = {T: {y: k for k, y in enumerate(m)} for T, m in self.members.items()}

        def action(a):
            acted = Y.act(th.shift_map(a))
            pos = self.position[a.src]
            return [pos[acted[y]] for y in self.members[a.tgt]]

        super().__init__(st, {T: len(m) for T, m in self.members.items()}, action, True,
                         False, lambda T, k: Y.label(th.shift_cell(T), self.members[T][k]),
                         f"Omega({Y.name})")


@lru_cache(maxsize=None)
def omega(Y: Presheaf) -> LoopPresheaf:
    return LoopPresheaf(Y)


# -- maps between presheaves, and the suspension-loop adjunction ------------

def enumerate_maps(X: Presheaf, Y: Presheaf, limit: int = None) -> list:
    """All basepoint-preserving natural maps X -> Y on X's truncation.

    A map is fixed by its values on nondegenerate elements, chosen degree by
    degree subject to the coface relations; degenerate elements follow.
    """
    if not X.pointed or not Y.pointed:
        raise ValueError("maps are enumerated between pointed presheaves")
    ez = _ez_for(X)
    st = X.site
    slots = [(T, x) for T in st.cells for x in ez.nondegenerate(T) if x != 0]
    cof = {T: st.cofaces_into(T) for T in st.cells}
    assign = {}

    def value(T, x):
        if x == 0:
            return 0
        p, z = ez.decompose(T, x)
        if z == 0:
            return 0
        v = assign[(p.tgt, z)]
        return v if p is identity(T) else Y.act(p)[v]

    results = []

    def dfs(k):
        if limit is not None and len(results) >= limit:
            return
        if k == len(slots):
            results.append(dict(assign))
            return
        T, x = slots[k]
        for v in range(Y.size(T)):
            ok = True
            for d in cof[T]:
                if Y.act(d)[v] != value(d.src, X.act(d)[x]):
                    ok = False
                    break
            if ok:
                assign[(T, x)] = v
                dfs(k + 1)
                del assign[(T, x)]

    dfs(0)
    out = []
    for a in results:
        assign.update(a)
        out.append(PresheafMap(X, Y, {T: [value(T, x) for x in range(X.size(T))]
                                      for T in st.cells}))
        assign.clear()
    return out


def adjunct_flat(f: PresheafMap, X: Presheaf, OY: LoopPresheaf) -> PresheafMap:
    """Sigma_J X -> Y  to  X -> Omega Y:  x |-> f([x, id_{T+1}])."""
    SX = f.src
    comps = {}
    for T in X.site.cells:
        JT = th.shift_cell(T)
        idJ = identity(JT)
        comps[T] = [OY.position[T][f.comps[JT][SX.element(T, x, idJ)]]
                    for x in range(X.size(T))]
    return PresheafMap(X, OY, comps)


def adjunct_sharp(g: PresheafMap, SX: KanSuspension, Y: Presheaf) -> PresheafMap:
    """X -> Omega Y  to  Sigma_J X -> Y:  [x, e] |-> e^* g(x)."""
    OY = g.tgt
    comps = {}
    for R in SX.site.cells:
        vals = [0]
        for T, y, e in SX._reps[R][1:]:
            gy = OY.members[T][g.comps[T][y]]
            vals.append(Y.act(e)[gy])
        comps[R] = vals
    return PresheafMap(SX, Y, comps)


# -- the comparison with smashing against the circle ------------------------

def _comparison_from_element(T: Cell, N: int, first: ThetaMap, second: ThetaMap):
    """Sigma_J Theta_+^T -> Theta_+^T ^ S^1 induced by (first, second) in (T x 1)(T+1).

    Every generator (y, e) is evaluated, not only class representatives, so
    a ValueError signals that the assignment does not descend to the quotient.
    """
    X = representable(T, N - 1, True)
    SX = sigma_J(X, N)
    R_T = representable(T, N, True)
    S1 = circle(N)
    Z, q = smash(R_T, S1)
    m = S1.size

    def value(R, T2, y, e):
        full = compose(th.shift_map(X.label(T2, y)), e)
        a = hom_index(R, T)[compose(first, full)] + 1
        b = S1.quotient_map.comps[R][hom_index(R, th.globe(1))[compose(second, full)] + 1]
        return q.comps[R][a * m(R) + b]

    comps = {}
    for R in SX.site.cells:
        vals = [0] * SX.size(R)
        cls = SX._class[R]
        for (T2, y, e), g in SX._index[R].items():
            v = value(R, T2, y, e)
            c = cls[g]
            if c == 0 and v != 0:
                raise ValueError(f"comparison does not descend: a relation to the basepoint fails at {R}")
            if c and vals[c] and vals[c] != v:
                raise ValueError(f"comparison does not descend: a class at {R} has two values")
            vals[c] = v
        for T2 in X.site.cells:
            for e in hom(R, th.shift_cell(T2)):
                if _sigma_J_collapsed(e, T2):
                    for y in SX.nd[T2]:
                        if value(R, T2, y, e) != 0:
                            raise ValueError("comparison does not descend: a collapsed cell survives")
        comps[R] = vals
    return PresheafMap(SX, Z, comps)


def suspension_comparison(T: Cell, N: int) -> PresheafMap:
    """Sigma_J Theta_+^T -> Theta_+^T ^ S^1 from the universal element (E_T, C_1)."""
    from .shift import collapse_maps, eckmann_hilton
    if T.degree + 1 > N:
        raise ValueError("need degree(T) + 1 <= N")
    JT = th.shift_cell(T)
    return _comparison_from_element(T, N, eckmann_hilton(T), collapse_maps(1, JT).c_map)


def shuffle_prism(T: Cell, j: int):
    """The prism X_j = [[l+1]; A_1..A_j, [0], A_{j+1}..A_l] with its maps to T and to 1."""
    from .simplex import SimplexMap
    l = T.width
    kids = T.children[:j] + (th.POINT,) + T.children[j:]
    X = Cell(kids)
    to_T_vals = tuple(range(j + 1)) + tuple(range(j, l + 1))
    comps = []
    for i in range(1, l + 2):
        if i <= j:
            comps.append((identity(T.children[i - 1]),))
        elif i == j + 1:
            comps.append(())
        else:
            comps.append((identity(T.children[i - 2]),))
    to_T = ThetaMap(X, T, SimplexMap(l + 1, l, to_T_vals), tuple(comps))
    to_1_vals = (0,) * (j + 1) + (1,) * (l + 1 - j)
    comps1 = [() for _ in range(l + 1)]
    comps1[j] = (identity(th.POINT),)
    to_1 = ThetaMap(X, th.globe(1), SimplexMap(l + 1, 1, to_1_vals), tuple(comps1))
    return X, to_T, to_1


def comparison_pieces(T: Cell):
    """The maps A_i + 2 -> X_i along the long edge: in+ before, E in the middle, in- after."""
    from .shift import constant_to, eckmann_hilton
    from .simplex import SimplexMap
    l = T.width
    pieces = []
    for i in range(1, l + 1):
        Ai = T.children[i - 1]
        src = th.shift_cell(Ai)
        X, _, _ = shuffle_prism(T, i)
        comps = []
        for j, child in enumerate(X.children, start=1):
            if j < i:
                comps.append(constant_to(src, child, "plus"))
            elif j == i:
                comps.append(eckmann_hilton(Ai))
            elif j == i + 1:
                comps.append(th.terminal(src))
            else:
                comps.append(constant_to(src, child, "minus"))
        pieces.append(ThetaMap(th.shift_cell(src), X, SimplexMap(1, l + 1, (0, l + 1)),
                               (tuple(comps),)))
    return pieces


def smash_map(f: PresheafMap, g: PresheafMap) -> PresheafMap:
    """f ^ g : X ^ Y -> X' ^ Y'."""
    Z, q = smash(f.src, g.src)
    Z2, q2 = smash(f.tgt, g.tgt)
    P = Z.product
    comps = {}
    for R in Z.site.cells:
        m, m2 = g.src.size(R), g.tgt.size(R)
        reps = {}
        for k in range(P.size(R)):
            reps.setdefault(q.comps[R][k], k)
        vals = []
        for c in range(Z.size(R)):
            k = reps[c]
            a, b = divmod(k, m)
            vals.append(q2.comps[R][f.comps[R][a] * m2 + g.comps[R][b]])
        comps[R] = vals
    return PresheafMap(Z, Z2, comps)


def comparison_square(alpha: ThetaMap, N: int):
    """Both composites Sigma_J Theta_+^S -> Theta_+^T ^ S^1 around the naturality square."""
    S, T = alpha.src, alpha.tgt
    cS = suspension_comparison(S, N)
    cT = suspension_comparison(T, N)
    top = sigma_J_map(representable_map(alpha, N - 1, True), N)
    right = smash_map(representable_map(alpha, N, True), identity_map(circle(N)))
    return compose_maps(cT, top), compose_maps(right, cS)


def suspension_comparison_piecewise(T: Cell, N: int) -> PresheafMap:
    """The comparison glued from prism pieces, one per child of T."""
    from .shift import collapse_maps
    if T.width == 0:
        return suspension_comparison(T, N)
    pieces = comparison_pieces(T)
    to_T, to_1 = [], []
    for i, p in enumerate(pieces, start=1):
        _, pt, p1 = shuffle_prism(T, i)
        to_T.append(compose(pt, p))
        to_1.append(compose(p1, p))
    first = th.assemble_glued_map(T, to_T, depth=1)
    second = th.assemble_glued_map(T, to_1, depth=1)
    if second is not collapse_maps(1, th.shift_cell(T)).c_map:
        raise AssertionError("prism pieces do not project to the collapse onto 1")
    return _comparison_from_element(T, N, first, second)


# -- text fixtures ------------------------------------------------------------

def to_text(X: Presheaf, all_maps: bool = True) -> str:
    lines = [f"bound={X.bound}" + (" complete" if X.skeletal_complete else "")
             + ("" if X.site.kind == "theta" else f" site={X.site.kind}")]
    for T in X.site.cells:
        lines.append(f"cell {th.format_cell(T)} : {X.size(T)}")
    maps = X.site.maps() if all_maps else X.site.generators()
    for a in maps:
        lines.append(f"act {th.format_map(a)} : (" + " ".join(map(str, X.act(a))) + ")")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Presheaf:
    from .syntax import parse_cell, parse_map
    bound, complete, kind = None, False, "theta"
    sizes, acts = {}, {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("bound="):
            head = line.split()
            bound = int(head[0][len("bound="):])
            complete = "complete" in head[1:]
            for tok in head[1:]:
                if tok.startswith("site="):
                    kind = tok[len("site="):]
        elif line.startswith("cell "):
            body, k = line[5:].rsplit(":", 1)
            sizes[parse_cell(body.strip())] = int(k)
        elif line.startswith("act "):
            body, imgs = line[4:].rsplit(":", 1)
            imgs = imgs.strip()
            if not (imgs.startswith("(") and imgs.endswith(")")):
                raise ValueError(f"bad action images: {imgs}")
            acts[parse_map(body.strip())] = tuple(int(v) for v in imgs[1:-1].split())
        else:
            raise ValueError(f"unrecognised fixture line: {line!r}")
    if bound is None:
        raise ValueError("fixture needs a bound= header")
    st = site(kind, bound)
    missing = [T for T in st.cells if T not in sizes]
    if missing:
        raise ValueError(f"fixture lacks cell {th.format_cell(missing[0])}")

    def action(a):
        if a in acts:
            return acts[a]
        word = generator_word(a)
        out = list(range(sizes[a.tgt]))
        for g in reversed(word):
            if g not in acts:
                raise ValueError(f"fixture lacks an action for {th.format_map(g)}")
            out = [acts[g][v] for v in out]
        return out

    X = Presheaf(st, sizes, action, True, complete, None, "fixture")
    check_presheaf(X)
    return X


@lru_cache(maxsize=None)
def generator_word(a: ThetaMap) -> tuple:
    """Generators (g_1, ..., g_r) with a = g_r . ... . g_1: degree-one epis, then cofaces."""
    from .skeletal import coface_factor, skeletal_factorize
    p, d = skeletal_factorize(a)
    return epi_chain(p) + coface_factor(d)


@lru_cache(maxsize=None)
def epi_chain(p: ThetaMap) -> tuple:
    """Degree-one epis composing to the epimorphism p, first applied first."""
    if p.src is p.tgt:
        return ()
    for g in _elementary_epis(p.src):
        for rest in hom(g.tgt, p.tgt):
            if compose(rest, g) is p:
                return (g,) + epi_chain(rest)
    raise AssertionError(f"no elementary epi chain for {p}")
