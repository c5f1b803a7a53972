"""Kan's suspension of pointed simplicial presheaves, stable index categories, and
finite windows onto combinatorial spectra.

A stable simplex map is a pair (level k, phi : [z+k] -> [w+k]) modulo
``(k, phi) ~ (k+1, K phi)``, where K adjoins a new top vertex sent to the new
top vertex.  A stable cell is a pair (z, T) modulo ``(z, T) ~ (z-1, J T)``;
stable Theta maps use the same rule with J in place of K.

Spectra are infinite objects, so they are handled through windows: the cells
of degrees ``z_min..z_max`` with the faces and degeneracies of index at most
``opbound``.  Checks on a window certify only what the window can see.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import simplex
from . import theta as th
from .presheaf import (KanSuspension, Presheaf, PresheafMap, identity_map, representable,
                       sigma_J, simplex_cell, simplex_theta_map, simplicial_site)
from .simplex import SimplexMap
from .theta import Cell, ThetaMap

__all__ = [
    "K", "StableSimplexMap", "stable_map", "stable_compose", "stable_identity",
    "stable_coface", "stable_codegeneracy", "stable_hom",
    "StableCell", "stable_cell_normalize", "StableThetaMap", "stable_theta_map",
    "stable_theta_compose",
    "sigma_K", "sigma_K_wedge", "face_pattern",
    "KanSpectrumWindow", "SpectrumReport", "structural_errors", "is_kan_spectrum",
    "window_to_text", "window_from_text",
    "SuspensionPrefix", "ThetaStableWindow", "suspension_spectrum_prefix",
    "sphere_prefix_counts",
]


# -- the stable simplex category --------------------------------------------

def K(phi: SimplexMap) -> SimplexMap:
    """[m] -> [n]  to  [m+1] -> [n+1], fixing the new top vertex."""
    return SimplexMap._raw(phi.src + 1, phi.tgt + 1, phi.values + (phi.tgt + 1,))


def _unK(phi: SimplexMap):
    v = phi.values
    if phi.src == 0 or v[-1] != phi.tgt or v[-2] == phi.tgt:
        return None
    return SimplexMap._raw(phi.src - 1, phi.tgt - 1, v[:-1])


@dataclass(frozen=True)
class StableSimplexMap:
    level: int
    map: SimplexMap

    @property
    def src_degree(self) -> int:
        return self.map.src - self.level

    @property
    def tgt_degree(self) -> int:
        return self.map.tgt - self.level

    def at_level(self, k: int) -> SimplexMap:
        if k < self.level:
            raise ValueError(f"cannot lower level {self.level} to {k}")
        phi = self.map
        for _ in range(k - self.level):
            phi = K(phi)
        return phi

    def __str__(self):
        return f"{self.src_degree}->{self.tgt_degree}@{self.level}:({' '.join(map(str, self.map.values))})"


def stable_map(level: int, phi: SimplexMap) -> StableSimplexMap:
    """The normal form of (level, phi): strip K as often as possible."""
    if level < 0:
        raise ValueError("level must be non-negative")
    while level > 0:
        psi = _unK(phi)
        if psi is None:
            break
        phi, level = psi, level - 1
    return StableSimplexMap(level, phi)


def stable_compose(beta: StableSimplexMap, alpha: StableSimplexMap) -> StableSimplexMap:
    """beta . alpha"""
    if alpha.tgt_degree != beta.src_degree:
        raise ValueError(f"degree mismatch: {beta} after {alpha}")
    k = max(alpha.level, beta.level)
    return stable_map(k, simplex.compose(beta.at_level(k), alpha.at_level(k)))


def stable_identity(z: int) -> StableSimplexMap:
    return stable_map(max(0, -z), simplex.identity(max(0, z)))


def stable_coface(z: int, i: int) -> StableSimplexMap:
    """d^i : z -> z+1."""
    if i < 0:
        raise ValueError("operator indices are non-negative")
    k = max(0, -z, i - z - 1)
    return stable_map(k, simplex.coface(z + k + 1, i))


def stable_codegeneracy(z: int, j: int) -> StableSimplexMap:
    """s^j : z+1 -> z."""
    if j < 0:
        raise ValueError("operator indices are non-negative")
    k = max(0, -z, j - z)
    return stable_map(k, simplex.codegeneracy(z + k, j))


def stable_hom(z: int, w: int, max_level: int) -> tuple:
    """Normal forms of all maps z -> w representable at level <= max_level."""
    out = set()
    for k in range(max(0, -z, -w), max_level + 1):
        for phi in simplex.hom(z + k, w + k):
            out.add(stable_map(k, phi))
    return tuple(sorted(out, key=lambda f: (f.level, f.map)))


# -- stable cells and stable Theta maps --------------------------------------

@dataclass(frozen=True)
class StableCell:
    degree_shift: int
    base: Cell

    def __str__(self):
        return f"({self.degree_shift}, {th.format_cell(self.base)})"


def stable_cell_normalize(z: int, T: Cell) -> StableCell:
    """Strip the leading [[1]; -] nodes of T, one unit of z per node."""
    while T.width == 1:
        T = T.children[0]
        z += 1
    return StableCell(z, T)


@dataclass(frozen=True)
class StableThetaMap:
    shift: int
    map: ThetaMap

    @property
    def src(self) -> StableCell:
        return stable_cell_normalize(self.shift, self.map.src)

    @property
    def tgt(self) -> StableCell:
        return stable_cell_normalize(self.shift, self.map.tgt)

    def at_shift(self, z: int) -> ThetaMap:
        if z > self.shift:
            raise ValueError(f"cannot raise shift {self.shift} to {z}")
        return th.shift_power(self.map, self.shift - z)


def _unJ(f: ThetaMap):
    if f.src.width == 1 and f.tgt.width == 1 and f.simplicial.values == (0, 1):
        return f.components[0][0]
    return None


def stable_theta_map(z: int, f: ThetaMap) -> StableThetaMap:
    """Normal form of (z, f) under (z, f) ~ (z-1, J f)."""
    while True:
        g = _unJ(f)
        if g is None:
            return StableThetaMap(z, f)
        f, z = g, z + 1


def stable_theta_compose(g: StableThetaMap, f: StableThetaMap) -> StableThetaMap:
    if f.tgt != g.src:
        raise ValueError(f"cannot compose stable maps: {f.tgt} vs {g.src}")
    z = min(f.shift, g.shift)
    return stable_theta_map(z, th.compose(g.at_shift(z), f.at_shift(z)))


# -- Kan's suspension --------------------------------------------------------

def _lift_cell(T: Cell) -> Cell:
    return simplex_cell(T.width + 1)


def _lift_map(a: ThetaMap) -> ThetaMap:
    return simplex_theta_map(K(a.simplicial))


def _sigma_K_collapsed(e: ThetaMap, T: Cell) -> bool:
    # the face opposite the new vertex, and the new vertex itself
    top = T.width + 1
    vals = set(e.simplicial.values)
    return top not in vals or vals == {top}


def sigma_K(X: Presheaf, N_out: int = None) -> KanSuspension:
    """Kan's suspension of a pointed simplicial presheaf, exact up to degree N_out."""
    return _sigma_K(X, X.bound + 1 if N_out is None else N_out)


@lru_cache(maxsize=None)
def _sigma_K(X, N_out):
    if X.site.kind != "simplicial":
        raise ValueError("sigma_K acts on simplicial presheaves")
    if N_out > X.bound + 1:
        raise ValueError(f"output bound {N_out} exceeds input bound + 1")
    return KanSuspension(X, simplicial_site(N_out), _lift_cell, _lift_map,
                         _sigma_K_collapsed, f"Sigma_K({X.name})")


def sigma_K_wedge(X: Presheaf, N_out: int = None) -> Presheaf:
    """Independent description: (Sigma_K X)[k] is the wedge of X[0], ..., X[k-1].

    The summand j holds the simplices whose first j+1 vertices come from X and
    whose remaining vertices sit at the cone point.
    """
    if X.site.kind != "simplicial":
        raise ValueError("sigma_K acts on simplicial presheaves")
    N_out = X.bound + 1 if N_out is None else N_out
    st = simplicial_site(N_out)
    offs = {}
    for R in st.cells:
        acc, o = 1, []
        for j in range(R.width):
            o.append(acc)
            acc += X.size(simplex_cell(j)) - 1
        offs[R.width] = (o, acc)

    def decode(k, c):
        o = offs[k][0]
        for j in reversed(range(k)):
            if c >= o[j]:
                return j, c - o[j] + 1
        raise AssertionError("basepoint has no summand")

    def action(a):
        theta = a.simplicial
        k, kp = theta.tgt, theta.src
        out = [0]
        for c in range(1, offs[k][1]):
            j, x = decode(k, c)
            below = [i for i in range(kp + 1) if theta.values[i] <= j]
            if not below or below[-1] == kp:
                out.append(0)
                continue
            jp = below[-1]
            restricted = SimplexMap._raw(jp, j, theta.values[:jp + 1])
            xp = X.act(simplex_theta_map(restricted))[x]
            out.append(0 if xp == 0 else offs[kp][0][jp] + xp - 1)
        return out

    return Presheaf(st, {R: offs[R.width][1] for R in st.cells}, action, True, True,
                    None, f"SigmaK_wedge({X.name})")


def face_pattern(n: int) -> tuple:
    """Indices i for which d^i of the top cell of Sigma_K Delta^n_+ is not the basepoint."""
    Dn = simplex_cell(n)
    X = representable(Dn, n, True, "simplicial")
    S = sigma_K(X, n + 1)
    top = S.element(Dn, 1 + th.hom_index(Dn, Dn)[th.identity(Dn)], th.identity(simplex_cell(n + 1)))
    return tuple(i for i in range(n + 2)
                 if S.act(simplex_theta_map(simplex.coface(n + 1, i)))[top] != 0)


# -- windows onto combinatorial spectra -------------------------------------

@dataclass
class KanSpectrumWindow:
    """Cells of degrees z_min..z_max with operators of index <= opbound.

    ``faces[(i, z)]`` lists d_i of every degree-z cell (a cell of degree
    z-1); ``degeneracies[(j, z)]`` lists s_j of every degree-z cell.  Cell 0
    is the basepoint in every degree.
    """
    z_min: int
    z_max: int
    opbound: int
    sizes: dict
    faces: dict
    degeneracies: dict
    vanishing: dict = field(default_factory=dict)

    def degrees(self):
        return range(self.z_min, self.z_max + 1)


@dataclass
class SpectrumReport:
    opbound: int
    certified: list = field(default_factory=list)
    derived: list = field(default_factory=list)
    unchecked: list = field(default_factory=list)
    refuted: list = field(default_factory=list)
    uncertified: list = field(default_factory=list)
    structural: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.structural or self.refuted or self.uncertified)

    def lines(self) -> list:
        out = [f"opbound {self.opbound}: faces of index > {self.opbound} are not examined"]
        out += [f"structural {s}" for s in self.structural]
        out += [f"refuted z={z} cell={x} bound={m}" for z, x, m in self.refuted]
        out += [f"uncertified z={z} cell={x}" for z, x in self.uncertified]
        out.append(f"certified {len(self.certified)} derived {len(self.derived)} "
                   f"unchecked {len(self.unchecked)}")
        out.append("kan spectrum: " + ("yes (within opbound)" if self.ok else "no"))
        return out


def _check_table(errors, name, table, n_src, n_tgt):
    if table is None:
        errors.append(f"{name} missing")
        return False
    if len(table) != n_src:
        errors.append(f"{name} has {len(table)} entries, expected {n_src}")
        return False
    if table[0] != 0:
        errors.append(f"{name} moves the basepoint")
    if any(not 0 <= v < n_tgt for v in table):
        errors.append(f"{name} leaves the degree")
        return False
    return True


def structural_errors(W: KanSpectrumWindow, limit: int = 20) -> list:
    """Missing tables and violated simplicial identities inside the window."""
    errors = []
    B = W.opbound
    if W.z_min > W.z_max or B < 0:
        return ["empty window or negative opbound"]
    for z in W.degrees():
        if W.sizes.get(z, 0) < 1:
            errors.append(f"degree {z} has no basepoint")
    if errors:
        return errors
    good = True
    for z in W.degrees():
        for i in range(B + 1):
            if z > W.z_min:
                good &= _check_table(errors, f"d {i} {z}", W.faces.get((i, z)),
                                     W.sizes[z], W.sizes[z - 1])
            if z < W.z_max:
                good &= _check_table(errors, f"s {i} {z}", W.degeneracies.get((i, z)),
                                     W.sizes[z], W.sizes[z + 1])
    if not good:
        return errors

    d = lambda i, z, x: W.faces[(i, z)][x]
    s = lambda j, z, x: W.degeneracies[(j, z)][x]

    def fail(msg):
        errors.append(msg)
        return len(errors) >= limit

    for z in W.degrees():
        for x in range(W.sizes[z]):
            if z - 2 >= W.z_min:
                for j in range(B + 1):
                    for i in range(j):
                        if d(i, z - 1, d(j, z, x)) != d(j - 1, z - 1, d(i, z, x)):
                            if fail(f"d{i} d{j} != d{j - 1} d{i} on cell {x} of degree {z}"):
                                return errors
            if z + 2 <= W.z_max:
                for j in range(B):
                    for i in range(j + 1):
                        if s(i, z + 1, s(j, z, x)) != s(j + 1, z + 1, s(i, z, x)):
                            if fail(f"s{i} s{j} != s{j + 1} s{i} on cell {x} of degree {z}"):
                                return errors
            if z + 1 <= W.z_max:
                for j in range(B + 1):
                    for i in range(B + 1):
                        lhs = d(i, z + 1, s(j, z, x))
                        if i in (j, j + 1):
                            rhs = x
                        elif z - 1 < W.z_min:
                            continue
                        elif i < j:
                            rhs = s(j - 1, z - 1, d(i, z, x))
                        else:
                            if i - 1 > B:
                                continue
                            rhs = s(j, z - 1, d(i - 1, z, x))
                        if lhs != rhs:
                            if fail(f"d{i} s{j} identity fails on cell {x} of degree {z}"):
                                return errors
    return errors


def is_kan_spectrum(W: KanSpectrumWindow):
    """(verdict, report) for the local finiteness condition inside the window.

    A cell is certified when its faces of index m..opbound all vanish for some
    m <= opbound, and derived when it is s_j y for a certified or derived y:
    then d_i s_j y = s_j d_{i-1} y vanishes for i > max(m(y) + 1, j + 1).
    Cells of the lowest degree have no faces in the window and are left
    unchecked.  A declared vanishing bound contradicted by a visible face
    refutes the cell.
    """
    report = SpectrumReport(W.opbound)
    report.structural = structural_errors(W)
    if report.structural:
        return False, report
    B = W.opbound
    bounds = {}
    made_by = {}
    for (j, z), table in W.degeneracies.items():
        for y, x in enumerate(table):
            if x:
                made_by.setdefault((z + 1, x), []).append((j, y))
    for z in W.degrees():
        for x in range(1, W.sizes[z]):
            if z == W.z_min:
                report.unchecked.append((z, x))
                continue
            faces = [W.faces[(i, z)][x] for i in range(B + 1)]
            declared = W.vanishing.get((z, x))
            if declared is not None and any(faces[i] for i in range(declared, B + 1)):
                report.refuted.append((z, x, declared))
                continue
            direct = B + 1
            while direct > 0 and faces[direct - 1] == 0:
                direct -= 1
            if direct <= B:
                m = direct if declared is None else min(direct, declared)
                bounds[(z, x)] = m
                report.certified.append((z, x, m))
                continue
            options = [max(bounds[(z - 1, y)] + 1, j + 2)
                       for j, y in made_by.get((z, x), ()) if (z - 1, y) in bounds]
            if options:
                m = min(options)
                bounds[(z, x)] = m
                report.derived.append((z, x, m))
            else:
                report.uncertified.append((z, x))
    return report.ok, report


_WINDOW_RE = re.compile(r"^window\s+(-?\d+)\.\.(-?\d+)\s+opbound=(\d+)$")
_DEG_RE = re.compile(r"^deg\s+(-?\d+)\s*:\s*(\d+)$")
_OP_RE = re.compile(r"^([ds])\s+(\d+)\s+(-?\d+)\s*:\s*\(([\d\s]*)\)$")
_VAN_RE = re.compile(r"^van\s+(-?\d+)\s+(\d+)\s*:\s*(\d+)$")


def window_to_text(W: KanSpectrumWindow) -> str:
    lines = [f"window {W.z_min}..{W.z_max} opbound={W.opbound}"]
    lines += [f"deg {z} : {W.sizes[z]}" for z in W.degrees()]
    for key in sorted(W.faces, key=lambda k: (k[1], k[0])):
        lines.append(f"d {key[0]} {key[1]} : ({' '.join(map(str, W.faces[key]))})")
    for key in sorted(W.degeneracies, key=lambda k: (k[1], k[0])):
        lines.append(f"s {key[0]} {key[1]} : ({' '.join(map(str, W.degeneracies[key]))})")
    for (z, x) in sorted(W.vanishing):
        lines.append(f"van {z} {x} : {W.vanishing[(z, x)]}")
    return "\n".join(lines) + "\n"


def window_from_text(text: str) -> KanSpectrumWindow:
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("empty window description")
    head = _WINDOW_RE.match(rows[0])
    if not head:
        raise ValueError(f"bad window header: {rows[0]!r}")
    W = KanSpectrumWindow(int(head.group(1)), int(head.group(2)), int(head.group(3)), {}, {}, {})
    for r in rows[1:]:
        if m := _DEG_RE.match(r):
            W.sizes[int(m.group(1))] = int(m.group(2))
        elif m := _OP_RE.match(r):
            table = W.faces if m.group(1) == "d" else W.degeneracies
            table[(int(m.group(2)), int(m.group(3)))] = tuple(int(v) for v in m.group(4).split())
        elif m := _VAN_RE.match(r):
            W.vanishing[(int(m.group(1)), int(m.group(2)))] = int(m.group(3))
        else:
            raise ValueError(f"bad window line: {r!r}")
    return W


# -- suspension spectra ------------------------------------------------------

@dataclass
class ThetaStableWindow:
    """Stable cells of a cellular suspension prefix: level n at T is (-n, T)."""
    depth: int
    spaces: list
    entries: dict  # StableCell -> list of (level, cell, size)

    def round_trip_failures(self) -> list:
        """Places where X_n(T) and X_{n+1}(J T) disagree or normalize differently."""
        bad = []
        for n in range(self.depth):
            X, Y = self.spaces[n], self.spaces[n + 1]
            for T in X.site.cells:
                JT = th.shift_cell(T)
                if JT not in Y.site:
                    continue
                if stable_cell_normalize(-n, T) != stable_cell_normalize(-n - 1, JT):
                    bad.append((n, T, "normal forms differ"))
                elif X.size(T) != Y.size(JT):
                    bad.append((n, T, f"sizes {X.size(T)} vs {Y.size(JT)}"))
        return bad


@dataclass
class SuspensionPrefix:
    kind: str
    spaces: list
    window: object

    def structure_map(self, n: int) -> PresheafMap:
        """Sigma X_n -> X_{n+1}; the identity, since X_{n+1} is that suspension."""
        return identity_map(self.spaces[n + 1])


def _window_from_level(X: Presheaf, level: int, z_min: int, z_max: int, B: int):
    L = level
    size = lambda z: X.size(simplex_cell(z + L))
    W = KanSpectrumWindow(z_min, z_max, B, {z: size(z) for z in range(z_min, z_max + 1)}, {}, {})
    for z in W.degrees():
        n = z + L
        if z > z_min:
            for i in range(B + 1):
                if i <= n:
                    W.faces[(i, z)] = X.act(simplex_theta_map(simplex.coface(n, i)))
                else:
                    W.faces[(i, z)] = (0,) * size(z)
        if z < z_max:
            for j in range(B + 1):
                W.degeneracies[(j, z)] = X.act(simplex_theta_map(simplex.codegeneracy(n, j)))
        # above index n the face removes the cone point of the next suspension
        for x in range(1, size(z)):
            m = 0
            for i in range(n + 1):
                if n >= 1 and X.act(simplex_theta_map(simplex.coface(n, i)))[x]:
                    m = i + 1
            W.vanishing[(z, x)] = m
    return W


def suspension_spectrum_prefix(X: Presheaf, depth: int, z_min: int = -1, z_max: int = None,
                               opbound: int = None) -> SuspensionPrefix:
    """X, Sigma X, ..., Sigma^depth X with identity structure maps, plus a window.

    Simplicial input gives a KanSpectrumWindow read off at level ``depth``:
    the degree-z cells are the simplices of dimension z + depth.  Degeneracies
    s_j exist there only for j <= z_min + depth, which caps the default opbound.
    Cellular input gives the stable cells of the prefix.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if X.site.kind == "theta":
        spaces = [X]
        for _ in range(depth):
            spaces.append(sigma_J(spaces[-1]))
        entries = {}
        for n, Y in enumerate(spaces):
            for T in Y.site.cells:
                if Y.size(T) > 1:
                    entries.setdefault(stable_cell_normalize(-n, T), []).append((n, T, Y.size(T)))
        return SuspensionPrefix("theta", spaces, ThetaStableWindow(depth, spaces, entries))
    spaces = [X]
    for _ in range(depth):
        spaces.append(sigma_K(spaces[-1]))
    top = spaces[-1]
    z_max = X.bound if z_max is None else z_max
    B = z_min + depth if opbound is None else opbound
    if z_min + depth < 0:
        raise ValueError("window starts below the simplices of the last space")
    if B > z_min + depth or B < 0:
        raise ValueError(f"opbound must lie in 0..{z_min + depth} for this level")
    if z_max + depth > top.bound:
        raise ValueError(f"z_max must be at most {top.bound - depth}")
    return SuspensionPrefix("simplicial", spaces, _window_from_level(top, depth, z_min, z_max, B))


def sphere_prefix_counts(n: int, m: int) -> int:
    """Non-basepoint simplices of Sigma_K^n S^0 in dimension m, from the wedge formula."""
    return comb(m, n)
