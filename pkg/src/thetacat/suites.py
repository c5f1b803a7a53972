"""Small exhaustive invariant suites, one per module, for ``thetacat verify``.

Each check walks its cases smallest first and stops at the first failure, so
the reported counterexample is a minimal one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import gamma, simplex
from . import presheaf as P
from . import theta as th


@dataclass
class Outcome:
    name: str
    cases: int
    counterexample: str = ""

    @property
    def ok(self) -> bool:
        return not self.counterexample


def _run(name, cases, check):
    n = 0
    for case in cases:
        n += 1
        bad = check(case)
        if bad:
            return Outcome(name, n, bad if isinstance(bad, str) else repr(case))
    return Outcome(name, n)


def _simplex_suite():
    maps = [f for m in range(4) for n in range(4) for f in simplex.hom(m, n)]

    def laws(f):
        if simplex.compose(f, simplex.identity(f.src)) != f:
            return f"{f} . id != {f}"
        if simplex.compose(simplex.identity(f.tgt), f) != f:
            return f"id . {f} != {f}"
        e, m = simplex.factorize(f)
        if simplex.compose(m, e) != f or not e.is_surjective() or not m.is_injective():
            return f"bad epi-mono factorization of {f}"
        return ""

    def assoc(t):
        h, g, f = t
        if f.tgt != g.src or g.tgt != h.src:
            return ""
        if simplex.compose(h, simplex.compose(g, f)) != simplex.compose(simplex.compose(h, g), f):
            return f"associativity fails for {h}, {g}, {f}"
        return ""

    small = [f for m in range(3) for n in range(3) for f in simplex.hom(m, n)]
    return [_run("simplex laws and factorization", maps, laws),
            _run("simplex associativity", product(small, repeat=3), assoc)]


def _gamma_suite():
    mors = [f for n in range(4) for m in range(4) for f in gamma.hom(n, m)]

    def unit(f):
        if gamma.compose(f, gamma.identity(f.src)) != f or gamma.compose(gamma.identity(f.tgt), f) != f:
            return f"unit law fails for {f}"
        return ""

    def pull(pair):
        f, g = pair
        if f.tgt != g.tgt:
            return ""
        pb = gamma.pullback(f, g)
        if list(pb.elements) != gamma.minimal_pairs(f, g):
            return f"pullback of {f}, {g} disagrees with the subset search"
        return ""

    def functor(pair):
        f, g = pair
        if f.tgt != g.src:
            return ""
        if gamma.from_simplex(simplex.compose(g, f)) != gamma.compose(gamma.from_simplex(g), gamma.from_simplex(f)):
            return f"Delta -> Gamma is not functorial on {g}, {f}"
        return ""

    small = [f for n in range(3) for m in range(3) for f in gamma.hom(n, m)]
    smaps = [f for m in range(3) for n in range(3) for f in simplex.hom(m, n)]
    return [_run("gamma unit laws", mors, unit),
            _run("gamma pullbacks", product(small, repeat=2), pull),
            _run("Delta to Gamma functor", product(smaps, repeat=2), functor)]


def _theta_suite():
    from .syntax import parse_cell, parse_map
    cells = th.enumerate_cells(2)
    maps = [f for S in cells for T in cells for f in th.hom(S, T)]

    def unit(f):
        if th.compose(f, th.identity(f.src)) is not f or th.compose(th.identity(f.tgt), f) is not f:
            return f"unit law fails for {th.format_map(f)}"
        if parse_map(th.format_map(f)) is not f:
            return f"map text round trip fails for {th.format_map(f)}"
        return ""

    def closed(t):
        S, T, U = t
        homs = set(th.hom(S, U))
        for g in th.hom(T, U):
            for f in th.hom(S, T):
                if th.compose(g, f) not in homs:
                    return f"{th.format_map(g)} . {th.format_map(f)} escapes hom"
        return ""

    def sums(T):
        seq = th.cell_to_globular_sum(T)
        if th.globular_sum_to_cell(seq) is not T:
            return f"globular sum round trip fails for {th.format_cell(T)}"
        if parse_cell(th.format_cell(T)) is not T:
            return f"cell text round trip fails for {th.format_cell(T)}"
        return ""

    return [_run("theta unit laws", maps, unit),
            _run("theta hom closure", product(cells, repeat=3), closed),
            _run("globular sums", th.enumerate_cells(5), sums)]


def _skeletal_suite():
    from .skeletal import (boundary_cofaces, brute_force_pullback, coface_factor, coface_pullback,
                           EMPTY, is_epi, is_mono, map_degree, skeletal_factorize)
    cells = th.enumerate_cells(3)
    maps = [f for S in cells for T in cells for f in th.hom(S, T)]

    def fact(f):
        p, d = skeletal_factorize(f)
        if th.compose(d, p) is not f or not is_epi(p) or not is_mono(d):
            return f"bad factorization of {th.format_map(f)}"
        chain = coface_factor(d)
        if len(chain) != map_degree(d):
            return f"coface chain of {th.format_map(d)} has the wrong length"
        return ""

    def pull(pair):
        f, g = pair
        pb = coface_pullback(f, g)
        for R in th.enumerate_cells(f.tgt.degree + 1):
            want = brute_force_pullback(f, g, R)
            got = frozenset() if pb is EMPTY else pb.pairs(R)
            if got != want:
                return f"coface pullback of {th.format_map(f)}, {th.format_map(g)} wrong at {th.format_cell(R)}"
        return ""

    pairs = [(f, g) for T in cells for f in boundary_cofaces(T) for g in boundary_cofaces(T)]
    return [_run("skeletal factorization", maps, fact),
            _run("coface pullbacks", pairs, pull)]


def _shift_suite():
    from .shift import collapse, collapse_maps, eckmann_hilton

    def split(case):
        p, T = case
        data = collapse_maps(p, T)
        idK = th.identity(collapse(p, T))
        if th.compose(data.c_map, data.d_map) is not idK or th.compose(data.c_map, data.f_map) is not idK:
            return f"K_{p} splitting fails at {th.format_cell(T)}"
        return ""

    def shift(T):
        seq = th.cell_to_globular_sum(T)
        if th.cell_to_globular_sum(th.shift_cell(T)) != tuple(e + 1 for e in seq):
            return f"J does not raise the globular sum of {th.format_cell(T)}"
        E = eckmann_hilton(T)
        if E.src is not th.shift_cell(T) or E.tgt is not T:
            return f"E has the wrong type at {th.format_cell(T)}"
        return ""

    cells = th.enumerate_cells(4)
    return [_run("collapse splittings", [(p, T) for p in range(1, 5) for T in cells], split),
            _run("shift and Eckmann-Hilton", th.enumerate_cells(3), shift)]


def _cellular_suite():
    def bound(T):
        N = T.degree
        B, inc = P.boundary(T, N)
        imgs = P.boundary_by_images(T, N)
        Q, m = P.boundary_by_coequalizer(T, N)
        for R in B.site.cells:
            carrier = set(inc.comps[R]) - {0}
            if carrier != imgs[R] or not P.is_mono(m) or set(m.comps[R]) - {0} != carrier:
                return f"boundary descriptions of {th.format_cell(T)} disagree at {th.format_cell(R)}"
        return ""

    def susp(T):
        X = P.representable(T, T.degree, True)
        SX = P.sigma_J(X)
        W = P.sigma_J_wedge(X)
        if not P.is_iso(P.sigma_J_wedge_comparison(SX, W)):
            return f"Sigma_J of {th.format_cell(T)} disagrees with the wedge formula"
        B, inc = P.boundary(T, T.degree)
        if not P.is_mono(P.sigma_J_map(inc, T.degree + 1)):
            return f"Sigma_J of the boundary inclusion of {th.format_cell(T)} is not mono"
        return ""

    return [_run("boundary descriptions", th.enumerate_cells(3), bound),
            _run("Sigma_J wedge formula and monos", th.enumerate_cells(2), susp)]


def _spectra_suite():
    from .spectra import (face_pattern, is_kan_spectrum, stable_compose, stable_hom, stable_map,
                          suspension_spectrum_prefix, K)

    def cong(t):
        z, w, u = t
        for a in stable_hom(z, w, 2):
            if stable_map(a.level + 1, K(a.map)) != a:
                return f"normal form of {a} is not K-invariant"
            for b in stable_hom(w, u, 2):
                c = stable_compose(b, a)
                k = max(a.level, b.level) + 1
                if stable_map(k, simplex.compose(b.at_level(k), a.at_level(k))) != c:
                    return f"composite of {b} and {a} depends on the level"
        return ""

    def faces(n):
        # at n = 0 both faces of the circle hit the collapsed part
        want = tuple(range(n + 1)) if n else ()
        return "" if face_pattern(n) == want else f"face pattern fails at n={n}"

    def sphere(depth):
        S0 = P.representable(P.simplex_cell(0), 2, True, "simplicial")
        ok, rep = is_kan_spectrum(suspension_spectrum_prefix(S0, depth).window)
        return "" if ok else f"sphere prefix of depth {depth} is not a Kan spectrum"

    return [_run("stable normal forms", product(range(-1, 2), repeat=3), cong),
            _run("Sigma_K face pattern", range(5), faces),
            _run("sphere spectrum prefixes", range(1, 4), sphere)]


SUITES = {
    "simplex": _simplex_suite,
    "gamma": _gamma_suite,
    "theta": _theta_suite,
    "skeletal": _skeletal_suite,
    "shift": _shift_suite,
    "cellular": _cellular_suite,
    "spectra": _spectra_suite,
}


def run_suite(name: str) -> list:
    if name == "all":
        return [o for key in SUITES for o in SUITES[key]()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name]()
