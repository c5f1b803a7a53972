"""Acceptance run: thirteen criteria, each evaluated exactly and reported as one line.

Run directly (``python tests/test_acceptance.py``) for the summary, or under
pytest where every criterion is its own test and prints its line.
"""

from __future__ import annotations

import itertools
import sys
import time
from collections import Counter

import pytest

from thetacat import gamma, simplex
from thetacat import presheaf as P
from thetacat import theta as th
from thetacat.shift import collapse_maps, eckmann_hilton
from thetacat.skeletal import (EMPTY, boundary_cofaces, brute_force_pullback, coface_factor,
                               coface_pullback, is_coface, is_epi, is_mono, map_degree,
                               skeletal_factorize)
from thetacat.spectra import (K, face_pattern, is_kan_spectrum, stable_compose, stable_hom,
                              stable_map, suspension_spectrum_prefix)
from thetacat.syntax import parse_cell


# -- 1 ----------------------------------------------------------------------

def gamma_laws_and_pullbacks():
    objs = range(4)
    homs = {(n, m): gamma.hom(n, m) for n in objs for m in objs}
    for (n, m), fs in homs.items():
        for f in fs:
            if gamma.compose(f, gamma.identity(n)) != f or gamma.compose(gamma.identity(m), f) != f:
                return False, f"unit law fails for {f}"
    for a, b, c in itertools.product(objs, repeat=3):
        for f in homs[(a, b)]:
            for g in homs[(b, c)]:
                gf = gamma.compose(g, f)
                for d in objs:
                    for h in homs[(c, d)]:
                        if gamma.compose(h, gf) != gamma.compose(gamma.compose(h, g), f):
                            return False, f"associativity fails for {h}, {g}, {f}"
    cospans = 0
    for l, n, m in itertools.product(objs, repeat=3):
        for f in homs[(n, l)]:
            for g in homs[(m, l)]:
                pb = gamma.pullback(f, g)
                if list(pb.elements) != gamma.minimal_pairs(f, g):
                    return False, f"pullback of {f}, {g} is not the set of minimal pairs"
                if gamma.compose(f, pb.proj_left) != gamma.compose(g, pb.proj_right):
                    return False, f"pullback square of {f}, {g} does not commute"
                cospans += 1
                for k in objs:
                    fa = Counter(gamma.compose(f, a) for a in homs[(k, n)])
                    gb = Counter(gamma.compose(g, b) for b in homs[(k, m)])
                    cone_count = sum(c * gb[x] for x, c in fa.items())
                    induced = {(gamma.compose(pb.proj_left, u), gamma.compose(pb.proj_right, u))
                               for u in gamma.hom(k, pb.apex)}
                    if len(induced) != len(gamma.hom(k, pb.apex)) or len(induced) != cone_count:
                        return False, f"universal property fails for {f}, {g} tested on <{k}>"
    return True, f"laws on <0>..<3>, {cospans} cospans tested against <0>..<3>"


# -- 2 ----------------------------------------------------------------------

def theta_composition():
    cells = th.enumerate_cells(3)
    homs = {(S, T): th.hom(S, T) for S in cells for T in cells}
    for (S, T), fs in homs.items():
        if len(set(fs)) != len(fs):
            return False, f"hom({S}, {T}) lists a map twice"
        for f in fs:
            if th.compose(f, th.identity(S)) is not f or th.compose(th.identity(T), f) is not f:
                return False, f"unit law fails for {th.format_map(f)}"
    triples = 0
    for S, T, U in itertools.product(cells, repeat=3):
        target = set(homs[(S, U)])
        for f in homs[(S, T)]:
            for g in homs[(T, U)]:
                gf = th.compose(g, f)
                if gf not in target:
                    return False, f"{th.format_map(g)} . {th.format_map(f)} is not enumerated"
                for V in cells:
                    for h in homs[(U, V)]:
                        triples += 1
                        if th.compose(h, gf) is not th.compose(th.compose(h, g), f):
                            return False, "associativity fails"
    return True, f"{sum(map(len, homs.values()))} maps, {triples} composable triples"


# -- 3 ----------------------------------------------------------------------

def _strict_sums(max_degree):
    """All (n0, m1, n1, ...) with m_i below both neighbours and degree sum n - sum m <= bound."""
    out = [(0,)]

    def grow(seq, deg):
        out.append(seq)
        last = seq[-1]
        for m in range(last):
            for n in range(m + 1, max_degree + 1):
                d = deg + n - m
                if d <= max_degree:
                    grow(seq + (m, n), d)

    for n0 in range(1, max_degree + 1):
        grow((n0,), n0)
    return out


def globular_round_trip():
    cells = th.enumerate_cells(6)
    for T in cells:
        if th.globular_sum_to_cell(th.cell_to_globular_sum(T)) is not T:
            return False, f"cell {th.format_cell(T)} does not round trip"
    sums = _strict_sums(6)
    images = {}
    for seq in sums:
        T = th.globular_sum_to_cell(seq)
        if th.cell_to_globular_sum(T) != seq:
            return False, f"sum {seq} does not round trip"
        if T in images:
            return False, f"sums {images[T]} and {seq} give the same cell"
        images[T] = seq
    if set(images) != set(cells):
        return False, "sums and cells of degree <= 6 are not in bijection"
    return True, f"{len(cells)} cells, {len(sums)} strict sums"


# -- 4 ----------------------------------------------------------------------

def skeletal_factorization():
    cells = th.enumerate_cells(4)
    epis = {(S, U): [p for p in th.hom(S, U) if is_epi(p)] for S in cells for U in cells}
    monos = {(U, T): [d for d in th.hom(U, T) if is_mono(d)] for U in cells for T in cells}
    found = Counter()
    for S, U, T in itertools.product(cells, repeat=3):
        for p in epis[(S, U)]:
            for d in monos[(U, T)]:
                found[th.compose(d, p)] += 1
    total = 0
    for S, T in itertools.product(cells, repeat=2):
        for f in th.hom(S, T):
            total += 1
            if found[f] != 1:
                return False, f"{th.format_map(f)} has {found[f]} factorizations"
            p, d = skeletal_factorize(f)
            if th.compose(d, p) is not f or not is_epi(p) or not is_mono(d):
                return False, f"structural factorization of {th.format_map(f)} is wrong"
            chain = coface_factor(d)
            if len(chain) != map_degree(d) or not all(is_coface(c) for c in chain):
                return False, f"coface chain of {th.format_map(d)} has the wrong shape"
            acc = th.identity(d.src)
            for c in chain:
                acc = th.compose(c, acc)
            if acc is not d:
                return False, f"coface chain does not compose to {th.format_map(d)}"
    return True, f"{total} maps, each with exactly one factorization"


# -- 5 ----------------------------------------------------------------------

def coface_pullbacks():
    cells = th.enumerate_cells(4)
    pairs = empty = nonrep = 0
    for T in cells:
        probes = th.enumerate_cells(T.degree + 1)
        for f in boundary_cofaces(T):
            for g in boundary_cofaces(T):
                pairs += 1
                pb = coface_pullback(f, g)
                for R in probes:
                    want = brute_force_pullback(f, g, R)
                    if pb is EMPTY:
                        if want:
                            return False, f"empty pullback has elements at {R}"
                        continue
                    if pb.pairs(R) != want:
                        return False, f"pullback of {f}, {g} differs at {R}"
                    if pb.representable:
                        via = {(th.compose(pb.proj_left, u), th.compose(pb.proj_right, u))
                               for u in th.hom(R, pb.cell)}
                        if via != want or len(th.hom(R, pb.cell)) != len(want):
                            return False, f"representing cell of {f}, {g} is wrong at {R}"
                if pb is EMPTY:
                    empty += 1
                elif not pb.representable:
                    nonrep += 1
    return True, f"{pairs} coface pairs, {empty} empty, {nonrep} not representable"


# -- 6 ----------------------------------------------------------------------

def boundary_coequalizer():
    count = 0
    for T in th.enumerate_cells(4):
        N = T.degree
        Q, m = P.boundary_by_coequalizer(T, N)
        images = P.boundary_by_images(T, N)
        B, inc = P.boundary(T, N)
        if not P.is_mono(m) or not P.is_natural(m):
            return False, f"coequalizer of {T} does not embed"
        for R in Q.site.cells:
            carrier = set(m.comps[R]) - {0}
            if carrier != images[R] or carrier != set(inc.comps[R]) - {0}:
                return False, f"boundary of {T} differs at {R}"
            count += 1
    return True, f"{len(th.enumerate_cells(4))} cells, {count} carriers compared"


# -- 7 ----------------------------------------------------------------------

def collapse_splittings():
    cells = th.enumerate_cells(4)
    checks = 0
    for p in range(1, 5):
        truncated = [U for U in cells if U.height <= p]
        for T in cells:
            data = collapse_maps(p, T)
            idK = th.identity(data.cell)
            if th.compose(data.c_map, data.d_map) is not idK or th.compose(data.c_map, data.f_map) is not idK:
                return False, f"splitting fails for K_{p}({T})"
            if data.cell.height > p:
                return False, f"K_{p}({T}) is not {p}-truncated"
            for U in truncated:
                via = [th.compose(h, data.c_map) for h in th.hom(data.cell, U)]
                if len(set(via)) != len(via) or set(via) != set(th.hom(T, U)):
                    return False, f"K_{p} adjunction fails for {T} and {U}"
                checks += 1
    return True, f"p <= 4, {checks} adjunction bijections"


# -- 8 ----------------------------------------------------------------------

def eckmann_hilton_naturality():
    cells = th.enumerate_cells(3)
    total = bad = 0
    first = None
    for S, T in itertools.product(cells, repeat=2):
        for a in th.hom(S, T):
            total += 1
            lhs = th.compose(eckmann_hilton(T), th.shift_map(a))
            rhs = th.compose(a, eckmann_hilton(S))
            if lhs is not rhs:
                bad += 1
                first = first or a
    if bad:
        return False, f"{bad} of {total} squares fail, first at {th.format_map(first)}"
    return True, f"{total} squares commute"


# -- 9 ----------------------------------------------------------------------

def suspension_census():
    mismatches = checked = 0
    for T in th.enumerate_cells(3):
        SX = P.sigma_J(P.representable(T, 3, True), 4)
        for S in th.enumerate_cells(4):
            nd = P.nondegenerate(SX, S)
            if S.degree == 0:
                want, got = 1, len(nd)
            elif S.width == 1:
                want = sum(1 for f in th.hom(S.children[0], T) if is_mono(f))
                got = len([x for x in nd if x])
            else:
                want, got = 0, len([x for x in nd if x])
            checked += 1
            mismatches += got != want
    if mismatches:
        return False, f"{mismatches} of {checked} counts differ"
    return True, f"{checked} (T, S) counts match"


# -- 10 ---------------------------------------------------------------------

def suspension_monos():
    n_boundary = n_pushout = 0
    for T in th.enumerate_cells(3):
        if T.degree == 0:
            continue
        B, inc = P.boundary(T, T.degree)
        if not P.is_mono(P.sigma_J_map(inc, T.degree + 1)):
            return False, f"boundary inclusion of {T} stops being mono"
        n_boundary += 1
    N = 2
    bases = [P.point(N), P.circle(N), P.boundary(th.globe(2), N)[0], P.sphere(th.globe(2), N)]
    for A in bases:
        for T in th.enumerate_cells(N):
            if T.degree == 0:
                continue
            B, _ = P.boundary(T, N)
            for phi in P.enumerate_maps(B, A, limit=6):
                Q, j = P.attach_cell(A, T, phi)
                if not P.is_mono(j):
                    return False, "attaching a cell gave a non-mono"
                if not P.is_mono(P.sigma_J_map(j, N + 1)):
                    return False, f"attaching {T} to {A.name} stops being mono"
                n_pushout += 1
                for T2 in th.enumerate_cells(N):
                    if T2.degree == 0:
                        continue
                    B2, _ = P.boundary(T2, N)
                    for psi in P.enumerate_maps(B2, Q, limit=2):
                        Q2, j2 = P.attach_cell(Q, T2, psi)
                        composite = P.compose_maps(j2, j)
                        if not P.is_mono(P.sigma_J_map(composite, N + 1)):
                            return False, "a two-cell attachment stops being mono"
                        n_pushout += 1
    N = 3
    for A in (P.point(N), P.circle(N), P.sphere(th.globe(2), N)):
        for T in th.enumerate_cells(N):
            if T.degree == 0:
                continue
            B, _ = P.boundary(T, N)
            for phi in P.enumerate_maps(B, A, limit=4):
                Q, j = P.attach_cell(A, T, phi)
                if not P.is_mono(j) or not P.is_mono(P.sigma_J_map(j, N + 1)):
                    return False, f"attaching {T} to {A.name} at bound 3 stops being mono"
                n_pushout += 1
    return True, f"{n_boundary} boundary inclusions, {n_pushout} pushout monos"


# -- 11 ---------------------------------------------------------------------

def _adjunction_pairs():
    N = 2
    A101 = parse_cell("[0 0]")
    Xs = [P.representable(th.POINT, N), P.representable(th.globe(1), N), P.representable(A101, N),
          P.boundary(th.globe(2), N)[0], P.circle(N)]
    Ys = [P.circle(N + 1), P.sphere(th.globe(2), N + 1), P.sphere(A101, N + 1)]
    return N, [(X, Y) for X in Xs for Y in Ys]


def suspension_loop_adjunction():
    N, pairs = _adjunction_pairs()
    sizes = []
    for X, Y in pairs:
        SX = P.sigma_J(X, N + 1)
        OY = P.omega(Y)
        left = P.enumerate_maps(SX, Y)
        right = P.enumerate_maps(X, OY)
        if len(left) != len(right):
            return False, f"|Maps(Sigma {X.name}, {Y.name})| = {len(left)} but {len(right)} on the other side"
        flats = [P.adjunct_flat(f, X, OY) for f in left]
        if not all(P.is_natural(g) for g in flats) or set(flats) != set(right):
            return False, f"flat is not a bijection for ({X.name}, {Y.name})"
        for f, g in zip(left, flats):
            if P.adjunct_sharp(g, SX, Y) != f:
                return False, f"sharp does not invert flat for ({X.name}, {Y.name})"
        for g in right:
            if P.adjunct_flat(P.adjunct_sharp(g, SX, Y), X, OY) != g:
                return False, f"flat does not invert sharp for ({X.name}, {Y.name})"
        sizes.append(len(left))
    return True, f"{len(pairs)} pairs, hom sizes {sorted(Counter(sizes).items())}"


# -- 12 ---------------------------------------------------------------------

def comparison_map():
    N = 3
    for T in th.enumerate_cells(2):
        c = P.suspension_comparison(T, N)
        if not P.is_natural(c):
            return False, f"comparison at {T} is not a presheaf map"
    T = parse_cell("[0 0]")
    universal = P.suspension_comparison(T, N)
    piecewise = P.suspension_comparison_piecewise(T, N)
    if universal.comps != piecewise.comps:
        return False, "piecewise and universal comparison maps differ on [0 0]"
    total = bad = 0
    cells = th.enumerate_cells(2)
    for S, T2 in itertools.product(cells, repeat=2):
        for a in th.hom(S, T2):
            total += 1
            top, bottom = P.comparison_square(a, N)
            bad += top.comps != bottom.comps
    if bad:
        return False, f"descends and matches the piecewise map; {bad} of {total} naturality squares fail"
    return True, f"descends, matches the piecewise map, {total} squares commute"


# -- 13 ---------------------------------------------------------------------

def spectra_checks():
    for n in range(5):
        got = face_pattern(n)
        if got != tuple(range(n + 1)):
            pattern_msg = f"face pattern at n={n} is {got}, expected d^0..d^{n}"
            break
    else:
        pattern_msg = ""
    cases = 0
    for z, w, u in itertools.product(range(-2, 3), repeat=3):
        A = stable_hom(z, w, 3)
        B = stable_hom(w, u, 3)
        for a in A:
            if stable_map(a.level + 1, K(a.map)) != a:
                return False, f"normal form of {a} is not K-invariant"
            for b in B:
                c = stable_compose(b, a)
                for k in range(max(a.level, b.level), 4):
                    cases += 1
                    if stable_map(k, simplex.compose(b.at_level(k), a.at_level(k))) != c:
                        return False, f"composite of {b} and {a} depends on the level"
    S0 = P.representable(P.simplex_cell(0), 2, True, "simplicial")
    ok, report = is_kan_spectrum(suspension_spectrum_prefix(S0, 3).window)
    if not ok:
        return False, "sphere prefix is not a Kan spectrum: " + "; ".join(report.lines())
    if pattern_msg:
        return False, f"{pattern_msg}; congruence ({cases} cases) and sphere prefix pass"
    return True, f"face pattern n <= 4, {cases} congruence cases, sphere prefix certified"


CRITERIA = [
    (1, "Gamma laws and pullback universal property", gamma_laws_and_pullbacks, 30),
    (2, "Theta composition laws and hom closure", theta_composition, 60),
    (3, "globular sum round trip", globular_round_trip, 120),
    (4, "skeletal factorization and coface chains", skeletal_factorization, 120),
    (5, "coface pullbacks against the oracle", coface_pullbacks, 120),
    (6, "boundary coequalizer against coface images", boundary_coequalizer, 120),
    (7, "collapse splittings and adjunction", collapse_splittings, 120),
    (8, "Eckmann-Hilton naturality", eckmann_hilton_naturality, 120),
    (9, "suspension cell census", suspension_census, 120),
    (10, "suspension preserves monos", suspension_monos, 120),
    (11, "suspension-loop adjunction", suspension_loop_adjunction, 120),
    (12, "comparison map", comparison_map, 120),
    (13, "spectra", spectra_checks, 120),
]


def run_criterion(fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s, limit {limit}s"
    return ok, detail, elapsed


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    ok, detail, elapsed = run_criterion(fn, limit)
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail} ({elapsed:.1f}s)")
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for number, title, fn, limit in CRITERIA:
        ok, detail, elapsed = run_criterion(fn, limit)
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail} ({elapsed:.1f}s)", flush=True)
    sys.exit(1 if failures else 0)
