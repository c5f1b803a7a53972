import itertools

from hypothesis import given, strategies as st

from thetacat import presheaf as P
from thetacat import theta as th
from thetacat.spectra import (K, KanSpectrumWindow, StableCell, face_pattern, is_kan_spectrum,
                              sigma_K, sigma_K_wedge, sphere_prefix_counts, stable_cell_normalize,
                              stable_coface, stable_codegeneracy, stable_compose, stable_hom,
                              stable_identity, stable_map, stable_theta_compose, stable_theta_map,
                              suspension_spectrum_prefix, window_from_text, window_to_text)
from thetacat.syntax import parse_cell

BAD_WINDOW = """window 0..1 opbound=1
deg 0 : 2
deg 1 : 2
d 0 1 : (0 1)
d 1 1 : (0 1)
s 0 0 : (0 1)
s 1 0 : (0 1)
"""


def _s0(N=2):
    return P.representable(P.simplex_cell(0), N, True, "simplicial")


@st.composite
def stable_maps(draw):
    z = draw(st.integers(-2, 2))
    w = draw(st.integers(-2, 2))
    maps = stable_hom(z, w, 2)
    return draw(st.sampled_from(maps)) if maps else stable_identity(z)


@given(stable_maps())
def test_normal_form_is_K_invariant(a):
    assert stable_map(a.level + 1, K(a.map)) == a
    assert a.at_level(a.level + 2).src == a.src_degree + a.level + 2


@given(stable_maps())
def test_stable_units(a):
    assert stable_compose(a, stable_identity(a.src_degree)) == a
    assert stable_compose(stable_identity(a.tgt_degree), a) == a


def test_stable_cosimplicial_identity():
    for z in range(-2, 2):
        for i in range(4):
            for j in range(i):
                lhs = stable_compose(stable_coface(z + 1, i), stable_coface(z, j))
                rhs = stable_compose(stable_coface(z + 1, j), stable_coface(z, i - 1))
                assert lhs == rhs
        assert stable_compose(stable_codegeneracy(z, 0), stable_coface(z, 0)) == stable_identity(z)


@given(st.integers(-3, 3), st.sampled_from(th.enumerate_cells(4)))
def test_stable_cells_absorb_J(z, T):
    assert stable_cell_normalize(z, T) == stable_cell_normalize(z - 1, th.shift_cell(T))


def test_stable_cell_examples():
    assert stable_cell_normalize(0, th.globe(2)) == StableCell(2, th.POINT)
    A = parse_cell("[0 0]")
    assert stable_cell_normalize(1, A) == StableCell(1, A)


def test_stable_theta_maps_absorb_J():
    cells = th.enumerate_cells(2)
    for S, T in itertools.product(cells, repeat=2):
        for f in th.hom(S, T):
            assert stable_theta_map(0, f) == stable_theta_map(-1, th.shift_map(f))
            g = stable_theta_map(0, th.identity(T))
            assert stable_theta_compose(g, stable_theta_map(0, f)) == stable_theta_map(0, f)


def test_sigma_K_matches_the_wedge():
    for n in range(3):
        X = P.representable(P.simplex_cell(n), n + 1, True, "simplicial")
        SX, W = sigma_K(X), sigma_K_wedge(X)
        assert SX.sizes == W.sizes


def test_face_pattern():
    for n in range(1, 5):
        assert face_pattern(n) == tuple(range(n + 1))
    # both faces of the circle's cell hit the collapsed part
    assert face_pattern(0) == ()


def test_sphere_prefix_counts():
    pre = suspension_spectrum_prefix(_s0(3), 3)
    for n, X in enumerate(pre.spaces):
        for m in range(X.bound + 1):
            assert len([x for x in P.nondegenerate(X, P.simplex_cell(m)) if x]) == \
                (sphere_prefix_counts(n, m) if m == n else 0)


def test_sphere_window_is_kan():
    ok, report = is_kan_spectrum(suspension_spectrum_prefix(_s0(), 3).window)
    assert ok and report.ok


def test_window_text_round_trip():
    W = suspension_spectrum_prefix(_s0(), 2).window
    V = window_from_text(window_to_text(W))
    assert isinstance(V, KanSpectrumWindow)
    assert (V.z_min, V.z_max, V.opbound) == (W.z_min, W.z_max, W.opbound)
    assert V.sizes == W.sizes and V.faces == W.faces
    assert V.degeneracies == W.degeneracies and V.vanishing == W.vanishing


def test_counterexample_window_is_rejected():
    ok, report = is_kan_spectrum(window_from_text(BAD_WINDOW))
    assert not ok
    assert any("uncertified z=1 cell=1" in line for line in report.lines())


def test_contradicted_vanishing_bound_is_refuted():
    ok, report = is_kan_spectrum(window_from_text(BAD_WINDOW + "van 1 1 : 0\n"))
    assert not ok
    assert any("refuted" in line for line in report.lines())


def test_broken_identity_is_structural():
    text = BAD_WINDOW.replace("d 1 1 : (0 1)", "d 1 1 : (0 0)")
    ok, report = is_kan_spectrum(window_from_text(text))
    assert not ok
    assert any("structural" in line or "identity" in line for line in report.lines())
