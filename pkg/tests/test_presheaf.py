import itertools

import pytest

from thetacat import presheaf as P
from thetacat import theta as th
from thetacat.syntax import parse_cell

A101 = parse_cell("[0 0]")


def test_representable_is_a_presheaf():
    for T in th.enumerate_cells(2):
        X = P.representable(T, 2)
        P.check_presheaf(X, exhaustive=True)
        for R in X.site.cells:
            assert X.size(R) == len(th.hom(R, T)) + 1


def test_boundary_is_a_proper_subobject():
    for T in th.enumerate_cells(3):
        if T.degree == 0:
            continue
        B, inc = P.boundary(T, T.degree)
        assert P.is_mono(inc) and not P.is_iso(inc)
        # everything at T except the identity, plus the basepoint
        assert B.size(T) == len(th.hom(T, T))


def test_circle_and_its_loops():
    S1 = P.circle(2)
    assert [S1.size(R) for R in (th.POINT, th.globe(1))] == [1, 2]
    OS1 = P.omega(S1)
    assert OS1.size(th.POINT) == 2


def test_suspension_of_the_point_is_trivial():
    SX = P.sigma_J(P.point(1), 2)
    assert all(SX.size(R) == 1 for R in SX.site.cells)


def test_suspension_of_s0_is_the_circle():
    S0 = P.representable(th.POINT, 0)
    assert S0.size(th.POINT) == 2
    S1 = P.sigma_J(S0, 1)
    assert S1.sizes == P.circle(1).sizes


@pytest.mark.parametrize("T", th.enumerate_cells(2), ids=th.format_cell)
def test_wedge_formula(T):
    X = P.representable(T, T.degree, True)
    SX = P.sigma_J(X)
    assert P.is_iso(P.sigma_J_wedge_comparison(SX, P.sigma_J_wedge(X)))


def test_smash_with_s0_is_identity_up_to_iso():
    S0 = P.representable(th.POINT, 1)
    X = P.circle(1)
    Z, q = P.smash(X, S0)
    assert all(Z.size(R) == X.size(R) for R in X.site.cells)


def test_text_round_trip():
    for X in (P.circle(2), P.sphere(A101, 2), P.boundary(th.globe(2), 2)[0]):
        Y = P.from_text(P.to_text(X))
        assert Y.site is X.site
        assert Y.sizes == X.sizes
        for R, S in itertools.product(X.site.cells, repeat=2):
            for a in th.hom(R, S):
                assert Y.act(a) == X.act(a)


def test_attach_cell_rebuilds_the_sphere():
    N = 2
    T = th.globe(2)
    B, _ = P.boundary(T, N)
    pt = P.point(N)
    phi = P.enumerate_maps(B, pt)[0]
    Q, j = P.attach_cell(pt, T, phi)
    assert Q.sizes == P.sphere(T, N).sizes
    assert P.is_mono(j)


def test_enumerate_maps_are_natural():
    X, Y = P.circle(2), P.sphere(th.globe(2), 2)
    maps = P.enumerate_maps(X, Y)
    assert maps and all(P.is_natural(f) for f in maps)
    assert len(set(maps)) == len(maps)


def test_comparison_descends():
    c = P.suspension_comparison(A101, 3)
    assert P.is_natural(c)
    assert c.comps == P.suspension_comparison_piecewise(A101, 3).comps
