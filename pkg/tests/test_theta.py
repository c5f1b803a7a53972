import itertools

from hypothesis import given, strategies as st

from thetacat import theta as th
from thetacat.syntax import parse_cell, parse_map

CELLS3 = th.enumerate_cells(3)


def test_cell_counts():
    assert [len(th.cells_of_degree(d)) for d in range(5)] == [1, 1, 2, 5, 14]
    assert len(th.enumerate_cells(6)) == 197


def test_cells_are_interned():
    assert parse_cell("[0 0]") is th.globular_sum_to_cell((1, 0, 1))
    assert parse_cell("[[0]]") is th.globe(2)


def test_hom_counts_small():
    assert len(th.hom(th.globe(1), th.globe(2))) == 4
    assert len(th.hom(th.POINT, th.globe(2))) == 2


@given(st.sampled_from(CELLS3), st.sampled_from(CELLS3))
def test_maps_round_trip_through_text(S, T):
    for f in th.hom(S, T):
        assert parse_map(th.format_map(f)) is f


@given(st.sampled_from(th.enumerate_cells(5)))
def test_shift_raises_globular_sum(T):
    assert th.cell_to_globular_sum(th.shift_cell(T)) == tuple(e + 1 for e in th.cell_to_globular_sum(T))
    assert th.degree(th.shift_cell(T)) == th.degree(T) + 1


def test_shift_is_a_functor():
    cells = th.enumerate_cells(2)
    for S, T, U in itertools.product(cells, repeat=3):
        for f in th.hom(S, T):
            assert th.shift_map(th.identity(S)) is th.identity(th.shift_cell(S))
            for g in th.hom(T, U):
                assert th.shift_map(th.compose(g, f)) is th.compose(th.shift_map(g), th.shift_map(f))


def test_vertices_of_a_globe():
    assert len(th.vertices(th.globe(3))) == 2
    assert len(th.vertices(parse_cell("[0 0 0]"))) == 4


def test_non_strict_sums_are_normalized():
    assert th.normalize_globular_sum((1, 1, 1)) == (1,)
    assert th.normalize_globular_sum((2, 0, 1, 1, 1)) == (2, 0, 1)
    assert th.normalize_globular_sum((2, 1, 2)) == (2, 1, 2)
