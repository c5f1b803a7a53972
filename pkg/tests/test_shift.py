import pytest
from hypothesis import given, strategies as st

from thetacat import theta as th
from thetacat.shift import collapse, collapse_maps, eckmann_hilton, eckmann_hilton_verbatim
from thetacat.skeletal import is_epi
from thetacat.syntax import parse_cell

CELLS = th.enumerate_cells(4)


@given(st.integers(1, 4), st.sampled_from(CELLS))
def test_collapse_is_truncated_and_idempotent(p, T):
    K = collapse(p, T)
    assert K.height <= p
    assert collapse(p, K) is K
    if T.height <= p:
        assert K is T


def test_collapse_of_a_globe():
    assert collapse(1, th.globe(3)) is th.globe(1)
    assert collapse(2, parse_cell("[[0] 0]")) is parse_cell("[[0] 0]")


@given(st.integers(1, 4), st.sampled_from(CELLS))
def test_collapse_maps_types(p, T):
    data = collapse_maps(p, T)
    assert data.c_map.src is T and data.c_map.tgt is data.cell
    assert is_epi(data.c_map)


@given(st.sampled_from(th.enumerate_cells(3)))
def test_eckmann_hilton_type(T):
    E = eckmann_hilton(T)
    assert E.src is th.shift_cell(T) and E.tgt is T
    # only globes give a degeneracy; any branching makes E mixed
    assert is_epi(E) == (T is th.globe(T.degree))


def test_eckmann_hilton_on_the_arrow():
    # the shifted arrow collapses onto the arrow through its identity degeneracy
    assert eckmann_hilton(th.globe(1)) is th.globe_i(1)


def test_verbatim_pieces_fail_to_glue():
    with pytest.raises(ValueError):
        eckmann_hilton_verbatim(parse_cell("[0 [0]]"))
    assert eckmann_hilton_verbatim(th.globe(2)) is eckmann_hilton(th.globe(2))
