import itertools

from hypothesis import given, strategies as st

from thetacat import theta as th
from thetacat.presheaf import epi_chain, generator_word
from thetacat.skeletal import (EMPTY, MapClass, boundary_cofaces, classify, coface_factor,
                               coface_pullback, factorizations_by_search, is_coface, is_epi,
                               is_mono, map_degree, skeletal_factorize)

CELLS = th.enumerate_cells(3)
MAPS = [f for S in CELLS for T in CELLS for f in th.hom(S, T)]


@given(st.sampled_from(MAPS))
def test_structural_matches_search(f):
    p, d = skeletal_factorize(f)
    assert factorizations_by_search(f) == [(p, d)]


@given(st.sampled_from(MAPS))
def test_epi_is_a_chain_of_degree_one_epis(f):
    p, _ = skeletal_factorize(f)
    chain = epi_chain(p)
    acc = th.identity(p.src)
    for g in chain:
        assert is_epi(g) and th.degree(g.src) - th.degree(g.tgt) == 1
        acc = th.compose(g, acc)
    assert acc is p


@given(st.sampled_from(MAPS))
def test_generator_word_composes(f):
    acc = th.identity(f.src)
    for g in generator_word(f):
        acc = th.compose(g, acc)
    assert acc is f


def test_identities_are_both():
    for T in CELLS:
        assert is_mono(th.identity(T)) and is_epi(th.identity(T))
        assert classify(th.identity(T)) == MapClass.IDENTITY


def test_boundary_cofaces_lower_degree_by_one():
    for T in th.enumerate_cells(4):
        for d in boundary_cofaces(T):
            assert is_coface(d) and map_degree(d) == 1
            assert coface_factor(d) == (d,)


def test_disjoint_cofaces_have_empty_pullback():
    g1 = th.globe(1)
    s, t = th.hom(th.POINT, g1)
    assert coface_pullback(s, t) is EMPTY
    pb = coface_pullback(s, s)
    assert pb.representable and pb.cell is th.POINT


def test_sphere_boundary_pullbacks_are_not_representable():
    # the source and target 2-cells of a 3-globe meet in the whole 1-sphere
    T = th.globe(3)
    counts = [coface_pullback(f, g) for f, g in itertools.product(boundary_cofaces(T), repeat=2)]
    odd = [pb for pb in counts if pb is not EMPTY and not pb.representable]
    assert len(odd) == 2 and all(pb.width == 1 for pb in odd)
