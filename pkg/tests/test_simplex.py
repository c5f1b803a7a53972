import pytest
from hypothesis import given, strategies as st

from thetacat import simplex


@st.composite
def maps(draw, max_n=5):
    m = draw(st.integers(0, max_n))
    n = draw(st.integers(0, max_n))
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return simplex.SimplexMap(m, n, vals)


def test_hom_sizes_are_binomial():
    from math import comb
    for m in range(4):
        for n in range(4):
            assert len(simplex.hom(m, n)) == comb(m + n + 1, m + 1)


def test_rejects_non_monotone():
    with pytest.raises(ValueError):
        simplex.SimplexMap(1, 1, (1, 0))
    with pytest.raises(ValueError):
        simplex.SimplexMap(0, 1, (2,))


@given(maps())
def test_factorization(f):
    e, m = simplex.factorize(f)
    assert simplex.compose(m, e) == f
    assert e.is_surjective() and m.is_injective()


@given(maps())
def test_words_rebuild_the_map(f):
    e, m = simplex.factorize(f)
    assert simplex.word_to_map(e.tgt, simplex.coface_word(m), simplex.codegeneracy_word(e)) == f


@given(maps())
def test_text_round_trip(f):
    text = f"[{f.src}]->[{f.tgt}]:({' '.join(map(str, f.values))})"
    assert simplex.parse_map(text) == f


def test_cosimplicial_identities():
    for n in range(1, 4):
        for i in range(n + 2):
            for j in range(i):
                lhs = simplex.compose(simplex.coface(n + 1, i), simplex.coface(n, j))
                rhs = simplex.compose(simplex.coface(n + 1, j), simplex.coface(n, i - 1))
                assert lhs == rhs
