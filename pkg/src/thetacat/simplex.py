"""The simplex category: monotone maps [m] -> [n] in tabulated form."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
import re


class SimplexMap:
    """A weakly monotone map [src] -> [tgt], stored by its values."""

    __slots__ = ("src", "tgt", "values", "_hash")

    def __init__(self, src: int, tgt: int, values):
        values = tuple(values)
        if src < 0 or tgt < 0:
            raise ValueError("simplex objects are non-negative")
        if len(values) != src + 1:
            raise ValueError(f"expected {src + 1} values, got {len(values)}")
        prev = 0
        for v in values:
            if v < prev or v > tgt:
                raise ValueError(f"not a monotone map into [{tgt}]: {values}")
            prev = v
        self.src = src
        self.tgt = tgt
        self.values = values
        self._hash = hash((src, tgt, values))

    @classmethod
    def _raw(cls, src, tgt, values):
        obj = object.__new__(cls)
        obj.src = src
        obj.tgt = tgt
        obj.values = values
        obj._hash = hash((src, tgt, values))
        return obj

    def __eq__(self, other):
        return (isinstance(other, SimplexMap) and self.src == other.src
                and self.tgt == other.tgt and self.values == other.values)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.src, self.tgt, self.values) < (other.src, other.tgt, other.values)

    def __call__(self, i):
        return self.values[i]

    def __repr__(self):
        return f"SimplexMap({self.src}, {self.tgt}, {self.values})"

    def __str__(self):
        return f"[{self.src}]->[{self.tgt}]:({' '.join(map(str, self.values))})"

    def is_identity(self):
        return self.src == self.tgt and self.values == tuple(range(self.src + 1))

    def is_injective(self):
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def is_surjective(self):
        return self.values[0] == 0 and self.values[-1] == self.tgt and all(
            b - a <= 1 for a, b in zip(self.values, self.values[1:]))


def identity(n: int) -> SimplexMap:
    return SimplexMap._raw(n, n, tuple(range(n + 1)))


def coface(n: int, i: int) -> SimplexMap:
    """d^i : [n-1] -> [n], the injection skipping i."""
    if not 0 <= i <= n or n < 1:
        raise ValueError(f"no coface d^{i} into [{n}]")
    return SimplexMap._raw(n - 1, n, tuple(k if k < i else k + 1 for k in range(n)))


def codegeneracy(n: int, j: int) -> SimplexMap:
    """s^j : [n+1] -> [n], the surjection hitting j twice."""
    if not 0 <= j <= n:
        raise ValueError(f"no codegeneracy s^{j} out of [{n + 1}]")
    return SimplexMap._raw(n + 1, n, tuple(k if k <= j else k - 1 for k in range(n + 2)))


def constant(m: int, n: int, v: int) -> SimplexMap:
    if not 0 <= v <= n:
        raise ValueError(f"vertex {v} not in [{n}]")
    return SimplexMap._raw(m, n, (v,) * (m + 1))


def compose(g: SimplexMap, f: SimplexMap) -> SimplexMap:
    """g . f"""
    if f.tgt != g.src:
        raise ValueError(f"cannot compose {g} after {f}")
    gv = g.values
    return SimplexMap._raw(f.src, g.tgt, tuple(gv[v] for v in f.values))


@lru_cache(maxsize=None)
def _hom(m: int, n: int):
    return tuple(SimplexMap._raw(m, n, vals)
                 for vals in combinations_with_replacement(range(n + 1), m + 1))


def hom(m: int, n: int) -> tuple:
    """All monotone maps [m] -> [n], in lexicographic order of values."""
    if m < 0 or n < 0:
        raise ValueError("simplex objects are non-negative")
    return _hom(m, n)


def factorize(f: SimplexMap):
    """Unique (epi, mono) with f = mono . epi."""
    image = sorted(set(f.values))
    k = len(image) - 1
    pos = {v: r for r, v in enumerate(image)}
    epi = SimplexMap._raw(f.src, k, tuple(pos[v] for v in f.values))
    mono = SimplexMap._raw(k, f.tgt, tuple(image))
    return epi, mono


def coface_word(f: SimplexMap):
    """Indices (i_1, ..., i_r) with f = d^{i_r} ... d^{i_1}; f must be injective.

    The missing values of f, inserted in increasing order.
    """
    if not f.is_injective():
        raise ValueError(f"{f} is not injective")
    missing = [v for v in range(f.tgt + 1) if v not in set(f.values)]
    return tuple(missing)


def codegeneracy_word(f: SimplexMap):
    """Indices (j_1, ..., j_r) with f = s^{j_1} ... s^{j_r}; f must be surjective."""
    if not f.is_surjective():
        raise ValueError(f"{f} is not surjective")
    return tuple(i for i in range(f.src) if f.values[i] == f.values[i + 1])


def word_to_map(n: int, cofaces=(), codegeneracies=()) -> SimplexMap:
    """Rebuild d^{i_r}...d^{i_1} s^{j_1}...s^{j_r} starting from [n]."""
    # codegeneracies applied first, from the innermost outwards
    cur = identity(n + len(codegeneracies))
    m = n + len(codegeneracies)
    for j in reversed(codegeneracies):
        cur = compose(codegeneracy(m - 1, j), cur)
        m -= 1
    for i in cofaces:
        cur = compose(coface(m + 1, i), cur)
        m += 1
    return cur


_MAP_RE = re.compile(r"^\s*\[(\d+)\]\s*->\s*\[(\d+)\]\s*:\s*\(([\d\s]*)\)\s*$")


def parse_map(text: str) -> SimplexMap:
    """Parse ``[m]->[n]:(v0 v1 ... vm)``."""
    m = _MAP_RE.match(text)
    if not m:
        raise ValueError(f"bad simplex map: {text!r}")
    return SimplexMap(int(m.group(1)), int(m.group(2)),
                      [int(v) for v in m.group(3).split()])
