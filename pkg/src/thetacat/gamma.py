"""Segal's category Gamma and the functor Delta -> Gamma.

A morphism <n> -> <m> assigns to each i in {1..n} a subset of {1..m};
the subsets are pairwise disjoint.  Composition is
``(sigma . phi)(i) = union of sigma(j) for j in phi(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import re

from .simplex import SimplexMap


class GammaMorphism:
    __slots__ = ("src", "tgt", "assignment", "_hash")

    def __init__(self, src: int, tgt: int, assignment):
        assignment = tuple(frozenset(s) for s in assignment)
        if len(assignment) != src:
            raise ValueError(f"expected {src} subsets, got {len(assignment)}")
        seen = set()
        for s in assignment:
            for j in s:
                if not 1 <= j <= tgt:
                    raise ValueError(f"{j} not in <{tgt}>")
                if j in seen:
                    raise ValueError(f"subsets not disjoint: {assignment}")
                seen.add(j)
        self.src = src
        self.tgt = tgt
        self.assignment = assignment
        self._hash = hash((src, tgt, assignment))

    @classmethod
    def _raw(cls, src, tgt, assignment):
        obj = object.__new__(cls)
        obj.src, obj.tgt, obj.assignment = src, tgt, assignment
        obj._hash = hash((src, tgt, assignment))
        return obj

    def __call__(self, i):
        return self.assignment[i - 1]

    def __eq__(self, other):
        return (isinstance(other, GammaMorphism) and self.src == other.src
                and self.tgt == other.tgt and self.assignment == other.assignment)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GammaMorphism({self.src}, {self.tgt}, {[sorted(s) for s in self.assignment]})"

    def __str__(self):
        inner = ",".join("{" + ",".join(map(str, sorted(s))) + "}" for s in self.assignment)
        return f"<{self.src}>-><{self.tgt}>:{{{inner}}}"


def identity(n: int) -> GammaMorphism:
    return GammaMorphism._raw(n, n, tuple(frozenset((i,)) for i in range(1, n + 1)))


def compose(sigma: GammaMorphism, phi: GammaMorphism) -> GammaMorphism:
    """sigma . phi"""
    if phi.tgt != sigma.src:
        raise ValueError(f"cannot compose {sigma} after {phi}")
    sa = sigma.assignment
    out = []
    for s in phi.assignment:
        acc = frozenset()
        for j in s:
            acc = acc | sa[j - 1]
        out.append(acc)
    return GammaMorphism._raw(phi.src, sigma.tgt, tuple(out))


@lru_cache(maxsize=None)
def hom(n: int, m: int) -> tuple:
    """All morphisms <n> -> <m>: each j in <m> goes to one i in <n> or nowhere."""
    out = []
    for owner in product(range(n + 1), repeat=m):
        subsets = [set() for _ in range(n)]
        for j, i in enumerate(owner, start=1):
            if i:
                subsets[i - 1].add(j)
        out.append(GammaMorphism._raw(n, m, tuple(frozenset(s) for s in subsets)))
    return tuple(out)


@lru_cache(maxsize=None)
def from_simplex(phi: SimplexMap) -> GammaMorphism:
    """F(phi)(i) = {j : phi(i-1) < j <= phi(i)} for phi : [m] -> [n]."""
    v = phi.values
    return GammaMorphism._raw(
        phi.src, phi.tgt,
        tuple(frozenset(range(v[i - 1] + 1, v[i] + 1)) for i in range(1, phi.src + 1)))


@dataclass(frozen=True)
class GammaPullback:
    apex: int
    elements: tuple  # of (I, J) pairs of frozensets
    proj_left: GammaMorphism
    proj_right: GammaMorphism


def pullback(f: GammaMorphism, g: GammaMorphism) -> GammaPullback:
    """Fibre product of a cospan <n> -f-> <l> <-g- <m>.

    Elements are the minimal non-empty pairs (I, J) with
    union f(I) == union g(J); these are the connected components of the
    bipartite incidence between <n> and <m> through <l>.
    """
    if f.tgt != g.tgt:
        raise ValueError("cospan legs must share a target")
    n, m = f.src, g.src
    # union-find over left elements 0..n-1, right elements n..n+m-1
    parent = list(range(n + m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for i, s in enumerate(f.assignment):
        for k in s:
            owner[k] = i
    for j, s in enumerate(g.assignment):
        for k in s:
            if k in owner:
                a, b = find(owner[k]), find(n + j)
                if a != b:
                    parent[a] = b
    groups = {}
    for x in range(n + m):
        groups.setdefault(find(x), []).append(x)
    elements = []
    for members in groups.values():
        I = frozenset(x + 1 for x in members if x < n)
        J = frozenset(x - n + 1 for x in members if x >= n)
        yi = frozenset().union(*(f.assignment[i - 1] for i in I))
        yj = frozenset().union(*(g.assignment[j - 1] for j in J))
        # a component touching a point covered by one leg only is glued to the basepoint
        if yi == yj:
            elements.append((I, J))
    elements.sort(key=lambda p: (sorted(p[0]), sorted(p[1])))
    elements = tuple(elements)
    k = len(elements)
    left = GammaMorphism._raw(k, n, tuple(I for I, _ in elements))
    right = GammaMorphism._raw(k, m, tuple(J for _, J in elements))
    return GammaPullback(k, elements, left, right)


def minimal_pairs(f: GammaMorphism, g: GammaMorphism):
    """Brute force: minimal non-empty (I, J) with equal unions, by subset search."""
    n, m = f.src, g.src

    def union(assign, S):
        return frozenset().union(*(assign[i - 1] for i in S)) if S else frozenset()

    cands = []
    for imask in range(1 << n):
        I = frozenset(i + 1 for i in range(n) if imask >> i & 1)
        for jmask in range(1 << m):
            J = frozenset(j + 1 for j in range(m) if jmask >> j & 1)
            if (I or J) and union(f.assignment, I) == union(g.assignment, J):
                cands.append((I, J))
    minimal = [p for p in cands
               if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in cands)]
    return sorted(minimal, key=lambda p: (sorted(p[0]), sorted(p[1])))


_GAMMA_RE = re.compile(r"^\s*<(\d+)>\s*->\s*<(\d+)>\s*:\s*\{(.*)\}\s*$")


def parse_morphism(text: str) -> GammaMorphism:
    """Parse ``<n>-><m>:{{1,2},{},{3}}``."""
    mt = _GAMMA_RE.match(text)
    if not mt:
        raise ValueError(f"bad gamma morphism: {text!r}")
    n, m, body = int(mt.group(1)), int(mt.group(2)), mt.group(3)
    subsets = re.findall(r"\{([^{}]*)\}", body)
    parsed = [[int(x) for x in s.split(",") if x.strip()] for s in subsets]
    return GammaMorphism(n, m, parsed)
