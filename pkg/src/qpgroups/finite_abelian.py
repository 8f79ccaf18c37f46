"""Finite abelian groups and the splitting criterion nG ∩ K = nK.

``torsion_split(G, K)`` decides whether the subgroup K is a direct summand
of G.  When ``nG ∩ K = nK`` for every n the answer is constructive: the
relation lattice of G/K is put in Smith form, each basis vector is sent to a
d-th root inside K, and the result is an explicit retraction G -> K.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import DomainError, NotASubgroup


class FiniteAbelian:
    """``Z/n_1 x ... x Z/n_k`` with ``n_1 | n_2 | ... | n_k``."""

    def __init__(self, orders):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise DomainError("cyclic orders must be positive", orders=orders)
        orders = tuple(n for n in orders if n > 1)
        for a, b in zip(orders, orders[1:]):
            if b % a:
                raise DomainError("orders must divide successively", orders=orders)
        self.orders = orders

    def __repr__(self):
        return f"FiniteAbelian({list(self.orders)})"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelian) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        out = 1
        for n in self.orders:
            out *= n
        return out

    @property
    def exponent(self):
        return self.orders[-1] if self.orders else 1

    @property
    def zero(self):
        return (0,) * self.rank

    def element(self, g):
        g = tuple(int(c) for c in g)
        if len(g) != self.rank:
            raise DomainError(f"expected {self.rank} coordinates", element=list(g))
        return tuple(c % n for c, n in zip(g, self.orders))

    def add(self, g, h):
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def neg(self, g):
        return tuple(-a % n for a, n in zip(g, self.orders))

    def scale(self, k, g):
        return tuple(k * a % n for a, n in zip(g, self.orders))

    def elements(self):
        return list(product(*(range(n) for n in self.orders)))

    def generators(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def span(self, gens):
        """The subgroup generated by ``gens`` as a frozenset."""
        out = {self.zero}
        for g in gens:
            g = self.element(g)
            if g in out:
                continue
            multiples = [self.zero]
            m = g
            while m != self.zero:
                multiples.append(m)
                m = self.add(m, g)
            out = {self.add(s, m) for s in out for m in multiples}
        return frozenset(out)

    def multiple(self, n, S=None):
        """The set nS (nG when S is omitted)."""
        S = self.elements() if S is None else S
        return frozenset(self.scale(n, s) for s in S)


def as_subgroup(G, elems):
    """Check that ``elems`` is a subgroup of G and return it as a frozenset."""
    S = frozenset(G.element(e) for e in elems)
    if G.zero not in S:
        raise NotASubgroup("the set does not contain 0")
    for a in S:
        for b in S:
            if G.add(a, G.neg(b)) not in S:
                raise NotASubgroup("the set is not closed under subtraction",
                                   witness=[list(a), list(b)])
    return S


@dataclass(frozen=True)
class Split:
    """A retraction G -> K, given by the images of the standard generators."""

    group: FiniteAbelian
    images: tuple

    def apply(self, g):
        G = self.group
        out = G.zero
        for c, img in zip(G.element(g), self.images):
            out = G.add(out, G.scale(c, img))
        return out

    def to_json(self):
        return {"split": True, "retraction": [list(k) for k in self.images]}


@dataclass(frozen=True)
class NonSplit:
    """``n`` with nG ∩ K != nK and a witness in the difference."""

    n: int
    witness: tuple

    def to_json(self):
        return {"split": False, "n": self.n, "witness": list(self.witness)}


def generating_set(G, K):
    """A short list of elements of K that generate it."""
    gens, span = [], frozenset([G.zero])
    for g in sorted(K, key=lambda x: -len(G.span([x]))):
        if g not in span:
            gens.append(g)
            span = G.span(gens)
            if len(span) == len(K):
                break
    return gens


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def splitting_obstruction(G, K):
    """First n | exp(G) with nG ∩ K != nK, with a witness, or None."""
    for n in _divisors(G.exponent):
        bad = (G.multiple(n) & K) - G.multiple(n, K)
        if bad:
            return NonSplit(n, min(bad))
    return None


def torsion_split(G, K, generators=True):
    """Split(retraction) or NonSplit(n, witness) for K inside G.

    ``K`` is a list of generators, or the full element set when
    ``generators`` is false (then closure is checked).
    """
    K = G.span(K) if generators else as_subgroup(G, K)
    bad = splitting_obstruction(G, K)
    if bad is not None:
        return bad
    k = G.rank
    if k == 0:
        return Split(G, ())
    # relation lattice of G/K inside Z^k: lifts of K plus the orders
    rows = [list(g) for g in generating_set(G, K)]
    rows += [[G.orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    M = Matrix(rows)
    S, _, V = smith_normal_decomp(M, domain=ZZ)
    W = V.inv()
    images_f = []
    for j in range(k):
        d = int(S[j, j])
        f = [int(c) for c in W.row(j)]
        target = G.scale(d, G.element(f))
        # d * f lies in K; pick a d-th root of it inside K
        root = next((x for x in sorted(K) if G.scale(d, x) == target), None)
        if root is None:  # excluded by the criterion
            raise AssertionError("criterion holds but no root found")
        images_f.append(root)
    images = []
    for i in range(k):
        img = G.zero
        for j in range(k):
            img = G.add(img, G.scale(int(V[i, j]), images_f[j]))
        images.append(img)
    split = Split(G, tuple(images))
    _check_retraction(G, K, split)
    return split


def _check_retraction(G, K, split):
    for i, n in enumerate(G.orders):
        if G.scale(n, split.images[i]) != G.zero or split.images[i] not in K:
            raise AssertionError("retraction is not a homomorphism into K")
    for x in K:
        if split.apply(x) != x:
            raise AssertionError("retraction does not fix K")


def abelian_groups(order):
    """All invariant-factor lists of abelian groups of the given order."""
    out = []

    def build(rest, last, acc):
        if rest == 1:
            out.append(tuple(acc))
            return
        for n in _divisors(rest):
            if n > 1 and n % last == 0:
                build(rest // n, n, acc + [n])

    build(order, 1, [])
    return out


def subgroups(G):
    """All subgroups of G as frozensets, closing {0} under one generator at a time."""
    elems = G.elements()
    index = {g: i for i, g in enumerate(elems)}
    table = np.array([[index[G.add(g, h)] for h in elems] for g in elems], dtype=np.int32)
    cyclic = [np.array(sorted(index[c] for c in G.span([g]))) for g in elems]
    zero = frozenset([index[G.zero]])
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for S in frontier:
            rows = np.fromiter(S, dtype=np.int64)
            for g, C in enumerate(cyclic):
                if g in S:
                    continue
                T = frozenset(np.unique(table[np.ix_(rows, C)]).tolist())
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    out = [frozenset(elems[i] for i in S) for S in seen]
    return sorted(out, key=lambda S: (len(S), sorted(S)))
