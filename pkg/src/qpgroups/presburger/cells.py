"""Cell decomposition of Presburger-definable subsets of Z.

A cell is either a point ``{a}`` or a stripe ``(lo, hi) ∩ (nZ + r)`` with
open bounds.  Stripes are stored in a canonical shape: ``lo`` and ``hi`` are
the first excluded members of the progression on either side, so both are
congruent to ``r`` modulo ``n`` when finite.
"""

from dataclasses import dataclass
from math import gcd, inf

import numpy as np

from ..errors import DomainError
from .qe import DEFAULT_NODE_LIMIT, eliminate_quantifiers, lcm
from .syntax import (And, Const, Div, Eq, Le, Lin, Not, Or, free_vars, to_text)
from .parser import parse


@dataclass(frozen=True)
class Point:
    a: int

    def __contains__(self, x):
        return x == self.a

    def to_json(self):
        return {"point": self.a}

    @property
    def sort_key(self):
        return (self.a, 0, self.a, 1)


@dataclass(frozen=True)
class Stripe:
    lower: float  # int or -inf
    upper: float  # int or +inf
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1 or not 0 <= self.residue < self.modulus:
            raise DomainError("bad stripe congruence", modulus=self.modulus,
                              residue=self.residue)

    def __contains__(self, x):
        return self.lower < x < self.upper and x % self.modulus == self.residue

    @property
    def is_bounded(self):
        return self.lower != -inf and self.upper != inf

    def first(self):
        """Least element (requires a finite lower bound)."""
        n, r = self.modulus, self.residue
        return self.lower + 1 + (r - self.lower - 1) % n

    def last(self):
        n, r = self.modulus, self.residue
        return self.upper - 1 - (self.upper - 1 - r) % n

    def to_json(self):
        return {"lo": "-inf" if self.lower == -inf else self.lower,
                "hi": "+inf" if self.upper == inf else self.upper,
                "mod": self.modulus, "res": self.residue}

    @property
    def sort_key(self):
        lo = self.lower if self.lower != -inf else -10 ** 30
        return (lo, 1, self.residue, self.modulus)


def cell_from_json(obj):
    if "point" in obj:
        return Point(int(obj["point"]))
    lo = -inf if obj["lo"] == "-inf" else int(obj["lo"])
    hi = inf if obj["hi"] == "+inf" else int(obj["hi"])
    return Stripe(lo, hi, int(obj["mod"]), int(obj["res"]))


def cells_to_json(cells):
    return [c.to_json() for c in cells]


def canonical_sort(cells):
    return sorted(cells, key=lambda c: c.sort_key)


def cells_contain(cells, x):
    return any(x in c for c in cells)


def formula_of_cells(cells, var="x"):
    """A quantifier-free formula defining the union of ``cells``."""
    x = Lin.var(var)
    parts = []
    for c in cells:
        if isinstance(c, Point):
            parts.append(Eq(x.shift(-c.a)))
            continue
        conj = []
        if c.lower != -inf:
            conj.append(Le((Lin.constant(c.lower) - x).shift(1)))
        if c.upper != inf:
            conj.append(Le((x - Lin.constant(c.upper)).shift(1)))
        if c.modulus > 1:
            conj.append(Div(c.modulus, x.shift(-c.residue)))
        parts.append(And(tuple(conj)) if conj else Const(True))
    if not parts:
        return Const(False)
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


# -- evaluation of a quantifier-free formula in one variable -------------------

def _eval_vec(f, xs, var):
    if isinstance(f, Const):
        return np.full(xs.shape, f.value)
    if isinstance(f, (Le, Eq, Div)):
        c = f.term.coef(var)
        vals = c * xs + f.term.const
        if isinstance(f, Le):
            return vals <= 0
        if isinstance(f, Eq):
            return vals == 0
        return vals % f.modulus == 0
    if isinstance(f, Not):
        return ~_eval_vec(f.arg, xs, var)
    if isinstance(f, And):
        out = np.ones(xs.shape, dtype=bool)
        for a in f.args:
            out &= _eval_vec(a, xs, var)
        return out
    if isinstance(f, Or):
        out = np.zeros(xs.shape, dtype=bool)
        for a in f.args:
            out |= _eval_vec(a, xs, var)
        return out
    raise TypeError(f)


def _atoms(f, out):
    if isinstance(f, (Le, Eq, Div)):
        out.append(f)
    elif isinstance(f, Not):
        _atoms(f.arg, out)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _atoms(a, out)
    return out


class PeriodicSet:
    """A subset of Z given by a table on ``[A - L, B + L]`` and L-periodic tails.

    Membership is L-periodic on ``(-inf, A]`` and on ``[B, inf)``.
    """

    def __init__(self, table, start, A, B, L):
        self.table = table
        self.start = start
        self.A, self.B, self.L = A, B, L

    def __contains__(self, x):
        if x < self.A:
            x = self.A - (self.A - x) % self.L
        elif x > self.B:
            x = self.B + (x - self.B) % self.L
        return bool(self.table[x - self.start])

    @classmethod
    def from_formula(cls, f, var):
        atoms = _atoms(f, [])
        crit = []
        L = 1
        for a in atoms:
            c = a.term.coef(var)
            k = a.term.const
            if c == 0:
                continue
            if isinstance(a, Div):
                L = lcm(L, a.modulus // gcd(a.modulus, c))
            elif isinstance(a, Le):
                t = (-k) // c if c > 0 else -((-k) // (-c))
                crit.extend((t - 1, t, t + 1))
            elif k % c == 0:
                e = -k // c
                crit.extend((e - 1, e, e + 1))
        A = min(crit) - 1 if crit else 0
        B = max(crit) + 1 if crit else 0
        start = A - 2 * L
        xs = np.arange(start, B + 2 * L + 1, dtype=object)
        magnitude = max([abs(start), abs(B + 2 * L)] + [1])
        big = max([abs(a.term.coef(var)) + abs(a.term.const) for a in atoms] + [1])
        if big * magnitude < 2 ** 62:
            xs = xs.astype(np.int64)
        table = _eval_vec(f, xs, var).astype(bool)
        return cls(table, start, A, B, L)

    @classmethod
    def from_cells(cls, cells):
        finite = []
        L = 1
        for c in cells:
            if isinstance(c, Point):
                finite.append(c.a)
            else:
                L = lcm(L, c.modulus)
                finite.extend(b for b in (c.lower, c.upper) if b not in (inf, -inf))
        A = min(finite) - 1 if finite else 0
        B = max(finite) + 1 if finite else 0
        start = A - 2 * L
        table = np.array([cells_contain(cells, x) for x in range(start, B + 2 * L + 1)],
                         dtype=bool)
        return cls(table, start, A, B, L)


def _minimal_period(pattern):
    L = len(pattern)
    for d in range(1, L + 1):
        if L % d == 0 and all(pattern[i] == pattern[i % d] for i in range(L)):
            return d
    return L


def canonical_cells(S):
    """Canonical pairwise-disjoint cell list for a :class:`PeriodicSet`."""
    A, B, L = S.A, S.B, S.L
    cells = []

    def member(x):
        return x in S and not cells_contain(cells, x)

    # infinite cells to the right, with the minimal period of the right tail
    pattern = [x in S for x in range(B, B + L)]
    P = _minimal_period(pattern)
    left_full = {}
    for c in range(B, B + P):
        if not (c in S):
            continue
        e = c
        lo = None
        while True:
            nxt = e - P
            if nxt <= A:
                key = nxt % P
                if key not in left_full:
                    left_full[key] = all(y in S for y in range(A - L + 1, A + 1)
                                         if (y - nxt) % P == 0)
                if left_full[key]:
                    lo = -inf
                    break
            if not (nxt in S):
                lo = nxt
                break
            e = nxt
        cells.append(Stripe(lo, inf, P, c % P))

    # infinite cells to the left of what remains; below every finite right
    # cell the remainder is again L-periodic
    A = min([A] + [c.lower for c in cells if c.lower != -inf]) - 1
    pattern = [member(x) for x in range(A - L + 1, A + 1)]
    P = _minimal_period(pattern)
    for c in range(A - P + 1, A + 1):
        if not member(c):
            continue
        e = c
        while member(e + P):
            e += P
        cells.append(Stripe(-inf, e + P, P, c % P))

    # finite remainder: greedy longest progressions from the left
    rest = sorted(x for x in range(A + 1 - L, B + L) if member(x))
    remaining = set(rest)
    for a in rest:
        if a not in remaining:
            continue
        top = max(remaining)
        best_len, best_d = 1, None
        for b in sorted(remaining):
            if b <= a:
                continue
            d = b - a
            if (top - a) // d + 1 <= best_len:
                break
            k = 2
            while a + k * d in remaining:
                k += 1
            if k > best_len:
                best_len, best_d = k, d
        if best_d is None:
            cells.append(Point(a))
            remaining.discard(a)
        else:
            cells.append(Stripe(a - best_d, a + best_len * best_d, best_d, a % best_d))
            for j in range(best_len):
                remaining.discard(a + j * best_d)
    return canonical_sort(cells)


def decompose(f, var=None, node_limit=DEFAULT_NODE_LIMIT):
    """Cell decomposition of the set defined by ``f`` (a formula or its text)."""
    if isinstance(f, str):
        f = parse(f)
    fv = free_vars(f)
    if var is None and not fv:
        var = "x"  # e.g. "x = x": the variable cancels syntactically
    if var is None:
        if len(fv) != 1:
            raise DomainError(f"expected exactly one free variable, found {sorted(fv)}",
                              free=sorted(fv))
        var = next(iter(fv))
    elif fv - {var}:
        raise DomainError(f"unexpected free variables {sorted(fv - {var})}",
                          free=sorted(fv))
    qf = eliminate_quantifiers(f, node_limit)
    return canonical_cells(PeriodicSet.from_formula(qf, var))


@dataclass(frozen=True)
class NotAGroup:
    """Evidence that a union of cells is not a subgroup of Z."""

    reason: str            # "missing_zero" or "not_closed"
    witness: tuple = ()    # (a, b) with a, b in the set and a - b outside

    def to_json(self):
        return {"group": False, "reason": self.reason, "witness": list(self.witness)}


def recognize_subgroup(cells):
    """Return n with ``union(cells) == nZ`` (n = 0 for {0}) or a :class:`NotAGroup`."""
    S = PeriodicSet.from_cells(cells)
    if 0 not in S:
        return NotAGroup("missing_zero", (0,))
    W = max(abs(S.A), abs(S.B)) + 2 * S.L + 1
    elems = [x for x in range(-W, W + 1) if x in S]
    infinite = any(isinstance(c, Stripe) and not c.is_bounded for c in cells)
    n = 0
    for x in elems:
        n = gcd(n, x)
    if infinite and n > 0:
        target = [Stripe(-inf, inf, n, 0)]
        if canonical_cells(S) == target:
            return n
    elif not infinite and elems == [0]:
        return 0
    elems.sort(key=lambda x: (abs(x), x))
    for a in elems:
        for b in elems:
            if (a - b) not in S:
                return NotAGroup("not_closed", (a, b))
    raise AssertionError("no closure witness found inside the search window")


__all__ = ["Point", "Stripe", "PeriodicSet", "NotAGroup", "canonical_cells",
           "decompose", "recognize_subgroup", "formula_of_cells", "cells_to_json",
           "cell_from_json", "cells_contain", "canonical_sort", "to_text"]
