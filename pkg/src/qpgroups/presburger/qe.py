"""Quantifier elimination for Presburger arithmetic (Cooper's method)."""

from math import gcd

from ..errors import ResourceLimit
from .syntax import (FALSE, TRUE, And, Const, Div, Eq, Exists, Forall, Le, Lin,
                     Not, Or, size)

DEFAULT_NODE_LIMIT = 10 ** 6


def lcm(a, b):
    return a * b // gcd(a, b)


# -- smart constructors with light simplification ------------------------------

def mk_le(t):
    g = t.content()
    if g == 0:
        return TRUE if t.const <= 0 else FALSE
    if g > 1:
        # g*s + c <= 0  <=>  s + ceil(c/g) <= 0
        t = Lin({v: c // g for v, c in t.coeffs}, -((-t.const) // g))
    return Le(t)


def mk_eq(t):
    g = t.content()
    if g == 0:
        return TRUE if t.const == 0 else FALSE
    if t.const % g:
        return FALSE
    if g > 1:
        t = Lin({v: c // g for v, c in t.coeffs}, t.const // g)
    if t.coeffs[0][1] < 0:
        t = -t
    return Eq(t)


def mk_div(n, t):
    n = abs(n)
    if n == 1:
        return TRUE
    t = Lin({v: c % n for v, c in t.coeffs}, t.const % n)
    if t.is_constant:
        return TRUE if t.const == 0 else FALSE
    g = gcd(n, t.content(), t.const)
    if g > 1:
        n //= g
        t = Lin({v: c // g for v, c in t.coeffs}, t.const // g)
        if n == 1:
            return TRUE
    return Div(n, t)


def mk_not(f):
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Not):
        return f.arg
    if isinstance(f, Le):
        return mk_le((-f.term).shift(1))
    return Not(f)


def mk_and(args):
    out, seen = [], set()
    for a in args:
        parts = a.args if isinstance(a, And) else (a,)
        for b in parts:
            if b == FALSE:
                return FALSE
            if b == TRUE or b in seen:
                continue
            seen.add(b)
            out.append(b)
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else And(tuple(out))


def mk_or(args):
    out, seen = [], set()
    for a in args:
        parts = a.args if isinstance(a, Or) else (a,)
        for b in parts:
            if b == TRUE:
                return TRUE
            if b == FALSE or b in seen:
                continue
            seen.add(b)
            out.append(b)
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else Or(tuple(out))


def nnf(f, negate=False):
    """Negation normal form; negations survive only on Eq and Div atoms."""
    if isinstance(f, Const):
        return Const(f.value != negate)
    if isinstance(f, Le):
        return mk_le((-f.term).shift(1)) if negate else mk_le(f.term)
    if isinstance(f, Eq):
        g = mk_eq(f.term)
        return mk_not(g) if negate else g
    if isinstance(f, Div):
        g = mk_div(f.modulus, f.term)
        return mk_not(g) if negate else g
    if isinstance(f, Not):
        return nnf(f.arg, not negate)
    if isinstance(f, And):
        parts = [nnf(a, negate) for a in f.args]
        return mk_or(parts) if negate else mk_and(parts)
    if isinstance(f, Or):
        parts = [nnf(a, negate) for a in f.args]
        return mk_and(parts) if negate else mk_or(parts)
    raise TypeError(f"nnf expects a quantifier-free formula, got {type(f).__name__}")


# -- elimination ----------------------------------------------------------------

class _Budget:
    def __init__(self, limit):
        self.limit = limit

    def check(self, f):
        n = size(f)
        if n > self.limit:
            raise ResourceLimit(f"intermediate formula has {n} nodes (limit {self.limit})",
                                nodes=n, limit=self.limit)


def _atoms(f, out):
    if isinstance(f, (Le, Eq, Div)):
        out.append(f)
    elif isinstance(f, Not):
        _atoms(f.arg, out)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _atoms(a, out)
    return out


def _map_atoms(f, fn):
    if isinstance(f, Const):
        return f
    if isinstance(f, (Le, Eq, Div)):
        return fn(f, False)
    if isinstance(f, Not):
        return fn(f.arg, True)
    if isinstance(f, And):
        return mk_and([_map_atoms(a, fn) for a in f.args])
    if isinstance(f, Or):
        return mk_or([_map_atoms(a, fn) for a in f.args])
    raise TypeError(f)


def _normalise_coefficient(f, x, l):
    """Scale every atom so that ``x`` appears with coefficient +-1 as ``l*x``."""

    def fn(atom, neg):
        c = atom.term.coef(x)
        if c == 0:
            return mk_not(atom) if neg else atom
        k = l // abs(c)
        t = atom.term.scale(k)
        t = Lin({v: (1 if cc > 0 else -1) if v == x else cc for v, cc in t.coeffs}, t.const)
        if isinstance(atom, Le):
            new = Le(t)
        elif isinstance(atom, Eq):
            new = Eq(t if t.coef(x) > 0 else -t)
        else:
            new = Div(atom.modulus * k, t if t.coef(x) > 0 else -t)
        return Not(new) if neg else new

    return _map_atoms(f, fn)


def _substitute(f, x, term):
    def fn(atom, neg):
        if isinstance(atom, Le):
            new = mk_le(atom.term.subst(x, term))
        elif isinstance(atom, Eq):
            new = mk_eq(atom.term.subst(x, term))
        else:
            new = mk_div(atom.modulus, atom.term.subst(x, term))
        return mk_not(new) if neg else new

    return _map_atoms(f, fn)


def _at_infinity(f, x, sign):
    """Limit of ``f`` as ``x`` -> sign * infinity (sign = -1 or +1)."""

    def fn(atom, neg):
        c = atom.term.coef(x)
        if c == 0 or isinstance(atom, Div):
            return mk_not(atom) if neg else atom
        if isinstance(atom, Le):
            # c*x + r <= 0 holds at -inf iff c > 0
            return TRUE if (c > 0) == (sign < 0) else FALSE
        return TRUE if neg else FALSE

    return _map_atoms(f, fn)


def eliminate(x, f, budget=None):
    """Quantifier-free equivalent of ``exists x. f`` for quantifier-free ``f``."""
    budget = budget or _Budget(DEFAULT_NODE_LIMIT)
    f = nnf(f)
    atoms = [a for a in _atoms(f, []) if a.term.coef(x)]
    if not atoms:
        return f
    l = 1
    for a in atoms:
        l = lcm(l, abs(a.term.coef(x)))
    g = _normalise_coefficient(f, x, l)
    if l > 1:
        g = mk_and([g, Div(l, Lin.var(x))])
    lower, upper = [], []
    delta = 1
    negated = set()
    _collect_negated(g, negated, False)
    for a in _atoms(g, []):
        c = a.term.coef(x)
        if not c:
            continue
        rest = a.term.drop(x)
        if isinstance(a, Div):
            delta = lcm(delta, a.modulus)
        elif isinstance(a, Le):
            if c > 0:
                upper.append((-rest).shift(1))        # x < -rest + 1
            else:
                lower.append(rest.shift(-1))          # rest - 1 < x
        else:
            e = -rest                                 # x = e (or x != e)
            if a in negated:
                lower.append(e)
                upper.append(e)
            if a in _positive_atoms(g):
                lower.append(e.shift(-1))
                upper.append(e.shift(1))
    lower = list(dict.fromkeys(lower))
    upper = list(dict.fromkeys(upper))
    if len(lower) <= len(upper):
        sign, bounds = -1, lower
    else:
        sign, bounds = 1, upper
    limit = _at_infinity(g, x, sign)
    disjuncts = []
    for j in range(1, delta + 1):
        disjuncts.append(_substitute(limit, x, Lin.constant(sign * -j)))
        for b in bounds:
            disjuncts.append(_substitute(g, x, b.shift(-sign * j)))
        out = mk_or(disjuncts)
        if out == TRUE:
            return TRUE
    out = mk_or(disjuncts)
    budget.check(out)
    return out


def _collect_negated(f, out, neg):
    if isinstance(f, Eq) and neg:
        out.add(f)
    elif isinstance(f, Not):
        _collect_negated(f.arg, out, True)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _collect_negated(a, out, neg)


def _positive_atoms(f, out=None):
    if out is None:
        out = set()
    if isinstance(f, Eq):
        out.add(f)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _positive_atoms(a, out)
    return out


def eliminate_quantifiers(f, node_limit=DEFAULT_NODE_LIMIT):
    """Return a quantifier-free formula equivalent to ``f`` over Z."""
    budget = _Budget(node_limit)

    def go(g):
        if isinstance(g, Exists):
            return eliminate(g.var, go(g.body), budget)
        if isinstance(g, Forall):
            return mk_not_nnf(eliminate(g.var, nnf(go(g.body), True), budget))
        if isinstance(g, Not):
            return nnf(go(g.arg), True)
        if isinstance(g, And):
            return mk_and([go(a) for a in g.args])
        if isinstance(g, Or):
            return mk_or([go(a) for a in g.args])
        return nnf(g)

    out = go(f)
    budget.check(out)
    return out


def mk_not_nnf(f):
    return nnf(f, True)
