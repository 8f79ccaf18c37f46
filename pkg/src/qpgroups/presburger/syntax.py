"""Abstract syntax for one-sorted Presburger formulas over Z."""

from dataclasses import dataclass
from math import gcd


class Lin:
    """Integer linear form ``sum(c_i * x_i) + const``."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs=None, const=0):
        items = {}
        for var, c in (coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())):
            if c:
                items[var] = items.get(var, 0) + c
        self.coeffs = tuple(sorted((v, c) for v, c in items.items() if c))
        self.const = const

    @classmethod
    def var(cls, name, coef=1):
        return cls({name: coef})

    @classmethod
    def constant(cls, c):
        return cls(None, c)

    def coef(self, var):
        for v, c in self.coeffs:
            if v == var:
                return c
        return 0

    def vars(self):
        return {v for v, _ in self.coeffs}

    @property
    def is_constant(self):
        return not self.coeffs

    def __add__(self, other):
        d = dict(self.coeffs)
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) + c
        return Lin(d, self.const + other.const)

    def __neg__(self):
        return Lin({v: -c for v, c in self.coeffs}, -self.const)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return Lin({v: k * c for v, c in self.coeffs}, k * self.const)

    def shift(self, k):
        return Lin(self.coeffs, self.const + k)

    def drop(self, var):
        return Lin({v: c for v, c in self.coeffs if v != var}, self.const)

    def subst(self, var, lin):
        c = self.coef(var)
        if not c:
            return self
        return self.drop(var) + lin.scale(c)

    def content(self):
        g = 0
        for _, c in self.coeffs:
            g = gcd(g, c)
        return g

    def evaluate(self, env):
        total = self.const
        for v, c in self.coeffs:
            total = total + c * env[v]
        return total

    def __eq__(self, other):
        return isinstance(other, Lin) and self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self):
        return hash((self.coeffs, self.const))

    def __repr__(self):
        return f"Lin({format_lin(self)})"


def format_lin(t):
    parts = []
    for v, c in t.coeffs:
        if c == 1:
            s = v
        elif c == -1:
            s = f"-{v}"
        else:
            s = f"{c}*{v}"
        parts.append(s)
    if t.const or not parts:
        parts.append(str(t.const))
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Le(Formula):
    """``term <= 0``."""
    term: Lin


@dataclass(frozen=True)
class Eq(Formula):
    """``term = 0``."""
    term: Lin


@dataclass(frozen=True)
class Div(Formula):
    """``modulus | term``."""
    modulus: int
    term: Lin


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


def free_vars(f):
    if isinstance(f, Const):
        return set()
    if isinstance(f, (Le, Eq, Div)):
        return f.term.vars()
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        out = set()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f)


def size(f):
    if isinstance(f, (Const, Le, Eq, Div)):
        return 1
    if isinstance(f, Not):
        return 1 + size(f.arg)
    if isinstance(f, (And, Or)):
        return 1 + sum(size(a) for a in f.args)
    return 1 + size(f.body)


def evaluate(f, env, bound=None):
    """Truth value of a formula under ``env``.

    Quantifiers are only evaluable when ``bound`` is given: a callable
    ``bound(var, env) -> iterable of ints`` supplying the search range.
    """
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Le):
        return f.term.evaluate(env) <= 0
    if isinstance(f, Eq):
        return f.term.evaluate(env) == 0
    if isinstance(f, Div):
        return f.term.evaluate(env) % f.modulus == 0
    if isinstance(f, Not):
        return not evaluate(f.arg, env, bound)
    if isinstance(f, And):
        return all(evaluate(a, env, bound) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, env, bound) for a in f.args)
    if bound is None:
        raise ValueError("quantified formula needs a bound to evaluate")
    test = any if isinstance(f, Exists) else all
    return test(evaluate(f.body, {**env, f.var: y}, bound) for y in bound(f.var, env))


def to_text(f):
    """Render a formula in the input grammar (parses back to an equivalent AST)."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Le):
        return f"{format_lin(f.term)} <= 0"
    if isinstance(f, Eq):
        return f"{format_lin(f.term)} = 0"
    if isinstance(f, Div):
        return f"{f.modulus} | {format_lin(f.term)}"
    if isinstance(f, Not):
        return f"not ({to_text(f.arg)})"
    if isinstance(f, And):
        return " and ".join(f"({to_text(a)})" for a in f.args) if f.args else "true"
    if isinstance(f, Or):
        return " or ".join(f"({to_text(a)})" for a in f.args) if f.args else "false"
    kw = "exists" if isinstance(f, Exists) else "forall"
    return f"{kw} {f.var}. ({to_text(f.body)})"
