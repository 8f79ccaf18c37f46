"""Finite-precision arithmetic in Q_p.

A :class:`PadicNumber` is ``p**v * unit`` where ``unit`` is an integer in
``[1, p**N)`` prime to ``p`` and ``N`` is the context precision (number of
significant digits).  Every value is treated as the exact rational
``p**v * u`` with ``u`` the representative of ``unit`` in
``(-p**N / 2, p**N / 2]``, so that negation is exact and ``x - x == 0``;
an operation computes the exact result and then keeps its first ``N``
digits.  Products and quotients are therefore exact modulo
``p**(v + N)``; sums are exact whenever the exact sum fits in ``N``
digits.  Zero is a distinguished exact value.
"""

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import isprime
from sympy.ntheory.residue_ntheory import nthroot_mod

from .errors import (ContextMismatch, DomainError, HenselError, LiteralError,
                     ConvergenceError, PrecisionError, ZeroDivision)

INF = math.inf


def vp(n, p):
    """p-adic valuation of a nonzero integer (``inf`` for 0)."""
    if n == 0:
        return INF
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_fraction(q, p):
    q = Fraction(q)
    if q == 0:
        return INF
    return vp(q.numerator, p) - vp(q.denominator, p)


@dataclass(frozen=True)
class PadicContext:
    """The prime ``p`` and the number ``N`` of significant digits carried."""

    prime: int
    precision: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.prime, int) or self.prime < 2 or not isprime(self.prime):
            raise DomainError(f"{self.prime} is not a prime", prime=self.prime)
        if not isinstance(self.precision, int) or self.precision < 1:
            raise DomainError("precision must be a positive integer",
                              precision=self.precision)
        object.__setattr__(self, "modulus", self.prime ** self.precision)

    def __call__(self, value):
        if isinstance(value, PadicNumber):
            return value.to_context(self)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return PadicNumber._from_int(self, value, 0)
        if isinstance(value, Fraction):
            return PadicNumber.from_fraction(self, value)
        if isinstance(value, str):
            return parse_padic(value, self)
        raise TypeError(f"cannot build a p-adic number from {type(value).__name__}")

    @property
    def zero(self):
        return PadicNumber(self, None, 0)

    @property
    def one(self):
        return PadicNumber(self, 0, 1)

    def with_precision(self, precision):
        return PadicContext(self.prime, precision)

    def power_of_p(self, k):
        return PadicNumber(self, k, 1)

    def from_parts(self, valuation, unit):
        """Build ``p**valuation * unit`` from an integer ``unit`` prime to p."""
        if unit % self.prime == 0:
            raise DomainError("unit part must be prime to p", unit=unit)
        return PadicNumber(self, valuation, unit % self.modulus)


class PadicNumber:
    """An element of Q_p known to ``context.precision`` significant digits."""

    __slots__ = ("context", "_v", "_unit")

    def __init__(self, context, valuation, unit):
        # trusted constructor: callers pass a canonical (valuation, unit)
        self.context = context
        self._v = valuation
        self._unit = unit

    # -- construction -----------------------------------------------------
    @classmethod
    def _from_int(cls, ctx, n, shift):
        """Canonical form of ``n * p**shift`` rounded to N digits."""
        if n == 0:
            return cls(ctx, None, 0)
        p = ctx.prime
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        return cls(ctx, shift + k, n % ctx.modulus)

    @classmethod
    def from_fraction(cls, ctx, q):
        q = Fraction(q)
        if q == 0:
            return cls(ctx, None, 0)
        p = ctx.prime
        num, den = q.numerator, q.denominator
        a = vp(num, p)
        b = vp(den, p)
        num //= p ** a
        den //= p ** b
        unit = num * pow(den, -1, ctx.modulus) % ctx.modulus
        return cls(ctx, a - b, unit)

    # -- accessors ----------------------------------------------------------
    @property
    def prime(self):
        return self.context.prime

    @property
    def precision(self):
        return self.context.precision

    @property
    def is_zero(self):
        return self._v is None

    @property
    def valuation(self):
        return INF if self._v is None else self._v

    @property
    def unit(self):
        return self._unit

    def ac(self):
        return angular_component(self)

    def _lift(self):
        # the representative of the unit nearest to zero; negation is then exact
        u, m = self._unit, self.context.modulus
        return u - m if 2 * u > m else u

    def to_fraction(self):
        """The exact rational this value stands for: p^v times the unit lifted to (-p^N/2, p^N/2)."""
        if self._v is None:
            return Fraction(0)
        if self._v >= 0:
            return Fraction(self._lift() * self.prime ** self._v)
        return Fraction(self._lift(), self.prime ** (-self._v))

    def residue(self, k=1):
        """Integer in ``[0, p**k)`` congruent to self; requires v >= 0."""
        if self._v is None:
            return 0
        if self._v < 0:
            raise DomainError("residue of a non-integral element", valuation=self._v)
        if self._v >= k:
            return 0
        m = self.prime ** k
        if k - self._v > self.precision:
            raise PrecisionError("not enough digits to reduce modulo p^%d" % k,
                                 needed=k, valuation=self._v,
                                 precision=self.precision)
        return self._unit * self.prime ** self._v % m

    def digits(self):
        """The N base-p digits of the unit part, least significant first."""
        p, u, out = self.prime, self._unit, []
        for _ in range(self.precision):
            u, d = divmod(u, p)
            out.append(d)
        return out

    def to_context(self, ctx):
        if ctx.prime != self.prime:
            raise ContextMismatch("different primes", left=self.prime, right=ctx.prime)
        if self._v is None:
            return PadicNumber(ctx, None, 0)
        return PadicNumber(ctx, self._v, self._lift() % ctx.modulus)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.context != self.context:
                raise ContextMismatch("operands live in different contexts",
                                      left=repr(self.context), right=repr(other.context))
            return other
        if isinstance(other, (int, Fraction)):
            return self.context(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self._v is None:
            return other
        if other._v is None:
            return self
        ctx = self.context
        N = ctx.precision
        a, b = (self, other) if self._v <= other._v else (other, self)
        gap = b._v - a._v
        if gap >= N:
            return a
        s = a._lift() + b._lift() * ctx.prime ** gap
        return PadicNumber._from_int(ctx, s, a._v)

    __radd__ = __add__

    def __neg__(self):
        if self._v is None:
            return self
        return PadicNumber(self.context, self._v, (-self._unit) % self.context.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self._v is None or other._v is None:
            return self.context.zero
        return PadicNumber(self.context, self._v + other._v,
                           self._unit * other._unit % self.context.modulus)

    __rmul__ = __mul__

    def inverse(self):
        if self._v is None:
            raise ZeroDivision("inverse of zero")
        return PadicNumber(self.context, -self._v, pow(self._unit, -1, self.context.modulus))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other._v is None:
            raise ZeroDivision("division by zero")
        if self._v is None:
            return self
        m = self.context.modulus
        return PadicNumber(self.context, self._v - other._v,
                           self._unit * pow(other._unit, -1, m) % m)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if self._v is None:
            if n <= 0:
                raise ZeroDivision("non-positive power of zero")
            return self
        m = self.context.modulus
        return PadicNumber(self.context, self._v * n, pow(self._unit, n, m))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context(other)
        if not isinstance(other, PadicNumber):
            return NotImplemented
        if other.context != self.context:
            return False
        return self._v == other._v and self._unit == other._unit

    def __hash__(self):
        return hash((self.context.prime, self.context.precision, self._v, self._unit))

    def __bool__(self):
        return self._v is not None

    def __repr__(self):
        return f"PadicNumber({format_padic(self)!r}, N={self.precision})"

    def __str__(self):
        return format_padic(self)


def valuation(x):
    return x.valuation


def angular_component(x):
    """Unit part ``x * p**(-v(x))``."""
    if x.is_zero:
        raise DomainError("angular component of zero")
    return PadicNumber(x.context, 0, x.unit)


def agree(x, y, absolute):
    """True when ``x`` and ``y`` are congruent modulo ``p**absolute``."""
    d = x - y
    return d.valuation >= absolute


# -- literals -----------------------------------------------------------------

def format_padic(x):
    """Series form ``p^v * (d0 + d1*p + ...)``; zero digits are omitted."""
    if x.is_zero:
        return "0"
    p = x.prime
    terms = []
    for k, d in enumerate(x.digits()):
        if d == 0:
            continue
        if k == 0:
            terms.append(str(d))
        elif k == 1:
            terms.append(f"{d}*{p}")
        else:
            terms.append(f"{d}*{p}^{k}")
    return f"{p}^{x.valuation} * ({' + '.join(terms)})"


def format_padic_compact(x):
    """Digit-string form ``...d2 d1 d0 (base p) * p^v``."""
    if x.is_zero:
        return "0"
    digits = x.digits()
    while len(digits) > 1 and digits[-1] == 0:
        digits.pop()
    body = " ".join(str(d) for d in reversed(digits))
    return f"...{body} (base {x.prime}) * {x.prime}^{x.valuation}"


_SERIES = re.compile(r"^\s*(-)?\s*(\d+)\s*\^\s*(-?\d+)\s*\*\s*\((.*)\)\s*$", re.S)
_COMPACT = re.compile(r"^\s*(-)?\s*\.\.\.([\d\s]+)\(\s*base\s+(\d+)\s*\)\s*\*\s*(\d+)\s*\^\s*(-?\d+)\s*$")
_TERM = re.compile(r"^(\d+)(?:\s*\*\s*(\d+)(?:\s*\^\s*(\d+))?)?$")


def parse_padic(text, ctx):
    """Parse a p-adic literal in either textual form, or a decimal rational."""
    s = text.strip()
    if not s:
        raise LiteralError("empty p-adic literal")
    m = _SERIES.match(s)
    if m:
        sign, base, v, body = m.groups()
        _check_base(int(base), ctx)
        total = 0
        for term in body.split("+"):
            term = term.strip()
            tm = _TERM.match(term)
            if not tm:
                raise LiteralError(f"bad digit term {term!r}", literal=text)
            d, b, k = tm.groups()
            d = int(d)
            if d >= ctx.prime:
                raise LiteralError(f"digit {d} out of range for p={ctx.prime}", literal=text)
            if b is None:
                k = 0
            else:
                _check_base(int(b), ctx)
                k = 1 if k is None else int(k)
            total += d * ctx.prime ** k
        if sign:
            total = -total
        return PadicNumber._from_int(ctx, total, int(v))
    m = _COMPACT.match(s)
    if m:
        sign, digits, base, base2, v = m.groups()
        _check_base(int(base), ctx)
        _check_base(int(base2), ctx)
        total = 0
        for d in digits.split():
            d = int(d)
            if d >= ctx.prime:
                raise LiteralError(f"digit {d} out of range for p={ctx.prime}", literal=text)
            total = total * ctx.prime + d
        if sign:
            total = -total
        return PadicNumber._from_int(ctx, total, int(v))
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise LiteralError(f"unrecognised p-adic literal {text!r}", literal=text) from None
    return PadicNumber.from_fraction(ctx, q)


def _check_base(b, ctx):
    if b != ctx.prime:
        raise LiteralError(f"literal written in base {b}, context prime is {ctx.prime}")


# -- polynomials and Hensel lifting ------------------------------------------

class PadicPoly:
    """Polynomial with p-adic coefficients, constant term first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def from_ints(cls, ctx, coeffs):
        return cls(ctx(c) for c in coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = x.context.zero
        for c in reversed(self.coefficients):
            acc = acc * x + c.to_context(x.context)
        return acc

    def derivative(self):
        return PadicPoly(c * k for k, c in enumerate(self.coefficients) if k > 0)

    def to_context(self, ctx):
        return PadicPoly(c.to_context(ctx) for c in self.coefficients)

    def __repr__(self):
        return f"PadicPoly({[str(c) for c in self.coefficients]})"


def hensel_lift(f, x0):
    """Newton-lift an approximate root ``x0`` of ``f`` to full precision.

    Requires ``v(f(x0)) > 2 v(f'(x0))``.  The returned root ``r`` satisfies
    ``v(r - x0) >= v(f(x0)) - v(f'(x0))`` and is correct to N digits.
    """
    ctx = x0.context
    N = ctx.precision
    df = f.derivative()
    fx, dfx = f(x0), df(x0)
    if fx.is_zero:
        return x0
    vf, vd = fx.valuation, dfx.valuation
    if not vf > 2 * vd:
        raise HenselError(f"Hensel condition fails: v(f(x0))={vf}, v(f'(x0))={vd}",
                          v_f=vf, v_df=vd)
    vx = x0.valuation if not x0.is_zero else 0
    mu = min((c.valuation + k * vx for k, c in enumerate(f.coefficients)
              if not c.is_zero), default=0)
    work = ctx.with_precision(N + 2 * vd + max(0, vx - mu) + 4)
    F, dF = f.to_context(work), df.to_context(work)
    x = x0.to_context(work)
    for _ in range(N + 8):
        fx = F(x)
        if fx.is_zero:
            break
        target = (x.valuation if not x.is_zero else vf - vd) + N
        if fx.valuation - vd >= target + 1:
            break
        x = x - fx / dF(x)
    else:
        raise ConvergenceError("Newton iteration did not stabilise")
    return x.to_context(ctx)


@lru_cache(maxsize=256)
def _power_table(p, n, e):
    m = p ** e
    table = {}
    for y in range(1, m):
        if y % p:
            table.setdefault(pow(y, n, m), y)
    return table


def _root_mod(u, n, p, e):
    m = p ** e
    if m <= 200_000:
        return _power_table(p, n, e).get(u % m)
    r = nthroot_mod(u % m, n, m)
    return None if r is None else int(r)


def is_nth_power(x, n):
    """Decide whether ``x`` is an n-th power in Q_p^x.

    Returns ``(True, y)`` with ``y**n == x`` at precision, or ``(False, None)``.
    """
    if x.is_zero:
        raise DomainError("is_nth_power of zero")
    if n < 1:
        raise DomainError("n must be positive", n=n)
    ctx = x.context
    p = ctx.prime
    k = vp(n, p)
    if ctx.precision < 2 * k + 2:
        raise PrecisionError("undecidable at precision: need N >= 2 v_p(n) + 2",
                             needed=2 * k + 2, precision=ctx.precision)
    if x.valuation % n:
        return False, None
    e = 2 * k + 1
    y0 = _root_mod(x.unit, n, p, e)
    if y0 is None:
        return False, None
    u = angular_component(x)
    f = PadicPoly([-u] + [ctx.zero] * (n - 1) + [ctx.one])
    root = hensel_lift(f, ctx(y0))
    y = root * ctx.power_of_p(x.valuation // n)
    if y ** n != x:
        raise ConvergenceError("n-th root failed verification")
    return True, y


@lru_cache(maxsize=None)
def smallest_nonresidue(p):
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise DomainError("no quadratic non-residue", prime=p)


SQUARE_CLASSES_ODD = ("1", "u", "p", "up")
SQUARE_CLASSES_TWO = ("1", "3", "5", "7", "2", "6", "10", "14")


def square_class(x):
    """Label of the class of ``x`` in Q_p^x / (Q_p^x)^2.

    For odd p the labels are ``1, u, p, up`` with ``u`` the smallest positive
    non-residue; for p = 2 the label is the integer representative
    ``2**(v mod 2) * (unit mod 8)``.
    """
    if x.is_zero:
        raise DomainError("square class of zero")
    p = x.prime
    odd_v = x.valuation % 2 == 1
    if p == 2:
        if x.precision < 3:
            raise PrecisionError("need 3 digits to decide square class at p=2")
        return str((2 if odd_v else 1) * (x.unit % 8))
    nonres = pow(x.unit, (p - 1) // 2, p) == p - 1
    return {(False, False): "1", (True, False): "u",
            (False, True): "p", (True, True): "up"}[(nonres, odd_v)]


def square_class_representative(ctx, label):
    p = ctx.prime
    if p == 2:
        if label not in SQUARE_CLASSES_TWO:
            raise DomainError(f"unknown square class {label!r}")
        return ctx(int(label))
    u = smallest_nonresidue(p)
    reps = {"1": 1, "u": u, "p": p, "up": u * p}
    if label not in reps:
        raise DomainError(f"unknown square class {label!r}")
    return ctx(reps[label])
