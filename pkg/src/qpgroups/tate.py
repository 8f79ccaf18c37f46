"""Tate curves E_q : y^2 + xy = x^3 + a4(q) x + a6(q) and their uniformization.

    a4 = -5 sum s3(n) q^n,    a6 = -sum (5 s3(n) + 7 s5(n))/12 q^n
    X(u) = u/(1-u)^2 + sum_d q^d sum_{k|d} k (u^k + u^-k - 2)
    Y(u) = u^2/(1-u)^3 + sum_d q^d sum_{k|d} (k(k-1)/2 u^k - k(k+1)/2 u^-k + k)

u is first moved into 0 <= v(u) < m = v(q) by powers of q; for
v(u) > m/2 the symmetry phi(u) = -phi(q/u) keeps the series short.  All
sums run on exact rationals until the tail is below the requested digits.
"""

from dataclasses import dataclass
from fractions import Fraction

from .elliptic import INFINITY, CurvePoint, WeierstrassCurve, add_points, negate
from .errors import DomainError, MembershipError, PrecisionError
from .padic import vp_fraction


def _sigma(n, k):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def tate_coefficients(q, precision=None, terms=None):
    """(a4, a6) of E_q rounded to ``precision`` digits (default: that of q)."""
    ctx = q.context if precision is None else q.context.with_precision(precision)
    m = q.valuation
    if q.is_zero or m < 1:
        raise DomainError("Tate parameter needs v(q) >= 1", q=str(q))
    N = ctx.precision
    if terms is None:
        # every discarded term has valuation >= (D + 1) m > m + N + v(60)
        extra = 3 + vp_fraction(Fraction(60), ctx.prime)
        terms = -(-(N + extra) // m) + 1
    elif (terms + 1) * m < m + N:
        raise PrecisionError("too few terms for the requested digits", terms=terms)
    qq = q.to_fraction()
    s4 = s6 = Fraction(0)
    power = Fraction(1)
    for n in range(1, terms + 1):
        power *= qq
        s3, s5 = _sigma(n, 3), _sigma(n, 5)
        s4 += s3 * power
        s6 += Fraction(5 * s3 + 7 * s5, 12) * power
    return ctx(-5 * s4), ctx(-s6)


class TateCurve:
    """The curve E_q with its uniformization O^x / q^Z -> E(Q_p)."""

    def __init__(self, q, precision=None):
        a4, a6 = tate_coefficients(q, precision)
        self.context = a4.context
        self.q = q.to_context(self.context) if precision is not None else q
        self.m = q.valuation
        self.curve = WeierstrassCurve(self.context, 1, 0, 0, a4, a6)

    @property
    def prime(self):
        return self.context.prime

    def __repr__(self):
        return f"TateCurve(q={self.q}, m={self.m})"

    def uniformize(self, u):
        return uniformize(self, u)

    def add(self, P, Q):
        return add_points(self.curve, P, Q, check=False)


def _series_xy(uq, qq, p, m, r, digits):
    """X(u), Y(u) for 0 <= v(u) = r <= m/2, exact until the tail is negligible."""
    one = Fraction(1)
    den = 1 - uq
    X = uq / den ** 2
    Y = uq * uq / den ** 3
    step = m - r  # each q^d term has valuation >= d (m - r)
    inv = one / uq
    d = 0
    qd = one
    while (d + 1) * step < _low(X, Y, p) + digits + 2:
        d += 1
        qd *= qq
        sx = sy = Fraction(0)
        for k in _divisors(d):
            uk, uik = uq ** k, inv ** k
            sx += k * (uk + uik - 2)
            sy += Fraction(k * (k - 1), 2) * uk - Fraction(k * (k + 1), 2) * uik + k
        X += qd * sx
        Y += qd * sy
    return X, Y


def _low(X, Y, p):
    return min(vp_fraction(X, p) if X else 0, vp_fraction(Y, p) if Y else 0)


def uniformize(tc, u):
    """The point phi(u) of E_q; phi(u q^k) = phi(u) and phi(1) = O."""
    ctx = tc.context
    if u.context != ctx:
        u = u.to_context(ctx)
    if u.is_zero:
        raise DomainError("u must be nonzero")
    m, p = tc.m, ctx.prime
    uq, qq = u.to_fraction(), tc.q.to_fraction()
    k = u.valuation // m
    uq = uq / qq ** k
    r = u.valuation - k * m
    flip = 2 * r > m
    if flip:
        uq = qq / uq
        r = m - r
    if uq == 1:
        return INFINITY
    X, Y = _series_xy(uq, qq, p, m, r, ctx.precision)
    P = CurvePoint(ctx(X), ctx(Y))
    return negate(tc.curve, P) if flip else P


IN_E0 = 0


def coset_level(tc, P):
    """Image of P in E/E_0 = Z/m: 0 for E_0, else the r with P in V_r (or -V_(m-r))."""
    if P.is_infinity:
        return IN_E0
    x, y = P.x, P.y
    if x.valuation < 0:
        return IN_E0
    if y.valuation < 0:
        raise PrecisionError("integral x with non-integral y")
    if x.valuation == 0 or y.valuation == 0:
        # reduces to a point other than the node (0, 0)
        return IN_E0
    s = min(x.valuation, y.valuation)
    if y.valuation > s:
        return s
    if (x + y).valuation > s:
        return tc.m - s
    return s


# -- the lattice quotient realised on curve points ------------------------------

@dataclass(frozen=True)
class HEElement:
    level: int          # v(u) for a representative u, in [0, v(b))
    point: CurvePoint

    def to_json(self):
        return {"level": self.level, "point": self.point.to_json()}


class LatticeQuotientOnCurve:
    """O_E(b)/<b>: pairs (v(u), phi(u)) with 0 <= v(u) < v(b)."""

    def __init__(self, tc, b):
        if b.is_zero or b.valuation < 1:
            raise DomainError("need v(b) >= 1", b=str(b))
        self.tc = tc
        self.b = b.to_context(tc.context)
        self.vb = b.valuation
        self.phi_b = uniformize(tc, self.b)

    def identity(self):
        return HEElement(0, INFINITY)

    def element(self, u):
        u = u.to_context(self.tc.context)
        if u.is_zero or not 0 <= u.valuation < self.vb:
            raise MembershipError("need 0 <= v(u) < v(b)", u=str(u))
        return HEElement(u.valuation, uniformize(self.tc, u))

    def op(self, g, h):
        level = g.level + h.level
        P = self.tc.add(g.point, h.point)
        if level >= self.vb:
            level -= self.vb
            P = self.tc.add(P, negate(self.tc.curve, self.phi_b))
        return HEElement(level, P)

    def inverse(self, g):
        P = negate(self.tc.curve, g.point)
        if g.level == 0:
            return HEElement(0, P)
        return HEElement(self.vb - g.level, self.tc.add(P, self.phi_b))

    def equals(self, g, h):
        return g.level == h.level and g.point == h.point


def lattice_quotient_on_curve(tc, b):
    return LatticeQuotientOnCurve(tc, b)
