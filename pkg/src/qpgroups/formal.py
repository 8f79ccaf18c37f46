"""Explicit isomorphisms with additive groups.

* one-units:  exp : p^a Z_p -> U_a and log : U_a -> p^a Z_p
  (a >= 1, or a >= 2 when p = 2), plus z -> (1+p)^z;
* elliptic curves:  E_1 -> (p Z_p, +) through the formal group logarithm;
* twisted tori:  F_a -> (p^a Z_p, +) through the logarithm of x + y sqrt(d).

Series are summed on exact rationals up to an index past which every term
is provably divisible by the target power of p, then rounded once.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import inf

from .elliptic import INFINITY, CurvePoint
from .errors import ConvergenceError, DomainError, MembershipError
from .padic import vp_fraction
from .series import MultiSeries, TruncatedSeries

MAX_TERMS = 4000


def _min_level(p):
    return 2 if p == 2 else 1


def _terms_needed(bound, target, start=1):
    """Least M with bound(n) >= target for every n >= M.

    ``bound`` must be eventually increasing; callers pass lower bounds of
    the form n*a - c*log(n) or n*a - (n-1)/(p-1).
    """
    n = start
    while n < MAX_TERMS:
        if all(bound(k) >= target for k in range(n, n + 64)):
            return n
        n += 1
    raise ConvergenceError("series tail bound not reached", target=target)


def _log_terms(p, a, target):
    # v(z^n / n) >= n*a - v_p(n) >= n*a - log_p(n)
    def bound(n):
        return n * a - _ilog(n, p)
    return _terms_needed(bound, target)


def _exp_terms(p, a, target):
    # v(z^n / n!) >= n*a - (n-1)/(p-1)
    def bound(n):
        return n * a - Fraction(n - 1, p - 1)
    return _terms_needed(bound, target)


def _ilog(n, p):
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


# -- one-units ------------------------------------------------------------------

def _exp_rational(z, p, a, target):
    M = _exp_terms(p, a, target)
    total, term = Fraction(0), Fraction(1)
    for n in range(M):
        total += term
        term = term * z / (n + 1)
    return total


def _log_rational(g, p, a, target):
    """log(1 + g) for rational g with v(g) >= a."""
    M = _log_terms(p, a, target)
    total, power = Fraction(0), Fraction(1)
    for n in range(1, M):
        power *= g
        total += power / n if n % 2 else -power / n
    return total


def exp_one_units(z):
    """The p-adic exponential on p^a Z_p (a >= 1; a >= 2 for p = 2)."""
    ctx = z.context
    p = ctx.prime
    if z.is_zero:
        return ctx.one
    a = z.valuation
    if a < _min_level(p):
        raise DomainError(f"exp needs v(z) >= {_min_level(p)}", valuation=a)
    return ctx(_exp_rational(z.to_fraction(), p, a, ctx.precision))


def log_one_units(u):
    """The p-adic logarithm on U_a, the inverse of :func:`exp_one_units`.

    The value is determined modulo p^N (the precision of u); digits of the
    result beyond that are carried but not meaningful.
    """
    ctx = u.context
    p = ctx.prime
    g = u - 1
    if g.is_zero:
        return ctx.zero
    a = g.valuation
    if a < _min_level(p):
        raise DomainError(f"log needs v(u - 1) >= {_min_level(p)}", valuation=a)
    return ctx(_log_rational(u.to_fraction() - 1, p, a, a + ctx.precision))


def _base(ctx):
    p = ctx.prime
    return 1 + p * p if p == 2 else 1 + p


def power_of_base(z):
    """z -> (1+p)^z on Z_p (base 1 + p^2 = 5 when p = 2), onto U_1 (U_2)."""
    ctx = z.context
    if z.valuation < 0:
        raise DomainError("exponent must be a p-adic integer")
    if z.is_zero:
        return ctx.one
    p = ctx.prime
    b = _base(ctx)
    lb = _log_rational(Fraction(b - 1), p, _min_level(p), ctx.precision + 4)
    w = z.to_fraction() * lb
    return ctx(_exp_rational(w, p, vp_fraction(w, p), ctx.precision))


def log_base(u):
    """Inverse of :func:`power_of_base`: the exponent z with (1+p)^z = u."""
    ctx = u.context
    p = ctx.prime
    g = u - 1
    if g.is_zero:
        return ctx.zero
    if g.valuation < _min_level(p):
        raise DomainError(f"need v(u - 1) >= {_min_level(p)}", valuation=g.valuation)
    b = _base(ctx)
    a = _min_level(p)
    extra = ctx.precision + a + 2
    num = _log_rational(u.to_fraction() - 1, p, g.valuation, extra)
    den = _log_rational(Fraction(b - 1), p, a, extra)
    return ctx(num / den)


# -- formal groups of elliptic curves -------------------------------------------

@dataclass(frozen=True)
class FormalGroup:
    order: int
    w: TruncatedSeries          # w(z) = z^3 + ...
    log: TruncatedSeries        # lambda(z) = z + ...
    exp: TruncatedSeries        # inverse of lambda
    law: MultiSeries            # F(z1, z2)



def _w_series(a, M):
    a1, a2, a3, a4, a6 = a
    z = TruncatedSeries.variable(M)
    w = TruncatedSeries([0, 0, 0, 1], M)
    for _ in range(M):
        new = (z * z * z + a1 * z * w + a2 * z * z * w + a3 * w * w
               + a4 * z * w * w + a6 * w * w * w)
        if new == w:
            break
        w = new
    return w


def _v_series(w):
    """V = z^3 / w, a unit series."""
    return w.shift(-3).inverse()


def _rounded(M):
    # share one cache entry between nearby orders
    size = 8
    while size < M:
        size *= 2
    return size


@lru_cache(maxsize=64)
def _log_exact(a, M):
    """(w, lambda) modulo z^M; w is kept to one extra term for the chord slope."""
    a1, a2, a3, a4, a6 = a
    w = _w_series(a, M + 3)
    V = _v_series(w)                      # order M
    z = TruncatedSeries.variable(V.order)
    num = z * V.derivative() - 2 * V
    den = -2 * V + a1 * z * V + a3 * z * z * z
    lam = (num / den).integral()
    return TruncatedSeries(w.coeffs, M + 1), TruncatedSeries(lam.coeffs, M)


def _log_series(a, M):
    w, lam = _log_exact(a, _rounded(M))
    return TruncatedSeries(w.coeffs, M + 1), TruncatedSeries(lam.coeffs, M)


@lru_cache(maxsize=64)
def _exp_exact(a, M):
    return _log_exact(a, M)[1].reversion()


def _exp_series(a, M):
    return TruncatedSeries(_exp_exact(a, _rounded(M)).coeffs, M)


def _formal_law(a, w, M):
    """F(z1, z2) from the chord through (z1, w(z1)) and (z2, w(z2))."""
    a1, a2, a3, a4, a6 = a
    z1 = MultiSeries.variable(0, 2, M)
    z2 = MultiSeries.variable(1, 2, M)
    # slope (w(z2) - w(z1)) / (z2 - z1) = sum A_n sum_k z1^k z2^(n-1-k)
    slope = {}
    for n, A in enumerate(w.coeffs):
        if A:
            for k in range(n):
                e = (k, n - 1 - k)
                slope[e] = slope.get(e, 0) + A
    lam = MultiSeries(slope, 2, M)
    w1 = z1.substitute_into(w)
    nu = w1 - lam * z1
    lam2 = lam * lam
    top = a1 * lam + a2 * nu + a3 * lam2 + 2 * a4 * lam * nu + 3 * a6 * lam2 * nu
    bottom = 1 + a2 * lam + a4 * lam2 + a6 * lam2 * lam
    z3 = -z1 - z2 - top * bottom.inverse()
    # F = i(z3) with i(z) = z / (-1 + a1 z + a3 w(z))
    w3 = z3.substitute_into(w)
    return z3 * (-1 + a1 * z3 + a3 * w3).inverse()


def formal_group(curve, order):
    """w(z), the formal logarithm, its inverse and F(z1, z2), all mod degree ``order``."""
    if order < 3:
        raise DomainError("order must be at least 3", order=order)
    w, lam = _log_series(curve.exact, order)
    law = _formal_law(curve.exact, w, order)
    return FormalGroup(order, TruncatedSeries(w.coeffs, order), lam,
                       _exp_series(curve.exact, order), law)


def _elliptic_order(p, alpha, N, exp=False):
    target = alpha + N
    if exp:
        return _exp_terms(p, alpha, target)
    return _log_terms(p, alpha, target)


def elliptic_log(curve, P):
    """lambda(-x/y) for P in E_1; v(result) = v(x/y)."""
    ctx = curve.context
    if P.is_infinity:
        return ctx.zero
    if not curve.is_integral():
        raise DomainError("the formal logarithm needs an integral model")
    if P.x.valuation >= 0:
        raise MembershipError("point is not in E_1", point=P.to_json())
    p, N = ctx.prime, ctx.precision
    alpha = P.x.valuation - P.y.valuation
    if alpha < _min_level(p):
        raise DomainError(f"need v(x/y) >= {_min_level(p)}", alpha=alpha)
    z = -P.x.to_fraction() / P.y.to_fraction()
    M = _elliptic_order(p, alpha, N)
    _, lam = _log_series(curve.exact, max(M, 3))
    return ctx(lam.evaluate(z, M))


def elliptic_exp(curve, z):
    """The point of E_1 with formal parameter exp(z); v(z) >= 1 (>= 2 at p = 2)."""
    ctx = curve.context
    if z.is_zero:
        return INFINITY
    if not curve.is_integral():
        raise DomainError("the formal exponential needs an integral model")
    p, N = ctx.prime, ctx.precision
    alpha = z.valuation
    if alpha < _min_level(p):
        raise DomainError(f"need v(z) >= {_min_level(p)}", valuation=alpha)
    # the formal parameter t = exp(z) is needed to relative precision N + 3
    M = _elliptic_order(p, alpha, N + 3, exp=True)
    Mw = max(3, -(-(3 * alpha + N + 2) // alpha) + 1)
    e = _exp_series(curve.exact, max(M, 3))
    t = e.evaluate(z.to_fraction(), M)
    w, _ = _log_series(curve.exact, max(Mw, 4))
    wt = w.evaluate(t, Mw)
    return CurvePoint(ctx(t / wt), ctx(-1 / wt))


def formal_parameter(P):
    """z = -x/y."""
    if P.is_infinity:
        raise DomainError("O has formal parameter 0")
    return -P.x / P.y


# -- twisted tori ---------------------------------------------------------------

def _qmul(a, b, d):
    return (a[0] * b[0] + d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _torus_level(d, x, y, p):
    """Lower bound for the valuation of (x - 1) + y sqrt(d) in Q_p(sqrt d)."""
    vd = vp_fraction(d, p)
    return min(vp_fraction(x - 1, p) if x != 1 else inf,
               (vp_fraction(y, p) + Fraction(vd, 2)) if y else inf)


def torus_log(d, g):
    """The sqrt(d)-coefficient of log(x + y sqrt d) for g = (x, y) in F_alpha."""
    x, y = g
    ctx = x.context
    p, N = ctx.prime, ctx.precision
    dq = d.to_fraction()
    X, Y = x.to_fraction(), y.to_fraction()
    if (x - 1).is_zero and y.is_zero:
        return ctx.zero
    level = _torus_level(dq, X, Y, p)
    if level < _min_level(p) - Fraction(vp_fraction(dq, p), 2) or level <= Fraction(1, p - 1):
        raise DomainError("element is too far from the identity for the series",
                          x=str(x), y=str(y))
    vd = vp_fraction(dq, p)
    target = min(y.valuation, (x - 1).valuation) + N + 1
    M = _terms_needed(lambda n: n * level - _ilog(n, p) - Fraction(vd, 2), target)
    gg = (X - 1, Y)
    power = (Fraction(1), Fraction(0))
    s = t = Fraction(0)
    for n in range(1, M):
        power = _qmul(power, gg, dq)
        sign = 1 if n % 2 else -1
        s += sign * power[0] / n
        t += sign * power[1] / n
    return ctx(t)


def torus_exp(d, z):
    """(C(z), S(z)) with C = sum d^k z^2k/(2k)!, S = sum d^k z^(2k+1)/(2k+1)!."""
    ctx = z.context
    p, N = ctx.prime, ctx.precision
    if z.is_zero:
        return (ctx.one, ctx.zero)
    alpha = z.valuation
    if alpha < _min_level(p):
        raise DomainError(f"need v(z) >= {_min_level(p)}", valuation=alpha)
    dq = d.to_fraction()
    zq = z.to_fraction()
    M = _exp_terms(p, alpha, alpha + N + 1)
    C = S = Fraction(0)
    term = Fraction(1)
    for n in range(M):
        if n % 2 == 0:
            C += term * dq ** (n // 2)
        else:
            S += term * dq ** (n // 2)
        term = term * zq / (n + 1)
    return (ctx(C), ctx(S))
