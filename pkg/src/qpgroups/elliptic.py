"""Weierstrass curves over Q_p.

    y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6

Coefficients and coordinates are PadicNumbers.  Formulas are evaluated on
the exact rationals they represent and rounded once, so the only error in a
result is the rounding of its inputs.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .errors import (DomainError, MembershipError, NotMinimal, NotOnCurve,
                     PrecisionError, SingularCurve)
from .padic import PadicContext, PadicNumber, format_padic, parse_padic, vp_fraction


def _q(x):
    return x.to_fraction() if isinstance(x, PadicNumber) else Fraction(x)


def invariants_exact(a1, a2, a3, a4, a6):
    """b2, b4, b6, b8, c4, c6 and the discriminant as exact rationals."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return {"b2": b2, "b4": b4, "b6": b6, "b8": b8, "c4": c4, "c6": c6, "disc": disc}


class WeierstrassCurve:
    """A nonsingular Weierstrass equation with cached invariants."""

    NAMES = ("a1", "a2", "a3", "a4", "a6")

    def __init__(self, context, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.context = context
        coeffs = []
        for c in (a1, a2, a3, a4, a6):
            if isinstance(c, str):
                c = _parse_coefficient(c, context)
            elif not isinstance(c, PadicNumber):
                c = context(c)
            elif c.context != context:
                c = c.to_context(context)
            coeffs.append(c)
        self.a = tuple(coeffs)
        self.exact = tuple(c.to_fraction() for c in coeffs)
        inv = invariants_exact(*self.exact)
        if inv["disc"] == 0:
            raise SingularCurve("discriminant vanishes", a=[format_padic(c) for c in coeffs])
        inv["j"] = inv["c4"] ** 3 / inv["disc"]
        self.exact_invariants = inv
        self.invariants = {k: context(v) for k, v in inv.items()}

    # -- accessors --------------------------------------------------------
    a1 = property(lambda self: self.a[0])
    a2 = property(lambda self: self.a[1])
    a3 = property(lambda self: self.a[2])
    a4 = property(lambda self: self.a[3])
    a6 = property(lambda self: self.a[4])

    @property
    def prime(self):
        return self.context.prime

    @property
    def discriminant(self):
        return self.invariants["disc"]

    @property
    def j(self):
        return self.invariants["j"]

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return "WeierstrassCurve(p=%d, [%s])" % (
            self.prime, ", ".join(str(c.to_fraction()) for c in self.a))

    def is_integral(self):
        return all(c.valuation >= 0 for c in self.a)

    def to_json(self):
        return {"p": self.prime, "precision": self.context.precision,
                "a": [format_padic(c) for c in self.a]}

    @classmethod
    def from_json(cls, obj, context=None):
        ctx = context or PadicContext(int(obj["p"]), int(obj["precision"]))
        a = list(obj["a"])
        if len(a) != 5:
            raise DomainError("curve needs five coefficients a1, a2, a3, a4, a6")
        return cls(ctx, *[_parse_coefficient(str(c), ctx) for c in a])

    # -- points -------------------------------------------------------------
    def residual(self, x, y):
        """F(x, y) on exact rationals together with the smallest monomial valuation."""
        a1, a2, a3, a4, a6 = self.exact
        p = self.prime
        terms = [y * y, a1 * x * y, a3 * y, -x ** 3, -a2 * x * x, -a4 * x, -a6]
        scale = min(vp_fraction(t, p) for t in terms)
        return sum(terms), scale

    def relative_residual(self, P):
        """How many digits of the equation a point satisfies (inf when exact)."""
        if P.is_infinity:
            return inf
        r, scale = self.residual(P.x.to_fraction(), P.y.to_fraction())
        return vp_fraction(r, self.prime) - scale

    def point(self, x, y, check=True):
        ctx = self.context
        x = x if isinstance(x, PadicNumber) else _parse_coefficient(x, ctx) \
            if isinstance(x, str) else ctx(x)
        y = y if isinstance(y, PadicNumber) else _parse_coefficient(y, ctx) \
            if isinstance(y, str) else ctx(y)
        P = CurvePoint(x.to_context(ctx), y.to_context(ctx))
        if check and self.relative_residual(P) < ctx.precision:
            raise NotOnCurve("point does not satisfy the equation",
                             x=format_padic(x), y=format_padic(y))
        return P

    def contains(self, P, digits=None):
        digits = self.context.precision if digits is None else digits
        return self.relative_residual(P) >= digits

    def add(self, P, Q):
        return add_points(self, P, Q)

    def negate(self, P):
        return negate(self, P)

    def multiply(self, k, P):
        return multiply(self, k, P)


def _parse_coefficient(text, ctx):
    text = text.strip()
    try:
        return ctx(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return parse_padic(text, ctx)


@dataclass(frozen=True)
class CurvePoint:
    x: PadicNumber = None
    y: PadicNumber = None

    @property
    def is_infinity(self):
        return self.x is None

    def to_json(self):
        if self.is_infinity:
            return "O"
        return [format_padic(self.x), format_padic(self.y)]

    def __repr__(self):
        if self.is_infinity:
            return "CurvePoint(O)"
        return f"CurvePoint({format_padic(self.x)}, {format_padic(self.y)})"


INFINITY = CurvePoint()


def point_from_json(curve, obj):
    if obj == "O" or obj is None:
        return INFINITY
    return curve.point(obj[0], obj[1])


# -- group law ------------------------------------------------------------------

def _vq(q, p):
    return vp_fraction(q, p)


def _check_input(curve, P):
    # a coarse test: genuine points keep most of their digits through the
    # group law, while unrelated pairs (x, y) fail at the first digit
    if not P.is_infinity and curve.relative_residual(P) < max(1, curve.context.precision // 2):
        raise NotOnCurve("point is not on the curve", point=P.to_json())


def negate(curve, P):
    if P.is_infinity:
        return P
    a1, _, a3, _, _ = curve.exact
    x, y = P.x.to_fraction(), P.y.to_fraction()
    return CurvePoint(P.x, curve.context(-y - a1 * x - a3))


def _add_exact(curve, x1, y1, x2, y2, same_x):
    """Chord/tangent sum on exact rationals; None stands for O."""
    a1, a2, a3, a4, a6 = curve.exact
    p = curve.prime
    if same_x:
        s = y1 + y2 + a1 * x2 + a3
        scale = min(_vq(y1, p), _vq(y2, p))
        if s == 0 or _vq(s, p) >= scale + curve.context.precision:
            return None
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
    else:
        # two expressions for the slope; use the one whose denominator
        # suffers the least cancellation
        dx = x2 - x1
        loss_chord = _vq(dx, p) - min(_vq(x1, p), _vq(x2, p))
        sy = y1 + y2 + a1 * x1 + a3
        terms = [t for t in (y1, y2, a1 * x1, a3) if t]
        loss_alt = (_vq(sy, p) - min(_vq(t, p) for t in terms)) if sy else inf
        if loss_chord <= loss_alt:
            lam = (y2 - y1) / dx
        else:
            lam = (x1 * x1 + x1 * x2 + x2 * x2 + a2 * (x1 + x2) + a4 - a1 * y2) / sy
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return x3, y3


def add_points(curve, P, Q, check=True):
    """P + Q on the curve."""
    if check:
        _check_input(curve, P)
        _check_input(curve, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    out = _add_exact(curve, P.x.to_fraction(), P.y.to_fraction(),
                     Q.x.to_fraction(), Q.y.to_fraction(), P.x == Q.x)
    if out is None:
        return INFINITY
    ctx = curve.context
    return CurvePoint(ctx(out[0]), ctx(out[1]))


def multiply(curve, k, P):
    if k < 0:
        return multiply(curve, -k, negate(curve, P))
    out, base = INFINITY, P
    while k:
        if k & 1:
            out = add_points(curve, out, base, check=False)
        k >>= 1
        if k:
            base = add_points(curve, base, base, check=False)
    return out


# -- change of variables --------------------------------------------------------

@dataclass(frozen=True)
class Transform:
    """x = u^2 x' + r,  y = u^3 y' + u^2 s x' + t  (exact rationals)."""

    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    @classmethod
    def of(cls, u, r=0, s=0, t=0):
        vals = [_q(c) for c in (u, r, s, t)]
        if vals[0] == 0:
            raise DomainError("u must be nonzero")
        return cls(*vals)

    def then(self, other):
        """The transformation doing ``self`` first and ``other`` second."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Transform(u1 * u2, r1 + u1 * u1 * r2, s1 + u1 * s2,
                         t1 + u1 ** 3 * t2 + s1 * u1 * u1 * r2)

    def inverse(self):
        u, r, s, t = self.u, self.r, self.s, self.t
        return Transform(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)

    def to_json(self, ctx):
        return {k: format_padic(ctx(getattr(self, k))) for k in ("u", "r", "s", "t")}


IDENTITY = Transform(Fraction(1))


def transformed_coefficients(a, T):
    a1, a2, a3, a4, a6 = a
    u, r, s, t = T.u, T.r, T.s, T.t
    return (
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u ** 2,
        (a3 + r * a1 + 2 * t) / u ** 3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4,
        (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6,
    )


def change_of_variables(curve, u, r=0, s=0, t=0):
    """The curve in the new coordinates, with the transformation used."""
    T = u if isinstance(u, Transform) else Transform.of(u, r, s, t)
    new = transformed_coefficients(curve.exact, T)
    return WeierstrassCurve(curve.context, *new), T


def transport(curve, T, P):
    """Image of a point of ``curve`` in the coordinates of ``T``."""
    if P.is_infinity:
        return P
    x, y = P.x.to_fraction(), P.y.to_fraction()
    xn = (x - T.r) / T.u ** 2
    yn = (y - T.s * (x - T.r) - T.t) / T.u ** 3
    ctx = curve.context
    return CurvePoint(ctx(xn), ctx(yn))


def transport_back(curve, T, P):
    """Inverse of :func:`transport`."""
    if P.is_infinity:
        return P
    x, y = P.x.to_fraction(), P.y.to_fraction()
    ctx = curve.context
    return CurvePoint(ctx(T.u ** 2 * x + T.r),
                      ctx(T.u ** 3 * y + T.u ** 2 * T.s * x + T.t))


# -- minimal models -------------------------------------------------------------

def _integral(q, p):
    return q == 0 or vp_fraction(q, p) >= 0


def _descent_step(a, p):
    """(r, s, t) making the u = p rescaling of ``a`` integral, or None.

    Admissible triples are stable under r -> r + p^2 r', s -> s + p s',
    t -> t + p^3 t' (+ a correction), so residues suffice.
    """
    a1, a2, a3, a4, a6 = a
    for s in range(p):
        if not _integral((a1 + 2 * s) / p, p):
            continue
        for r in range(p * p):
            if not _integral((a2 - s * a1 + 3 * r - s * s) / p ** 2, p):
                continue
            for t in range(p ** 3):
                T = Transform(Fraction(p), Fraction(r), Fraction(s), Fraction(t))
                if all(_integral(c, p) for c in transformed_coefficients(a, T)):
                    return T
    return None


def _integralizing(a, p):
    k = 0
    for i, c in zip((1, 2, 3, 4, 6), a):
        if c:
            k = max(k, -(vp_fraction(c, p) // i) if vp_fraction(c, p) < 0 else 0)
    return Transform(Fraction(1, p ** k)) if k else IDENTITY


def is_minimal(curve):
    p = curve.prime
    if not curve.is_integral():
        return False
    if vp_fraction(curve.exact_invariants["disc"], p) < 12:
        return True
    return _descent_step(curve.exact, p) is None


def minimal_model(curve):
    """An integral model with minimal v(Delta) and the transformation reaching it."""
    p = curve.prime
    T = _integralizing(curve.exact, p)
    a = transformed_coefficients(curve.exact, T)
    while vp_fraction(invariants_exact(*a)["disc"], p) >= 12:
        step = _descent_step(a, p)
        if step is None:
            break
        T = T.then(step)
        a = transformed_coefficients(a, step)
    return WeierstrassCurve(curve.context, *a), T


# -- reduction ------------------------------------------------------------------

class FpCurve:
    """The reduction of an integral Weierstrass equation modulo p."""

    def __init__(self, p, a):
        self.p = p
        self.a = tuple(int(c) % p for c in a)

    def equation(self, x, y):
        a1, a2, a3, a4, a6 = self.a
        return (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % self.p

    def is_singular_point(self, x, y):
        a1, a2, a3, a4, _ = self.a
        p = self.p
        return (self.equation(x, y) == 0 and (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p == 0
                and (2 * y + a1 * x + a3) % p == 0)

    def singular_points(self):
        return [(x, y) for x in range(self.p) for y in range(self.p)
                if self.is_singular_point(x, y)]

    def nonsingular_points(self):
        pts = [None]
        pts += [(x, y) for x in range(self.p) for y in range(self.p)
                if self.equation(x, y) == 0 and not self.is_singular_point(x, y)]
        return pts

    def negate(self, P):
        if P is None:
            return None
        a1, _, a3, _, _ = self.a
        x, y = P
        return (x, (-y - a1 * x - a3) % self.p)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        p = self.p
        a1, a2, a3, a4, a6 = self.a
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
            return None
        if x1 == x2:
            num = 3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1
            den = 2 * y1 + a1 * x1 + a3
        else:
            num, den = y2 - y1, x2 - x1
        lam = num * pow(den, -1, p) % p
        nu = (y1 - lam * x1) % p
        x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
        y3 = (-(lam + a1) * x3 - nu - a3) % p
        return (x3, y3)


def reduced_curve(curve):
    if not curve.is_integral():
        raise DomainError("reduction needs an integral model")
    return FpCurve(curve.prime, [c.residue(1) for c in curve.a])


@dataclass(frozen=True)
class ReductionType:
    kind: str                   # good, additive, split, nonsplit
    singular_point: tuple = None
    d: int = None

    def to_json(self):
        out = {"type": self.kind}
        if self.singular_point is not None:
            out["singular_point"] = list(self.singular_point)
            out["d"] = self.d
        return out


def _require_minimal(curve):
    if not is_minimal(curve):
        raise NotMinimal("the equation is not minimal; call minimal_model first")


def classify_reduction(curve):
    """Reduction type of a minimal model: good, additive, split or nonsplit."""
    _require_minimal(curve)
    p = curve.prime
    if vp_fraction(curve.exact_invariants["disc"], p) == 0:
        return ReductionType("good")
    sing = reduced_curve(curve).singular_points()
    if len(sing) != 1:
        raise PrecisionError("could not locate a unique singular point mod p",
                             found=[list(s) for s in sing])
    x0, y0 = sing[0]
    shifted = transformed_coefficients(curve.exact, Transform(Fraction(1), Fraction(x0),
                                                              Fraction(0), Fraction(y0)))
    a1 = _residue(shifted[0], p)
    a2 = _residue(shifted[1], p)
    d = (a1 * a1 + 4 * a2) % p
    if d == 0:
        return ReductionType("additive", (x0, y0), d)
    # tangent slopes at the node are the roots of T^2 + a1 T - a2
    split = any((T * T + a1 * T - a2) % p == 0 for T in range(p))
    kind = "split" if split else "nonsplit"
    if split and vp_fraction(curve.exact_invariants["j"], p) >= 0:
        raise AssertionError("split multiplicative reduction with integral j")
    return ReductionType(kind, (x0, y0), d)


def _residue(q, p):
    return q.numerator * pow(q.denominator, -1, p) % p


@dataclass(frozen=True)
class FiltrationLevel:
    level: str          # "E-E0", "E0-E1" or "E1"
    alpha: float = None

    def to_json(self):
        out = {"level": self.level}
        if self.level == "E1":
            out["alpha"] = "inf" if self.alpha == inf else self.alpha
        return out


def filtration_membership(curve, P):
    """Where P sits in E ⊃ E0 ⊃ E1 ⊃ E1,alpha (alpha = v(x/y))."""
    _require_minimal(curve)
    if P.is_infinity:
        return FiltrationLevel("E1", inf)
    if P.x.valuation < 0:
        return FiltrationLevel("E1", P.x.valuation - P.y.valuation)
    if P.y.valuation < 0:
        raise PrecisionError("integral x with non-integral y: not a point at precision")
    Ebar = reduced_curve(curve)
    if Ebar.is_singular_point(P.x.residue(1), P.y.residue(1)):
        return FiltrationLevel("E-E0")
    return FiltrationLevel("E0-E1")


def reduction_map(curve, P):
    """Image of P in the nonsingular points of the reduction (None is O)."""
    level = filtration_membership(curve, P)
    if level.level == "E-E0":
        raise MembershipError("point reduces to the singular point", point=P.to_json())
    if level.level == "E1":
        return None
    return (P.x.residue(1), P.y.residue(1))
