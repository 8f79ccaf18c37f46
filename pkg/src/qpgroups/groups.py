"""Concrete one-dimensional groups over Q_p behind a uniform interface.

A :class:`GroupDescriptor` names a family and its parameters; elements are
:class:`GroupElement` values carrying a canonical payload.  The families:

``AdditiveQp``       (Q_p, +)
``AdditiveDalpha``   (p^alpha Z_p, +), the ball D_alpha
``PowersOfUnits``    ((Q_p^x)^n, *)
``Ualpha``           one-units 1 + p^alpha Z_p
``LatticeQuotient``  O(a)^n / <a^n> realised on n-th powers b with
                     0 <= v(b) < n v(a); the product is divided by a^n on
                     overflow (n = 1 gives H_a)
``TwistedTorus``     norm-one elements x + y sqrt(d), d a non-square
``TorusFalpha``      the congruence subgroup v(x - 1) >= alpha, v(y) >= alpha

Compact families (D_alpha, U_alpha, the tori) compare payloads modulo a
fixed power of p, so the group laws hold exactly.  (Q_p, +) keeps relative
precision and is exact only while sums fit in N digits.
"""

import random as _random
from dataclasses import dataclass, field

from .errors import DescriptorMismatch, DomainError, MembershipError, PrecisionError
from .padic import (PadicContext, PadicNumber, is_nth_power, parse_padic,
                    format_padic, square_class, vp)

FAMILIES = ("AdditiveQp", "AdditiveDalpha", "PowersOfUnits", "Ualpha",
            "LatticeQuotient", "TwistedTorus", "TorusFalpha")

_TORI = ("TwistedTorus", "TorusFalpha")


def _min_alpha(p):
    return 2 if p == 2 else 1


@dataclass(frozen=True)
class GroupDescriptor:
    family: str
    context: PadicContext
    alpha: int = None
    n: int = None
    a: PadicNumber = None
    d: PadicNumber = None
    # m = v(a) for LatticeQuotient
    m: int = field(default=None, compare=False)

    def __post_init__(self):
        fam, ctx = self.family, self.context
        if fam not in FAMILIES:
            raise DomainError(f"unknown family {fam!r}", family=fam)
        p = ctx.prime
        if fam == "AdditiveDalpha":
            self._need_int("alpha")
        if fam in ("Ualpha", "TorusFalpha"):
            self._need_int("alpha")
            if self.alpha < _min_alpha(p):
                raise DomainError(f"{fam} needs alpha >= {_min_alpha(p)} at p = {p}",
                                  alpha=self.alpha)
        if fam == "PowersOfUnits":
            self._need_int("n")
            if self.n < 1:
                raise DomainError("n must be positive", n=self.n)
            if ctx.precision < 2 * vp(self.n, p) + 2:
                raise PrecisionError("precision too small to decide n-th powers",
                                     n=self.n, precision=ctx.precision)
        if fam == "LatticeQuotient":
            n = 1 if self.n is None else self.n
            if not isinstance(n, int) or n < 1:
                raise DomainError("n must be a positive integer", n=n)
            object.__setattr__(self, "n", n)
            a = self._padic("a")
            if a.is_zero or a.valuation < 1:
                raise DomainError("LatticeQuotient needs v(a) >= 1", a=str(a))
            object.__setattr__(self, "m", a.valuation)
            if n > 1 and ctx.precision < 2 * vp(n, p) + 2:
                raise PrecisionError("precision too small to decide n-th powers",
                                     n=n, precision=ctx.precision)
        if fam in _TORI:
            object.__setattr__(self, "d", normalize_d(self._padic("d")))

    def _need_int(self, name):
        v = getattr(self, name)
        if not isinstance(v, int) or isinstance(v, bool):
            raise DomainError(f"{self.family} needs an integer {name}", **{name: v})

    def _padic(self, name):
        v = getattr(self, name)
        if v is None:
            raise DomainError(f"{self.family} needs parameter {name}")
        if not isinstance(v, PadicNumber):
            v = self.context(v)
        elif v.context != self.context:
            v = v.to_context(self.context)
        object.__setattr__(self, name, v)
        return v

    @property
    def prime(self):
        return self.context.prime

    @property
    def is_torus(self):
        return self.family in _TORI

    def to_json(self):
        out = {"family": self.family, "p": self.prime, "precision": self.context.precision}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.n is not None:
            out["n"] = self.n
        if self.a is not None:
            out["a"] = format_padic(self.a)
        if self.d is not None:
            out["d"] = format_padic(self.d)
        return out

    @classmethod
    def from_json(cls, obj):
        ctx = PadicContext(int(obj["p"]), int(obj["precision"]))
        kw = {}
        for key in ("alpha", "n"):
            if obj.get(key) is not None:
                kw[key] = int(obj[key])
        for key in ("a", "d"):
            if obj.get(key) is not None:
                kw[key] = parse_padic(str(obj[key]), ctx)
        return cls(obj["family"], ctx, **kw)

    # convenience wrappers
    def identity(self):
        return identity(self)

    def element(self, payload):
        return element(self, payload)

    def contains(self, payload):
        return contains(self, payload)


def normalize_d(d):
    """Strip even powers of p so that v(d) is 0 or 1; reject squares."""
    if d.is_zero:
        raise DomainError("d must be nonzero")
    if square_class(d) == "1":
        raise DomainError("d must be a non-square", d=format_padic(d))
    k = d.valuation // 2
    return d * d.context.power_of_p(-2 * k) if k else d


@dataclass(frozen=True, eq=False)
class GroupElement:
    descriptor: GroupDescriptor
    payload: object

    def __mul__(self, other):
        return group_op(self, other)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return equals(self, other)

    def __hash__(self):
        return hash((self.descriptor.family, self.payload))

    def inverse(self):
        return inverse(self)

    def payload_json(self):
        if self.descriptor.is_torus:
            return [format_padic(c) for c in self.payload]
        return format_padic(self.payload)

    def __repr__(self):
        return f"GroupElement({self.descriptor.family}, {self.payload_json()!r})"


# -- canonical payloads ---------------------------------------------------------

def _canon(desc, payload):
    ctx = desc.context
    fam = desc.family
    if desc.is_torus:
        x, y = (_coerce(ctx, c) for c in payload)
        if x.valuation < 0 or y.valuation < 0:
            raise MembershipError("torus coordinates must be integral",
                                  x=format_padic(x), y=format_padic(y))
        N = ctx.precision
        return (ctx(x.residue(N)), ctx(y.residue(N)))
    x = _coerce(ctx, payload)
    if fam == "AdditiveDalpha":
        if x.is_zero:
            return x
        if x.valuation < desc.alpha:
            raise MembershipError(f"v(x) < alpha = {desc.alpha}", x=format_padic(x))
        shifted = x * ctx.power_of_p(-desc.alpha)
        r = shifted.residue(ctx.precision)
        return PadicNumber._from_int(ctx, r, desc.alpha)
    return x


def _coerce(ctx, value):
    if isinstance(value, PadicNumber):
        if value.context.prime != ctx.prime:
            raise DescriptorMismatch("payload uses a different prime")
        return value if value.context == ctx else value.to_context(ctx)
    if isinstance(value, str):
        return parse_padic(value, ctx)
    return ctx(value)


def _member(desc, x):
    """Membership of an already canonical payload."""
    fam = desc.family
    ctx = desc.context
    if fam == "AdditiveQp" or fam == "AdditiveDalpha":
        return True
    if fam == "PowersOfUnits":
        return not x.is_zero and is_nth_power(x, desc.n)[0]
    if fam == "Ualpha":
        return not x.is_zero and (x - 1).valuation >= desc.alpha
    if fam == "LatticeQuotient":
        if x.is_zero or not 0 <= x.valuation < desc.n * desc.m:
            return False
        return desc.n == 1 or is_nth_power(x, desc.n)[0]
    xx, yy = x
    if (xx * xx - desc.d * yy * yy - 1).valuation < ctx.precision:
        return False
    if fam == "TorusFalpha":
        return (xx - 1).valuation >= desc.alpha and yy.valuation >= desc.alpha
    return True


def contains(desc, payload):
    """Does the raw payload describe an element of the group?"""
    try:
        return _member(desc, _canon(desc, payload))
    except MembershipError:
        return False


def element(desc, payload):
    x = _canon(desc, payload)
    if not _member(desc, x):
        raise MembershipError(f"payload is not an element of {desc.family}",
                              family=desc.family)
    return GroupElement(desc, x)


def identity(desc):
    ctx = desc.context
    if desc.family in ("AdditiveQp", "AdditiveDalpha"):
        return GroupElement(desc, ctx.zero)
    if desc.is_torus:
        return GroupElement(desc, (ctx.one, ctx.zero))
    return GroupElement(desc, ctx.one)


def _same(g, h):
    if g.descriptor != h.descriptor:
        raise DescriptorMismatch("elements belong to different groups",
                                 left=g.descriptor.family, right=h.descriptor.family)
    return g.descriptor


def group_op(g, h):
    desc = _same(g, h)
    fam = desc.family
    x, y = g.payload, h.payload
    if fam in ("AdditiveQp", "AdditiveDalpha"):
        return GroupElement(desc, _canon(desc, x + y))
    if desc.is_torus:
        d = desc.d
        out = (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])
        return GroupElement(desc, _canon(desc, out))
    z = x * y
    if fam == "LatticeQuotient" and z.valuation >= desc.n * desc.m:
        z = z / desc.a ** desc.n
    return GroupElement(desc, z)


def inverse(g):
    desc = g.descriptor
    fam = desc.family
    x = g.payload
    if fam in ("AdditiveQp", "AdditiveDalpha"):
        return GroupElement(desc, _canon(desc, -x))
    if desc.is_torus:
        return GroupElement(desc, _canon(desc, (x[0], -x[1])))
    if fam == "LatticeQuotient" and x.valuation > 0:
        return GroupElement(desc, desc.a ** desc.n / x)
    return GroupElement(desc, x.inverse())


def equals(g, h):
    _same(g, h)
    return g.payload == h.payload


def project(desc, b):
    """The canonical surjection onto ``O(a)^n/<a^n>``: divide b by a power of a^n."""
    if desc.family != "LatticeQuotient":
        raise DescriptorMismatch("project applies to LatticeQuotient only")
    b = _coerce(desc.context, b)
    if b.is_zero:
        raise MembershipError("zero has no class")
    k = b.valuation // (desc.n * desc.m)
    return element(desc, b / desc.a ** (desc.n * k))


# -- sampling -------------------------------------------------------------------

def _random_unit(rng, p, digits):
    while True:
        u = rng.randrange(1, p ** digits)
        if u % p:
            return u


def random_element(desc, rng=None, digits=None):
    """A random element.  ``digits`` bounds the size of the sampled unit parts."""
    rng = rng or _random.Random()
    ctx = desc.context
    p, N = ctx.prime, ctx.precision
    digits = digits or N
    fam = desc.family
    if fam == "AdditiveQp":
        if rng.random() < 0.05:
            return identity(desc)
        return element(desc, ctx.from_parts(rng.randint(-3, 3), _random_unit(rng, p, digits)))
    if fam == "AdditiveDalpha":
        v = desc.alpha + rng.randint(0, 3)
        return element(desc, ctx.from_parts(v, _random_unit(rng, p, digits)))
    if fam == "PowersOfUnits":
        y = ctx.from_parts(rng.randint(-2, 2), _random_unit(rng, p, digits))
        return element(desc, y ** desc.n)
    if fam == "Ualpha":
        k = rng.randrange(0, p ** digits)
        return element(desc, 1 + ctx(k) * ctx.power_of_p(desc.alpha))
    if fam == "LatticeQuotient":
        y = ctx.from_parts(rng.randrange(0, desc.m), _random_unit(rng, p, digits))
        return element(desc, y ** desc.n)
    # tori: rational parametrisation of the conic x^2 - d y^2 = 1
    d = desc.d
    lo = desc.alpha if fam == "TorusFalpha" else -2
    dq = d.to_fraction()
    while True:
        t = ctx.from_parts(rng.randint(lo, lo + 3), _random_unit(rng, p, digits)).to_fraction()
        den = 1 - dq * t * t
        if den:
            break
    return element(desc, (ctx((1 + dq * t * t) / den), ctx(2 * t / den)))


# -- filtrations ----------------------------------------------------------------

def filtration_index(desc, alpha, beta):
    """Index of level ``beta`` in level ``alpha`` by enumerating cosets.

    Levels are U_alpha (Ualpha), p^alpha Z_p (AdditiveDalpha) or F_alpha
    (TorusFalpha, TwistedTorus); elements of level alpha are listed modulo
    p^beta and counted up to the kernel of reduction, which is level beta.
    """
    fam = desc.family
    ctx = desc.context
    p = ctx.prime
    if fam not in ("Ualpha", "AdditiveDalpha", "TorusFalpha", "TwistedTorus"):
        raise DescriptorMismatch(f"{fam} carries no filtration", family=fam)
    if beta < alpha:
        raise DomainError("need beta >= alpha", alpha=alpha, beta=beta)
    if fam != "AdditiveDalpha" and alpha < _min_alpha(p):
        raise DomainError(f"need alpha >= {_min_alpha(p)} at p = {p}", alpha=alpha)
    if ctx.precision < beta:
        raise PrecisionError("precision below beta", precision=ctx.precision, beta=beta)
    keys = set()
    if fam == "Ualpha":
        for k in range(p ** (beta - alpha)):
            u = 1 + ctx(k) * ctx.power_of_p(alpha)
            keys.add(u.residue(beta))
    elif fam == "AdditiveDalpha":
        for k in range(p ** (beta - alpha)):
            x = ctx(k) * ctx.power_of_p(alpha)
            keys.add((x * ctx.power_of_p(-alpha)).residue(beta - alpha))
    else:
        tor = GroupDescriptor("TorusFalpha", ctx, alpha=max(alpha, 1), d=desc.d) \
            if fam == "TwistedTorus" else desc
        d = tor.d
        # y = 2t/(1 - d t^2) has v(y) = v(t) + v(2); cover all t with v(y) >= alpha
        start = max(alpha - vp(2, p), 0)
        for k in range(p ** (beta - start + 1)):
            t = ctx(k) * ctx.power_of_p(start)
            den = 1 - d * t * t
            x, y = (1 + d * t * t) / den, 2 * t / den
            if (x - 1).valuation >= alpha and y.valuation >= alpha:
                keys.add((x.residue(beta), y.residue(beta)))
    return len(keys)
