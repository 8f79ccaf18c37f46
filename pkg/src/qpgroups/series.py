"""Truncated power series in one or several variables.

Coefficients may be any ring elements supporting ``+``, ``-`` and ``*``
(``Fraction`` in practice).  A univariate series of order M is known modulo
z^M; a multivariate one modulo total degree M.
"""

from fractions import Fraction

from .errors import DomainError


class TruncatedSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        coeffs = list(coeffs)[:order]
        zero = Fraction(0)
        coeffs += [zero] * (order - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def variable(cls, order):
        return cls([0, 1], order)

    @classmethod
    def constant(cls, c, order):
        return cls([c], order)

    def __getitem__(self, n):
        return self.coeffs[n] if n < self.order else None

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return "TruncatedSeries(" + (" + ".join(terms) or "0") + f" + O(z^{self.order}))"

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._lift(other)
        M = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:M], other.coeffs[:M])], M)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([a * other for a in self.coeffs], self.order)
        M = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * M
        for i in range(M):
            ai = a[i]
            if not ai:
                continue
            for j in range(M - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out, M)

    __rmul__ = __mul__

    def valuation(self):
        """Index of the first nonzero coefficient (order if none)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.order

    def shift(self, k):
        """Multiply by z^k (k may be negative when the low terms vanish)."""
        if k >= 0:
            return TruncatedSeries([0] * k + self.coeffs, self.order + k)
        if any(self.coeffs[:-k]):
            raise DomainError("cannot divide by z: low coefficients are nonzero")
        return TruncatedSeries(self.coeffs[-k:], self.order + k)

    def inverse(self):
        """1/f for f with invertible constant term."""
        c0 = self.coeffs[0]
        if not c0:
            raise DomainError("series with zero constant term is not invertible")
        M = self.order
        inv0 = 1 / Fraction(c0)
        out = [inv0] + [Fraction(0)] * (M - 1)
        for n in range(1, M):
            s = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out[n] = -s * inv0
        return TruncatedSeries(out, M)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def derivative(self):
        return TruncatedSeries([i * c for i, c in enumerate(self.coeffs)][1:], self.order - 1)

    def integral(self):
        """Antiderivative with zero constant term."""
        return TruncatedSeries([Fraction(0)] + [Fraction(c) / (i + 1)
                                                for i, c in enumerate(self.coeffs)],
                               self.order + 1)

    def compose(self, g):
        """f(g) for a series g without constant term."""
        if g.coeffs[0]:
            raise DomainError("inner series must have zero constant term")
        M = min(self.order, g.order)
        out = TruncatedSeries([self.coeffs[M - 1]], M)
        for c in reversed(self.coeffs[:M - 1]):
            out = out * g + c
        return out

    def reversion(self):
        """Compositional inverse g with f(g(z)) = z; needs f = c z + ..., c invertible.

        Lagrange inversion: [z^n] g = (1/n) [w^(n-1)] (w / f(w))^n.
        """
        if self.coeffs[0] or not self.coeffs[1]:
            raise DomainError("reversion needs f(0) = 0 and an invertible linear term")
        M = self.order
        h = self.shift(-1).inverse()          # w / f(w), order M - 1
        out = [Fraction(0)] * M
        power = TruncatedSeries([1], M - 1)
        for n in range(1, M):
            power = power * h
            out[n] = Fraction(power.coeffs[n - 1]) / n
        return TruncatedSeries(out, M)

    def evaluate(self, x, upto=None):
        """Horner evaluation of the first ``upto`` terms at x."""
        n = self.order if upto is None else min(upto, self.order)
        acc = 0
        for c in reversed(self.coeffs[:n]):
            acc = acc * x + c
        return acc


class MultiSeries:
    """Truncated series in k variables, kept modulo total degree ``order``."""

    __slots__ = ("terms", "nvars", "order")

    def __init__(self, terms, nvars, order):
        self.terms = {e: c for e, c in terms.items() if c and sum(e) < order}
        self.nvars = nvars
        self.order = order

    @classmethod
    def variable(cls, i, nvars, order):
        e = tuple(int(j == i) for j in range(nvars))
        return cls({e: Fraction(1)}, nvars, order)

    @classmethod
    def constant(cls, c, nvars, order):
        return cls({(0,) * nvars: c}, nvars, order)

    def _lift(self, other):
        if isinstance(other, MultiSeries):
            return other
        return MultiSeries.constant(other, self.nvars, self.order)

    def __eq__(self, other):
        return isinstance(other, MultiSeries) and self.terms == other.terms

    def __getitem__(self, e):
        return self.terms.get(e, Fraction(0))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiSeries(out, self.nvars, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries({e: -c for e, c in self.terms.items()}, self.nvars, self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return MultiSeries({e: c * other for e, c in self.terms.items()},
                               self.nvars, self.order)
        M = min(self.order, other.order)
        out = {}
        items = sorted(other.terms.items(), key=lambda t: sum(t[0]))
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in items:
                if d1 + sum(e2) >= M:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiSeries(out, self.nvars, M)

    __rmul__ = __mul__

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def inverse(self):
        c0 = self.constant_term()
        if not c0:
            raise DomainError("series with zero constant term is not invertible")
        u = self * (1 / Fraction(c0))
        t = 1 - u  # no constant term
        out = MultiSeries.constant(Fraction(1), self.nvars, self.order)
        for _ in range(self.order):
            out = 1 + t * out
        return out * (1 / Fraction(c0))

    def substitute_into(self, f):
        """f(self) for a univariate TruncatedSeries f; self must have no constant term."""
        if self.constant_term():
            raise DomainError("inner series must have zero constant term")
        M = min(self.order, f.order)
        out = MultiSeries.constant(f.coeffs[M - 1], self.nvars, self.order)
        for c in reversed(f.coeffs[:M - 1]):
            out = out * self + c
        return out

    def compose(self, inner):
        """self(inner[0], ..., inner[k-1]) for series without constant terms."""
        k = self.nvars
        nv, M = inner[0].nvars, min(self.order, *(g.order for g in inner))
        powers = []
        for g in inner:
            ps = [MultiSeries.constant(Fraction(1), nv, M)]
            for _ in range(M - 1):
                ps.append(ps[-1] * g)
            powers.append(ps)
        out = MultiSeries({}, nv, M)
        for e, c in self.terms.items():
            term = MultiSeries.constant(c, nv, M)
            for i in range(k):
                if e[i]:
                    term = term * powers[i][e[i]]
            out = out + term
        return out

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def truncate(self, order):
        return MultiSeries(self.terms, self.nvars, min(order, self.order))
