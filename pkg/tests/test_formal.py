import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import random_unit
from curve_helpers import lift_point, random_curve
from qpgroups.elliptic import INFINITY, WeierstrassCurve, add_points, filtration_membership, multiply
from qpgroups.errors import DomainError, MembershipError
from qpgroups.formal import (elliptic_exp, elliptic_log, exp_one_units, formal_group,
                             formal_parameter, log_base, log_one_units, power_of_base,
                             torus_exp, torus_log)
from qpgroups.padic import PadicContext, agree
from qpgroups.series import MultiSeries, TruncatedSeries

PRIMES = [2, 3, 5, 7]


def _lo(p):
    return 2 if p == 2 else 1


def random_z(ctx, rng, lo=None, hi=6):
    p = ctx.prime
    v = rng.randint(_lo(p) if lo is None else lo, hi)
    return ctx(p ** v * random_unit(rng, p, ctx.precision - v))


# -- one-units ------------------------------------------------------------------

def test_exp_log_examples():
    C = PadicContext(5, 20)
    assert exp_one_units(C.zero) == C.one
    assert log_one_units(C.one) == C.zero
    assert power_of_base(C(1)) == C(6)
    assert power_of_base(C(5)) == C(6 ** 5)
    assert log_base(C(6)) == C(1)
    assert log_base(C(7776)) == C(5)
    with pytest.raises(DomainError):
        exp_one_units(C(7))
    with pytest.raises(DomainError):
        log_one_units(C(2))
    C2 = PadicContext(2, 20)
    assert power_of_base(C2(3)) == C2(125)
    with pytest.raises(DomainError):
        exp_one_units(C2(2))


def test_exp_matches_factorial_oracle():
    # exp(p) summed with an explicit remainder bound, compared at N digits
    for p in (3, 5, 7):
        C = PadicContext(p, 15)
        total, term = Fraction(0), Fraction(1)
        for n in range(200):
            total += term
            term = term * p / (n + 1)
        assert exp_one_units(C(p)) == C(total)


@pytest.mark.parametrize("p", PRIMES)
def test_exp_log_roundtrip_and_homomorphism(p):
    # log keeps the absolute precision of its input, so leave room for v(log) <= 12
    N, W = 20, 32
    cN, cW = PadicContext(p, N), PadicContext(p, W)
    rng = random.Random(p)
    for _ in range(40):
        z1, z2 = random_z(cW, rng), random_z(cW, rng)
        e1, e2 = exp_one_units(z1), exp_one_units(z2)
        assert (e1 - 1).valuation == z1.valuation
        assert cN(log_one_units(e1)) == cN(z1)
        assert cN(exp_one_units(z1 + z2)) == cN(e1 * e2)
        scale = min(z1.valuation, z2.valuation)
        assert agree(log_one_units(e1 * e2), log_one_units(e1) + log_one_units(e2), scale + N)


@pytest.mark.parametrize("p", PRIMES)
def test_base_power_is_isomorphism(p):
    N, W = 20, 26
    cN, cW = PadicContext(p, N), PadicContext(p, W)
    rng = random.Random(10 * p)
    for _ in range(30):
        a, b = cW(rng.randrange(p ** 12)), cW(rng.randrange(p ** 12))
        assert cN(power_of_base(a + b)) == cN(power_of_base(a) * power_of_base(b))
        u = cW(1 + p ** _lo(p) * rng.randrange(1, p ** 12))
        assert cN(power_of_base(log_base(u))) == cN(u)
        if not a.is_zero:
            assert (power_of_base(a) - 1).valuation == a.valuation + _lo(p)


# -- formal group -----------------------------------------------------------------

def _w_by_undetermined_coefficients(a, M):
    """w = z^3 + ... solved coefficient by coefficient from the Weierstrass relation."""
    a1, a2, a3, a4, a6 = a
    coeffs = [Fraction(0)] * M
    coeffs[3] = Fraction(1)
    for n in range(4, M):
        w = TruncatedSeries(coeffs[:n], n + 1)   # unknown c_n treated as zero
        z = TruncatedSeries.variable(n + 1)
        rhs = z * z * z
        rhs = rhs + a1 * z * w + a2 * z * z * w + a3 * w * w + a4 * z * w * w + a6 * w * w * w
        # c_n appears on the right only through a3 w^2 etc. at degree >= n + 3
        coeffs[n] = rhs.coeffs[n]
    return coeffs


CURVES = [(0, 0, 0, 1, 1), (1, -1, 1, -3, 4), (0, 2, 0, -5, 7), (1, 0, 1, 2, 3)]


@pytest.mark.parametrize("a", CURVES)
def test_w_series_independent_solve(a):
    E = WeierstrassCurve(PadicContext(5, 20), *a)
    w = formal_group(E, 14).w
    assert w.coeffs == _w_by_undetermined_coefficients(tuple(map(Fraction, a)), 14)
    assert formal_group(E, 9).w.coeffs == w.coeffs[:9]


def test_short_weierstrass_w():
    # y^2 = x^3 + A x + B: w = z^3 + A z^7 + B z^9 + 2A^2 z^11 + ...
    E = WeierstrassCurve(PadicContext(5, 20), 0, 0, 0, 3, 2)
    w = formal_group(E, 12).w
    assert w.coeffs[:12] == [0, 0, 0, 1, 0, 0, 0, 3, 0, 2, 0, 18]


def _lam_of(F, lam):
    return F.substitute_into(lam)


@pytest.mark.parametrize("a", CURVES)
def test_formal_group_laws(a):
    M = 9
    E = WeierstrassCurve(PadicContext(5, 20), *a)
    G = formal_group(E, M)
    z1 = MultiSeries.variable(0, 2, M)
    z2 = MultiSeries.variable(1, 2, M)
    F = G.law
    assert G.log.coeffs[:2] == [0, 1]
    assert F.compose([z1, MultiSeries({}, 2, M)]) == z1
    assert F.compose([z2, z1]) == F
    lhs = _lam_of(F, G.log)
    rhs = z1.substitute_into(G.log) + z2.substitute_into(G.log)
    assert lhs == rhs
    x = [MultiSeries.variable(i, 3, M) for i in range(3)]
    left = F.compose([F.compose([x[0], x[1]]), x[2]])
    right = F.compose([x[0], F.compose([x[1], x[2]])])
    assert left == right
    z = TruncatedSeries.variable(M)
    assert G.log.compose(G.exp) == z


@pytest.mark.parametrize("a", CURVES)
def test_invariant_differential_second_form(a):
    # lambda' = dy / (3x^2 + 2 a2 x + a4 - a1 y) with x = V/z^2, y = -V/z^3, V = z^3/w;
    # clearing z^4 gives (3V - zV') / (3V^2 + a1 z V + 2 a2 z^2 V + a4 z^4)
    M = 12
    E = WeierstrassCurve(PadicContext(5, 20), *a)
    a1, a2, a3, a4, a6 = map(Fraction, a)
    G = formal_group(E, M + 4)
    V = TruncatedSeries(G.w.shift(-3).inverse().coeffs, M)
    z = TruncatedSeries.variable(M)
    num = 3 * V - z * TruncatedSeries(V.derivative().coeffs, M)
    den = 3 * V * V + a1 * z * V + 2 * a2 * z * z * V + a4 * z * z * z * z
    omega = num / den
    assert TruncatedSeries(G.log.derivative().coeffs, M - 1) == TruncatedSeries(omega.coeffs, M - 1)


# -- elliptic log / exp ------------------------------------------------------------

def e1_point(E, rng, alpha):
    """A point of E_{1,alpha} \\ E_{1,alpha+1} found by lifting x = p^(-2 alpha) * unit."""
    ctx = E.context
    p = ctx.prime
    for _ in range(400):
        x = ctx(Fraction(random_unit(rng, p, 8), p ** (2 * alpha)))
        P = lift_point(E, x)
        if P is not None and P.x.valuation - P.y.valuation == alpha:
            return P
    raise RuntimeError("no E1 point found")


def test_elliptic_examples():
    C = PadicContext(5, 20)
    E = WeierstrassCurve(C, 0, 0, 0, 1, 1)
    assert elliptic_log(E, INFINITY) == C.zero
    assert elliptic_exp(E, C.zero) == INFINITY
    P = elliptic_exp(E, C(5))
    assert (P.x.valuation, P.y.valuation) == (-2, -3)
    assert E.relative_residual(P) >= 20
    with pytest.raises(MembershipError):
        elliptic_log(E, E.point(0, 1))
    with pytest.raises(DomainError):
        elliptic_exp(E, C(2))
    assert formal_parameter(P).valuation == 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_elliptic_log_exp(p):
    N, W = 16, 24
    cN, cW = PadicContext(p, N), PadicContext(p, W)
    rng = random.Random(p)
    for _ in range(3):
        E = random_curve(cW, rng)
        for alpha in (1, 2):
            P, Q = e1_point(E, rng, alpha), e1_point(E, rng, alpha)
            lP, lQ = elliptic_log(E, P), elliptic_log(E, Q)
            assert lP.valuation == alpha
            assert filtration_membership(E, P).alpha == alpha
            assert cN(elliptic_log(E, add_points(E, P, Q))) == cN(lP + lQ)
            assert cN(elliptic_log(E, multiply(E, 3, P))) == cN(3 * lP)
            back = elliptic_exp(E, lP)
            assert (cN(back.x), cN(back.y)) == (cN(P.x), cN(P.y))
            z = random_z(cW, rng, lo=alpha, hi=alpha)
            R = elliptic_exp(E, z)
            assert R.x.valuation - R.y.valuation == alpha
            assert cN(elliptic_log(E, R)) == cN(z)


def test_multiplication_by_p_deepens_filtration():
    C = PadicContext(5, 20)
    rng = random.Random(0)
    E = WeierstrassCurve(C, 0, 0, 0, 1, 1)
    P = e1_point(E, rng, 1)
    Q = multiply(E, 5, P)
    assert Q.x.valuation - Q.y.valuation == 2


# -- twisted tori --------------------------------------------------------------------

def rational_torus_point(ctx, d, t):
    """((1 + d t^2)/(1 - d t^2), 2t/(1 - d t^2)) has norm one for every t."""
    dt2 = d * t * t
    return ctx((1 + dt2) / (1 - dt2)), ctx(2 * t / (1 - dt2))


def torus_mul(g, h, d):
    return g[0] * h[0] + d * g[1] * h[1], g[0] * h[1] + g[1] * h[0]


@pytest.mark.parametrize("p,d", [(7, 3), (5, 2), (5, 10), (3, 6), (3, 2), (2, 3), (2, 5)])
def test_torus_log_homomorphism(p, d):
    N, W = 16, 24
    cN, cW = PadicContext(p, N), PadicContext(p, W)
    dW = cW(d)
    rng = random.Random(p * d)
    assert torus_log(dW, (cW.one, cW.zero)) == cW.zero
    for _ in range(15):
        t1 = Fraction(p ** rng.randint(_lo(p), 4) * random_unit(rng, p, 6), random_unit(rng, p, 3))
        t2 = Fraction(p ** rng.randint(_lo(p), 4) * random_unit(rng, p, 6), random_unit(rng, p, 3))
        g = rational_torus_point(cW, d, t1)
        h = rational_torus_point(cW, d, t2)
        lg, lh = torus_log(dW, g), torus_log(dW, h)
        assert cN(torus_log(dW, torus_mul(g, h, dW))) == cN(lg + lh)
        assert torus_log(dW, (g[0], -g[1])) == -lg
        if d % p:
            assert lg.valuation == g[1].valuation
        x, y = torus_exp(dW, lg)
        assert (cN(x), cN(y)) == (cN(g[0]), cN(g[1]))


@pytest.mark.parametrize("p,d", [(7, 3), (5, 10), (2, 5)])
def test_torus_exp_norm(p, d):
    C = PadicContext(p, 20)
    rng = random.Random(d)
    dd = C(d)
    for _ in range(20):
        z = random_z(C, rng)
        x, y = torus_exp(dd, z)
        assert agree(x * x - dd * y * y, C.one, 20)
        assert PadicContext(p, 14)(torus_log(dd, (x, y))) == PadicContext(p, 14)(z)


@given(st.integers(1, 5 ** 8))
def test_exp_valuation_property(k):
    C = PadicContext(5, 20)
    z = C(5 * k)
    assert (exp_one_units(z) - 1).valuation == z.valuation
