import random
from fractions import Fraction

import pytest

from conftest import random_unit
from qpgroups.elliptic import INFINITY, classify_reduction, minimal_model, negate
from qpgroups.errors import DomainError, MembershipError
from qpgroups.groups import GroupDescriptor, element, group_op
from qpgroups.padic import PadicContext, vp_fraction
from qpgroups.tate import (IN_E0, TateCurve, coset_level, lattice_quotient_on_curve,
                           tate_coefficients, uniformize)

P, N, W = 5, 16, 32
cN, cW = PadicContext(P, N), PadicContext(P, W)


def rounded(pt):
    """Point at N digits; anything in E_{1,N} is O at that precision."""
    if pt.is_infinity or pt.x.valuation - pt.y.valuation >= N:
        return INFINITY
    return cN(pt.x), cN(pt.y)


@pytest.fixture(scope="module", params=[3, 5])
def tate(request):
    m = request.param
    return TateCurve(cW(P ** m)), TateCurve(cN(P ** m))


def random_u(ctx, rng, lo, hi):
    r = rng.randint(lo, hi)
    return ctx(Fraction(random_unit(rng, P, 10), 1) * Fraction(P) ** r)


def test_coefficient_examples():
    q = PadicContext(5, 12)(5)
    a4, a6 = tate_coefficients(q)
    assert a4.valuation >= 1 and a6.valuation >= 1
    assert tate_coefficients(q, terms=14) == tate_coefficients(q, terms=20)
    with pytest.raises(DomainError):
        tate_coefficients(PadicContext(5, 12)(3))


def test_j_invariant_leading_terms():
    # j = 1/q + 744 + 196884 q + ...
    for m in (1, 2, 3):
        q = Fraction(P ** m)
        tc = TateCurve(cN(P ** m))
        j = tc.curve.exact_invariants["j"]
        assert vp_fraction(j, P) == -m
        assert vp_fraction(j - 1 / q - 744 - 196884 * q, P) >= 2 * m


def test_on_curve_and_symmetries(tate):
    tcW, tcN = tate
    m = tcN.m
    rng = random.Random(m)
    for _ in range(25):
        u = random_u(cN, rng, -m + 1, m - 1)
        if (u - 1).is_zero:
            continue
        Pt = uniformize(tcN, u)
        assert tcN.curve.relative_residual(Pt) >= N
        inv = uniformize(tcN, 1 / u)
        assert rounded(tcN.add(Pt, inv)) == INFINITY
        assert uniformize(tcN, u * tcN.q) == Pt
        assert uniformize(tcN, tcN.q) == INFINITY


def test_homomorphism(tate):
    tcW, _ = tate
    m = tcW.m
    rng = random.Random(10 + m)
    for _ in range(25):
        u1, u2 = random_u(cW, rng, 0, m - 1), random_u(cW, rng, 0, m - 1)
        lhs = uniformize(tcW, u1 * u2)
        rhs = tcW.add(uniformize(tcW, u1), uniformize(tcW, u2))
        assert rounded(lhs) == rounded(rhs)


def test_valuation_identities(tate):
    _, tcN = tate
    m = tcN.m
    rng = random.Random(20 + m)
    r_max = (m - 1) // 3
    for _ in range(30):
        if r_max >= 1:
            u = random_u(cN, rng, 1, r_max)
            Pt = uniformize(tcN, u)
            assert (Pt.x.valuation, Pt.y.valuation) == (u.valuation, 2 * u.valuation)
        t = random_u(cN, rng, 1, 4)
        Pt = uniformize(tcN, 1 + t)
        assert (Pt.x.valuation, Pt.y.valuation) == (-2 * t.valuation, -3 * t.valuation)
        # filtration transport: U_alpha onto E_{1,alpha}
        assert Pt.x.valuation - Pt.y.valuation == t.valuation


def test_coset_level_is_z_mod_m(tate):
    tcW, tcN = tate
    m = tcN.m
    rng = random.Random(30 + m)
    assert coset_level(tcN, INFINITY) == IN_E0
    seen = set()
    for _ in range(30):
        u1, u2 = random_u(cW, rng, 0, m - 1), random_u(cW, rng, 0, m - 1)
        P1, P2 = uniformize(tcW, u1), uniformize(tcW, u2)
        l1, l2 = coset_level(tcW, P1), coset_level(tcW, P2)
        assert l1 == u1.valuation % m and l2 == u2.valuation % m
        assert coset_level(tcW, tcW.add(P1, P2)) == (l1 + l2) % m
        assert coset_level(tcW, negate(tcW.curve, P1)) == (-l1) % m
        seen.update((l1, l2))
    assert seen == set(range(m))


def test_minimal_model_is_split(tate):
    _, tcN = tate
    M, _ = minimal_model(tcN.curve)
    res = classify_reduction(M)
    assert res.kind == "split"
    assert vp_fraction(M.exact_invariants["j"], P) == -tcN.m


def test_lattice_quotient_on_curve_matches_catalog():
    tc = TateCurve(cW(P ** 5))
    b = cW(P ** 3 * 7)
    H = lattice_quotient_on_curve(tc, b)
    desc = GroupDescriptor("LatticeQuotient", cW, a=b)
    rng = random.Random(4)
    e = H.identity()
    for _ in range(20):
        u1, u2 = random_u(cW, rng, 0, 2), random_u(cW, rng, 0, 2)
        g1, g2 = element(desc, u1), element(desc, u2)
        prod = group_op(g1, g2).payload
        h = H.op(H.element(u1), H.element(u2))
        assert h.level == prod.valuation
        assert rounded(h.point) == rounded(uniformize(tc, prod))
        if u1.valuation + u2.valuation >= 3:
            assert h.level == u1.valuation + u2.valuation - 3
        assert H.equals(H.op(H.element(u1), e), H.element(u1))
        inv = H.inverse(H.element(u1))
        assert H.op(H.element(u1), inv).level == 0
        assert rounded(H.op(H.element(u1), inv).point) == INFINITY
    with pytest.raises(MembershipError):
        H.element(cW(P ** 3))
