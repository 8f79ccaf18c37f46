from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qpgroups.errors import DomainError
from qpgroups.series import MultiSeries, TruncatedSeries

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def series(order, unit_linear=False):
    coeffs = st.lists(fractions, min_size=order, max_size=order)
    if unit_linear:
        coeffs = coeffs.map(lambda c: [0, c[1] or Fraction(1)] + c[2:])
    return coeffs.map(lambda c: TruncatedSeries(c, order))


def test_geometric_inverse():
    f = TruncatedSeries([1, -1], 8)
    assert f.inverse().coeffs == [1] * 8


def test_known_reversion():
    # z - z^2 reverses to the Catalan series
    f = TruncatedSeries([0, 1, -1], 9)
    assert f.reversion().coeffs == [0, 1, 1, 2, 5, 14, 42, 132, 429]


def test_reversion_rejects():
    with pytest.raises(DomainError):
        TruncatedSeries([0, 0, 1], 5).reversion()
    with pytest.raises(DomainError):
        TruncatedSeries([0, 1], 5).inverse()


@given(series(9, unit_linear=True))
def test_reversion_is_two_sided(f):
    g = f.reversion()
    z = TruncatedSeries.variable(9)
    assert f.compose(g) == z
    assert g.compose(f) == z


@given(series(7), series(7), series(7))
def test_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == TruncatedSeries([], 7)


@given(series(7), series(7, unit_linear=True))
def test_derivative_and_composition(f, g):
    # chain rule
    lhs = f.compose(g).derivative()
    rhs = f.derivative().compose(TruncatedSeries(g.coeffs, 6)) * g.derivative()
    assert lhs == rhs
    assert f.integral().derivative() == f


def test_multiseries_inverse_and_substitution():
    x = MultiSeries.variable(0, 2, 6)
    y = MultiSeries.variable(1, 2, 6)
    s = 1 + x + 2 * y + x * y
    assert s * s.inverse() == MultiSeries.constant(Fraction(1), 2, 6)
    geo = TruncatedSeries([1] * 6, 6)
    # 1/(1 - t) at t = x + y
    assert (x + y).substitute_into(geo) * (1 - x - y) == MultiSeries.constant(Fraction(1), 2, 6)


def test_multiseries_compose_and_evaluate():
    x = MultiSeries.variable(0, 2, 5)
    y = MultiSeries.variable(1, 2, 5)
    f = x * y + 3 * x
    g = f.compose([x + y, x * x])
    assert g == (x + y) * x * x + 3 * (x + y)
    assert f.evaluate((Fraction(2), Fraction(5))) == 16
