import pytest
from hypothesis import given, strategies as st

from qpgroups.errors import DomainError, NotASubgroup
from qpgroups.finite_abelian import (FiniteAbelian, NonSplit, Split, abelian_groups,
                                     subgroups, torsion_split)


def has_complement(G, K, subs):
    """Exhaustive oracle: K is a direct summand iff some C meets K trivially with |C||K| = |G|."""
    need = G.order // len(K)
    return any(len(C) == need and C & K == {G.zero} for C in subs)


def check_all(order_limit):
    checked = 0
    for n in range(1, order_limit + 1):
        for orders in abelian_groups(n):
            G = FiniteAbelian(orders)
            subs = subgroups(G)
            for K in subs:
                res = torsion_split(G, list(K), generators=False)
                assert isinstance(res, Split) == has_complement(G, K, subs), (orders, sorted(K))
                if isinstance(res, NonSplit):
                    nG = G.multiple(res.n)
                    nK = G.multiple(res.n, K)
                    assert res.witness in nG and res.witness in K and res.witness not in nK
                else:
                    for g in G.elements():
                        assert res.apply(g) in K
                checked += 1
    return checked


def test_examples():
    Z4 = FiniteAbelian([4])
    res = torsion_split(Z4, [(2,)])
    assert isinstance(res, NonSplit) and res.n == 2
    V = FiniteAbelian([2, 2])
    assert isinstance(torsion_split(V, [(1, 0)]), Split)
    Z6 = FiniteAbelian([6])
    res = torsion_split(Z6, [(3,)])
    assert isinstance(res, Split)
    assert res.apply((1,)) == (3,)


def test_agrees_with_complement_search_small():
    assert check_all(16) > 100


def test_subgroup_counts():
    # Z/p x Z/p has p + 3 subgroups; Z/n has d(n)
    assert len(subgroups(FiniteAbelian([3, 3]))) == 6
    assert len(subgroups(FiniteAbelian([12]))) == 6
    assert len(subgroups(FiniteAbelian([2, 2, 2]))) == 16


def test_abelian_groups_enumeration():
    assert sorted(abelian_groups(8)) == [(2, 2, 2), (2, 4), (8,)]
    assert abelian_groups(1) == [()]
    assert len(abelian_groups(64)) == 11


def test_rejects_non_subgroup_and_bad_orders():
    G = FiniteAbelian([4])
    with pytest.raises(NotASubgroup):
        torsion_split(G, [(0,), (1,)], generators=False)
    with pytest.raises(DomainError):
        FiniteAbelian([4, 6])


@given(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=2),
       st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=3))
def test_retraction_is_homomorphism(orders, gens):
    orders = sorted(orders)
    if len(orders) == 2 and orders[1] % orders[0]:
        return
    G = FiniteAbelian(orders)
    gens = [G.element(g[:G.rank]) for g in gens]
    K = G.span(gens)
    res = torsion_split(G, gens)
    if isinstance(res, Split):
        for g in G.elements():
            for h in G.elements():
                assert res.apply(G.add(g, h)) == G.add(res.apply(g), res.apply(h))
        assert all(res.apply(k) == k for k in K)
