"""Minimal models, reduction types and the E0 / E1 filtration over Q_5 and Q_7."""

from qpgroups.elliptic import (WeierstrassCurve, add_points, change_of_variables,
                               classify_reduction, filtration_membership, minimal_model,
                               reduction_map)
from qpgroups.formal import elliptic_exp, elliptic_log
from qpgroups.padic import PadicContext

Q5 = PadicContext(5, 16)
Q7 = PadicContext(7, 16)

E = WeierstrassCurve(Q5, 0, 0, 0, 1, 1)
print("E:", E)
print("discriminant", E.exact_invariants["disc"], " j =", E.exact_invariants["j"])
print("reduction:", classify_reduction(E).kind)

# scale it so it is no longer minimal, then recover the minimal model
F, T = change_of_variables(E, Q5(1) / 5, 1, 2, 3)
print("scrambled:", F)
M, S = minimal_model(F)
print("minimal again (an isomorphic integral model):", M, " via", S)

for a in [(0, 1, 0, 0, 7), (0, 3, 0, 0, 7), (0, 0, 0, 0, 7)]:
    C = WeierstrassCurve(Q7, *a)
    print(a, "->", classify_reduction(C).kind)

P = E.point(0, 1)
print("P = (0, 1):", filtration_membership(E, P).level, " reduces to", reduction_map(E, P))

# the formal group: E_1 looks like 5 Z_5
Q = elliptic_exp(E, Q5(5))
R = elliptic_exp(E, Q5(10))
print("exp(5) has v(x), v(y) =", Q.x.valuation, Q.y.valuation)
print("log(exp(5) + exp(10)) =", elliptic_log(E, add_points(E, Q, R)))
