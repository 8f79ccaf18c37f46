"""The Tate curve E_q for q = 5^3: points from units, levels in E/E0 = Z/3."""

from qpgroups.elliptic import classify_reduction, minimal_model
from qpgroups.padic import PadicContext
from qpgroups.tate import TateCurve, coset_level, lattice_quotient_on_curve, uniformize

Q5 = PadicContext(5, 16)
tc = TateCurve(Q5(125))
print(tc, "\n  ", tc.curve)
print("v(j) =", tc.curve.j.valuation)
print("reduction:", classify_reduction(minimal_model(tc.curve)[0]).kind)

for u in (Q5(2), Q5(10), Q5(50), Q5(1) + 25):
    P = uniformize(tc, u)
    print(f"u = {u}\n   phi(u) = {P}\n   level {coset_level(tc, P)}")

u1, u2 = Q5(3), Q5(10)
lhs = uniformize(tc, u1 * u2)
rhs = tc.add(uniformize(tc, u1), uniformize(tc, u2))
print("phi(u1 u2) - (phi(u1) + phi(u2)) in x:", (lhs.x - rhs.x).valuation, "digits agree")

H = lattice_quotient_on_curve(tc, Q5(25))
g = H.op(H.element(Q5(5)), H.element(Q5(5)))
print("in O_E(25)/<25>: level 1 + level 1 wraps to level", g.level)
