"""A walk through Q_p arithmetic, Hensel lifting and one-unit exp/log."""

from qpgroups.formal import exp_one_units, log_base, log_one_units, power_of_base
from qpgroups.padic import PadicContext, angular_component, is_nth_power, square_class

Q5 = PadicContext(5, 12)

x = Q5(1) / 3
print("1/3 in Q_5:", x)
print("  times 3:", x * 3)

y = Q5(250) / 7
print("v(250/7) =", y.valuation, " ac =", angular_component(y))

# -1 is a square in Q_5 since -1 = 4 mod 5
ok, root = is_nth_power(Q5(-1), 2)
print("sqrt(-1):", ok, root, " check:", root * root)

# 2 is not a square mod 5, and 5 has odd valuation
for c in (1, 2, 5, 10):
    print(f"square class of {c}:", square_class(Q5(c)))

z = Q5(5)
u = exp_one_units(z)
print("exp(5) =", u)
print("log(exp(5)) =", log_one_units(u))

# z -> 6^z identifies Z_5 with U_1
print("6^5 =", power_of_base(Q5(5)), " vs 7776 =", Q5(7776))
print("log_6(7776) =", log_base(Q5(7776)))
