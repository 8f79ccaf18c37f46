"""Cell decompositions of one-variable Presburger formulas."""

from qpgroups.presburger import decompose, recognize_subgroup

formulas = [
    "exists y. x = 2*y and 0 < x and x < 10",
    "x = 7 or (x > 3 and 3 | x - 1)",
    "forall y. (y < x or x < y or x = y)",
    "exists y. (x = 6*y or x = 6*y + 3)",
    "not exists y. x = 2*y",
]

for f in formulas:
    cells = decompose(f, var="x")
    print(f)
    for c in cells:
        print("   ", c)
    print("    subgroup?", recognize_subgroup(cells))
    print()
