"""When does a subgroup K split off a finite abelian group G?"""

from qpgroups.finite_abelian import FiniteAbelian, torsion_split

G = FiniteAbelian([2, 4])
for gens in ([[0, 2]], [[1, 0]], [[1, 2]], [[0, 1]]):
    K = [G.element(g) for g in gens]
    print("G = Z/2 x Z/4, K =", gens, "->", torsion_split(G, K).to_json())

# Z/p^2 never splits pZ/p^2
G = FiniteAbelian([9])
print("Z/9 with K = <3>:", torsion_split(G, [G.element([3])]).to_json())
