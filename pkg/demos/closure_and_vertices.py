"""Shortest-path closure, the cycle mean, and the vertices of one polytope.

Run:  python3 demos/closure_and_vertices.py
"""
from polytropes.core import WeightMatrix, kleene_star, membership, min_mean_cycle
from polytropes.geometry import polytrope_of, shape_of, vertices

# edge 1->3 is longer than the detour through 2
c = WeightMatrix.from_rows([
    [0, 2, 7],
    [3, 0, 2],
    [1, 4, 0],
])
print("c =")
print(c)
print("\nclosure c* =")
print(kleene_star(c))
print("\nlightest cycle mean:", min_mean_cycle(c))
print(membership(c))

lam, P = polytrope_of(c)
print("\nvertices in the chart y3 = 0:")
for v in vertices(P):
    print("  ", tuple(str(x) for x in v))

sh = shape_of(c)
print("tropical vertices:", [tuple(str(x) for x in t) for t in sh.tropical_vertices])
print("maximal hexagon?", sh.is_maximal)

# a matrix with a negative cycle is raised until that cycle has weight zero
d = WeightMatrix.from_rows([[0, -3, 1], [1, 0, 1], [1, 1, 0]])
lam, P = polytrope_of(d)
print("\nlambda =", lam, "->", len(vertices(P)), "vertices after the shift")
