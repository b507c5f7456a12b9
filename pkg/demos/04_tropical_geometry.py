"""Tropical polynomials, their varieties, Newton polytopes and halfspaces.

A max-plus polynomial is a convex piecewise-linear function; its variety is
the set of points where two or more affine terms tie, and its Newton
polytope is the convex hull of the slope vectors.  The polytopes obey two
algebra laws: join under pointwise max and Minkowski sum under pointwise
addition.
"""

import numpy as np

from tropalg import (
    TropicalHalfspace,
    TropicalPolynomial,
    argmax_terms,
    halfspace_contains,
    newton_polytope,
    on_variety,
    polytope_join,
    polytope_minkowski_sum,
    tropical_max,
    tropical_sum,
)

INF = float("inf")

print("=== a bent line: p(x) = max(x - 2, 3) ===")
line = TropicalPolynomial.from_terms([([1.0], -2.0), ([0.0], 3.0)])
for x in (0.0, 5.0, 10.0):
    marker = "  <- on the variety (the bend)" if on_variety(line, [x]) else ""
    print(f"p({x:4}) = {line.evaluate([x]):4}{marker}")

print("\n=== a plane curve: p(x, y) = max(2x, y, 2) ===")
curve = TropicalPolynomial.from_terms([([2, 0], 0.0), ([0, 1], 0.0), ([0, 0], 2.0)])
for pt in ([2.0, 4.0], [1.0, 2.0], [0.0, 0.0]):
    print(f"active terms at {pt}: {sorted(argmax_terms(curve, pt))}")
print("(three active terms mark the triple point of the tropical curve)")

print("\n=== Newton polytopes and their two laws ===")
p1 = TropicalPolynomial.from_terms([([1, 1], 0.0), ([3, 1], 0.0), ([1, 2], 0.0)])
p2 = TropicalPolynomial.from_terms([([0, 0], 0.0), ([-1, 0], 0.0), ([0, 1], 0.0), ([-1, 1], 0.0)])
n1, n2 = newton_polytope(p1), newton_polytope(p2)
print("N(p1) hull:", n1.hull_vertices.tolist())
print("N(p2) hull:", n2.hull_vertices.tolist())
print("join  N(p1 v p2)      :", polytope_join(n1, n2).hull_vertices.tolist())
print("check vs max-combine  :", newton_polytope(tropical_max(p1, p2)).hull_vertices.tolist())
print("Minkowski N(p1 + p2)  :", polytope_minkowski_sum(n1, n2).hull_vertices.tolist())
print("check vs term product :", newton_polytope(tropical_sum(p1, p2)).hull_vertices.tolist())

print("\n=== a tropical halfspace: the region below y = min(1 + x, 2) ===")
below = TropicalHalfspace(np.array([INF, 0.0, INF]), np.array([1.0, INF, 2.0]), orientation="min")
for pt in ([0.0, 0.0], [0.0, 1.0], [0.0, 1.5], [5.0, 2.0], [5.0, 2.5]):
    print(f"({pt[0]:4}, {pt[1]:4}) inside: {halfspace_contains(below, pt)}")
