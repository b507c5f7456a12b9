"""Optimal solutions of max-plus linear systems A (*) x = b.

The greatest subsolution never overshoots b and minimizes every l_p norm
among subsolutions; shifting it up by half its l_inf error gives the
unconstrained l_inf optimum.  The canonical projection A (*) x_hat is the
best from-below approximation of b inside the column span, also under the
Hilbert projective semimetric.
"""

import numpy as np

from tropalg import (
    MAX_PLUS,
    TropicalMatrix,
    TropicalVector,
    canonical_projection,
    hilbert_metric,
    matvec_dilate,
    mmae_solution,
)

INF = float("inf")

A = TropicalMatrix([[0, -INF], [-INF, 0], [1, 1]], MAX_PLUS)
b = TropicalVector([0.0, 0.0, 0.0], MAX_PLUS)

res = mmae_solution(A, b)
print("=== the 3x2 reference system ===")
print("greatest subsolution x_hat =", res.x_hat.values)
print("residual b - A(*)x_hat     =", res.residual_gle, " (l_inf = 2*mu)")
print("mu =", res.mu)
print("l_inf optimum x_tilde      =", res.x_tilde.values)
print("residual at x_tilde        =", res.residual_mmae, " (l_inf = mu)")
print("exactly solvable:", res.exact)

print("\n=== the half-error identity on random systems ===")
rng = np.random.default_rng(2)
gaps = []
for _ in range(300):
    M = TropicalMatrix(rng.normal(0, 4, (8, 4)), MAX_PLUS)
    c = TropicalVector(rng.normal(0, 4, 8), MAX_PLUS)
    r = mmae_solution(M, c)
    gaps.append(abs(np.max(np.abs(r.residual_mmae)) - 0.5 * np.max(np.abs(r.residual_gle))))
print(f"max |linf(mmae) - linf(gle)/2| over 300 systems: {max(gaps):.2e}")

print("\n=== canonical projection and the Hilbert metric ===")
proj = canonical_projection(A, b)
print("projection of b onto span(A):", proj.values)
d_best = hilbert_metric(b.values, proj.values)
print("d_H(b, projection) =", d_best)
worse = 0
for _ in range(2000):
    v = matvec_dilate(A, TropicalVector(rng.normal(0, 3, 2), MAX_PLUS))
    if hilbert_metric(b.values, v.values) < d_best - 1e-12:
        worse += 1
print("random span elements closer than the projection:", worse)
print("d_H is projective: d_H(x, x + 7) =", hilbert_metric([1.0, 2.0], [8.0, 9.0]))
