"""Matrix and signal operators on weighted lattices.

Matrix-vector dilations and their adjoint erosions come in pairs; composing
them gives openings and closings, the two lattice projections.  The same
machinery runs 1-D sup-mul convolutions of finite-support signals.
"""

import numpy as np

from tropalg import (
    MAX_PLUS,
    Signal1D,
    TropicalMatrix,
    TropicalVector,
    conj_transpose,
    matvec_dilate,
    matvec_erode,
    signal_dilate,
    signal_erode,
)

INF = float("inf")

print("=== matrix dilation and its adjoint erosion ===")
A = TropicalMatrix([[0, -INF], [-INF, 0], [1, 1]], MAX_PLUS)
y = TropicalVector([0.0, 0.0, 0.0], MAX_PLUS)
x = matvec_erode(A, y)
print("A min-erode y          =", x.values)
print("A max-dilate (erode y) =", matvec_dilate(A, x).values, "<= y  (opening)")

print("\nconjugate transpose of [[1, 2]]:")
print(conj_transpose(TropicalMatrix([[1.0, 2.0]], MAX_PLUS)).values)

print("\n=== adjunction on random instances ===")
rng = np.random.default_rng(1)
checks = []
for _ in range(500):
    B = TropicalMatrix(rng.normal(0, 3, (4, 3)), MAX_PLUS)
    u = TropicalVector(rng.normal(0, 3, 3), MAX_PLUS)
    v = TropicalVector(rng.normal(0, 3, 4), MAX_PLUS)
    lhs = np.all(matvec_dilate(B, u).values <= v.values)
    rhs = np.all(u.values <= matvec_erode(B, v).values)
    checks.append(lhs == rhs)
print("dilate(x) <= y  <=>  x <= erode(y):", all(checks), f"({len(checks)} instances)")

print("\n=== sup-plus convolution of signals ===")
f = Signal1D([0.0, 1.0], 0, MAX_PLUS)
h = Signal1D([0.0, 0.0], 0, MAX_PLUS)
out = signal_dilate(f, h)
print(f"f=[0,1]@0 dilated by h=[0,0]@0 -> {out.values} at origin {out.origin}")

print("\n=== multiscale erosion by parabolas ===")
# eroding a quadratic by -x^2/(2t) is the classic scale-space operation
xs = np.arange(-8, 9)
g = Signal1D(xs.astype(float) ** 2, -8, MAX_PLUS)
for t in (0.5, 2.0):
    ks = np.arange(-4, 5)
    kernel = Signal1D(-ks.astype(float) ** 2 / (2 * t), -4, MAX_PLUS)
    er = signal_erode(g, kernel)
    mid = er.values[0 - er.origin - 3: 0 - er.origin + 4]
    print(f"t={t}: eroded values near the origin: {np.round(mid, 3)}")
