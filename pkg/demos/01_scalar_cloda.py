"""Tour of the four scalar cloda and their paired multiplications.

Each clodum is a complete lattice with a multiplication that distributes
over max and a dual multiplication that distributes over min.  The residual
of the multiplication (the scalar adjoint erosion) is what every solver in
this library is built from.
"""

import numpy as np

from tropalg import MAX_MIN, MAX_PLUS, MAX_TIMES, max_softmin, soft_add

INF = float("inf")

print("=== structure of the four cloda ===")
for clodum in (MAX_PLUS, MAX_TIMES, MAX_MIN, max_softmin(0.5)):
    print(
        f"{clodum.spec_string():22s} bottom={clodum.bottom:6} top={clodum.top:6} "
        f"unit={clodum.unit:6} dual_unit={clodum.dual_unit:6} clog={clodum.is_clog}"
    )

print("\n=== the two additions of the extended reals ===")
print("lower addition  3 + (-inf)           =", MAX_PLUS.mul(3, -INF))
print("lower addition  (-inf) + (+inf)      =", MAX_PLUS.mul(-INF, INF))
print("upper addition  (-inf) +' (+inf)     =", MAX_PLUS.dual_mul(-INF, INF))

print("\n=== adjoint erosions: sup{v : a * v <= w} ===")
print("max-plus  a=2,   w=5   ->", MAX_PLUS.adjoint_erosion(2, 5))
print("max-times a=2,   w=6   ->", MAX_TIMES.adjoint_erosion(2, 6))
print("max-times a=0,   w=0   ->", MAX_TIMES.adjoint_erosion(0, 0), "(unbounded solution set)")
print("max-min   a=0.4, w=0.6 ->", MAX_MIN.adjoint_erosion(0.4, 0.6))
soft = max_softmin(1.0)
print("softmin   a=0,   w=-1  ->", soft.adjoint_erosion(0, -1), "= -log(e - 1)")

print("\n=== the adjunction law on random triples ===")
rng = np.random.default_rng(0)
a, v, w = rng.uniform(-5, 5, (3, 100000))
lhs = np.asarray(MAX_PLUS.mul(a, v)) <= w
rhs = v <= np.asarray(MAX_PLUS.adjoint_erosion(a, w))
print("mul(a,v) <= w  <=>  v <= erosion(a,w):", np.all(lhs == rhs), f"({len(a)} draws)")

print("\n=== dequantization: log-sum-exp sharpens to max as theta -> 0 ===")
for theta in (1.0, 0.1, 0.01):
    val = soft_add(theta, 1.0, 2.0)
    print(f"theta={theta:5}: soft_add(1, 2) = {val:.6f}   (gap {val - 2.0:.2e} <= "
          f"theta*log2 = {theta * np.log(2):.2e})")
