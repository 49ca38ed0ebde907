"""Kronecker products need no search: profiles multiply, exponents average.

We draw random invertible 3x3 and 4x4 kernels, brute-force the 12x12
product, and compare it with the composed profile.  Then we show the
weighted-average form of the exponent and that powers keep the exponent.
"""

import numpy as np

from polarkit import (
    dividing_point_decomposition,
    exponent,
    kron_exponent,
    kron_mat,
    kron_partial_distances,
    kron_power,
    partial_distances,
)
from polarkit.verify import random_invertible

rng = np.random.default_rng(13)
a, b = random_invertible(rng, 3), random_invertible(rng, 4)
pa, pb = partial_distances(a), partial_distances(b)
brute = partial_distances(kron_mat(a, b))
composed = kron_partial_distances(pa, pb)
print("A profile:", list(pa), " B profile:", list(pb))
print("brute force A(x)B: ", list(brute))
print("composed profile:  ", list(composed))
print("equal:", brute == composed)

ea, eb = exponent(pa).exponent, exponent(pb).exponent
closed = kron_exponent(ea, 3, eb, 4)
alpha, split = dividing_point_decomposition(ea, 3, eb, 4)
print(f"\nE(A)={ea:.6f}  E(B)={eb:.6f}")
print(f"E(A(x)B) brute {exponent(brute).exponent:.15f}")
print(f"         closed {closed:.15f}")
print(f"alpha = log_4 3 = {alpha:.6f}; alpha/(1+alpha) E(A) + 1/(1+alpha) E(B) = {split:.15f}")

g = a
for n in (1, 2):
    e = exponent(partial_distances(kron_power(g, n))).exponent
    print(f"E(A^{n}) = {e:.15f}")
