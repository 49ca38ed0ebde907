"""Partial distances and exponents of the built-in kernels.

A kernel's exponent is the average of log_l of its partial distances.
Swapping the size-3 factor G3L for G3H raises the exponent of the size-6
product, which is the comparison the BLER demo later looks at.
"""

from polarkit import builtin, exponent, partial_distances
from polarkit.distance import round_half_up

print(f"{'kernel':<8}{'partial distances':<22}{'exponent':>9}")
for name in ("G2", "G3L", "G3H", "G6L", "G6H"):
    k = builtin(name)
    profile = partial_distances(k.matrix)
    e = exponent(profile).exponent
    print(f"{name:<8}{','.join(map(str, profile)):<22}{round_half_up(e, 3):>9}")

print("\nG3H as a matrix:")
print(builtin("G3H").matrix)
