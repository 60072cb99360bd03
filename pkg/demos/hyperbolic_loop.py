"""The loop on hyperbolic 3-space: two ways to multiply points.

Points of upper half space are multiplied once through the positive
Hermitian section of SL2(C) and once through Mobius translations; the
results agree. The Bol condition is then sampled.
"""

from bolkit import loops as L
from bolkit.matrix_groups import JQuaternion

ctx = L.hyperbolic_space_loop()
p, q = JQuaternion(0.4 - 0.3j, 1.8), JQuaternion(-1.1 + 0.2j, 0.6)
x, y = L.translation_to(p), L.translation_to(q)

via_group = L.hyperbolic_point(L.loop_mul(ctx, x, y))
via_points = L.mobius_product(p, q)
print("p * q via the section:", via_group)
print("p * q via Mobius maps:", via_points)
print("distance:", via_group.distance(via_points))

for rep in L.check_all(ctx, samples=50, seed=1):
    print(rep.line())
print(L.check_mobius_realization(samples=50, seed=1).line())
