"""Euclidean planes of pseudo-euclidean 3-space as a Bol loop, and a
deformation that only works locally.

A plane is stored by its unit timelike normal and offset. Multiplying two
planes goes through the section in PSL2(R) x sl2(R). The deformed family is
global when b3^2 + c3^2 < 1 and only local beyond, where the section image
meets the stabilizer a second time.
"""

import numpy as np

from bolkit import loops as L
from bolkit.matrix_groups import PseudoPlane

pe = L.pseudo_euclidean_loop()
a = PseudoPlane(np.array([0.3, -0.2, 1.2]), 0.5)
b = PseudoPlane(np.array([-0.1, 0.4, 1.1]), -1.0)
print("a * b =", L.plane_product(a, b))
print("base * b == b:", L.plane_product(PseudoPlane.base(), b).distance(b) < 1e-10)
for rep in L.check_all(pe, samples=30, seed=2):
    print(rep.line())

for params in ((0.5, 0, 0), (2, 0, 0)):
    ctx = L.loop_Lbcc(*params)
    rep = L.check_global_section(ctx, starts=30)
    print(f"\nL_{params}: {ctx.scope}")
    print(rep.line())
    for lam in rep.details["witnesses"]:
        print("    section meets H again at", np.round(lam, 4))
