"""Things that go wrong: a section that runs off to infinity, a loop that is
not Bol, and complements ruled out by element types.
"""

import numpy as np

from bolkit import catalog
from bolkit import classification as K
from bolkit import loops as L

print("forced section elements near the pole c = -1:")
for row in L.divergence_demo(range(1, 8)).details["rows"]:
    print(f"    k={row['k']}  |s| = {row['norm']:.3e}  second component {row['second_component']:.6f}")

for direction in ((0, 0, 1), (0.3, 0.2, 1)):
    ctx = L.nonbol_loop(direction)
    print(f"\n{ctx.label}")
    print(L.check_sharp_transitivity(ctx, samples=30).line())
    print(L.check_bol(ctx, samples=30).line())
    w = L.nonbol_witness(ctx)
    print(f"    (lambda rho)^2 misses the section by {w['square_residual']:.3f}")
    d = max(L.section_conjugation_defect(ctx, L.rotation_element(p), 20) for p in np.linspace(0.2, 3, 5))
    print(f"    rotations move the section by up to {d:.2e}")

b2 = catalog.get_algebra("B2")
rep = K.lemma3_obstruction(b2, catalog.get_subspace("m_5.2"), catalog.stabilizer_sec5(2, 0))
print("\nm_5.2 against the parabolic stabilizer:", rep.details.get("conflicts"))
