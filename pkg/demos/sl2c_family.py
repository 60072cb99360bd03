"""Walk through the one-parameter family of Bol complements in sl2(C).

For each member the span of brackets [m, m] is printed with its compactness.
The isomorphism equations pair a with -a, and the angle invariant agrees on
that pair while telling different |a| apart.
"""

from fractions import Fraction as F

from bolkit import catalog
from bolkit import classification as K
from bolkit.lie_core import derived_space, is_bol_algebra

b1, h = catalog.get_algebra("B1"), catalog.get_subspace("h_4.1")
m0 = catalog.bol_family("m_a", a=0)

for a in (F(0), F(1, 2), F(3, 4), F(3, 2)):
    m = catalog.bol_family("m_a", a=a)
    d = derived_space(b1, m)
    comp = K.compactness_check(b1, d)
    bol = is_bol_algebra(b1, m, h).passed if abs(a) < 1 else "outside family"
    print(f"a={a}: m = {m.describe()}")
    print(f"    Bol complement: {bol}; [m, m] = {d.describe()}; compact: {comp.passed}")

sol = K.solve_iso_psl2c(F(1, 2))
print("\nisomorphism equations at a=1/2: b in", [str(b) for b in sol.values],
      "of which admissible:", [str(b) for b in sol.admissible])

for a in (F(1, 4), F(1, 2)):
    inv = K.angle_invariant(b1, catalog.bol_family("m_a", a=a), m0)
    inv_neg = K.angle_invariant(b1, catalog.bol_family("m_a", a=-a), m0)
    print(f"angle invariant a={a}: {[round(r, 6) for r, _ in inv.values]} (same for -a: {inv.close_to(inv_neg)})")

md = derived_space(b1, catalog.bol_family("m_d", d=1))
rep = K.compactness_check(b1, md)
print(f"\n[m_d, m_d] at d=1 is {md.describe()}; witness {rep.details['witness']}"
      f" has Killing value {rep.details['witness_killing']}")
