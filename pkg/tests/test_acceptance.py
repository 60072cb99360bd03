"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines; every test
also asserts, so a red criterion shows up as a failing test.
"""

import itertools
import math
import time
from fractions import Fraction as F

import numpy as np

from bolkit import catalog
from bolkit import classification as K
from bolkit import loops as L
from bolkit import matrix_groups as mg
from bolkit import suites as S
from bolkit.lie_core import bracket, check_jacobi, derived_space, intersect, is_bol_algebra, is_lie_triple_system, span

EXACT = 0
IDENTITY_TOL, TRANSITIVITY_TOL, BOL_TOL, DIVISION_TOL = 1e-10, 1e-9, 1e-8, 1e-9
REALIZATION_TOL = 1e-9
ORACLE_REL_TOL, SEAM_TOL = 1e-9, 1e-11
NONBOL_MARGIN = 0.1


def criterion(n, title, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" [{detail}]" if detail else ""))
    assert ok, f"criterion {n} failed: {detail}"


def relerr(a, b):
    return float(np.abs(a - b).max() / max(1.0, np.abs(b).max()))


def test_criterion_01_catalog_integrity():
    t0 = time.perf_counter()
    reps = [check_jacobi(catalog.get_algebra(a)) for a in S.ALGEBRA_IDS]
    b1 = catalog.get_algebra("B1")
    signs = {"H": 1, "T": 1, "U": -1, "iH": -1, "iT": -1, "iU": 1}
    b1_ok = all(b1.killing_gram[i][j] == (signs[b1.basis_labels[i]] if i == j else 0)
                for i in range(6) for j in range(6))
    b4 = catalog.get_algebra("B4")
    want = {"e2": 1, "e3": 1, "e4": -1}
    b4_ok = all(b4.killing_gram[i][j] == (want.get(b4.basis_labels[i], 0) if i == j else 0)
                for i in range(6) for j in range(6))
    elapsed = time.perf_counter() - t0
    ok = all(r.passed and r.max_residual == EXACT for r in reps) and b1_ok and b4_ok and elapsed < 1.0
    criterion(1, "catalog algebras satisfy Jacobi; B1 orthonormal; B4 Killing values", ok,
              f"{len(reps)} algebras, {elapsed:.2f}s")


def test_criterion_02_triple_systems():
    ids = ("m_4.1", "m_4.2", "m_5.2", "m_5.3", "m_6.1", "m_6.2", "m_6.3", "m_7", "m_product")
    reps = {m: is_lie_triple_system(catalog.get_subspace(m).algebra, catalog.get_subspace(m)) for m in ids}
    pr = catalog.get_algebra("sl2xsl2")
    antidiagonal = span(pr, [pr.element(H1=1, H2=-1), pr.element(T1=1, T2=-1), pr.element(U1=1, U2=-1)])
    ok = all(r.passed for r in reps.values()) and catalog.get_subspace("m_product") == antidiagonal
    criterion(2, "nine triple systems closed under the triple bracket with the identities", ok,
              ", ".join(m for m, r in reps.items() if not r.passed))


def test_criterion_03_sl2c_family():
    b1, h = catalog.get_algebra("B1"), catalog.get_subspace("h_4.1")
    bad = []
    for a in (F(0), F(1, 4), F(-1, 4), F(1, 2), F(-1, 2), F(3, 4), F(-3, 4)):
        m = catalog.bol_family("m_a", a=a)
        if not is_bol_algebra(b1, m, h).passed:
            bad.append(f"m_{a} not Bol")
        d = derived_space(b1, m)
        if d != span(b1, [b1.e("iH"), b1.element(U=1, T=a), b1.element(iT=1, iU=a)]):
            bad.append(f"derived m_{a}")
        if not K.compactness_check(b1, d).passed:
            bad.append(f"m_{a} should be compact")
    for a in (F(3, 2), F(2)):
        d = span(b1, [b1.e("iH"), b1.element(U=1, T=a), b1.element(iT=1, iU=a)])
        if K.compactness_check(b1, d).passed:
            bad.append(f"a={a} should not be compact")
    for dval in (F(1, 2), F(1), F(2)):
        rep = K.compactness_check(b1, derived_space(b1, catalog.bol_family("m_d", d=dval)))
        if rep.passed or rep.details["witness_killing"] != "0":
            bad.append(f"m_d d={dval}")
    criterion(3, "m_a Bol complements, derived spans, compactness iff |a|<1, m_d isotropic witness",
              not bad, "; ".join(bad))


def test_criterion_04_intersection_tables():
    reps = S.intersection_reports()
    failed = [r.line() for r in reps if not r.passed]
    pr = catalog.get_algebra("sl2xsl2")
    m = catalog.get_subspace("m_product")
    direct = (intersect(m, catalog.get_subspace("h1_product")).rank == 0
              and intersect(m, catalog.get_subspace("h2_product"))
              == span(pr, [pr.element(U1=1, T1=1, U2=-1, T2=-1)]))
    criterion(4, "intersection tables and type conflicts", not failed and direct and len(reps) >= 25,
              "; ".join(failed))


def test_criterion_05_exponential():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    X1 = [mg.traceless(*rng.uniform(-2, 2, 3)) for _ in range(90)]
    for _ in range(10):
        a, b = rng.uniform(-2, 2, 2)
        b = b if abs(b) > 0.1 else 0.5
        X1.append(np.array([[a, b], [(rng.uniform(-1e-6, 1e-6) - a * a) / b, -a]]))
    X1 = np.array(X1)
    X2 = np.array([mg.traceless(*rng.uniform(-2, 2, 3)) for _ in range(100)])
    B, G = mg.ode_exp_oracle(X1, X2, 4000)
    worst = 0.0
    for i in range(100):
        g = mg.exp_semidirect(X1[i], X2[i])
        worst = max(worst, relerr(g.A, B[i]), relerr(g.X, G[i]))
    seam = max(abs(x - y) for d in (mg.SERIES_SEAM, -mg.SERIES_SEAM)
               for fn in (mg.cosh_sinc, mg.phi_coefficients)
               for x, y in zip(fn(d, "series"), fn(d, "closed")))
    elapsed = time.perf_counter() - t0
    ok = worst <= ORACLE_REL_TOL and seam <= SEAM_TOL and elapsed < 10
    criterion(5, "exponential vs RK4 oracle, series seam", ok,
              f"rel err {worst:.2e}, seam {seam:.2e}, {elapsed:.1f}s")


def test_criterion_06_global_loops():
    t0 = time.perf_counter()
    bad = []
    for name in ("L0", "scheerer", "pseudo-euclidean"):
        ctx = S.loop_context(name)
        checks = [(L.check_identity, IDENTITY_TOL), (L.check_sharp_transitivity, TRANSITIVITY_TOL),
                  (L.check_bol, BOL_TOL), (L.check_divisions, DIVISION_TOL)]
        for fn, tol in checks:
            rep = fn(ctx, samples=200, seed=0, tol=tol)
            if not rep.passed or rep.samples < 200:
                bad.append(rep.line())
    real = L.check_mobius_realization(samples=200, seed=0, tol=REALIZATION_TOL)
    if not real.passed:
        bad.append(real.line())
    elapsed = time.perf_counter() - t0
    criterion(6, "L0, Scheerer and pseudo-euclidean loops on 200 samples; two L0 realizations",
              not bad and elapsed < 30, f"{elapsed:.1f}s " + "; ".join(bad))


def test_criterion_07_bruck_and_left_a():
    b1, b4 = catalog.get_algebra("B1"), catalog.get_algebra("B4")
    h1, hf = catalog.get_subspace("h_4.1"), catalog.get_subspace("h_sec7_f")
    grading = [K.bruck_grading(b1, catalog.bol_family("m_a", a=0), h1).passed]
    grading += [K.bruck_grading(b4, catalog.bol_family("m_b3c3c2", b3=0, c3=0, c2=c2), hf).passed
                for c2 in (F(0), F(1), F(-5, 2))]
    alg, m, h = K.scheerer_data()
    scheerer = K.left_a_check(alg, m, h).passed and not K.bruck_grading(alg, m, h).passed
    m_half = not K.left_a_check(b1, catalog.bol_family("m_a", a=F(1, 2)), h1).passed
    d = F(1, 2)
    m_d00 = not K.left_a_check(b4, catalog.bol_family("m_b3c3c2", b3=d, c3=0, c2=0), hf).passed
    witness = bracket(b4, b4.e("e4"), b4.element(e1=1, e5=d)) == b4.element(e6=d)
    ok = all(grading) and scheerer and m_half and m_d00 and witness
    criterion(7, "Bruck and left-A outcomes", ok,
              f"grading={grading} scheerer={scheerer} m_1/2={m_half} m_(1/2,0,0)={m_d00} witness={witness}")


def _lattice_solutions(a):
    grid = [F(k, 20) for k in range(-20, 21)]
    found = set()
    for c1, c2, d1 in itertools.product(grid, repeat=3):
        rest = 1 - c1 * c1 - c2 * c2 - d1 * d1
        if rest < 0:
            continue
        n, den = math.isqrt(rest.numerator), math.isqrt(rest.denominator)
        if n * n != rest.numerator or den * den != rest.denominator:
            continue
        for d2 in {F(n, den), -F(n, den)}:
            eqs = K.iso_psl2c_equations(a, 0, c1, c2, d1, d2)
            if any(eqs[:5]):
                continue
            coefs = [K.iso_psl2c_equations(a, 1, c1, c2, d1, d2)[i] - eqs[i] for i in range(5, 9)]
            lead = next((c for c in coefs if c), None)
            if lead is None:
                continue
            b = -eqs[5 + coefs.index(lead)] / lead
            if not any(K.iso_psl2c_equations(a, b, c1, c2, d1, d2)):
                found.add(b)
    return found


def test_criterion_08_isomorphism_solvers():
    a = F(1, 2)
    sol = K.solve_iso_psl2c(a)
    values_ok = set(sol.values) == {F(-1, 2), F(2)} and set(sol.admissible) == {F(-1, 2)}
    back = all(not any(K.iso_psl2c_equations(a, b, *w)) for b, w in sol.solutions)
    res = K.solve_iso_semidirect(F(3, 10), F(4, 10), F(7, 3))
    b4, hf = catalog.get_algebra("B4"), catalog.get_subspace("h_sec7_f")
    chain = (res.exact and res.d == F(1, 2) and res.alpha is not None
             and not K.is_automorphism(b4, res.alpha) and not K.is_automorphism(b4, res.gamma)
             and K.apply_map(res.alpha, catalog.bol_family("m_b3c3c2", b3=F(1, 2), c3=0, c2=0))
             == catalog.bol_family("m_b3c3c2", b3=F(3, 10), c3=F(4, 10), c2=0)
             and K.apply_map(res.gamma, catalog.bol_family("m_b3c3c2", b3=F(3, 10), c3=F(4, 10), c2=F(7, 3)))
             == catalog.bol_family("m_b3c3c2", b3=F(3, 10), c3=F(4, 10), c2=0)
             and K.apply_map(res.alpha, hf) == hf)
    lattice = _lattice_solutions(a)
    ok = values_ok and back and chain and res.report.passed and lattice <= set(sol.values) and lattice
    criterion(8, "isomorphism solvers and 1/20 lattice oracle", ok,
              f"values={sorted(sol.values)} lattice={sorted(lattice)} chain={chain}")


def test_criterion_09_negative_results():
    div = L.divergence_demo(range(3, 8))
    growth = div.passed and all(r["norm"] >= 10 ** r["k"] for r in div.details["rows"])
    nb = L.nonbol_loop((0, 0, 1))
    trans = L.check_sharp_transitivity(nb, samples=100, seed=0, tol=TRANSITIVITY_TOL)
    bol = L.check_bol(nb, samples=100, seed=0)
    w = L.nonbol_witness(nb)
    nonbol = trans.passed and not bol.passed and bol.max_residual > NONBOL_MARGIN \
        and w["square_residual"] > NONBOL_MARGIN
    off = L.nonbol_loop((0.3, 0.2, 1.0))
    phis = (0.4, 1.3, 2.9)
    on_def = max(L.section_conjugation_defect(nb, L.rotation_element(p), 20) for p in phis)
    off_def = min(L.section_conjugation_defect(off, L.rotation_element(p), 20) for p in phis)
    contrast = on_def < 1e-10 and off_def > 0.01
    criterion(9, "divergence, non-Bol loop, rotation contrast", growth and nonbol and contrast,
              f"bol residual {bol.max_residual:.3g}, square {w['square_residual']:.3g}, "
              f"defects {on_def:.1e}/{off_def:.2f}")


def test_criterion_10_scans():
    reps = [K.bol_complement_scan("psl2c", 1000, 0), K.bol_complement_scan("semidirect", 1000, 0),
            K.slice_condition_scan(300, 0)]
    ok = all(r.passed for r in reps) and reps[0].samples >= 1000 and reps[1].samples >= 1000
    criterion(10, "complement scans off and on the families, slice condition",
              ok, "; ".join(r.line() for r in reps if not r.passed))


def test_reports_reproducible():
    cfg = S.SuiteConfig(seed=3, samples=5)
    first = [r.to_json() for r in S.run_suite("nonbol", cfg)]
    second = [r.to_json() for r in S.run_suite("nonbol", cfg)]
    criterion("R", "same seed gives byte-identical report bodies", first == second)
