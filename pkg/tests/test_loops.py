import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bolkit import loops as L
from bolkit import matrix_groups as mg
from bolkit.catalog import DomainError
from bolkit.matrix_groups import JQuaternion, PseudoPlane, SemidirectElement

coord = st.floats(min_value=-1, max_value=1)
triple = st.tuples(coord, coord, coord).map(np.array)


@pytest.fixture(scope="module")
def l0():
    return L.hyperbolic_space_loop()


@pytest.fixture(scope="module")
def pe():
    return L.pseudo_euclidean_loop()


class TestHyperbolicSpace:
    def test_identity_point(self, l0):
        w = JQuaternion(0.3 - 0.2j, 1.7)
        assert L.mobius_product(mg.J_POINT, w).distance(w) < 1e-12
        assert L.mobius_product(w, mg.J_POINT).distance(w) < 1e-12

    def test_translation_to_is_positive_and_hits_point(self):
        w = JQuaternion(1.1 + 0.4j, 0.6)
        p = L.translation_to(w)
        assert np.allclose(p, p.conj().T) and np.all(np.linalg.eigvalsh(p) > 0)
        assert abs(np.linalg.det(p) - 1) < 1e-12
        assert L.hyperbolic_point(p).distance(w) < 1e-12

    def test_two_realizations(self):
        assert L.check_mobius_realization(samples=100, seed=4).passed

    def test_checks(self, l0):
        for rep in L.check_all(l0, samples=40, seed=2):
            assert rep.passed, rep.line()

    def test_la_zero_matches_l0(self, l0):
        la = L.loop_La(0)
        rng = np.random.default_rng(1)
        for lam in rng.uniform(-0.5, 0.5, (10, 3)):
            assert np.abs(la.chart(lam) - l0.chart(lam)).max() < 1e-12

    def test_la_local_bol(self):
        ctx = L.loop_La(0.5)
        assert ctx.is_local and "local" in ctx.scope
        assert L.check_bol(ctx, samples=30, seed=1).passed
        assert L.check_bol_identity(ctx, samples=20, seed=1).passed

    @pytest.mark.parametrize("a", [1, -1, 1.5])
    def test_la_domain(self, a):
        with pytest.raises(DomainError):
            L.loop_La(a)


class TestScheerer:
    def test_checks(self):
        for rep in L.check_all(L.scheerer_loop(), samples=40, seed=3):
            assert rep.passed, rep.line()

    def test_stabilizer_is_trivial_coset(self):
        ctx = L.scheerer_loop()
        h = L.scheerer_stabilizer(0.9)
        assert ctx.stabilizer_residual(h) < 1e-12
        assert ctx.coord_distance(ctx.coords(h), np.zeros(3)) < 1e-12

    def test_so2_subgroup(self):
        assert L.check_scheerer_normal_subgroup(samples=100, seed=0).passed

    def test_angle_wraps(self):
        ctx = L.scheerer_loop()
        x = ctx.chart(np.array([3.0, 0.2, 0.1]))
        y = ctx.chart(np.array([3.0, 0.0, 0.0]))
        prod = ctx.coords(L.loop_mul(ctx, y, x))
        assert abs(prod[0]) <= math.pi


class TestPseudoEuclidean:
    def test_plane_identity(self):
        base = PseudoPlane.base()
        q = PseudoPlane(np.array([0.2, -0.4, 1.3]), 0.7)
        assert L.plane_product(base, q).distance(q) < 1e-10
        assert L.plane_product(q, base).distance(q) < 1e-10

    def test_plane_bridge_round_trip(self, pe):
        rng = np.random.default_rng(7)
        for lam in rng.uniform(-1, 1, (20, 3)):
            g = pe.chart(lam)
            plane = L.element_to_plane(g)
            back = L.plane_to_element(plane)
            assert L.element_to_plane(back).distance(plane) < 1e-10
            assert mg.semidirect_distance(L.normal_form(pe, back), g) < 1e-9

    def test_stabilizer_fixes_base_plane(self):
        h = SemidirectElement(mg.rotation(0.8), np.array([[0.3, 0.5], [0.5, -0.3]]))
        assert L.element_to_plane(h).distance(PseudoPlane.base()) < 1e-12

    @settings(max_examples=25, deadline=None)
    @given(triple, triple)
    def test_product_factorizes(self, x, y):
        ctx = L.pseudo_euclidean_loop()
        prod = ctx.mul(ctx.chart(x), ctx.chart(y))
        z = L.loop_mul(ctx, ctx.chart(x), ctx.chart(y))
        h = mg.semidirect_inv(z) @ prod
        assert ctx.stabilizer_residual(h) < 1e-10

    def test_trivial_divisions(self, pe):
        a = pe.chart(np.array([0.4, -0.3, 0.2]))
        assert mg.semidirect_distance(L.left_divide(pe, a, a), pe.identity) < 1e-12
        assert mg.semidirect_distance(L.right_divide(pe, a, pe.identity), a) < 1e-12

    def test_conjugated_section_still_sharply_transitive(self, pe):
        g = pe.mul(pe.chart(np.array([0.2, 0.5, -0.3])), SemidirectElement(mg.rotation(0.4), np.zeros((2, 2))))
        ctx = L.conjugate_context(pe, g)
        assert L.check_sharp_transitivity(ctx, samples=4, seed=0, restarts=1).passed


class TestSemidirectFamily:
    def test_zero_parameters_match_pseudo_euclidean(self, pe):
        ctx = L.loop_Lbcc(0, 0, 0)
        rng = np.random.default_rng(0)
        for lam in rng.uniform(-1, 1, (10, 3)):
            assert mg.semidirect_distance(ctx.chart(lam), pe.chart(lam)) < 1e-10

    def test_global_parameters(self):
        ctx = L.loop_Lbcc(0.5, 0, 0)
        assert not ctx.is_local
        for check in (L.check_identity, L.check_divisions, L.check_bol):
            assert check(ctx, samples=12, seed=5).passed
        assert L.check_global_section(ctx, starts=30).passed

    def test_outside_unit_disc_is_local_only(self):
        ctx = L.loop_Lbcc(2, 0, 0)
        assert ctx.is_local
        assert L.check_bol(ctx, samples=12, seed=5).passed
        rep = L.check_global_section(ctx, starts=30)
        assert not rep.passed and rep.details["witnesses"]
        lam = np.array(rep.details["witnesses"][0])
        assert ctx.stabilizer_residual(ctx.chart(lam)) < 1e-9

    def test_unit_circle_rejected(self):
        with pytest.raises(DomainError):
            L.loop_Lbcc(0.6, 0.8, 0)


class TestNonBol:
    @pytest.mark.parametrize("direction", [(0, 0, 1), (0.3, 0.2, 1)])
    def test_loop_but_not_bol(self, direction):
        ctx = L.nonbol_loop(direction)
        assert L.check_sharp_transitivity(ctx, samples=30, seed=0).passed
        assert L.check_divisions(ctx, samples=30, seed=0).passed
        rep = L.check_bol(ctx, samples=30, seed=0)
        assert not rep.passed and rep.max_residual > 0.1
        w = L.nonbol_witness(ctx)
        assert w["commutator_residual"] > 0.1 and w["square_residual"] > 0.1

    def test_rotation_contrast(self):
        on_axis = L.nonbol_loop((0, 0, 1))
        off_axis = L.nonbol_loop((0.3, 0.2, 1))
        for phi in (0.4, 1.3, 2.9):
            k = L.rotation_element(phi)
            assert L.section_conjugation_defect(on_axis, k, samples=20) < 1e-10
            assert L.section_conjugation_defect(off_axis, k, samples=20) > 0.01

    @pytest.mark.parametrize("direction", [(1, 0, 1), (1, 0, 0), (0, 2, 1)])
    def test_invalid_direction(self, direction):
        with pytest.raises(DomainError):
            L.nonbol_loop(direction)

    def test_geometric_mean(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            a = mg.boost_to(np.array([*rng.uniform(-0.5, 0.5, 2), 1.0]))
            b = mg.boost_to(np.array([*rng.uniform(-0.5, 0.5, 2), 1.0]))
            a, b = a @ a, b @ b
            x = L.geometric_mean(np.linalg.inv(a), b)
            assert np.allclose(x @ a @ x, b, atol=1e-10)
            assert np.all(np.linalg.eigvalsh(x) > 0)


class TestDivergence:
    def test_c_zero(self):
        s, b = L.forced_section_element(0.0)
        assert np.allclose(s, np.eye(2)) and b == -1

    def test_growth(self):
        rep = L.divergence_demo(range(1, 8))
        assert rep.passed
        for row in rep.details["rows"]:
            assert row["norm"] >= 10 ** row["k"] and row["symmetric"]

    def test_forced_element_in_coset(self):
        for c in (-0.5, 0.3, 2.0):
            s, b = L.forced_section_element(c)
            g = np.array([[1 + c, 1.0], [c, 1.0]])
            h = np.linalg.solve(g, s)
            assert np.allclose(h, [[1, b], [0, 1]]) and abs(np.linalg.det(s) - 1) < 1e-12

    def test_pole(self):
        with pytest.raises(DomainError):
            L.forced_section_element(-1)


def test_reports_are_reproducible(pe):
    r1 = L.check_bol(pe, samples=10, seed=9)
    r2 = L.check_bol(pe, samples=10, seed=9)
    assert r1.to_json() == r2.to_json()
    assert r1.to_json_dict()["seed"] == 9 and r1.to_json_dict()["paper_section"]
