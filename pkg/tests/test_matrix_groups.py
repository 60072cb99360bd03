import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import linalg

from bolkit import matrix_groups as mg
from bolkit.matrix_groups import (H, I2, J_POINT, T, U, JQuaternion, PseudoPlane, SemidirectElement,
                                  exp_m, exp_semidirect, exp_sl2, factor_pseudo_euclidean,
                                  iwasawa_compose, iwasawa_decompose, mobius_J, ode_exp_oracle,
                                  polar_decompose_sl2c, rotation, semidirect_distance, semidirect_inv,
                                  semidirect_mul, sigma1, traceless)

coef = st.floats(min_value=-2, max_value=2, allow_nan=False)


def random_sl2(rng, scale=1.0):
    return exp_sl2(scale * (rng.normal() * H + rng.normal() * T + rng.normal() * U))


def random_semidirect(rng):
    return SemidirectElement(random_sl2(rng), traceless(*rng.normal(size=3)))


def rel_distance(g, h):
    scale = max(1.0, np.abs(h.A).max() ** 2, np.abs(h.X).max())
    return semidirect_distance(g, h) / scale


def relerr(a, b):
    return float(np.abs(a - b).max() / max(1.0, np.abs(b).max()))


class TestSemidirectGroup:
    def test_identity_and_inverse(self):
        rng = np.random.default_rng(0)
        e = SemidirectElement.identity()
        for _ in range(20):
            g = random_semidirect(rng)
            assert semidirect_distance(e @ g, g) < 1e-12
            assert semidirect_distance(g @ semidirect_inv(g), e) < 1e-10
            assert semidirect_distance(semidirect_inv(g) @ g, e) < 1e-10

    def test_associativity(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            a, b, c = (random_semidirect(rng) for _ in range(3))
            assert rel_distance((a @ b) @ c, a @ (b @ c)) < 1e-10

    def test_pure_linear_inverse(self):
        A = random_sl2(np.random.default_rng(2))
        g = semidirect_inv(SemidirectElement(A, np.zeros((2, 2))))
        assert np.allclose(g.A, np.linalg.inv(A)) and np.allclose(g.X, 0)

    def test_rotation_fixes_antisymmetric_translation(self):
        t, u = 0.83, 1.7
        X1 = np.array([[0, u], [-u, 0]])
        X2 = traceless(0.4, -0.3, 0)
        prod = semidirect_mul(SemidirectElement(I2, X1), SemidirectElement(rotation(t), X2))
        assert np.allclose(prod.X, X1 + X2, atol=1e-14)

    def test_rejects_trace(self):
        with pytest.raises(ValueError):
            SemidirectElement(I2, np.eye(2))


class TestExpSl2:
    def test_zero(self):
        assert np.array_equal(exp_sl2(np.zeros((2, 2))), I2)

    def test_explicit_first_component(self):
        l2, l3 = 0.7, -1.1
        A = l2 ** 2 + l3 ** 2
        q = math.sqrt(A)
        expected = np.array([[math.cosh(q) + math.sinh(q) / q * l2, math.sinh(q) / q * l3],
                             [math.sinh(q) / q * l3, math.cosh(q) - math.sinh(q) / q * l2]])
        assert np.allclose(exp_sl2(l2 * H + l3 * T), expected, atol=1e-14)

    def test_rotation_generator(self):
        t = 0.9
        B, _ = ode_exp_oracle(t * U, np.zeros((2, 2)))
        assert np.allclose(exp_sl2(t * U), B, atol=1e-12)
        assert np.allclose(exp_sl2(t * U), rotation(t), atol=1e-14)

    @settings(max_examples=50, deadline=None)
    @given(coef, coef, coef)
    def test_matches_expm(self, x, y, z):
        X = traceless(x, y, z)
        assert relerr(exp_sl2(X), linalg.expm(X)) < 1e-12

    def test_complex_hermitian(self):
        X = np.array([[0.3, 0.2 + 0.5j], [0.2 - 0.5j, -0.3]])
        assert np.allclose(exp_sl2(X), linalg.expm(X), atol=1e-13)


class TestExpSemidirect:
    def test_pure_translation(self):
        X2 = traceless(0.3, -1.2, 0.5)
        g = exp_semidirect(np.zeros((2, 2)), X2)
        assert np.allclose(g.A, I2) and np.allclose(g.X, X2)

    def test_rsv_values_at_one_one_zero(self):
        # the closed-form r(1), s(1), v(1) solve the mirrored equation Y' = [X1, Y] + X2
        e = math.e
        Y = mg.translation_part_left(H, mg.J_TRANSL)
        assert abs(Y[0, 0]) < 1e-14
        assert abs(Y[0, 1] - (-(e ** 2 - e ** -2) / 4 - (e - 1 / e) ** 2 / 4)) < 1e-13
        assert abs(Y[1, 0] - ((e ** 2 - e ** -2) / 4 - (e - 1 / e) ** 2 / 4)) < 1e-13
        r, s, v = mg.rsv_m_translation(1, 1, 0)
        assert np.allclose([r, s, v], [Y[0, 0], Y[0, 1], Y[1, 0]], atol=1e-13)
        # the group element carries it conjugated by A
        g = exp_m((1, 1, 0))
        assert np.allclose(g.X, np.linalg.inv(g.A) @ Y @ g.A, atol=1e-13)

    def test_rsv_formulas_match_mirrored_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            a, b, c, k, u, y = rng.uniform(-2, 2, 6)
            X1, X2 = np.array([[a, b], [c, -a]]), np.array([[k, u], [y, -k]])
            _, G = ode_exp_oracle(X1, X2, 2000, mirrored=True)
            assert relerr(mg.rsv_translation_part(a, b, c, k, u, y), G) < 1e-9
            assert relerr(mg.translation_part_left(X1, X2), G) < 1e-9

    def test_m_formulas_match_general_ones(self):
        l1, l2, l3 = 0.4, -0.9, 0.6
        general = mg.rsv_translation_part(l2, l3, l3, 0.0, -l1, l1)
        r, s, v = mg.rsv_m_translation(l1, l2, l3)
        assert np.allclose(general, [[r, s], [v, -r]], atol=1e-13)

    def test_oracle_agreement_batched(self):
        rng = np.random.default_rng(2024)
        X1 = np.array([traceless(*rng.uniform(-2, 2, 3)) for _ in range(90)])
        X2 = np.array([traceless(*rng.uniform(-2, 2, 3)) for _ in range(90)])
        B, G = ode_exp_oracle(X1, X2, 4000)
        for i in range(90):
            g = exp_semidirect(X1[i], X2[i])
            assert relerr(g.A, B[i]) < 1e-9 and relerr(g.X, G[i]) < 1e-9

    def test_near_parabolic_inputs_use_series(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            a, b = rng.uniform(-2, 2, 2)
            delta = rng.uniform(-1e-6, 1e-6)
            c = (delta - a * a) / b
            X1 = np.array([[a, b], [c, -a]])
            X2 = traceless(*rng.uniform(-2, 2, 3))
            B, G = ode_exp_oracle(X1, X2, 4000)
            g = exp_semidirect(X1, X2)
            assert relerr(g.A, B) < 1e-9 and relerr(g.X, G) < 1e-9

    @pytest.mark.parametrize("delta", [mg.SERIES_SEAM, -mg.SERIES_SEAM, 0.999 * mg.SERIES_SEAM])
    def test_seam_agreement(self, delta):
        for fn in (mg.cosh_sinc, mg.phi_coefficients):
            s, c = fn(delta, "series"), fn(delta, "closed")
            assert max(abs(x - y) for x, y in zip(s, c)) <= 1e-11

    def test_one_parameter_inverse(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            X1, X2 = traceless(*rng.uniform(-2, 2, 3)), traceless(*rng.uniform(-2, 2, 3))
            prod = exp_semidirect(X1, X2) @ exp_semidirect(-X1, -X2)
            assert semidirect_distance(prod, SemidirectElement.identity()) < 1e-10

    def test_one_parameter_additivity(self):
        X1, X2 = traceless(0.3, -0.8, 0.2), traceless(1.1, 0.4, -0.6)
        s, t = 0.35, 0.9
        lhs = exp_semidirect(s * X1, s * X2) @ exp_semidirect(t * X1, t * X2)
        rhs = exp_semidirect((s + t) * X1, (s + t) * X2)
        assert semidirect_distance(lhs, rhs) < 1e-12

    def test_derivative_at_zero(self):
        X1, X2 = traceless(0.3, -0.8, 0.2), traceless(1.1, 0.4, -0.6)
        h = 1e-5
        gp, gm = exp_semidirect(h * X1, h * X2), exp_semidirect(-h * X1, -h * X2)
        assert np.abs((gp.A - gm.A) / (2 * h) - X1).max() < 1e-7
        assert np.abs((gp.X - gm.X) / (2 * h) - X2).max() < 1e-7

    def test_oracle_is_fourth_order(self):
        X1, X2 = traceless(0.9, -0.4, 0.7), traceless(-0.5, 1.2, 0.3)
        exact = exp_semidirect(X1, X2)
        errs = []
        for steps in (1000, 2000):
            B, G = ode_exp_oracle(X1, X2, steps)
            errs.append(np.abs(G - exact.X).max() + np.abs(B - exact.A).max())
        # this input is smooth enough that the step-1000 error is far above rounding
        assert 10 < errs[0] / errs[1] < 22

    def test_oracle_rejects_few_steps(self):
        with pytest.raises(ValueError):
            ode_exp_oracle(H, H, 10)


class TestIwasawaAndSigma1:
    def test_identity_and_rotation(self):
        assert np.allclose(iwasawa_decompose(I2), (1, 0, 0))
        a, b, t = iwasawa_decompose(rotation(2.5))
        assert abs(a - 1) < 1e-14 and abs(b) < 1e-14 and abs(t - 2.5) < 1e-14

    def test_reconstruction_and_uniqueness(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            g = random_sl2(rng)
            a, b, t = iwasawa_decompose(g)
            assert a > 0 and 0 <= t < 2 * math.pi
            assert np.abs(iwasawa_compose(a, b, t) - g).max() <= 1e-12 * max(1, np.abs(g).max())
            again = iwasawa_decompose(iwasawa_compose(a, b, t))
            assert np.allclose(again, (a, b, t), atol=1e-10)

    def test_sigma1_identity(self):
        assert np.allclose(sigma1(1.0, 0.0), I2)

    def test_sigma1_worked_example(self):
        s = sigma1(2.0, 0.0)
        expected = np.array([[2, 0], [0, 0.5]]) @ (np.eye(2) * (2.5 / math.sqrt(6.25)))
        assert np.allclose(s, expected)

    def test_sigma1_is_symmetric_exponential_in_coset(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            a, b = math.exp(rng.normal()), 2 * rng.normal()
            s = mg.psl_canonical(sigma1(a, b))
            # symmetric and positive: the exponential of an H, T combination
            assert abs(s[0, 1] - s[1, 0]) < 1e-12
            X = mg.log_positive(s)
            assert abs(X[0, 1] - X[1, 0]) < 1e-12
            assert np.allclose(exp_sl2(X[0, 0] * H + X[0, 1] * T), s, atol=1e-11)
            # same coset: differs from ((a,0),(b,1/a)) by a rotation
            a2, b2, _ = iwasawa_decompose(s)
            assert abs(a2 - a) < 1e-10 and abs(b2 - b) < 1e-10

    def test_sigma1_sign_rule(self):
        assert sigma1(1.5, -0.3)[0, 0] < 0 and sigma1(1.5, 0.3)[0, 0] > 0


class TestFactorization:
    def test_identity(self):
        lam, h = factor_pseudo_euclidean(SemidirectElement.identity())
        assert np.allclose(lam, 0) and semidirect_distance(h, SemidirectElement.identity()) < 1e-14

    def test_section_image(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            lam0 = rng.uniform(-2, 2, 3)
            lam, h = factor_pseudo_euclidean(exp_m(lam0))
            assert np.allclose(lam, lam0, atol=1e-10)
            assert semidirect_distance(h, SemidirectElement.identity()) < 1e-10

    def test_random_elements(self):
        rng = np.random.default_rng(8)
        for _ in range(60):
            g = random_semidirect(rng)
            lam, h = factor_pseudo_euclidean(g)
            assert mg.in_pseudo_euclidean_stabilizer(h) < 1e-10
            assert semidirect_distance(exp_m(lam) @ h, g) < 1e-10
            # relation between u and lambda1
            u = (g.X[0, 1] - g.X[1, 0]) / 2
            q = math.hypot(lam[1], lam[2])
            if q > 1e-3:
                lhs = 2 * u
                rhs = -lam[0] / (2 * q) * (math.exp(2 * q) - math.exp(-2 * q))
                assert abs(lhs - rhs) < 1e-9 * max(1, abs(lhs))


class TestMobius:
    def test_identity(self):
        w = JQuaternion(0.3 - 0.2j, 0.7)
        assert mobius_J(np.eye(2), w).distance(w) < 1e-15

    def test_unitary_fixes_j(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            z = rng.normal(size=4)
            z /= np.linalg.norm(z)
            a, b = complex(z[0], z[1]), complex(z[2], z[3])
            u = np.array([[a, b], [-b.conjugate(), a.conjugate()]])
            assert mobius_J(u, J_POINT).distance(J_POINT) < 1e-12

    def test_diagonal_scaling(self):
        out = mobius_J(np.diag([math.sqrt(2), 1 / math.sqrt(2)]), J_POINT)
        assert out.distance(JQuaternion(0, 2)) < 1e-14

    def test_against_closed_formula_and_action(self):
        rng = np.random.default_rng(11)

        def random_sl2c():
            m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            return m / np.sqrt(np.linalg.det(m))

        for _ in range(100):
            g1, g2 = random_sl2c(), random_sl2c()
            w = JQuaternion(complex(*rng.normal(size=2)), math.exp(rng.normal()))
            # standard closed form for the upper half space action
            (a, b), (c, d) = g2
            den = abs(c * w.x + d) ** 2 + abs(c) ** 2 * w.y ** 2
            x = ((a * w.x + b) * (c * w.x + d).conjugate() + a * c.conjugate() * w.y ** 2) / den
            closed = JQuaternion(x, w.y / den)
            assert mobius_J(g2, w).distance(closed) < 1e-9 * max(1, abs(x))
            lhs = mobius_J(g1, mobius_J(g2, w))
            rhs = mobius_J(g1 @ g2, w)
            assert lhs.distance(rhs) <= 1e-10 * max(1.0, np.abs(rhs.as_array()).max())

    def test_rejects_lower_half(self):
        with pytest.raises(ValueError):
            JQuaternion(0, -1)


class TestPolar:
    def test_unitary_and_hermitian(self):
        u = linalg.expm(1j * (0.3 * H + 0.7 * T))
        p, w = polar_decompose_sl2c(u)
        assert np.allclose(p, I2, atol=1e-12)
        herm = linalg.expm(0.3 * H + 0.5 * T + 0.2 * np.array([[0, -1j], [1j, 0]]))
        p, w = polar_decompose_sl2c(herm)
        assert np.allclose(w, I2, atol=1e-12)

    def test_random_against_eigendecomposition(self):
        rng = np.random.default_rng(12)
        for _ in range(30):
            m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            g = m / np.sqrt(np.linalg.det(m))
            p, u = polar_decompose_sl2c(g)
            vals, vecs = np.linalg.eigh(g @ g.conj().T)
            oracle = vecs @ np.diag(np.sqrt(vals)) @ vecs.conj().T
            assert np.abs(p - oracle).max() < 1e-10
            assert np.abs(p @ u - g).max() < 1e-10
            assert np.abs(u @ u.conj().T - I2).max() < 1e-10 and abs(np.linalg.det(u) - 1) < 1e-10


class TestPseudoEuclideanGeometry:
    def test_omega_round_trip(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            p = rng.normal(size=3)
            assert np.abs(mg.omega(mg.omega_inv(p)) - p).max() < 1e-12
            Y = traceless(*rng.normal(size=3))
            assert np.abs(mg.omega_inv(mg.omega(Y)) - Y).max() < 1e-12

    def test_norm_is_invariant(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            g, h = random_semidirect(rng), random_semidirect(rng)
            p, q = rng.normal(size=3), rng.normal(size=3)
            before = mg.e21_norm(p - q)
            Yp, Yq = mg.right_action(g, mg.omega_inv(p)), mg.right_action(g, mg.omega_inv(q))
            after = mg.e21_norm(mg.omega(Yp) - mg.omega(Yq))
            assert abs(before - after) <= 1e-10 * max(1, abs(before), np.abs(g.A).max() ** 4)
            # right action property
            lhs = mg.right_action(h, mg.right_action(g, mg.omega_inv(p)))
            rhs = mg.right_action(g @ h, mg.omega_inv(p))
            assert np.abs(lhs - rhs).max() < 1e-9 * max(1, np.abs(rhs).max())

    def test_explicit_omega_matches_action(self):
        rng = np.random.default_rng(15)
        for _ in range(50):
            g = random_semidirect(rng)
            B, b = mg.Omega(g)
            p = rng.normal(size=3)
            affine = B @ p + b
            direct = mg.omega(mg.right_action(g, mg.omega_inv(p)))
            assert np.abs(affine - direct).max() < 1e-10 * max(1, np.abs(direct).max())
            # row conditions on B
            (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = B
            scale = max(1, np.abs(B).max() ** 2)
            assert abs(a1 ** 2 + a2 ** 2 - a3 ** 2 - 1) < 1e-10 * scale
            assert abs(b1 ** 2 + b2 ** 2 - b3 ** 2 - 1) < 1e-10 * scale
            assert abs(c1 ** 2 + c2 ** 2 - c3 ** 2 + 1) < 1e-10 * scale
            assert abs(np.linalg.det(B) - 1) < 1e-9 * scale

    def test_explicit_omega_for_rotation_pair(self):
        t = 0.7
        A = rotation(t)
        (a, b), (c, d) = A
        B = mg.omega_matrix_explicit(A)
        assert abs(B[0, 0] - (d * a + b * c)) < 1e-15 and abs(B[0, 1] - (c * d - b * a)) < 1e-15
        assert np.allclose(B, mg.lorentz(rotation(-t)))
        assert np.allclose(B[2], [0, 0, 1]) and np.allclose(B[:, 2], [0, 0, 1])

    def test_boost_to(self):
        rng = np.random.default_rng(16)
        for _ in range(20):
            xy = rng.normal(size=2)
            nu = np.array([*xy, np.linalg.norm(xy) + abs(rng.normal()) + 0.1])
            A = mg.boost_to(nu)
            assert abs(np.linalg.det(A) - 1) < 1e-10 and np.allclose(A, A.T)
            target = nu / math.sqrt(-mg.minkowski(nu, nu))
            assert np.abs(mg.lorentz(A) @ [0, 0, 1] - target).max() < 1e-10
            # A U A^-1 = U (A A^T)^-1 for symmetric A
            assert np.allclose(A @ U @ np.linalg.inv(A), U @ np.linalg.inv(A @ A.T))

    def test_plane_stabilizer(self):
        P = PseudoPlane.base()
        h = SemidirectElement(rotation(1.3), traceless(0.4, -0.2, 0))
        assert mg.move_plane(h, P).distance(P) < 1e-12
        with pytest.raises(ValueError):
            PseudoPlane(np.array([1.0, 0.0, 0.5]), 0.0)
