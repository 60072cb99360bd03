"""Floating-point kernels for PSL2(R), SL2(C), PSL2(R) x SO2 and PSL2(R) x| R^3.

Group elements are numpy arrays. The semidirect group uses the law

    (A1, X1) o (A2, X2) = (A1 A2, A2^-1 X1 A2 + X2)

with X traceless. Its exponential is available in closed form. The
translation part is computed as conj(A) applied to phi(ad X1) X2, where
phi(z) = (e^z - 1)/z. On sl2 the operator ad X1 satisfies
ad^3 = 4 Delta ad, so phi(ad) collapses to a quadratic in ad.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

# |Delta| below which cosh/sinc and the phi coefficients switch to Taylor series
SERIES_SEAM = 1e-2
SERIES_TERMS = 7  # powers Delta^0 .. Delta^6

H = np.array([[1.0, 0.0], [0.0, -1.0]])
T = np.array([[0.0, 1.0], [1.0, 0.0]])
U = np.array([[0.0, 1.0], [-1.0, 0.0]])
I2 = np.eye(2)
# translation direction of the lambda1 coordinate: -U
J_TRANSL = np.array([[0.0, -1.0], [1.0, 0.0]])


def traceless(x, y, z) -> np.ndarray:
    """((x, y+z), (y-z, -x)), the storage convention for translation parts."""
    return np.array([[x, y + z], [y - z, -x]], dtype=float)


def omega(Y) -> np.ndarray:
    """Coordinates (k, l, n) of Y = ((k, l+n), (l-n, -k))."""
    Y = np.asarray(Y, dtype=float)
    return np.array([Y[..., 0, 0], (Y[..., 0, 1] + Y[..., 1, 0]) / 2, (Y[..., 0, 1] - Y[..., 1, 0]) / 2]).T


def omega_inv(p) -> np.ndarray:
    k, l, n = np.asarray(p, dtype=float)
    return traceless(k, l, n)


LORENTZ_FORM = np.diag([1.0, 1.0, -1.0])


def minkowski(p, q) -> float:
    """<p, q> for the form diag(1, 1, -1); equals -det of the matching traceless matrices when p = q."""
    return float(np.asarray(p) @ LORENTZ_FORM @ np.asarray(q))


def rotation(t: float) -> np.ndarray:
    """((cos t, sin t), (-sin t, cos t))."""
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, s], [-s, c]])


def lower(a: float, b: float) -> np.ndarray:
    return np.array([[a, 0.0], [b, 1.0 / a]])


# ------------------------------------------------------------ PSL helpers

def psl_canonical(A) -> np.ndarray:
    """Representative of +-A whose first clearly nonzero entry has positive real part."""
    A = np.asarray(A)
    for z in A.ravel():
        if abs(z) > 1e-12:
            key = z.real if abs(z.real) > 1e-12 else getattr(z, "imag", 0.0)
            return A if key > 0 else -A
    return A


def psl_distance(A, B) -> float:
    A, B = np.asarray(A), np.asarray(B)
    return float(min(np.abs(A - B).max(), np.abs(A + B).max()))


def check_det_one(A, tol: float = 1e-12) -> None:
    d = np.linalg.det(np.asarray(A))
    if abs(d - 1) > tol * max(1.0, np.abs(A).max() ** 2):
        raise ValueError(f"determinant {d} is not 1")


# ------------------------------------------------------------ semidirect group

@dataclass(frozen=True, eq=False)
class SemidirectElement:
    """(A, X) in PSL2(R) x| sl2(R); A is taken up to sign."""

    A: np.ndarray
    X: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        X = np.array(self.X, dtype=float)
        if A.shape != (2, 2) or X.shape != (2, 2):
            raise ValueError("A and X must be 2x2")
        if abs(X[0, 0] + X[1, 1]) > 1e-9 * max(1.0, np.abs(X).max()):
            raise ValueError("translation part must be traceless")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "X", X)

    @classmethod
    def identity(cls) -> "SemidirectElement":
        return cls(I2, np.zeros((2, 2)))

    @classmethod
    def translation(cls, w) -> "SemidirectElement":
        """The element moving every point of E(2,1) by w (omega coordinates)."""
        return cls(I2, -omega_inv(w))

    def __matmul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return semidirect_mul(self, other)

    def inv(self) -> "SemidirectElement":
        return semidirect_inv(self)

    def to_list(self) -> list:
        return [self.A.tolist(), self.X.tolist()]


def semidirect_mul(g1: SemidirectElement, g2: SemidirectElement) -> SemidirectElement:
    A2inv = _inv2(g2.A)
    return SemidirectElement(g1.A @ g2.A, A2inv @ g1.X @ g2.A + g2.X)


def semidirect_inv(g: SemidirectElement) -> SemidirectElement:
    Ainv = _inv2(g.A)
    return SemidirectElement(Ainv, -g.A @ g.X @ Ainv)


def semidirect_distance(g1: SemidirectElement, g2: SemidirectElement) -> float:
    return max(psl_distance(g1.A, g2.A), float(np.abs(g1.X - g2.X).max()))


def _inv2(A) -> np.ndarray:
    a, b, c, d = A[0, 0], A[0, 1], A[1, 0], A[1, 1]
    det = a * d - b * c
    return np.array([[d, -b], [-c, a]]) / det


# ------------------------------------------------------------ exponentials

def _series(delta, coeffs):
    out = 0.0
    for c in reversed(coeffs):
        out = out * delta + c
    return out


_COSH_SERIES = [1.0 / math.factorial(2 * n) for n in range(SERIES_TERMS)]
_SINC_SERIES = [1.0 / math.factorial(2 * n + 1) for n in range(SERIES_TERMS)]
# (sinh(2q)/(2q) - 1) / (4 q^2) = sum_{n>=1} (4 Delta)^(n-1) / (2n+1)!
_F2_SERIES = [4.0 ** n / math.factorial(2 * n + 3) for n in range(SERIES_TERMS)]


def cosh_sinc(delta, method: str = "auto"):
    """(cosh sqrt(D), sinh sqrt(D)/sqrt(D)), continued to D <= 0 through cos and sin."""
    if method == "series" or (method == "auto" and abs(delta) < SERIES_SEAM):
        return _series(delta, _COSH_SERIES), _series(delta, _SINC_SERIES)
    if delta > 0:
        q = math.sqrt(delta)
        return math.cosh(q), math.sinh(q) / q
    if delta < 0:
        p = math.sqrt(-delta)
        return math.cos(p), math.sin(p) / p
    return 1.0, 1.0


def phi_coefficients(delta, method: str = "auto"):
    """(f1, f2) with phi(ad X) = 1 + f1 ad X + f2 (ad X)^2 on sl2, Delta = -det X."""
    _, s = cosh_sinc(delta, method)
    f1 = s * s / 2
    if method == "series" or (method == "auto" and abs(delta) < SERIES_SEAM):
        f2 = _series(delta, _F2_SERIES)
    else:
        _, s2 = cosh_sinc(4 * delta, "closed")
        f2 = (s2 - 1) / (4 * delta)
    return f1, f2


def _delta(X) -> complex | float:
    X = np.asarray(X)
    d = -(X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0])
    return d


def exp_sl2(X, method: str = "auto") -> np.ndarray:
    """exp X = cosh(sqrt D) I + sinh(sqrt D)/sqrt(D) X for traceless X, D = -det X.

    Complex matrices are accepted when D is real (Hermitian or anti-Hermitian X).
    """
    X = np.asarray(X)
    if abs(X[0, 0] + X[1, 1]) > 1e-12 * max(1.0, float(np.abs(X).max())):
        raise ValueError("exp_sl2 needs a traceless matrix")
    d = _delta(X)
    if abs(np.imag(d)) > 1e-12 * max(1.0, abs(d)):
        return linalg.expm(X)
    c, s = cosh_sinc(float(np.real(d)), method)
    return c * np.eye(2, dtype=X.dtype) + s * X


def _comm(a, b):
    return a @ b - b @ a


def translation_part_left(X1, X2, method: str = "auto") -> np.ndarray:
    """phi(ad X1) X2, which solves Y' = [X1, Y] + X2, Y(0) = 0, at t = 1.

    This is the translation component the closed-form r, s, v formulas produce.
    """
    X1, X2 = np.asarray(X1, dtype=float), np.asarray(X2, dtype=float)
    f1, f2 = phi_coefficients(float(_delta(X1)), method)
    c1 = _comm(X1, X2)
    return X2 + f1 * c1 + f2 * _comm(X1, c1)


def exp_semidirect(X1, X2, method: str = "auto") -> SemidirectElement:
    """exp of (X1, X2) in the semidirect group with the law above."""
    A = exp_sl2(X1, method)
    Y = translation_part_left(X1, X2, method)
    return SemidirectElement(A, _inv2(A) @ Y @ A)


def m_generators(lam) -> tuple:
    """(X1, X2) = (l2 H + l3 T, l1 ((0, -1), (1, 0))) for lam = (l1, l2, l3)."""
    l1, l2, l3 = lam
    return l2 * H + l3 * T, l1 * J_TRANSL


def exp_m(lam, method: str = "auto") -> SemidirectElement:
    return exp_semidirect(*m_generators(lam), method=method)


def rsv_translation_part(a, b, c, k, u, y, t: float = 1.0) -> np.ndarray:
    """The closed-form r(t), s(t), v(t) for X1 = ((a,b),(c,-a)), X2 = ((k,u),(y,-k)), term by term.

    Undefined at a^2 + bc = 0; complex square roots cover a^2 + bc < 0.
    """
    D = a * a + b * c
    if D == 0:
        raise ZeroDivisionError("a^2 + bc = 0")
    q = np.sqrt(complex(D))
    e2 = np.exp(2 * q * t) - np.exp(-2 * q * t)
    e1 = (np.exp(q * t) - np.exp(-q * t)) ** 2
    r = e2 * (-a * c * u - b * a * y + 2 * k * c * b) / (8 * D * q) \
        + (e1 * (-c * u + b * y) + t * (8 * k * a * a + 4 * a * c * u + 4 * a * b * y)) / (8 * D)
    s = e2 * (-b * b * y + u * b * c - 2 * b * a * k + 2 * a * a * u) / (8 * D * q) \
        + (e1 * (-2 * b * k + 2 * a * u) + t * (4 * b * b * y + 4 * u * b * c + 8 * k * a * b)) / (8 * D)
    v = e2 * (2 * y * a * a - 2 * c * k * a + b * c * y - c * c * u) / (8 * D * q) \
        + (e1 * (-2 * a * y + 2 * c * k) + t * (8 * c * k * a + 4 * c * c * u + 4 * b * c * y)) / (8 * D)
    return np.array([[r, s], [v, -r]]).real


def rsv_m_translation(l1, l2, l3) -> tuple:
    """r(1), s(1), v(1) of the m-restricted formulas (l2^2 + l3^2 > 0)."""
    A = l2 * l2 + l3 * l3
    q = math.sqrt(A)
    e1 = (math.exp(q) - math.exp(-q)) ** 2
    e2 = math.exp(2 * q) - math.exp(-2 * q)
    r = l3 * l1 / (4 * A) * e1
    s = -l1 / (4 * q) * e2 - l2 * l1 / (4 * A) * e1
    v = l1 / (4 * q) * e2 - l2 * l1 / (4 * A) * e1
    return r, s, v


def ode_exp_oracle(X1, X2, steps: int = 4000, mirrored: bool = False):
    """RK4 integration of the one-parameter subgroup through (X1, X2), t in [0, 1].

    Integrates B' = B X1 and G' = G X1 - X1 G + X2 (the law above), or
    G' = X1 G - G X1 + X2 when ``mirrored``. Leading batch axes are allowed;
    returns the arrays (B(1), G(1)).
    """
    if steps < 1000:
        raise ValueError("the oracle needs at least 1000 steps")
    X1 = np.asarray(X1, dtype=float)
    X2 = np.asarray(X2, dtype=float)
    sign = -1.0 if mirrored else 1.0

    def f(B, G):
        return B @ X1, sign * (G @ X1 - X1 @ G) + X2

    B = np.broadcast_to(np.eye(2), X1.shape).copy()
    G = np.zeros_like(X2)
    h = 1.0 / steps
    for _ in range(steps):
        k1 = f(B, G)
        k2 = f(B + h / 2 * k1[0], G + h / 2 * k1[1])
        k3 = f(B + h / 2 * k2[0], G + h / 2 * k2[1])
        k4 = f(B + h * k3[0], G + h * k3[1])
        B = B + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        G = G + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    return B, G


# ------------------------------------------------------------ decompositions

def iwasawa_decompose(g) -> tuple:
    """g = ((a, 0), (b, 1/a)) R(t) with a > 0 and t in [0, 2 pi)."""
    g = np.asarray(g, dtype=float)
    check_det_one(g, 1e-9)
    p, q = g[0]
    a = math.hypot(p, q)
    t = math.atan2(q, p) % (2 * math.pi)
    b = g[1, 0] * math.cos(t) + g[1, 1] * math.sin(t)
    return a, b, t


def iwasawa_compose(a, b, t) -> np.ndarray:
    return lower(a, b) @ rotation(t)


def sigma1(a: float, b: float) -> np.ndarray:
    """Section of the hyperbolic plane loop: ((a,0),(b,1/a)) times the normalized rotation.

    The sign of the normalizing root follows b (+1 at b = 0), so the result is
    the positive symmetric matrix up to the sign of PSL2.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    s = a + 1.0 / a
    root = math.sqrt(b * b + s * s) * (1.0 if b >= 0 else -1.0)
    rot = np.array([[s, b], [-b, s]]) / root
    return lower(a, b) @ rot


def polar_decompose_sl2c(g) -> tuple:
    """g = p u with p positive Hermitian of determinant 1 and u special unitary."""
    g = np.asarray(g, dtype=complex)
    u, p = linalg.polar(g, side="left")
    return p, u


def polar_decompose_sl2(A) -> tuple:
    """A = P R(s) with P positive symmetric; s in [0, 2 pi)."""
    A = np.asarray(A, dtype=float)
    u, p = linalg.polar(A, side="left")
    s = math.atan2(u[0, 1], u[0, 0]) % (2 * math.pi)
    return p, s


def log_positive(p) -> np.ndarray:
    """Traceless Hermitian X with exp X = p, for p positive Hermitian of determinant 1."""
    p = np.asarray(p)
    p0 = p - np.trace(p) / 2 * np.eye(2)
    sh = math.sqrt(max(float(np.real(-np.linalg.det(p0))), 0.0))
    q = math.asinh(sh)
    factor = 1.0 if q < 1e-300 else q / sh
    return p0 * factor


def factor_pseudo_euclidean(g: SemidirectElement) -> tuple:
    """Unique g = exp_m(lam) o h with h a rotation plus a symmetric translation.

    Returns (lam, h) with lam = (l1, l2, l3).
    """
    P, _ = polar_decompose_sl2(g.A)
    X1 = log_positive(P)
    l2, l3 = X1[0, 0], X1[0, 1]
    u = (g.X[0, 1] - g.X[1, 0]) / 2
    _, s2 = cosh_sinc(4 * (l2 * l2 + l3 * l3))
    l1 = -u / s2
    lam = np.array([l1, l2, l3])
    h = semidirect_inv(exp_m(lam)) @ g
    return lam, h


def in_pseudo_euclidean_stabilizer(g: SemidirectElement, tol: float = 1e-9) -> float:
    """Residual of g from the stabilizer (rotations with symmetric translation parts)."""
    A, X = g.A, g.X
    rot = max(abs(A[0, 0] - A[1, 1]), abs(A[0, 1] + A[1, 0]))
    sym = abs(X[0, 1] - X[1, 0])
    return float(max(rot, sym))


# ------------------------------------------------------------ E(2,1) geometry

def lorentz(A) -> np.ndarray:
    """Matrix of Y -> A Y A^-1 in omega coordinates; lies in SO+(2,1)."""
    A = np.asarray(A, dtype=float)
    Ai = _inv2(A)
    cols = [omega(A @ omega_inv(e) @ Ai) for e in np.eye(3)]
    return np.array(cols).T


def omega_matrix_explicit(A) -> np.ndarray:
    """The 3x3 block of the isometry onto the affine model, entry by entry."""
    (a, b), (c, d) = np.asarray(A, dtype=float)
    return np.array([
        [d * a + b * c, c * d - b * a, c * d + b * a],
        [b * d - c * a, (a * a + d * d - b * b - c * c) / 2, (d * d + b * b - a * a - c * c) / 2],
        [b * d + c * a, (d * d - b * b - a * a + c * c) / 2, (d * d + b * b + a * a + c * c) / 2],
    ])


def Omega(g: SemidirectElement) -> tuple:  # noqa: N802 - name of the map
    """Affine motion (B, b): p -> B p + b matching the right action Y -> A^-1 Y A + X."""
    return omega_matrix_explicit(g.A), omega(g.X)


def right_action(g: SemidirectElement, Y) -> np.ndarray:
    """(A, X) * (I, Y) = (I, A^-1 Y A + X)."""
    return _inv2(g.A) @ np.asarray(Y, dtype=float) @ g.A + g.X


def left_action_point(g: SemidirectElement, p) -> np.ndarray:
    """g . p = omega(A (Y - X) A^-1), the left action inverse to the right one."""
    Y = omega_inv(p)
    return omega(g.A @ (Y - g.X) @ _inv2(g.A))


def affine_part(g: SemidirectElement) -> tuple:
    """(M, t) with g . p = M p + t."""
    M = lorentz(g.A)
    t = -omega(g.A @ g.X @ _inv2(g.A))
    return M, t


def e21_norm(p) -> float:
    p = np.asarray(p, dtype=float)
    return float(p[0] ** 2 + p[1] ** 2 - p[2] ** 2)


@dataclass(frozen=True, eq=False)
class PseudoPlane:
    """Plane {p : <p, nu> = c} with nu a future unit timelike normal.

    Such a plane is euclidean: its line at infinity misses the light cone
    and its pole nu satisfies x^2 + y^2 < z^2.
    """

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        nu = np.array(self.normal, dtype=float)
        norm2 = minkowski(nu, nu)
        if norm2 >= 0:
            raise ValueError("normal must be timelike (x^2 + y^2 < z^2)")
        scale = math.sqrt(-norm2) * (1.0 if nu[2] > 0 else -1.0)
        object.__setattr__(self, "normal", nu / scale)
        object.__setattr__(self, "offset", float(self.offset) / scale)

    @classmethod
    def base(cls) -> "PseudoPlane":
        """The plane of symmetric translation parts, n = 0."""
        return cls(np.array([0.0, 0.0, 1.0]), 0.0)

    @classmethod
    def through(cls, point, normal) -> "PseudoPlane":
        nu = np.asarray(normal, dtype=float)
        nu = nu / math.sqrt(-minkowski(nu, nu))
        if nu[2] < 0:
            nu = -nu
        return cls(nu, minkowski(point, nu))

    def contains(self, p, tol: float = 1e-9) -> bool:
        return abs(minkowski(p, self.normal) - self.offset) <= tol

    def key(self) -> np.ndarray:
        return np.array([self.normal[0], self.normal[1], self.offset])

    def distance(self, other: "PseudoPlane") -> float:
        return float(np.abs(self.key() - other.key()).max())


def move_plane(g: SemidirectElement, plane: PseudoPlane) -> PseudoPlane:
    M, t = affine_part(g)
    nu = M @ plane.normal
    return PseudoPlane(nu, plane.offset + minkowski(t, nu))


def boost_to(nu) -> np.ndarray:
    """Positive symmetric A in SL2(R) whose Lorentz matrix sends (0, 0, 1) to nu.

    Uses A U A^-1 = A^2 U for symmetric A of determinant 1.
    """
    nu = np.asarray(nu, dtype=float)
    nu = nu / math.sqrt(-minkowski(nu, nu))
    if nu[2] < 0:
        nu = -nu
    target = -omega_inv(nu) @ U
    return np.real(linalg.sqrtm(target))


# ------------------------------------------------------------ quaternion Mobius action

@dataclass(frozen=True)
class JQuaternion:
    """w = x + j y in upper half space: x complex, y > 0."""

    x: complex
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("y must be positive")
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", float(self.y))

    def as_array(self) -> np.ndarray:
        return np.array([self.x.real, self.x.imag, self.y])

    def distance(self, other: "JQuaternion") -> float:
        return float(np.abs(self.as_array() - other.as_array()).max())


J_POINT = JQuaternion(0, 1)


def _qmul(p, q) -> np.ndarray:
    """Hamilton product on (1, i, j, k) coordinates."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def _qinv(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.array([q[0], -q[1], -q[2], -q[3]]) / float(q @ q)


def _cq(z) -> np.ndarray:
    z = complex(z)
    return np.array([z.real, z.imag, 0.0, 0.0])


def mobius_J(gamma, w: JQuaternion) -> JQuaternion:  # noqa: N802
    """(a w + b)(c w + d)^-1 evaluated in the quaternions."""
    gamma = np.asarray(gamma, dtype=complex)
    check_det_one(gamma, 1e-9)
    (a, b), (c, d) = gamma
    wq = np.array([w.x.real, w.x.imag, w.y, 0.0])
    num = _qmul(_cq(a), wq) + _cq(b)
    den = _qmul(_cq(c), wq) + _cq(d)
    out = _qmul(num, _qinv(den))
    if abs(out[3]) > 1e-9 * max(1.0, float(np.abs(out).max())):
        raise ArithmeticError("result left the upper half space model")
    return JQuaternion(complex(out[0], out[1]), out[2])


# ------------------------------------------------------------ Scheerer group

@dataclass(frozen=True, eq=False)
class ProductElement:
    """(A, phi) in PSL2(R) x SO2(R), phi an angle mod 2 pi."""

    A: np.ndarray
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "A", np.array(self.A, dtype=float))
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))

    def __matmul__(self, other: "ProductElement") -> "ProductElement":
        return ProductElement(self.A @ other.A, self.phi + other.phi)

    def inv(self) -> "ProductElement":
        return ProductElement(_inv2(self.A), -self.phi)


def angle_distance(x: float, y: float) -> float:
    d = (x - y) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def product_distance(g1: ProductElement, g2: ProductElement) -> float:
    return max(psl_distance(g1.A, g2.A), angle_distance(g1.phi, g2.phi))
