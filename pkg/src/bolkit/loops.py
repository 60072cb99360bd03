"""Loops on coset spaces G/H defined by sections.

A loop element is the section's own representative of its coset, so
``normal_form(ctx, g)`` is both the coset normal form and the section value.
Each context carries a chart ``lam -> sigma`` of the section image and a map
``coords`` sending any group element to the chart coordinates of its coset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable

import numpy as np
from scipy import linalg, optimize

from . import matrix_groups as mg
from .catalog import DomainError, bol_family, b4_pair_basis
from .matrix_groups import (H, I2, J_POINT, T, JQuaternion, PseudoPlane, ProductElement,
                            SemidirectElement)
from .report import VerificationReport, make_rng


class ContextError(RuntimeError):
    """A section could not be evaluated on the requested coset."""


def _default_residual(a, b):
    return np.asarray(a, dtype=float) - np.asarray(b, dtype=float)


@dataclass(frozen=True)
class LoopContext:
    label: str
    topic: str
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    identity: Any
    distance: Callable[[Any, Any], float]
    chart: Callable[[np.ndarray], Any]
    coords: Callable[[Any], np.ndarray]
    stabilizer_residual: Callable[[Any], float]
    coord_residual: Callable = _default_residual
    is_local: bool = False
    box: float = 1.0
    expect_bol: bool = True
    right_solver: Callable | None = None
    invariant: Callable | None = None
    dim: int = 3
    extras: dict = field(default_factory=dict)

    def coord_distance(self, a, b) -> float:
        return float(np.abs(self.coord_residual(a, b)).max())

    @property
    def product_box(self) -> float:
        """Sampling box for checks that multiply samples; local charts keep products inside."""
        return self.box / 3 if self.is_local else self.box

    @property
    def scope(self) -> str:
        return f"local, |lambda|_inf <= {self.box}" if self.is_local else "global"


# ------------------------------------------------------------ generic operations

def normal_form(ctx: LoopContext, g):
    return ctx.chart(ctx.coords(g))


def loop_mul(ctx: LoopContext, x, y):
    """x * y = sigma(xH) y H, returned as its section representative."""
    return normal_form(ctx, ctx.mul(normal_form(ctx, x), y))


def left_divide(ctx: LoopContext, a, b):
    """The x with a * x = b."""
    return normal_form(ctx, ctx.mul(ctx.inv(normal_form(ctx, a)), b))


def loop_inverse(ctx: LoopContext, a):
    """a \\ e, which is a two-sided inverse in a Bol loop."""
    return normal_form(ctx, ctx.inv(normal_form(ctx, a)))


def right_divide(ctx: LoopContext, b, a):
    """The x with x * a = b.

    Bol contexts use x = a' * ((a * b) * a') with a' the inverse of a;
    otherwise a context solver or a numerical solve along the section
    chart is used (see ``right_divide_info``).
    """
    return right_divide_info(ctx, b, a)[0]


def right_divide_info(ctx: LoopContext, b, a) -> tuple:
    if ctx.right_solver is not None:
        return ctx.right_solver(b, a), "context solver"
    if ctx.expect_bol:
        ai = loop_inverse(ctx, a)
        return loop_mul(ctx, ai, loop_mul(ctx, loop_mul(ctx, a, b), ai)), "bol formula"
    x0 = ctx.coords(ctx.mul(b, ctx.inv(normal_form(ctx, a))))
    lam, ok = _solve_right(ctx, b, a, x0)
    if not ok:
        raise ContextError("numerical right division did not converge")
    return ctx.chart(lam), "numerical"


def _least_squares(fun, x0, max_nfev=400):
    x0 = np.asarray(x0, dtype=float)
    n = len(np.atleast_1d(fun(x0)))

    def safe(x):
        # overflowing exponentials leave the basin; report a large residual instead
        try:
            with np.errstate(all="ignore"):
                r = np.asarray(fun(x), dtype=float)
        except (ValueError, ArithmeticError, np.linalg.LinAlgError, ContextError):
            return np.full(n, 1e6)
        return np.where(np.isfinite(r), r, 1e6)

    res = optimize.least_squares(safe, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                 max_nfev=max_nfev)
    return res.x, float(np.abs(res.fun).max())


def _solve_right(ctx: LoopContext, b, a, x0, tol=1e-10):
    if ctx.invariant is not None:
        target = ctx.invariant(b)

        def f(lam):
            return ctx.invariant(ctx.mul(ctx.chart(lam), a)) - target

        lam, resid = _least_squares(f, x0)
        return lam, resid <= tol * max(1.0, float(np.abs(target).max()))
    target = ctx.coords(b)

    def f(lam):
        return ctx.coord_residual(ctx.coords(ctx.mul(ctx.chart(lam), a)), target)

    lam, resid = _least_squares(f, x0)
    return lam, resid <= tol


def numeric_coords(chart, invariant, guess, residual=_default_residual, tol=1e-9):
    """coords(g): chart coordinates of the section element sharing g's coset invariant."""
    def coords(g):
        target = invariant(g)
        lam, resid = _least_squares(lambda x: residual(invariant(chart(x)), target), guess(g))
        if resid > tol * max(1.0, float(np.abs(target).max())):
            raise ContextError(f"section not found on this coset (residual {resid:.3g})")
        return lam
    return coords


def sample_coords(ctx: LoopContext, rng, n: int, box: float | None = None) -> np.ndarray:
    box = ctx.box if box is None else box
    return rng.uniform(-box, box, size=(n, ctx.dim))


def sample_elements(ctx: LoopContext, rng, n: int, box: float | None = None) -> list:
    return [ctx.chart(lam) for lam in sample_coords(ctx, rng, n, box)]


def _report(ctx, check, resid, tol, samples, seed, **details):
    details = dict(details, scope=ctx.scope)
    return VerificationReport(context=ctx.label, check=check, passed=bool(resid <= tol),
                              max_residual=float(resid), tolerance=tol, samples=samples, seed=seed,
                              topic=ctx.topic, details=details)


# ------------------------------------------------------------ checks

def check_section(ctx: LoopContext, samples: int = 200, seed: int = 0, tol: float = 1e-10) -> VerificationReport:
    """sigma(H) = 1 and every chart value lies in the coset it names."""
    rng = make_rng(seed, "section")
    worst = ctx.distance(ctx.chart(np.zeros(ctx.dim)), ctx.identity)
    for lam in sample_coords(ctx, rng, samples):
        worst = max(worst, ctx.coord_distance(ctx.coords(ctx.chart(lam)), lam))
    return _report(ctx, "section", worst, tol, samples, seed)


def check_identity(ctx: LoopContext, samples: int = 200, seed: int = 0, tol: float = 1e-10) -> VerificationReport:
    rng = make_rng(seed, "identity")
    e = ctx.identity
    worst = 0.0
    for x in sample_elements(ctx, rng, samples):
        worst = max(worst, ctx.distance(loop_mul(ctx, e, x), x), ctx.distance(loop_mul(ctx, x, e), x))
    return _report(ctx, "identity", worst, tol, samples, seed)


def check_divisions(ctx: LoopContext, samples: int = 200, seed: int = 0, tol: float = 1e-9) -> VerificationReport:
    rng = make_rng(seed, "divisions")
    xs = sample_elements(ctx, rng, 2 * samples, ctx.product_box)
    worst, methods = 0.0, set()
    for a, b in zip(xs[::2], xs[1::2]):
        x = left_divide(ctx, a, b)
        worst = max(worst, ctx.distance(loop_mul(ctx, a, x), b))
        y, how = right_divide_info(ctx, b, a)
        methods.add(how)
        worst = max(worst, ctx.distance(loop_mul(ctx, y, a), b))
    return _report(ctx, "divisions", worst, tol, samples, seed, right_division=sorted(methods))


def check_bol(ctx: LoopContext, samples: int = 200, seed: int = 0, tol: float = 1e-8) -> VerificationReport:
    """rsr must lie in the section image: distance(rsr, sigma(rsr H)) over random r, s."""
    rng = make_rng(seed, "bol")
    xs = sample_elements(ctx, rng, 2 * samples, ctx.product_box)
    worst, witness = 0.0, None
    for r, s in zip(xs[::2], xs[1::2]):
        rsr = ctx.mul(ctx.mul(r, s), r)
        d = ctx.distance(rsr, normal_form(ctx, rsr))
        if d > worst:
            worst, witness = d, (ctx.coords(r), ctx.coords(s))
    return _report(ctx, "bol", worst, tol, samples, seed, witness=witness)


def check_bol_identity(ctx: LoopContext, samples: int = 200, seed: int = 0, tol: float = 1e-8) -> VerificationReport:
    """a * (b * (a * x)) = (a * (b * a)) * x on random triples."""
    rng = make_rng(seed, "bol-identity")
    xs = sample_elements(ctx, rng, 3 * samples, ctx.product_box)
    worst = 0.0
    for a, b, x in zip(xs[::3], xs[1::3], xs[2::3]):
        lhs = loop_mul(ctx, a, loop_mul(ctx, b, loop_mul(ctx, a, x)))
        rhs = loop_mul(ctx, loop_mul(ctx, a, loop_mul(ctx, b, a)), x)
        worst = max(worst, ctx.distance(lhs, rhs))
    return _report(ctx, "bol identity", worst, tol, samples, seed)


def check_sharp_transitivity(ctx: LoopContext, samples: int = 200, seed: int = 0, tol: float = 1e-9,
                             restarts: int = 2, spread: float = 0.25,
                             unique_tol: float = 1e-7) -> VerificationReport:
    """For cosets aH, bH find z in the section image with z a H = b H, then restart nearby.

    Existence uses the context's right division; uniqueness restarts a
    numerical solve from perturbed coordinates and requires the same z.
    """
    rng = make_rng(seed, "transitivity")
    xs = sample_elements(ctx, rng, 2 * samples, ctx.product_box)
    worst_exist, worst_unique, failures = 0.0, 0.0, 0
    trivial = ctx.distance(right_divide(ctx, xs[0], xs[0]), ctx.identity)
    for a, b in zip(xs[::2], xs[1::2]):
        z = right_divide(ctx, b, a)
        zc = ctx.coords(z)
        exist = ctx.coord_distance(ctx.coords(ctx.mul(z, a)), ctx.coords(b))
        worst_exist = max(worst_exist, exist)
        for _ in range(restarts):
            lam, ok = _solve_right(ctx, b, a, zc + rng.uniform(-spread, spread, ctx.dim))
            if not ok:
                failures += 1
                continue
            worst_unique = max(worst_unique, ctx.coord_distance(lam, zc))
    passed = worst_exist <= tol and worst_unique <= unique_tol and failures == 0 and trivial <= tol
    return VerificationReport(context=ctx.label, check="sharp transitivity", passed=passed,
                              max_residual=max(worst_exist, trivial), tolerance=tol, samples=samples,
                              seed=seed, topic=ctx.topic,
                              details={"uniqueness_spread": worst_unique, "restart_failures": failures,
                                       "scope": ctx.scope})


def check_all(ctx: LoopContext, samples: int = 200, seed: int = 0) -> list[VerificationReport]:
    out = [check_section(ctx, samples, seed), check_identity(ctx, samples, seed),
           check_divisions(ctx, samples, seed), check_sharp_transitivity(ctx, samples, seed)]
    if ctx.expect_bol:
        out += [check_bol(ctx, samples, seed), check_bol_identity(ctx, samples, seed)]
    return out


def conjugate_context(ctx: LoopContext, g) -> LoopContext:
    """Same H, section x -> g^-1 sigma(x) g."""
    gi = ctx.inv(g)

    def chart(lam):
        return ctx.mul(ctx.mul(gi, ctx.chart(lam)), g)

    coords = numeric_coords(chart, ctx.coords, ctx.coords, ctx.coord_residual)
    return replace(ctx, label=ctx.label + " (conjugated section)", chart=chart, coords=coords,
                   right_solver=None, expect_bol=False, extras={})


def section_conjugation_defect(ctx: LoopContext, g, samples: int = 50, seed: int = 0) -> float:
    """max distance of g theta g^-1 from the section image, theta sampled from it."""
    rng = make_rng(seed, "conjugation")
    gi = ctx.inv(g)
    worst = 0.0
    for theta in sample_elements(ctx, rng, samples):
        c = ctx.mul(ctx.mul(g, theta), gi)
        worst = max(worst, ctx.distance(c, normal_form(ctx, c)))
    return worst


# ------------------------------------------------------------ SL2(C) / SU2

def _sl2c_distance(a, b) -> float:
    return float(np.abs(np.asarray(a) - np.asarray(b)).max())


def _unitary_residual(g) -> float:
    g = np.asarray(g)
    return float(np.abs(g @ g.conj().T - I2).max())


def _hermitian_coords(p) -> np.ndarray:
    X = mg.log_positive(p)
    return np.array([X[0, 1].real, X[0, 1].imag, X[0, 0].real])


def _hermitian_chart(lam) -> np.ndarray:
    l1, l2, l3 = lam
    X = np.array([[l3, l1 + 1j * l2], [l1 - 1j * l2, -l3]])
    return mg.exp_sl2(X)


def _sl2c_inv(g):
    (a, b), (c, d) = np.asarray(g)
    return np.array([[d, -b], [-c, a]])


def hyperbolic_space_loop() -> LoopContext:
    """SL2(C)/SU2 with the positive Hermitian factor as section; identity at j.

    Chart coordinates (l1, l2, l3) name exp(l1 T + l2 iU + l3 H).
    """
    def coords(g):
        p, _ = mg.polar_decompose_sl2c(g)
        return _hermitian_coords(p)

    return LoopContext(label="hyperbolic space loop L0", topic="hyperbolic space loop",
                       mul=lambda x, y: np.asarray(x) @ np.asarray(y), inv=_sl2c_inv,
                       identity=np.eye(2, dtype=complex), distance=_sl2c_distance,
                       chart=_hermitian_chart, coords=coords, stabilizer_residual=_unitary_residual,
                       box=1.0)


def hyperbolic_point(g) -> JQuaternion:
    """The point g(j) of upper half space."""
    return mg.mobius_J(g, J_POINT)


def translation_to(w: JQuaternion) -> np.ndarray:
    """Positive Hermitian p with p(j) = w, i.e. the hyperbolic translation from j to w.

    p^2 = ((|x|^2 + y^2)/y, x/y; conj(x)/y, 1/y).
    """
    x, y = w.x, w.y
    Q = np.array([[(abs(x) ** 2 + y * y) / y, x / y], [x.conjugate() / y, 1 / y]])
    vals, vecs = np.linalg.eigh(Q)
    return vecs @ np.diag(np.sqrt(vals)) @ vecs.conj().T


def mobius_product(x: JQuaternion, y: JQuaternion) -> JQuaternion:
    """x o y = tau_{j,x}(y) computed entirely on points."""
    return mg.mobius_J(translation_to(x), y)


def loop_La(a: float, box: float = 0.5) -> LoopContext:
    """Local loop with section image exp(m_a) in SL2(C)/SU2, |a| < 1."""
    a = float(a)
    if not abs(a) < 1:
        raise DomainError("loop_La needs |a| < 1")

    def chart(lam):
        l1, l2, l3 = lam
        z = complex(l1, l2)
        X = np.array([[l3, (1 + a) * z], [(1 - a) * z.conjugate(), -l3]])
        return mg.exp_sl2(X)

    def invariant(g):
        g = np.asarray(g)
        q = g @ g.conj().T
        return np.array([q[0, 0].real, q[0, 1].real, q[0, 1].imag])

    def guess(g):
        p, _ = mg.polar_decompose_sl2c(g)
        c = _hermitian_coords(p)
        return np.array([c[0] / (1 + a), c[1] / (1 + a), c[2]]) if a > -1 else c

    base = hyperbolic_space_loop()
    return replace(base, label=f"local loop L_a (a={a:g})", topic="sl2(C) Bol complements",
                   chart=chart, coords=numeric_coords(chart, invariant, guess), invariant=invariant,
                   is_local=a != 0, box=box, extras={"a": a})


# ------------------------------------------------------------ PSL2(R) x SO2

def _wrap(x):
    return (x + math.pi) % (2 * math.pi) - math.pi


def _scheerer_residual(a, b):
    d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    d[0] = _wrap(d[0])
    return d


def scheerer_loop() -> LoopContext:
    """G = PSL2(R) x SO2, H = {(+-R(s), 2s)}, section image (positive symmetric) x SO2.

    Chart coordinates (l1, l2, l3) name (exp(l2 H + l3 T), l1).
    """
    def chart(lam):
        l1, l2, l3 = lam
        return ProductElement(mg.exp_sl2(l2 * H + l3 * T), l1)

    def coords(g):
        P, s = mg.polar_decompose_sl2(g.A)
        X = mg.log_positive(P)
        return np.array([_wrap(g.phi - 2 * s), X[0, 0], X[0, 1]])

    def stab(g):
        P, s = mg.polar_decompose_sl2(g.A)
        return max(float(np.abs(P - I2).max()), mg.angle_distance(g.phi, 2 * s))

    return LoopContext(label="Scheerer extension loop", topic="Scheerer extension",
                       mul=lambda x, y: x @ y, inv=lambda g: g.inv(), identity=ProductElement(I2, 0.0),
                       distance=mg.product_distance, chart=chart, coords=coords,
                       stabilizer_residual=stab, coord_residual=_scheerer_residual, box=1.0)


def scheerer_stabilizer(s: float) -> ProductElement:
    return ProductElement(mg.rotation(s), 2 * s)


# ------------------------------------------------------------ PSL2(R) x| R^3

def _semidirect_context(label, topic, chart, coords, **kw) -> LoopContext:
    return LoopContext(label=label, topic=topic, mul=mg.semidirect_mul, inv=mg.semidirect_inv,
                       identity=SemidirectElement.identity(), distance=mg.semidirect_distance,
                       chart=chart, coords=coords,
                       stabilizer_residual=mg.in_pseudo_euclidean_stabilizer, **kw)


def pseudo_euclidean_loop() -> LoopContext:
    """Section exp(m_{0,0,0}) through the global factorization g = exp_m(lam) h."""
    return _semidirect_context("pseudo-euclidean space loop", "pseudo-euclidean loop",
                               chart=mg.exp_m, coords=lambda g: mg.factor_pseudo_euclidean(g)[0])


def element_to_plane(g) -> PseudoPlane:
    """The euclidean plane g . P of the coset gH."""
    return mg.move_plane(g, PseudoPlane.base())


def plane_to_element(plane: PseudoPlane) -> SemidirectElement:
    """Some group element mapping P onto ``plane`` (boost, then translation)."""
    boost = SemidirectElement(mg.boost_to(plane.normal), np.zeros((2, 2)))
    return SemidirectElement.translation(-plane.offset * plane.normal) @ boost


def plane_product(q1: PseudoPlane, q2: PseudoPlane) -> PseudoPlane:
    """Q1 * Q2 = tau_{P,Q1}(Q2) with tau the section element carrying P to Q1."""
    ctx = pseudo_euclidean_loop()
    tau = normal_form(ctx, plane_to_element(q1))
    return mg.move_plane(tau, q2)


def _b4_pair(vec) -> tuple:
    """Unhalved (X1, X2) pair of a B4 coordinate vector."""
    X1 = np.zeros((2, 2))
    X2 = np.zeros((2, 2))
    for c, (x, y) in zip(vec, b4_pair_basis()):
        X1 += 2 * float(c) * np.array(x, dtype=float)
        X2 += 2 * float(c) * np.array(y, dtype=float)
    return X1, X2


def _plane_invariant(g) -> np.ndarray:
    return element_to_plane(g).key()


def loop_Lbcc(b3, c3, c2, box: float | None = None) -> LoopContext:  # noqa: N802
    """Section exp(m_{b3,c3,c2}); global when b3^2 + c3^2 < 1, local otherwise."""
    m = bol_family("m_b3c3c2", b3=_as_fraction(b3), c3=_as_fraction(c3), c2=_as_fraction(c2))
    gens = [_b4_pair(v) for v in m.basis]
    # rows of m.basis are in echelon form; their leading e1, e2, e3 entries are 1
    local = float(b3) ** 2 + float(c3) ** 2 > 1

    def chart(lam):
        X1 = sum(l * g[0] for l, g in zip(lam, gens))
        X2 = sum(l * g[1] for l, g in zip(lam, gens))
        return mg.exp_semidirect(X1, X2)

    def guess(g):
        return mg.factor_pseudo_euclidean(g)[0][[0, 1, 2]]

    coords = numeric_coords(chart, _plane_invariant, guess)
    label = f"loop L_(b3,c3,c2)=({float(b3):g},{float(c3):g},{float(c2):g})"
    return _semidirect_context(label, "semidirect Bol family", chart, coords,
                               invariant=_plane_invariant, is_local=local, box=(0.5 if local else 1.0) if box is None else box,
                               extras={"params": (b3, c3, c2), "generators": gens})


def _as_fraction(x):
    from fractions import Fraction
    return x if isinstance(x, (int, Fraction)) else Fraction(str(x))


def global_factorization_probe(ctx: LoopContext, g, starts: int = 40, box: float = 4.0,
                               seed: int = 0) -> dict:
    """Multi-start search for section elements in the coset of g.

    Returns the best residual and the distinct solutions found; a coset
    with no solution or several solutions rules out a global section.
    """
    rng = make_rng(seed, "probe")
    target = _plane_invariant(g) if isinstance(g, SemidirectElement) else ctx.coords(g)
    sols, best = [], math.inf
    for _ in range(starts):
        lam, resid = _least_squares(lambda x: _plane_invariant(ctx.chart(x)) - target,
                                    rng.uniform(-box, box, ctx.dim))
        best = min(best, resid)
        if resid < 1e-9 and not any(np.abs(lam - s).max() < 1e-6 for s in sols):
            sols.append(lam)
    return {"best_residual": best, "solutions": sols}


# ------------------------------------------------------------ non-Bol loops in E(2,1)

def nonbol_loop(direction=(0.0, 0.0, 1.0)) -> LoopContext:
    """Section Theta = Lambda Sigma: translations along S times the sigma1 boosts.

    ``direction`` spans the line S through the origin; it must be timelike
    (x^2 + y^2 < z^2) so that S meets every euclidean plane exactly once.
    """
    s = np.asarray(direction, dtype=float)
    if s.shape != (3,) or not mg.minkowski(s, s) < -1e-12 * max(1.0, float(s @ s)):
        raise DomainError("direction must be timelike: x^2 + y^2 < z^2")

    def chart(lam):
        t, l2, l3 = lam
        rho = SemidirectElement(mg.exp_sl2(l2 * H + l3 * T), np.zeros((2, 2)))
        return SemidirectElement.translation(t * s) @ rho

    def coords(g):
        plane = element_to_plane(g)
        X = mg.log_positive(mg.boost_to(plane.normal))
        return np.array([plane.offset / mg.minkowski(s, plane.normal), X[0, 0], X[0, 1]])

    def solver(b, a):
        d1, d2 = element_to_plane(a), element_to_plane(b)
        q1 = mg.boost_to(d1.normal) @ mg.boost_to(d1.normal)
        q2 = mg.boost_to(d2.normal) @ mg.boost_to(d2.normal)
        delta = geometric_mean(np.linalg.inv(q1), q2)
        moved = mg.move_plane(SemidirectElement(delta, np.zeros((2, 2))), d1)
        t = (d2.offset - moved.offset) / mg.minkowski(s, d2.normal)
        return SemidirectElement.translation(t * s) @ SemidirectElement(delta, np.zeros((2, 2)))

    on_axis = float(np.abs(s[:2]).max()) <= 1e-12 * abs(s[2])
    label = "non-Bol loop L_Lambda along " + ("pi(J)" if on_axis else f"({s[0]:g},{s[1]:g},{s[2]:g})")
    return _semidirect_context(label, "non-Bol loops in E(2,1)", chart, coords, expect_bol=False,
                               right_solver=solver, extras={"direction": s})


def geometric_mean(a, b) -> np.ndarray:
    """a # b = a^1/2 (a^-1/2 b a^-1/2)^1/2 a^1/2, the positive solution of X a^-1 X = b."""
    ra = np.real(linalg.sqrtm(a))
    rai = np.linalg.inv(ra)
    return ra @ np.real(linalg.sqrtm(rai @ b @ rai)) @ ra


def nonbol_witness(ctx: LoopContext, t: float = 1.0, boost=(0.8, 0.0)) -> dict:
    """lambda rho lambda rho^-1 and (lambda rho)^2 for lambda in Lambda, rho in Sigma.

    ``commutator_residual`` is the distance of lambda rho lambda rho^-1 from
    Lambda (the part of its translation off S); ``square_residual`` is the
    distance of r 1 r = (lambda rho)^2 from the section image.
    """
    s = ctx.extras["direction"]
    lam = SemidirectElement.translation(t * s)
    rho = SemidirectElement(mg.exp_sl2(boost[0] * H + boost[1] * T), np.zeros((2, 2)))
    comm = lam @ rho @ lam @ rho.inv()
    _, w = mg.affine_part(comm)
    off_axis = w - (w @ s) / (s @ s) * s
    r = lam @ rho
    sq = r @ r
    return {"commutator_translation": w, "commutator_residual": float(np.abs(off_axis).max()),
            "linear_residual": float(np.abs(comm.A - I2).max()),
            "square_residual": ctx.distance(sq, normal_form(ctx, sq))}


def rotation_element(phi: float) -> SemidirectElement:
    """Element of K: rotation about the axis pi(J), fixing the origin."""
    return SemidirectElement(mg.rotation(phi), np.zeros((2, 2)))


# ------------------------------------------------------------ globality failure

@dataclass(frozen=True)
class DivergenceRow:
    c: float
    element: np.ndarray
    second: float
    norm: float
    coset_residual: float


def forced_section_element(c: float) -> tuple:
    """The unique element of exp m in the coset (((1+c, 1), (c, 1)), 0) H2, c != -1.

    H2 = {(((1, b), (0, 1)), b)}; the element is (((1+c, c), (c, (c^2+1)/(1+c))), b)
    with b = (c - 1)/(1 + c).
    """
    if c == -1:
        raise DomainError("c = -1 has no representative in exp m")
    b = (c - 1) / (1 + c)
    s = np.array([[1 + c, c], [c, (c * c + 1) / (1 + c)]])
    return s, b


def divergence_demo(ks=range(1, 8)) -> VerificationReport:
    """Forced section elements on the cosets c = -1 + 10^-k grow like 2 * 10^k."""
    rows = []
    for k in ks:
        c = -1 + 10.0 ** (-k)
        s, b = forced_section_element(c)
        g = np.array([[1 + c, 1.0], [c, 1.0]])
        # g^-1 s must be ((1, b), (0, 1)) with the same b in the second component
        h = np.linalg.solve(g, s)
        resid = float(np.abs(h - np.array([[1, b], [0, 1]])).max()) / max(1.0, abs(b))
        rows.append(DivergenceRow(c, s, b, float(np.abs(s).max()), resid))
    grows = all(r.norm >= 10.0 ** k for r, k in zip(rows, ks))
    worst = max(r.coset_residual for r in rows)
    return VerificationReport(
        context="PSL2(R) x R with H2, k = 1", check="divergence of forced section", passed=grows and worst < 1e-6,
        max_residual=worst, tolerance=1e-6, samples=len(rows), topic="globality failure",
        details={"rows": [{"k": k, "c": r.c, "norm": r.norm, "second_component": r.second,
                           "symmetric": bool(r.element[0, 1] == r.element[1, 0])}
                          for k, r in zip(ks, rows)]})


def stabilizer_hits(ctx: LoopContext, starts: int = 60, box: float = 4.0, seed: int = 0) -> list:
    """Nonzero chart coordinates whose section element lies in H.

    Any such point means the section image meets the identity coset twice,
    so the chart cannot be a global section.
    """
    probe = global_factorization_probe(ctx, ctx.identity, starts=starts, box=box, seed=seed)
    return [lam for lam in probe["solutions"]
            if float(np.abs(lam).max()) > 1e-6 and ctx.stabilizer_residual(ctx.chart(lam)) < 1e-9]


def check_global_section(ctx: LoopContext, starts: int = 60, box: float = 4.0, seed: int = 0) -> VerificationReport:
    """Passes when the multi-start search finds no second section point in H."""
    hits = stabilizer_hits(ctx, starts, box, seed)
    return VerificationReport(context=ctx.label, check="section meets H only at 1", passed=not hits,
                              max_residual=float(len(hits)), tolerance=0.0, samples=starts, seed=seed,
                              topic=ctx.topic,
                              details={"witnesses": [list(h) for h in hits[:3]], "search_box": box,
                                       "scope": ctx.scope})


def check_scheerer_normal_subgroup(samples: int = 200, seed: int = 0, tol: float = 1e-12) -> VerificationReport:
    """Loop elements (1, phi) form a subgroup: their products are (1, phi1 + phi2)."""
    ctx = scheerer_loop()
    rng = make_rng(seed, "scheerer-subgroup")
    worst = 0.0
    for p1, p2 in rng.uniform(-math.pi, math.pi, size=(samples, 2)):
        x = ctx.chart(np.array([p1, 0.0, 0.0]))
        y = ctx.chart(np.array([p2, 0.0, 0.0]))
        prod = loop_mul(ctx, x, y)
        worst = max(worst, float(np.abs(prod.A - I2).max()), mg.angle_distance(prod.phi, p1 + p2))
        # normality: conjugating by a section element keeps the PSL2 part trivial
        g = ctx.chart(rng.uniform(-1, 1, 3))
        c = g @ x @ g.inv()
        worst = max(worst, mg.psl_distance(c.A, I2))
    return VerificationReport(context=ctx.label, check="SO2 normal subgroup", passed=worst <= tol,
                              max_residual=worst, tolerance=tol, samples=samples, seed=seed, topic=ctx.topic)


def check_mobius_realization(samples: int = 100, seed: int = 0, tol: float = 1e-9) -> VerificationReport:
    """Polar-section product against the product computed on upper half space points."""
    ctx = hyperbolic_space_loop()
    rng = make_rng(seed, "mobius")
    worst = 0.0
    for _ in range(samples):
        x, y = sample_elements(ctx, rng, 2)
        via_group = hyperbolic_point(loop_mul(ctx, x, y))
        via_points = mobius_product(hyperbolic_point(x), hyperbolic_point(y))
        worst = max(worst, via_group.distance(via_points))
    return VerificationReport(context=ctx.label, check="polar vs Mobius realization", passed=worst <= tol,
                              max_residual=worst, tolerance=tol, samples=samples, seed=seed, topic=ctx.topic)
