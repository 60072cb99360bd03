"""Lie algebras given by exact rational structure constants.

An algebra stores ``[e_i, e_j]`` for ``i < j``; everything else follows
from antisymmetry and bilinearity. Subspaces keep their basis in reduced
row echelon form so that two spans of the same space compare equal.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import exact
from .exact import ZERO, Vec
from .report import VerificationReport, exact_report


class InputError(ValueError):
    """Malformed input: wrong dimension, mixed algebras, bad serialization."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


@dataclass(frozen=True, eq=False)
class LieAlgebraDef:
    """Finite-dimensional real Lie algebra over a named basis.

    ``structure`` maps ``(i, j)`` with ``i < j`` to the coordinates of
    ``[e_i, e_j]``; missing pairs bracket to zero. The Killing form is
    ``killing_normalization * trace(ad x ad y)``.
    """

    name: str
    basis_labels: tuple
    structure: Mapping
    killing_normalization: Fraction = Fraction(1)

    def __post_init__(self):
        n = len(self.basis_labels)
        if n == 0:
            raise InputError("an algebra needs at least one basis element")
        if len(set(self.basis_labels)) != n:
            raise InputError("basis labels must be distinct")
        norm = exact.to_fraction(self.killing_normalization)
        if norm <= 0:
            raise InputError("killing_normalization must be positive")
        object.__setattr__(self, "killing_normalization", norm)
        table = {}
        for (i, j), v in dict(self.structure).items():
            if not (0 <= i < j < n):
                raise InputError(f"structure key {(i, j)} must satisfy 0 <= i < j < {n}")
            v = exact.vec(v)
            if len(v) != n:
                raise InputError(f"bracket [{i},{j}] has length {len(v)}, expected {n}")
            if not exact.is_zero(v):
                table[(i, j)] = v
        object.__setattr__(self, "structure", table)
        terms = []
        for (i, j), v in table.items():
            for k, c in enumerate(v):
                if c:
                    terms.append((i, j, k, c))
                    terms.append((j, i, k, -c))
        object.__setattr__(self, "_terms", tuple(terms))

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise InputError(f"{self.name} has no basis element {label!r}") from None

    def e(self, label) -> Vec:
        return exact.unit(self.dim, self.index(label))

    def element(self, coeffs: Mapping | None = None, **kw) -> Vec:
        """Vector from a label->coefficient mapping, e.g. ``alg.element({"T": 1, "U": a})``."""
        out = [ZERO] * self.dim
        for label, c in dict(coeffs or {}, **kw).items():
            out[self.index(label)] += exact.to_fraction(c)
        return tuple(out)

    def vector(self, coords: Iterable) -> Vec:
        v = exact.vec(coords)
        if len(v) != self.dim:
            raise InputError(f"vector of length {len(v)} does not belong to {self.name} (dim {self.dim})")
        return v

    def describe(self, v: Vec) -> str:
        parts = []
        for c, label in zip(v, self.basis_labels):
            if c:
                parts.append(label if c == 1 else f"-{label}" if c == -1 else f"{exact.fmt(c)}*{label}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    @cached_property
    def killing_gram(self) -> tuple:
        ads = [ad_matrix(self, self.e(i)) for i in range(self.dim)]
        n = self.dim
        return tuple(
            tuple(self.killing_normalization * _trace_product(ads[i], ads[j]) for j in range(n))
            for i in range(n)
        )


def _trace_product(a, b) -> Fraction:
    n = len(a)
    return sum((a[i][k] * b[k][i] for i in range(n) for k in range(n) if a[i][k] and b[k][i]), ZERO)


def _check_vec(alg: LieAlgebraDef, x) -> Vec:
    if len(x) != alg.dim:
        raise InputError(f"vector of length {len(x)} does not belong to {alg.name} (dim {alg.dim})")
    return x


def bracket(alg: LieAlgebraDef, x: Vec, y: Vec) -> Vec:
    _check_vec(alg, x)
    _check_vec(alg, y)
    out = [ZERO] * alg.dim
    for i, j, k, c in alg._terms:
        xi = x[i]
        if xi:
            yj = y[j]
            if yj:
                out[k] += c * xi * yj
    return tuple(out)


def triple(alg: LieAlgebraDef, x: Vec, y: Vec, z: Vec) -> Vec:
    """The ternary product [[x, y], z]."""
    return bracket(alg, bracket(alg, x, y), z)


def ad_matrix(alg: LieAlgebraDef, x: Vec) -> tuple:
    """Matrix whose column j is [x, e_j]."""
    cols = [bracket(alg, x, alg.e(j)) for j in range(alg.dim)]
    return exact.transpose(tuple(cols))


def killing(alg: LieAlgebraDef, x: Vec, y: Vec) -> Fraction:
    _check_vec(alg, x)
    _check_vec(alg, y)
    return exact.dot(x, exact.matvec(alg.killing_gram, y))


def check_jacobi(alg: LieAlgebraDef) -> VerificationReport:
    failures = []
    n = alg.dim
    basis = [alg.e(i) for i in range(n)]
    for i, j, k in itertools.combinations(range(n), 3):
        x, y, z = basis[i], basis[j], basis[k]
        total = exact.add(exact.add(triple(alg, x, y, z), triple(alg, y, z, x)), triple(alg, z, x, y))
        if not exact.is_zero(total):
            failures.append((alg.basis_labels[i], alg.basis_labels[j], alg.basis_labels[k]))
    return exact_report(alg.name, "jacobi", failures, topic="structure constants",
                        samples=n * (n - 1) * (n - 2) // 6)


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """Span of exact vectors inside an algebra, stored in canonical echelon form.

    ``role`` is a free-form tag (triple system, stabilizer, complement) and
    does not take part in equality.
    """

    algebra: LieAlgebraDef = field(compare=False, hash=False)
    basis: tuple
    role: str = field(default="", compare=False)
    algebra_name: str = field(default="", init=False)

    def __post_init__(self):
        rows = [_check_vec(self.algebra, exact.vec(v)) for v in self.basis]
        red, _ = exact.rref(rows)
        object.__setattr__(self, "basis", red)
        object.__setattr__(self, "algebra_name", self.algebra.name)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def describe(self) -> str:
        return "<" + ", ".join(self.algebra.describe(b) for b in self.basis) + ">"


def span(alg: LieAlgebraDef, vectors: Iterable, role: str = "") -> Subspace:
    return Subspace(alg, tuple(vectors), role)


def _same_algebra(*spaces: Subspace) -> LieAlgebraDef:
    alg = spaces[0].algebra
    for s in spaces[1:]:
        if s.algebra is not alg and s.algebra_name != alg.name:
            raise InputError(f"subspaces of different algebras: {alg.name} and {s.algebra_name}")
    return alg


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    alg = _same_algebra(u, w)
    return Subspace(alg, u.basis + w.basis)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    alg = _same_algebra(u, w)
    if not u.basis or not w.basis:
        return Subspace(alg, ())
    # columns u_1..u_p, -w_1..-w_q ; kernel vectors give common elements
    cols = list(u.basis) + [exact.scale(-1, b) for b in w.basis]
    kernel = exact.nullspace(exact.transpose(tuple(cols)))
    p = len(u.basis)
    return Subspace(alg, tuple(exact.combine(k[:p], u.basis) for k in kernel))


def equals(u: Subspace, w: Subspace) -> bool:
    _same_algebra(u, w)
    return u.basis == w.basis


def contains(u: Subspace, v) -> bool:
    """Membership of a vector, or inclusion of a subspace."""
    if isinstance(v, Subspace):
        _same_algebra(u, v)
        return all(contains(u, b) for b in v.basis)
    _check_vec(u.algebra, v)
    if exact.is_zero(v):
        return True
    return exact.coordinates(u.basis, tuple(v)) is not None


def direct_sum_check(alg: LieAlgebraDef, m: Subspace, h: Subspace) -> bool:
    """True iff alg = m + h with trivial intersection."""
    _same_algebra(m, h)
    return m.rank + h.rank == alg.dim and intersect(m, h).rank == 0


def derived_space(alg: LieAlgebraDef, m: Subspace) -> Subspace:
    """span{[x, y] : x, y in m}."""
    vecs = [bracket(alg, x, y) for x, y in itertools.combinations(m.basis, 2)]
    return Subspace(alg, tuple(vecs))


def generated_subalgebra(alg: LieAlgebraDef, m: Subspace) -> Subspace:
    current = m
    for _ in range(alg.dim + 1):
        grown = subspace_sum(current, derived_space(alg, current))
        if grown.rank == current.rank:
            return current
        current = grown
    return current


def is_subalgebra(alg: LieAlgebraDef, s: Subspace) -> bool:
    return contains(s, derived_space(alg, s))


def is_ideal(alg: LieAlgebraDef, s: Subspace) -> bool:
    return all(contains(s, bracket(alg, alg.e(i), b)) for i in range(alg.dim) for b in s.basis)


def center(alg: LieAlgebraDef) -> Subspace:
    # x is central iff ad(e_j) x = 0 for all j
    rows = []
    for j in range(alg.dim):
        rows.extend(ad_matrix(alg, alg.e(j)))
    return Subspace(alg, tuple(exact.nullspace(tuple(rows))))


def largest_ideal_in(alg: LieAlgebraDef, h: Subspace) -> Subspace:
    """The largest ideal of alg contained in h (the core of h)."""
    current = h
    while current.rank:
        annihilator = exact.nullspace(current.basis) if current.rank < alg.dim else []
        if not annihilator:
            return current
        basis_cols = exact.transpose(current.basis)
        rows = []
        for j in range(alg.dim):
            image = exact.matmul(ad_matrix(alg, alg.e(j)), basis_cols)
            rows.extend(exact.matmul(tuple(annihilator), image))
        kernel = exact.nullspace(tuple(rows))
        shrunk = Subspace(alg, tuple(exact.combine(c, current.basis) for c in kernel))
        if shrunk.rank == current.rank:
            return current
        current = shrunk
    return current


def contains_nonzero_ideal(alg: LieAlgebraDef, h: Subspace) -> bool:
    return largest_ideal_in(alg, h).rank > 0


def projection_onto(alg: LieAlgebraDef, m: Subspace, h: Subspace):
    """Return the projection g -> m along h as a function on vectors."""
    if not direct_sum_check(alg, m, h):
        raise PreconditionError(f"{m.describe()} and {h.describe()} do not form a direct sum decomposition")
    basis = m.basis + h.basis
    inv = exact.inverse(exact.transpose(basis))
    p = m.rank

    def project(v: Vec) -> Vec:
        coords = exact.matvec(inv, v)
        return exact.combine(coords[:p], m.basis)

    return project


# ----------------------------------------------------------- axiom checks

def is_lie_triple_system(alg: LieAlgebraDef, m: Subspace, identities: bool = True) -> VerificationReport:
    """Closure [[m, m], m] in m plus the three triple-system identities on basis tuples."""
    _same_algebra(m, m)
    b = m.basis
    failures = []
    tp = {}
    for x, y, z in itertools.product(range(len(b)), repeat=3):
        t = triple(alg, b[x], b[y], b[z])
        tp[(x, y, z)] = t
        if not contains(m, t):
            failures.append(("closure", x, y, z))
    checked = len(tp)
    if identities and not failures:
        for x, y in itertools.product(range(len(b)), repeat=2):
            if not exact.is_zero(triple(alg, b[x], b[x], b[y])):
                failures.append(("alternating", x, y))
        for x, y, z in itertools.product(range(len(b)), repeat=3):
            s = exact.add(exact.add(tp[(x, y, z)], tp[(y, z, x)]), tp[(z, x, y)])
            if not exact.is_zero(s):
                failures.append(("cyclic", x, y, z))
        for x, y, u, v, w in itertools.product(range(len(b)), repeat=5):
            lhs = triple(alg, b[x], b[y], tp[(u, v, w)])
            rhs = exact.add(exact.add(triple(alg, tp[(x, y, u)], b[v], b[w]),
                                      triple(alg, b[u], tp[(x, y, v)], b[w])),
                            triple(alg, b[u], b[v], tp[(x, y, w)]))
            if lhs != rhs:
                failures.append(("derivation", x, y, u, v, w))
        checked += len(b) ** 2 + len(b) ** 3 + len(b) ** 5
    return exact_report(f"{alg.name}:{m.describe()}", "lie_triple_system", failures,
                        topic="triple systems", samples=checked)


def is_bol_algebra(alg: LieAlgebraDef, m: Subspace, h: Subspace) -> VerificationReport:
    """Five-term identity for the tangent Bol algebra (m, [[x,y]] = [x,y] projected to m along h)."""
    project = projection_onto(alg, m, h)
    context = f"{alg.name}:{m.describe()}|{h.describe()}"
    lts = is_lie_triple_system(alg, m, identities=False)
    if not lts.passed:
        return exact_report(context, "bol_algebra", ["not closed under the triple product"],
                            topic="triple systems", samples=lts.samples)
    b = m.basis
    r = range(len(b))
    proj = {(i, j): project(bracket(alg, b[i], b[j])) for i in r for j in r}

    def pb(x, y):
        return project(bracket(alg, x, y))

    failures = []
    for x, y, z, w in itertools.product(r, repeat=4):
        terms = [
            pb(triple(alg, b[x], b[y], b[z]), b[w]),
            exact.scale(-1, pb(triple(alg, b[x], b[y], b[w]), b[z])),
            triple(alg, b[z], b[w], proj[(x, y)]),
            exact.scale(-1, triple(alg, b[x], b[y], proj[(z, w)])),
            pb(proj[(x, y)], proj[(z, w)]),
        ]
        total = terms[0]
        for t in terms[1:]:
            total = exact.add(total, t)
        if not exact.is_zero(total):
            failures.append((x, y, z, w))
    return exact_report(context, "bol_algebra", failures, topic="triple systems",
                        samples=len(b) ** 4)


# ------------------------------------------------------------ serialization

def algebra_to_dict(alg: LieAlgebraDef) -> dict:
    return {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.basis_labels),
        "brackets": {f"{i},{j}": [exact.fmt(c) for c in v] for (i, j), v in sorted(alg.structure.items())},
        "killing_normalization": exact.fmt(alg.killing_normalization),
    }


def algebra_from_dict(data: Mapping, check: bool = True) -> LieAlgebraDef:
    try:
        labels = tuple(data["basis"])
        if int(data["dim"]) != len(labels):
            raise InputError("dim does not match the number of basis labels")
        structure = {}
        for key, value in data.get("brackets", {}).items():
            i, j = (int(s) for s in key.split(","))
            structure[(i, j)] = [exact.to_fraction(s) for s in value]
        alg = LieAlgebraDef(str(data["name"]), labels, structure,
                            exact.to_fraction(data.get("killing_normalization", "1")))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
        if isinstance(err, InputError):
            raise
        raise InputError(f"malformed algebra record: {err}") from err
    if check and not check_jacobi(alg).passed:
        raise InputError(f"algebra {alg.name} violates the Jacobi identity")
    return alg


def algebra_to_json(alg: LieAlgebraDef) -> str:
    return json.dumps(algebra_to_dict(alg), sort_keys=True)


def algebra_from_json(text: str, check: bool = True) -> LieAlgebraDef:
    return algebra_from_dict(json.loads(text), check=check)


def structure_from_brackets(labels: Sequence[str], table: Mapping) -> dict:
    """Build a structure map from label pairs, e.g. {("H", "T"): {"U": 2}}.

    Pairs may be given in either order; reversed pairs are negated.
    """
    n = len(labels)
    out: dict = {}
    for (a, b), rhs in table.items():
        i, j = labels.index(a), labels.index(b)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        v = [ZERO] * n
        for label, c in rhs.items():
            v[labels.index(label)] += sign * exact.to_fraction(c)
        if (i, j) in out and out[(i, j)] != tuple(v):
            raise InputError(f"conflicting entries for [{a},{b}]")
        out[(i, j)] = tuple(v)
    return out
