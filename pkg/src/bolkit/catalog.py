"""Built-in algebras, triple systems, stabilizers and Bol-complement families.

Every entry is validated the first time the catalog is built: algebras
by the Jacobi identity, triple systems by exact closure, stabilizers by
being subalgebras without nonzero ideals, families by sampling rational
parameter points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Mapping, Sequence

from . import exact
from .exact import Vec
from .lie_core import (InputError, LieAlgebraDef, Subspace, algebra_from_dict, algebra_to_dict,
                       check_jacobi, contains_nonzero_ideal, direct_sum_check,
                       generated_subalgebra, is_lie_triple_system, is_subalgebra, span,
                       structure_from_brackets)

F = Fraction
HALF = F(1, 2)


class RepresentationError(ValueError):
    """Matrices that are not closed under commutators, or linearly dependent."""


class DomainError(ValueError):
    """Family parameters outside their admissible domain."""


class LookupError_(KeyError):
    """Unknown catalog id."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown catalog id"


# ------------------------------------------------------------ matrices

def _mat(rows) -> tuple:
    return tuple(tuple(exact.to_fraction(x) for x in row) for row in rows)


def commutator(a, b) -> tuple:
    ab = exact.matmul(a, b)
    ba = exact.matmul(b, a)
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(ab, ba))


def _flat(m) -> Vec:
    return tuple(x for row in m for x in row)


def block_diag(*blocks) -> tuple:
    n = sum(len(b) for b in blocks)
    out = [[F(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = exact.to_fraction(x)
        off += len(b)
    return _mat(out)


def complex_to_real(re_part, im_part) -> tuple:
    """Real 2n x 2n embedding of the complex matrix re + i*im (z -> [[x, -y], [y, x]] blocks)."""
    n = len(re_part)
    out = [[F(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            x = exact.to_fraction(re_part[i][j])
            y = exact.to_fraction(im_part[i][j])
            out[2 * i][2 * j] = x
            out[2 * i][2 * j + 1] = -y
            out[2 * i + 1][2 * j] = y
            out[2 * i + 1][2 * j + 1] = x
    return _mat(out)


def semidirect_pair(x, y) -> tuple:
    """4x4 block matrix [[x, y], [0, x]] realizing the pair bracket ([x1,x2], [x1,y2]-[x2,y1])."""
    z = [[0, 0], [0, 0]]
    top = [list(x[0]) + list(y[0]), list(x[1]) + list(y[1])]
    bottom = [list(z[0]) + list(x[0]), list(z[1]) + list(x[1])]
    return _mat(top + bottom)


def derive_structure_constants(matrices: Sequence, name: str = "derived",
                               labels: Sequence[str] | None = None,
                               killing_normalization=1) -> LieAlgebraDef:
    """Structure constants of the span of ``matrices`` under the commutator bracket."""
    mats = [_mat(m) for m in matrices]
    if not mats:
        raise RepresentationError("need at least one matrix")
    flats = [_flat(m) for m in mats]
    n = len(mats)
    if labels is None:
        labels = tuple(f"e{i + 1}" for i in range(n))
    nonzero = [f for f in flats if not exact.is_zero(f)]
    if len(nonzero) == n and exact.rank(flats) < n:
        raise RepresentationError("matrices are linearly dependent")
    structure = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = _flat(commutator(mats[i], mats[j]))
            if exact.is_zero(c):
                continue
            coords = exact.coordinates(flats, c)
            if coords is None:
                raise RepresentationError(f"commutator of matrices {i} and {j} leaves the span")
            structure[(i, j)] = coords
    return LieAlgebraDef(name, tuple(labels), structure, killing_normalization)


# -------------------------------------------------- named 2x2 matrices

H2 = ((1, 0), (0, -1))
T2 = ((0, 1), (1, 0))
U2 = ((0, 1), (-1, 0))
Z2 = ((0, 0), (0, 0))


def _scaled(c, m):
    return tuple(tuple(exact.to_fraction(c) * exact.to_fraction(x) for x in row) for row in m)


def b1_matrices() -> list:
    """Real 4x4 images of H, T, U, iH, iT, iU."""
    return [complex_to_real(m, Z2) for m in (H2, T2, U2)] + \
           [complex_to_real(Z2, m) for m in (H2, T2, U2)]


def b2_matrices() -> list:
    """e1 central; e2, e3, e4 the halved H, T, U (the scale the bracket table uses)."""
    central = ((0, 0, 0), (0, 0, 0), (0, 0, 1))
    sl = [block_diag(_scaled(HALF, m), ((0,),)) for m in (H2, T2, U2)]
    return [_mat(central)] + sl


def b3_matrices() -> list:
    """The six 4x4 matrices of the rotation-translation basis."""
    def m(entries):
        out = [[0] * 4 for _ in range(4)]
        for (i, j), v in entries.items():
            out[i][j] = v
        return _mat(out)

    return [
        m({(0, 2): -1}),
        m({(2, 3): -1, (3, 2): 1}),
        m({(1, 2): 1, (2, 1): -1}),
        m({(1, 3): 1, (3, 1): -1}),
        m({(0, 1): 1}),
        m({(0, 3): 1}),
    ]


def b4_pair_basis() -> list:
    """(X, Y) pairs of the semidirect basis, with the factor 1/2 the bracket table requires."""
    h = lambda m: _scaled(HALF, m)  # noqa: E731
    return [
        (Z2, h(_scaled(-1, U2))),
        (h(H2), Z2),
        (h(T2), Z2),
        (h(U2), Z2),
        (Z2, h(_scaled(-1, H2))),
        (Z2, h(T2)),
    ]


def b4_matrices() -> list:
    return [semidirect_pair(x, y) for x, y in b4_pair_basis()]


def so3_plus_r_matrices() -> list:
    lx = ((0, 0, 0), (0, 0, -1), (0, 1, 0))
    ly = ((0, 0, 1), (0, 0, 0), (-1, 0, 0))
    lz = ((0, -1, 0), (1, 0, 0), (0, 0, 0))
    central = block_diag(((0, 0, 0), (0, 0, 0), (0, 0, 0)), ((1,),))
    return [central] + [block_diag(m, ((0,),)) for m in (lx, ly, lz)]


def case7_matrices() -> list:
    """Affine 3x3 matrices of sl2 acting naturally on the plane.

    e2, e4 are hyperbolic and e3 elliptic; e1 is the translation by (1, -1)
    and e5 := [e1, e2].
    """
    def affine(x, v):
        return _mat([[x[0][0], x[0][1], v[0]], [x[1][0], x[1][1], v[1]], [0, 0, 0]])

    e1 = affine(Z2, (1, -1))
    e2 = affine(_scaled(HALF, H2), (0, 0))
    e3 = affine(_scaled(HALF, U2), (0, 0))
    e4 = affine(_scaled(HALF, T2), (0, 0))
    e5 = commutator(e1, e2)
    return [e1, e2, e3, e4, e5]


def sl2_pair_matrices() -> list:
    return [block_diag(m, Z2) for m in (H2, T2, U2)] + [block_diag(Z2, m) for m in (H2, T2, U2)]


# --------------------------------------------------------- algebras

B1_LABELS = ("H", "T", "U", "iH", "iT", "iU")
E4 = ("e1", "e2", "e3", "e4")
E5 = ("e1", "e2", "e3", "e4", "e5")
E6 = ("e1", "e2", "e3", "e4", "e5", "e6")
PAIR_LABELS = ("H1", "T1", "U1", "H2", "T2", "U2")


def _b1() -> LieAlgebraDef:
    real = {("H", "T"): {"U": 2}, ("H", "U"): {"T": 2}, ("U", "T"): {"H": 2}}
    table = {}
    # complex bilinearity: [iX, Y] = i[X, Y], [iX, iY] = -[X, Y]
    for (x, y), rhs in real.items():
        table[(x, y)] = rhs
        table[("i" + x, y)] = {"i" + k: v for k, v in rhs.items()}
        table[(x, "i" + y)] = {"i" + k: v for k, v in rhs.items()}
        table[("i" + x, "i" + y)] = {k: -v for k, v in rhs.items()}
    return LieAlgebraDef("B1", B1_LABELS, structure_from_brackets(B1_LABELS, table), F(1, 16))


def _b2() -> LieAlgebraDef:
    table = {("e2", "e3"): {"e4": 1}, ("e4", "e2"): {"e3": -1}, ("e4", "e3"): {"e2": 1}}
    return LieAlgebraDef("B2", E4, structure_from_brackets(E4, table), F(1, 2))


# frozen output of derive_structure_constants(b3_matrices()); a test regenerates it
B3_TABLE = {
    ("e1", "e2"): {"e6": 1}, ("e1", "e3"): {"e5": 1}, ("e2", "e3"): {"e4": 1},
    ("e2", "e4"): {"e3": -1}, ("e2", "e6"): {"e1": 1}, ("e3", "e4"): {"e2": 1},
    ("e3", "e5"): {"e1": 1}, ("e4", "e5"): {"e6": -1}, ("e4", "e6"): {"e5": 1},
}


def _b3() -> LieAlgebraDef:
    return LieAlgebraDef("B3", E6, structure_from_brackets(E6, B3_TABLE), F(1, 4))


B4_TABLE = {
    ("e1", "e2"): {"e6": 1}, ("e1", "e3"): {"e5": 1}, ("e2", "e3"): {"e4": 1},
    ("e5", "e4"): {"e6": -1}, ("e2", "e6"): {"e1": -1}, ("e3", "e5"): {"e1": -1},
    ("e2", "e4"): {"e3": 1}, ("e3", "e4"): {"e2": -1}, ("e6", "e4"): {"e5": 1},
}


def _b4() -> LieAlgebraDef:
    return LieAlgebraDef("B4", E6, structure_from_brackets(E6, B4_TABLE), F(1, 4))


def _case51() -> LieAlgebraDef:
    return derive_structure_constants(so3_plus_r_matrices(), "case5.1", E4, F(1, 2))


def _case7() -> LieAlgebraDef:
    return derive_structure_constants(case7_matrices(), "case7", E5, F(2, 5))


def _sl2_pair() -> LieAlgebraDef:
    return derive_structure_constants(sl2_pair_matrices(), "sl2xsl2", PAIR_LABELS, F(1, 8))


# ------------------------------------------------------------ entries

@dataclass(frozen=True)
class FamilyParams:
    """Named exact parameters of a family, checked against the family's domain."""

    values: Mapping[str, Fraction]

    @classmethod
    def of(cls, **kw) -> "FamilyParams":
        return cls({k: exact.to_fraction(v) for k, v in kw.items()})

    def __getitem__(self, key):
        return self.values[key]


@dataclass(frozen=True)
class BolFamily:
    id: str
    algebra_id: str
    stabilizer_id: str
    params: tuple
    builder: Callable
    domain: Callable
    domain_text: str
    samples: tuple

    def __call__(self, **kw) -> Subspace:
        missing = set(self.params) - set(kw)
        extra = set(kw) - set(self.params)
        if missing or extra:
            raise InputError(f"{self.id} takes parameters {self.params}")
        p = {k: exact.to_fraction(v) for k, v in kw.items()}
        if not self.domain(p):
            raise DomainError(f"{self.id}: parameters {p} violate {self.domain_text}")
        return self.builder(p)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    payload: Any
    topic: str
    description: str = ""
    algebra_id: str | None = None


def _sub(alg: LieAlgebraDef, role: str, *vectors) -> Subspace:
    return span(alg, [alg.element(v) if isinstance(v, Mapping) else alg.e(v) for v in vectors], role)



def _family_defs(algs) -> dict:
    b1, b4 = algs["B1"], algs["B4"]

    def build_ma(p):
        a = p["a"]
        return _sub(b1, "complement", {"T": 1, "U": a}, {"iU": 1, "iT": a}, "H")

    def build_md(p):
        d = p["d"]
        return _sub(b1, "complement", {"U": 1, "T": 1}, {"iH": d, "iU": 1, "iT": 1}, {"H": 1, "U": d})

    def build_mbcc(p):
        b3, c3, c2 = p["b3"], p["c3"], p["c2"]
        return _sub(b4, "complement",
                    {"e1": 1, "e6": -c3, "e5": b3},
                    {"e2": 1, "e6": c2, "e4": b3},
                    {"e3": 1, "e5": c2, "e4": c3})

    return {
        "m_a": BolFamily("m_a", "B1", "h_4.1", ("a",), build_ma,
                         lambda p: p["a"] not in (1, -1), "a not in {1, -1}",
                         tuple({"a": F(x)} for x in ("0", "1/3", "-1/2", "2", "7/5"))),
        "m_d": BolFamily("m_d", "B1", "h_4.1", ("d",), build_md,
                         lambda p: p["d"] != 0, "d != 0",
                         tuple({"d": F(x)} for x in ("1/2", "1", "2", "-3/4", "5"))),
        "m_b3c3c2": BolFamily("m_b3c3c2", "B4", "h_sec7_f", ("b3", "c3", "c2"), build_mbcc,
                              lambda p: p["b3"] ** 2 + p["c3"] ** 2 != 1, "b3^2 + c3^2 != 1",
                              tuple({"b3": F(b), "c3": F(c), "c2": F(k)} for b, c, k in
                                    (("0", "0", "0"), ("3/10", "2/5", "1"), ("1/2", "0", "-2"),
                                     ("2", "0", "0"), ("-1/3", "5/4", "1/7")))),
    }


def _subspace_defs(algs) -> list:
    b1, b2, b3, b4 = algs["B1"], algs["B2"], algs["B3"], algs["B4"]
    c51, c7, pr = algs["case5.1"], algs["case7"], algs["sl2xsl2"]
    lts, stab = "triple_system", "stabilizer"
    out = [
        ("m_4.1", lts, _sub(b1, lts, "H", "T", "iU"), "sl2(C) symmetric spaces", "hyperbolic space triple system"),
        ("m_4.2", lts, _sub(b1, lts, "H", "iT", "U"), "sl2(C) symmetric spaces", "triple system with [m,m] = sl2(R)"),
        ("h_4.1", stab, _sub(b1, stab, "iH", "iT", "U"), "sl2(C) symmetric spaces", "so3 stabilizer"),
        ("h_4.2", stab, _sub(b1, stab, "iH", "T", "iU"), "sl2(C) symmetric spaces", "sl2(R) stabilizer"),
        ("m_5.1", lts, _sub(c51, lts, "e1", "e2", "e3"), "triple systems with centre", "so3 + R system"),
        ("m_5.2", lts, _sub(b2, lts, "e1", "e2", "e4"), "triple systems with centre", "sl2(R) + R, elliptic e4"),
        ("m_5.3", lts, _sub(b2, lts, "e1", "e2", "e3"), "triple systems with centre", "sl2(R) + R, Scheerer tangent space"),
        ("m_6.1", lts, _sub(b3, lts, "e1", "e2", "e3"), "semidirect triple systems", "euclidean motions"),
        ("h_6.1", stab, _sub(b3, stab, "e2", "e3", "e4"), "semidirect triple systems", "rotation stabilizer"),
        ("m_6.2", lts, _sub(b4, lts, "e2", "e4", "e6"), "semidirect triple systems", "sl2 x| R^3, system 6.2"),
        ("m_6.3", lts, _sub(b4, lts, "e1", "e2", "e3"), "semidirect triple systems", "sl2 x| R^3, system 6.3"),
        ("m_7", lts, _sub(c7, lts, "e1", "e2", "e3"), "affine plane triple system", "sl2 x| R^2"),
        ("m_product", lts, _sub(pr, lts, {"H1": 1, "H2": -1}, {"T1": 1, "T2": -1}, {"U1": 1, "U2": -1}),
         "product of two sl2", "antidiagonal {(X, -X)}"),
        ("h1_product", stab, _sub(pr, stab, {"H1": 1, "H2": 1}, {"T1": 1, "T2": 1}, {"U1": 1, "U2": 1}),
         "product of two sl2", "diagonal {(X, X)}"),
        ("h2_product", stab, _sub(pr, stab, {"H1": 1, "H2": 1}, {"U1": 1, "T1": 1}, {"U2": 1, "T2": 1}),
         "product of two sl2", "pair of Borel-type subalgebras"),
    ]
    for k in (0, 1):
        suffix = "" if k == 0 else "_k1"
        out += [
            (f"h1_sec5{suffix}", stab, _sub(b2, stab, {"e2": 1, "e1": k}), "one-dimensional stabilizers", f"<e2 + {k} e1>"),
            (f"h2_sec5{suffix}", stab, _sub(b2, stab, {"e3": 1, "e4": 1, "e1": k}), "one-dimensional stabilizers", f"<e3 + e4 + {k} e1>"),
            (f"h3_sec5{suffix}", stab, _sub(b2, stab, {"e4": 1, "e1": k}), "one-dimensional stabilizers", f"<e4 + {k} e1>"),
        ]
    out += [
        ("h_sec7_a", stab, _sub(b4, stab, "e2", "e5", {"e1": 1, "e6": 1}), "semidirect stabilizers", "list a)"),
        ("h_sec7_b", stab, h_sec7_b(1, b4), "semidirect stabilizers", "list b) with k = 1"),
        ("h_sec7_c", stab, _sub(b4, stab, {"e3": 1, "e4": 1}, "e5", {"e1": 1, "e6": -1}), "semidirect stabilizers", "list c)"),
        ("h_sec7_d", stab, _sub(b4, stab, "e2", {"e3": 1, "e4": 1}, {"e1": 1, "e6": -1}), "semidirect stabilizers", "list d)"),
        ("h_sec7_e", stab, _sub(b4, stab, "e2", "e3", "e4"), "semidirect stabilizers", "list e)"),
        ("h_sec7_f", stab, _sub(b4, stab, "e4", "e5", "e6"), "semidirect stabilizers", "list f), rotations plus symmetric translations"),
    ]
    return out


def h_sec7_b(k, b4: LieAlgebraDef | None = None) -> Subspace:
    """Stabilizer <e2 + k e5, e1, e6> of the semidirect list, for any real k."""
    b4 = b4 or get_algebra("B4")
    return _sub(b4, "stabilizer", {"e2": 1, "e5": exact.to_fraction(k)}, "e1", "e6")


def stabilizer_sec5(index: int, k) -> Subspace:
    """The one-dimensional stabilizers h1, h2, h3 of sl2(R) + R for any real k."""
    b2 = get_algebra("B2")
    k = exact.to_fraction(k)
    gens = {1: {"e2": 1}, 2: {"e3": 1, "e4": 1}, 3: {"e4": 1}}
    if index not in gens:
        raise InputError("index must be 1, 2 or 3")
    return _sub(b2, "stabilizer", dict(gens[index], e1=k))


# ------------------------------------------------------- ansatz families

def ansatz_psl2c(params: Sequence) -> Subspace:
    """<T + aU + b iT + c iH, iU + dU + e iT + f iH, H + gU + h iT + k iH>."""
    a, b, c, d, e, f, g, h, k = (exact.to_fraction(p) for p in params)
    alg = get_algebra("B1")
    return _sub(alg, "complement",
                {"T": 1, "U": a, "iT": b, "iH": c},
                {"iU": 1, "U": d, "iT": e, "iH": f},
                {"H": 1, "U": g, "iT": h, "iH": k})


def ansatz_semidirect(params: Sequence) -> Subspace:
    """<e1 + a1 e4 + a2 e5 + a3 e6, e2 + b1 e4 + ..., e3 + c1 e4 + ...>."""
    a1, a2, a3, b1, b2, b3, c1, c2, c3 = (exact.to_fraction(p) for p in params)
    alg = get_algebra("B4")
    return _sub(alg, "complement",
                {"e1": 1, "e4": a1, "e5": a2, "e6": a3},
                {"e2": 1, "e4": b1, "e5": b2, "e6": b3},
                {"e3": 1, "e4": c1, "e5": c2, "e6": c3})


def ansatz_point_m_a(a) -> tuple:
    a = exact.to_fraction(a)
    return (a, 0, 0, 0, a, 0, 0, 0, 0)


def ansatz_point_m_d(d) -> tuple:
    d = exact.to_fraction(d)
    return (1, 0, 0, 0, 1, d, d, 0, 0)


def ansatz_point_mbcc(b3, c3, c2) -> tuple:
    b3, c3, c2 = (exact.to_fraction(x) for x in (b3, c3, c2))
    return (0, b3, -c3, b3, 0, c2, c3, c2, 0)


def on_semidirect_slice(params: Sequence) -> bool:
    """The isomorphism slice: a1 = b2 = c3 = 0, a2 = b1, a3 = -c1, b3 = c2, with b1^2 + c1^2 != 1."""
    a1, a2, a3, b1, b2, b3, c1, c2, c3 = (exact.to_fraction(p) for p in params)
    return (a1 == 0 and b2 == 0 and c3 == 0 and a2 == b1 and a3 == -c1 and b3 == c2
            and b1 ** 2 + c1 ** 2 != 1)


# ------------------------------------------------------------ registry

@dataclass(frozen=True)
class Catalog:
    entries: Mapping[str, CatalogEntry] = field(default_factory=dict)

    def get(self, entry_id: str) -> CatalogEntry:
        try:
            return self.entries[entry_id]
        except KeyError:
            raise LookupError_(f"unknown catalog id {entry_id!r}") from None

    def list(self) -> list[CatalogEntry]:
        return [self.entries[k] for k in self.entries]

    def with_file(self, path) -> "Catalog":
        """A new catalog extended by a JSON file of custom algebras and subspaces."""
        with open(path) as fh:
            data = json.load(fh)
        return self.with_records(data)

    def with_records(self, data) -> "Catalog":
        if isinstance(data, Mapping) and "brackets" in data:
            data = {"algebras": [data]}
        if not isinstance(data, Mapping):
            raise InputError("custom catalog must be a JSON object")
        entries = dict(self.entries)
        for rec in data.get("algebras", []):
            alg = algebra_from_dict(rec, check=True)
            entries[alg.name] = CatalogEntry(alg.name, "algebra", alg, rec.get("topic", "custom"),
                                             "custom algebra", alg.name)
        for rec in data.get("subspaces", []):
            try:
                alg_entry = entries[rec["algebra"]]
                alg = alg_entry.payload
                kind = rec.get("kind", "triple_system")
                sub = span(alg, [alg.vector(v) for v in rec["basis"]], kind)
                entry_id = rec["id"]
            except KeyError as err:
                raise InputError(f"malformed subspace record: missing {err}") from None
            _validate_subspace(entry_id, kind, alg, sub)
            entries[entry_id] = CatalogEntry(entry_id, kind, sub, rec.get("topic", "custom"),
                                             "custom subspace", alg.name)
        return Catalog(entries)


class ValidationError(RuntimeError):
    pass


def _validate_subspace(entry_id, kind, alg, sub):
    if kind == "triple_system" and not is_lie_triple_system(alg, sub).passed:
        raise ValidationError(f"{entry_id} is not a Lie triple system")
    if kind == "stabilizer":
        if not is_subalgebra(alg, sub):
            raise ValidationError(f"{entry_id} is not a subalgebra")
        if contains_nonzero_ideal(alg, sub):
            raise ValidationError(f"{entry_id} contains a nonzero ideal")


def validate_family(fam: BolFamily, algs: Mapping, stab: Subspace) -> None:
    alg = algs[fam.algebra_id]
    for point in fam.samples:
        m = fam(**point)
        if not direct_sum_check(alg, m, stab):
            raise ValidationError(f"{fam.id}{point} is not a complement of {fam.stabilizer_id}")
        if not is_lie_triple_system(alg, m, identities=False).passed:
            raise ValidationError(f"{fam.id}{point} is not closed under the triple product")
        if generated_subalgebra(alg, m).rank != alg.dim:
            raise ValidationError(f"{fam.id}{point} does not generate {alg.name}")


@lru_cache(maxsize=None)
def _algebras() -> dict:
    algs = {"B1": _b1(), "B2": _b2(), "B3": _b3(), "B4": _b4(), "case5.1": _case51(),
            "case7": _case7(), "sl2xsl2": _sl2_pair()}
    for alg in algs.values():
        if not check_jacobi(alg).passed:
            raise ValidationError(f"{alg.name} violates the Jacobi identity")
    return algs


@lru_cache(maxsize=None)
def FAMILIES() -> dict:  # noqa: N802 - reads as a constant table
    return _family_defs(_algebras())


ALGEBRA_TOPICS = {
    "B1": ("sl2(C) as a real algebra", "basis H, T, U, iH, iT, iU"),
    "B2": ("sl2(R) + R", "e1 central, e2, e3, e4 spanning sl2(R)"),
    "B3": ("so3 x| R^3", "derived from the 4x4 rotation-translation matrices"),
    "B4": ("sl2(R) x| R^3", "adjoint semidirect product"),
    "case5.1": ("so3 + R", "e1 central"),
    "case7": ("sl2(R) x| R^2", "affine plane algebra"),
    "sl2xsl2": ("sl2(R) + sl2(R)", "product of two copies"),
}

MATRIX_REPS = {
    "B1_matrices": ("B1", b1_matrices),
    "B2_matrices": ("B2", b2_matrices),
    "B3_matrices": ("B3", b3_matrices),
    "B4_pairs": ("B4", b4_matrices),
    "case5.1_matrices": ("case5.1", so3_plus_r_matrices),
    "case7_matrices": ("case7", case7_matrices),
    "sl2xsl2_matrices": ("sl2xsl2", sl2_pair_matrices),
}


@lru_cache(maxsize=None)
def default_catalog() -> Catalog:
    algs = _algebras()
    entries: dict = {}
    for name, alg in algs.items():
        topic, desc = ALGEBRA_TOPICS[name]
        entries[name] = CatalogEntry(name, "algebra", alg, topic, desc, name)
    for entry_id, kind, sub, topic, desc in _subspace_defs(algs):
        _validate_subspace(entry_id, kind, sub.algebra, sub)
        entries[entry_id] = CatalogEntry(entry_id, kind, sub, topic, desc, sub.algebra_name)
    for fam in FAMILIES().values():
        validate_family(fam, algs, entries[fam.stabilizer_id].payload)
        entries[fam.id] = CatalogEntry(fam.id, "bol_family", fam, "Bol complement families",
                                       f"parameters {fam.params}; {fam.domain_text}", fam.algebra_id)
    for rep_id, (alg_id, builder) in MATRIX_REPS.items():
        derived = derive_structure_constants(builder(), alg_id, algs[alg_id].basis_labels,
                                             algs[alg_id].killing_normalization)
        if derived.structure != algs[alg_id].structure:
            raise ValidationError(f"{rep_id} does not reproduce the {alg_id} bracket table")
        entries[rep_id] = CatalogEntry(rep_id, "matrix_rep", builder(), "matrix realizations",
                                       f"matrices realizing {alg_id}", alg_id)
    return Catalog(entries)


def _resolve(catalog: Catalog | None) -> Catalog:
    return catalog if catalog is not None else default_catalog()


def get_entry(entry_id: str, catalog: Catalog | None = None) -> CatalogEntry:
    return _resolve(catalog).get(entry_id)


def get_algebra(entry_id: str, catalog: Catalog | None = None) -> LieAlgebraDef:
    if catalog is None and entry_id in _algebras():
        return _algebras()[entry_id]
    entry = get_entry(entry_id, catalog)
    if entry.kind != "algebra":
        raise LookupError_(f"{entry_id!r} is a {entry.kind}, not an algebra")
    return entry.payload


def get_subspace(entry_id: str, catalog: Catalog | None = None) -> Subspace:
    entry = get_entry(entry_id, catalog)
    if entry.kind not in ("triple_system", "stabilizer"):
        raise LookupError_(f"{entry_id!r} is a {entry.kind}, not a subspace")
    return entry.payload


def list_entries(catalog: Catalog | None = None) -> list[CatalogEntry]:
    return _resolve(catalog).list()


def bol_family(family_id: str, params: FamilyParams | Mapping | None = None, **kw) -> Subspace:
    fams = FAMILIES()
    if family_id not in fams:
        raise LookupError_(f"unknown family {family_id!r}")
    values = dict(params.values if isinstance(params, FamilyParams) else (params or {}), **kw)
    return fams[family_id](**values)


def family_stabilizer(family_id: str) -> Subspace:
    return get_subspace(FAMILIES()[family_id].stabilizer_id)


def entry_to_dict(entry: CatalogEntry) -> dict:
    out = {"id": entry.id, "kind": entry.kind, "paper_section": entry.topic,
           "description": entry.description, "algebra": entry.algebra_id}
    if entry.kind == "algebra":
        out["definition"] = algebra_to_dict(entry.payload)
    elif entry.kind in ("triple_system", "stabilizer"):
        out["basis"] = [[exact.fmt(c) for c in v] for v in entry.payload.basis]
    elif entry.kind == "bol_family":
        out["params"] = list(entry.payload.params)
        out["domain"] = entry.payload.domain_text
    elif entry.kind == "matrix_rep":
        out["matrices"] = [[[exact.fmt(x) for x in row] for row in m] for m in entry.payload]
    return out


def export_catalog(catalog: Catalog | None = None) -> list[dict]:
    return [entry_to_dict(e) for e in list_entries(catalog)]
