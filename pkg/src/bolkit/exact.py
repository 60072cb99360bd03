"""Exact rational linear algebra on small dense matrices.

Vectors are tuples of ``Fraction``; matrices are tuples of row tuples.
Everything here is zero-tolerance: a pivot is either exactly zero or not.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple
Mat = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and "p/q" strings. Floats are rejected to keep checks exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact scalar")


def vec(values: Iterable) -> Vec:
    return tuple(to_fraction(v) for v in values)


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Vec) -> Vec:
    return tuple(c * a for a in x)


def dot(x: Vec, y: Vec) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), ZERO)


def combine(coeffs: Sequence, vectors: Sequence[Vec]) -> Vec:
    """Linear combination sum_i coeffs[i] * vectors[i]."""
    n = len(vectors[0])
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def is_zero(x: Vec) -> bool:
    return not any(x)


def matmul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def matvec(a: Mat, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in a)


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def trace(a: Mat) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def rref(rows: Sequence[Vec]) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form; zero rows dropped. Returns (rows, pivot columns)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [a / lead for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Vec]) -> int:
    return len(rref(rows)[0])


def nullspace(a: Sequence[Vec]) -> list[Vec]:
    """Basis of {x : a x = 0}."""
    if not a:
        raise ValueError("nullspace of an empty matrix needs a column count")
    ncols = len(a[0])
    red, piv = rref(a)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Vec], b: Vec) -> Vec | None:
    """One solution of a x = b, or None when inconsistent."""
    ncols = len(a[0])
    aug = [tuple(row) + (rhs,) for row, rhs in zip(a, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return tuple(x)


def coordinates(basis: Sequence[Vec], v: Vec) -> Vec | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span."""
    if not basis:
        return () if is_zero(v) else None
    return solve(transpose(tuple(basis)), v)


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [tuple(row) + unit(n, i) for i, row in enumerate(a)]
    red, piv = rref(aug)
    if tuple(piv[:n]) != tuple(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def det(a: Mat) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [list(r) for r in a]
    n = len(m)
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def leading_minors(a: Mat) -> list[Fraction]:
    return [det(tuple(tuple(row[:k]) for row in a[:k])) for k in range(1, len(a) + 1)]


def charpoly(a: Mat) -> list[Fraction]:
    """Monic characteristic polynomial coefficients, highest degree first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [ONE]
    m = tuple(zeros(n) for _ in range(n))
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        am = matmul(a, m)
        m = tuple(
            tuple(am[i][j] + (coeffs[-1] if i == j else ZERO) for j in range(n))
            for i in range(n)
        )
        c = -trace(matmul(a, m)) / k
        coeffs.append(c)
    return coeffs


def inertia(gram: Mat) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational form, via symmetric elimination."""
    m = [list(r) for r in gram]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            # all diagonal entries vanish: look for an off-diagonal pair to mix in
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace basis vector i by e_i + e_j, which has value 2 m_ij
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f:
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
        for i in active:
            m[i][piv] = ZERO
            m[piv][i] = ZERO
    return pos, neg, n - pos - neg


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
