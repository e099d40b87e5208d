"""Exact dense linear algebra over Q or a number field.

Matrices are lists of rows.  Rational input goes through a fraction-free
(integer) Gauss-Jordan pass; everything else uses plain Gauss-Jordan.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .scalars import FieldElement


def _all_rational(rows) -> bool:
    return all(not isinstance(x, FieldElement) for row in rows for x in row)


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _rref_integer(rows, ncols):
    """Fraction-free Gauss-Jordan; returns (rows as Fractions, pivots)."""
    a = [r[:] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r]
        pc = piv[c]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                new = [pc * x - f * y for x, y in zip(row, piv)]
                g = 0
                for x in new:
                    if x:
                        g = math.gcd(g, x)
                        if g == 1:
                            break
                if g > 1:
                    new = [x // g for x in new]
                a[i] = new
        g = 0
        for x in a[r]:
            if x:
                g = math.gcd(g, x)
        if g > 1:
            a[r] = [x // g for x in a[r]]
        pivots.append(c)
        r += 1
    a = [row for row in a[:r]]
    out = []
    for row, c in zip(a, pivots):
        lead = row[c]
        out.append([Fraction(x, lead) for x in row])
    return out, pivots


def _rref_field(rows, ncols):
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [], []
    if _all_rational(rows):
        return _rref_integer(_integer_rows(rows), ncols)
    return _rref_field(rows, ncols)


def rank(rows) -> int:
    return len(rref(rows)[1])


def exact_kernel(rows, ncols: int | None = None):
    """Basis of the right kernel, one vector per free column.

    Pivots are taken left to right and each free variable in turn is set
    to 1 (others 0), so the output is canonical.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    one = Fraction(1)
    zero = Fraction(0)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a, b):
    """Unique solution of a x = b for square invertible a."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    red, pivots = rref(aug, n + 1)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def inverse(a):
    n = len(a)
    aug = [list(a[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a):
    n = len(a)
    m = [list(r) for r in a]
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out = out * m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def rank_mod_p(rows, p: int = 2147483647) -> int:
    """Rank of a rational matrix reduced mod p (a lower bound for the rank over Q).

    p must stay below 2^31 so that products of residues fit in int64.
    """
    if not rows:
        return 0
    a = np.array([[Fraction(x).numerator % p * pow(Fraction(x).denominator % p, -1, p) % p
                   for x in row] for row in rows], dtype=np.int64)
    nrows, ncols = a.shape
    rk = 0
    for c in range(ncols):
        nz = np.nonzero(a[rk:, c])[0]
        if not len(nz):
            continue
        piv = rk + nz[0]
        if piv != rk:
            a[[rk, piv]] = a[[piv, rk]]
        a[rk] = a[rk] * pow(int(a[rk, c]), -1, p) % p
        below = a[rk + 1:, c].copy()
        hit = np.nonzero(below)[0]
        if len(hit):
            a[rk + 1 + hit] = (a[rk + 1 + hit] - below[hit, None] * a[rk]) % p
        rk += 1
        if rk == nrows:
            break
    return rk
