"""Irreducible characters of a Coxeter group from its class algebra.

Burnside's method: the central characters are the common eigenvectors of
the class-multiplication matrices.  Eigenvectors are located in floating
point, every value is then rounded to an exact algebraic integer (in Z, or
in Z[2cos(pi/k)] using the Galois action g -> g^a), and the exact table is
certified against the class-multiplication constants and the orthogonality
relations.  Nothing inexact survives past certification.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import TheoremViolation
from .exact.scalars import to_rational


@dataclass(frozen=True)
class CharacterTable:
    labels: list
    values: list          # values[tau][class]
    class_sizes: list
    trivial: int
    sign: int

    @property
    def degrees(self):
        return [int(to_rational(row[0])) for row in self.values]

    def __len__(self):
        return len(self.values)

    def tensor_sign(self, tau: int) -> int:
        sgn = self.values[self.sign]
        target = [a * b for a, b in zip(self.values[tau], sgn)]
        for j, row in enumerate(self.values):
            if list(row) == target:
                return j
        raise TheoremViolation("tau x sign is not irreducible")


def class_constants(W):
    """a[i][j][k] = #{(x, y) in C_i x C_j : x y = g_k} for a fixed g_k in C_k."""
    r = len(W.classes)
    reps = [c[0] for c in W.classes]
    rep_pos = {g: k for k, g in enumerate(reps)}
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i, ci in enumerate(W.classes):
        for j, cj in enumerate(W.classes):
            row = a[i][j]
            for x in ci:
                mx = W.mult[x]
                for y in cj:
                    k = rep_pos.get(mx[y])
                    if k is not None:
                        row[k] += 1
    return a


def power_class(W, cls: int, a: int) -> int:
    g = W.classes[cls][0]
    h = 0
    for _ in range(a % (2 * W.order)):
        h = W.mult[h][g]
    return W.class_of[h]


def _numeric_table(W, consts):
    r = len(W.classes)
    sizes = np.array([len(c) for c in W.classes], dtype=float)
    mats = [np.array(consts[i], dtype=float) for i in range(r)]
    rng = np.random.RandomState(20020101)
    for _ in range(20):
        lam = rng.uniform(-1, 1, size=r)
        M = sum(l * m for l, m in zip(lam, mats))
        vals, vecs = np.linalg.eig(M)
        gaps = [abs(vals[i] - vals[j]) for i in range(r) for j in range(i)]
        if not gaps or min(gaps) > 1e-6:
            break
    else:
        raise TheoremViolation("could not separate central characters")
    rows = []
    for col in range(r):
        v = vecs[:, col]
        omega = v / v[0]
        norm = float(np.sum(np.abs(omega) ** 2 / sizes).real)
        deg = math.sqrt(W.order / norm)
        chi = (omega * deg / sizes).real
        rows.append(chi)
    return rows


def _recognize(W, row):
    if W.field is None:
        out = []
        for x in row:
            n = round(x)
            if abs(x - n) > 1e-6:
                raise TheoremViolation(f"non-integral character value {x} for {W.name}")
            out.append(Fraction(n))
        return out
    K = W.field
    k = int(W.name[3:-1])
    exps = [a for a in range(1, k) if math.gcd(a, 2 * k) == 1]
    V = np.array([[(2 * math.cos(math.pi * a / k)) ** i for i in range(K.degree)] for a in exps])
    out = []
    for c in range(len(W.classes)):
        vals = np.array([row[power_class(W, c, a)] for a in exps])
        coeffs = np.linalg.solve(V, vals)
        ints = [round(x) for x in coeffs]
        if max(abs(x - n) for x, n in zip(coeffs, ints)) > 1e-6:
            raise TheoremViolation(f"could not recognize character value in {K.label}")
        out.append(sum((K.gen ** i * n for i, n in enumerate(ints)), K(0)))
    return out


def _certify(W, table, consts):
    r = len(W.classes)
    sizes = [len(c) for c in W.classes]
    for chi in table:
        deg = chi[0]
        omega = [chi[j] * sizes[j] / deg for j in range(r)]
        for i in range(r):
            for j in range(r):
                lhs = omega[i] * omega[j]
                rhs = sum((consts[i][j][k] * omega[k] for k in range(r) if consts[i][j][k]), Fraction(0))
                if lhs != rhs:
                    raise TheoremViolation("central character fails class-sum relation")
    for a, chi in enumerate(table):
        for b, psi in enumerate(table):
            ip = sum((s * x * y for s, x, y in zip(sizes, chi, psi)), Fraction(0))
            if ip != (W.order if a == b else 0):
                raise TheoremViolation("character orthogonality fails")
    if sum(int(to_rational(chi[0])) ** 2 for chi in table) != W.order:
        raise TheoremViolation("sum of squared degrees differs from |W|")


def character_table(W) -> CharacterTable:
    consts = class_constants(W)
    rows = _numeric_table(W, consts)
    exact = [_recognize(W, row) for row in rows]

    def key(row):
        return (float(row[0]), [-float(x) for x in row])

    exact.sort(key=key)
    _certify(W, exact, consts)
    sign_row = list(W.sign_values)
    trivial = next(i for i, row in enumerate(exact) if all(x == 1 for x in row))
    sign = next(i for i, row in enumerate(exact) if list(row) == sign_row)
    labels = []
    for i in range(len(exact)):
        if i == trivial:
            labels.append("triv")
        elif i == sign:
            labels.append("sign")
        else:
            labels.append(f"chi{i}")
    return CharacterTable(labels=labels, values=[tuple(r) for r in exact],
                          class_sizes=[len(c) for c in W.classes], trivial=trivial, sign=sign)


def character_table_of(W) -> CharacterTable:
    return W.character_table
