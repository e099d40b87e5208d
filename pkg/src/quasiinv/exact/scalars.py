"""Exact scalars: rationals and elements of a real number field Q(theta).

Rationals are plain :class:`fractions.Fraction` values.  Non-crystallographic
dihedral groups need ``theta = 2cos(pi/k)``; their entries are
:class:`FieldElement` instances which interoperate with ``int`` and
``Fraction`` through the usual operator protocol.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

QQ = Fraction

_RATIONAL_TYPES = (int, Fraction)


def is_rational(x) -> bool:
    if isinstance(x, _RATIONAL_TYPES):
        return True
    if isinstance(x, FieldElement):
        return x.is_rational()
    return False


def to_rational(x) -> Fraction:
    if isinstance(x, _RATIONAL_TYPES):
        return Fraction(x)
    if isinstance(x, FieldElement) and x.is_rational():
        return x.coeffs[0]
    raise ValueError(f"{x} is not rational")


def as_scalar(x):
    """Coerce ints, strings like '3/2' and rational-valued field elements."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, FieldElement):
        return x
    raise TypeError(f"cannot use {x!r} as an exact scalar")


def scalar_str(x) -> str:
    if isinstance(x, _RATIONAL_TYPES):
        return str(Fraction(x))
    return str(x)


def to_float(x) -> float:
    if isinstance(x, FieldElement):
        return x.to_float()
    return float(x)


# --------------------------------------------------------------------------
# univariate integer helpers used to build minimal polynomials


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def real_cyclotomic_minpoly(n: int) -> tuple[int, ...]:
    """Minimal polynomial of 2cos(2pi/n), low degree first (n >= 3)."""
    phi = list(cyclotomic(n))
    h = (len(phi) - 1) // 2
    # z^{-h} Phi_n(z) = c_h + sum_{j>=1} c_{h+j} (z^j + z^-j); z^j + z^-j = D_j(t)
    dick = [[2], [0, 1]]
    for _ in range(2, h + 1):
        prev, cur = dick[-2], dick[-1]
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        dick.append(nxt)
    out = [0] * (h + 1)
    out[0] += phi[h]
    for j in range(1, h + 1):
        for i, c in enumerate(dick[j]):
            out[i] += phi[h + j] * c
    return tuple(out)


class NumberField:
    """Q[t]/(f) with a chosen real embedding of the generator."""

    def __init__(self, minpoly, value: float, name: str = "θ", label: str = ""):
        coeffs = [Fraction(c) for c in minpoly]
        lead = coeffs[-1]
        self.minpoly = tuple(c / lead for c in coeffs)
        self.degree = len(self.minpoly) - 1
        self.value = value
        self.name = name
        self.label = label
        if abs(sum(float(c) * value**i for i, c in enumerate(self.minpoly))) > 1e-9:
            raise ValueError("embedding value is not a root of the minimal polynomial")
        # t^(d+i) reduced to the power basis, for i = 0..d-2
        d = self.degree
        red = []
        cur = [-c for c in self.minpoly[:-1]]
        for _ in range(max(d - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.minpoly[i]
        self._reduction = red

    def __repr__(self):
        return f"NumberField({self.label or self.minpoly})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly and \
            abs(self.value - other.value) < 1e-12

    def __hash__(self):
        return hash(self.minpoly)

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        return FieldElement(self, (Fraction(x),) + (Fraction(0),) * (self.degree - 1))

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self(-self.minpoly[0])
        return FieldElement(self, tuple(Fraction(int(i == 1)) for i in range(self.degree)))

    def conjugate_values(self) -> list[float]:
        import numpy as np
        roots = np.roots([float(c) for c in reversed(self.minpoly)])
        return sorted(float(r.real) for r in roots)

    def to_json(self) -> dict:
        return {"generator": self.name, "minpoly": [str(c) for c in self.minpoly],
                "value": self.value, "label": self.label}


@lru_cache(maxsize=None)
def dihedral_field(k: int) -> NumberField:
    """The field Q(2cos(pi/k)) with its real embedding."""
    return NumberField(real_cyclotomic_minpoly(2 * k), 2 * math.cos(math.pi / k),
                       label=f"Q(2cos(pi/{k}))")


class FieldElement:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    # -- coercion
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("mixing elements of different number fields")
            return other.coeffs
        if isinstance(other, _RATIONAL_TYPES):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_float(self) -> float:
        v = self.field.value
        return sum(float(c) * v**i for i, c in enumerate(self.coeffs))

    def __float__(self):
        return self.to_float()

    # -- arithmetic
    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, tuple(x + y for x, y in zip(self.coeffs, b)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, tuple(x - y for x, y in zip(self.coeffs, b)))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, tuple(y - x for x, y in zip(self.coeffs, b)))

    def __mul__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return FieldElement(self.field, tuple(x * other for x in self.coeffs))
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for i, c in enumerate(prod[d:]):
            if c:
                for j, r in enumerate(self.field._reduction[i]):
                    out[j] += c * r
        return FieldElement(self.field, out)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        d = self.field.degree
        # columns of the multiplication-by-self matrix are self * t^j
        cols = []
        basis = self.field.gen
        cur = self.field(1)
        for _ in range(d):
            cols.append((self * cur).coeffs)
            cur = cur * basis
        from .linalg import solve
        rhs = [Fraction(int(i == 0)) for i in range(d)]
        sol = solve([[cols[j][i] for j in range(d)] for i in range(d)], rhs)
        return FieldElement(self.field, sol)

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return FieldElement(self.field, tuple(x / other for x in self.coeffs))
        if isinstance(other, FieldElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.coeffs == tuple(b)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (self.field.name if i == 1 else f"{self.field.name}^{i}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return f"({text})"
