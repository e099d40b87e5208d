"""Univariate polynomials and rational functions in t over exact scalars."""
from __future__ import annotations

from fractions import Fraction

from .scalars import FieldElement, scalar_str, to_rational


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


class UPoly:
    """Dense polynomial in t, coefficients low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = tuple(_trim(coeffs))

    @classmethod
    def monomial(cls, k, a=1):
        return cls([0] * k + [Fraction(a) if isinstance(a, int) else a])

    @classmethod
    def one(cls):
        return cls([Fraction(1)])

    @property
    def degree(self):
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.c == other.c
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.c == UPoly([other]).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def coef(self, i):
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def _lift(self, o):
        if isinstance(o, UPoly):
            return o
        if isinstance(o, (int, Fraction, FieldElement)):
            return UPoly([o])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        return UPoly([self.coef(i) + o.coef(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-x for x in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = UPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "UPoly"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(other.c) + 1, 0)
        lead = other.c[-1]
        inv = Fraction(1) / lead
        for i in range(len(q) - 1, -1, -1):
            f = r[i + len(other.c) - 1] * inv
            q[i] = f
            if f:
                for j, b in enumerate(other.c):
                    r[i + j] = r[i + j] - f * b
        return UPoly(q), UPoly(r[: len(other.c) - 1])

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self.c:
            return self
        inv = Fraction(1) / self.c[-1]
        return UPoly([x * inv for x in self.c])

    def gcd(self, other: "UPoly"):
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, t):
        out = Fraction(0)
        for a in reversed(self.c):
            out = out * t + a
        return out

    def reversed_to(self, deg):
        """t^deg * p(1/t) for deg >= degree."""
        if self.degree > deg:
            raise ValueError("degree exceeds reversal bound")
        return UPoly([self.coef(deg - i) for i in range(deg + 1)])

    def valuation(self):
        for i, a in enumerate(self.c):
            if a:
                return i
        return None

    def int_coefficients(self):
        """Coefficients as ints; raises if any is not a rational integer."""
        out = []
        for a in self.c:
            q = to_rational(a)
            if q.denominator != 1:
                raise ValueError(f"non-integer coefficient {a}")
            out.append(int(q))
        return out

    def to_text(self, var="t"):
        if not self.c:
            return "0"
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            s = scalar_str(a)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and s == "1":
                parts.append(mono)
            elif mono and s == "-1":
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{s}*{mono}")
            else:
                parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UPoly({self.to_text()})"


def one_minus_t_power(d: int) -> UPoly:
    return UPoly([Fraction(1)] + [Fraction(0)] * (d - 1) + [Fraction(-1)])


class RationalFunction:
    """num/den in lowest terms with den(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly | None = None, reduce: bool = True):
        if den is None:
            den = UPoly.one()
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce and num:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if not num:
            den = UPoly.one()
        c0 = den.coef(0)
        if not c0:
            raise ValueError("denominator vanishes at t = 0")
        if c0 != 1:
            inv = Fraction(1) / c0
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    def __add__(self, other):
        if isinstance(other, UPoly):
            other = RationalFunction(other)
        g = self.den.gcd(other.den)
        a = other.den.exact_div(g)
        return RationalFunction(self.num * a + other.num * self.den.exact_div(g), self.den * a)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        if isinstance(other, UPoly):
            return RationalFunction(self.num * other, self.den)
        return RationalFunction(self.num * other, self.den, reduce=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def series(self, order: int):
        """Power-series coefficients of t^0..t^order."""
        out = []
        den = self.den.c
        for r in range(order + 1):
            acc = self.num.coef(r)
            for j in range(1, min(r, len(den) - 1) + 1):
                acc = acc - den[j] * out[r - j]
            out.append(acc)  # den[0] == 1
        return out

    def to_text(self):
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __repr__(self):
        return f"RationalFunction{self.to_text()}"
