"""Polynomials divided by products of powers of fixed linear forms."""
from __future__ import annotations

from fractions import Fraction

from .poly import MultiPoly, divide_by_linear, substitute_unchecked
from .scalars import FieldElement


class DenominatorForms:
    """The admissible denominator factors: pairwise non-proportional linear forms."""

    def __init__(self, forms, nvars: int | None = None):
        self.forms = [tuple(f) for f in forms]
        self.nvars = nvars if nvars is not None else (len(self.forms[0]) if self.forms else 0)
        self.polys = [MultiPoly.linear_form(list(f)) for f in self.forms]
        self._powers = [[MultiPoly.one(self.nvars)] for _ in self.forms]

    def __len__(self):
        return len(self.forms)

    def power(self, s: int, k: int) -> MultiPoly:
        lst = self._powers[s]
        while len(lst) <= k:
            lst.append(lst[-1] * self.polys[s])
        return lst[k]

    def lifted(self, nvars: int, offset: int) -> "DenominatorForms":
        out = []
        for f in self.forms:
            v = [Fraction(0)] * nvars
            v[offset:offset + len(f)] = f
            out.append(v)
        return DenominatorForms(out, nvars)

    def strip(self, num: MultiPoly, s: int, limit: int):
        """Divide num by the largest power (<= limit) of form s; returns (quotient, k)."""
        if not num.terms or limit <= 0:
            return num, 0
        k = 0
        while k < limit:
            q = divide_by_linear(num, self.forms[s])
            if q is None:
                break
            num, k = q, k + 1
        return num, k


class LocalizedPoly:
    __slots__ = ("ctx", "num", "exps", "_hash")

    def __init__(self, ctx: DenominatorForms, num: MultiPoly, exps=None, reduce: bool = True):
        self.ctx = ctx
        if exps is None:
            exps = (0,) * len(ctx)
        exps = tuple(exps)
        if not num.terms:
            exps = (0,) * len(ctx)
        elif reduce and any(exps):
            exps = list(exps)
            for s, e in enumerate(exps):
                if e:
                    num, k = ctx.strip(num, s, e)
                    exps[s] = e - k
            exps = tuple(exps)
        self.num = num
        self.exps = exps
        self._hash = None

    @classmethod
    def from_poly(cls, ctx, p: MultiPoly):
        return cls(ctx, p, reduce=False)

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, MultiPoly.constant(ctx.nvars, c), reduce=False)

    @classmethod
    def inverse_form(cls, ctx, s: int, power: int = 1, c=1):
        exps = [0] * len(ctx)
        exps[s] = power
        return cls(ctx, MultiPoly.constant(ctx.nvars, c), exps, reduce=False)

    # ------------------------------------------------------------------
    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self):
        return not any(self.exps)

    def to_poly(self) -> MultiPoly:
        if any(self.exps):
            raise ValueError("not a polynomial")
        return self.num

    @property
    def homogeneity_degree(self):
        if not self.num.terms or not self.num.is_homogeneous():
            return None
        return self.num.degree - sum(self.exps)

    def __eq__(self, other):
        if isinstance(other, LocalizedPoly):
            return self.exps == other.exps and self.num == other.num
        if isinstance(other, MultiPoly):
            return not any(self.exps) and self.num == other
        if isinstance(other, (int, Fraction, FieldElement)):
            return not any(self.exps) and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.exps, self.num))
        return self._hash

    def _lift(self, other):
        if isinstance(other, LocalizedPoly):
            return other
        if isinstance(other, MultiPoly):
            return LocalizedPoly(self.ctx, other, reduce=False)
        if isinstance(other, (int, Fraction, FieldElement)):
            return LocalizedPoly.constant(self.ctx, other)
        return None

    def _common(self, other):
        exps = tuple(max(a, b) for a, b in zip(self.exps, other.exps))
        n1, n2 = self.num, other.num
        for s, (e, a, b) in enumerate(zip(exps, self.exps, other.exps)):
            if e > a:
                n1 = n1 * self.ctx.power(s, e - a)
            if e > b:
                n2 = n2 * self.ctx.power(s, e - b)
        return n1, n2, exps

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        if self.exps == o.exps:
            return LocalizedPoly(self.ctx, self.num + o.num, self.exps)
        n1, n2, exps = self._common(o)
        return LocalizedPoly(self.ctx, n1 + n2, exps)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedPoly(self.ctx, -self.num, self.exps, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            if not other:
                return LocalizedPoly(self.ctx, MultiPoly(self.ctx.nvars))
            return LocalizedPoly(self.ctx, self.num.scale(other), self.exps, reduce=False)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num.terms or not o.num.terms:
            return LocalizedPoly(self.ctx, MultiPoly(self.ctx.nvars))
        exps = tuple(a + b for a, b in zip(self.exps, o.exps))
        num = self.num * o.num
        return LocalizedPoly(self.ctx, num, exps)

    __rmul__ = __mul__

    def derivative(self, i: int) -> "LocalizedPoly":
        ctx = self.ctx
        if not any(self.exps):
            return LocalizedPoly(ctx, self.num.derivative(i), reduce=False)
        support = [s for s, e in enumerate(self.exps) if e and ctx.forms[s][i]]
        if not support:
            return LocalizedPoly(ctx, self.num.derivative(i), self.exps)
        # d(N / prod a^e) = (dN * prod_S a - N * sum_S e_s c_s prod_{S - s} a) / prod a^(e + 1_S)
        full = MultiPoly.one(ctx.nvars)
        for s in support:
            full = full * ctx.polys[s]
        num = self.num.derivative(i) * full
        for s in support:
            rest = MultiPoly.one(ctx.nvars)
            for t in support:
                if t != s:
                    rest = rest * ctx.polys[t]
            num = num - (self.num * rest).scale(self.exps[s] * ctx.forms[s][i])
        exps = list(self.exps)
        for s in support:
            exps[s] += 1
        return LocalizedPoly(ctx, num, exps)

    def transform(self, M, perm) -> "LocalizedPoly":
        """f(Mx), given perm[s] = (t, lam) with form_s(Mx) = lam * form_t(x)."""
        num = substitute_unchecked(self.num, M)
        exps = [0] * len(self.exps)
        scale = Fraction(1)
        for s, e in enumerate(self.exps):
            if e:
                t, lam = perm[s]
                exps[t] = e
                scale = scale * lam**e
        if scale != 1:
            num = num.scale(Fraction(1) / scale)
        return LocalizedPoly(self.ctx, num, exps, reduce=False)

    def evaluate(self, point):
        den = Fraction(1)
        for s, e in enumerate(self.exps):
            if e:
                den = den * self.ctx.polys[s].evaluate(point) ** e
        return self.num.evaluate(point) / den

    def to_text(self, names=None, form_names=None) -> str:
        num = self.num.to_text(names)
        dens = []
        for s, e in enumerate(self.exps):
            if e:
                if form_names:
                    base = form_names[s]
                else:
                    poly = self.ctx.polys[s]
                    base = poly.to_text(names)
                    if len(poly.terms) > 1 or base.startswith("-"):
                        base = f"({base})"
                dens.append(base if e == 1 else f"{base}^{e}")
        if not dens:
            return num
        if len(self.num.terms) > 1 or "/" in num:
            num = f"({num})"
        return f"{num}/" + "/".join(dens) if len(dens) == 1 else f"{num}/({'*'.join(dens)})"

    def __repr__(self):
        return f"LocalizedPoly({self.to_text()})"
