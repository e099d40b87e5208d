"""Sparse multivariate polynomials with exact coefficients.

Terms are stored as ``{exponent tuple: coefficient}``; iteration and
printing follow graded-lexicographic order, largest monomial first.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement

from .scalars import FieldElement, as_scalar, scalar_str


class _NegInf:
    """Degree of the zero polynomial: below every integer, no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("neg-inf-degree")


NEG_INF = _NegInf()


def grlex_key(exps):
    return (sum(exps), exps)


def monomials_of_degree(nvars: int, r: int):
    """All exponent tuples of total degree r, in descending grlex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), r):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def default_names(nvars: int):
    if nvars == 1:
        return ("x",)
    return tuple(f"x{i + 1}" for i in range(nvars))


class MultiPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms is None:
            terms = {}
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # ---------------------------------------------------------------- builders
    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        c = as_scalar(c) if not isinstance(c, FieldElement) else c
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps, c=1):
        c = as_scalar(c) if not isinstance(c, FieldElement) else c
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear_form(cls, coeffs, const=0):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        if const:
            terms[(0,) * n] = const
        return cls(n, terms)

    # ---------------------------------------------------------------- basics
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, r):
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == r})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # ---------------------------------------------------------------- arithmetic
    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("rank mismatch between polynomials")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return MultiPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) - c
        return MultiPoly(self.nvars, out)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return MultiPoly(self.nvars)
        return MultiPoly(self.nvars, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("rank mismatch between polynomials")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction, FieldElement)):
            return self.scale(1 / Fraction(c) if isinstance(c, int) else 1 / c)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ---------------------------------------------------------------- calculus
    def derivative(self, i: int, times: int = 1):
        out = {}
        for e, c in self.terms.items():
            if e[i] < times:
                continue
            f = 1
            for j in range(times):
                f *= e[i] - j
            ne = list(e)
            ne[i] -= times
            out[tuple(ne)] = c * f
        return MultiPoly(self.nvars, out)

    def directional_derivative(self, v):
        out = MultiPoly(self.nvars)
        for i, vi in enumerate(v):
            if vi:
                out = out + self.derivative(i).scale(vi)
        return out

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

    def map_coefficients(self, fn):
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def embed(self, nvars: int, offset: int = 0):
        """Re-index into a larger variable set, starting at ``offset``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            ne[offset:offset + self.nvars] = e
            out[tuple(ne)] = c
        return MultiPoly(nvars, out)

    def swap_blocks(self, size: int):
        """Swap variables [0, size) with [size, 2*size)."""
        out = {}
        for e, c in self.terms.items():
            out[e[size:2 * size] + e[:size] + e[2 * size:]] = c
        return MultiPoly(self.nvars, out)

    # ---------------------------------------------------------------- text
    def to_text(self, names=None) -> str:
        if names is None:
            names = default_names(self.nvars)
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            if isinstance(c, FieldElement) and not c.is_rational():
                body = str(c) + (f"*{mono}" if mono else "")
                sign = "+"
            else:
                c = Fraction(c) if not isinstance(c, FieldElement) else c.coeffs[0]
                sign = "-" if c < 0 else "+"
                a = abs(c)
                if not mono:
                    body = str(a)
                elif a == 1:
                    body = mono
                else:
                    body = f"{a}*{mono}"
            pieces.append((sign, body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int, names=None) -> "MultiPoly":
        return parse_poly(text, nvars, names)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9_]*)(?:\^(?P<exp>\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str, nvars: int, names=None) -> MultiPoly:
    """Parse the canonical text form, e.g. ``3/2*x1^2*x2 - x3``."""
    if names is None:
        names = default_names(nvars)
    index = {n: i for i, n in enumerate(names)}
    if nvars == 1:
        index.setdefault("x1", 0)
    elif nvars <= 3 and tuple(names) == default_names(nvars):
        for i, alias in enumerate("xyz"[:nvars]):
            index.setdefault(alias, i)
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial text")
    if src[0] not in "+-":
        src = "+" + src
    parts = _TERM_SPLIT.split(src)
    # parts: ['', sign, term, sign, term, ...]
    if parts[0].strip():
        raise ValueError(f"malformed polynomial text: {text!r}")
    out = MultiPoly(nvars)
    for k in range(1, len(parts), 2):
        sign = parts[k]
        term = parts[k + 1].strip() if k + 1 < len(parts) else ""
        if not term:
            raise ValueError(f"malformed polynomial text: {text!r}")
        coeff = Fraction(1)
        exps = [0] * nvars
        for factor in term.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m or m.group("name") not in index:
                raise ValueError(f"malformed polynomial text: {text!r} (bad factor {factor!r})")
            exps[index[m.group("name")]] += int(m.group("exp") or 1)
        if sign == "-":
            coeff = -coeff
        out = out + MultiPoly(nvars, {tuple(exps): coeff})
    return out


# -------------------------------------------------------------------- substitution


def _linear_image(row):
    n = len(row)
    terms = {}
    for j, c in enumerate(row):
        if c:
            e = [0] * n
            e[j] = 1
            terms[tuple(e)] = c
    return MultiPoly(n, terms)


def substitute_unchecked(p: MultiPoly, M) -> MultiPoly:
    """p(Mx) without the invertibility check."""
    n = p.nvars
    if not p.terms:
        return MultiPoly(n)
    forms = [_linear_image(M[i]) for i in range(n)]
    powers = [[MultiPoly.one(n)] for _ in range(n)]

    def power(i, k):
        lst = powers[i]
        while len(lst) <= k:
            lst.append(lst[-1] * forms[i])
        return lst[k]

    out = {}
    for e, c in p.terms.items():
        term = None
        for i, k in enumerate(e):
            if k:
                term = power(i, k) if term is None else term * power(i, k)
        if term is None:
            key = (0,) * n
            out[key] = out.get(key, 0) + c
            continue
        for te, tc in term.terms.items():
            out[te] = out.get(te, 0) + c * tc
    return MultiPoly(n, out)


def linear_substitute(p: MultiPoly, M) -> MultiPoly:
    """Compose p with the linear map x -> Mx; M must be invertible."""
    from .linalg import det

    if len(M) != p.nvars or any(len(r) != p.nvars for r in M):
        raise ValueError("substitution matrix does not match polynomial rank")
    if not det(M):
        raise ValueError("non-invertible substitution")
    return substitute_unchecked(p, M)


def adapted_frame(ell):
    """Coordinates y with y1 = ell(x).

    Returns ``(T, Tinv)`` with ``x = T y`` and ``y = Tinv x``: the remaining
    coordinates are the original ones minus the first index where ell is
    nonzero.
    """
    from .linalg import inverse

    n = len(ell)
    piv = next((i for i, c in enumerate(ell) if c), None)
    if piv is None:
        raise ValueError("linear form is zero")
    rows = [list(ell)]
    for i in range(n):
        if i != piv:
            rows.append([Fraction(int(j == i)) for j in range(n)])
    return inverse(rows), rows


def lowest_power(p: MultiPoly, var: int = 0):
    if not p.terms:
        return None
    return min(e[var] for e in p.terms)


def divide_by_linear(p: MultiPoly, ell):
    """Exact quotient p / ell, or None if ell does not divide p.

    Synthetic division in the first variable the form involves: terms are
    processed from the highest power of that variable downwards.
    """
    piv = next((i for i, c in enumerate(ell) if c), None)
    if piv is None:
        raise ValueError("linear form is zero")
    inv = Fraction(1) / ell[piv]
    others = [(i, c) for i, c in enumerate(ell) if c and i != piv]
    buckets = {}
    for e, c in p.terms.items():
        buckets.setdefault(e[piv], {})[e] = c
    quotient = {}
    for k in range(max(buckets, default=0), 0, -1):
        level = buckets.pop(k, None)
        if not level:
            continue
        lower = buckets.setdefault(k - 1, {})
        for e, c in level.items():
            if not c:
                continue
            qe = e[:piv] + (k - 1,) + e[piv + 1:]
            qc = c * inv
            quotient[qe] = quotient.get(qe, 0) + qc
            for i, a in others:
                te = qe[:i] + (qe[i] + 1,) + qe[i + 1:]
                lower[te] = lower.get(te, 0) - qc * a
    if any(buckets.get(0, {}).values()):
        return None
    return MultiPoly(p.nvars, quotient)


def divide_by_linear_power(p: MultiPoly, ell, k: int, frame=None):
    """Quotient p / ell^k if exact, else None.

    ``ell`` is the coefficient vector of a linear form.
    """
    if not any(ell):
        raise ValueError("linear form is zero")
    if len(ell) != p.nvars:
        raise ValueError("linear form does not match polynomial rank")
    if k < 0:
        raise ValueError("negative power")
    if not p.terms:
        return MultiPoly(p.nvars)
    if k == 0:
        return p
    for _ in range(k):
        p = divide_by_linear(p, ell)
        if p is None:
            return None
    return p


def linear_valuation(p: MultiPoly, ell, frame=None):
    """Largest k with ell^k | p (None for p = 0)."""
    if not p.terms:
        return None
    T, _ = frame if frame is not None else adapted_frame(ell)
    return lowest_power(substitute_unchecked(p, T), 0)


def coefficients_in(p: MultiPoly):
    """Coefficients with exponent vector, in a plain list form for JSON."""
    return [[list(e), scalar_str(c)] for e, c in p.sorted_terms()]
