"""Membership in Q_m, graded bases, the direct Hilbert function and the
constructive separation of points."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from .coxeter import CoxeterDatum
from .errors import UsageError
from .exact.linalg import exact_kernel, rref
from .exact.poly import (MultiPoly, divide_by_linear_power, grlex_key, monomials_of_degree,
                         substitute_unchecked)


@dataclass
class QuasiInvariantProblem:
    W: CoxeterDatum
    m: tuple            # one nonnegative integer per reflection orbit
    N: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.m, int):
            self.m = (self.m,) * len(self.W.orbits)
        self.m = tuple(int(x) for x in self.m)
        if len(self.m) != len(self.W.orbits):
            raise UsageError(
                f"{self.W.name} has {len(self.W.orbits)} reflection orbit(s); got multiplicity {list(self.m)}")
        if any(x < 0 for x in self.m):
            raise UsageError("multiplicities must be nonnegative integers")
        if self.N < 0:
            raise UsageError("truncation degree must be nonnegative")

    @cached_property
    def per_reflection(self):
        return self.W.orbit_values(self.m)


def _check_rank(q: MultiPoly, W: CoxeterDatum):
    if q.nvars != W.rank:
        raise UsageError(f"polynomial has {q.nvars} variables but {W.name} has rank {W.rank}")


def is_quasi_invariant(q: MultiPoly, P: QuasiInvariantProblem) -> bool:
    """q - q(s x) is divisible by alpha_s^(2 m_s + 1) for every reflection s."""
    W = P.W
    _check_rank(q, W)
    for k, ms in enumerate(P.per_reflection):
        diff = q - W.compose_with(q, W.reflections[k])
        if divide_by_linear_power(diff, W.root_forms[k], 2 * ms + 1) is None:
            return False
    return True


def delta_poly(P: QuasiInvariantProblem) -> MultiPoly:
    """prod_s alpha_s^(2 m_s + 1)."""
    W = P.W
    out = MultiPoly.one(W.rank)
    for k, ms in enumerate(P.per_reflection):
        out = out * W.root_form_poly(k) ** (2 * ms + 1)
    return out


def delta_check(P: QuasiInvariantProblem, f: MultiPoly) -> bool:
    return is_quasi_invariant(f * delta_poly(P), P)


def _constraint_rows(W, per_reflection, monos):
    """Rows forcing, in each reflection frame, the odd powers y1^j (j < 2m+1) to vanish."""
    rows = {}
    for k, ms in enumerate(per_reflection):
        if ms == 0:
            continue
        T = W.reflection_frames[k]
        for c, mono in enumerate(monos):
            img = substitute_unchecked(MultiPoly(W.rank, {mono: Fraction(1)}), T)
            for e, coef in img.terms.items():
                if e[0] % 2 == 1 and e[0] < 2 * ms + 1:
                    rows.setdefault((k, e), {})[c] = coef
    out = []
    for key in sorted(rows, key=lambda t: (t[0], grlex_key(t[1]))):
        r = [Fraction(0)] * len(monos)
        for c, v in rows[key].items():
            r[c] = v
        out.append(r)
    return out


def _echelon_polys(vectors, monos, nvars):
    if not vectors:
        return []
    red, _ = rref(vectors, len(monos))
    return [MultiPoly(nvars, {mono: c for mono, c in zip(monos, row) if c}) for row in red]


def graded_component(P: QuasiInvariantProblem, r: int):
    """Basis of Q_m[r] in reduced echelon form (leading monomials distinct, coefficient 1)."""
    key = ("basis", r)
    if key in P._cache:
        return P._cache[key]
    W = P.W
    monos = monomials_of_degree(W.rank, r)
    rows = _constraint_rows(W, P.per_reflection, monos)
    if rows:
        kernel = exact_kernel(rows, len(monos))
    else:
        kernel = [[Fraction(int(i == j)) for j in range(len(monos))] for i in range(len(monos))]
    basis = _echelon_polys(kernel, monos, W.rank)
    P._cache[key] = basis
    return basis


def graded_basis(P: QuasiInvariantProblem):
    """{r: basis of Q_m[r]} for r = 0..N."""
    return {r: graded_component(P, r) for r in range(P.N + 1)}


def hilbert_direct(P: QuasiInvariantProblem):
    """dim Q_m[r] for r = 0..N."""
    return [len(graded_component(P, r)) for r in range(P.N + 1)]


# ---------------------------------------------------------------- separation


def _affine_candidates(n):
    """Deterministic sequence of nonzero linear forms: e_1..e_n, then small integer mixes."""
    for i in range(n):
        yield [Fraction(int(j == i)) for j in range(n)]
    for size in range(1, 4):
        for combo in product(range(-size, size + 1), repeat=n):
            if any(combo) and max(abs(c) for c in combo) == size:
                yield [Fraction(c) for c in combo]


def separating_polynomial(z, y, P: QuasiInvariantProblem) -> MultiPoly:
    """p in Q_m with p(z) != 0 and p(y) = 0."""
    W = P.W
    z = [Fraction(v) if not hasattr(v, "coeffs") else v for v in z]
    y = [Fraction(v) if not hasattr(v, "coeffs") else v for v in y]
    if len(z) != W.rank or len(y) != W.rank:
        raise UsageError(f"points must have {W.rank} coordinates")
    if list(z) == list(y):
        raise UsageError("points coincide: nothing to separate")
    n = W.rank

    def apply(w, v):
        M = W.elements[w]
        return [sum((M[i][j] * v[j] for j in range(n)), Fraction(0)) for i in range(n)]

    stab = [w for w in range(W.order) if apply(w, z) == list(z)]
    base = MultiPoly.one(n)
    for k, ms in enumerate(P.per_reflection):
        if apply(W.reflections[k], z) != list(z):
            base = base * W.root_form_poly(k) ** (2 * ms + 1)
    for ell in _affine_candidates(n):
        shift = sum((a * b for a, b in zip(ell, y)), Fraction(0))
        f = MultiPoly.linear_form(ell, -shift)
        if not f.evaluate(z):
            continue
        p = base
        for w in stab:
            p = p * W.compose_with(f, w)
        if p.evaluate(z) and not p.evaluate(y) and is_quasi_invariant(p, P):
            return p
    raise RuntimeError("no separating form found")


def cusp_relation_holds(m: int) -> bool:
    """For A1: u = x^2, v = x^(2m+1) satisfy v^2 = u^(2m+1)."""
    x = MultiPoly.var(1, 0)
    return (x ** (2 * m + 1)) ** 2 == (x ** 2) ** (2 * m + 1)
