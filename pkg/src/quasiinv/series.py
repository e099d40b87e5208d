"""Isotypic Molien series, fake degrees and the character formula for h_{Q_m}.

Everything is an exact rational function in t; truncation only happens when
a finite coefficient list is requested for comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coxeter import CoxeterDatum
from .errors import TheoremViolation
from .exact.linalg import rank
from .exact.poly import MultiPoly, monomials_of_degree
from .exact.scalars import to_rational
from .exact.univariate import RationalFunction, UPoly
from .quasi import QuasiInvariantProblem, hilbert_direct


def _rational_poly(p: UPoly) -> UPoly:
    return UPoly([to_rational(a) for a in p.c])


def _reflection_class_values(W: CoxeterDatum, tau: int):
    """chi_tau(s) for every reflection s, in reflection order."""
    row = W.character_table.values[tau]
    return [row[W.class_of[s]] for s in W.reflections]


def d_tau_s(W: CoxeterDatum, tau: int, orbit: int):
    """Dimension of the s-fixed subspace of tau, s any reflection of the orbit."""
    row = W.character_table.values[tau]
    s = W.reflections[W.orbits[orbit][0]]
    return to_rational((row[0] + row[W.class_of[s]]) / 2)


def xi_scalar(W: CoxeterDatum, tau: int, m) -> int:
    """xi_m(tau) = (1/d_tau) sum_s 2 m_s (d_tau - d_{tau,s})."""
    per = W.orbit_values(m)
    row = W.character_table.values[tau]
    d = to_rational(row[0])
    total = Fraction(0)
    for k, ms in enumerate(per):
        if ms:
            chi_s = to_rational(row[W.class_of[W.reflections[k]]])
            total += ms * (d - chi_s)      # 2 m (d - (d + chi)/2)
    val = total / d
    if val.denominator != 1:
        raise TheoremViolation(f"xi_m({W.character_table.labels[tau]}) = {val} is not an integer")
    return int(val)


def isotypic_series(W: CoxeterDatum, tau: int) -> RationalFunction:
    """sum_r dim Hom_W(tau, C[h][r]) t^r as a reduced rational function."""
    cache = W.__dict__.setdefault("_isotypic", {})
    if tau in cache:
        return cache[tau]
    tbl = W.character_table
    acc = RationalFunction(UPoly())
    for j, (cls, dp) in enumerate(zip(W.classes, W.class_det_polys)):
        chi = tbl.values[tau][j]       # real-valued for Coxeter groups
        if chi:
            acc = acc + RationalFunction(UPoly([chi * len(cls)]), dp)
    acc = acc * Fraction(1, W.order)
    out = RationalFunction(_rational_poly(acc.num), _rational_poly(acc.den))
    cache[tau] = out
    return out


def kostka_polynomial(W: CoxeterDatum, tau: int) -> UPoly:
    """K_tau = chi_tau(t) * prod (1 - t^{d_i}); must be a polynomial in N[t]."""
    s = isotypic_series(W, tau)
    q, r = (s.num * W.degree_denominator).divmod(s.den)
    if r:
        raise TheoremViolation(f"K_{W.character_table.labels[tau]} is not a polynomial")
    coeffs = q.int_coefficients()
    if any(c < 0 for c in coeffs):
        raise TheoremViolation(f"K_{W.character_table.labels[tau]} has a negative coefficient")
    if q.degree > W.n_reflections:
        raise TheoremViolation("fake degree exceeds the number of reflections")
    return q


def projected_multiplicities(W: CoxeterDatum, tau: int, rmax: int):
    """dim Hom_W(tau, C[h][r]) for r <= rmax via the rank of the isotypic projector."""
    tbl = W.character_table
    d = tbl.degrees[tau]
    out = []
    for r in range(rmax + 1):
        monos = monomials_of_degree(W.rank, r)
        pos = {mono: i for i, mono in enumerate(monos)}
        cols = [[Fraction(0)] * len(monos) for _ in monos]
        for w in range(W.order):
            chi = tbl.values[tau][W.class_of[w]]
            if not chi:
                continue
            for c, mono in enumerate(monos):
                img = W.act(w, MultiPoly(W.rank, {mono: Fraction(1)}))
                for e, v in img.terms.items():
                    cols[c][pos[e]] = cols[c][pos[e]] + chi * v
        rk = rank(cols) if monos else 0
        if rk % d:
            raise TheoremViolation("isotypic component dimension not divisible by d_tau")
        out.append(rk // d)
    return out


# ---------------------------------------------------------------- character formula


@dataclass
class HilbertFormula:
    group: str
    mult: tuple
    xi: dict                 # label -> xi_m(tau)
    P: UPoly                 # numerator over prod (1 - t^{d_i})
    degrees: tuple
    series: RationalFunction

    def coefficients(self, N: int):
        return [int(to_rational(c)) for c in self.series.series(N)]


def hilbert_formula(W: CoxeterDatum, m) -> HilbertFormula:
    """h_{Q_m}(t) = sum_tau d_tau t^{xi_m(tau)} chi_tau(t) = P_m(t) / prod (1 - t^{d_i})."""
    tbl = W.character_table
    m = tuple(m) if not isinstance(m, int) else (m,) * len(W.orbits)
    P = UPoly()
    xi = {}
    for tau in range(len(tbl)):
        x = xi_scalar(W, tau, m)
        xi[tbl.labels[tau]] = x
        P = P + UPoly.monomial(x, tbl.degrees[tau]) * kostka_polynomial(W, tau)
    coeffs = P.int_coefficients()
    if any(c < 0 for c in coeffs):
        raise TheoremViolation("P_m has a negative coefficient")
    series = RationalFunction(P, W.degree_denominator)
    if any(to_rational(c) < 0 for c in series.series(max(P.degree, 1) + sum(W.degrees))):
        raise TheoremViolation("Hilbert series has a negative coefficient")
    return HilbertFormula(W.name, m, xi, P, W.degrees, series)


def sign_xi(W: CoxeterDatum, m) -> int:
    return xi_scalar(W, W.character_table.sign, m)


# ---------------------------------------------------------------- certificates


@dataclass
class GorensteinReport:
    exponent: int            # P_m(t) = t^exponent P_m(1/t)
    expected: int            # xi_m(sign) + |Sigma|
    l: int                   # h(1/t) = (-1)^n t^l h(t)
    palindromic: bool


def gorenstein_certificate(W: CoxeterDatum, m) -> GorensteinReport:
    hf = hilbert_formula(W, m)
    P = hf.P
    expected = sign_xi(W, hf.mult) + W.n_reflections
    if P.degree != expected or P.reversed_to(expected) != P:
        raise TheoremViolation(f"P_m is not palindromic of degree {expected} for {W.name}, m={hf.mult}")
    l = sum(W.degrees) - expected
    # h(1/t) = t^l * Prev/Drev with Prev = t^e P(1/t), Drev = t^{sum d} D(1/t)
    D = W.degree_denominator
    left = RationalFunction(P.reversed_to(expected), D.reversed_to(sum(W.degrees)))
    right = RationalFunction(P * (-1) ** W.rank, D)
    if left != right:
        raise TheoremViolation("functional equation h(1/t) = (-1)^n t^l h(t) fails")
    return GorensteinReport(expected, expected, l, True)


@dataclass
class FreenessReport:
    N: int
    direct: list
    truncated_product: list          # coefficients of h_direct * prod(1 - t^d), r <= N
    P: list                          # full P_m from the character formula
    generator_degrees: list          # exponents with multiplicity
    rank: int
    order: int


def freeness_certificate(W: CoxeterDatum, m, N: int, direct=None) -> FreenessReport:
    hf = hilbert_formula(W, m)
    if direct is None:
        direct = hilbert_direct(QuasiInvariantProblem(W, hf.mult, N))
    D = W.degree_denominator
    prod = [sum((direct[r - j] * D.coef(j) for j in range(0, min(r, D.degree) + 1)), Fraction(0))
            for r in range(N + 1)]
    prod = [int(x) for x in prod]
    P = hf.P.int_coefficients()
    if prod != [P[r] if r < len(P) else 0 for r in range(N + 1)]:
        raise TheoremViolation("truncated h * prod(1 - t^d) disagrees with P_m")
    if any(c < 0 for c in prod) or any(c < 0 for c in P):
        raise TheoremViolation("negative coefficient in the generator count")
    total = sum(P)
    if total != W.order:
        raise TheoremViolation(f"P_m(1) = {total} differs from |W| = {W.order}")
    gens = [r for r, c in enumerate(P) for _ in range(c)]
    return FreenessReport(N, list(direct), prod, P, gens, total, W.order)
