"""Shift operators and Baker-Akhiezer functions P(k, x) e^{(k, x)}."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coxeter import CoxeterDatum, build_group
from .errors import TheoremViolation, UsageError
from .exact.linalg import identity, matmul
from .exact.localized import LocalizedPoly
from .exact.poly import MultiPoly
from .operators import (OperatorElement, algebra, apply, berest_integral, cm_gauge_operator,
                        compose)
from .quasi import QuasiInvariantProblem, graded_basis


def _tup(m):
    return tuple(tuple(r) for r in m)


class ExpPolynomial:
    """sum_M P_M(k, x) exp(k^T M x).

    Variables are ordered k_1..k_n, x_1..x_n; coefficients may carry
    denominators in the root forms of x.  The plain function P e^{(k,x)}
    has the single key M = identity.
    """

    __slots__ = ("W", "ctx", "terms")

    def __init__(self, W: CoxeterDatum, terms):
        self.W = W
        self.ctx = _lifted_ctx(W)
        self.terms = {M: f for M, f in terms.items() if f}

    @classmethod
    def from_poly(cls, W: CoxeterDatum, P: MultiPoly):
        n = W.rank
        if P.nvars != 2 * n:
            raise UsageError(f"expected a polynomial in {2 * n} variables (k, x)")
        return cls(W, {_tup(identity(n)): LocalizedPoly.from_poly(_lifted_ctx(W), P)})

    @classmethod
    def exponential(cls, W: CoxeterDatum):
        return cls.from_poly(W, MultiPoly.one(2 * W.rank))

    @property
    def nvars(self):
        return self.W.rank

    def __eq__(self, other):
        return isinstance(other, ExpPolynomial) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for M, f in other.terms.items():
            out[M] = out[M] + f if M in out else f
        return ExpPolynomial(self.W, out)

    def __sub__(self, other):
        return self + other.scale_by(LocalizedPoly.constant(self.ctx, -1))

    def scale_by(self, g: LocalizedPoly):
        return ExpPolynomial(self.W, {M: f * g for M, f in self.terms.items()})

    def poly_part(self) -> MultiPoly:
        """P for a single plain exponential term."""
        n = self.W.rank
        key = _tup(identity(n))
        if set(self.terms) - {key}:
            raise ValueError("not a single e^{(k,x)} term")
        f = self.terms.get(key)
        if f is None:
            return MultiPoly(2 * n)
        if not f.is_polynomial():
            raise ValueError("coefficient is not a polynomial")
        return f.num

    # -- action of x-operators ---------------------------------------------
    def _d_x(self, i: int):
        n = self.W.rank
        out = {}
        for M, f in self.terms.items():
            # d/dx_i of exp(k^T M x) contributes sum_j k_j M_ji
            lin = MultiPoly.linear_form([M[j][i] for j in range(n)] + [0] * n)
            out[M] = f.derivative(n + i) + f * LocalizedPoly.from_poly(self.ctx, lin)
        return ExpPolynomial(self.W, out)

    def _act(self, u: int):
        """(u.F)(x) = F(u^-1 x)."""
        W = self.W
        n = W.rank
        if u == W.identity:
            return self
        ui = W.inv[u]
        A = W.elements[ui]
        big = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            big[i][i] = Fraction(1)
            for j in range(n):
                big[n + i][n + j] = A[i][j]
        out = {}
        for M, f in self.terms.items():
            key = _tup(matmul(M, A))
            g = f.transform(big, W.root_action[ui])
            out[key] = out[key] + g if key in out else g
        return ExpPolynomial(W, out)

    def apply(self, A: OperatorElement) -> "ExpPolynomial":
        W = self.W
        n = W.rank
        acc = ExpPolynomial(W, {})
        for u, part in A.terms.items():
            base = self._act(u)
            for beta, coef in part.items():
                F = base
                for i, e in enumerate(beta):
                    for _ in range(e):
                        F = F._d_x(i)
                acc = acc + F.scale_by(_lift_coefficient(self.ctx, coef, n))
        return acc

    def to_text(self) -> str:
        n = self.W.rank
        names = (["k"] if n == 1 else [f"k{i + 1}" for i in range(n)]) + \
                (["x"] if n == 1 else [f"x{i + 1}" for i in range(n)])
        parts = []
        for M, f in sorted(self.terms.items()):
            tag = "" if M == _tup(identity(n)) else f"·M{list(map(list, M))}"
            parts.append(f"({f.to_text(names)})·exp((k,x){tag})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ExpPolynomial({self.to_text()})"


_CTX = {}


def _lifted_ctx(W: CoxeterDatum):
    ctx = _CTX.get(id(W))
    if ctx is None:
        ctx = algebra(W).ctx.lifted(2 * W.rank, W.rank)
        _CTX[id(W)] = ctx
    return ctx


def _lift_coefficient(ctx, f: LocalizedPoly, n: int) -> LocalizedPoly:
    return LocalizedPoly(ctx, f.num.embed(2 * n, n), f.exps, reduce=False)


# ---------------------------------------------------------------- rank one


def _a1():
    return build_group("A1")


def euler_shift(c) -> OperatorElement:
    """x d - c in rank one."""
    alg = algebra(_a1())
    return alg.function(MultiPoly.var(1, 0)) * alg.partial((1,)) - alg.function(Fraction(c))


def rank1_shift(m: int) -> OperatorElement:
    """S_m = (x d - 2m + 1)(x d - 2m + 3) ... (x d - 1); S_0 = 1."""
    if m < 0:
        raise UsageError("m must be a nonnegative integer")
    alg = algebra(_a1())
    S = alg.identity()
    for j in range(m, 0, -1):
        S = S * euler_shift(2 * j - 1)
    return S


def intertwines(m: int, q: MultiPoly) -> bool:
    """L_q S_m = S_m q(d)."""
    W = _a1()
    alg = algebra(W)
    S = rank1_shift(m)
    Lq = berest_integral(W, q, m).Lq if m else _const_coeff_operator(q)
    return compose(Lq, S) == compose(S, _const_coeff_operator(q))


def _const_coeff_operator(q: MultiPoly) -> OperatorElement:
    alg = algebra(_a1())
    out = alg.zero()
    for e, c in q.terms.items():
        out = out + alg.partial(e, c)
    return out


def rank1_psi(m: int) -> ExpPolynomial:
    """psi_m = S_m e^{kx}."""
    return ExpPolynomial.exponential(_a1()).apply(rank1_shift(m))


def eigen_check(psi: ExpPolynomial, q: MultiPoly, m) -> bool:
    """L_q psi == q(k) psi exactly."""
    W = psi.W
    if m == 0 or (isinstance(m, tuple) and not any(m)):
        Lq = algebra(W).zero()
        for e, c in q.terms.items():
            Lq = Lq + algebra(W).partial(e, c)
    else:
        Lq = berest_integral(W, q, m).Lq
    lhs = psi.apply(Lq)
    qk = LocalizedPoly.from_poly(psi.ctx, q.embed(2 * W.rank, 0))
    return lhs == psi.scale_by(qk)


def symmetry_check(m: int) -> bool:
    P = rank1_psi(m).poly_part()
    return P == P.swap_blocks(1)


def leading_coefficient(m: int):
    """Coefficient of (kx)^m in P_m."""
    return rank1_psi(m).poly_part().coefficient((m, m))


def induction_identity(m: int) -> bool:
    """(d^2 - 2m/x d)(x d - 2m + 1) == (x d - 2m + 1)(d^2 - 2(m-1)/x d)."""
    W = _a1()
    S = euler_shift(2 * m - 1)
    return compose(cm_gauge_operator(W, m), S) == compose(S, cm_gauge_operator(W, m - 1))


def eigen_set(m: int):
    """Quasi-invariant monomials of degree 1..2m+5 (rank one)."""
    P = QuasiInvariantProblem(_a1(), m, 2 * m + 5)
    return [q for r, basis in graded_basis(P).items() if r >= 1 for q in basis]


@dataclass
class BAReport:
    m: int
    P: MultiPoly
    symmetric: bool
    leading: Fraction
    eigen: dict = field(default_factory=dict)         # q text -> bool
    intertwining: dict = field(default_factory=dict)
    induction: bool = True

    @property
    def ok(self):
        return self.symmetric and all(self.eigen.values()) and all(self.intertwining.values()) and self.induction


def ba_report(m: int, qs=None) -> BAReport:
    psi = rank1_psi(m)
    P = psi.poly_part()
    rep = BAReport(m, P, P == P.swap_blocks(1), P.coefficient((m, m)))
    qs = eigen_set(m) if qs is None else qs
    for q in qs:
        rep.eigen[q.to_text(["x"])] = eigen_check(psi, q, m)
    x = MultiPoly.var(1, 0)
    for q in ([x ** 2, x ** (2 * m + 1)] if m else [x, x ** 2]):
        rep.intertwining[q.to_text(["x"])] = intertwines(m, q)
    rep.induction = induction_identity(m) if m else True
    if not rep.ok:
        raise TheoremViolation(f"Baker-Akhiezer checks failed for m = {m}")
    return rep
