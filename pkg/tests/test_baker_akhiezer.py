from fractions import Fraction

import pytest
import sympy

from quasiinv.baker_akhiezer import (ExpPolynomial, ba_report, eigen_check, eigen_set,
                                     induction_identity, intertwines, leading_coefficient,
                                     rank1_psi, rank1_shift, symmetry_check)
from quasiinv.coxeter import build_group
from quasiinv.errors import UsageError
from quasiinv.exact.poly import MultiPoly, parse_poly
from quasiinv.operators import algebra

KX = ["k", "x"]


def _kx(text):
    return parse_poly(text, 2, KX)


def _x(text):
    return parse_poly(text, 1, ["x"])


def _sympy_psi(m):
    k, x = sympy.symbols("k x")
    f = sympy.exp(k * x)
    for j in range(1, m + 1):          # rightmost factor (x d - 1) first
        f = x * sympy.diff(f, x) - (2 * j - 1) * f
    return sympy.expand(sympy.simplify(f * sympy.exp(-k * x))), k, x


def test_shift_operator():
    alg = algebra(build_group("A1"))
    assert rank1_shift(0) == alg.identity()
    X = alg.function(MultiPoly.var(1, 0))
    D = alg.partial((1,))
    assert rank1_shift(1) == X * D - alg.identity()
    assert rank1_shift(2) == X * X * D * D - (X * D).scale(3) + alg.identity().scale(3)
    with pytest.raises(UsageError):
        rank1_shift(-1)


def test_shift_on_monomials():
    # (x d - 3)(x d - 1) x^j = (j - 3)(j - 1) x^j
    S = rank1_shift(2)
    for j in range(8):
        assert S(_x(f"x^{j}")).to_poly() == _x(f"x^{j}").scale((j - 3) * (j - 1))


def test_psi_closed_forms():
    assert rank1_psi(0).poly_part() == MultiPoly.one(2)
    assert rank1_psi(1).poly_part() == _kx("k*x - 1")
    assert rank1_psi(2).poly_part() == _kx("k^2*x^2 - 3*k*x + 3")


@pytest.mark.parametrize("m", range(6))
def test_psi_against_sympy(m):
    expr, k, x = _sympy_psi(m)
    want = MultiPoly(2, {tuple(e): Fraction(int(c)) for e, c in sympy.Poly(expr, k, x).terms()})
    assert rank1_psi(m).poly_part() == want


def test_eigen_examples():
    psi1 = rank1_psi(1)
    assert eigen_check(psi1, _x("x^2"), 1)
    assert eigen_check(psi1, _x("x^3"), 1)
    assert eigen_check(rank1_psi(0), _x("x"), 0)
    # psi_1 is not an eigenfunction of the free operator
    assert not eigen_check(psi1, _x("x^2"), 0)


@pytest.mark.parametrize("m", [1, 2])
def test_eigen_on_basis(m):
    psi = rank1_psi(m)
    qs = eigen_set(m)
    assert max(q.degree for q in qs) == 2 * m + 5
    for q in qs:
        assert eigen_check(psi, q, m)


@pytest.mark.parametrize("m", range(5))
def test_symmetry_and_leading(m):
    assert symmetry_check(m)
    assert leading_coefficient(m) == 1


@pytest.mark.parametrize("m", range(1, 5))
def test_induction_identity(m):
    assert induction_identity(m)


@pytest.mark.parametrize("m", range(1, 4))
def test_intertwining(m):
    x = MultiPoly.var(1, 0)
    assert intertwines(m, x ** 2)
    assert intertwines(m, x ** (2 * m + 1))


def test_report():
    rep = ba_report(2)
    assert rep.ok and rep.P == _kx("k^2*x^2 - 3*k*x + 3")
    assert set(rep.intertwining) == {"x^2", "x^5"}


def test_exp_polynomial_derivative():
    W = build_group("A1")
    alg = algebra(W)
    F = ExpPolynomial.from_poly(W, _kx("x"))
    out = F.apply(alg.partial((1,)))
    assert out.poly_part() == _kx("k*x + 1")
    with pytest.raises(UsageError):
        ExpPolynomial.from_poly(W, MultiPoly.one(3))


def test_exp_polynomial_reflection():
    W = build_group("A1")
    s = algebra(W).group_element(W.reflections[0])
    F = ExpPolynomial.exponential(W).apply(s)
    assert len(F.terms) == 1 and list(F.terms) == [((Fraction(-1),),)]
    assert F.apply(s) == ExpPolynomial.exponential(W)
