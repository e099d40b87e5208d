from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasiinv.coxeter import build_group
from quasiinv.errors import UsageError
from quasiinv.exact.localized import LocalizedPoly
from quasiinv.exact.poly import MultiPoly, monomials_of_degree, parse_poly
from quasiinv.operators import (Coupling, algebra, apply, berest_integral, calogero_moser,
                                cherednik_relation_check, cm_gauge_operator, cm_hamiltonian,
                                commutator, compose, dunkl, dunkl_basis, dunkl_square_sum,
                                expected_sl2_constant, laplacian, negative_control,
                                restrict_invariants, sl2_triple, spherical_project)
from quasiinv.quasi import QuasiInvariantProblem, graded_basis, is_quasi_invariant

A1 = build_group("A1")
ALG = algebra(A1)
S = A1.reflections[0]
X = ALG.function(MultiPoly.var(1, 0))
DX = ALG.partial((1,))


def _inv_x(k=1, c=1):
    return ALG.function(LocalizedPoly.inverse_form(ALG.ctx, 0, k, c))


def _x(text):
    return parse_poly(text, 1, ["x"])


# -- rank one hand computations ----------------------------------------------


def test_leibniz():
    assert DX * X == X * DX + ALG.identity()
    assert commutator(DX, X) == ALG.identity()


def test_reflection_past_functions():
    s = ALG.group_element(S)
    assert s * X == (X * s).scale(-1)
    assert s * _inv_x() == (_inv_x() * s).scale(-1)
    assert s * s == ALG.identity()


def test_a1_dunkl_terms():
    c = Fraction(2, 5)
    D = dunkl(A1, [1], c)
    assert D == DX + _inv_x(1, c) * ALG.group_element(S) - _inv_x(1, c)
    assert sum(len(p) for p in D.terms.values()) == 3
    assert dunkl(A1, [1], 0) == DX


def test_a1_dunkl_commutator_with_x():
    c = Fraction(1, 3)
    D = dunkl(A1, [1], c)
    assert commutator(D, X) == ALG.identity() - ALG.group_element(S).scale(2 * c)


def test_a1_dunkl_action():
    c = Fraction(3, 7)
    D = dunkl(A1, [1], c)
    assert apply(D, _x("x^2")).to_poly() == _x("2*x")
    assert apply(D, _x("x")).to_poly() == MultiPoly.constant(1, 1 - 2 * c)
    f = LocalizedPoly.from_poly(ALG.ctx, _x("x^3 - 4"))
    assert apply(ALG.identity(), f) == f


def test_operator_text():
    L = cm_gauge_operator(A1, 1)
    assert L.to_text() == "(1)∂x^2 + (-2/x)∂x [e]"


def test_rank1_calogero_moser():
    cm = calogero_moser(A1, 1)
    assert cm.L == DX * DX + _inv_x(1, -2) * DX
    assert cm.H == DX * DX + _inv_x(2, -2)


@pytest.mark.parametrize("g", ["A1", "A2", "B2", "I2(5)"])
def test_c_zero_is_laplacian(g):
    W = build_group(g)
    c = (0,) * len(W.orbits)
    assert cm_hamiltonian(W, c) == cm_gauge_operator(W, c) == laplacian(W)
    for D, i in zip(dunkl_basis(W, c), range(W.rank)):
        assert D == algebra(W).partial(tuple(int(j == i) for j in range(W.rank)))


def test_i23_gauge():
    cm = calogero_moser(build_group("I2(3)"), 1)
    assert cm.gauge_ok and cm.restriction_ok


@pytest.mark.parametrize("g,c", [("B2", (Fraction(1, 2), 3)), ("A3", (Fraction(-2, 3),)), ("I2(5)", (1,))])
def test_calogero_moser_assembly(g, c):
    W = build_group(g)
    assert restrict_invariants(dunkl_square_sum(W, c)) == cm_gauge_operator(W, c)


def test_coupling_count():
    with pytest.raises(UsageError):
        Coupling.of(build_group("B2"), (1,))


# -- restriction -------------------------------------------------------------


@pytest.mark.parametrize("g", ["A2", "B2", "I2(5)"])
def test_restriction_basics(g):
    W = build_group(g)
    alg = algebra(W)
    c = tuple(Fraction(k + 1, 3) for k in range(len(W.orbits)))
    for i, D in enumerate(dunkl_basis(W, c)):
        assert restrict_invariants(D) == alg.partial(tuple(int(j == i) for j in range(W.rank)))
    for w in range(W.order):
        assert restrict_invariants(alg.group_element(w)) == alg.identity()


def _symmetrize(W, A):
    alg = A.alg
    out = alg.zero()
    for w in range(W.order):
        out = out + alg.group_element(w) * A * alg.group_element(W.inv[w])
    return out.scale(Fraction(1, W.order))


@pytest.mark.parametrize("g", ["A1", "A2", "B2"])
def test_restriction_homomorphism(g):
    W = build_group(g)
    alg = algebra(W)
    c = tuple(Fraction(2 * k + 1, 2) for k in range(len(W.orbits)))
    D = dunkl_basis(W, c)
    x = [alg.function(MultiPoly.var(W.rank, i)) for i in range(W.rank)]
    A = _symmetrize(W, D[0] * D[-1])
    B = _symmetrize(W, x[0] * D[0] + x[-1] * x[-1])
    for P, Q in [(A, B), (B, A), (dunkl_square_sum(W, c), B)]:
        assert restrict_invariants(P * Q) == restrict_invariants(P) * restrict_invariants(Q)


def test_restriction_agrees_on_invariants():
    W = build_group("B2")
    c = (Fraction(1, 3), 2)
    A = dunkl_square_sum(W, c)
    q = W.quadratic_invariant
    for f in (q, q * q, q ** 3 + q.scale(5)):
        assert apply(A, f) == apply(restrict_invariants(A), f)


# -- normal form consistency -------------------------------------------------


def _generators(W, c):
    alg = algebra(W)
    gens = dunkl_basis(W, c)
    gens += [alg.function(MultiPoly.var(W.rank, i)) for i in range(W.rank)]
    gens += [alg.group_element(w) for w in W.generator_indices]
    gens.append(alg.function(LocalizedPoly.inverse_form(alg.ctx, 0, 1)))
    return gens


@pytest.mark.parametrize("g", ["A1", "A2", "B2"])
@settings(max_examples=12, deadline=None)
@given(data=st.data())
def test_associativity_and_action(g, data):
    W = build_group(g)
    gens = _generators(W, tuple(Fraction(1, k + 2) for k in range(len(W.orbits))))
    pick = st.integers(0, len(gens) - 1)
    A, B, C = (gens[data.draw(pick)] * gens[data.draw(pick)] for _ in range(3))
    assert compose(compose(A, B), C) == compose(A, compose(B, C))
    e = tuple(data.draw(st.integers(0, 3)) for _ in range(W.rank))
    f = MultiPoly(W.rank, {e: Fraction(1)}) + MultiPoly.one(W.rank)
    assert apply(A * B, f) == apply(A, apply(B, f))
    assert (A * B).order <= A.order + B.order


@pytest.mark.parametrize("g", ["A2", "B2", "I2(5)"])
def test_dunkl_linearity(g):
    W = build_group(g)
    c = tuple(Fraction(3, k + 4) for k in range(len(W.orbits)))
    y, z = [1, 2], [Fraction(-1, 2), 3]
    assert dunkl(W, [a + b for a, b in zip(y, z)], c) == dunkl(W, y, c) + dunkl(W, z, c)
    assert dunkl(W, [3 * a for a in y], c) == dunkl(W, y, c).scale(3)


@pytest.mark.parametrize("g", ["A2", "B2", "A3", "B3", "I2(5)"])
@settings(max_examples=3, deadline=None)
@given(st.data())
def test_dunkl_flatness(g, data):
    W = build_group(g)
    c = tuple(Fraction(data.draw(st.integers(-6, 6)), data.draw(st.integers(1, 5))) for _ in W.orbits)
    D = dunkl_basis(W, c)
    for i in range(len(D)):
        for j in range(i + 1, len(D)):
            assert not commutator(D[i], D[j])


@pytest.mark.parametrize("g", ["A2", "B2"])
def test_dunkl_preserves_polynomials(g):
    W = build_group(g)
    c = tuple(Fraction(5, 3) for _ in W.orbits)
    for D in dunkl_basis(W, c):
        for f in (parse_poly("x1^3*x2 - x2^2", 2), parse_poly("x1^4 + 2*x1*x2^3", 2)):
            assert apply(D, f).is_polynomial()


# -- Berest integrals --------------------------------------------------------


def test_berest_a1_examples():
    assert berest_integral(A1, _x("x^2"), 1).Lq == DX * DX + _inv_x(1, -2) * DX
    L3 = berest_integral(A1, _x("x^3"), 1).Lq
    assert L3 == DX ** 3 + _inv_x(1, -3) * DX * DX + _inv_x(2, 3) * DX
    assert negative_control(A1, _x("x"), 1) == _inv_x(3, -8)


def test_berest_rejects_non_quasi_invariant():
    with pytest.raises(UsageError, match="not in Q_m"):
        berest_integral(A1, _x("x"), 1)
    with pytest.raises(UsageError):
        berest_integral(A1, _x("x^3 + x^2"), 1)


@pytest.mark.parametrize("g,m", [("A1", (2,)), ("A2", (1,)), ("B2", (1, 2)), ("I2(5)", (1,))])
def test_berest_of_quadratic_is_L(g, m):
    W = build_group(g)
    assert berest_integral(W, W.quadratic_invariant, m).Lq == cm_gauge_operator(W, m)


def _low_basis(g, m, d):
    B = graded_basis(QuasiInvariantProblem(build_group(g), m, d))
    return [q for r in range(1, d + 1) for q in B[r]]


@pytest.mark.parametrize("g,m,d", [("A1", (1,), 5), ("I2(3)", (1,), 4), ("B2", (1, 0), 4)])
def test_integrals_commute(g, m, d):
    W = build_group(g)
    ops = [berest_integral(W, q, m).Lq for q in _low_basis(g, m, d)]
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            assert not commutator(ops[i], ops[j])


@pytest.mark.parametrize("g,m,d", [("A1", (1,), 5), ("I2(3)", (1,), 4)])
def test_ad_f_nilpotency(g, m, d):
    W = build_group(g)
    F = algebra(W).function(W.quadratic_invariant).scale(Fraction(1, 2))
    for q in _low_basis(g, m, d):
        X = berest_integral(W, q, m).Lq
        for _ in range(q.degree + 1):
            X = commutator(F, X)
        assert not X


def test_integral_eigen_on_polynomials():
    # L_q q' stays in Q_m and agrees with the operator identity [L_q, L_q'] = 0 applied to test functions
    W = build_group("I2(3)")
    P = QuasiInvariantProblem(W, 1, 8)
    ops = [berest_integral(W, q, (1,)).Lq for q in _low_basis("I2(3)", (1,), 3)]
    for r, basis in graded_basis(P).items():
        for f in basis:
            for A in ops:
                out = apply(A, f)
                assert out.is_polynomial() and is_quasi_invariant(out.num, P)
            assert apply(ops[0] * ops[-1], f) == apply(ops[-1] * ops[0], f)


# -- sl(2) -------------------------------------------------------------------


def test_sl2_rank_one():
    for c in (Fraction(1, 3), Fraction(0), Fraction(-5, 2), Fraction(4)):
        assert sl2_triple(A1, c).C == c - Fraction(1, 2)


@pytest.mark.parametrize("g", ["A2", "A3", "B2", "B3", "I2(5)"])
def test_sl2_constant(g):
    W = build_group(g)
    assert sl2_triple(W, (0,) * len(W.orbits)).C == Fraction(-W.rank, 2)
    c = tuple(Fraction(k + 1, 5) for k in range(len(W.orbits)))
    assert sl2_triple(W, c).C == expected_sl2_constant(W, c)


@pytest.mark.parametrize("g,m", [("A1", (1,)), ("B2", (1, 1))])
def test_lowest_weight(g, m):
    W = build_group(g)
    tr = sl2_triple(W, m)
    alg = algebra(W)
    for q in _low_basis(g, m, 4):
        Q = alg.function(q)
        assert not commutator(tr.F, Q)
        assert commutator(tr.H, Q) == Q.scale(-q.degree)


# -- Cherednik ---------------------------------------------------------------


def test_cherednik_a1():
    c = Fraction(2, 3)
    rep = cherednik_relation_check(A1, c)
    assert rep.ok
    assert rep.coefficients[(0, 0, 0)] == -2 * c
    assert rep.ratio_to_displayed == {Fraction(-2)}


@pytest.mark.parametrize("g", ["A2", "B2", "A3", "I2(5)", "I2(6)"])
def test_cherednik_relations(g):
    W = build_group(g)
    rep = cherednik_relation_check(W, tuple(Fraction(k + 2, 3) for k in range(len(W.orbits))))
    assert rep.ok and rep.equivariant and rep.x_commute and rep.dunkl_commute


def test_pbw_shadow_a1():
    rep = cherednik_relation_check(A1, Fraction(1, 2), pbw=True, pbw_degree=6)
    assert rep.pbw["words_agree"] and rep.pbw["independent"]


# -- spherical idempotent ----------------------------------------------------


def test_spherical():
    assert spherical_project(A1, _x("x")) == MultiPoly.zero(1)
    assert spherical_project(A1, _x("x^2 + x")) == _x("x^2")
    W = build_group("B2")
    q = W.quadratic_invariant
    assert spherical_project(W, q) == q
    for r in range(7):
        for e in monomials_of_degree(2, r):
            f = MultiPoly(2, {e: Fraction(1)})
            once = spherical_project(W, f)
            assert spherical_project(W, once) == once
            assert all(W.act(w, once) == once for w in W.generator_indices)
