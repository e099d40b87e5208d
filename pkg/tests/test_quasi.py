from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quasiinv.coxeter import build_group
from quasiinv.errors import UsageError
from quasiinv.exact.poly import MultiPoly, divide_by_linear_power, parse_poly
from quasiinv.quasi import (QuasiInvariantProblem, cusp_relation_holds, delta_check, delta_poly,
                            graded_basis, hilbert_direct, is_quasi_invariant, separating_polynomial)


def _x(text):
    return parse_poly(text, 1, ["x"])


def test_a1_membership():
    P = QuasiInvariantProblem(build_group("A1"), 1)
    assert is_quasi_invariant(_x("x^3"), P)
    assert not is_quasi_invariant(_x("x"), P)
    assert is_quasi_invariant(_x("x^2 + 5"), P)


def test_a1_basis_dims():
    P = QuasiInvariantProblem(build_group("A1"), 1, 4)
    assert hilbert_direct(P) == [1, 0, 1, 1, 1]
    assert graded_basis(P)[3] == [_x("x^3")]


def test_a1_direct_series_m2():
    assert hilbert_direct(QuasiInvariantProblem(build_group("A1"), 2, 6)) == [1, 0, 1, 0, 1, 1, 1]


def test_orbit_count_mismatch():
    with pytest.raises(UsageError, match="orbit"):
        QuasiInvariantProblem(build_group("B2"), (1,))
    with pytest.raises(UsageError):
        QuasiInvariantProblem(build_group("A1"), (-1,))


def test_rank_mismatch():
    with pytest.raises(UsageError):
        is_quasi_invariant(parse_poly("x1*x2", 2), QuasiInvariantProblem(build_group("A1"), 1))


# independent oracle: sympy in Euclidean coordinates with sqrt(3) root entries,
# counting solutions of "odd u-coefficients below 2m+1 vanish" per reflection
I23_ORACLE = {1: [1, 0, 1, 1, 3, 3, 4, 5, 6], 2: [1, 0, 1, 1, 1, 1, 2, 3, 4]}


@pytest.mark.parametrize("m", [1, 2])
def test_i23_against_frozen_oracle(m):
    assert hilbert_direct(QuasiInvariantProblem(build_group("I2(3)"), m, 8)) == I23_ORACLE[m]


def _sympy_dims(m, N):
    x1, x2, v = sympy.symbols("x1 x2 v")
    s3 = sympy.sqrt(3)
    roots = [(1, 0), (-sympy.Rational(1, 2), s3 / 2), (-sympy.Rational(1, 2), -s3 / 2)]
    out = []
    for r in range(N + 1):
        cs = sympy.symbols(f"c0:{r + 1}")
        q = sum(c * x1 ** i * x2 ** (r - i) for i, c in enumerate(cs))
        eqs = []
        for a in roots:
            b = (-a[1], a[0])
            d = q
            for j in range(1, 2 * m + 1):
                d = a[0] * sympy.diff(d, x1) + a[1] * sympy.diff(d, x2)
                if j % 2:
                    e = sympy.expand(d.subs({x1: v * b[0], x2: v * b[1]}, simultaneous=True))
                    if e != 0:
                        eqs += sympy.Poly(e, v).all_coeffs()
        if eqs:
            M = sympy.Matrix([[sympy.diff(e, c) for c in cs] for e in eqs])
            out.append(r + 1 - M.rank(simplify=True))
        else:
            out.append(r + 1)
    return out


def test_oracle_is_live():
    assert _sympy_dims(1, 5) == I23_ORACLE[1][:6]


def test_m0_is_full_ring():
    for g in ("A2", "B3"):
        W = build_group(g)
        assert hilbert_direct(QuasiInvariantProblem(W, 0, 5)) == [comb(r + W.rank - 1, r) for r in range(6)]


def test_separation_examples():
    P = QuasiInvariantProblem(build_group("A1"), 1)
    p = separating_polynomial([1], [2], P)
    assert p == _x("x^4 - 2*x^3")
    assert p.evaluate([1]) == -1 and p.evaluate([2]) == 0
    q = separating_polynomial([0], [1], P)
    assert q == _x("-x^2 + 1")
    with pytest.raises(UsageError):
        separating_polynomial([1], [1], P)


def test_separation_generic_point_divisible_by_delta():
    W = build_group("B2")
    P = QuasiInvariantProblem(W, (1, 2))
    p = separating_polynomial([Fraction(1, 3), Fraction(2, 7)], [1, -1], P)
    assert is_quasi_invariant(p, P)
    for k, ms in enumerate(P.per_reflection):
        assert divide_by_linear_power(p, W.root_forms[k], 2 * ms + 1) is not None


def test_separation_on_mirror():
    W = build_group("I2(3)")
    P = QuasiInvariantProblem(W, 1)
    z = [0, 1]          # fixed by one reflection
    assert any(W.root_form_poly(k).evaluate(z) == 0 for k in range(W.n_reflections))
    p = separating_polynomial(z, [1, 2], P)
    assert p.evaluate(z) != 0 and p.evaluate([1, 2]) == 0
    assert is_quasi_invariant(p, P)


def test_delta_check():
    A1 = build_group("A1")
    P = QuasiInvariantProblem(A1, 1)
    assert delta_poly(P) == _x("x^3")
    assert delta_check(P, MultiPoly.one(1))
    assert delta_check(P, _x("x"))
    assert not is_quasi_invariant(_x("x"), P)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=10, max_size=10))
def test_delta_check_i23(coeffs):
    W = build_group("I2(3)")
    P = QuasiInvariantProblem(W, 1)
    f = MultiPoly(2, {e: Fraction(c) for e, c in zip(
        [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)], coeffs)})
    assert delta_check(P, f)


def test_cusp_relation():
    for m in range(5):
        assert cusp_relation_holds(m)
        P = QuasiInvariantProblem(build_group("A1"), m)
        assert is_quasi_invariant(_x("x^2"), P)
        assert is_quasi_invariant(MultiPoly.var(1, 0) ** (2 * m + 1), P)


CELLS = [("A1", (2,)), ("I2(3)", (1,)), ("B2", (1, 0)), ("B2", (1, 1)), ("I2(5)", (1,))]


def _basis_list(g, m, N=6):
    B = graded_basis(QuasiInvariantProblem(build_group(g), m, N))
    return [p for r in range(N + 1) for p in B[r]]


@pytest.mark.parametrize("g,m", CELLS)
@settings(max_examples=10, deadline=None)
@given(data=st.data())
def test_ring_closure(g, m, data):
    basis = _basis_list(g, m)
    P = QuasiInvariantProblem(build_group(g), m)
    p = data.draw(st.sampled_from(basis))
    q = data.draw(st.sampled_from(basis))
    a = Fraction(data.draw(st.integers(-3, 3)))
    assert is_quasi_invariant(p * q + q.scale(a), P)


@pytest.mark.parametrize("g,m,smaller", [("A1", (2,), [(1,), (0,)]), ("B2", (2, 1), [(1, 1), (2, 0), (0, 1)]),
                                         ("I2(3)", (2,), [(1,)])])
def test_nesting(g, m, smaller):
    W = build_group(g)
    for p in _basis_list(g, m, 7):
        for m2 in smaller:
            assert is_quasi_invariant(p, QuasiInvariantProblem(W, m2))


@pytest.mark.parametrize("g", ["A2", "B2", "I2(5)", "A3"])
def test_invariants_embed(g):
    W = build_group(g)
    q = W.quadratic_invariant
    invs = [q, q * q, q ** 3 + q.scale(Fraction(2, 3))]
    for m in range(4):
        for mm in {(m,) * len(W.orbits), tuple(range(m, m + len(W.orbits)))}:
            P = QuasiInvariantProblem(W, mm)
            assert all(is_quasi_invariant(f, P) for f in invs)


@pytest.mark.parametrize("g,m", [("I2(3)", (2,)), ("B2", (2, 1)), ("I2(6)", (1, 1)), ("A3", (1,))])
def test_degree_forcing(g, m):
    W = build_group(g)
    bound = min(2 * x + 1 for x in m if x > 0)
    direct = hilbert_direct(QuasiInvariantProblem(W, m, bound - 1))
    invariant = [int(c) for c in W.molien_series().series(bound - 1)]
    assert direct == invariant


@pytest.mark.parametrize("g,m", CELLS)
def test_basis_is_invariant_under_w(g, m):
    W = build_group(g)
    P = QuasiInvariantProblem(W, m)
    for p in _basis_list(g, m, 5):
        for w in W.generator_indices:
            assert is_quasi_invariant(W.act(w, p), P)
