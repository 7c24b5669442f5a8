from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from nleibniz import linalg
from nleibniz.errors import Inconsistent, NotSymmetric
from nleibniz.linalg import EchelonSpan, RatMatrix

from conftest import invertible, matrices, rationals


def M(rows):
    return RatMatrix.from_rows([[Fraction(x) for x in r] for r in rows])


def test_rational_text_form():
    assert linalg.parse_rational("3/6") == Fraction(1, 2)
    assert linalg.parse_rational("-7") == -7
    assert linalg.render_rational(Fraction(-2, 4)) == "-1/2"
    assert linalg.render_rational(Fraction(5)) == "5"
    for bad in ["1/0", " 1", "1.5", "+2", "1/-2", "", "a"]:
        with pytest.raises(ValueError):
            linalg.parse_rational(bad)


@given(rationals)
def test_rational_roundtrip(q):
    assert linalg.parse_rational(linalg.render_rational(q)) == q


def test_rref_examples():
    r, piv, rk = linalg.rref(RatMatrix.identity(2))
    assert (r, piv, rk) == (RatMatrix.identity(2), [0, 1], 2)
    r, piv, rk = linalg.rref(M([[1, 2], [2, 4]]))
    assert r == M([[1, 2], [0, 0]]) and piv == [0] and rk == 1


def test_nullspace_examples():
    assert linalg.nullspace(RatMatrix.identity(3)) == []
    assert len(linalg.nullspace(RatMatrix.zeros(3, 3))) == 3
    assert linalg.nullspace(M([[1, 1]])) == [(Fraction(-1), Fraction(1))]


def test_solve_examples():
    b = (Fraction(3), Fraction(-1, 2))
    assert linalg.solve(RatMatrix.identity(2), b) == b
    with pytest.raises(Inconsistent):
        linalg.solve(M([[1, 1], [1, 1]]), (1, 2))


def test_signature_examples():
    assert linalg.signature(RatMatrix.identity(3)) == (3, 0, 0)
    assert linalg.signature(RatMatrix.zeros(2, 2)) == (0, 0, 2)
    # zero diagonal repair
    assert linalg.signature(M([[0, 1], [1, 0]])) == (1, 1, 0)
    with pytest.raises(NotSymmetric):
        linalg.signature(M([[0, 1], [0, 0]]))


def test_inverse_and_singular():
    m = M([[2, 1], [1, 1]])
    assert m @ linalg.inverse(m) == RatMatrix.identity(2)
    with pytest.raises(Inconsistent):
        linalg.inverse(M([[1, 2], [2, 4]]))


def test_matrix_is_immutable():
    m = RatMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.rows = 3


def test_coordinates_outside_span():
    basis = [(1, 0, 0), (0, 1, 0)]
    assert linalg.coordinates(basis, [(2, 3, 0)]) == [(2, 3)]
    with pytest.raises(Inconsistent):
        linalg.coordinates(basis, [(0, 0, 1)])


@given(matrices())
def test_rref_idempotent_and_unique(m):
    r, piv, rk = linalg.rref(m)
    assert linalg.rref(r)[0] == r
    assert rk == len(piv)
    # oracle: sympy's exact rref
    sr, spiv = sympy.Matrix(m.to_rows()).rref()
    assert r == RatMatrix.from_rows([[Fraction(int(x.p), int(x.q)) for x in sr.row(i)]
                                     for i in range(sr.rows)], m.cols)
    assert list(spiv) == piv


@given(matrices())
def test_nullspace_properties(m):
    basis = linalg.nullspace(m)
    for v in basis:
        assert not any(m.apply(v))
    assert len(basis) + linalg.rank(m) == m.cols
    if basis:
        assert linalg.rank(RatMatrix.from_rows(basis, m.cols)) == len(basis)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), invertible(n))))
def test_signature_congruence_invariant(pair):
    a, p = pair
    s = a + a.transpose()
    assert linalg.signature(s) == linalg.signature(p.transpose() @ s @ p)
    pos, neg, zero = linalg.signature(s)
    assert pos + neg + zero == s.rows and zero == s.rows - linalg.rank(s)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n), matrices(n, n))))
def test_ring_axioms(triple):
    a, b, c = triple
    n = a.rows
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert a @ RatMatrix.identity(n) == a == RatMatrix.identity(n) @ a
    assert (a @ b).transpose() == b.transpose() @ a.transpose()


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), max_size=6), st.lists(rationals, min_size=4, max_size=4))
def test_echelon_span_membership(rows, probe):
    span = EchelonSpan(4)
    for r in rows:
        span.add(r)
    stacked = RatMatrix.from_rows(rows, 4) if rows else RatMatrix.zeros(0, 4)
    assert len(span) == linalg.rank(stacked)
    with_probe = RatMatrix.from_rows(rows + [probe], 4)
    assert (probe in span) == (linalg.rank(with_probe) == len(span))


def test_float_rank_oracle_for_d_columns(a4):
    # columns D(e_i, e_j) e_1 over all 16 tuples, cross-checked in floating point
    from nleibniz.correspondence import basis_tuples, d_basis

    cols = [d_basis(a4, t).col(0) for t in basis_tuples(4, 2)]
    exact = linalg.rank(RatMatrix.from_columns(cols, 4))
    approx = np.linalg.matrix_rank(np.array([[float(x) for x in c] for c in cols]).T)
    assert exact == approx == 3
