from fractions import Fraction

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given

from hopfcyc.linalg import (CompositeNotZero, SparseMatrix, cohomology_dim, cohomology_map_rank, image_basis,
                            kernel_basis, quotient, rank, rref, solve)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6, density=0.5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(rationals) if draw(st.floats(0, 1)) < density else Fraction(0) for _ in range(c)]
            for _ in range(r)]
    return rows


def sym(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(SparseMatrix.from_dense(rows)) == sym(rows).rank()


@given(matrices())
def test_rref_matches_sympy(rows):
    R, pivots, r = rref(SparseMatrix.from_dense(rows))
    S, spiv = sym(rows).rref()
    assert list(pivots) == list(spiv)
    got = R.to_dense()
    for i in range(len(spiv)):
        assert [sympy.Rational(x.numerator, x.denominator) for x in got[i]] == list(S.row(i))


@given(matrices())
def test_kernel_basis(rows):
    M = SparseMatrix.from_dense(rows)
    K = kernel_basis(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert not M.apply(v)
    if K:
        assert rank(SparseMatrix.from_columns(K, M.cols)) == len(K)


@given(matrices(), st.lists(rationals, min_size=6, max_size=6))
def test_solve_consistent(rows, xs):
    M = SparseMatrix.from_dense(rows)
    x0 = {i: c for i, c in enumerate(xs[:M.cols]) if c}
    b = M.apply(x0)
    x = solve(M, b)
    assert x is not None and M.apply(x) == b


def test_solve_inconsistent():
    M = SparseMatrix.from_dense([[1, 1], [2, 2]])
    assert solve(M, {0: Fraction(1), 1: Fraction(3)}) is None


@given(matrices())
def test_image_rank(rows):
    M = SparseMatrix.from_dense(rows)
    assert image_basis(M).rank == rank(M)


def test_transpose_and_product():
    A = SparseMatrix.from_dense([[1, 2, 0], [0, 1, 3]])
    B = SparseMatrix.from_dense([[1, 0], [0, 1], [1, 1]])
    assert (A @ B).to_dense() == [[1, 2], [3, 4]]
    assert A.transpose().transpose() == A


def test_cohomology_dim_circle():
    # cellular complex of a circle with one vertex and one edge: H0 = H1 = 1
    d0 = SparseMatrix.zero(1, 0)
    d1 = SparseMatrix.zero(1, 1)
    assert cohomology_dim(d0, d1) == 1


def test_composite_not_zero():
    d = SparseMatrix.from_dense([[1]])
    with pytest.raises(CompositeNotZero):
        cohomology_dim(d, d)


@given(st.lists(st.dictionaries(st.integers(0, 5), rationals, max_size=3), max_size=4))
def test_quotient_projection(rels):
    Q = quotient(6, rels)
    assert Q.dim == 6 - rank(SparseMatrix.from_columns(rels, 6)) if rels else Q.dim == 6
    for r in rels:
        assert not Q.project(r)
    for i, c in enumerate(Q.representative_columns):
        assert Q.project({c: Fraction(1)}) == {i: Fraction(1)}


def test_cohomology_map_rank_identity():
    # 0 -> Q -0-> Q -> 0, identity chain map: rank on H is 1
    z = SparseMatrix.zero(1, 1)
    assert cohomology_map_rank(SparseMatrix.identity(1), z, z, z) == 1
    assert cohomology_map_rank(SparseMatrix.zero(1, 1), z, z, z) == 0
