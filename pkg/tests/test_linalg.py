from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from slab.linalg import RationalMatrix, kernel_basis, rank, solve
from slab.quadratic import qr

import oracles

entries = st.integers(-3, 3)


@st.composite
def matrices(draw):
    r, c = draw(st.integers(1, 6)), draw(st.integers(1, 7))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


def labelled(rows):
    return RationalMatrix(rows, tuple(range(len(rows))), tuple(range(len(rows[0]))))


@settings(max_examples=150)
@given(matrices())
def test_rank_agrees_with_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=150)
@given(matrices())
def test_kernels_agree_with_sympy(rows):
    M = labelled(rows)
    right = kernel_basis(M)
    left = kernel_basis(M, "left")
    assert right.dimension == len(sympy.Matrix(rows).nullspace()) == oracles.nullity(rows, len(rows[0]))
    assert left.dimension == len(sympy.Matrix(rows).T.nullspace())
    for v in right.basis:
        assert all(x == 0 for x in M.matvec(v))
    for x in left.basis:
        assert all(s == 0 for s in M.transpose().matvec(x))
    # basis vectors are independent
    if right.basis:
        assert rank([list(v) for v in right.basis]) == right.dimension


def test_kernel_json_uses_exact_strings():
    M = labelled([[1, -2]])
    k = kernel_basis(M)
    assert k.to_json()["basis"] == [["2/1", "1/1"]]


@settings(max_examples=80)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.fractions(-5, 5, max_denominator=7), min_size=n, max_size=n))))
def test_solve_over_fractions(args):
    a, x = args
    if sympy.Matrix(a).rank() < len(a):
        with pytest.raises(ValueError):
            solve(a, [0] * len(a))
        return
    b = [sum(Fraction(c) * xi for c, xi in zip(row, x)) for row in a]
    assert solve(a, b) == x


def test_solve_over_a_quadratic_field():
    phi = qr("1/2+1/2*sqrt(5)")
    assert solve([[1, 1], [1, -1]], [phi, phi - 2]) == [phi - 1, qr(1)]
    with pytest.raises(ValueError, match="inconsistent"):
        solve([[1], [1]], [1, 2])


def test_matrix_helpers():
    M = labelled([[1, 0, -1], [-1, 1, 0], [0, -1, 1]])
    assert M.column_sums() == [0, 0, 0]
    assert (M - M).to_int_rows() == [[0] * 3] * 3
    assert M.transpose().shape == (3, 3)
