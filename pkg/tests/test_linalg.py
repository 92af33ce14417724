from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from incmackey.linalg import (Mat, block_diag, column_basis, frac, free_coordinates, hstack, image,
                              nullspace, quotient_map, rref, solve, vstack)

small = st.integers(-3, 3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_frac_normalizes_integral_values():
    assert frac(Fraction(4, 2)) == 2 and type(frac(Fraction(4, 2))) is int
    assert frac("3/6") == Fraction(1, 2)
    assert type(frac(True)) is int


def test_identity_and_inverse():
    m = Mat([[2, 1], [1, 1]])
    assert m @ m.inverse() == Mat.identity(2)
    with pytest.raises(ZeroDivisionError):
        Mat([[1, 2], [2, 4]]).inverse()


def test_empty_matrices_keep_their_width():
    z = Mat.zeros(0, 3)
    assert (Mat.zeros(2, 0) @ z).shape == (2, 3)
    with pytest.raises(ValueError):
        Mat([])


def test_stacking():
    a, b = Mat([[1, 2]]), Mat([[3, 4]])
    assert vstack([a, b], 2) == Mat([[1, 2], [3, 4]])
    assert hstack([a, b], 1) == Mat([[1, 2, 3, 4]])
    assert block_diag([a, b]) == Mat([[1, 2, 0, 0], [0, 0, 3, 4]])


@given(matrices())
def test_nullspace_is_killed_and_has_the_right_size(rows):
    m = Mat(rows)
    ns = nullspace(m)
    for v in ns:
        assert all(x == 0 for x in m.apply(v))
    assert len(ns) + m.rank() == m.ncols


@given(matrices())
def test_rref_rank_matches_transpose(rows):
    m = Mat(rows)
    assert m.rank() == m.T.rank()
    red, piv = rref(m.rows, m.ncols)
    assert piv == sorted(piv)
    for r, p in zip(red, piv):
        assert r[p] == 1 and all(x == 0 for x in r[:p])


@given(matrices())
def test_image_columns_span_the_column_space(rows):
    m = Mat(rows)
    im = image(m)
    assert im.ncols == m.rank() == len(column_basis(m))
    # every column of m is a combination of the chosen ones
    x = solve(im, m)
    assert im @ x == m


@given(matrices(4, 6), st.lists(small, min_size=6, max_size=6))
def test_quotient_map_kills_relations(rows, extra):
    dim = len(rows[0])
    q, free = quotient_map(rows, dim)
    for r in rows:
        assert all(x == 0 for x in q.apply(r))
    assert q.nrows == dim - Mat(rows).rank()
    for i, f in enumerate(free):
        unit = [0] * dim
        unit[f] = 1
        assert q.apply(unit) == tuple(int(j == i) for j in range(len(free)))


def test_free_coordinates_accepts_sparse_rows():
    free, coords = free_coordinates([{0: 1, 2: -1}, {1: 2, 2: -2}], 3)
    assert free == [2]
    assert coords == [{0: 1}, {0: 1}, {0: 1}]
