import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superdext.linalg import (
    Subspace,
    format_fraction,
    identity,
    inverse,
    kernel_basis,
    matmul,
    matrix,
    matvec,
    rank,
    rref,
    solve,
    subspace_intersect,
    subspace_sum,
    to_fraction,
    zeros,
)

small = st.integers(min_value=-3, max_value=3)


def mats(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rref_examples():
    assert rref(identity(2), 2) == (identity(2), 2, [0, 1])
    assert rref(zeros(2, 2), 2) == (zeros(2, 2), 0, [])
    r, k, piv = rref(matrix([[1, 2], [2, 4]]), 2)
    assert r == matrix([[1, 2], [0, 0]]) and k == 1 and piv == [0]


def test_kernel_examples():
    assert kernel_basis(identity(3), 3) == []
    assert len(kernel_basis(zeros(2, 3), 3)) == 3
    (v,) = kernel_basis(matrix([[1, 1]]), 2)
    assert v[0] == -v[1] != 0


def test_solve_examples():
    b = (Fraction(3), Fraction(-1, 2))
    assert solve(identity(2), b, 2) == b
    assert solve(matrix([[1, 1]]), (Fraction(1),), 2) == (1, 0)
    assert solve(matrix([[0]]), (Fraction(1),), 1) is None


def test_subspace_examples():
    u = Subspace.span(2, [(1, 0)])
    assert u + Subspace.zero(2) == u
    assert (Subspace.span(2, [(1, 0)]) & Subspace.span(2, [(0, 1)])).dim == 0
    cap = subspace_intersect(Subspace.whole(2), Subspace.span(2, [(1, 1)]))
    assert cap == Subspace.span(2, [(2, 2)])


@settings(max_examples=80, deadline=None)
@given(mats())
def test_rref_idempotent_and_rank_nullity(rows):
    m = matrix(rows)
    cols = len(rows[0])
    r, k, _ = rref(m, cols)
    assert rref(r, cols)[0] == r
    ker = kernel_basis(m, cols)
    assert k + len(ker) == cols
    for v in ker:
        assert all(x == 0 for x in matvec(m, v))


@settings(max_examples=60, deadline=None)
@given(mats(3, 4), mats(3, 4))
def test_dimension_formula(a, b):
    d = 4
    u = Subspace.span(d, [r + [0] * (d - len(r)) for r in a])
    v = Subspace.span(d, [r + [0] * (d - len(r)) for r in b])
    assert u.dim + v.dim == subspace_sum(u, v).dim + subspace_intersect(u, v).dim
    assert u.contains_subspace(u & v) and (u + v).contains_subspace(v)


def test_inverse_round_trip():
    rng = random.Random(3)
    for _ in range(30):
        m = matrix([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)])
        if rank(m) < 4:
            with pytest.raises(ValueError):
                inverse(m)
            continue
        assert matmul(m, inverse(m)) == identity(4)


def test_rationals_parse_and_print():
    assert to_fraction("-6/4") == Fraction(-3, 2)
    assert format_fraction(Fraction(-3, 2)) == "-3/2"
    assert format_fraction(Fraction(4, 2)) == "2"
    with pytest.raises(ZeroDivisionError):
        to_fraction("1/0")
    with pytest.raises(ValueError):
        to_fraction("one")
