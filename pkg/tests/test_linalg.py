from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cellcalc.linalg import RowSpace, nullspace, rank, rref

small = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_and_rref_match_sympy(rows):
    m = sympy.Matrix(rows)
    ref, piv = m.rref()
    ours, pivots = rref(rows)
    assert rank(rows) == m.rank()
    assert tuple(pivots) == piv
    assert [[sympy.Rational(x.numerator, x.denominator) for x in r] for r in ours] == ref.tolist()[: len(ours)]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_nullspace_is_kernel_of_right_dimension(rows):
    n = len(rows[0])
    basis = nullspace(rows, n)
    assert len(basis) == n - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_rowspace_membership(rows, probe):
    n = len(rows[0])
    probe = probe[:n]
    space = RowSpace(n)
    added = [space.add(r) for r in rows]
    assert len(space) == sum(added) == sympy.Matrix(rows).rank()
    expected = sympy.Matrix(rows + [probe]).rank() == len(space)
    assert space.contains(probe) == expected
    for r in rows:
        assert space.contains(r)
    # reduced form kills every pivot coordinate
    red = space.reduce(probe)
    assert all(red[p] == 0 for p in space.pivots)
