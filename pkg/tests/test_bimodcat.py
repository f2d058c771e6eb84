import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellcalc import F, ID, ZERO, closure, compose, is_weakly_fiat, mu, product_subcat
from cellcalc.algebra import is_core
from cellcalc.bimodcat import (
    Absent,
    Subcat,
    classify,
    enumerate_subcats,
    is_closed,
    left_adjoint,
    right_adjoint,
)
from cellcalc.errors import SubsetOutOfRange
from conftest import an, kq, zs

SMALL = [zs(1), zs(2), kq(), an(2), an(3)]


def labels(a):
    return [ID, ZERO] + [F(i, j) for i, j in itertools.product(range(a.m), repeat=2)]


def test_mu_examples(z2):
    assert mu(z2, F(1, 1), F(2, 2)) == {ZERO}
    assert mu(z2, F(2, 2), F(1, 1)) == {ZERO}
    assert mu(z2, ID, F(0, 2)) == {F(0, 2)}
    assert mu(z2, F(1, 0), F(0, 2)) == {F(1, 2)}


def test_compose_examples(z2):
    assert compose(z2, F(1, 0), F(0, 2)) == {F(1, 2): 2}
    assert compose(z2, F(1, 2), F(1, 1)) == {}
    assert compose(z2, ID, {F(0, 1): 3}) == {F(0, 1): 3}


@pytest.mark.parametrize("a", SMALL, ids=lambda a: f"{a.dim}-dim")
def test_mu_associative_all_triples(a):
    for x, y, z in itertools.product(labels(a), repeat=3):
        left = {w for u in mu(a, x, y) for w in mu(a, u, z)}
        right = {w for u in mu(a, y, z) for w in mu(a, x, u)}
        assert left == right


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_compose_is_associative_with_multiplicities(data):
    a = data.draw(st.sampled_from(SMALL))
    pool = [ID] + [F(i, j) for i, j in itertools.product(range(a.m), repeat=2)]
    summ = st.dictionaries(st.sampled_from(pool), st.integers(1, 3), max_size=3)
    x, y, z = data.draw(summ), data.draw(summ), data.draw(summ)
    assert compose(a, compose(a, x, y), z) == compose(a, x, compose(a, y, z))


def test_closure_examples(z2):
    assert closure(z2, {(0, 0)}).labels == {(0, 0)}
    assert closure(z2, set()).labels == frozenset()
    assert closure(z2, {(1, 0), (0, 1)}).labels == {(1, 0), (0, 1), (1, 1), (0, 0)}
    with pytest.raises(SubsetOutOfRange):
        closure(z2, {(0, 7)})


@pytest.mark.parametrize("a", [zs(2), kq(), an(2)], ids=["z2", "kq", "a2"])
def test_closure_is_least_closed_superset(a):
    closed = enumerate_subcats(a)
    pairs = list(itertools.product(range(a.m), repeat=2))
    for r in range(3):
        for gens in itertools.combinations(pairs, r):
            c = closure(a, gens)
            assert is_closed(a, c)
            supersets = [s.labels for s in closed if set(gens) <= s.labels]
            assert c.labels == min(supersets, key=len)
            assert all(c.labels <= s for s in supersets)


def test_classify(z2):
    s = product_subcat({1, 0}, {1, 0, 2})
    assert len(s) == 6
    sh = classify(z2, s)
    assert sh.n_left == {0, 1} and sh.n_right == {0, 1, 2}
    assert sh.is_superdiagonal and not sh.is_subdiagonal
    assert classify(z2, product_subcat({0}, {0})).is_diagonal
    nc = classify(z2, closure(z2, {(1, 1), (2, 2)}))
    assert nc.n_left == nc.n_right == {1, 2}
    assert not (nc.is_product or nc.is_superdiagonal or nc.is_subdiagonal or nc.is_diagonal)


def test_adjoints(z2, ab):
    s = closure(z2, {(1, 1), (2, 2)})
    assert right_adjoint(z2, s, F(1, 1)) == F(1, 1)
    assert left_adjoint(z2, s, F(2, 2)) == F(2, 2)
    assert right_adjoint(z2, s, ID) == ID == left_adjoint(z2, s, ID)
    d = product_subcat({0}, {0})
    assert right_adjoint(ab, d, F(0, 0)) == F(0, 0)
    r = right_adjoint(ab, product_subcat({1}, {1}), F(1, 1))
    assert isinstance(r, Absent) and r.reason == "no-partner"
    out = right_adjoint(z2, product_subcat({0}, {0, 1}), F(0, 1))
    assert out == Absent("outside-subcategory", F(1, 0))


def test_weak_fiatness_examples(z2):
    assert is_weakly_fiat(z2, product_subcat({1, 0}, {1, 0})).weakly_fiat
    rep = is_weakly_fiat(z2, product_subcat({1, 0}, {1, 0, 2}))
    assert not rep.weakly_fiat and rep.failures
    nc = is_weakly_fiat(z2, closure(z2, {(1, 1), (2, 2)}))
    assert nc.weakly_fiat and nc.star[F(1, 1)] == F(1, 1)


def _subsets(m):
    return [frozenset(c) for r in range(1, m + 1) for c in itertools.combinations(range(m), r)]


@pytest.mark.parametrize("a", [zs(2), kq(), zs(3), an(3)], ids=["z2", "kq", "z3", "a3"])
def test_fiat_iff_equal_core(a):
    for u1 in _subsets(a.m):
        for u2 in _subsets(a.m):
            got = is_weakly_fiat(a, product_subcat(u1, u2)).weakly_fiat
            assert got == (u1 == u2 and is_core(a, u1)), (u1, u2)


@pytest.mark.parametrize("a", [zs(2), kq()], ids=["z2", "kq"])
def test_star_is_involutive_antiautomorphism(a):
    for s in enumerate_subcats(a):
        rep = is_weakly_fiat(a, s)
        if not rep.weakly_fiat:
            continue
        star = rep.star
        for x in s.morphisms():
            assert star[star[x]] == x
        for x, y in itertools.product(s.morphisms(), repeat=2):
            assert {star[z] for z in mu(a, x, y) if not z.is_zero} == {
                z for z in mu(a, star[y], star[x]) if not z.is_zero
            }
