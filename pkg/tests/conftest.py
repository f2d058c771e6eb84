import functools

import pytest

from cellcalc import an_linear, star, two_vertex_ab


@functools.lru_cache(maxsize=None)
def zs(k):
    return star(k)


@functools.lru_cache(maxsize=None)
def kq():
    return two_vertex_ab()


@functools.lru_cache(maxsize=None)
def an(n):
    return an_linear(n)


@pytest.fixture
def z2():
    return zs(2)


@pytest.fixture
def ab():
    return kq()
