import numpy as np
import pytest

from domhad import generators as gen


def test_named_graphs():
    assert (gen.complete(5).m, gen.cycle(5).m, gen.path(5).m, gen.star(4).m) == (10, 5, 4, 4)
    assert gen.empty(3).m == 0
    p = gen.petersen()
    assert p.n == 10 and p.m == 15 and p.min_degree() == p.max_degree() == 3
    o = gen.octahedron()
    assert o.n == 6 and o.m == 12 == 3 * 6 - 6  # maximal planar
    assert gen.complete_multipartite(2, 2, 2) == o
    assert gen.complete_bipartite(3, 3).m == 9
    assert gen.subdivided_complete(4, 2).n == 4 + 12


def test_random_regular_is_regular_and_seeded():
    g = gen.random_regular(50, 7, seed=3)
    assert g.min_degree() == g.max_degree() == 7
    assert g == gen.random_regular(50, 7, seed=3)


def test_random_min_degree():
    g = gen.random_min_degree(30, 4, 0.05, np.random.default_rng(0))
    assert g.min_degree() >= 4
    with pytest.raises(ValueError):
        gen.random_min_degree(4, 4, 0.1, np.random.default_rng(0))
