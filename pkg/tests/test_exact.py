import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from domhad import generators as gen
from domhad.exact import (
    SearchBudget,
    bits,
    connected_subsets,
    exact_domhad,
    exact_pseudo_domhad,
    find_dominating_model,
    hadwiger_number,
    has_clique_minor,
    has_dominating_model,
    to_mask,
    upper_bound,
)
from domhad.graph import Graph, is_connected_set
from domhad.models import PSEUDO, verify_model
from corpus import atlas
from oracles import brute_domhad, brute_has_minor, brute_pseudo_domhad, to_nx
from test_graph import graphs


@pytest.mark.parametrize("n", range(1, 8))
def test_complete_graphs(n):
    res = exact_domhad(gen.complete(n))
    assert res.t == n and res.exact


@pytest.mark.parametrize("n", range(3, 12))
def test_cycles_have_order_three(n):
    assert exact_domhad(gen.cycle(n)).t == 3


def test_trees_have_order_two():
    for seed in range(5):
        tree = gen.from_networkx(nx.random_labeled_tree(9, seed=seed))
        assert exact_domhad(tree).t == 2


def test_single_vertex_and_edgeless():
    assert exact_domhad(gen.complete(1)).t == 1
    assert exact_domhad(gen.empty(4)).t == 1
    with pytest.raises(ValueError):
        exact_domhad(gen.empty(0))


def test_size_limit_and_budget():
    with pytest.raises(ValueError):
        exact_domhad(gen.complete(15))
    with pytest.raises(ValueError):
        SearchBudget(max_vertices=65)
    tiny = SearchBudget(max_nodes=1)
    res = exact_domhad(gen.petersen(), tiny)
    assert res.status == "lower-bound" and verify_model(gen.petersen(), res.certificate)
    assert has_dominating_model(gen.petersen(), 4, tiny) is None
    assert find_dominating_model(gen.petersen(), 4, tiny) is None


def test_certificates_end_in_two_singletons():
    for g in atlas(6):
        res = exact_domhad(g)
        if res.t >= 2:
            assert len(res.certificate.parts[-1]) == len(res.certificate.parts[-2]) == 1


def test_exhaustive_small_atlas_against_brute_force():
    for g in atlas(5, connected=False):
        assert exact_domhad(g).t == brute_domhad(g), g.edges()


def test_pseudo_against_brute_force_and_partition():
    for g in atlas(5, connected=False)[::3]:
        res = exact_pseudo_domhad(g)
        assert res.t == brute_pseudo_domhad(g)
        assert res.certificate.flavour == PSEUDO
        assert sorted(res.certificate.vertices()) == list(range(g.n))


def test_known_hadwiger_numbers():
    assert hadwiger_number(gen.petersen()) == 6 - 1
    assert hadwiger_number(gen.complete_bipartite(3, 3)) == 4
    assert hadwiger_number(gen.cycle(7)) == 3
    assert has_clique_minor(gen.complete(4), 5).status == "absent"


def test_decision_matches_maximum():
    g = gen.petersen()
    t = exact_domhad(g).t
    assert has_dominating_model(g, t) and not has_dominating_model(g, t + 1)
    found = find_dominating_model(g, t)
    assert found and found.certificate.t == t and verify_model(g, found.certificate)
    assert has_dominating_model(g, 1)


def test_upper_bound_uses_degree_path():
    assert upper_bound(gen.star(5)) == 3  # max degree 5 but the path test cuts it down
    assert upper_bound(gen.complete(6)) == 6


def _brute_connected(g, within):
    out = set()
    verts = list(bits(within))
    for r in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            if is_connected_set(g, combo):
                out.add(to_mask(combo))
    return out


@settings(max_examples=60, deadline=None)
@given(graphs(9))
def test_connected_subsets_exactly_once(g):
    full = (1 << g.n) - 1
    produced = [t for t, _ in connected_subsets(g.masks, full)]
    assert len(produced) == len(set(produced))
    assert set(produced) == _brute_connected(g, full)
    for t, nb in connected_subsets(g.masks, full):
        expect = 0
        for v in bits(t):
            expect |= g.masks[v]
        assert nb == expect


@settings(max_examples=60, deadline=None)
@given(graphs(5))
def test_exact_matches_brute_force(g):
    if g.n:
        assert exact_domhad(g).t == brute_domhad(g)


@settings(max_examples=40, deadline=None)
@given(graphs(9))
def test_order_relations(g):
    if g.n == 0:
        return
    dom = exact_domhad(g)
    pseudo = exact_pseudo_domhad(g)
    assert verify_model(g, dom.certificate) and verify_model(g, pseudo.certificate)
    assert dom.t <= pseudo.t <= g.max_degree() + 1
    assert has_clique_minor(g, dom.t)  # a dominating model is a minor model


@settings(max_examples=40, deadline=None)
@given(graphs(6))
def test_minor_search_matches_brute_force(g):
    for t in range(2, min(g.n, 4) + 1):
        res = has_clique_minor(g, t)
        assert bool(res) == brute_has_minor(g, t)
        if res:
            assert verify_model(g, res.certificate)
