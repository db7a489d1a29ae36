import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domhad import generators as gen
from domhad.graph import Graph, GraphError
from domhad.models import (
    DOMINATING,
    PLAIN,
    PSEUDO,
    CliqueModel,
    InvalidCertificate,
    check_degree_path,
    checked,
    degree_path,
    max_degree_refutes,
    parts_from_labels,
    verify_model,
)
from oracles import brute_domhad, nx_dominating_model_ok
from test_graph import graphs


def test_identity_model_on_complete_graph():
    g = gen.complete(5)
    assert verify_model(g, CliqueModel.of([[v] for v in range(5)]))


def test_order_matters_for_domination():
    # P3 = 0-1-2: ({0,1}, {2}) fine, ({2}, {0,1}) fails because 0 has no neighbour in {2}
    g = gen.path(3)
    assert verify_model(g, CliqueModel.of([[0, 1], [2]]))
    verdict = verify_model(g, CliqueModel.of([[2], [0, 1]]))
    assert not verdict and verdict.witness == (0, 1, 0)


def test_plain_versus_dominating():
    g = gen.path(4)
    model = CliqueModel.of([[0, 1], [2, 3]], PLAIN)
    assert verify_model(g, model)
    assert not verify_model(g, model.with_flavour(DOMINATING))


def test_structural_failures():
    g = gen.path(4)
    assert verify_model(g, CliqueModel.of([[0], []])).witness == ("empty", 1)
    assert verify_model(g, CliqueModel.of([[0, 1], [1, 2]])).witness[0] == "overlap"
    assert verify_model(g, CliqueModel.of([[0, 2]])).witness == ("disconnected", 0)
    assert verify_model(g, CliqueModel.of([[0, 2]], PSEUDO))
    with pytest.raises(GraphError):
        verify_model(g, CliqueModel.of([[9]]))
    with pytest.raises(InvalidCertificate):
        checked(g, CliqueModel.of([[0, 2]]))


def test_json_round_trip_and_bad_flavour():
    m = CliqueModel.of([[3, 1], [2]], PSEUDO)
    assert m.parts == ((1, 3), (2,))
    assert CliqueModel.from_json(m.to_json()) == m
    with pytest.raises(ValueError):
        CliqueModel.of([[0]], "strange")
    with pytest.raises(ValueError):
        CliqueModel.from_dict({"flavour": PLAIN})


def test_degree_path_refutations():
    assert max_degree_refutes(gen.cycle(6), 4)
    verdict = check_degree_path(gen.cycle(6), 4)
    assert not verdict and verdict.method == "max-degree"
    # star K_{1,4}: max degree 4 but no two adjacent vertices of degree >= 3
    assert not check_degree_path(gen.star(4), 4)
    assert check_degree_path(gen.complete(5), 5).path is not None
    assert degree_path(gen.complete(3), 1) == (0,)


def test_parts_from_labels():
    assert parts_from_labels([0, 1, -1, 0], 2) == [[0, 3], [1]]


def _brute_degree_path(g, t):
    for seq in itertools.permutations(range(g.n), t):
        if all(g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
            degs = [g.degree(v) for v in seq]
            if degs[-1] >= t - 1 and all(degs[i] >= i + 1 for i in range(t - 1)):
                return True
    return False


@settings(max_examples=80, deadline=None)
@given(graphs(7), st.integers(2, 6))
def test_degree_path_matches_brute_force(g, t):
    assert (degree_path(g, t) is not None) == _brute_degree_path(g, t)


@settings(max_examples=40, deadline=None)
@given(graphs(5))
def test_degree_path_never_refutes_a_real_model(g):
    if g.n == 0:
        return
    t = brute_domhad(g)
    assert check_degree_path(g, t)


@settings(max_examples=100, deadline=None)
@given(graphs(7), st.data())
def test_verifier_matches_networkx_definition(g, data):
    if g.n == 0:
        return
    t = data.draw(st.integers(1, g.n))
    labels = data.draw(st.lists(st.integers(-1, t - 1), min_size=g.n, max_size=g.n))
    parts = parts_from_labels(labels, t)
    for flavour, connected in ((DOMINATING, True), (PSEUDO, False)):
        ours = bool(verify_model(g, CliqueModel.of(parts, flavour)))
        assert ours == nx_dominating_model_ok(g, parts, connected)


@settings(max_examples=60, deadline=None)
@given(graphs(7), st.data())
def test_prefix_of_dominating_model_is_dominating(g, data):
    from domhad.exact import exact_domhad

    if g.n == 0:
        return
    res = exact_domhad(g)
    k = data.draw(st.integers(1, res.t))
    assert verify_model(g, CliqueModel.of(res.certificate.parts[:k]))
