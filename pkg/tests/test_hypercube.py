import pytest
from hypothesis import given, strategies as st

from cubeslides import hypercube as hc
from cubeslides.errors import InvalidDirection, InvalidEdge
from cubeslides.hypercube import CubeEdge


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_edge_index_is_a_bijection_in_canonical_order(n):
    es = hc.edges(n)
    assert len(es) == n * 2 ** (n - 1) == hc.num_edges(n)
    assert [hc.edge_index(e, n) for e in es] == list(range(len(es)))
    assert es == sorted(es, key=hc.edge_sort_key)


def test_edges_match_adjacency():
    n = 4
    pairs = {frozenset((u, v)) for u in hc.vertices(n) for v in hc.neighbours(u, n)}
    assert pairs == {frozenset(e.endpoints) for e in hc.edges(n)}


@given(st.integers(0, 31), st.integers(1, 5))
def test_sigma_is_an_involution(v, i):
    assert hc.sigma(hc.sigma(v, i, 5), i, 5) == v
    assert hc.in_upper_face(v, i) != hc.in_upper_face(hc.sigma(v, i), i)


@given(st.integers(0, 4 * 16 - 1), st.integers(1, 5))
def test_sigma_edge_keeps_direction(k, i):
    e = hc.index_edge(k, 5)
    if i == e.dir:
        with pytest.raises(InvalidDirection):
            hc.sigma_edge(e, i)
        return
    f = hc.sigma_edge(e, i)
    assert f.dir == e.dir and hc.sigma_edge(f, i) == e
    assert {hc.sigma(v, i) for v in e.endpoints} == set(f.endpoints)


def test_edge_between_and_labels():
    assert hc.edge_between(5, 4) == CubeEdge(4, 1)
    assert str(CubeEdge(4, 1)) == "({3},{1,3})"
    assert CubeEdge(4, 1).other(5) == 4
    with pytest.raises(InvalidEdge):
        hc.edge_between(0, 3)
    with pytest.raises(InvalidEdge):
        hc.check_edge(CubeEdge(1, 1), 3)
    with pytest.raises(InvalidDirection):
        hc.check_direction(4, 3)


def test_subset_round_trip():
    for v in range(32):
        assert hc.from_subset(hc.subset(v)) == v
    assert hc.fmt_subset(0) == "{}"
    assert hc.fmt_subset(5) == "{1,3}"
