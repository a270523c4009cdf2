import networkx as nx
import pytest

from cosetsemi import completion as cp
from cosetsemi.errors import Degenerate, HypothesisFailed
from cosetsemi.mingraph import (
    UnionFind,
    anchored_from_components,
    build_gamma,
    minimal_permutable,
    permutability,
    predicted_J,
    sigma_order_formula,
)

from conftest import catalog, group, k1, lattice


def gamma_by_sets(spec, anchor):
    """Graph on the other minimal subgroups, edge when H_i H_j meets H_r trivially."""
    g, lat = group(spec), lattice(spec)
    r = set(lat[anchor].elements)
    verts = [h for h in lat.minimal if h != anchor]
    graph = nx.Graph()
    graph.add_nodes_from(verts)
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            prod = {g.mul(x, y) for x in lat[a].elements for y in lat[b].elements}
            if prod & r == {0}:
                graph.add_edge(a, b)
    return graph


@pytest.mark.parametrize("spec", ["C2xC2", "C3xC3", "C2xC2xC2", "C6", "C12", "C6xC2", "C4xC2", "C2xC2xC2xC2"])
def test_components_match_graph_library(spec):
    lat = lattice(spec)
    for h in lat.minimal:
        gamma = build_gamma(lat, h)
        assert gamma.J == nx.number_connected_components(gamma_by_sets(spec, h))


def test_examples():
    assert {build_gamma(lattice("C2xC2xC2"), h).J for h in lattice("C2xC2xC2").minimal} == {1}
    assert {build_gamma(lattice("C2xC2"), h).J for h in lattice("C2xC2").minimal} == {2}
    assert {build_gamma(lattice("C6"), h).J for h in lattice("C6").minimal} == {1}
    assert predicted_J(lattice("C3xC3")) == 3
    assert predicted_J(lattice("C12")) == 1
    assert predicted_J(lattice("C2xC2xC2")) == 1


def test_formula_examples():
    for spec, n in (("C2xC2", 8), ("C3xC3", 81), ("C6", 6)):
        lat = lattice(spec)
        assert sigma_order_formula(lat, build_gamma(lat, lat.minimal[0])) == n


def test_permutability_examples():
    assert minimal_permutable(lattice("C6"))
    assert not minimal_permutable(lattice("S3"))
    assert minimal_permutable(lattice("Q8"))


def test_permutability_tests_agree_on_catalog():
    for e in catalog():
        from cosetsemi.lattice import enumerate_subgroups

        assert permutability(enumerate_subgroups(e.build())).consistent, e.name


def test_errors():
    with pytest.raises(Degenerate):
        build_gamma(lattice("Q8"), lattice("Q8").minimal[0])
    lat = lattice("S3")
    with pytest.raises(HypothesisFailed):
        sigma_order_formula(lat, build_gamma(lat, lat.minimal[0]))
    lat = lattice("C6")
    with pytest.raises(ValueError):
        build_gamma(lat, lat.whole)


@pytest.mark.parametrize("spec", ["C2xC2", "C3xC3", "C6", "C6xC2", "C2xC2xC2"])
def test_anchored_tuples_from_components(spec):
    s, lat = k1(spec), lattice(spec)
    for pos, h in enumerate(lat.minimal):
        assert cp.anchored_tuples(s, pos) == anchored_from_components(s, build_gamma(lat, h))


def test_union_find():
    uf = UnionFind(range(6))
    uf.union(0, 1)
    uf.union(4, 5)
    uf.union(1, 4)
    assert uf.groups() == [[0, 1, 4, 5], [2], [3]]
