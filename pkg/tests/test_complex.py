import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchcover.complex import (
    SimplicialComplex,
    all_faces,
    boundary_simplex,
    build,
    cone,
    connectivity_report,
    cross_polytope,
    cyclic_sphere,
    disjoint_union,
    dual_graph,
    euler_characteristic,
    f_vector,
    find_shelling,
    generate,
    is_2sphere_or_disk,
    is_locally_strongly_connected,
    is_strongly_connected,
    link,
    polygon,
    star,
    starred_simplex,
    verify_shelling,
)
from branchcover.errors import BadParams, DominatedFacet, NonPureInput, NotAFace, UnknownFacet
from oracles import BALLS, SPHERES, f_vector as f_vector_oracle, is_shelling, refined


def test_build_rejects_bad_input():
    with pytest.raises(NonPureInput):
        build(2, [(1, 2, 3), (1, 2)])
    with pytest.raises(NonPureInput):
        build(2, [(1, 1, 2)])
    with pytest.raises(DominatedFacet):
        build(2, [(1, 2, 3), (3, 2, 1)])
    with pytest.raises(NonPureInput):
        SimplicialComplex(1, [(-1, 2)])


def test_facets_are_sorted_tuples():
    K = build(2, [(3, 1, 2), (4, 2, 3)])
    assert K.facets == ((1, 2, 3), (2, 3, 4))
    assert K.vertices == (1, 2, 3, 4)
    assert K.facet((3, 2, 1)) == (1, 2, 3)
    assert K.facet(1) == (2, 3, 4)
    with pytest.raises(UnknownFacet):
        K.facet((1, 2, 4))
    with pytest.raises(NotAFace):
        K.require_face((1, 4))


@pytest.mark.parametrize(
    "K, fv",
    [
        (boundary_simplex(2), (4, 6, 4)),
        (boundary_simplex(3), (5, 10, 10, 5)),
        (cross_polytope(2), (6, 12, 8)),
        (cross_polytope(3), (8, 24, 32, 16)),
        # [DERIVED] by Gale evenness, frozen
        (cyclic_sphere(4, 7), (7, 21, 28, 14)),
        (cyclic_sphere(4, 6), (6, 15, 18, 9)),
        (cyclic_sphere(3, 6), (6, 12, 8)),
        (starred_simplex(2), (4, 6, 3)),
    ],
)
def test_generator_f_vectors(K, fv):
    assert f_vector(K) == fv == f_vector_oracle(K.facets)


def test_cyclic_polytope_is_neighborly():
    K = cyclic_sphere(4, 7)
    assert len(K.edges()) == 21
    with pytest.raises(BadParams):
        cyclic_sphere(4, 4)


def test_generate_dispatch():
    assert generate("cross_polytope", 2) == cross_polytope(2)
    assert generate("cone", polygon(5)).dim == 2
    with pytest.raises(BadParams):
        generate("torus", 2)
    with pytest.raises(BadParams):
        generate("polygon")


def test_star_and_link():
    K = cross_polytope(2)
    assert len(star(K, (0,)).facets) == 4
    lk = link(K, (0,))
    assert lk.dim == 1 and sorted(lk.vertices) == [2, 3, 4, 5]
    assert link(K, (0, 2)).facets == ((4,), (5,))


def test_dual_graph_edges_carry_ridges():
    K = boundary_simplex(2)
    G = dual_graph(K)
    assert G.number_of_nodes() == 4 and G.number_of_edges() == 6
    for a, b, r in G.edges(data="ridge"):
        assert set(r) == set(K.facets[a]) & set(K.facets[b])


def test_disjoint_union_is_not_strongly_connected():
    K = disjoint_union(boundary_simplex(2), boundary_simplex(2))
    assert not is_strongly_connected(K)
    assert len(K.facets) == 8


def test_pinched_complex_is_not_locally_strongly_connected():
    # two triangles sharing only a vertex
    K = SimplicialComplex(2, [(0, 1, 2), (0, 3, 4)])
    assert not is_locally_strongly_connected(K)
    rep = connectivity_report(K)
    assert not rep.strongly_connected and not rep.nice_proxy


def test_connectivity_report_on_spheres():
    for K in SPHERES:
        rep = connectivity_report(K)
        assert rep.strongly_connected and rep.locally_strongly_connected
        assert rep.locally_strongly_simply_connected_proxy
    assert connectivity_report(cross_polytope(4)).proxy_used


def test_surface_checks():
    assert is_2sphere_or_disk(list(cross_polytope(2).facets))
    assert is_2sphere_or_disk(list(starred_simplex(2).facets))
    # two disjoint spheres
    assert not is_2sphere_or_disk(list(disjoint_union(cross_polytope(2), cross_polytope(2)).facets))


def test_verify_shelling_reports_violation():
    K = cross_polytope(2)
    # the second facet is antipodal to the first
    bad = [(0, 2, 4), (1, 3, 5)] + [f for f in K.facets if f not in {(0, 2, 4), (1, 3, 5)}]
    res = verify_shelling(K, bad)
    assert not res and res.violation_index == 1
    assert res.intersection == ()
    with pytest.raises(UnknownFacet):
        verify_shelling(K, [K.facets[0], K.facets[0]])


@pytest.mark.parametrize("K", SPHERES + BALLS + [cone(polygon(7))])
def test_find_shelling(K):
    order = find_shelling(K)
    assert order is not None and len(order) == len(K.facets)
    res = verify_shelling(K, order)
    assert res and is_shelling(order)
    assert res.restrictions[0] == ()
    # the last facet of a shelled sphere is glued along its whole boundary
    if K.is_closed_pseudomanifold():
        assert len(res.restrictions[-1]) == K.dim + 1


def test_find_shelling_respects_start():
    K = cyclic_sphere(4, 7)
    order = find_shelling(K, start=K.facets[5])
    assert order[0] == K.facets[5]


@settings(max_examples=30)
@given(refined())
def test_refined_spheres_properties(K):
    assert f_vector(K) == f_vector_oracle(K.facets)
    assert euler_characteristic(K) == (2 if K.dim == 2 else 0)
    assert K.is_closed_pseudomanifold()
    order = find_shelling(K)
    assert order is not None and is_shelling(order)
    assert nx.is_connected(dual_graph(K))


@settings(max_examples=30)
@given(refined(), st.data())
def test_link_of_vertex_is_sphere(K, data):
    v = data.draw(st.sampled_from(K.vertices))
    lk = link(K, (v,))
    assert lk.dim == K.dim - 1
    assert euler_characteristic(lk) == (0 if lk.dim == 1 else 2)


def test_all_faces_counts():
    K = boundary_simplex(3)
    assert len(all_faces(K, 1)) == sum(f_vector(K))
    assert len(all_faces(K, 4)) == 5
