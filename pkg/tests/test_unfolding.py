import pytest
from hypothesis import given, settings

from branchcover.complex import (
    SimplicialComplex,
    boundary_simplex,
    cone,
    cross_polytope,
    cyclic_sphere,
    euler_characteristic,
    f_vector,
    polygon,
    starred_simplex,
)
from branchcover.errors import NotLocallyStronglyConnected
from branchcover.projectivity import odd_subcomplex
from branchcover.unfolding import (
    component_complex,
    components,
    is_simplicial,
    partial_unfold,
    resolve,
    sheets_over,
    verify_cover,
)
from oracles import BALLS, SPHERES, refined, unfolding_components


def cell_sets(comps):
    return sorted(sorted((c.facet, c.label) for c in comp.cells) for comp in comps.components)


def oracle_sets(K):
    idx = {f: i for i, f in enumerate(K.facets)}
    return sorted(sorted((idx[f], v) for f, v in comp) for comp in unfolding_components(K.facets))


def test_starred_triangle_components():
    # [PAPER] two components with three and six triangles
    U = partial_unfold(starred_simplex(2))
    comps = components(U)
    assert comps.sizes == [3, 6]
    assert verify_cover(U).branching == [(0,)]


def test_octahedron_unfolds_to_three_copies():
    K = cross_polytope(2)
    comps = components(partial_unfold(K))
    assert len(comps) == 3
    for c in comps.components:
        assert c.f_vector == f_vector(K) and c.simplicial and c.euler == 2


def test_tetrahedron_boundary_unfolds_to_a_sphere():
    # [DERIVED] the 3-fold cover branched over 4 points is a single 2-sphere
    U = partial_unfold(boundary_simplex(2))
    comps = components(U)
    assert len(comps) == 1
    (c,) = comps.components
    assert c.facets_per_base == 3 and c.euler == 2
    rep = verify_cover(U)
    assert rep.ok and rep.branching == [(1,), (2,), (3,), (4,)]


def test_refuses_pinched_complex():
    with pytest.raises(NotLocallyStronglyConnected):
        partial_unfold(SimplicialComplex(2, [(0, 1, 2), (0, 3, 4)]))


@settings(max_examples=30)
@given(refined(bases=SPHERES + BALLS))
def test_components_match_oracle(K):
    comps = components(partial_unfold(K))
    assert cell_sets(comps) == oracle_sets(K)


@settings(max_examples=30)
@given(refined())
def test_cover_is_simple_and_branched_over_odd_faces(K):
    U = partial_unfold(K)
    rep = verify_cover(U)
    assert rep.ok
    assert rep.branching == sorted(odd_subcomplex(K))
    for f in K.codim2_faces():
        sheets = sheets_over(U, f)
        assert sum(len(s) for s in sheets) == (K.dim + 1) * len(K.facets_containing(f))


@settings(max_examples=15)
@given(refined(bases=[boundary_simplex(2), cross_polytope(2)], max_steps=3))
def test_resolution_is_simplicial_and_keeps_euler(K):
    U = partial_unfold(K)
    R = resolve(U)
    comps = components(U)
    assert euler_characteristic(R) == sum(c.euler for c in comps.components)
    for c in comps.components:
        if c.simplicial:
            M = component_complex(U, c)
            assert euler_characteristic(M) == c.euler


def test_simpliciality_examples():
    assert is_simplicial(partial_unfold(cross_polytope(2)))
    # [DERIVED] two cells of one facet share a glued edge in the cyclic 3-sphere
    U = partial_unfold(cyclic_sphere(4, 7))
    check = is_simplicial(U)
    assert not check and check.rule == "c"
    R = resolve(U)
    assert R.dim == 3 and euler_characteristic(R) == 0


def test_cone_unfolding():
    U = partial_unfold(cone(polygon(7)))
    assert is_simplicial(U)
    comps = components(U)
    # [DERIVED] a copy of the cone, and its double cover branched at the apex:
    # 14 triangles around the apex with a 14-gon as boundary
    assert [c.f_vector for c in comps.components] == [(8, 14, 7), (15, 28, 14)]
    assert [c.facets_per_base for c in comps.components] == [1, 2]
    assert euler_characteristic(resolve(U)) == sum(c.euler for c in comps.components)
