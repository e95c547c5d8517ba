import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchcover.complex import (
    boundary_simplex,
    cone,
    cross_polytope,
    cyclic_sphere,
    polygon,
    starred_simplex,
)
from branchcover.errors import InvalidPath, NotCodim2, NotNeighbors, StarNotCycle
from branchcover.perm import Perm, closure, orbits
from branchcover.projectivity import (
    FacetPath,
    fundamental_cycles,
    loop_around,
    odd_subcomplex,
    path_perm,
    perspectivity,
    projectivity,
    projectivity_group,
    reduced_group_generators,
)
from oracles import BALLS, group, odd_faces, orbit_partition, refined


def test_perm_algebra():
    a = Perm({1: 2, 2: 1, 3: 3})
    b = Perm({1: 1, 2: 3, 3: 2})
    assert (a * b)(2) == a(b(2)) == 3
    assert (a * ~a).is_identity()
    assert a.is_transposition() and not (a * b).is_transposition()
    assert len(closure([a, b], [1, 2, 3])) == 6
    assert orbits([a], [1, 2, 3]) == [(1, 2), (3,)]


def test_perspectivity_fixes_ridge():
    K = boundary_simplex(2)
    p = perspectivity(K, (1, 2, 3), (1, 2, 4))
    assert p.mapping == {1: 1, 2: 2, 3: 4}
    with pytest.raises(NotNeighbors):
        perspectivity(K, (1, 2, 3), (1, 2, 3))


def test_projectivity_composes():
    K = boundary_simplex(2)
    g = [(1, 2, 3), (1, 2, 4)]
    h = [(1, 2, 4), (1, 3, 4)]
    whole = projectivity(K, FacetPath(g).concat(h))
    assert whole == projectivity(K, g).then(projectivity(K, h))
    with pytest.raises(InvalidPath):
        projectivity(K, [(1, 2, 3), (1, 2, 7)])
    with pytest.raises(InvalidPath):
        projectivity(K, [(1, 2, 3), (1, 2, 3)])
    with pytest.raises(InvalidPath):
        FacetPath(g).concat([(1, 3, 4), (2, 3, 4)])


def test_loop_inverse_gives_inverse():
    K = cyclic_sphere(4, 7)
    path = [K.facets[i] for i in fundamental_cycles(K, 0)[0]]
    m = projectivity(K, path).as_perm()
    back = projectivity(K, FacetPath(path).inverse()).as_perm()
    assert (m * back).is_identity()


@pytest.mark.parametrize(
    "K, order, sizes",
    [
        (boundary_simplex(2), 6, [3]),
        (cross_polytope(2), 1, [1, 1, 1]),
        (starred_simplex(2), 2, [1, 2]),
        (boundary_simplex(3), 24, [4]),
        (cone(polygon(7)), 2, [1, 2]),
    ],
)
def test_group_examples(K, order, sizes):
    G = projectivity_group(K, 0)
    assert G.order == order and G.orbit_sizes == sizes
    assert len(group(K.facets, K.facets[0])) == order


@settings(max_examples=40)
@given(refined(), st.data())
def test_group_matches_state_search(K, data):
    i = data.draw(st.integers(0, len(K.facets) - 1))
    G = projectivity_group(K, i)
    base = K.facets[i]
    ref = group(K.facets, base)
    mine = {tuple(g(v) for v in base) for g in G.elements}
    assert mine == ref
    assert sorted(tuple(sorted(o)) for o in G.orbits) == orbit_partition(ref, base)


@settings(max_examples=40)
@given(refined(bases=BALLS + [boundary_simplex(2), cross_polytope(3), cyclic_sphere(4, 7)]))
def test_odd_subcomplex_matches_link_graphs(K):
    assert set(odd_subcomplex(K)) == odd_faces(K.facets)


@settings(max_examples=25)
@given(refined())
def test_group_generated_by_loops_around_odd_faces(K):
    # the reduced generators close up to the whole group on a sphere
    G = projectivity_group(K, 0)
    gens = [g for _, _, g in reduced_group_generators(K, 0)]
    base = K.facets[0]
    assert closure(gens, base) == set(G.elements)
    for f, loop, g in reduced_group_generators(K, 0):
        assert loop.is_closed and g.is_transposition()


def test_loop_around_errors():
    K = boundary_simplex(2)
    with pytest.raises(NotCodim2):
        loop_around(K, 0, (1, 2), [K.facets[0]])
    with pytest.raises(InvalidPath):
        loop_around(K, 0, (4,), [K.facets[0]])
    B = starred_simplex(2)
    with pytest.raises(StarNotCycle):
        loop_around(B, 0, (1,), [B.facets[0]])


def test_path_perm_ignores_repeats():
    K = boundary_simplex(2)
    p = [(1, 2, 3), (1, 2, 3), (1, 2, 4)]
    assert path_perm(p) == {1: 1, 2: 2, 3: 4}
