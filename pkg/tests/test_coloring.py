import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchcover.coloring import (
    NotFoldable,
    colored_cone_ball,
    extend_coloring,
    find_foldable_coloring,
    is_foldable,
)
from branchcover.complex import (
    SimplicialComplex,
    boundary_simplex,
    cone,
    cross_polytope,
    polygon,
)
from branchcover.errors import ImproperInputColoring, NotInduced, NotStronglyConnected
from branchcover.projectivity import odd_subcomplex
from branchcover.subdivision import apply_script, barycentric_subdivide
from oracles import odd_faces, proper_coloring, refined

SEVEN = (0, 1, 0, 1, 0, 1, 2)


def test_octahedron_coloring_is_antipodal():
    col = find_foldable_coloring(cross_polytope(2))
    assert col and col.n_colors == 3
    for i in range(3):
        assert col[2 * i] == col[2 * i + 1]


def test_tetrahedron_boundary_is_not_foldable():
    res = find_foldable_coloring(boundary_simplex(2))
    assert isinstance(res, NotFoldable) and not res
    assert res.colors[0] != res.colors[1]


def test_disconnected_input():
    K = SimplicialComplex(2, [(0, 1, 2), (3, 4, 5)])
    with pytest.raises(NotStronglyConnected):
        find_foldable_coloring(K)


@settings(max_examples=40)
@given(refined())
def test_foldable_iff_colorable_iff_no_odd_faces(K):
    brute = proper_coloring(K.facets, K.dim + 1) is not None
    assert is_foldable(K) == brute
    # on spheres foldability means an empty odd subcomplex
    assert brute == (not odd_faces(K.facets))


def test_heptagon_cone():
    h = polygon(7)
    given_ = dict(zip(sorted(h.vertices), SEVEN))
    ext = extend_coloring(cone(h), h, given_)
    K2, col, script = ext
    assert col.is_proper(K2)
    assert all(col[v] == c for v, c in given_.items())
    # [DERIVED] executing the rounds, checked against the replayed script
    assert len(K2.facets) == 23
    assert [r.subdivided for r in ext.rounds] == [3, 5]
    assert apply_script(cone(h), script)[0] == K2
    assert all(K2.is_face(f) for f in h.facets)


def test_prefold_makes_octahedron():
    ext = extend_coloring(boundary_simplex(2), None, {}, prefold=True)
    assert len(ext.complex.facets) == 8
    assert ext.coloring.is_proper(ext.complex)
    assert [r.subdivided for r in ext.rounds] == [0, 0]


def test_rounds_without_prefold():
    # the plain rounds split every triangle of the tetrahedron boundary into eight
    ext = extend_coloring(boundary_simplex(2), None, {})
    assert len(ext.complex.facets) == 32
    assert not odd_subcomplex(ext.complex)


def test_already_colored_is_untouched():
    K = cross_polytope(2)
    col = find_foldable_coloring(K).colors
    ext = extend_coloring(K, K, col)
    assert ext.complex == K and len(ext.script) == 0


def test_input_errors():
    h = polygon(7)
    with pytest.raises(ImproperInputColoring):
        extend_coloring(cone(h), h, {v: 0 for v in h.vertices})
    with pytest.raises(ImproperInputColoring):
        extend_coloring(cone(h), h, {0: 0})
    # two opposite vertices of the octahedron span no edge, so L is not induced
    # only when an edge of K joins L-vertices outside L
    K = boundary_simplex(2)
    L = [(1, 2), (2, 3)]
    with pytest.raises(NotInduced):
        extend_coloring(K, L, {1: 0, 2: 1, 3: 2})
    ext = extend_coloring(K, L, {1: 0, 2: 1, 3: 2}, make_induced=True)
    assert ext.presubdivided == 1 and ext.coloring.is_proper(ext.complex)


def test_hexagon_cone_with_greedy():
    h = polygon(6)
    col = {v: v % 2 for v in h.vertices}
    ball, c = colored_cone_ball(h, col, greedy=True)
    assert ball == cone(h)
    assert c.is_proper(ball)


def test_octahedron_ball():
    K = cross_polytope(2)
    col = find_foldable_coloring(K).colors
    ball, c = colored_cone_ball(K, col)
    assert ball.dim == 3 and c.is_proper(ball)
    assert set(ball.boundary().facets) == set(K.facets)
    assert all(c[v] == col[v] for v in K.vertices)


@settings(max_examples=25)
@given(refined(max_steps=3), st.data())
def test_extension_invariants(K, data):
    # L: the star of a vertex after a barycentric subdivision is induced and colored
    sd = barycentric_subdivide(K)
    S = sd.complex
    v = data.draw(st.sampled_from(S.vertices))
    L = [S.facets[i] for i in S.facets_containing((v,))]
    lv = {u for f in L for u in f}
    col = {u: sd.coloring[u] for u in lv}
    try:
        ext = extend_coloring(S, L, col)
    except NotInduced:
        ext = extend_coloring(S, L, col, make_induced=True)
    assert ext.coloring.is_proper(ext.complex)
    assert all(ext.coloring[u] == c for u, c in col.items())
    assert all(ext.complex.is_face(f) for f in L)
    steps = ext.script.steps[ext.presubdivided:]
    assert not any(set(e) <= lv for e, _ in steps)
