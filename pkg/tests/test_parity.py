from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchcover.complex import boundary_simplex, cross_polytope, cyclic_sphere, f_vector, link
from branchcover.errors import Infeasible, NotCodim2
from branchcover.parity import (
    automorphisms,
    cycle_edges,
    gf2_solve,
    hamiltonian_cycles,
    plan_make_odd,
    plan_parity,
    refine_target,
)
from branchcover.projectivity import odd_subcomplex, projectivity_group
from branchcover.subdivision import apply_script, stellar_subdivide_edge
from oracles import odd_faces, refined

TREFOIL = (1, 3, 5, 7, 2, 4, 6)


@settings(max_examples=60)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_gf2_solve_against_brute_force(nrows, ncols, data):
    rows = data.draw(st.lists(st.integers(0, 2**ncols - 1), min_size=nrows, max_size=nrows))
    rhs = data.draw(st.lists(st.integers(0, 1), min_size=nrows, max_size=nrows))

    def ok(x):
        return all(bin(r & x).count("1") % 2 == b for r, b in zip(rows, rhs))

    sols = [x for x in range(2**ncols) if ok(x)]
    x, basis = gf2_solve(rows, rhs, ncols)
    if not sols:
        assert x is None
        return
    assert ok(x)
    span = set()
    for bits in product((0, 1), repeat=len(basis)):
        v = x
        for b, on in zip(basis, bits):
            if on:
                v ^= b
        span.add(v)
    assert span == set(sols)


@settings(max_examples=40)
@given(refined(), st.data())
def test_single_flip_matches_link(K, data):
    e = data.draw(st.sampled_from(sorted(K.edges())))
    K2, _ = stellar_subdivide_edge(K, e)
    before, after = odd_faces(K.facets), odd_faces(K2.facets)
    survivors = set(K.codim2_faces()) & set(K2.codim2_faces())
    flipped = {g for g in survivors if (g in before) != (g in after)}
    assert flipped == set(link(K, e).facets)


def test_octahedron_from_tetrahedron_boundary():
    K = boundary_simplex(2)
    plan = plan_parity(K, [])
    assert len(plan.script) == 2
    assert odd_subcomplex(plan.complex).as_list() == []
    assert f_vector(plan.complex) == f_vector(cross_polytope(2))


def test_trefoil_plan():
    K = cyclic_sphere(4, 7)
    plan = plan_parity(K, cycle_edges(TREFOIL))
    # [DERIVED] first verified plan in search order, frozen
    assert plan.script.steps == [((1, 2), 8), ((4, 5), 9), ((1, 4), 10), ((1, 5), 11), ((2, 7), 12)]
    assert f_vector(plan.complex) == (12, 48, 72, 36)
    S, car = apply_script(K, plan.script)
    assert S == plan.complex
    assert set(odd_subcomplex(S)) == refine_target(S, car, cycle_edges(TREFOIL))
    G = projectivity_group(S, 0)
    # [PAPER] the group is the symmetric group on three of the four vertices
    assert G.order == 6 and G.orbit_sizes == [1, 3] and not G.is_abelian()
    assert plan_make_odd(K, cycle_edges(TREFOIL)).steps == plan.script.steps


def test_plan_rejects_non_codim2():
    with pytest.raises(NotCodim2):
        plan_parity(cyclic_sphere(4, 7), [(1, 2, 3)])


def test_plan_budget():
    with pytest.raises(Infeasible):
        plan_parity(cyclic_sphere(4, 7), cycle_edges(TREFOIL), max_edges=2)


@settings(max_examples=20)
@given(refined(max_steps=2), st.data())
def test_returned_plans_are_verified(K, data):
    faces = K.codim2_faces()
    target = data.draw(st.sets(st.sampled_from(faces), max_size=4))
    try:
        plan = plan_parity(K, target, max_edges=6, max_prefix=1)
    except Infeasible:
        return
    S, car = apply_script(K, plan.script)
    assert odd_faces(S.facets) == refine_target(S, car, target)
    assert len(plan.script) <= 6


def test_hamiltonian_cycles_and_automorphisms():
    K = cyclic_sphere(4, 7)
    cycles = hamiltonian_cycles(K)
    # K_7 has 6!/2 Hamiltonian cycles
    assert len(cycles) == 360
    autos = automorphisms(K)
    # [DERIVED] the dihedral symmetry of C(4,7)
    assert len(autos) == 14
    assert all(len(cycle_edges(c)) == 7 for c in cycles[:10])
