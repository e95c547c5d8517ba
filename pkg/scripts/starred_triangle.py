"""Partial unfolding of the starred triangle: one sheet over the rim, a double cover around the center."""
from branchcover.complex import starred_simplex
from branchcover.projectivity import odd_subcomplex, projectivity_group
from branchcover.unfolding import components, partial_unfold, verify_cover

K = starred_simplex(2)
print("facets:", K.facets)
print("odd:", odd_subcomplex(K).as_list())
G = projectivity_group(K, 0)
print("group order", G.order, "orbits", G.orbit_sizes)
U = partial_unfold(K)
comps = components(U)
print("component sizes:", comps.sizes)
for c in comps.components:
    print(f"  {c.facets_per_base} sheet(s), f = {c.f_vector}, euler {c.euler}")
print("branching:", verify_cover(U).branching)
