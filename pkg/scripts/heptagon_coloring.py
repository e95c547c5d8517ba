"""Extend a 3-coloring of a heptagon over the cone by edge subdivisions."""
from branchcover.complex import cone, f_vector, polygon
from branchcover.coloring import extend_coloring

h = polygon(7)
given = dict(zip(sorted(h.vertices), (0, 1, 0, 1, 0, 1, 2)))
ext = extend_coloring(cone(h), h, given)
print("f-vector:", f_vector(ext.complex))
for r in ext.rounds:
    print(f"  round {r.round}: {r.subdivided} subdivisions, {r.facets} facets")
print("proper:", ext.coloring.is_proper(ext.complex))
print("script:", ext.script.steps)
