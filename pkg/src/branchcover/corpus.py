"""A fixed corpus of small complexes for property checks and experiments."""
from __future__ import annotations

import random

from .complex import (
    SimplicialComplex,
    boundary_simplex,
    cone,
    cross_polytope,
    cyclic_sphere,
    polygon,
    starred_simplex,
)
from .subdivision import barycentric_subdivide, stellar_subdivide_edge


def base_complexes() -> list[tuple[str, SimplicialComplex]]:
    return [
        ("bd_simplex_2", boundary_simplex(2)),
        ("bd_simplex_3", boundary_simplex(3)),
        ("octahedron", cross_polytope(2)),
        ("cross_3", cross_polytope(3)),
        ("starred_triangle", starred_simplex(2)),
        ("starred_tetrahedron", starred_simplex(3)),
        ("cyclic_4_6", cyclic_sphere(4, 6)),
        ("cyclic_4_7", cyclic_sphere(4, 7)),
        ("cyclic_3_6", cyclic_sphere(3, 6)),
        ("cone_heptagon", cone(polygon(7))),
        ("sd_bd_simplex_2", barycentric_subdivide(boundary_simplex(2)).complex),
        ("cyclic_3_7", cyclic_sphere(3, 7)),
    ]


def perturb(K: SimplicialComplex, rng: random.Random, steps: int) -> SimplicialComplex:
    """Subdivide ``steps`` random edges in turn."""
    for _ in range(steps):
        e = rng.choice(sorted(K.edges()))
        K, _ = stellar_subdivide_edge(K, e)
    return K


def perturbations(n: int = 10, seed: int = 0) -> list[tuple[str, SimplicialComplex]]:
    bases = base_complexes()
    out = []
    for i in range(n):
        rng = random.Random(seed * 1000 + i)
        name, K = bases[rng.randrange(len(bases))]
        out.append((f"{name}+{i}", perturb(K, rng, rng.randint(1, 4))))
    return out


def corpus(seed: int = 0) -> list[tuple[str, SimplicialComplex]]:
    """Generators plus ten seeded random edge-subdivision perturbations."""
    return base_complexes() + perturbations(10, seed)
