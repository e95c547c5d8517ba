"""Choosing edge subdivisions that make a prescribed set of faces the odd subcomplex.

Subdividing an edge ``e`` flips the parity of every codimension-2 face ``g``
with ``g | e`` a facet; the two halves of ``e`` keep its parity and new
codimension-2 faces through the new vertex are even.  For a set of edges
in which no two share a vertex and span a triangle, these effects add up,
so the choice is a linear system over GF(2).  When no such set exists on
the complex itself, a few edges are subdivided first and the system is
solved again on the refinement.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .complex import Face, SimplicialComplex, as_face
from .errors import BadParams, Infeasible, NotCodim2
from .projectivity import odd_subcomplex, projectivity_group
from .subdivision import CarrierMap, SubdivisionScript, apply_script, stellar_subdivide_edge


# -- GF(2) -------------------------------------------------------------------


def gf2_solve(rows: Sequence[int], rhs: Sequence[int], ncols: int):
    """Solve ``A x = b`` with rows as column bitmasks.

    Returns ``(x, null_basis)`` or ``(None, None)`` when inconsistent.
    """
    pivots: dict[int, tuple[int, int]] = {}
    for r, b in zip(rows, rhs):
        for c, (pr, pb) in pivots.items():
            if r >> c & 1:
                r ^= pr
                b ^= pb
        if r == 0:
            if b:
                return None, None
            continue
        c = r.bit_length() - 1
        for c2, (pr, pb) in list(pivots.items()):
            if pr >> c & 1:
                pivots[c2] = (pr ^ r, pb ^ b)
        pivots[c] = (r, b)
    x = 0
    for c, (r, b) in pivots.items():
        if b:
            x |= 1 << c
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = 1 << free
        for c, (r, _) in pivots.items():
            if r >> free & 1:
                v |= 1 << c
        basis.append(v)
    return x, basis


def _greedy_reduce(x: int, basis: list[int]) -> int:
    improved = True
    while improved:
        improved = False
        for b in basis:
            if (x ^ b).bit_count() < x.bit_count():
                x ^= b
                improved = True
    return x


# -- the flip model ----------------------------------------------------------


def interacts(K: SimplicialComplex, e: Face, f: Face) -> bool:
    """Edges whose subdivisions do not commute with the linear model."""
    return len(set(e) & set(f)) == 1 and K.is_face(set(e) | set(f))


def refine_target(K: SimplicialComplex, carrier: CarrierMap, target: Iterable[Face]) -> set[Face]:
    """Codimension-2 faces of a refinement lying inside a target face of the base."""
    tsets = [set(t) for t in target]
    return {g for g in K.codim2_faces() if any(set(carrier.face_carrier(g)) <= t for t in tsets)}


@dataclass
class ParitySystem:
    edges: list[Face]
    faces: list[Face]
    rows: list[int]
    rhs: list[int]

    @property
    def mismatch(self) -> int:
        return sum(self.rhs)


def parity_system(K: SimplicialComplex, target: set[Face]) -> ParitySystem:
    edges = sorted(K.edges())
    col = {e: i for i, e in enumerate(edges)}
    faces = K.codim2_faces()
    odd = set(odd_subcomplex(K, check=False))
    rows, rhs = [], []
    for g in faces:
        m = 0
        gs = set(g)
        for i in K.facets_containing(g):
            m |= 1 << col[tuple(v for v in K.facets[i] if v not in gs)]
        rows.append(m)
        rhs.append(int((g in odd) != (g in target)))
    return ParitySystem(edges, faces, rows, rhs)


def independent_solution(K: SimplicialComplex, target: set[Face], budget: int, exact_nullity: int = 16):
    """Smallest pairwise non-interacting edge set fixing all parities, or None.

    The affine solution space is enumerated in Gray-code order when its
    dimension is at most ``exact_nullity``; otherwise one greedily reduced
    solution is tried.
    """
    sys_ = parity_system(K, target)
    if not sys_.mismatch:
        return []
    x, basis = gf2_solve(sys_.rows, sys_.rhs, len(sys_.edges))
    if x is None:
        return None
    clash = [0] * len(sys_.edges)
    for i, e in enumerate(sys_.edges):
        for j, f in enumerate(sys_.edges):
            if i < j and interacts(K, e, f):
                clash[i] |= 1 << j
                clash[j] |= 1 << i

    def independent(v: int) -> bool:
        w = v
        while w:
            low = w & -w
            if clash[low.bit_length() - 1] & v:
                return False
            w ^= low
        return True

    best = None
    if len(basis) <= exact_nullity:
        v = x
        for step in range(1 << len(basis)):
            if step:
                v ^= basis[(step & -step).bit_length() - 1]
            n = v.bit_count()
            if n <= budget and (best is None or n < best.bit_count()) and independent(v):
                best = v
    else:
        v = _greedy_reduce(x, basis)
        if v.bit_count() <= budget and independent(v):
            best = v
    if best is None:
        return None
    return [e for i, e in enumerate(sys_.edges) if best >> i & 1]


# -- planner -----------------------------------------------------------------


@dataclass
class ParityPlan:
    script: SubdivisionScript
    prefix: int
    complex: SimplicialComplex
    carrier: CarrierMap
    target: set[Face] = field(default_factory=set)


def _check_target(K: SimplicialComplex, target) -> set[Face]:
    out = set()
    for t in target:
        t = as_face(t)
        if len(t) != K.dim - 1 or not K.is_face(t):
            raise NotCodim2(f"{list(t)} is not a codimension-2 face")
        out.add(t)
    return out


def _with_steps(K, carrier, steps, edges):
    steps = list(steps)
    for e in edges:
        w = max(K.vertices) + 1
        K, delta = stellar_subdivide_edge(K, e, w)
        carrier = carrier.then(delta)
        steps.append((e, w))
    return K, carrier, steps


def plan_parity(
    K: SimplicialComplex,
    target: Iterable[Iterable[int]],
    *,
    max_edges: int = 10,
    max_prefix: int = 2,
) -> ParityPlan:
    """Edge subdivisions after which the odd subcomplex is exactly the refined target.

    Prefixes of up to ``max_prefix`` arbitrary subdivisions are tried in
    breadth-first order (shortest first, edges lexicographic); the first
    verified plan wins.
    """
    target = _check_target(K, target)
    layer = [(K, CarrierMap.identity(K), [])]
    for depth in range(max_prefix + 1):
        nxt = []
        for Kp, car, steps in layer:
            want = refine_target(Kp, car, target)
            sol = independent_solution(Kp, want, max_edges - len(steps))
            if sol is not None:
                K2, car2, full = _with_steps(Kp, car, steps, sol)
                if set(odd_subcomplex(K2, check=False)) == refine_target(K2, car2, target):
                    return ParityPlan(SubdivisionScript(K, full), depth, K2, car2, target)
            if depth < max_prefix and len(steps) < max_edges:
                for e in sorted(Kp.edges()):
                    nxt.append(_with_steps(Kp, car, steps, [e]))
        layer = nxt
    raise Infeasible(f"no verified plan with at most {max_edges} edges")


def plan_make_odd(K: SimplicialComplex, target: Iterable[Iterable[int]], **kw) -> SubdivisionScript:
    return plan_parity(K, target, **kw).script


# -- searching a knotted target ---------------------------------------------


def automorphisms(K: SimplicialComplex, limit: int = 8) -> list[dict[int, int]]:
    """Vertex permutations preserving the facets (brute force, small complexes only)."""
    vs = list(K.vertices)
    if len(vs) > limit:
        return [{v: v for v in vs}]
    facets = set(K.facets)
    out = []
    for p in permutations(vs):
        m = dict(zip(vs, p))
        if all(tuple(sorted(m[v] for v in f)) in facets for f in K.facets):
            out.append(m)
    return out


def hamiltonian_cycles(K: SimplicialComplex) -> list[tuple[int, ...]]:
    """Hamiltonian cycles of the 1-skeleton, each listed once."""
    vs = list(K.vertices)
    adj = {v: set() for v in vs}
    for a, b in K.edges():
        adj[a].add(b)
        adj[b].add(a)
    start, n, out = vs[0], len(vs), []

    def walk(path, used):
        if len(path) == n:
            if start in adj[path[-1]] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in sorted(adj[path[-1]]):
            if w not in used:
                used.add(w)
                path.append(w)
                walk(path, used)
                path.pop()
                used.remove(w)

    walk([start], {start})
    return out


def cycle_edges(cycle: Sequence[int]) -> set[Face]:
    return {as_face((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}


def _canonical(edges: set[Face], autos) -> tuple:
    return min(tuple(sorted(as_face((m[a], m[b])) for a, b in edges)) for m in autos)


@dataclass
class CycleSearch:
    cycle: tuple[int, ...]
    plan: ParityPlan
    group_order: int
    orbit_sizes: list[int]
    tried: int


def search_cycle_target(
    K: SimplicialComplex,
    *,
    group_order: int = 6,
    orbit_sizes: Sequence[int] = (1, 3),
    max_edges: int = 10,
    seed: int = 0,
) -> CycleSearch:
    """Find a Hamiltonian cycle whose plan gives the requested projectivity group.

    Cycles are tried up to automorphisms of ``K``, in an order shuffled by
    ``seed``.
    """
    if K.dim != 3:
        raise BadParams("cycle targets need a 3-dimensional complex")
    autos = automorphisms(K)
    reps: dict[tuple, tuple[int, ...]] = {}
    for c in hamiltonian_cycles(K):
        reps.setdefault(_canonical(cycle_edges(c), autos), c)
    order = sorted(reps)
    random.Random(seed).shuffle(order)
    for n, key in enumerate(order, 1):
        c = reps[key]
        try:
            plan = plan_parity(K, cycle_edges(c), max_edges=max_edges)
        except Infeasible:
            continue
        G = projectivity_group(plan.complex, 0)
        if G.order == group_order and G.orbit_sizes == sorted(orbit_sizes):
            return CycleSearch(c, plan, G.order, G.orbit_sizes, n)
    raise Infeasible("no Hamiltonian cycle gives the requested group")
