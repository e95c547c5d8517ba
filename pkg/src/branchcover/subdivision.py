"""Stellar edge subdivisions with carrier tracking, and barycentric subdivision."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Hashable, Iterable, Sequence

from .complex import Face, SimplicialComplex, as_face
from .errors import IdCollision, NotAnEdge


@dataclass
class CarrierMap:
    """Where refined facets and vertices sit in an unsubdivided base complex.

    ``vertex_carrier[v]`` is the minimal base face whose geometric simplex
    contains ``v``; original vertices carry themselves.
    """

    facet_carrier: dict[Face, Face]
    vertex_carrier: dict[int, Face]

    @classmethod
    def identity(cls, K: SimplicialComplex) -> "CarrierMap":
        return cls({f: f for f in K.facets}, {v: (v,) for v in K.vertices})

    def face_carrier(self, face: Iterable[int]) -> Face:
        """Minimal base face containing the refined face."""
        out: set[int] = set()
        for v in face:
            out.update(self.vertex_carrier[v])
        return tuple(sorted(out))

    def then(self, step: "CarrierMap") -> "CarrierMap":
        """Compose with a carrier map of a further refinement."""
        fc = {F: self.facet_carrier[G] for F, G in step.facet_carrier.items()}
        vc = {}
        for v, g in step.vertex_carrier.items():
            acc: set[int] = set()
            for u in g:
                acc.update(self.vertex_carrier[u])
            vc[v] = tuple(sorted(acc))
        return CarrierMap(fc, vc)


@dataclass
class SubdivisionScript:
    """An ordered list of stellar edge subdivisions of ``base``."""

    base: SimplicialComplex
    steps: list[tuple[Face, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def to_json(self, base_ref=None) -> dict:
        from .io import complex_to_dict

        return {
            "base": base_ref if base_ref is not None else complex_to_dict(self.base),
            "steps": [{"edge": list(e), "new": w} for e, w in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict, base: SimplicialComplex | None = None) -> "SubdivisionScript":
        from .io import complex_from_dict

        if base is None:
            base = complex_from_dict(data["base"])[0]
        return cls(base, [(as_face(s["edge"]), int(s["new"])) for s in data["steps"]])


def stellar_subdivide_edge(
    K: SimplicialComplex, e: Iterable[int], fresh_id: int | None = None
) -> tuple[SimplicialComplex, CarrierMap]:
    """Replace every facet through ``e`` by its two halves.

    Returns the new complex and the one-step carrier map back to ``K``.
    """
    e = as_face(e)
    if len(e) != 2 or not K.is_face(e):
        raise NotAnEdge(f"{list(e)} is not an edge")
    if fresh_id is None:
        fresh_id = max(K.vertices) + 1
    if fresh_id in K.vertex_star:
        raise IdCollision(f"vertex {fresh_id} already exists")
    a, b = e
    through = set(K.facets_containing(e))
    facets: list[Face] = []
    fc: dict[Face, Face] = {}
    for i, f in enumerate(K.facets):
        if i in through:
            for drop in (a, b):
                g = tuple(sorted([v for v in f if v != drop] + [fresh_id]))
                facets.append(g)
                fc[g] = f
        else:
            facets.append(f)
            fc[f] = f
    vc = {v: (v,) for v in K.vertices}
    vc[fresh_id] = e
    return SimplicialComplex(K.dim, facets, check=False), CarrierMap(fc, vc)


def apply_script(
    base: SimplicialComplex, script: SubdivisionScript | Sequence[tuple[Face, int]]
) -> tuple[SimplicialComplex, CarrierMap]:
    steps = script.steps if isinstance(script, SubdivisionScript) else script
    K = base
    carrier = CarrierMap.identity(base)
    for e, w in steps:
        K, delta = stellar_subdivide_edge(K, e, w)
        carrier = carrier.then(delta)
    return K, carrier


def subdivide_edges(
    K: SimplicialComplex, edges: Sequence[Iterable[int]], fresh_start: int | None = None
) -> tuple[SimplicialComplex, list[tuple[Face, int]]]:
    """Subdivide ``edges`` one after another, with new ids counting up.

    Same result as repeated ``stellar_subdivide_edge`` without rebuilding the
    complex each time.  Every edge must still be present when its turn comes.
    """
    w = fresh_vertex(K) if fresh_start is None else fresh_start
    if w in K.vertex_star:
        raise IdCollision(f"vertex {w} already exists")
    facets: set[frozenset] = {frozenset(f) for f in K.facets}
    star: dict[int, set[frozenset]] = {}
    for f in facets:
        for v in f:
            star.setdefault(v, set()).add(f)
    steps = []
    for e in edges:
        e = as_face(e)
        if len(e) != 2:
            raise NotAnEdge(f"{list(e)} is not an edge")
        a, b = e
        through = star.get(a, set()) & star.get(b, set())
        if not through:
            raise NotAnEdge(f"{list(e)} is not an edge")
        star[w] = set()
        for f in through:
            facets.discard(f)
            for v in f:
                star[v].discard(f)
            for drop in (a, b):
                g = (f - {drop}) | {w}
                facets.add(g)
                for v in g:
                    star[v].add(g)
        steps.append((e, w))
        w += 1
    return SimplicialComplex(K.dim, facets, check=False), steps


def fresh_vertex(K: SimplicialComplex) -> int:
    return max(K.vertices, default=-1) + 1


@dataclass
class BarycentricSubdivision:
    """Order complex of a face poset.

    ``face_of[v]`` is the (class of the) face that new vertex ``v`` stands
    for; ``dimension[v]`` is its dimension, a proper (d+1)-coloring.
    """

    complex: SimplicialComplex
    face_of: dict[int, Hashable]
    dimension: dict[int, int]

    @property
    def coloring(self) -> dict[int, int]:
        return dict(self.dimension)


def order_complex(
    cells: Sequence[Face], face_class: Callable[[int, Face], Hashable], dim: int
) -> BarycentricSubdivision:
    """Barycentric subdivision of a collection of glued simplices.

    ``cells[i]`` lists the vertices of the i-th top simplex and
    ``face_class(i, subset)`` names the glued face that ``subset`` of cell
    ``i`` belongs to.  Each maximal chain of faces of a cell is one facet.
    """
    chains: list[list[tuple[Hashable, int]]] = []
    keys: dict[Hashable, int] = {}
    for i, cell in enumerate(cells):
        for perm in permutations(cell):
            chain = []
            for k in range(1, len(cell) + 1):
                sub = tuple(sorted(perm[:k]))
                cls = face_class(i, sub)
                keys.setdefault(cls, k - 1)
                chain.append(cls)
            chains.append(chain)
    ordered = sorted(keys, key=lambda c: (keys[c], repr(c)))
    vid = {c: n for n, c in enumerate(ordered)}
    facets = {tuple(sorted(vid[c] for c in chain)) for chain in chains}
    K = SimplicialComplex(dim, facets, check=False)
    return BarycentricSubdivision(
        K, {vid[c]: c for c in ordered}, {vid[c]: keys[c] for c in ordered}
    )


def barycentric_subdivide(X) -> BarycentricSubdivision:
    """Barycentric subdivision of a simplicial complex or a partial unfolding.

    For an unfolding the faces are gluing classes of (cell, vertex subset),
    so the result is a genuine simplicial complex even when the unfolding
    is only pseudo-simplicial.
    """
    if isinstance(X, SimplicialComplex):
        return order_complex(X.facets, lambda i, sub: sub, X.dim)
    return X.barycentric()

