"""The partial unfolding: one copy of each facet per vertex label, glued by perspectivities.

Cells are pairs ``(facet id, label)``.  Two cells over neighboring facets are
glued along the shared ridge when the perspectivity carries one label to the
other.  Nothing global is materialized beyond union-find classes of
``(cell, vertex subset)``, so pseudo-simplicial results are handled the same
way as simplicial ones.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, NamedTuple

from networkx.utils import UnionFind

from .complex import Face, SimplicialComplex, is_locally_strongly_connected
from .errors import NotLocallyStronglyConnected
from .projectivity import odd_subcomplex, perspectivity
from .subdivision import BarycentricSubdivision, order_complex


class LabeledFacet(NamedTuple):
    facet: int
    label: int


def _subsets(face: Face):
    for k in range(1, len(face) + 1):
        yield from combinations(face, k)


@dataclass
class Unfolding:
    base: SimplicialComplex
    cells: list[LabeledFacet]
    gluings: frozenset  # pairs (cell, cell), smaller first
    _faces: UnionFind = field(repr=False, compare=False)

    def projection(self, cell: LabeledFacet) -> Face:
        return self.base.facets[cell.facet]

    def face_class(self, cell: LabeledFacet, subset) -> Hashable:
        """Representative of the glued face that ``subset`` of ``cell`` belongs to."""
        return self._faces[(cell, tuple(sorted(subset)))]

    def vertex_class(self, cell: LabeledFacet, v: int) -> Hashable:
        return self.face_class(cell, (v,))

    @property
    def vertex_classes(self) -> dict[tuple[LabeledFacet, int], Hashable]:
        return {(c, v): self.vertex_class(c, v) for c in self.cells for v in self.projection(c)}

    def cell_vertex_classes(self, cell: LabeledFacet) -> tuple:
        return tuple(self.vertex_class(cell, v) for v in self.projection(cell))

    @cached_property
    def adjacency(self) -> dict[LabeledFacet, list[LabeledFacet]]:
        adj: dict[LabeledFacet, list[LabeledFacet]] = {c: [] for c in self.cells}
        for a, b in self.gluings:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def barycentric(self) -> BarycentricSubdivision:
        cells = [self.projection(c) for c in self.cells]
        return order_complex(cells, lambda i, sub: self.face_class(self.cells[i], sub), self.base.dim)

    def face_projection(self, cls) -> Face:
        """Base face under a face class."""
        cell, subset = cls
        return subset


def partial_unfold(K: SimplicialComplex, *, check: bool = True) -> Unfolding:
    if check and not is_locally_strongly_connected(K):
        raise NotLocallyStronglyConnected("partial unfolding needs a locally strongly connected complex")
    cells = [LabeledFacet(i, v) for i, f in enumerate(K.facets) for v in f]
    uf = UnionFind()
    for c in cells:
        for sub in _subsets(K.facets[c.facet]):
            uf[(c, sub)]
    gluings = set()
    for ridge, ids in K.ridge_map.items():
        for i, j in combinations(ids, 2):
            persp = perspectivity(K, i, j)
            for v in K.facets[i]:
                a, b = LabeledFacet(i, v), LabeledFacet(j, persp(v))
                gluings.add((a, b))
                for sub in _subsets(ridge):
                    uf.union((a, sub), (b, sub))
    return Unfolding(K, cells, frozenset(gluings), uf)


# -- simpliciality ---------------------------------------------------------


@dataclass
class SimplicialityCheck:
    simplicial: bool
    rule: str | None = None  # "a", "b" or "c"
    witness: tuple = ()

    def __bool__(self):
        return self.simplicial

    def as_dict(self) -> dict:
        return {"simplicial": self.simplicial, "rule": self.rule, "witness": repr(self.witness) if self.witness else None}


def is_simplicial(U: Unfolding, cells=None) -> SimplicialityCheck:
    """Check that vertex classes determine cells and glued faces.

    (a) a cell has d+1 distinct vertex classes, (b) no two cells share a
    vertex class set, (c) faces with equal vertex class sets are glued.
    """
    cells = U.cells if cells is None else list(cells)
    seen: dict[frozenset, LabeledFacet] = {}
    for c in cells:
        vc = U.cell_vertex_classes(c)
        if len(set(vc)) != len(vc):
            return SimplicialityCheck(False, "a", (c,))
        key = frozenset(vc)
        if key in seen:
            return SimplicialityCheck(False, "b", (seen[key], c))
        seen[key] = c
    by_vertices: dict[frozenset, tuple] = {}
    for c in cells:
        for sub in _subsets(U.projection(c)):
            if len(sub) < 2:
                continue
            key = frozenset(U.vertex_class(c, v) for v in sub)
            cls = U.face_class(c, sub)
            prev = by_vertices.setdefault(key, (cls, c, sub))
            if prev[0] != cls:
                return SimplicialityCheck(False, "c", ((prev[1], prev[2]), (c, sub)))
    return SimplicialityCheck(True)


# -- components --------------------------------------------------------------


@dataclass
class ComponentInfo:
    cells: list[LabeledFacet]
    facets_per_base: int
    f_vector: tuple[int, ...]
    euler: int
    simplicial: bool

    def labels_over(self, facet_id: int) -> tuple[int, ...]:
        return tuple(sorted(c.label for c in self.cells if c.facet == facet_id))

    def as_dict(self) -> dict:
        return {
            "cells": len(self.cells),
            "facets_per_base": self.facets_per_base,
            "f_vector": list(self.f_vector),
            "euler": self.euler,
            "simplicial": self.simplicial,
        }


@dataclass
class ComponentReport:
    components: list[ComponentInfo]

    def __len__(self):
        return len(self.components)

    @property
    def sizes(self) -> list[int]:
        return sorted(len(c.cells) for c in self.components)

    def as_dict(self) -> dict:
        return {"components": [c.as_dict() for c in self.components]}


def _cell_components(U: Unfolding) -> list[list[LabeledFacet]]:
    adj = U.adjacency
    seen: set[LabeledFacet] = set()
    out = []
    for c in U.cells:
        if c in seen:
            continue
        comp, stack = [], [c]
        seen.add(c)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def components(U: Unfolding) -> ComponentReport:
    out = []
    n_base = len(U.base.facets)
    for comp in _cell_components(U):
        classes: set = set()
        for c in comp:
            for sub in _subsets(U.projection(c)):
                classes.add(U.face_class(c, sub))
        counts = Counter(len(cls[1]) for cls in classes)
        fv = tuple(counts[k] for k in range(1, U.base.dim + 2))
        euler = sum((-1) ** k * n for k, n in enumerate(fv))
        out.append(ComponentInfo(comp, len(comp) // n_base, fv, euler, bool(is_simplicial(U, comp))))
    out.sort(key=lambda c: (len(c.cells), c.cells[0]))
    return ComponentReport(out)


def component_complex(U: Unfolding, comp: ComponentInfo) -> SimplicialComplex:
    """A simplicial component as a complex on vertex-class ids."""
    reps = sorted({U.vertex_class(c, v) for c in comp.cells for v in U.projection(c)})
    vid = {r: n for n, r in enumerate(reps)}
    facets = [tuple(sorted(vid[x] for x in U.cell_vertex_classes(c))) for c in comp.cells]
    return SimplicialComplex(U.base.dim, facets)


def resolve(U: Unfolding) -> SimplicialComplex:
    """Barycentric subdivision of the unfolding; always simplicial."""
    return U.barycentric().complex


# -- covering structure ----------------------------------------------------


@dataclass
class CoverReport:
    degree: int
    ridge_failures: list = field(default_factory=list)
    sheet_failures: list = field(default_factory=list)
    branching: list[Face] = field(default_factory=list)
    odd: list[Face] = field(default_factory=list)
    local_degrees: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.ridge_failures and not self.sheet_failures and self.branching == self.odd

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "degree": self.degree,
            "ridge_failures": [repr(x) for x in self.ridge_failures],
            "sheet_failures": [repr(x) for x in self.sheet_failures],
            "branching": [list(f) for f in self.branching],
        }


def sheets_over(U: Unfolding, f: Face) -> list[list[LabeledFacet]]:
    """Cells over st(f), grouped by gluings across ridges that contain ``f``."""
    K = U.base
    ids = set(K.facets_containing(f))
    fs = set(f)
    uf = UnionFind()
    for c in U.cells:
        if c.facet in ids:
            uf[c]
    for a, b in U.gluings:
        if a.facet in ids and b.facet in ids and fs <= set(K.facets[a.facet]) & set(K.facets[b.facet]):
            uf.union(a, b)
    return sorted(sorted(s) for s in uf.to_sets())


def verify_cover(U: Unfolding) -> CoverReport:
    K = U.base
    d1 = K.dim + 1
    rep = CoverReport(degree=d1)
    for ridge, ids in K.ridge_map.items():
        if len(ids) == 1:
            continue  # boundary ridge
        if len(ids) != 2:
            rep.ridge_failures.append((ridge, "more than two facets"))
            continue
        i, j = ids
        glued = [(a, b) for a, b in U.gluings if {a.facet, b.facet} == {i, j}]
        left = {a if a.facet == i else b for a, b in glued}
        right = {b if b.facet == j else a for a, b in glued}
        if len(glued) != d1 or len(left) != d1 or len(right) != d1:
            rep.ridge_failures.append((ridge, len(glued)))
    for f in K.codim2_faces():
        n = len(K.facets_containing(f))
        degs = sorted(len(s) // n for s in sheets_over(U, f))
        bad = any(len(s) % n for s in sheets_over(U, f))
        rep.local_degrees[f] = degs
        if bad or sum(degs) != d1:
            rep.sheet_failures.append((f, degs))
        elif degs == [1] * d1:
            pass
        elif degs == [1] * (d1 - 2) + [2]:
            rep.branching.append(f)
        else:
            rep.sheet_failures.append((f, degs))
    rep.odd = sorted(odd_subcomplex(K, check=False))
    rep.branching.sort()
    return rep
