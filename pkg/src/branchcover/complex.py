"""Finite pure simplicial complexes and their structural queries.

A complex is an immutable value: a dimension and a sorted tuple of facets,
each facet a sorted tuple of nonnegative vertex ids.  Facet ids are indices
into ``K.facets``.  Faces are never materialized wholesale unless asked for
(``faces``, ``f_vector``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    BadParams,
    DominatedFacet,
    NonPureInput,
    NotAFace,
    UnknownFacet,
)

Face = tuple  # sorted tuple of vertex ids


def as_face(vertices: Iterable[int]) -> Face:
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise NonPureInput(f"repeated vertex in {vs}")
    return vs


class SimplicialComplex:
    """A pure ``dim``-dimensional simplicial complex given by its facets."""

    def __init__(self, dim: int, facets: Iterable[Iterable[int]], *, check: bool = True):
        fs = sorted({as_face(f) for f in facets})
        self.dim = int(dim)
        self.facets: tuple[Face, ...] = tuple(fs)
        if check:
            self._validate()

    def _validate(self):
        for f in self.facets:
            if len(f) != self.dim + 1:
                raise NonPureInput(f"facet {list(f)} has {len(f)} vertices, expected {self.dim + 1}")
            if any(not isinstance(v, int) or v < 0 for v in f):
                raise NonPureInput(f"vertex ids must be nonnegative integers: {list(f)}")

    # -- basic structure ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.dim == other.dim and self.facets == other.facets

    def __hash__(self):
        return hash((self.dim, self.facets))

    def __len__(self):
        return len(self.facets)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, n_facets={len(self.facets)}, n_vertices={len(self.vertices)})"

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @cached_property
    def facet_index(self) -> dict[Face, int]:
        return {f: i for i, f in enumerate(self.facets)}

    @cached_property
    def vertex_star(self) -> dict[int, frozenset[int]]:
        stars: dict[int, set[int]] = {}
        for i, f in enumerate(self.facets):
            for v in f:
                stars.setdefault(v, set()).add(i)
        return {v: frozenset(s) for v, s in stars.items()}

    @cached_property
    def ridge_map(self) -> dict[Face, tuple[int, ...]]:
        """Each ridge mapped to the ids of the facets containing it."""
        out: dict[Face, list[int]] = {}
        for i, f in enumerate(self.facets):
            for r in combinations(f, self.dim):
                out.setdefault(r, []).append(i)
        return {r: tuple(ids) for r, ids in out.items()}

    def facet(self, key) -> Face:
        """Normalize a facet id or a vertex collection to the facet tuple."""
        if isinstance(key, int):
            if not 0 <= key < len(self.facets):
                raise UnknownFacet(f"no facet with id {key}")
            return self.facets[key]
        f = as_face(key)
        if f not in self.facet_index:
            raise UnknownFacet(f"{list(f)} is not a facet")
        return f

    def facet_id(self, key) -> int:
        return self.facet_index[self.facet(key)]

    def facets_containing(self, face: Iterable[int]) -> list[int]:
        face = as_face(face)
        if not face:
            return list(range(len(self.facets)))
        try:
            ids = set(self.vertex_star[face[0]])
        except KeyError:
            return []
        for v in face[1:]:
            ids &= self.vertex_star.get(v, frozenset())
            if not ids:
                break
        return sorted(ids)

    def is_face(self, face: Iterable[int]) -> bool:
        face = as_face(face)
        return bool(face) and bool(self.facets_containing(face))

    def require_face(self, face: Iterable[int]) -> Face:
        f = as_face(face)
        if not f or not self.facets_containing(f):
            raise NotAFace(f"{list(f)} is not a face")
        return f

    def faces(self, k: int) -> set[Face]:
        """All ``k``-dimensional faces."""
        out: set[Face] = set()
        for f in self.facets:
            out.update(combinations(f, k + 1))
        return out

    def edges(self) -> set[Face]:
        return self.faces(1)

    def codim2_faces(self) -> list[Face]:
        return sorted(self.faces(self.dim - 2)) if self.dim >= 1 else []

    def neighbors(self, i: int) -> list[int]:
        f = self.facets[i]
        out = []
        for r in combinations(f, self.dim):
            out.extend(j for j in self.ridge_map[r] if j != i)
        return sorted(out)

    def is_closed_pseudomanifold(self) -> bool:
        return all(len(ids) == 2 for ids in self.ridge_map.values())

    def boundary(self) -> "SimplicialComplex":
        """Ridges contained in exactly one facet."""
        rs = [r for r, ids in self.ridge_map.items() if len(ids) == 1]
        return SimplicialComplex(self.dim - 1, rs)

    def induced(self, vertices: Iterable[int]) -> set[Face]:
        """All faces of the complex whose vertices lie in ``vertices``."""
        vs = set(vertices)
        out: set[Face] = set()
        for f in self.facets:
            inside = tuple(v for v in f if v in vs)
            for k in range(1, len(inside) + 1):
                out.update(combinations(inside, k))
        return out

    def relabel(self, mapping: dict[int, int]) -> "SimplicialComplex":
        return SimplicialComplex(self.dim, ([mapping.get(v, v) for v in f] for f in self.facets))


def build(dim: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Validated constructor: rejects wrong arity and repeated facets."""
    raw = [tuple(f) for f in facets]
    for f in raw:
        if len(set(f)) != len(f) or len(f) != dim + 1:
            raise NonPureInput(f"facet {list(f)} does not have {dim + 1} distinct vertices")
    seen: set[frozenset] = set()
    for f in raw:
        s = frozenset(f)
        if s in seen:
            raise DominatedFacet(f"facet {sorted(s)} listed twice")
        seen.add(s)
    return SimplicialComplex(dim, raw)


# -- stars, links, dual graph --------------------------------------------


def star(K: SimplicialComplex, f: Iterable[int]) -> SimplicialComplex:
    f = K.require_face(f)
    return SimplicialComplex(K.dim, (K.facets[i] for i in K.facets_containing(f)), check=False)


def link(K: SimplicialComplex, f: Iterable[int]) -> SimplicialComplex:
    f = K.require_face(f)
    fs = set(f)
    return SimplicialComplex(
        K.dim - len(f),
        (tuple(v for v in K.facets[i] if v not in fs) for i in K.facets_containing(f)),
        check=False,
    )


def dual_graph(K: SimplicialComplex) -> nx.Graph:
    """Facet ids as nodes, an edge per shared ridge labeled ``ridge``."""
    G = nx.Graph()
    G.add_nodes_from(range(len(K.facets)))
    for r, ids in K.ridge_map.items():
        for a, b in combinations(ids, 2):
            G.add_edge(a, b, ridge=r)
    return G


def _strongly_connected_facets(facets: Sequence[Face]) -> bool:
    """Dual-graph connectivity of a pure family of equal-size faces."""
    n = len(facets)
    if n <= 1:
        return True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_ridge: dict[Face, int] = {}
    comps = n
    for i, f in enumerate(facets):
        for r in combinations(f, len(f) - 1):
            j = by_ridge.setdefault(r, i)
            if j != i:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
                    comps -= 1
    return comps == 1


def is_strongly_connected(K: SimplicialComplex) -> bool:
    return _strongly_connected_facets(K.facets)


def _link_facets(K: SimplicialComplex, f: Face) -> list[Face]:
    fs = set(f)
    return [tuple(v for v in K.facets[i] if v not in fs) for i in K.facets_containing(f)]


def all_faces(K: SimplicialComplex, min_size: int = 1) -> set[Face]:
    out: set[Face] = set()
    for f in K.facets:
        for k in range(min_size, len(f) + 1):
            out.update(combinations(f, k))
    return out


def is_locally_strongly_connected(K: SimplicialComplex) -> bool:
    # stars of facets and ridges are trivially strongly connected
    for f in all_faces(K, 1):
        if len(f) >= K.dim:
            continue
        if not _strongly_connected_facets(_link_facets(K, f)):
            return False
    return True


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(f_vector(K)))


def _is_closed_or_bounded_surface(facets: list[Face]) -> tuple[bool, int]:
    """Check a 2-dimensional facet family is a connected surface.

    Returns (is_surface, euler characteristic).
    """
    L = SimplicialComplex(2, facets, check=False)
    if not is_strongly_connected(L):
        return False, 0
    edge_deg = {r: len(ids) for r, ids in L.ridge_map.items()}
    if any(d > 2 for d in edge_deg.values()):
        return False, 0
    for v in L.vertices:
        lk = _link_facets(L, (v,))
        G = nx.Graph()
        G.add_edges_from(lk)
        degs = [d for _, d in G.degree()]
        if not nx.is_connected(G) or any(d > 2 for d in degs):
            return False, 0
    return True, euler_characteristic(L)


def is_2sphere_or_disk(facets: list[Face]) -> bool:
    ok, chi = _is_closed_or_bounded_surface(facets)
    if not ok:
        return False
    L = SimplicialComplex(2, facets, check=False)
    has_boundary = any(len(ids) == 1 for ids in L.ridge_map.values())
    if not has_boundary:
        return chi == 2
    bd = L.boundary()
    G = nx.Graph()
    G.add_edges_from(bd.facets)
    return chi == 1 and nx.is_connected(G)


@dataclass(frozen=True)
class ConnectivityReport:
    strongly_connected: bool
    locally_strongly_connected: bool
    locally_strongly_simply_connected_proxy: bool
    nice_proxy: bool
    proxy_used: bool
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "strongly_connected": self.strongly_connected,
            "locally_strongly_connected": self.locally_strongly_connected,
            "locally_strongly_simply_connected_proxy": self.locally_strongly_simply_connected_proxy,
            "nice_proxy": self.nice_proxy,
            "proxy_used": self.proxy_used,
            "notes": list(self.notes),
        }


def connectivity_report(K: SimplicialComplex) -> ConnectivityReport:
    """Connectivity predicates, with simple connectivity of links by proxy.

    Links of codimension-2 faces are graphs and only need to be connected.
    Links of codimension-3 faces are 2-complexes and are certified simply
    connected when they are a 2-sphere or a disk.  Higher-dimensional links
    are only checked for connectivity, and ``proxy_used`` is set.
    """
    sc = is_strongly_connected(K)
    lsc = is_locally_strongly_connected(K)
    notes = []
    proxy_used = False
    lssc = True
    for f in sorted(all_faces(K, 1)):
        codim = K.dim + 1 - len(f)
        if codim < 2:
            continue
        lk = _link_facets(K, f)
        if codim == 2:
            G = nx.Graph()
            G.add_edges_from(lk)
            if G.number_of_nodes() and not nx.is_connected(G):
                lssc = False
                notes.append(f"link of {list(f)} is disconnected")
        elif codim == 3:
            if not is_2sphere_or_disk(lk):
                lssc = False
                proxy_used = True
                notes.append(f"link of {list(f)} is not a 2-sphere or disk")
        else:
            proxy_used = True
            if not _strongly_connected_facets(lk):
                lssc = False
                notes.append(f"link of {list(f)} is not strongly connected")
    if proxy_used:
        notes.append("simple connectivity decided by proxy for some links")
    return ConnectivityReport(sc, lsc, lssc, lsc and lssc, proxy_used, tuple(notes))


# -- shellings -------------------------------------------------------------


@dataclass(frozen=True)
class ShellingCheck:
    """Outcome of ``verify_shelling``.

    ``restrictions[i]`` is the minimal free face of step ``i`` (empty for
    the first facet).  On failure ``violation_index`` is the first bad step
    and ``intersection`` lists the maximal faces of ``D_{i-1} & sigma_i``.
    """

    valid: bool
    order: tuple[Face, ...]
    restrictions: tuple[Face, ...]
    violation_index: int | None = None
    intersection: tuple[Face, ...] = ()

    def __bool__(self):
        return self.valid


def _restriction(facet: Face, ridges_in_D: set[Face]) -> Face:
    return tuple(v for v in facet if tuple(x for x in facet if x != v) in ridges_in_D)


def _maximal(faces: Iterable[Face]) -> list[Face]:
    fs = sorted(set(faces), key=len, reverse=True)
    out: list[Face] = []
    for f in fs:
        if not any(set(f) <= set(g) for g in out):
            out.append(f)
    return sorted(out)


def verify_shelling(K: SimplicialComplex, order: Sequence) -> ShellingCheck:
    """Check each facet meets the union of its predecessors in a pure ridge complex."""
    facets = [K.facet(x) for x in order]
    if len(set(facets)) != len(facets):
        raise UnknownFacet("shelling order repeats a facet")
    ridges: set[Face] = set()
    faces_in_D: set[Face] = set()
    restrictions = []
    for i, sigma in enumerate(facets):
        if i == 0:
            restrictions.append(())
        else:
            W = _restriction(sigma, ridges)
            if not W or W in faces_in_D:
                inter = _maximal(tuple(sorted(set(sigma) & set(tau))) for tau in facets[:i])
                inter = [g for g in inter if g]
                return ShellingCheck(False, tuple(facets), tuple(restrictions), i, tuple(inter))
            restrictions.append(W)
        ridges.update(combinations(sigma, K.dim))
        for k in range(1, len(sigma) + 1):
            faces_in_D.update(combinations(sigma, k))
    return ShellingCheck(True, tuple(facets), tuple(restrictions))


def find_shelling(K: SimplicialComplex, *, start=None, max_nodes: int = 2_000_000) -> list[Face] | None:
    """Exact backtracking search for a shelling order; ``None`` if none exists.

    Candidates are tried in order of decreasing number of ridges shared with
    the current union.  Failed partial unions are memoized by bitmask.
    """
    n = len(K.facets)
    if n == 0:
        return []
    d = K.dim
    facet_ridges = [list(combinations(f, d)) for f in K.facets]
    facet_faces = [[c for k in range(1, d + 2) for c in combinations(f, k)] for f in K.facets]
    ridge_count: dict[Face, int] = {}
    face_count: dict[Face, int] = {}
    used = [False] * n
    order: list[int] = []
    failed: set[int] = set()
    budget = [max_nodes]

    def add(i):
        used[i] = True
        order.append(i)
        for r in facet_ridges[i]:
            ridge_count[r] = ridge_count.get(r, 0) + 1
        for c in facet_faces[i]:
            face_count[c] = face_count.get(c, 0) + 1

    def remove(i):
        used[i] = False
        order.pop()
        for r in facet_ridges[i]:
            ridge_count[r] -= 1
        for c in facet_faces[i]:
            face_count[c] -= 1

    def candidates():
        seen = set()
        out = []
        for i in order:
            for j in K.neighbors(i):
                if used[j] or j in seen:
                    continue
                seen.add(j)
                f = K.facets[j]
                W = tuple(v for k, v in enumerate(f) if ridge_count.get(facet_ridges[j][d - k], 0) > 0)
                if W and face_count.get(W, 0) == 0:
                    out.append((-len(W), f, j))
        out.sort()
        return [j for _, _, j in out]

    def search(mask: int) -> bool:
        if len(order) == n:
            return True
        if mask in failed:
            return False
        budget[0] -= 1
        if budget[0] < 0:
            raise RuntimeError("shelling search budget exhausted")
        for j in candidates():
            add(j)
            if search(mask | (1 << j)):
                return True
            remove(j)
        failed.add(mask)
        return False

    starts = [K.facet_id(start)] if start is not None else list(range(n))
    for s in starts:
        add(s)
        if search(1 << s):
            return [K.facets[i] for i in order]
        remove(s)
    return None


# -- counting --------------------------------------------------------------


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    counts = [0] * (K.dim + 1)
    for f in all_faces(K, 1):
        counts[len(f) - 1] += 1
    return tuple(counts)


# -- generators ------------------------------------------------------------


def boundary_simplex(d: int) -> SimplicialComplex:
    """Boundary of the (d+1)-simplex on vertices 1..d+2, a d-sphere."""
    if d < 0:
        raise BadParams("dimension must be nonnegative")
    vs = range(1, d + 3)
    return SimplicialComplex(d, combinations(vs, d + 1))


def cross_polytope(d: int) -> SimplicialComplex:
    """Boundary of the (d+1)-dimensional cross-polytope; antipodes are 2i, 2i+1.

    ``cross_polytope(2)`` is the octahedron.
    """
    if d < 0:
        raise BadParams("dimension must be nonnegative")
    facets = []
    for bits in range(2 ** (d + 1)):
        facets.append([2 * i + ((bits >> i) & 1) for i in range(d + 1)])
    return SimplicialComplex(d, facets)


def cyclic_sphere(polytope_dim: int, n: int) -> SimplicialComplex:
    """Boundary of the cyclic polytope C(polytope_dim, n) on vertices 1..n.

    Facets are the polytope_dim-subsets satisfying Gale's evenness condition.
    """
    D = polytope_dim
    if D < 2 or n <= D:
        raise BadParams(f"cyclic polytope needs n > dim >= 2, got dim={D}, n={n}")
    facets = []
    for S in combinations(range(1, n + 1), D):
        s = set(S)
        ok = True
        outside = [x for x in range(1, n + 1) if x not in s]
        for a, b in combinations(outside, 2):
            if sum(1 for x in S if a < x < b) % 2:
                ok = False
                break
        if ok:
            facets.append(S)
    return SimplicialComplex(D - 1, facets)


def starred_simplex(d: int) -> SimplicialComplex:
    """Cone with apex 0 over the boundary of the d-simplex on 1..d+1."""
    if d < 1:
        raise BadParams("starred simplex needs d >= 1")
    return SimplicialComplex(d, ((0,) + r for r in combinations(range(1, d + 2), d)))


def polygon(n: int) -> SimplicialComplex:
    """The n-cycle on vertices 0..n-1 as a 1-dimensional complex."""
    if n < 3:
        raise BadParams("a polygon needs at least 3 vertices")
    return SimplicialComplex(1, ((i, (i + 1) % n) for i in range(n)))


def cone(K: SimplicialComplex, apex: int | None = None) -> SimplicialComplex:
    if apex is None:
        apex = max(K.vertices, default=-1) + 1
    if apex in K.vertices:
        raise BadParams(f"apex {apex} already a vertex")
    return SimplicialComplex(K.dim + 1, (f + (apex,) for f in K.facets))


def disjoint_union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    if K.dim != L.dim:
        raise BadParams("dimensions differ")
    shift = max(K.vertices, default=-1) + 1 - min(L.vertices, default=0)
    return SimplicialComplex(K.dim, list(K.facets) + [tuple(v + shift for v in f) for f in L.facets])


GENERATORS = {
    "boundary_simplex": boundary_simplex,
    "cross_polytope": cross_polytope,
    "cyclic_sphere": cyclic_sphere,
    "starred_simplex": starred_simplex,
    "polygon": polygon,
}


def generate(kind: str, *args, **kwargs) -> SimplicialComplex:
    """Named example complexes.

    ``kind`` is one of ``boundary_simplex(d)``, ``cross_polytope(d)``,
    ``cyclic_sphere(polytope_dim, n)``, ``starred_simplex(d)``,
    ``polygon(n)`` or ``cone(K)``.
    """
    if kind == "cone":
        return cone(*args, **kwargs)
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise BadParams(f"unknown generator {kind!r}") from None
    try:
        return fn(*args, **kwargs)
    except TypeError as exc:
        raise BadParams(str(exc)) from None
