"""Perspectivities, projectivities along facet paths, and the odd subcomplex."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex import (
    Face,
    SimplicialComplex,
    _link_facets,
    as_face,
    is_locally_strongly_connected,
    is_strongly_connected,
)
from .errors import (
    InvalidPath,
    NotCodim2,
    NotLocallyStronglyConnected,
    NotNeighbors,
    NotStronglyConnected,
    StarNotCycle,
)
from .perm import Perm, closure, orbits


class FacetPath(tuple):
    """A sequence of facets, consecutive ones sharing a ridge."""

    def __new__(cls, facets: Iterable):
        return super().__new__(cls, (as_face(f) for f in facets))

    @property
    def start(self) -> Face:
        return self[0]

    @property
    def end(self) -> Face:
        return self[-1]

    @property
    def is_closed(self) -> bool:
        return len(self) > 0 and self[0] == self[-1]

    def concat(self, other: Sequence) -> "FacetPath":
        other = FacetPath(other)
        if self.end != other.start:
            raise InvalidPath("paths do not meet")
        return FacetPath(tuple(self) + tuple(other[1:]))

    def inverse(self) -> "FacetPath":
        return FacetPath(reversed(self))

    def validate(self, K: SimplicialComplex) -> "FacetPath":
        if not self:
            raise InvalidPath("empty facet path")
        for f in self:
            if f not in K.facet_index:
                raise InvalidPath(f"{list(f)} is not a facet")
        for s, t in zip(self, self[1:]):
            if len(set(s) & set(t)) != K.dim:
                raise InvalidPath(f"{list(s)} and {list(t)} do not share a ridge")
        return self


@dataclass(frozen=True)
class VertexBijection:
    """A bijection V(source) -> V(target)."""

    source: Face
    target: Face
    mapping: dict

    def __call__(self, v):
        return self.mapping[v]

    def then(self, other: "VertexBijection") -> "VertexBijection":
        """``other o self``."""
        if other.source != self.target:
            raise InvalidPath("bijections are not composable")
        return VertexBijection(self.source, other.target, {v: other.mapping[w] for v, w in self.mapping.items()})

    def inverse(self) -> "VertexBijection":
        return VertexBijection(self.target, self.source, {w: v for v, w in self.mapping.items()})

    def as_perm(self) -> Perm:
        if self.source != self.target:
            raise InvalidPath("not a closed path")
        return Perm(self.mapping)


def perspectivity(K: SimplicialComplex, sigma, tau) -> VertexBijection:
    """Fix the shared ridge, send the vertex of ``sigma`` off it to the one of ``tau``."""
    s, t = K.facet(sigma), K.facet(tau)
    common = set(s) & set(t)
    if s == t or len(common) != K.dim:
        raise NotNeighbors(f"{list(s)} and {list(t)} are not neighbors")
    (a,) = set(s) - common
    (b,) = set(t) - common
    return VertexBijection(s, t, {v: (b if v == a else v) for v in s})


def _transport(mapping: dict, s: Face, t: Face) -> None:
    """In place: push a map landing in V(s) across to V(t)."""
    ss, ts = set(s), set(t)
    (a,) = ss - ts
    (b,) = ts - ss
    for k, v in mapping.items():
        if v == a:
            mapping[k] = b


def projectivity(K: SimplicialComplex, path: Sequence) -> VertexBijection:
    """Composite of the perspectivities along ``path``."""
    path = FacetPath(path).validate(K)
    m = {v: v for v in path[0]}
    for s, t in zip(path, path[1:]):
        _transport(m, s, t)
    return VertexBijection(path[0], path[-1], m)


def path_perm(path: Sequence[Face]) -> dict:
    """Projectivity along an already-valid path, as a plain dict (no checks)."""
    m = {v: v for v in path[0]}
    for s, t in zip(path, path[1:]):
        if s != t:
            _transport(m, s, t)
    return m


# -- dual graph trees --------------------------------------------------------


def bfs_tree(K: SimplicialComplex, root: int, allowed: set[int] | None = None) -> dict[int, int | None]:
    """Parent pointers of a BFS tree in the dual graph (neighbors in id order)."""
    parent: dict[int, int | None] = {root: None}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in K.neighbors(i):
            if j in parent or (allowed is not None and j not in allowed):
                continue
            parent[j] = i
            queue.append(j)
    return parent


def tree_path(parent: dict[int, int | None], node: int) -> list[int]:
    """Root-to-node path in a parent-pointer tree."""
    out = [node]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    out.reverse()
    return out


def fundamental_cycles(K: SimplicialComplex, root: int, allowed: set[int] | None = None) -> list[list[int]]:
    """Closed facet-id paths at ``root``: tree path, one chord, tree path back."""
    parent = bfs_tree(K, root, allowed)
    loops = []
    for a in sorted(parent):
        for b in K.neighbors(a):
            if b not in parent or b <= a or parent.get(a) == b or parent.get(b) == a:
                continue
            loops.append(tree_path(parent, a) + tree_path(parent, b)[::-1])
    return loops


@dataclass
class ProjectivityGroup:
    base: Face
    elements: frozenset
    generators: list[tuple[FacetPath, Perm]]
    orbits: list[tuple]
    n_cycles: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def orbit_sizes(self) -> list[int]:
        return sorted(len(o) for o in self.orbits)

    def is_abelian(self) -> bool:
        gens = [g for _, g in self.generators]
        return all(a * b == b * a for a in gens for b in gens)

    def is_full_symmetric_on_orbits(self) -> bool:
        """True when the group is the product of the symmetric groups on its orbits."""
        from math import factorial, prod

        return self.order == prod(factorial(len(o)) for o in self.orbits)

    def as_dict(self) -> dict:
        return {
            "base": list(self.base),
            "order": self.order,
            "orbits": [list(o) for o in self.orbits],
            "generators": [
                {"path": [list(f) for f in p], "perm": g.cycle_string()} for p, g in self.generators
            ],
        }


def projectivity_group(K: SimplicialComplex, sigma0=0) -> ProjectivityGroup:
    """The group of projectivities at ``sigma0`` with its orbits on V(sigma0).

    Generators come from the fundamental cycles of the dual graph; the group
    is then closed by exhaustive enumeration.
    """
    if not is_strongly_connected(K):
        raise NotStronglyConnected("the dual graph is disconnected")
    root = K.facet_id(sigma0)
    base = K.facets[root]
    parent = bfs_tree(K, root)
    # maps V(base) -> V(facet) along the tree path
    reach: dict[int, dict] = {root: {v: v for v in base}}
    order = [root]
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in K.neighbors(i):
            if parent.get(j) == i and j not in reach:
                m = dict(reach[i])
                _transport(m, K.facets[i], K.facets[j])
                reach[j] = m
                queue.append(j)
                order.append(j)
    gens: dict[Perm, FacetPath] = {}
    n_cycles = 0
    for a in order:
        for b in K.neighbors(a):
            if b <= a or parent.get(a) == b or parent.get(b) == a:
                continue
            n_cycles += 1
            m = dict(reach[a])
            _transport(m, K.facets[a], K.facets[b])
            back = {w: v for v, w in reach[b].items()}
            g = Perm({v: back[w] for v, w in m.items()})
            if not g.is_identity() and g not in gens:
                ids = tree_path(parent, a) + tree_path(parent, b)[::-1]
                gens[g] = FacetPath(K.facets[i] for i in ids)
    elements = frozenset(closure(gens, base))
    return ProjectivityGroup(
        base,
        elements,
        [(p, g) for g, p in gens.items()],
        orbits(gens, base),
        n_cycles,
    )


# -- the odd subcomplex ----------------------------------------------------


def _two_colorable(edges: Iterable[Face]) -> bool:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    side: dict[int, int] = {}
    for s in adj:
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return False
    return True


def is_odd_face(K: SimplicialComplex, f: Face) -> bool:
    return not _two_colorable(_link_facets(K, f))


@dataclass(frozen=True)
class OddSubcomplex:
    odd_faces: frozenset

    def __iter__(self):
        return iter(sorted(self.odd_faces))

    def __len__(self):
        return len(self.odd_faces)

    def __contains__(self, f):
        return as_face(f) in self.odd_faces

    def as_list(self) -> list[list[int]]:
        return [list(f) for f in sorted(self.odd_faces)]

    def vertices(self) -> set[int]:
        return {v for f in self.odd_faces for v in f}


def odd_subcomplex(K: SimplicialComplex, *, check: bool = True) -> OddSubcomplex:
    """Codimension-2 faces whose link graph is not bipartite."""
    if check and not is_locally_strongly_connected(K):
        raise NotLocallyStronglyConnected("some star is not strongly connected")
    if K.dim < 2:
        return OddSubcomplex(frozenset())
    return OddSubcomplex(frozenset(f for f in K.faces(K.dim - 2) if is_odd_face(K, f)))


# -- loops around codimension-2 faces --------------------------------------


def shortest_path(K: SimplicialComplex, source, targets: set[int]) -> list[int]:
    """BFS path of facet ids from ``source`` to the nearest id in ``targets``."""
    root = K.facet_id(source)
    parent = {root: None}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        if i in targets:
            return tree_path(parent, i)
        for j in K.neighbors(i):
            if j not in parent:
                parent[j] = i
                queue.append(j)
    raise NotStronglyConnected("target facets unreachable")


def loop_around(K: SimplicialComplex, sigma0, f, gamma: Sequence) -> FacetPath:
    """The path ``gamma delta gamma^-`` with ``delta`` once around ``f``.

    ``delta`` starts at the end of ``gamma`` and first steps to its
    lexicographically smaller neighbor inside the star of ``f``.
    """
    f = as_face(f)
    if len(f) != K.dim - 1 or not K.is_face(f):
        raise NotCodim2(f"{list(f)} is not a codimension-2 face")
    gamma = FacetPath(gamma).validate(K)
    if gamma.start != K.facet(sigma0):
        raise InvalidPath("gamma must start at sigma0")
    sigma = gamma.end
    if not set(f) <= set(sigma):
        raise InvalidPath("gamma must end in the star of f")
    star_ids = K.facets_containing(f)
    fs = set(f)
    deg: dict[int, int] = {}
    for i in star_ids:
        for v in K.facets[i]:
            if v not in fs:
                deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()) or len(star_ids) < 3:
        raise StarNotCycle(f"the link of {list(f)} is not a cycle")
    in_star = set(star_ids)
    delta = [sigma]
    prev = None
    cur = sigma
    while True:
        nbrs = sorted(K.facets[j] for j in K.neighbors(K.facet_index[cur]) if j in in_star)
        if prev is None:
            nxt = nbrs[0]
        else:
            nxt = next(n for n in nbrs if n != prev)
        prev, cur = cur, nxt
        delta.append(cur)
        if cur == sigma:
            break
        if len(delta) > len(star_ids) + 1:
            raise StarNotCycle(f"the link of {list(f)} is not a single cycle")
    if len(delta) != len(star_ids) + 1:
        raise StarNotCycle(f"the link of {list(f)} is not a single cycle")
    return gamma.concat(delta).concat(gamma.inverse())


def reduced_group_generators(K: SimplicialComplex, sigma0=0) -> list[tuple[Face, FacetPath, Perm]]:
    """One loop around every odd codimension-2 face, with its projectivity."""
    root = K.facet(sigma0)
    out = []
    for f in odd_subcomplex(K):
        ids = shortest_path(K, root, set(K.facets_containing(f)))
        gamma = [K.facets[i] for i in ids]
        loop = loop_around(K, root, f, gamma)
        out.append((f, loop, Perm(path_perm(loop))))
    return out
