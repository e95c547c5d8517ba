"""Foldability and extension of partial colorings by stellar edge subdivisions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .complex import Face, SimplicialComplex, as_face, cone, is_strongly_connected
from .errors import ImproperInputColoring, NotInduced, NotStronglyConnected
from .subdivision import SubdivisionScript, fresh_vertex, stellar_subdivide_edge, subdivide_edges


@dataclass
class VertexColoring:
    colors: dict[int, int]

    def __getitem__(self, v):
        return self.colors[v]

    def __len__(self):
        return len(self.colors)

    @property
    def n_colors(self) -> int:
        return len(set(self.colors.values()))

    def conflicts(self, K: SimplicialComplex, domain: Iterable[int] | None = None) -> list[Face]:
        dom = set(self.colors) if domain is None else set(domain)
        return sorted(
            e for e in K.edges() if e[0] in dom and e[1] in dom and self.colors[e[0]] == self.colors[e[1]]
        )

    def is_proper(self, K: SimplicialComplex, domain: Iterable[int] | None = None) -> bool:
        return not self.conflicts(K, domain)


@dataclass
class NotFoldable:
    """Propagation failed: ``vertex`` of ``facet`` was forced to two colors."""

    facet: Face
    vertex: int
    colors: tuple[int, int]

    def __bool__(self):
        return False


def find_foldable_coloring(K: SimplicialComplex, sigma0=0) -> VertexColoring | NotFoldable:
    """A (d+1)-coloring, unique up to renaming, or the first propagation conflict."""
    if not is_strongly_connected(K):
        raise NotStronglyConnected("coloring propagation needs a strongly connected complex")
    root = K.facet_id(sigma0)
    colors = {v: c for c, v in enumerate(K.facets[root])}
    seen = {root}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in K.neighbors(i):
            (a,) = set(K.facets[i]) - set(K.facets[j])
            (b,) = set(K.facets[j]) - set(K.facets[i])
            if b in colors:
                if colors[b] != colors[a]:
                    return NotFoldable(K.facets[j], b, (colors[b], colors[a]))
            else:
                colors[b] = colors[a]
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return VertexColoring(colors)


def is_foldable(K: SimplicialComplex) -> bool:
    return bool(find_foldable_coloring(K))


# -- extension -----------------------------------------------------------------


@dataclass
class RoundRecord:
    round: int
    subdivided: int
    facets: int


@dataclass
class Extension:
    complex: SimplicialComplex
    coloring: VertexColoring
    script: SubdivisionScript
    rounds: list[RoundRecord] = field(default_factory=list)
    presubdivided: int = 0

    def __iter__(self):
        # unpacks as (K', coloring, script)
        return iter((self.complex, self.coloring, self.script))


def _is_induced(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    if not L.facets:
        return True
    lv = set(L.vertices)
    lfaces = set()
    for f in L.facets:
        lfaces.add(f)
    # every face of K spanned by L-vertices must be a face of L
    for f in K.facets:
        inside = tuple(v for v in f if v in lv)
        if len(inside) >= 2 and not any(set(inside) <= set(g) for g in L.facets):
            return False
    return True


def _check_round(K: SimplicialComplex, colors: dict[int, int], i: int) -> None:
    for f in K.facets:
        cs = [colors[v] for v in f]
        for j in range(i):
            assert cs.count(j) == 1, f"round {i}: facet {f} has {cs.count(j)} vertices of color {j}"


def _greedy_precolor(K: SimplicialComplex, colors: dict[int, int], n: int) -> dict[int, int]:
    out = dict(colors)
    for v in K.vertices:
        if v in out:
            continue
        used = {out[u] for f in K.facets_containing((v,)) for u in K.facets[f] if u in out}
        free = [c for c in range(n) if c not in used]
        out[v] = free[0] if free else 0
    return out


def extend_coloring(
    K: SimplicialComplex,
    L: SimplicialComplex | Iterable[Iterable[int]] | None,
    coloring: dict[int, int] | VertexColoring,
    k: int | None = None,
    *,
    make_induced: bool = False,
    greedy: bool = False,
    prefold: bool = False,
    check_rounds: bool = True,
) -> Extension:
    """Refine ``K`` by edge subdivisions until the partial coloring on ``L`` extends.

    Vertices outside ``L`` start with color 0; round ``i`` subdivides every
    edge whose endpoints both have color ``i-1`` and colors the new vertex
    ``i``.  After ``d`` rounds the coloring is proper with ``max(k, d+1)``
    colors and ``L`` is untouched.

    With ``prefold`` the complex is first made foldable by a parity plan
    that leaves ``L`` alone; if the resulting coloring agrees with the given
    one on ``L`` after renaming colors, it is used as the start of the
    rounds, which then have nothing left to do.
    """
    d = K.dim
    if L is None:
        L = SimplicialComplex(d, [], check=False)
    elif not isinstance(L, SimplicialComplex):
        faces = [as_face(f) for f in L]
        L = SimplicialComplex(max((len(f) - 1 for f in faces), default=0), faces, check=False)
    colors = dict(coloring.colors if isinstance(coloring, VertexColoring) else coloring)
    lv = set(L.vertices)
    if set(colors) != lv:
        raise ImproperInputColoring("the coloring must be defined exactly on the vertices of L")
    if k is None:
        k = max(colors.values(), default=-1) + 1
    if any(not 0 <= c < k for c in colors.values()):
        raise ImproperInputColoring(f"colors must lie in 0..{k - 1}")
    for f in L.facets:
        cs = [colors[v] for v in f]
        if len(set(cs)) != len(cs):
            raise ImproperInputColoring(f"face {list(f)} of L is not properly colored")
    for f in L.facets:
        if not K.is_face(f):
            raise NotInduced(f"{list(f)} is not a face of K")

    script = SubdivisionScript(K, [])
    cur = K
    pre = 0
    if not _is_induced(cur, L):
        if not make_induced:
            raise NotInduced("L is not an induced subcomplex of K")
        lfaces = {e for f in L.facets for e in _edges(f)}
        for e in sorted(cur.edges()):
            if e[0] in lv and e[1] in lv and e not in lfaces:
                w = fresh_vertex(cur)
                cur, _ = stellar_subdivide_edge(cur, e, w)
                script.steps.append((e, w))
                pre += 1

    if prefold:
        start = _prefold(cur, L, colors, script)
        if start is not None:
            cur, colors = start
    if greedy:
        colors = _greedy_precolor(cur, colors, max(k, d + 1))
        if VertexColoring(colors).is_proper(cur):
            return Extension(cur, VertexColoring(colors), script, [], pre)
        colors = {v: c for v, c in colors.items() if v in lv}
    for v in cur.vertices:
        colors.setdefault(v, 0)

    rounds = []
    for i in range(1, d + 1):
        # subdividing creates no new edge with both ends colored i-1
        bad = sorted(e for e in cur.edges() if colors[e[0]] == i - 1 and colors[e[1]] == i - 1)
        assert not any(e[0] in lv and e[1] in lv for e in bad), "an edge of L was scheduled"
        cur, steps = subdivide_edges(cur, bad)
        for _, w in steps:
            colors[w] = i
        script.steps.extend(steps)
        rounds.append(RoundRecord(i, len(steps), len(cur.facets)))
        if check_rounds and not greedy:
            _check_round(cur, colors, i)
    return Extension(cur, VertexColoring(colors), script, rounds, pre)


def _prefold(K: SimplicialComplex, L: SimplicialComplex, colors: dict[int, int], script: SubdivisionScript):
    from .errors import Infeasible
    from .parity import plan_parity

    try:
        plan = plan_parity(K, [])
    except Infeasible:
        return None
    lv = set(L.vertices)
    if any(e[0] in lv and e[1] in lv for e, _ in plan.script.steps):
        return None
    K2 = plan.complex
    fold = find_foldable_coloring(K2) if is_strongly_connected(K2) else None
    if not fold:
        return None
    rename: dict[int, int] = {}
    for v, c in colors.items():
        if rename.setdefault(fold[v], c) != c:
            return None
    if len(set(rename.values())) != len(rename):
        return None
    free = iter(c for c in range(K.dim + 1 + len(rename)) if c not in rename.values())
    for c in sorted(set(fold.colors.values())):
        if c not in rename:
            rename[c] = next(free)
    script.steps.extend(plan.script.steps)
    return K2, {v: rename[c] for v, c in fold.colors.items()}


def _edges(f: Face):
    return [(f[a], f[b]) for a in range(len(f)) for b in range(a + 1, len(f))]


def colored_cone_ball(
    S: SimplicialComplex, coloring: dict[int, int] | VertexColoring, *, greedy: bool = False
) -> tuple[SimplicialComplex, VertexColoring]:
    """A ball with boundary ``S`` whose coloring extends the one on ``S``."""
    colors = coloring.colors if isinstance(coloring, VertexColoring) else coloring
    C = cone(S)
    ext = extend_coloring(C, S, colors, greedy=greedy)
    return ext.complex, ext.coloring
