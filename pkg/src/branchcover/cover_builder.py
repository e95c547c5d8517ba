"""Building a sphere whose partial unfolding realizes a prescribed simple cover.

The builder walks a shelling of the base sphere ``S'``.  Every facet added to
the growing ball ``D`` gets a coloring of its vertices by ``0..d`` obtained by
pushing the coloring of the base facet along a spanning tree of the dual
graph.  Before a facet is added it is recolored using the oracle and, if two
of its vertices end up with the same color, refined by stellar subdivisions
of the offending edges.  Each new dual chord of ``D`` is checked against the
oracle, which makes the returned certificate a check of the whole invariant
on a generating set of loops.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .complex import Face, SimplicialComplex, _restriction, as_face, find_shelling, verify_shelling
from .errors import (
    BadParams,
    BranchingNotCodim2,
    CarrierProjectionFailed,
    ComplexError,
    NotAShelling,
    OracleInconsistent,
)
from .perm import Perm, orbits
from .projectivity import fundamental_cycles, path_perm
from .subdivision import CarrierMap, SubdivisionScript, stellar_subdivide_edge


class BoundExceeded(ComplexError):
    """A facet needed more subdivisions than the construction allows."""


# -- oracles ---------------------------------------------------------------


class MonodromyOracle:
    """Monodromy of a simple cover, queried on closed facet paths at the base facet.

    ``query`` receives a loop in the current refinement together with the
    carrier map to the base sphere and returns a permutation of ``0..d``.
    """

    degree: int

    def query(self, loop: Sequence[Face], carrier: CarrierMap | None = None) -> Perm:
        raise NotImplementedError


class TrivialOracle(MonodromyOracle):
    def __init__(self, degree: int):
        if degree < 2:
            raise BadParams("degree must be at least 2")
        self.degree = degree
        self._id = Perm.identity(range(degree))

    def query(self, loop, carrier=None) -> Perm:
        return self._id


def trivial_oracle(degree: int) -> TrivialOracle:
    return TrivialOracle(degree)


class ReferenceOracle(MonodromyOracle):
    """Monodromy read off the projectivities of a reference complex.

    Loops are projected to the base sphere by their facet carriers.  If
    ``Kref`` is itself a refinement of the base (``ref_carrier`` given) the
    projected loop is lifted back: inside the refinement of one base facet it
    moves by a shortest path, and it crosses base ridges where ``Kref`` does.
    Neither move can wind around a codimension-2 face of the base.
    """

    def __init__(self, Kref: SimplicialComplex, sigma0=0, iota: dict | None = None,
                 ref_carrier: CarrierMap | None = None):
        self.K = Kref
        self.base = Kref.facet(sigma0)
        self.degree = Kref.dim + 1
        self.iota = dict(iota) if iota is not None else {v: c for c, v in enumerate(self.base)}
        if sorted(self.iota) != list(self.base) or sorted(self.iota.values()) != list(range(self.degree)):
            raise BadParams("iota must be a bijection from the base facet onto 0..d")
        self.ref_carrier = ref_carrier
        self._groups: dict[Face, set[int]] = {}
        self._entries: dict[Face, list[int]] = {}
        self._base = Kref
        if ref_carrier is not None:
            self._base = SimplicialComplex(Kref.dim, set(ref_carrier.facet_carrier.values()), check=False)
            for i, f in enumerate(Kref.facets):
                self._groups.setdefault(ref_carrier.facet_carrier[f], set()).add(i)
            # base ridge carried by each refined ridge, for crossing between groups
            self._cross: dict[int, list[tuple[int, Face]]] = {}
            for i, f in enumerate(Kref.facets):
                out = []
                for j in Kref.neighbors(i):
                    r = tuple(sorted(set(f) & set(Kref.facets[j])))
                    out.append((j, ref_carrier.face_carrier(r)))
                self._cross[i] = out

    # projection to the base
    def _connect(self, K: SimplicialComplex, s: Face, t: Face) -> list[Face]:
        common = set(s) & set(t)
        if len(common) == K.dim:
            return [t]
        if not common:
            raise CarrierProjectionFailed(f"carriers {list(s)} and {list(t)} are disjoint")
        allowed = set(K.facets_containing(tuple(sorted(common))))
        src, dst = K.facet_index[s], K.facet_index[t]
        prev = {src: None}
        queue = deque([src])
        while queue:
            i = queue.popleft()
            if i == dst:
                break
            for j in K.neighbors(i):
                if j in allowed and j not in prev:
                    prev[j] = i
                    queue.append(j)
        if dst not in prev:
            raise CarrierProjectionFailed(f"no path from {list(s)} to {list(t)} in the star of {sorted(common)}")
        out = [dst]
        while prev[out[-1]] != src:
            out.append(prev[out[-1]])
        return [K.facets[i] for i in reversed(out)]

    def project(self, loop: Sequence[Face], carrier: CarrierMap | None, base: SimplicialComplex) -> list[Face]:
        seq: list[Face] = []
        for f in loop:
            c = as_face(f) if carrier is None else carrier.facet_carrier[as_face(f)]
            if c not in base.facet_index:
                raise CarrierProjectionFailed(f"{list(c)} is not a facet of the base")
            if not seq:
                seq.append(c)
            elif c != seq[-1]:
                seq.extend(self._connect(base, seq[-1], c))
        return seq

    def _walk(self, start: int, group: set[int], goal) -> list[int]:
        prev = {start: None}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            if goal(i):
                out = [i]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return out[::-1]
            for j in self.K.neighbors(i):
                if j in group and j not in prev:
                    prev[j] = i
                    queue.append(j)
        raise CarrierProjectionFailed("refinement of a base facet is not strongly connected")

    def _entry(self, c: Face) -> list[int]:
        """Fixed path in ``Kref`` from the base facet into the facets over ``c``."""
        if c not in self._entries:
            home = self.K.facet_index[self.base]
            if self.ref_carrier is None:
                goal = {self.K.facet_index[c]} if c in self.K.facet_index else set()
            else:
                goal = self._groups.get(c, set())
            if not goal:
                raise CarrierProjectionFailed(f"{list(c)} is not a facet of the base")
            self._entries[c] = self._walk(home, set(range(len(self.K.facets))), lambda i: i in goal)
        return self._entries[c]

    def lift(self, seq: Sequence[Face]) -> list[Face]:
        """A closed path in ``Kref`` at the base facet over the closed base path ``seq``.

        Loops based elsewhere are conjugated by a fixed connecting path.
        """
        K = self.K
        entry = self._entry(seq[0])
        if self.ref_carrier is None:
            ids = entry + [K.facet_index[f] for f in seq[1:]] + entry[::-1][1:]
            return [K.facets[i] for i in ids]
        cur = entry[-1]
        ids = list(entry)
        for s, t in zip(seq, seq[1:]):
            r = tuple(sorted(set(s) & set(t)))
            tg = self._groups[t]
            hit = {}

            def goal(i):
                for j, c in self._cross[i]:
                    if c == r and j in tg:
                        hit[i] = j
                        return True
                return False

            walk = self._walk(cur, self._groups[s], goal)
            ids.extend(walk[1:])
            cur = hit[walk[-1]]
            ids.append(cur)
        home = entry[-1]
        ids.extend(self._walk(cur, self._groups[seq[-1]], lambda i: i == home)[1:])
        ids.extend(entry[::-1][1:])
        return [K.facets[i] for i in ids]

    def query(self, loop, carrier=None) -> Perm:
        seq = self.project(loop, carrier, self._base)
        if seq[0] != seq[-1]:
            raise CarrierProjectionFailed("projected path is not closed")
        m = path_perm(self.lift(seq))
        return Perm({self.iota[v]: self.iota[m[v]] for v in self.base})


def reference_oracle(Kref: SimplicialComplex, sigma0=0, iota: dict | None = None,
                     ref_carrier: CarrierMap | None = None) -> ReferenceOracle:
    return ReferenceOracle(Kref, sigma0, iota, ref_carrier)


# -- the subgroups H ---------------------------------------------------------


@dataclass
class SubgroupH:
    face: Face
    generators: list[Perm]
    orbits: list[tuple]

    @property
    def trivial_orbits(self) -> set[int]:
        return {o[0] for o in self.orbits if len(o) == 1}


def subgroup_H(S: SimplicialComplex, carrier: CarrierMap | None, f: Iterable[int],
               gamma: Sequence[Face], oracle: MonodromyOracle) -> SubgroupH:
    """Monodromy of loops that run along ``gamma`` and then around inside st(f)."""
    f = as_face(f)
    gamma = [as_face(x) for x in gamma]
    root = S.facet_index[gamma[-1]]
    if not set(f) <= set(gamma[-1]):
        raise BadParams("gamma must end in the star of f")
    star = set(S.facets_containing(f))
    back = gamma[::-1][1:]
    gens = []
    for cyc in fundamental_cycles(S, root, star):
        loop = gamma + [S.facets[i] for i in cyc[1:]] + back
        g = oracle.query(loop, carrier)
        if not g.is_identity() and g not in gens:
            gens.append(g)
    return SubgroupH(f, gens, orbits(gens, range(oracle.degree)))


# -- the builder -------------------------------------------------------------


@dataclass
class StepRecord:
    facet: Face
    case: str
    restriction: Face
    recolored: tuple = ()
    subdivided: list = field(default_factory=list)
    added: int = 1

    def as_dict(self) -> dict:
        return {
            "facet": list(self.facet),
            "case": self.case,
            "restriction": list(self.restriction),
            "recolored": list(self.recolored),
            "subdivided": [{"edge": list(e), "new": w, "color": c} for e, w, c in self.subdivided],
            "added": self.added,
        }


@dataclass
class Certificate:
    steps: list[StepRecord] = field(default_factory=list)
    loop_checks: int = 0
    loop_failures: list = field(default_factory=list)
    vertex_checks: int = 0
    vertex_failures: list = field(default_factory=list)
    colors: dict = field(default_factory=dict)  # facet -> coloring along the tree path

    @property
    def ok(self) -> bool:
        return not self.loop_failures and not self.vertex_failures

    def case_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out[s.case] = out.get(s.case, 0) + 1
        return out

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "loop_checks": self.loop_checks,
            "loop_failures": [repr(x) for x in self.loop_failures],
            "vertex_checks": self.vertex_checks,
            "vertex_failures": [repr(x) for x in self.vertex_failures],
            "cases": self.case_counts(),
            "steps": [s.as_dict() for s in self.steps],
            "coloring": [
                {"facet": list(f), "colors": [c[v] for v in f]} for f, c in sorted(self.colors.items())
            ],
        }


@dataclass
class BuildResult:
    complex: SimplicialComplex
    script: SubdivisionScript
    shelling: list[Face]
    certificate: Certificate
    carrier: CarrierMap

    def __iter__(self):
        return iter((self.complex, self.script, self.shelling, self.certificate))


def _push(col: dict, s: Face, t: Face) -> dict:
    (a,) = set(s) - set(t)
    (b,) = set(t) - set(s)
    out = {v: c for v, c in col.items() if v != a}
    out[b] = col[a]
    return out


class _Builder:
    def __init__(self, Sprime, order, oracle, iota, strict, outer: CarrierMap | None = None):
        self.base = Sprime
        self.d = Sprime.dim
        self.oracle = oracle
        self.iota = iota
        self.strict = strict
        self.S = Sprime
        # carrier to the builder's base (shelling groups) and to the oracle's base
        self.local = CarrierMap.identity(Sprime)
        self.carrier = outer if outer is not None else self.local
        self.steps: list[tuple[Face, int]] = []
        self.pos = {f: n for n, f in enumerate(order)}
        self.D: list[Face] = []
        self.Dset: set[Face] = set()
        self.ridges: set[Face] = set()
        self.faces: set[Face] = set()
        self.parent: dict[Face, Face | None] = {}
        self.col: dict[Face, dict] = {}
        self.cert = Certificate()
        self.sigma0 = order[0]

    # bookkeeping
    def path(self, f: Face) -> list[Face]:
        out = [f]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out[::-1]

    def ridge_owner(self, r: Face) -> Face:
        for i in self.S.facets_containing(r):
            f = self.S.facets[i]
            if f in self.Dset:
                return f
        raise NotAShelling(f"ridge {list(r)} is not in the ball")

    def restriction(self, f: Face) -> Face:
        return _restriction(f, self.ridges)

    def attachable(self, f: Face) -> bool:
        W = self.restriction(f)
        return bool(W) and W not in self.faces

    def add(self, f: Face, parent: Face | None, col: dict) -> None:
        self.parent[f] = parent
        self.col[f] = col
        self.D.append(f)
        self.Dset.add(f)
        self.ridges.update(combinations(f, self.d))
        for k in range(1, len(f) + 1):
            self.faces.update(combinations(f, k))
        if parent is not None:
            self.check_chords(f)

    def oracle_perm(self, loop: list[Face]) -> Perm:
        return self.oracle.query(loop, self.carrier)

    def projectivity_in_colors(self, loop: list[Face]) -> Perm:
        m = path_perm(loop)
        return Perm({self.iota[v]: self.iota[m[v]] for v in self.sigma0})

    def check_chords(self, f: Face) -> None:
        for j in self.S.neighbors(self.S.facet_index[f]):
            g = self.S.facets[j]
            if g not in self.Dset or g == self.parent[f]:
                continue
            loop = self.path(f) + self.path(g)[::-1]
            want = self.oracle_perm(loop)
            got = self.projectivity_in_colors(loop)
            self.cert.loop_checks += 1
            if want != got:
                self.cert.loop_failures.append((f, g, got.cycle_string(), want.cycle_string()))
                if self.strict:
                    raise OracleInconsistent(
                        f"loop through {list(f)}|{list(g)}: projectivity {got.cycle_string()}, "
                        f"oracle {want.cycle_string()}"
                    )

    def H(self, f, gamma) -> SubgroupH:
        return subgroup_H(self.S, self.carrier, f, gamma, self.oracle)

    # facet selection
    def next_facet(self) -> Face | None:
        rest = [f for f in self.S.facets if f not in self.Dset]
        if not rest:
            return None
        groups: dict[int, list[Face]] = {}
        for f in rest:
            groups.setdefault(self.pos[self.local.facet_carrier[f]], []).append(f)
        for key in sorted(groups):
            cands = [f for f in groups[key] if self.attachable(f)]
            if cands:
                return min(cands, key=lambda f: (-len(self.restriction(f)), f))
        raise NotAShelling("no remaining facet can be attached to the ball")

    # one shelling step
    def process(self, sigma: Face) -> None:
        W = self.restriction(sigma)
        rec = StepRecord(sigma, "iii", W)
        self.cert.steps.append(rec)
        if len(W) == 1:
            rec.case = "i"
            (v,) = W
            f = tuple(x for x in sigma if x != v)
            tau = self.ridge_owner(f)
            gamma = self.path(tau) + [sigma]
            c = _push(self.col[tau], tau, sigma)
            triv = self.H((v,), gamma).trivial_orbits
            if not triv:
                raise OracleInconsistent(f"no trivial orbit at vertex {v}")
            if c[v] not in triv:
                rec.recolored = (v, c[v], min(triv))
                c[v] = min(triv)
            self.refine(sigma, c, gamma, tau, rec)
        elif len(W) == 2:
            rec.case = "ii"
            v, w = W
            f = tuple(x for x in sigma if x not in W)
            sv = self.ridge_owner(tuple(x for x in sigma if x != w))
            sw = self.ridge_owner(tuple(x for x in sigma if x != v))
            gamma = self.path(sv)
            delta = self.star_path(f, sv, sw)
            cw = self.col[sv]
            for s, t in zip(delta, delta[1:]):
                cw = _push(cw, s, t)
            if any(cw[x] != self.col[sv][x] for x in f):
                raise OracleInconsistent(f"colorings disagree on {list(f)}")
            c = {x: self.col[sv][x] for x in f}
            c[v] = self.col[sv][v]
            loop = gamma + delta[1:] + [sigma, sv] + gamma[::-1][1:]
            m = self.oracle_perm(loop)
            if not (m.is_identity() or m.is_transposition()):
                raise OracleInconsistent(f"loop around {list(f)} has monodromy {m.cycle_string()}")
            c[w] = m(cw[w])
            if c[w] != cw[w]:
                rec.recolored = (w, cw[w], c[w])
            self.refine(sigma, c, gamma + [sigma], sv, rec)
        else:
            if len(W) == 0 or W in self.faces:
                raise NotAShelling(f"{list(sigma)} cannot be attached")
            parent = self.ridge_owner(tuple(x for x in sigma if x != W[0]))
            self.add(sigma, parent, _push(self.col[parent], parent, sigma))

    def star_path(self, f: Face, s: Face, t: Face) -> list[Face]:
        allowed = {self.S.facet_index[g] for g in self.Dset if set(f) <= set(g)}
        src, dst = self.S.facet_index[s], self.S.facet_index[t]
        prev = {src: None}
        queue = deque([src])
        while queue:
            i = queue.popleft()
            for j in self.S.neighbors(i):
                if j in allowed and j not in prev:
                    prev[j] = i
                    queue.append(j)
        if dst not in prev:
            raise NotAShelling(f"star of {list(f)} in the ball is not connected")
        out = [dst]
        while prev[out[-1]] is not None:
            out.append(prev[out[-1]])
        return [self.S.facets[i] for i in reversed(out)]

    def refine(self, sigma: Face, c: dict, gamma: list[Face], anchor: Face, rec: StepRecord) -> None:
        """Subdivide conflicting edges of ``sigma`` until every piece is properly colored."""
        S0, car0 = self.S, self.carrier
        chi = dict(c)
        local = {v: (v,) for v in sigma}
        missing = sorted(set(range(self.d + 1)) - set(c.values()))
        x = missing[0] if len(missing) == 1 else None
        pieces = {sigma}
        H_cache: dict[Face, set[int]] = {}
        while True:
            bad = {e for p in pieces for e in combinations(p, 2) if chi[e[0]] == chi[e[1]]}
            if not bad:
                break
            if len(bad) > 1:
                raise BoundExceeded(f"refinement of {list(sigma)} has conflicting edges {sorted(bad)}")
            if len(rec.subdivided) >= self.d - 1:
                raise BoundExceeded(f"{list(sigma)} needs more than {self.d - 1} subdivisions")
            e = min(bad)
            if e in self.faces:
                raise OracleInconsistent(f"edge {list(e)} of the ball would be subdivided")
            fe = tuple(sorted(set(local[e[0]]) | set(local[e[1]])))
            if fe not in H_cache:
                H_cache[fe] = subgroup_H(S0, car0, fe, gamma, self.oracle).trivial_orbits
            # every vertex already in |f_e| counts, the endpoints of e included
            used = {chi[u] for u in local if set(local[u]) <= set(fe)}
            adm = sorted(H_cache[fe] - used)
            if not adm:
                raise OracleInconsistent(f"no admissible color for the midpoint of {list(e)}")
            color = x if x in adm else adm[0]
            w = max(self.S.vertices) + 1
            self.S, delta = stellar_subdivide_edge(self.S, e, w)
            self.carrier = self.carrier.then(delta)
            self.local = self.local.then(delta)
            self.steps.append((e, w))
            chi[w] = color
            local[w] = fe
            rec.subdivided.append((e, w, color))
            nxt = set()
            for p in pieces:
                if set(e) <= set(p):
                    for drop in e:
                        nxt.add(tuple(sorted([u for u in p if u != drop] + [w])))
                else:
                    nxt.add(p)
            pieces = nxt
        order = self.attach_order(sorted(pieces))
        rec.added = len(order)
        for p in order:
            col = {u: chi[u] for u in p}
            parent = None
            nbrs = [g for g in self.Dset if len(set(g) & set(p)) == self.d]
            inner = [g for g in nbrs if g in pieces]
            if inner:
                parent = min(inner)
            elif anchor in nbrs:
                parent = anchor
            else:
                parent = next((g for g in sorted(nbrs) if _push(self.col[g], g, p) == col), None)
                if parent is None:
                    raise OracleInconsistent(f"coloring of {list(p)} does not extend the ball")
            if _push(self.col[parent], parent, p) != col:
                raise OracleInconsistent(f"coloring of {list(p)} disagrees with its tree parent")
            self.add(p, parent, col)

    def attach_order(self, pieces: list[Face]) -> list[Face]:
        if len(pieces) == 1:
            return pieces
        ridges, faces = set(self.ridges), set(self.faces)

        def ok(f, ridges, faces):
            W = _restriction(f, ridges)
            return bool(W) and W not in faces

        for perm in permutations(pieces):
            r, fs, good = set(ridges), set(faces), True
            for f in perm:
                if not ok(f, r, fs):
                    good = False
                    break
                r.update(combinations(f, self.d))
                for k in range(1, len(f) + 1):
                    fs.update(combinations(f, k))
            if good:
                return list(perm)
        raise NotAShelling(f"refinement pieces {pieces} admit no attaching order")

    def run(self) -> None:
        s0 = self.sigma0
        self.add(s0, None, dict(self.iota))
        self.cert.steps.append(StepRecord(s0, "base", ()))
        while True:
            sigma = self.next_facet()
            if sigma is None:
                break
            self.process(sigma)

    def check_vertices(self) -> None:
        seen = set()
        for f in self.D:
            for v in f:
                if v in seen:
                    continue
                seen.add(v)
                triv = self.H((v,), self.path(f)).trivial_orbits
                self.cert.vertex_checks += 1
                if self.col[f][v] not in triv:
                    self.cert.vertex_failures.append((v, f, self.col[f][v], sorted(triv)))


def base_color_options(S: SimplicialComplex, base: Face, oracle: MonodromyOracle) -> dict[int, set[int]]:
    """Colors each vertex of the base facet may take: trivial orbits of loops in its star."""
    return {v: subgroup_H(S, None, (v,), [base], oracle).trivial_orbits for v in base}


def _match_base(base: Face, allowed: dict[int, set[int]]) -> dict[int, int]:
    for p in permutations(range(len(base))):
        if all(c in allowed[v] for v, c in zip(base, p)):
            return dict(zip(base, p))
    raise OracleInconsistent(f"no coloring of {list(base)} is fixed by the loops in its vertex stars")


def default_base_facet(S: SimplicialComplex, F: Iterable[Iterable[int]]) -> Face | None:
    """First facet avoiding every vertex of ``F``, or None."""
    touched = {v for f in F for v in f}
    return next((f for f in S.facets if not touched & set(f)), None)


@dataclass
class Isolation:
    complex: SimplicialComplex
    carrier: CarrierMap
    sigma0: Face
    steps: list[tuple[Face, int]]


def isolate_base(S: SimplicialComplex, F: Iterable[Iterable[int]], facet=None) -> Isolation:
    """Subdivide inside one facet until some facet misses ``F`` entirely.

    With ``a0..ad`` the vertices of the facet, ``a0 a1`` is split first and
    then the edge from the newest vertex to ``a2, ..., ad, a0`` in turn, each
    time keeping the half without the old vertex.  The ``d+1`` new vertices
    span a facet.  A new vertex whose carrier still lies in a face of ``F``
    (only possible when ``a0 a1`` does) is then traded for one more split
    against the newest vertex, whose carrier is the whole facet.
    """
    F = [set(f) for f in F]
    sigma = S.facets[0] if facet is None else S.facet(facet)
    if facet is None:
        # a facet with an edge off F needs no extra splits
        sigma = next((f for f in S.facets for a, b in combinations(f, 2)
                      if not any({a, b} <= g for g in F)), sigma)
    pairs = sorted(combinations(sigma, 2), key=lambda e: any(set(e) <= g for g in F))
    a0, a1 = pairs[0]
    rest = [v for v in sigma if v not in (a0, a1)]
    K, car, steps = S, CarrierMap.identity(S), []
    x, keep = None, set(sigma)

    def split(u, y):
        nonlocal K, car, keep, x
        w = max(K.vertices) + 1
        K, delta = stellar_subdivide_edge(K, (u, y), w)
        car = car.then(delta)
        steps.append((as_face((u, y)), w))
        keep = (keep - {y}) | {w}
        x = w

    def on_F(v):
        return any(set(car.face_carrier((v,))) <= f for f in F)

    split(a0, a1)
    for v in rest + [a0]:
        split(x, v)
    for v in sorted(keep):
        if v != x and on_F(v):
            split(x, v)
    T = as_face(keep)
    assert T in K.facet_index and not any(on_F(v) for v in T)
    return Isolation(K, car, T, steps)


def build_cover(
    Sprime: SimplicialComplex,
    shelling: Sequence | None = None,
    F: Iterable[Iterable[int]] = (),
    oracle: MonodromyOracle | None = None,
    sigma0=None,
    iota: dict | None = None,
    *,
    strict: bool = True,
    check_vertices: bool = True,
    isolate: bool | str = True,
) -> BuildResult:
    """Refine ``Sprime`` so that its partial unfolding has the oracle's monodromy.

    ``shelling`` defaults to one found from ``sigma0``; ``iota`` defaults to
    numbering the vertices of the base facet in increasing order.  With
    ``strict`` a failed loop check raises ``OracleInconsistent``; otherwise
    failures are only recorded in the certificate.  When no facet misses
    ``F`` and neither ``sigma0`` nor ``shelling`` is given, a base facet
    disjoint from ``F`` is first carved out by ``isolate_base`` (unless the
    first facet already admits a valid ``iota``); its subdivisions open the
    returned script.  ``isolate="always"`` forces that step.
    """
    d = Sprime.dim
    for f in F:
        f = as_face(f)
        if len(f) != d - 1 or not Sprime.is_face(f):
            raise BranchingNotCodim2(f"{list(f)} is not a codimension-2 face")
    if oracle is None:
        oracle = TrivialOracle(d + 1)
    if oracle.degree != d + 1:
        raise BadParams(f"oracle degree {oracle.degree} does not match dimension {d}")
    F = [as_face(f) for f in F]
    work, outer, pre = Sprime, None, []
    if sigma0 is None and shelling is None and (isolate == "always" or default_base_facet(Sprime, F) is None):
        first = Sprime.facets[0]
        try:
            if isolate == "always":
                raise OracleInconsistent("isolation requested")
            _match_base(first, base_color_options(Sprime, first, oracle))
        except OracleInconsistent:
            if not isolate:
                raise
            iso = isolate_base(Sprime, F)
            work, outer, pre, sigma0 = iso.complex, iso.carrier, iso.steps, iso.sigma0
    if shelling is None:
        start = work.facet(sigma0) if sigma0 is not None else (default_base_facet(work, F) or work.facets[0])
        shelling = find_shelling(work, start=start)
        if shelling is None:
            raise NotAShelling("the base sphere is not shellable")
    order = [work.facet(x) for x in shelling]
    if not verify_shelling(work, order) or len(order) != len(work.facets):
        raise NotAShelling("the given order is not a shelling of the base")
    if sigma0 is not None and work.facet(sigma0) != order[0]:
        raise NotAShelling("the shelling must start at sigma0")
    base = order[0]
    allowed = {v: subgroup_H(work, outer, (v,), [base], oracle).trivial_orbits for v in base}
    if iota is None:
        iota = _match_base(base, allowed)
    iota = {int(k): int(c) for k, c in dict(iota).items()}
    if sorted(iota) != list(base) or sorted(iota.values()) != list(range(d + 1)):
        raise BadParams("iota must be a bijection from the base facet onto 0..d")
    bad = [v for v in base if iota[v] not in allowed[v]]
    if bad:
        raise OracleInconsistent(f"iota gives vertices {bad} colors moved by loops in their stars")

    b = _Builder(work, order, oracle, iota, strict, outer)
    b.run()
    if check_vertices:
        b.check_vertices()
    if not verify_shelling(b.S, b.D):
        raise NotAShelling("the produced order is not a shelling")
    b.cert.colors = dict(b.col)
    return BuildResult(b.S, SubdivisionScript(Sprime, pre + b.steps), list(b.D), b.cert, b.carrier)


# -- color equivalence ---------------------------------------------------------


@dataclass
class EquivalenceReport:
    checked: int
    mismatches: list = field(default_factory=list)
    psi: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.stats.get("match", True)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "psi": {str(k): v for k, v in self.psi.items()},
                "mismatches": [repr(m) for m in self.mismatches], "stats": self.stats}


def check_color_equivalence(
    K: SimplicialComplex,
    K2: SimplicialComplex,
    correspondence: CarrierMap | dict | None = None,
    sigma0=0,
    sigma0_2=None,
    psi: dict | None = None,
    *,
    compare_unfoldings: bool = True,
) -> EquivalenceReport:
    """Compare projectivities of ``K2`` with those of ``K`` along carrier-projected loops.

    ``correspondence`` is a carrier map from ``K2`` to ``K`` or a dict sending
    facets of ``K2`` to facets of ``K``; ``None`` means ``K2`` equals ``K``.
    ``psi`` maps the vertices of ``sigma0`` to those of ``sigma0_2``; if it
    is omitted every bijection is tried and the first that works is
    reported in ``psi`` of the result.
    """
    from .unfolding import components, partial_unfold

    if correspondence is None:
        fmap = {f: f for f in K2.facets}
    elif isinstance(correspondence, CarrierMap):
        fmap = dict(correspondence.facet_carrier)
    else:
        fmap = {as_face(a): as_face(b) for a, b in dict(correspondence).items()}
    s0 = K.facet(sigma0)
    if sigma0_2 is None:
        cands = [f for f in K2.facets if fmap.get(f) == s0]
        if not cands:
            raise CarrierProjectionFailed("no facet of the refinement lies over sigma0")
        s0_2 = s0 if s0 in cands else cands[0]
    else:
        s0_2 = K2.facet(sigma0_2)
    if fmap.get(s0_2) != s0:
        raise CarrierProjectionFailed("base facets do not correspond")
    ref = ReferenceOracle(K, s0)
    root = K2.facet_index[s0_2]
    pairs = []
    for cyc in fundamental_cycles(K2, root):
        loop = [K2.facets[i] for i in cyc]
        proj = ref.project([fmap[f] for f in loop], None, K)
        pairs.append((loop, path_perm(proj), path_perm(loop)))

    def mismatches(psi):
        out = []
        for loop, m_base, m_ref in pairs:
            lhs = {psi[v]: psi[m_base[v]] for v in s0}
            if lhs != m_ref:
                mid = len(loop) // 2
                out.append((tuple(loop[mid - 1: mid + 1]), Perm(lhs).cycle_string(), Perm(m_ref).cycle_string()))
        return out

    if psi is None:
        tries = [dict(zip(s0, p)) for p in permutations(s0_2)]
        if set(s0) == set(s0_2):
            tries.insert(0, {v: v for v in s0})
        psi = next((t for t in tries if not mismatches(t)), tries[0])
    rep = EquivalenceReport(len(pairs), mismatches(psi), psi=dict(psi))
    if compare_unfoldings:
        a = components(partial_unfold(K, check=False))
        b = components(partial_unfold(K2, check=False))
        ea, eb = sorted(c.euler for c in a.components), sorted(c.euler for c in b.components)
        pa = sorted(c.facets_per_base for c in a.components)
        pb = sorted(c.facets_per_base for c in b.components)
        rep.stats = {"components": [len(a), len(b)], "euler": [ea, eb], "sheets": [pa, pb],
                     "match": len(a) == len(b) and ea == eb and pa == pb}
    return rep
