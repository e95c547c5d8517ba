"""Finite permutations stored as dicts, plus exhaustive group closure."""
from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Mapping


class Perm(Mapping):
    """Immutable bijection of a finite set onto itself.

    ``p(x)`` and ``p[x]`` both give the image of ``x``.  ``p * q`` is the
    composite ``p o q`` (apply ``q`` first).
    """

    __slots__ = ("_map", "_key")

    def __init__(self, mapping: Mapping | Iterable[tuple]):
        m = dict(mapping)
        if set(m.values()) != set(m):
            raise ValueError(f"not a permutation: {m}")
        self._map = m
        self._key = tuple(sorted(m.items()))

    @classmethod
    def identity(cls, domain: Iterable[Hashable]) -> "Perm":
        return cls({x: x for x in domain})

    @classmethod
    def transposition(cls, domain: Iterable[Hashable], a, b) -> "Perm":
        m = {x: x for x in domain}
        m[a], m[b] = b, a
        return cls(m)

    def __getitem__(self, x):
        return self._map[x]

    def __call__(self, x):
        return self._map[x]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        if isinstance(other, Perm):
            return self._key == other._key
        return NotImplemented

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm({x: self._map[other._map[x]] for x in other._map})

    def __invert__(self) -> "Perm":
        return Perm({v: k for k, v in self._map.items()})

    def __repr__(self):
        return f"Perm({self.cycle_string()})"

    @property
    def domain(self) -> frozenset:
        return frozenset(self._map)

    def is_identity(self) -> bool:
        return all(k == v for k, v in self._map.items())

    def support(self) -> list:
        return sorted(k for k, v in self._map.items() if k != v)

    def is_transposition(self) -> bool:
        return len(self.support()) == 2

    def cycles(self) -> list[tuple]:
        """Nontrivial cycles, each starting at its smallest element."""
        seen, out = set(), []
        for start in sorted(self._map):
            if start in seen or self._map[start] == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self._map[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)

    def conjugate(self, relabel: Mapping) -> "Perm":
        """Transport along the bijection ``relabel``: ``relabel o self o relabel^-1``."""
        return Perm({relabel[k]: relabel[v] for k, v in self._map.items()})

    def as_list(self, order: Iterable) -> list:
        return [self._map[x] for x in order]


def closure(generators: Iterable[Perm], domain: Iterable[Hashable]) -> set[Perm]:
    """All products of the generators (a finite group), by breadth-first search."""
    gens = [g for g in set(generators) if not g.is_identity()]
    ident = Perm.identity(domain)
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = g * p
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def orbits(generators: Iterable[Perm], domain: Iterable[Hashable]) -> list[tuple]:
    """Orbit partition of ``domain`` under the generated group, sorted."""
    parent = {x: x for x in domain}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for x, y in g.items():
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    blocks: dict = {}
    for x in parent:
        blocks.setdefault(find(x), []).append(x)
    return sorted(tuple(sorted(b)) for b in blocks.values())
