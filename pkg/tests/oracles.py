"""Brute-force reference implementations used as test oracles.

The oracle functions take plain facet tuples and use none of the library code.
"""
from itertools import combinations, permutations

import networkx as nx
from hypothesis import strategies as st

from branchcover.complex import boundary_simplex, cross_polytope, cyclic_sphere, starred_simplex
from branchcover.subdivision import stellar_subdivide_edge


def faces_of(facets, size):
    return {tuple(sorted(c)) for f in facets for c in combinations(f, size)}


def f_vector(facets):
    d1 = len(next(iter(facets)))
    return tuple(len(faces_of(facets, k)) for k in range(1, d1 + 1))


def link_graph(facets, g):
    gs = set(g)
    G = nx.Graph()
    for f in facets:
        if gs <= set(f):
            G.add_edge(*[v for v in f if v not in gs])
    return G


def odd_faces(facets):
    d1 = len(next(iter(facets)))
    return {g for g in faces_of(facets, d1 - 2) if not nx.is_bipartite(link_graph(facets, g))}


def _step(f, t, m):
    (a,) = set(f) - set(t)
    (b,) = set(t) - set(f)
    return tuple(b if x == a else x for x in m)


def group(facets, base):
    """All permutations of ``base`` realized by closed paths, by state search.

    A state is (facet, images of the base vertices in order).
    """
    facets = [tuple(f) for f in facets]
    d = len(base) - 1
    nbrs = {f: [t for t in facets if len(set(f) & set(t)) == d] for f in facets}
    start = (tuple(base), tuple(base))
    seen = {start}
    stack = [start]
    while stack:
        f, m = stack.pop()
        for t in nbrs[f]:
            s = (t, _step(f, t, m))
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return {m for f, m in seen if f == tuple(base)}


def orbit_partition(perms, base):
    G = nx.Graph()
    G.add_nodes_from(base)
    for m in perms:
        G.add_edges_from(zip(base, m))
    return sorted(tuple(sorted(c)) for c in nx.connected_components(G))


def unfolding_components(facets):
    """Connected components of labeled facet copies, as sorted cell lists."""
    facets = [tuple(f) for f in facets]
    d = len(facets[0]) - 1
    G = nx.Graph()
    for f in facets:
        G.add_nodes_from((f, v) for v in f)
    for f, t in combinations(facets, 2):
        if len(set(f) & set(t)) == d:
            (a,) = set(f) - set(t)
            (b,) = set(t) - set(f)
            for v in f:
                G.add_edge((f, v), (t, b if v == a else v))
    return [sorted(c) for c in nx.connected_components(G)]


def proper_coloring(facets, k):
    """Backtracking k-coloring of the 1-skeleton, or None."""
    G = nx.Graph()
    for f in facets:
        G.add_edges_from(combinations(f, 2))
    # visit vertices facet by facet along the dual graph so choices are pruned early
    facets = [tuple(f) for f in facets]
    d = len(facets[0]) - 1
    D = nx.Graph()
    D.add_nodes_from(facets)
    D.add_edges_from((f, t) for f, t in combinations(facets, 2) if len(set(f) & set(t)) == d)
    order = []
    for comp in nx.connected_components(D):
        for f in nx.bfs_tree(D, min(comp)):
            order.extend(v for v in f if v not in order)
    col = {}

    def go(i):
        if i == len(order):
            return True
        v = order[i]
        for c in range(k):
            if all(col.get(u) != c for u in G[v]):
                col[v] = c
                if go(i + 1):
                    return True
                del col[v]
        return False

    return dict(col) if go(0) else None


def is_shelling(order):
    """Each facet meets the union of the earlier ones in a pure codim-1 complex."""
    d = len(order[0]) - 1
    for i in range(1, len(order)):
        f = set(order[i])
        meets = [tuple(sorted(f & set(g))) for g in order[:i]]
        maximal = [m for m in meets if m and not any(set(m) < set(n) for n in meets)]
        if not maximal or any(len(m) != d for m in maximal):
            return False
    return True


# -- hypothesis strategies -----------------------------------------------------

SPHERES = [
    boundary_simplex(2),
    boundary_simplex(3),
    cross_polytope(2),
    cross_polytope(3),
    cyclic_sphere(4, 6),
    cyclic_sphere(4, 7),
    cyclic_sphere(3, 6),
]
BALLS = [starred_simplex(2), starred_simplex(3)]


@st.composite
def refined(draw, bases=SPHERES, max_steps=4):
    """A base complex with a few random edge subdivisions."""
    K = draw(st.sampled_from(bases))
    for _ in range(draw(st.integers(0, max_steps))):
        e = draw(st.sampled_from(sorted(K.edges())))
        K, _ = stellar_subdivide_edge(K, e)
    return K


def all_bijections(a, b):
    return [dict(zip(a, p)) for p in permutations(b)]

