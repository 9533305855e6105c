"""Finite loopless multigraphs.

Vertices and edges are opaque hashable ids (strings in the JSON format).
Internally a graph keeps dense integer indices: vertex ``i`` is
``vertices[i]`` and edge ``j`` is ``edges[j]`` with endpoint indices
``ends[j]``.  Graphs are immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Hashable, Iterable, Sequence

from . import _kernel
from .errors import (
    Disconnected,
    DuplicateId,
    EmptyGraph,
    LoopEdge,
    UnknownEdge,
    UnknownVertex,
)


class MultiGraph:
    __slots__ = (
        "_vertices",
        "_edges",
        "_ends",
        "_vindex",
        "_eindex",
        "_incident",
        "_classes",
        "_search",
        "_vauts",
    )

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple]):
        vertices = tuple(vertices)
        vindex = {}
        for i, v in enumerate(vertices):
            if v in vindex:
                raise DuplicateId(f"duplicate vertex id {v!r}")
            vindex[v] = i
        eids, ends, eindex = [], [], {}
        incident = [[] for _ in vertices]
        for j, (e, u, v) in enumerate(edges):
            if e in eindex:
                raise DuplicateId(f"duplicate edge id {e!r}")
            if u not in vindex:
                raise UnknownVertex(f"edge {e!r} uses unknown vertex {u!r}")
            if v not in vindex:
                raise UnknownVertex(f"edge {e!r} uses unknown vertex {v!r}")
            if u == v:
                raise LoopEdge(f"edge {e!r} is a loop at {u!r}")
            eindex[e] = j
            eids.append(e)
            iu, iv = vindex[u], vindex[v]
            ends.append((iu, iv))
            incident[iu].append(j)
            incident[iv].append(j)
        self._vertices = vertices
        self._edges = tuple(eids)
        self._ends = tuple(ends)
        self._vindex = vindex
        self._eindex = eindex
        self._incident = tuple(tuple(x) for x in incident)
        self._classes = None
        self._search = None
        self._vauts = None

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> tuple:
        return self._edges

    @property
    def ends(self) -> tuple:
        """Endpoint index pairs, parallel to :attr:`edges`."""
        return self._ends

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def vertex_index(self, x) -> int:
        try:
            return self._vindex[x]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {x!r}") from None

    def edge_index(self, e) -> int:
        try:
            return self._eindex[e]
        except KeyError:
            raise UnknownEdge(f"unknown edge {e!r}") from None

    def has_vertex(self, x) -> bool:
        return x in self._vindex

    def has_edge(self, e) -> bool:
        return e in self._eindex

    def endpoints(self, e) -> tuple:
        u, v = self._ends[self.edge_index(e)]
        return self._vertices[u], self._vertices[v]

    def incident_indices(self, i: int) -> tuple:
        return self._incident[i]

    def incident(self, x) -> tuple:
        return tuple(self._edges[j] for j in self._incident[self.vertex_index(x)])

    def degree(self, x) -> int:
        return len(self._incident[self.vertex_index(x)])

    def other_end(self, j: int, i: int) -> int:
        u, v = self._ends[j]
        return v if u == i else u

    def neighbors(self, x) -> tuple:
        i = self.vertex_index(x)
        seen = []
        for j in self._incident[i]:
            w = self.other_end(j, i)
            if w not in seen:
                seen.append(w)
        return tuple(self._vertices[w] for w in seen)

    def edge_triples(self) -> tuple:
        return tuple(
            (e, self._vertices[u], self._vertices[v]) for e, (u, v) in zip(self._edges, self._ends)
        )

    def parallel_classes(self) -> dict:
        """Map ``(i, j)`` with ``i < j`` to the tuple of edge indices joining them."""
        if self._classes is None:
            classes: dict = {}
            for k, (u, v) in enumerate(self._ends):
                classes.setdefault((min(u, v), max(u, v)), []).append(k)
            self._classes = {p: tuple(ks) for p, ks in classes.items()}
        return self._classes

    def multiplicity_matrix(self) -> list:
        n = self.num_vertices
        mat = [0] * (n * n)
        for u, v in self._ends:
            mat[u * n + v] += 1
            mat[v * n + u] += 1
        return mat

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._edges == other._edges
            and self._ends == other._ends
        )

    def __hash__(self):
        return hash((self._vertices, self._edges, self._ends))

    def __repr__(self):
        return f"MultiGraph(|V|={self.num_vertices}, |E|={self.num_edges})"


@dataclass(frozen=True)
class Neighborhood:
    center: Hashable
    subgraph: MultiGraph


@dataclass(frozen=True)
class Isomorphism:
    vertex_map: dict
    edge_map: dict


def build_graph(vertices: Sequence, edges: Sequence[tuple]) -> MultiGraph:
    """Build a graph from vertex ids and ``(edge_id, u, v)`` triples."""
    if len(vertices) == 0:
        raise EmptyGraph("a graph needs at least one vertex")
    return MultiGraph(vertices, edges)


def is_connected(G: MultiGraph) -> bool:
    n = G.num_vertices
    if n == 0:
        return False
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        i = queue.popleft()
        for j in G.incident_indices(i):
            w = G.other_end(j, i)
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == n


def require_connected(G: MultiGraph) -> None:
    if not is_connected(G):
        raise Disconnected("graph is not connected")


def genus(G: MultiGraph) -> int:
    require_connected(G)
    return G.num_edges - G.num_vertices + 1


def neighborhood(G: MultiGraph, x) -> Neighborhood:
    i = G.vertex_index(x)
    triples = G.edge_triples()
    edges = [triples[j] for j in G.incident_indices(i)]
    verts = [x, *G.neighbors(x)]
    return Neighborhood(x, MultiGraph(verts, edges))


# -- canonical forms -------------------------------------------------------


def _search(G: MultiGraph):
    if G._search is None:
        G._search = _kernel.canonical_search(
            G.num_vertices, G.multiplicity_matrix(), [0] * G.num_vertices
        )
    return G._search


def canonical_key(G: MultiGraph) -> bytes:
    """Isomorphism-invariant key: equal keys iff the multigraphs are isomorphic."""
    cert, _, _ = _search(G)
    return ("%d:%s" % (G.num_vertices, ",".join(map(str, cert)))).encode()


def canonical_labeling(G: MultiGraph) -> tuple:
    """Vertex indices in canonical order."""
    return _search(G)[1]


def vertex_automorphism_generators(G: MultiGraph) -> list:
    """Generators of the vertex automorphism group found by the search."""
    return _search(G)[2]


def _vertex_closure(G: MultiGraph, cap: int | None):
    n = G.num_vertices
    gens = vertex_automorphism_generators(G)
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for p in gens:
                b = tuple(p[a[i]] for i in range(n))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if cap is not None and len(seen) > cap:
                        return None
        frontier = nxt
    return sorted(seen)


def vertex_automorphisms(G: MultiGraph) -> list:
    """All permutations of vertex indices preserving edge multiplicities, sorted.

    Enumerates the whole group; check :func:`vertex_automorphism_order` first
    on graphs that may be very symmetric.
    """
    if G._vauts is None:
        G._vauts = _vertex_closure(G, None)
    return G._vauts


def vertex_automorphism_order(G: MultiGraph, enumerate_up_to: int = 5040) -> int:
    if G._vauts is not None:
        return len(G._vauts)
    elems = _vertex_closure(G, enumerate_up_to)
    if elems is not None:
        G._vauts = elems
        return len(elems)
    from sympy.combinatorics import Permutation, PermutationGroup

    gens = vertex_automorphism_generators(G)
    return int(PermutationGroup([Permutation(list(p)) for p in gens]).order())


def are_isomorphic(G: MultiGraph, H: MultiGraph):
    """Return an :class:`Isomorphism` from ``G`` to ``H`` or ``None``."""
    if G.num_vertices != H.num_vertices or G.num_edges != H.num_edges:
        return None
    if canonical_key(G) != canonical_key(H):
        return None
    lg, lh = canonical_labeling(G), canonical_labeling(H)
    vmap = [0] * G.num_vertices
    for a, b in zip(lg, lh):
        vmap[a] = b
    hclasses = H.parallel_classes()
    emap = {}
    for (u, v), ks in G.parallel_classes().items():
        a, b = vmap[u], vmap[v]
        targets = hclasses[(min(a, b), max(a, b))]
        for k, t in zip(ks, targets):
            emap[G.edges[k]] = H.edges[t]
    return Isomorphism(
        {G.vertices[i]: H.vertices[vmap[i]] for i in range(G.num_vertices)}, emap
    )


def relabel(G: MultiGraph, vertex_map: dict, edge_map: dict, shuffle=None) -> MultiGraph:
    """Rename ids; ``shuffle`` optionally permutes the storage order of vertices and edges."""
    verts = [vertex_map[v] for v in G.vertices]
    triples = [(edge_map[e], vertex_map[u], vertex_map[v]) for e, u, v in G.edge_triples()]
    if shuffle is not None:
        shuffle(verts)
        shuffle(triples)
    return MultiGraph(verts, triples)


def brute_force_key(G: MultiGraph) -> tuple:
    """Reference canonical form: lexicographic minimum over all vertex orders.

    Exponential; only for cross-checking on tiny graphs.
    """
    n = G.num_vertices
    mat = G.multiplicity_matrix()
    best = None
    for p in permutations(range(n)):
        cert = tuple(mat[p[i] * n + p[j]] for i in range(n) for j in range(i + 1, n))
        if best is None or cert < best:
            best = cert
    return (n, best)
