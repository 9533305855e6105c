"""Graph morphisms that may collapse edges, and harmonicity.

An edge whose endpoints land on the same target vertex is *vertical*; its
image is the sentinel :data:`COLLAPSED` (``null`` in JSON).
"""

from __future__ import annotations

from collections import Counter

from .errors import (
    DegenerateAt,
    EndpointMismatch,
    NonconstantPreimageCount,
    NotAMorphism,
    NotHarmonic,
    NotHarmonicAt,
    SourceTargetMismatch,
)
from .multigraph import MultiGraph


class _Collapsed:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "COLLAPSED"

    def __reduce__(self):
        return (_Collapsed, ())


COLLAPSED = _Collapsed()


class GraphMorphism:
    """Vertex map plus edge map; ``edge_map[e]`` is an edge id or COLLAPSED.

    ``vidx[i]`` and ``eidx[j]`` hold the same data on indices, with ``-1``
    for a collapsed edge.
    """

    __slots__ = ("source", "target", "vidx", "eidx")

    def __init__(self, source: MultiGraph, target: MultiGraph, vidx, eidx):
        self.source = source
        self.target = target
        self.vidx = tuple(vidx)
        self.eidx = tuple(eidx)

    @property
    def vertex_map(self) -> dict:
        tv = self.target.vertices
        return {x: tv[i] for x, i in zip(self.source.vertices, self.vidx)}

    @property
    def edge_map(self) -> dict:
        te = self.target.edges
        return {e: (COLLAPSED if j < 0 else te[j]) for e, j in zip(self.source.edges, self.eidx)}

    def __call__(self, x):
        """Image of a vertex id or an edge id."""
        if self.source.has_vertex(x):
            return self.target.vertices[self.vidx[self.source.vertex_index(x)]]
        j = self.eidx[self.source.edge_index(x)]
        return COLLAPSED if j < 0 else self.target.edges[j]

    def is_vertical(self, e) -> bool:
        return self.eidx[self.source.edge_index(e)] < 0

    def __eq__(self, other):
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.vidx == other.vidx
            and self.eidx == other.eidx
        )

    def __hash__(self):
        return hash((self.vidx, self.eidx))

    def __repr__(self):
        return f"GraphMorphism({self.source!r} -> {self.target!r})"


def _check(source, target, vidx, eidx):
    for j, (u, v) in enumerate(source.ends):
        a, b = vidx[u], vidx[v]
        k = eidx[j]
        if k < 0:
            if a != b:
                raise EndpointMismatch(
                    f"edge {source.edges[j]!r} is collapsed but its endpoints map to "
                    f"{target.vertices[a]!r} and {target.vertices[b]!r}"
                )
            continue
        c, d = target.ends[k]
        if {a, b} != {c, d} or a == b:
            raise NotAMorphism(
                f"edge {source.edges[j]!r} maps to {target.edges[k]!r}, whose endpoints are "
                f"not the images of {source.vertices[u]!r}, {source.vertices[v]!r}"
            )


def build_morphism(source: MultiGraph, target: MultiGraph, vertex_map: dict, edge_map: dict):
    """Validated morphism; ``None`` in ``edge_map`` is accepted as COLLAPSED."""
    vidx = []
    for x in source.vertices:
        if x not in vertex_map:
            raise NotAMorphism(f"vertex map is undefined at {x!r}")
        y = vertex_map[x]
        if not target.has_vertex(y):
            raise NotAMorphism(f"{x!r} maps to {y!r}, which is not a target vertex")
        vidx.append(target.vertex_index(y))
    eidx = []
    for e in source.edges:
        if e not in edge_map:
            raise NotAMorphism(f"edge map is undefined at {e!r}")
        f = edge_map[e]
        if f is None or f is COLLAPSED:
            eidx.append(-1)
        elif target.has_edge(f):
            eidx.append(target.edge_index(f))
        else:
            raise NotAMorphism(f"{e!r} maps to {f!r}, which is not a target edge")
    _check(source, target, vidx, eidx)
    return GraphMorphism(source, target, vidx, eidx)


def identity_morphism(G: MultiGraph) -> GraphMorphism:
    return GraphMorphism(G, G, range(G.num_vertices), range(G.num_edges))


def _degenerate_at(phi: GraphMorphism, i: int) -> bool:
    return all(phi.eidx[j] < 0 for j in phi.source.incident_indices(i))


def is_nondegenerate(phi: GraphMorphism) -> bool:
    return not any(_degenerate_at(phi, i) for i in range(phi.source.num_vertices))


def _local_counts(phi: GraphMorphism, i: int):
    """Preimage counts at source vertex ``i`` for every edge at its image.

    Returns ``None`` when the counts differ.
    """
    counts = Counter(phi.eidx[j] for j in phi.source.incident_indices(i))
    counts.pop(-1, None)
    values = {counts.get(k, 0) for k in phi.target.incident_indices(phi.vidx[i])}
    if len(values) > 1:
        return None
    return values.pop() if values else 0


def non_harmonic_vertex(phi: GraphMorphism):
    """First source vertex where the harmonic condition fails, else ``None``."""
    for i in range(phi.source.num_vertices):
        if _local_counts(phi, i) is None:
            return phi.source.vertices[i]
    return None


def is_harmonic(phi: GraphMorphism) -> bool:
    return non_harmonic_vertex(phi) is None


def multiplicities(phi: GraphMorphism, x) -> tuple:
    """Horizontal and vertical multiplicity ``(m, v)`` at ``x``."""
    i = phi.source.vertex_index(x)
    m = _local_counts(phi, i)
    if m is None:
        raise NotHarmonicAt(x)
    if m == 0:
        raise DegenerateAt(x)
    v = sum(1 for j in phi.source.incident_indices(i) if phi.eidx[j] < 0)
    return m, v


def degree(phi: GraphMorphism) -> int:
    if phi.target.num_edges == 0:
        raise NotHarmonic("degree is undefined for a constant morphism")
    if not is_harmonic(phi):
        raise NotHarmonic("degree requires a harmonic morphism")
    counts = Counter(k for k in phi.eidx if k >= 0)
    values = {counts.get(k, 0) for k in range(phi.target.num_edges)}
    if len(values) != 1:
        raise NonconstantPreimageCount(f"edge preimage counts vary: {sorted(values)}")
    return values.pop()


def compose(psi: GraphMorphism, phi: GraphMorphism) -> GraphMorphism:
    """``psi`` after ``phi``."""
    if phi.target != psi.source:
        raise SourceTargetMismatch("target of the inner morphism is not the outer source")
    vidx = [psi.vidx[i] for i in phi.vidx]
    eidx = [-1 if k < 0 else psi.eidx[k] for k in phi.eidx]
    return GraphMorphism(phi.source, psi.target, vidx, eidx)
