"""Automorphisms, finite automorphism groups and quotients.

A group element is stored as one permutation of the *points* of a graph:
vertex ``i`` is point ``i`` and edge ``j`` is point ``n + j`` where ``n`` is
the vertex count.  ``(p * q)`` applies ``q`` first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    ClosureBudgetExceeded,
    IncidenceViolation,
    NotBijective,
)
from .morphism import GraphMorphism, is_harmonic, is_nondegenerate
from .multigraph import MultiGraph, vertex_automorphism_order, vertex_automorphisms

DEFAULT_BUDGET = 256


def default_budget() -> int:
    raw = os.environ.get("HARMONICA_BUDGET")
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError("HARMONICA_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


# -- permutations on points --------------------------------------------------


def identity_perm(G: MultiGraph) -> tuple:
    return tuple(range(G.num_vertices + G.num_edges))


def mul(p: tuple, q: tuple) -> tuple:
    return tuple([p[i] for i in q])


def inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_order(p: tuple) -> int:
    ident = tuple(range(len(p)))
    q, k = p, 1
    while q != ident:
        q = mul(p, q)
        k += 1
    return k


def cyclic_closure(p: tuple) -> list:
    ident = tuple(range(len(p)))
    out = [ident]
    q = p
    while q != ident:
        out.append(q)
        q = mul(p, q)
    return out


def closure(gens: Iterable[tuple], size: int, budget: int | None = None, seed=()) -> set:
    """Group generated by ``gens`` (and the elements of ``seed``) on ``size`` points."""
    gens = list(gens)
    elems = set(seed) or {tuple(range(size))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
                    if budget is not None and len(elems) > budget:
                        raise ClosureBudgetExceeded(
                            f"group closure exceeded the budget of {budget} elements"
                        )
        frontier = nxt
    return elems


def _check_perm(G: MultiGraph, perm: tuple) -> None:
    n, m = G.num_vertices, G.num_edges
    if sorted(perm[:n]) != list(range(n)) or sorted(perm[n:]) != list(range(n, n + m)):
        raise NotBijective("vertex or edge map is not a bijection")
    for j, (u, v) in enumerate(G.ends):
        a, b = G.ends[perm[n + j] - n]
        if {perm[u], perm[v]} != {a, b}:
            raise IncidenceViolation(
                f"edge {G.edges[j]!r} maps to {G.edges[perm[n + j] - n]!r}, "
                "which does not join the images of its endpoints"
            )


# -- automorphisms -----------------------------------------------------------


class Automorphism:
    """A vertex permutation and an edge permutation compatible with incidence."""

    __slots__ = ("graph", "perm")

    def __init__(self, graph: MultiGraph, perm: Sequence[int]):
        self.graph = graph
        self.perm = tuple(perm)

    @property
    def vertex_perm(self) -> dict:
        V = self.graph.vertices
        return {V[i]: V[self.perm[i]] for i in range(len(V))}

    @property
    def edge_perm(self) -> dict:
        n, E = self.graph.num_vertices, self.graph.edges
        return {E[j]: E[self.perm[n + j] - n] for j in range(len(E))}

    def __call__(self, x):
        G = self.graph
        if G.has_vertex(x):
            return G.vertices[self.perm[G.vertex_index(x)]]
        n = G.num_vertices
        return G.edges[self.perm[n + G.edge_index(x)] - n]

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(self.graph, mul(self.perm, other.perm))

    def inverse(self) -> "Automorphism":
        return Automorphism(self.graph, inverse(self.perm))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm)))

    def order(self) -> int:
        return perm_order(self.perm)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        moved = {k: v for k, v in self.vertex_perm.items() if k != v}
        return f"Automorphism(vertices={moved})"


def build_automorphism(G: MultiGraph, vertex_perm: dict, edge_perm: dict) -> Automorphism:
    n = G.num_vertices
    perm = []
    for x in G.vertices:
        if x not in vertex_perm or not G.has_vertex(vertex_perm[x]):
            raise NotBijective(f"vertex map is not a permutation of V (at {x!r})")
        perm.append(G.vertex_index(vertex_perm[x]))
    for e in G.edges:
        if e not in edge_perm or not G.has_edge(edge_perm[e]):
            raise NotBijective(f"edge map is not a permutation of E (at {e!r})")
        perm.append(n + G.edge_index(edge_perm[e]))
    _check_perm(G, tuple(perm))
    return Automorphism(G, perm)


def identity(G: MultiGraph) -> Automorphism:
    return Automorphism(G, identity_perm(G))


# -- groups ------------------------------------------------------------------


class ActionGroup:
    """A finite group of automorphisms of ``graph``, stored by its elements."""

    __slots__ = ("graph", "elements", "generators", "_set")

    def __init__(self, graph: MultiGraph, elements: Iterable[tuple], generators: Iterable[tuple] = ()):
        ident = identity_perm(graph)
        elems = sorted(set(elements))
        elems.remove(ident)
        self.graph = graph
        self.elements = (ident, *elems)
        self.generators = tuple(g for g in generators if g != ident)
        self._set = frozenset(self.elements)

    @classmethod
    def from_elements(cls, graph: MultiGraph, elements: Iterable[tuple], generators=None, check=True):
        elements = set(elements)
        if check:
            ident = identity_perm(graph)
            if ident not in elements:
                raise ValueError("element set does not contain the identity")
            for p in elements:
                _check_perm(graph, p)
            for p in elements:
                if inverse(p) not in elements:
                    raise ValueError("element set is not closed under inverses")
                for q in elements:
                    if mul(p, q) not in elements:
                        raise ValueError("element set is not closed under composition")
        if generators is None:
            generators = generating_set(elements, graph.num_vertices + graph.num_edges)
        return cls(graph, elements, generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        perm = item.perm if isinstance(item, Automorphism) else tuple(item)
        return perm in self._set

    def __iter__(self) -> Iterator[Automorphism]:
        return (Automorphism(self.graph, p) for p in self.elements)

    def generator_automorphisms(self) -> list:
        return [Automorphism(self.graph, p) for p in self.generators]

    def key(self) -> frozenset:
        return self._set

    def __eq__(self, other):
        if not isinstance(other, ActionGroup):
            return NotImplemented
        return self.graph == other.graph and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"ActionGroup(order={self.order}, graph={self.graph!r})"


def generating_set(elements, size: int) -> tuple:
    """Greedy small generating set; prefers elements of large order."""
    elements = set(elements)
    ident = tuple(range(size))
    pool = sorted((p for p in elements if p != ident), key=lambda p: (-perm_order(p), p))
    gens: list = []
    span = {ident}
    for p in pool:
        if len(span) == len(elements):
            break
        if p not in span:
            gens.append(p)
            span = closure(gens, size)
    return tuple(gens)


def generate_group(G: MultiGraph, generators: Sequence, budget: int | None = None) -> ActionGroup:
    """Close the given automorphisms under composition."""
    budget = default_budget() if budget is None else budget
    gens = []
    for g in generators:
        perm = g.perm if isinstance(g, Automorphism) else tuple(g)
        _check_perm(G, perm)
        gens.append(perm)
    elems = closure(gens, G.num_vertices + G.num_edges, budget)
    return ActionGroup(G, elems, gens)


def trivial_group(G: MultiGraph) -> ActionGroup:
    return ActionGroup(G, [identity_perm(G)])


def automorphism_group_order(G: MultiGraph) -> int:
    order = vertex_automorphism_order(G)
    for ks in G.parallel_classes().values():
        order *= factorial(len(ks))
    return order


def automorphism_group(G: MultiGraph, budget: int | None = None) -> ActionGroup:
    """All of Aut(G): vertex automorphisms times independent parallel-class shuffles."""
    budget = default_budget() if budget is None else budget
    order = automorphism_group_order(G)
    if order > budget:
        raise BudgetExceeded(f"|Aut(G)| = {order} exceeds the budget of {budget}")
    n = G.num_vertices
    classes = G.parallel_classes()
    keys = list(classes)
    elements = []
    lifts = []
    for vp in vertex_automorphisms(G):
        choices = []
        for (u, v) in keys:
            a, b = vp[u], vp[v]
            target = classes[(min(a, b), max(a, b))]
            choices.append(list(permutations(target)))
        base = list(vp) + [0] * G.num_edges
        first = True
        for combo in product(*choices):
            perm = list(base)
            for (u, v), images in zip(keys, combo):
                for j, k in zip(classes[(u, v)], images):
                    perm[n + j] = n + k
            perm = tuple(perm)
            elements.append(perm)
            if first:
                lifts.append(perm)
                first = False
    gens = list(lifts)
    for ks in classes.values():
        for a, b in zip(ks, ks[1:]):
            t = list(identity_perm(G))
            t[n + a], t[n + b] = n + b, n + a
            gens.append(tuple(t))
    span_gens = generating_set(elements, n + G.num_edges) if len(elements) <= 64 else gens
    return ActionGroup(G, elements, span_gens)


# -- orbits, quotients -------------------------------------------------------


@dataclass(frozen=True)
class Orbits:
    vertex_orbits: tuple
    edge_orbits: tuple
    stabilizer_order: dict


def point_orbits(elements: Sequence[tuple], points: range) -> list:
    """Orbit representative (smallest point) for each point in ``points``."""
    rep = {}
    for p in points:
        if p in rep:
            continue
        orbit = {g[p] for g in elements}
        r = min(orbit)
        for q in orbit:
            rep[q] = r
    return [rep[p] for p in points]


def orbits_and_stabilizers(group: ActionGroup) -> Orbits:
    G = group.graph
    n, m = G.num_vertices, G.num_edges
    vrep = point_orbits(group.elements, range(n))
    erep = point_orbits(group.elements, range(n, n + m))
    vorb: dict = {}
    for i, r in enumerate(vrep):
        vorb.setdefault(r, []).append(G.vertices[i])
    eorb: dict = {}
    for j, r in enumerate(erep):
        eorb.setdefault(r, []).append(G.edges[j])
    stab = {G.vertices[i]: sum(1 for g in group.elements if g[i] == i) for i in range(n)}
    return Orbits(
        tuple(tuple(vorb[r]) for r in sorted(vorb)),
        tuple(tuple(eorb[r]) for r in sorted(eorb)),
        stab,
    )


def quotient_from_elements(G: MultiGraph, elements: Sequence[tuple]):
    n, m = G.num_vertices, G.num_edges
    vrep = point_orbits(elements, range(n))
    erep = point_orbits(elements, range(n, n + m))
    vreps = sorted(set(vrep))
    vpos = {r: k for k, r in enumerate(vreps)}
    qverts = [G.vertices[r] for r in vreps]
    qedges = []
    epos: dict = {}
    for j in range(m):
        r = erep[j] - n
        u, v = G.ends[r]
        if vrep[u] == vrep[v] or r in epos:
            continue
        epos[r] = len(qedges)
        qedges.append((G.edges[r], G.vertices[vrep[u]], G.vertices[vrep[v]]))
    Q = MultiGraph(qverts, qedges)
    vidx = [vpos[vrep[i]] for i in range(n)]
    eidx = []
    for j in range(m):
        u, v = G.ends[j]
        eidx.append(-1 if vrep[u] == vrep[v] else epos[erep[j] - n])
    return Q, GraphMorphism(G, Q, vidx, eidx)


def quotient(G: MultiGraph, group: ActionGroup):
    """Quotient graph ``G/group`` and the quotient morphism.

    Quotient vertices and edges are named after the first member of their
    orbit; edge orbits whose endpoints share a vertex orbit are dropped and
    the quotient morphism collapses them.
    """
    return quotient_from_elements(G, group.elements)


# -- harmonicity -------------------------------------------------------------


@dataclass(frozen=True)
class HarmonicityCertificate:
    """Verdict of the stabilizer criterion.

    On failure either ``element``/``vertex``/``edge`` name a non-identity
    element fixing a directed edge (reason ``"fixed-edge"``), or ``vertex``
    names a vertex whose whole neighborhood lies in its own orbit (reason
    ``"degenerate"``).
    """

    harmonic: bool
    reason: str | None = None
    element: Automorphism | None = None
    vertex: object = None
    edge: object = None

    def __bool__(self):
        return self.harmonic

    def describe(self) -> str:
        if self.harmonic:
            return "HARMONIC"
        if self.reason == "fixed-edge":
            moved = [f"{k}->{v}" for k, v in self.element.vertex_perm.items() if k != v]
            moved += [f"{k}->{v}" for k, v in self.element.edge_perm.items() if k != v]
            return (
                f"NOT HARMONIC, witness: (element [{' '.join(moved)}], "
                f"vertex {self.vertex}, edge {self.edge})"
            )
        return f"NOT HARMONIC, degenerate at vertex {self.vertex}"


def harmonic_violation(G: MultiGraph, elements: Sequence[tuple]):
    """``None`` if the criterion holds, else ``(reason, perm, vertex_idx, edge_idx)``."""
    n = G.num_vertices
    ident = tuple(range(n + G.num_edges))
    nontrivial = [g for g in elements if g != ident]
    for i in range(n):
        inc = G.incident_indices(i)
        for g in nontrivial:
            if g[i] != i:
                continue
            for j in inc:
                if g[n + j] == n + j:
                    return ("fixed-edge", g, i, j)
        orbit = {g[i] for g in elements}
        if all(G.other_end(j, i) in orbit for j in inc):
            return ("degenerate", None, i, None)
    return None


def is_harmonic_action(G: MultiGraph, group: ActionGroup) -> HarmonicityCertificate:
    """Stabilizer criterion: vertex stabilizers act freely on incident edges and
    no vertex neighborhood lies inside a single orbit."""
    bad = harmonic_violation(G, group.elements)
    if bad is None:
        return HarmonicityCertificate(True)
    reason, g, i, j = bad
    if reason == "fixed-edge":
        return HarmonicityCertificate(False, reason, Automorphism(G, g), G.vertices[i], G.edges[j])
    return HarmonicityCertificate(False, reason, None, G.vertices[i], None)


def subgroup_elements_harmonic_by_definition(G: MultiGraph, elements: Sequence[tuple]) -> bool:
    Q, phi = quotient_from_elements(G, elements)
    return is_harmonic(phi) and is_nondegenerate(phi)


def iter_subgroup_element_sets(group: ActionGroup, budget: int | None = None) -> Iterator[frozenset]:
    """Yield every subgroup once: the whole group, cyclic subgroups, then joins."""
    budget = default_budget() if budget is None else budget
    if group.order > budget:
        raise BudgetExceeded(f"group order {group.order} exceeds the budget of {budget}")
    size = group.graph.num_vertices + group.graph.num_edges
    seen = set()
    whole = frozenset(group.elements)
    seen.add(whole)
    yield whole
    cyclic = []
    for p in group.elements:
        c = frozenset(cyclic_closure(p))
        if c not in seen:
            seen.add(c)
            yield c
        if c not in [x for x, _ in cyclic]:
            cyclic.append((c, p))
    layer = [(c, (p,)) for c, p in cyclic]
    while layer:
        nxt = []
        for H, gens in layer:
            for C, p in cyclic:
                if C <= H:
                    continue
                J = frozenset(closure(gens + (p,), size, seed=H))
                if J not in seen:
                    seen.add(J)
                    nxt.append((J, gens + (p,)))
                    yield J
        layer = nxt


def subgroups(group: ActionGroup, budget: int | None = None) -> list:
    """All subgroups, ordered by size then elements."""
    sets = sorted(iter_subgroup_element_sets(group, budget), key=lambda s: (len(s), sorted(s)))
    return [ActionGroup(group.graph, s, generating_set(s, len(group.elements[0]))) for s in sets]


def is_harmonic_action_by_definition(G: MultiGraph, group: ActionGroup, budget: int | None = None) -> bool:
    """Check every subgroup's quotient morphism for harmonicity and non-degeneracy."""
    for s in iter_subgroup_element_sets(group, budget):
        if not subgroup_elements_harmonic_by_definition(G, tuple(s)):
            return False
    return True
