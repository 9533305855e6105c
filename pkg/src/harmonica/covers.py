"""Abelian voltage covers, lifting automorphisms, and the G(m) family.

Voltages live in ``(Z/m_1) x ... x (Z/m_k)``, written as tuples.  Every edge
has a stored reference direction ``tail -> head``; crossing it backwards
contributes the negated voltage.  The derived cover has vertices ``(v, a)``
and, for each base edge ``e`` and group element ``a``, an edge from
``(tail, a)`` to ``(head, a + voltage(e))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .action import ActionGroup, Automorphism, _check_perm, default_budget
from .errors import BadTree, BudgetExceeded, DisconnectedCover
from .families import hurwitz_genus2
from .morphism import GraphMorphism
from .multigraph import MultiGraph, genus, is_connected, require_connected
from .ramification import RamificationProfile, profile


def _key(x):
    return str(x)


def spanning_tree(G: MultiGraph) -> frozenset:
    """Breadth-first spanning tree from the smallest vertex id, taking incident
    edges in id order."""
    require_connected(G)
    order = sorted(range(G.num_vertices), key=lambda i: _key(G.vertices[i]))
    seen = {order[0]}
    queue = deque([order[0]])
    tree = []
    while queue:
        i = queue.popleft()
        for j in sorted(G.incident_indices(i), key=lambda j: _key(G.edges[j])):
            w = G.other_end(j, i)
            if w not in seen:
                seen.add(w)
                tree.append(G.edges[j])
                queue.append(w)
    return frozenset(tree)


def _is_spanning_tree(G: MultiGraph, tree) -> bool:
    if len(tree) != G.num_vertices - 1 or not all(G.has_edge(e) for e in tree):
        return False
    parent = list(range(G.num_vertices))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in tree:
        u, v = G.ends[G.edge_index(e)]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


@dataclass(frozen=True)
class VoltageAssignment:
    base: MultiGraph
    tree: frozenset
    moduli: tuple
    orientation: dict
    voltage: dict

    @property
    def group_order(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def group_elements(self) -> list:
        return list(product(*(range(m) for m in self.moduli)))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def dart_voltage(self, u, e):
        """Voltage picked up leaving base vertex ``u`` along edge ``e``."""
        return self.voltage[e] if self.orientation[e][0] == u else self.neg(self.voltage[e])


def _orient(G: MultiGraph, e):
    u, v = G.endpoints(e)
    return (u, v) if _key(u) <= _key(v) else (v, u)


def voltage_assignment(G: MultiGraph, tree, moduli, voltages: dict) -> VoltageAssignment:
    """General constructor; tree edges are forced to voltage zero."""
    tree = frozenset(tree)
    if not _is_spanning_tree(G, tree):
        raise BadTree("edge set is not a spanning tree")
    moduli = tuple(moduli)
    zero = tuple(0 for _ in moduli)
    volt = {}
    for e in G.edges:
        if e in tree:
            volt[e] = zero
        else:
            a = tuple(voltages.get(e, zero))
            if len(a) != len(moduli):
                raise ValueError(f"voltage on {e!r} has the wrong length")
            volt[e] = tuple(x % m for x, m in zip(a, moduli))
    orientation = {e: _orient(G, e) for e in G.edges}
    return VoltageAssignment(G, tree, moduli, orientation, volt)


def homology_voltages(G: MultiGraph, tree, m: int) -> VoltageAssignment:
    """Mod-``m`` homology voltages: cotree edge ``i`` (in id order) gets the
    ``i``-th standard basis vector of ``(Z/m)^g``."""
    if m < 1:
        raise ValueError("m must be positive")
    tree = frozenset(tree)
    if not _is_spanning_tree(G, tree):
        raise BadTree("edge set is not a spanning tree")
    cotree = sorted((e for e in G.edges if e not in tree), key=_key)
    g = len(cotree)
    volts = {}
    for i, e in enumerate(cotree):
        volts[e] = tuple(1 if k == i else 0 for k in range(g))
    return voltage_assignment(G, tree, (m,) * g, volts)


@dataclass(frozen=True)
class DerivedCover:
    voltage: VoltageAssignment
    cover: MultiGraph
    projection: GraphMorphism
    deck: ActionGroup
    elements: tuple

    def vertex(self, v, a) -> object:
        return _vname(v, a)

    def edge(self, e, a) -> object:
        return _vname(e, a)


def _vname(x, a) -> str:
    return f"{x}@{'.'.join(map(str, a))}"


def derived_cover(va: VoltageAssignment) -> DerivedCover:
    B = va.base
    elems = va.group_elements()
    N = len(elems)
    verts = [_vname(v, a) for v in B.vertices for a in elems]
    edges = []
    for e in B.edges:
        t, h = va.orientation[e]
        for a in elems:
            edges.append((_vname(e, a), _vname(t, a), _vname(h, va.add(a, va.voltage[e]))))
    C = MultiGraph(verts, edges)
    if not is_connected(C):
        raise DisconnectedCover("voltages do not generate the voltage group")
    if genus(C) - 1 != N * (genus(B) - 1):
        raise AssertionError("cover genus disagrees with the unramified genus formula")
    # vertex index v*N + a, edge index e*N + a by construction
    proj = GraphMorphism(
        C, B, [i // N for i in range(C.num_vertices)], [j // N for j in range(C.num_edges)]
    )
    aidx = {a: k for k, a in enumerate(elems)}
    n = C.num_vertices
    deck = []
    for b in elems:
        shift = [aidx[va.add(a, b)] for a in elems]
        perm = [vi * N + shift[k] for vi in range(B.num_vertices) for k in range(N)]
        perm += [n + ej * N + shift[k] for ej in range(B.num_edges) for k in range(N)]
        deck.append(tuple(perm))
    return DerivedCover(va, C, proj, ActionGroup(C, deck, deck), tuple(elems))


def lift_automorphism(gamma: Automorphism, dc: DerivedCover) -> list:
    """Every automorphism of the cover lying over ``gamma``.

    The image of one fibre point over the first base vertex is chosen in all
    possible ways and propagated along edges; a choice survives when the
    propagation is consistent and bijective.
    """
    va, B, C = dc.voltage, dc.voltage.base, dc.cover
    elems = dc.elements
    N = len(elems)
    aidx = {a: k for k, a in enumerate(elems)}
    nb = B.num_vertices
    gv = [gamma.perm[i] for i in range(nb)]
    ge = [gamma.perm[nb + j] - nb for j in range(B.num_edges)]
    V, E = B.vertices, B.edges

    def dart(ui, ej):
        return va.dart_voltage(V[ui], E[ej])

    lifts = []
    for c in elems:
        img = {(0, elems[0]): (gv[0], c)}
        queue = deque([(0, elems[0])])
        ok = True
        while queue and ok:
            u, a = queue.popleft()
            gu, ca = img[(u, a)]
            for j in B.incident_indices(u):
                w = B.other_end(j, u)
                src = (w, va.add(a, dart(u, j)))
                dst = (gv[w], va.add(ca, dart(gu, ge[j])))
                prev = img.get(src)
                if prev is None:
                    img[src] = dst
                    queue.append(src)
                elif prev != dst:
                    ok = False
                    break
        if not ok or len(img) != nb * N or len(set(img.values())) != nb * N:
            continue
        perm = [0] * (C.num_vertices + C.num_edges)
        for (u, a), (x, b) in img.items():
            perm[u * N + aidx[a]] = x * N + aidx[b]
        n = C.num_vertices
        for j, e in enumerate(E):
            tail = B.vertex_index(va.orientation[e][0])
            for a in elems:
                x, b = img[(tail, a)]
                k = ge[j]
                if V[x] != va.orientation[E[k]][0]:
                    b = va.add(b, va.neg(va.voltage[E[k]]))
                perm[n + j * N + aidx[a]] = n + k * N + aidx[b]
        perm = tuple(perm)
        _check_perm(C, perm)
        lifts.append(Automorphism(C, perm))
    return lifts


class Macbeath(NamedTuple):
    graph: MultiGraph
    group: ActionGroup
    profile: RamificationProfile


def macbeath(m: int, budget: int | None = None) -> Macbeath:
    """The mod-``m`` homology cover of the genus-2 extremal graph with the full
    lifted group of order ``6 m^2``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    budget = default_budget() if budget is None else budget
    if 6 * m * m > budget:
        raise BudgetExceeded(f"group order {6 * m * m} exceeds the budget of {budget}")
    base = hurwitz_genus2()
    if m == 1:
        return Macbeath(base.graph, base.group, profile(base.graph, base.group))
    G = base.graph
    dc = derived_cover(homology_voltages(G, spanning_tree(G), m))
    elements = set()
    for gamma in base.group:
        lifts = lift_automorphism(gamma, dc)
        if len(lifts) != dc.deck.order:
            raise AssertionError(f"{gamma!r} has {len(lifts)} lifts, expected {dc.deck.order}")
        elements.update(x.perm for x in lifts)
    group = ActionGroup.from_elements(dc.cover, elements)
    return Macbeath(dc.cover, group, profile(dc.cover, group))
