"""Named graphs with group actions.

Each constructor returns a :class:`FamilyInstance` carrying the graph, the
acting group, a flag saying whether the action is harmonic, and the
ramification summary the action is expected to have.  Vertex labels follow
the positions in the usual drawings (documented per constructor).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .action import ActionGroup, Automorphism, build_automorphism, generate_group
from .errors import DegenerateTree, HarmonicaInputError
from .multigraph import MultiGraph, build_graph, genus, is_connected
from .ramification import RamificationProfile, ramification_number


# -- inputs --------------------------------------------------------------------


@dataclass(frozen=True)
class RootedTree:
    graph: MultiGraph
    root: object

    def __post_init__(self):
        if not is_connected(self.graph) or genus(self.graph) != 0:
            raise HarmonicaInputError("a rooted tree must be a connected graph of genus 0")
        if not self.graph.has_vertex(self.root):
            raise HarmonicaInputError(f"root {self.root!r} is not a vertex")


def point_tree() -> RootedTree:
    return RootedTree(build_graph(["r"], []), "r")


def edge_tree() -> RootedTree:
    """One edge, rooted at an end."""
    return RootedTree(build_graph(["r", "x"], [("rx", "r", "x")]), "r")


def star_tree(k: int) -> RootedTree:
    """``k`` edges leaving the root."""
    verts = ["r"] + [f"x{i}" for i in range(k)]
    return RootedTree(build_graph(verts, [(f"rx{i}", "r", f"x{i}") for i in range(k)]), "r")


def path_tree(k: int) -> RootedTree:
    """Path with ``k`` edges rooted at an end."""
    verts = [f"p{i}" for i in range(k + 1)]
    return RootedTree(
        build_graph(verts, [(f"p{i}p{i + 1}", f"p{i}", f"p{i + 1}") for i in range(k)]), "p0"
    )


@dataclass(frozen=True)
class GroupTable:
    """A finite group as a multiplication table over ``labels``.

    ``table[a][b]`` is the index of ``labels[a] * labels[b]``.
    """

    labels: tuple
    table: tuple
    identity: int = 0

    def __post_init__(self):
        k = len(self.labels)
        if k == 0 or len(self.table) != k or any(len(row) != k for row in self.table):
            raise HarmonicaInputError("multiplication table must be square and match the labels")
        t = self.table
        for a in range(k):
            if sorted(t[a]) != list(range(k)) or sorted(t[b][a] for b in range(k)) != list(range(k)):
                raise HarmonicaInputError("multiplication table is not a Latin square")
            if t[self.identity][a] != a or t[a][self.identity] != a:
                raise HarmonicaInputError(f"{self.labels[self.identity]!r} is not an identity")
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise HarmonicaInputError("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.labels)

    def is_abelian(self) -> bool:
        k = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(k) for b in range(k))

    def is_cyclic(self) -> bool:
        k = self.order
        for a in range(k):
            x, seen = a, {a}
            while x != self.identity:
                x = self.table[x][a]
                seen.add(x)
            if len(seen) == k:
                return True
        return False


def cyclic_table(n: int) -> GroupTable:
    return GroupTable(
        tuple(str(i) for i in range(n)),
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
    )


def product_table(A: GroupTable, B: GroupTable) -> GroupTable:
    pairs = [(a, b) for a in range(A.order) for b in range(B.order)]
    index = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(index[(A.table[a][c], B.table[b][d])] for c, d in pairs) for a, b in pairs
    )
    labels = tuple(f"({A.labels[a]},{B.labels[b]})" for a, b in pairs)
    return GroupTable(labels, table, index[(A.identity, B.identity)])


def klein_table() -> GroupTable:
    return product_table(cyclic_table(2), cyclic_table(2))


# -- outputs -------------------------------------------------------------------


@dataclass(frozen=True)
class ExpectedProfile:
    order: int
    genus: int
    quotient_genus: int
    branch: tuple
    R: Fraction

    def matches(self, p: RamificationProfile) -> bool:
        return (
            self.order == p.order
            and self.genus == p.genus
            and self.quotient_genus == p.quotient_genus
            and tuple(self.branch) == tuple(p.branch_vector)
            and self.R == p.R
        )


def _expected(order, g, qg, branch) -> ExpectedProfile:
    branch = tuple(sorted(branch))
    return ExpectedProfile(order, g, qg, branch, ramification_number(branch))


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    graph: MultiGraph
    group: ActionGroup
    harmonic: bool
    expected: ExpectedProfile | None
    named: dict = field(default_factory=dict)


def _auto(G, vmap, emap) -> Automorphism:
    return build_automorphism(G, vmap, emap)


def _fixing(G) -> tuple:
    return {v: v for v in G.vertices}, {e: e for e in G.edges}


# -- barbell -------------------------------------------------------------------


def barbell() -> FamilyInstance:
    """Two double edges ``a=b`` and ``c=d`` joined by the bridge ``bc``.

    Left to right the vertices are a, b, c, d; ``ab1``/``cd1`` are the upper
    arcs and ``ab2``/``cd2`` the lower ones.  Named automorphisms:
    ``horizontal_reflection`` (fixes every vertex, swaps upper and lower arcs),
    ``vertical_reflection`` (swaps the bells, keeps upper arcs upper),
    ``half_rotation`` (swaps the bells, exchanging upper and lower).  The
    group is the Klein four group generated by the last two, which is not
    harmonic.
    """
    G = build_graph(
        ["a", "b", "c", "d"],
        [("ab1", "a", "b"), ("ab2", "a", "b"), ("bc", "b", "c"), ("cd1", "c", "d"), ("cd2", "c", "d")],
    )
    swap = {"a": "d", "b": "c", "c": "b", "d": "a"}
    hor = _auto(G, _fixing(G)[0], {"ab1": "ab2", "ab2": "ab1", "bc": "bc", "cd1": "cd2", "cd2": "cd1"})
    ver = _auto(G, swap, {"ab1": "cd1", "cd1": "ab1", "ab2": "cd2", "cd2": "ab2", "bc": "bc"})
    rot = _auto(G, swap, {"ab1": "cd2", "cd2": "ab1", "ab2": "cd1", "cd1": "ab2", "bc": "bc"})
    group = generate_group(G, [ver, rot])
    return FamilyInstance(
        "barbell",
        G,
        group,
        False,
        None,
        {"horizontal_reflection": hor, "vertical_reflection": ver, "half_rotation": rot},
    )


# -- Klein-four examples ---------------------------------------------------------


def klein_genus3() -> FamilyInstance:
    """Two squares stacked vertically, joined at their left and right corners.

    Top square ``t1`` (left), ``t2`` (top), ``t3`` (right), ``t4`` (bottom);
    bottom square ``b1``..``b4`` in the same positions.  Vertical edges
    ``v1 = t1-b1`` and ``v3 = t3-b3``.  ``rotation`` turns the picture by a
    half turn, ``swap`` exchanges the squares and flips the vertical edges.
    """
    verts = [f"t{i}" for i in range(1, 5)] + [f"b{i}" for i in range(1, 5)]
    edges = []
    for s in "tb":
        for i in range(1, 5):
            j = i % 4 + 1
            edges.append((f"{s}{i}{j}", f"{s}{i}", f"{s}{j}"))
    edges += [("v1", "t1", "b1"), ("v3", "t3", "b3")]
    G = build_graph(verts, edges)

    def edge_image(vmap):
        out = {}
        for e, u, v in G.edge_triples():
            a, b = vmap[u], vmap[v]
            out[e] = next(f for f, x, y in G.edge_triples() if {x, y} == {a, b})
        return out

    rot_v = {"t1": "b3", "t2": "b4", "t3": "b1", "t4": "b2", "b1": "t3", "b2": "t4", "b3": "t1", "b4": "t2"}
    swap_v = {f"t{i}": f"b{i}" for i in range(1, 5)} | {f"b{i}": f"t{i}" for i in range(1, 5)}
    rot = _auto(G, rot_v, edge_image(rot_v))
    swap = _auto(G, swap_v, edge_image(swap_v))
    group = generate_group(G, [rot, swap])
    return FamilyInstance(
        "klein_genus3", G, group, True, _expected(4, 3, 1, [(1, 1)]), {"rotation": rot, "swap": swap}
    )


def klein_genus5() -> FamilyInstance:
    """Four petals doubled onto two hubs, hubs joined by a double edge.

    Hubs ``h2`` (right, top) and ``h4`` (right, bottom); left vertices
    ``p1a``, ``p1b`` attach to ``h2`` and ``p3a``, ``p3b`` to ``h4``, each by two
    arcs ``<petal>_0``/``<petal>_1``.  The hubs are joined by ``v0``, ``v1``.
    ``reflect`` mirrors top and bottom; ``petal_swap`` fixes the hubs,
    exchanges petals and switches the two vertical edges.
    """
    petals = {"p1a": "h2", "p1b": "h2", "p3a": "h4", "p3b": "h4"}
    verts = ["p1a", "p1b", "h2", "p3a", "p3b", "h4"]
    edges = [(f"{p}_{k}", p, h) for p, h in petals.items() for k in (0, 1)]
    edges += [("v0", "h2", "h4"), ("v1", "h2", "h4")]
    G = build_graph(verts, edges)
    ref_v = {"p1a": "p3b", "p3b": "p1a", "p1b": "p3a", "p3a": "p1b", "h2": "h4", "h4": "h2"}
    ref_e = {f"{p}_{k}": f"{ref_v[p]}_{k}" for p in petals for k in (0, 1)} | {"v0": "v0", "v1": "v1"}
    sw_v = {"p1a": "p1b", "p1b": "p1a", "p3a": "p3b", "p3b": "p3a", "h2": "h2", "h4": "h4"}
    sw_e = {f"{p}_{k}": f"{sw_v[p]}_{k}" for p in petals for k in (0, 1)} | {"v0": "v1", "v1": "v0"}
    ref = _auto(G, ref_v, ref_e)
    sw = _auto(G, sw_v, sw_e)
    group = generate_group(G, [ref, sw])
    return FamilyInstance(
        "klein_genus5", G, group, True, _expected(4, 5, 1, [(2, 1)]), {"reflect": ref, "petal_swap": sw}
    )


# -- genus 1: decorated cycles ---------------------------------------------------


def decorated_cycle(n: int, T: RootedTree | None = None) -> FamilyInstance:
    """An ``n``-cycle ``c0..c{n-1}`` with two copies of ``T`` rooted at each ``ci``.

    Copy ``s`` (0 or 1) of tree vertex ``v`` at ``ci`` is ``ci.s.v``; cycle edge
    ``ki`` joins ``ci`` and ``c{i+1}``.  The dihedral group acts with
    rotations keeping the copy index and reflections swapping it.  Named:
    ``rotation``; ``reflection_k`` for ``k`` in ``0..n-1`` is ``ci -> c{k-i}``.
    """
    if n < 3:
        raise HarmonicaInputError("decorated cycles need n >= 3")
    T = edge_tree() if T is None else T
    if T.graph.num_edges == 0:
        raise DegenerateTree("decorations must have at least one edge")
    tv = [v for v in T.graph.vertices if v != T.root]

    def vname(i, s, v):
        return f"c{i % n}" if v == T.root else f"c{i % n}.{s}.{v}"

    verts = [f"c{i}" for i in range(n)] + [vname(i, s, v) for i in range(n) for s in (0, 1) for v in tv]
    edges = [(f"k{i}", f"c{i}", f"c{(i + 1) % n}") for i in range(n)]
    edges += [
        (f"c{i}.{s}.{e}", vname(i, s, u), vname(i, s, v))
        for i in range(n)
        for s in (0, 1)
        for e, u, v in T.graph.edge_triples()
    ]
    G = build_graph(verts, edges)

    def element(shift, flip):
        def idx(i):
            return (shift - i) % n if flip else (shift + i) % n

        vmap = {f"c{i}": f"c{idx(i)}" for i in range(n)}
        emap = {}
        for i in range(n):
            emap[f"k{i}"] = f"k{(idx(i) - 1) % n}" if flip else f"k{idx(i)}"
            for s in (0, 1):
                t = 1 - s if flip else s
                for v in tv:
                    vmap[vname(i, s, v)] = vname(idx(i), t, v)
                for e, _, _ in T.graph.edge_triples():
                    emap[f"c{i}.{s}.{e}"] = f"c{idx(i)}.{t}.{e}"
        return _auto(G, vmap, emap)

    rot = element(1, False)
    named = {"rotation": rot}
    for k in range(n):
        named[f"reflection_{k}"] = element(k, True)
    group = generate_group(G, [rot, named["reflection_0"]])
    return FamilyInstance("decorated_cycle", G, group, True, _expected(2 * n, 1, 0, [(2, 1)]), named)


# -- genus 0: trees ------------------------------------------------------------------


def tree_double(T0: RootedTree) -> FamilyInstance:
    """Copies ``L.*`` and ``R.*`` of ``T0`` with an edge ``bridge`` between the roots.

    The group is generated by ``swap``.  With a one-vertex ``T0`` the result is
    a single edge whose swap collapses the whole graph, so the action is
    degenerate and not harmonic.
    """
    verts = [f"{side}.{v}" for side in "LR" for v in T0.graph.vertices]
    edges = [(f"{side}.{e}", f"{side}.{u}", f"{side}.{v}") for side in "LR" for e, u, v in T0.graph.edge_triples()]
    edges.append(("bridge", f"L.{T0.root}", f"R.{T0.root}"))
    G = build_graph(verts, edges)
    other = {"L": "R", "R": "L"}
    vmap = {x: other[x[0]] + x[1:] for x in verts}
    emap = {e: (e if e == "bridge" else other[e[0]] + e[1:]) for e, _, _ in edges}
    swap = _auto(G, vmap, emap)
    group = generate_group(G, [swap])
    harmonic = T0.graph.num_edges > 0
    expected = _expected(2, 0, 0, [(1, 1)]) if harmonic else None
    return FamilyInstance("tree_double", G, group, harmonic, expected, {"swap": swap})


def tree_star(T0: RootedTree, table: GroupTable) -> FamilyInstance:
    """One copy ``<label>.*`` of ``T0`` per group element, all roots glued to ``c``.

    Element ``g`` sends the copy labelled ``h`` to the copy labelled ``g*h``.
    """
    k = table.order
    if k < 2:
        raise HarmonicaInputError("tree_star needs a group of order at least 2")
    if T0.graph.num_edges == 0:
        raise DegenerateTree("T0 must have at least one edge")
    tv = [v for v in T0.graph.vertices if v != T0.root]
    labels = table.labels

    def vname(h, v):
        return "c" if v == T0.root else f"{labels[h]}.{v}"

    verts = ["c"] + [vname(h, v) for h in range(k) for v in tv]
    edges = [(f"{labels[h]}.{e}", vname(h, u), vname(h, v)) for h in range(k) for e, u, v in T0.graph.edge_triples()]
    G = build_graph(verts, edges)
    elems = {}
    for g in range(k):
        vmap = {"c": "c"}
        emap = {}
        for h in range(k):
            gh = table.table[g][h]
            for v in tv:
                vmap[vname(h, v)] = vname(gh, v)
            for e, _, _ in T0.graph.edge_triples():
                emap[f"{labels[h]}.{e}"] = f"{labels[gh]}.{e}"
        elems[labels[g]] = _auto(G, vmap, emap)
    group = ActionGroup.from_elements(G, [a.perm for a in elems.values()])
    expected = _expected(k, 0, 0, [(k, 0)])
    return FamilyInstance("tree_star", G, group, True, expected, elems)


# -- genus 2: the extremal example ------------------------------------------------------


def hurwitz_genus2() -> FamilyInstance:
    """Two degree-6 centres ``CL``, ``CR`` joined by ``m0, m1, m2``.

    ``CL`` carries leaves ``L1..L3`` via ``l1..l3``; ``CR`` carries ``R1..R3``
    via ``r1..r3``.  ``sigma`` fixes both centres and rotates everything else
    by one step; ``tau`` swaps left and right, fixing each ``mi``.
    """
    verts = ["L1", "L2", "L3", "CL", "CR", "R1", "R2", "R3"]
    edges = [(f"m{i}", "CL", "CR") for i in range(3)]
    edges += [(f"l{i}", "CL", f"L{i}") for i in range(1, 4)]
    edges += [(f"r{i}", "CR", f"R{i}") for i in range(1, 4)]
    G = build_graph(verts, edges)

    def nxt(i):
        return i % 3 + 1

    s_v = {"CL": "CL", "CR": "CR"} | {f"{x}{i}": f"{x}{nxt(i)}" for x in "LR" for i in range(1, 4)}
    s_e = {f"m{i}": f"m{(i + 1) % 3}" for i in range(3)} | {
        f"{x}{i}": f"{x}{nxt(i)}" for x in "lr" for i in range(1, 4)
    }
    t_v = {"CL": "CR", "CR": "CL"} | {f"L{i}": f"R{i}" for i in range(1, 4)} | {f"R{i}": f"L{i}" for i in range(1, 4)}
    t_e = {f"m{i}": f"m{i}" for i in range(3)} | {f"l{i}": f"r{i}" for i in range(1, 4)} | {
        f"r{i}": f"l{i}" for i in range(1, 4)
    }
    sigma = _auto(G, s_v, s_e)
    tau = _auto(G, t_v, t_e)
    group = generate_group(G, [sigma, tau])
    return FamilyInstance(
        "hurwitz_genus2", G, group, True, _expected(6, 2, 0, [(3, 1)]), {"sigma": sigma, "tau": tau}
    )


# -- the 4(g-1) family ------------------------------------------------------------------


def lower_bound_family(g: int) -> FamilyInstance:
    """``g - 1`` squares in a necklace.

    Square ``i`` has corners ``j{i}`` and ``j{i+1}`` (shared with its
    neighbours) and free corners ``a{i}`` (outer) and ``b{i}`` (inner); its
    edges are ``ja{i}, aj{i}, jb{i}, bj{i}``.  Generators: ``rotation``
    (advance one square), ``reflection`` (``j{i} -> j{-i}``) and ``flip``
    (exchange inner and outer corners).
    """
    if g < 3:
        raise HarmonicaInputError("the necklace family needs g >= 3")
    k = g - 1
    verts = [f"{t}{i}" for i in range(k) for t in "jab"]
    edges = []
    for i in range(k):
        nx = (i + 1) % k
        edges += [
            (f"ja{i}", f"j{i}", f"a{i}"),
            (f"aj{i}", f"a{i}", f"j{nx}"),
            (f"jb{i}", f"j{i}", f"b{i}"),
            (f"bj{i}", f"b{i}", f"j{nx}"),
        ]
    G = build_graph(verts, edges)
    rot_v = {f"{t}{i}": f"{t}{(i + 1) % k}" for t in "jab" for i in range(k)}
    rot_e = {f"{t}{i}": f"{t}{(i + 1) % k}" for t in ("ja", "aj", "jb", "bj") for i in range(k)}
    ref_v = {f"j{i}": f"j{(-i) % k}" for i in range(k)}
    ref_e = {}
    for i in range(k):
        s = (-i - 1) % k
        ref_v[f"a{i}"] = f"a{s}"
        ref_v[f"b{i}"] = f"b{s}"
        ref_e[f"ja{i}"] = f"aj{s}"
        ref_e[f"aj{i}"] = f"ja{s}"
        ref_e[f"jb{i}"] = f"bj{s}"
        ref_e[f"bj{i}"] = f"jb{s}"
    flip_v = {f"j{i}": f"j{i}" for i in range(k)} | {f"a{i}": f"b{i}" for i in range(k)} | {
        f"b{i}": f"a{i}" for i in range(k)
    }
    flip_e = {}
    for i in range(k):
        flip_e |= {f"ja{i}": f"jb{i}", f"jb{i}": f"ja{i}", f"aj{i}": f"bj{i}", f"bj{i}": f"aj{i}"}
    named = {
        "rotation": _auto(G, rot_v, rot_e),
        "reflection": _auto(G, ref_v, ref_e),
        "flip": _auto(G, flip_v, flip_e),
    }
    group = generate_group(G, list(named.values()), budget=max(4 * k, 8))
    return FamilyInstance(
        "lower_bound", G, group, True, _expected(4 * k, g, 0, [(2, 0), (4, 0)]), named
    )


FAMILIES = {
    "barbell": barbell,
    "klein3": klein_genus3,
    "klein5": klein_genus5,
    "hurwitz2": hurwitz_genus2,
}
