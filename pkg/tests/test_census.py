import pytest
from hypothesis import given
from hypothesis import strategies as st

from harmonica.action import (
    automorphism_group,
    generate_group,
    is_harmonic_action,
    is_harmonic_action_by_definition,
    perm_order,
    subgroups,
)
from harmonica.census import (
    brute_force_graph_keys,
    enumerate_graphs,
    harmonic_subgroups,
    max_harmonic_order,
    run_census,
    unlabeled_trees,
)
from harmonica.errors import BudgetExceeded
from harmonica.families import cyclic_table, edge_tree, hurwitz_genus2, klein_table, path_tree, tree_star
from harmonica.multigraph import MultiGraph, brute_force_key, build_graph, canonical_key, genus, is_connected

# per-vertex-count class sizes, frozen from the enumerator after the
# brute-force cross-check below (|V| <= 4) and the sampling check
FROZEN_COUNTS = {
    0: [1, 1, 2, 3, 6, 11],
    1: [1, 2, 5, 11, 29],
    2: [1, 3, 11, 34, 110],
    3: [1, 4, 22, 85, 348, 1318],
}


def _counts(g, v):
    out = [0] * (v - 1)
    for G in enumerate_graphs(g, v):
        out[G.num_vertices - 2] += 1
    return out


def test_tree_counts():
    assert [len(unlabeled_trees(n)) for n in range(1, 8)] == [1, 1, 1, 2, 3, 6, 11]


def test_enumeration_examples():
    assert len(list(enumerate_graphs(0, 4))) == 4
    (G,) = enumerate_graphs(1, 2)
    assert (G.num_vertices, G.num_edges) == (2, 2)
    (G,) = enumerate_graphs(2, 2)
    assert (G.num_vertices, G.num_edges) == (2, 3)
    with pytest.raises(ValueError):
        list(enumerate_graphs(1, 1))


def test_frozen_counts():
    for g, counts in FROZEN_COUNTS.items():
        assert _counts(g, len(counts) + 1) == counts


def test_enumeration_matches_brute_force_small():
    for g in range(4):
        ours = {brute_force_key(G) for G in enumerate_graphs(g, 4)}
        ref = brute_force_graph_keys(g, 4, max_mult=3)
        # the reference caps multiplicities at 3; restrict ours the same way
        capped = {brute_force_key(G) for G in enumerate_graphs(g, 4)
                  if max(G.multiplicity_matrix()) <= 3}
        assert capped == ref
        assert len(ours) == len(list(enumerate_graphs(g, 4)))


def test_no_duplicates_and_deterministic():
    graphs = list(enumerate_graphs(2, 6))
    keys = [canonical_key(G) for G in graphs]
    assert len(keys) == len(set(keys))
    assert [brute_force_key(G) for G in graphs] == [brute_force_key(G) for G in enumerate_graphs(2, 6)]
    assert len({brute_force_key(G) for G in graphs}) == len(graphs)
    for G in graphs:
        assert genus(G) == 2 and is_connected(G)


@st.composite
def labelled_genus2(draw):
    n = draw(st.integers(2, 6))
    edges = [(draw(st.integers(0, i - 1)), i) for i in range(1, n)]
    for _ in range(2):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 2))
        edges.append((u, v + (v >= u)))
    return MultiGraph([f"x{i}" for i in range(n)], [(f"f{j}", f"x{u}", f"x{v}") for j, (u, v) in enumerate(edges)])


_GENUS2_KEYS = None


@given(labelled_genus2())
def test_random_labelled_graphs_are_enumerated(G):
    global _GENUS2_KEYS
    if _GENUS2_KEYS is None:
        _GENUS2_KEYS = {canonical_key(H) for H in enumerate_graphs(2, 6)}
    assert canonical_key(G) in _GENUS2_KEYS


def test_max_harmonic_order_examples():
    inst = hurwitz_genus2()
    order, witness = max_harmonic_order(inst.graph)
    assert order == 6 and is_harmonic_action(inst.graph, witness)
    tri = build_graph(["a", "b"], [("x", "a", "b"), ("y", "a", "b"), ("z", "a", "b")])
    order, witness = max_harmonic_order(tri)
    assert automorphism_group(tri).order == 12
    # swapping the two vertices is degenerate and a transposition of edges
    # fixes the third edge, so only the rotation of the edges survives
    assert order == 3 and witness.order == 3
    cyc6 = [S for S in subgroups(automorphism_group(tri)) if S.order == 6 and any(perm_order(x) == 6 for x in S.elements)]
    assert cyc6 and not any(is_harmonic_action_by_definition(tri, S) for S in cyc6)
    for tbl in (cyclic_table(3), klein_table()):
        star = tree_star(path_tree(2), tbl)
        assert max_harmonic_order(star.graph)[0] >= tbl.order


def test_max_harmonic_order_matches_subgroup_scan():
    for G in enumerate_graphs(2, 4):
        aut = automorphism_group(G)
        scan = max(S.order for S in subgroups(aut) if is_harmonic_action(G, S))
        assert max_harmonic_order(G)[0] == scan


def test_harmonic_subgroup_search_finds_every_harmonic_subgroup():
    for G in list(enumerate_graphs(2, 5)) + [tree_star(edge_tree(), klein_table()).graph]:
        aut = automorphism_group(G)
        found = set(harmonic_subgroups(G, aut.elements))
        expected = {S.key() for S in subgroups(aut) if is_harmonic_action(G, S)}
        assert found == expected


def test_max_harmonic_order_budget():
    star = tree_star(edge_tree(), cyclic_table(7))
    with pytest.raises(BudgetExceeded):
        max_harmonic_order(star.graph, budget=100)


def test_census_genus2_small():
    rep = run_census(2, 5)
    assert rep.violations == [] and not rep.truncated
    assert rep.max_order == 6
    assert [r.key for r in rep.records] == sorted(r.key for r in rep.records)
    for r in rep.records:
        G_gens = r.witness_generators
        assert isinstance(G_gens, list)
        assert r.max_order <= 6


def test_census_parallel_matches_serial():
    a = run_census(2, 5, jobs=1)
    b = run_census(2, 5, jobs=2)
    assert a.to_json() == b.to_json()


def test_census_genus1_note():
    rep = run_census(1, 4)
    assert any("genus < 2" in n for n in rep.notes)
    assert rep.violations == []


def test_census_truncation_marker():
    rep = run_census(1, 4, aut_budget=4)
    assert rep.truncated
    assert any(r.truncated and r.max_order is None for r in rep.records)


def test_witness_generators_reverify():
    rep = run_census(2, 4)
    graphs = {canonical_key(G).decode(): G for G in enumerate_graphs(2, 4)}
    for r in rep.records:
        G = graphs[r.key]
        gens = []
        n = G.num_vertices
        for g in r.witness_generators:
            perm = [G.vertex_index(g["vertex_map"][v]) for v in G.vertices]
            perm += [n + G.edge_index(g["edge_map"][e]) for e in G.edges]
            gens.append(tuple(perm))
        grp = generate_group(G, gens)
        assert grp.order == r.max_order
        assert is_harmonic_action(G, grp)
