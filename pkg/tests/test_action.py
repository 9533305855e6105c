from itertools import combinations

import pytest
from hypothesis import assume, given

from _strategies import multigraphs
from harmonica.action import (
    ActionGroup,
    automorphism_group,
    automorphism_group_order,
    build_automorphism,
    closure,
    generate_group,
    identity,
    is_harmonic_action,
    is_harmonic_action_by_definition,
    mul,
    orbits_and_stabilizers,
    quotient,
    subgroups,
    trivial_group,
)
from harmonica.errors import BudgetExceeded, ClosureBudgetExceeded, IncidenceViolation, NotBijective
from harmonica.families import barbell, cyclic_table, decorated_cycle, hurwitz_genus2, klein_genus3, tree_star, edge_tree
from harmonica.morphism import degree, identity_morphism, multiplicities
from harmonica.multigraph import are_isomorphic, build_graph, genus, is_connected


def test_build_automorphism_examples():
    B = barbell().graph
    h = build_automorphism(
        B, {v: v for v in "abcd"},
        {"ab1": "ab2", "ab2": "ab1", "bc": "bc", "cd1": "cd2", "cd2": "cd1"},
    )
    assert h.order() == 2 and h == barbell().named["horizontal_reflection"]
    assert identity(B).is_identity()
    D = build_graph(["a", "b"], [("e", "a", "b"), ("f", "a", "b")])
    swap = build_automorphism(D, {"a": "b", "b": "a"}, {"e": "e", "f": "f"})
    assert swap.vertex_perm == {"a": "b", "b": "a"}


def test_build_automorphism_errors():
    B = barbell().graph
    with pytest.raises(NotBijective):
        build_automorphism(B, {"a": "a", "b": "a", "c": "c", "d": "d"}, {e: e for e in B.edges})
    with pytest.raises(IncidenceViolation):
        build_automorphism(B, {"a": "b", "b": "a", "c": "c", "d": "d"}, {e: e for e in B.edges})


def test_generate_group_examples():
    inst = hurwitz_genus2()
    assert generate_group(inst.graph, [inst.named["sigma"], inst.named["tau"]]).order == 6
    assert generate_group(inst.graph, [identity(inst.graph)]).order == 1
    b = barbell()
    K = generate_group(b.graph, [b.named["vertical_reflection"], b.named["half_rotation"]])
    assert K.order == 4
    assert all(g.order() <= 2 for g in K)


def test_closure_budget():
    inst = decorated_cycle(8)
    with pytest.raises(ClosureBudgetExceeded):
        generate_group(inst.graph, [inst.named["rotation"], inst.named["reflection_0"]], budget=10)
    with pytest.raises(BudgetExceeded):
        automorphism_group(inst.graph, budget=10)


def test_orbits_examples():
    inst = hurwitz_genus2()
    orb = orbits_and_stabilizers(inst.group)
    sizes = sorted(len(o) for o in orb.vertex_orbits)
    assert sizes == [2, 6]
    assert orb.stabilizer_order["CL"] == 3 and orb.stabilizer_order["L1"] == 1
    G = inst.graph
    triv = orbits_and_stabilizers(trivial_group(G))
    assert all(len(o) == 1 for o in triv.vertex_orbits)
    k3 = klein_genus3()
    orb = orbits_and_stabilizers(k3.group)
    assert sorted(len(o) for o in orb.vertex_orbits) == [4, 4]
    assert set(orb.stabilizer_order.values()) == {1}


def test_orbit_stabilizer_identity():
    for inst in (hurwitz_genus2(), decorated_cycle(6), klein_genus3()):
        orb = orbits_and_stabilizers(inst.group)
        for o in orb.vertex_orbits:
            for x in o:
                assert len(o) * orb.stabilizer_order[x] == inst.group.order


def test_quotient_examples():
    b = barbell()
    H = generate_group(b.graph, [b.named["horizontal_reflection"]])
    Q, phi = quotient(b.graph, H)
    P3 = build_graph(["1", "2", "3", "4"], [("x", "1", "2"), ("y", "2", "3"), ("z", "3", "4")])
    assert are_isomorphic(Q, P3) is not None
    V = generate_group(b.graph, [b.named["vertical_reflection"]])
    Q, phi = quotient(b.graph, V)
    assert (Q.num_vertices, Q.num_edges, genus(Q)) == (2, 2, 1)
    Q, phi = quotient(b.graph, trivial_group(b.graph))
    assert Q == b.graph and phi.vidx == identity_morphism(b.graph).vidx


def test_harmonic_action_examples():
    b = barbell()
    H = generate_group(b.graph, [b.named["horizontal_reflection"]])
    cert = is_harmonic_action(b.graph, H)
    assert not cert
    assert cert.reason == "fixed-edge" and cert.vertex in ("b", "c") and cert.edge == "bc"
    assert cert.element == b.named["horizontal_reflection"]
    assert "NOT HARMONIC" in cert.describe()
    inst = hurwitz_genus2()
    assert is_harmonic_action(inst.graph, inst.group)
    assert not is_harmonic_action(b.graph, b.group)


def test_definition_examples():
    b = barbell()
    assert not is_harmonic_action_by_definition(b.graph, b.group)
    inst = decorated_cycle(6)
    C = generate_group(inst.graph, [inst.named["rotation"]])
    assert is_harmonic_action_by_definition(inst.graph, C)
    assert is_harmonic_action_by_definition(inst.graph, trivial_group(inst.graph))


def _brute_subgroup_count(group):
    """Count element subsets containing the identity that are closed under products."""
    ident = group.elements[0]
    rest = group.elements[1:]
    count = 0
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            s = set(combo) | {ident}
            if all(mul(a, b) in s for a in s for b in s):
                count += 1
    return count


def test_subgroup_counts():
    b = barbell()
    assert len(subgroups(b.group)) == 5
    star = tree_star(edge_tree(), cyclic_table(6))
    assert len(subgroups(star.group)) == 4
    d6 = decorated_cycle(6).group
    assert d6.order == 12
    assert len(subgroups(d6)) == 16 == _brute_subgroup_count(d6)


def test_subgroups_include_trivial_and_full():
    subs = subgroups(hurwitz_genus2().group)
    assert subs[0].order == 1 and subs[-1].order == 6
    assert len(subs) == _brute_subgroup_count(hurwitz_genus2().group)


def test_subgroup_budget():
    with pytest.raises(BudgetExceeded):
        subgroups(decorated_cycle(6).group, budget=8)


@given(multigraphs(max_vertices=6, max_genus=3))
def test_criterion_matches_definition_on_all_subgroups(G):
    assume(automorphism_group_order(G) <= 48)
    aut = automorphism_group(G)
    for D in subgroups(aut):
        crit = bool(is_harmonic_action(G, D))
        assert crit == is_harmonic_action_by_definition(G, D)
        Q, phi = quotient(G, D)
        assert is_connected(Q)
        assert all(u != v for _, u, v in Q.edge_triples())
        if crit:
            if Q.num_edges:
                assert degree(phi) == D.order
            orb = orbits_and_stabilizers(D)
            for x in G.vertices:
                m, v = multiplicities(phi, x)
                assert m == orb.stabilizer_order[x]
                assert v % orb.stabilizer_order[x] == 0


@given(multigraphs(max_vertices=6, max_genus=3))
def test_harmonicity_is_inherited_by_subgroups(G):
    assume(automorphism_group_order(G) <= 48)
    subs = subgroups(automorphism_group(G))
    harmonic = [S for S in subs if is_harmonic_action(G, S)]
    for S in harmonic:
        for T in subs:
            if T.key() <= S.key():
                assert is_harmonic_action(G, T)


def test_action_group_container_protocol():
    inst = hurwitz_genus2()
    grp = inst.group
    assert inst.named["sigma"] in grp
    assert len(list(grp)) == len(grp) == 6
    again = ActionGroup.from_elements(inst.graph, grp.elements)
    assert again == grp
    assert closure(grp.generators, inst.graph.num_vertices + inst.graph.num_edges) == set(grp.elements)
    with pytest.raises(ValueError):
        ActionGroup.from_elements(inst.graph, [grp.elements[0], inst.named["sigma"].perm])
