import json

import pytest

from harmonica import io
from harmonica.action import generate_group, is_harmonic_action, quotient
from harmonica.cli import main
from harmonica.errors import ParseError
from harmonica.families import barbell, decorated_cycle, edge_tree, klein_genus5
from harmonica.multigraph import canonical_key


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def test_graph_and_action_round_trip():
    inst = barbell()
    G = io.parse_graph(json.dumps(io.graph_to_json(inst.graph)))
    assert canonical_key(G) == canonical_key(inst.graph)
    for auto in inst.named.values():
        grp = generate_group(inst.graph, [auto])
        back = io.parse_action(G, json.dumps(io.action_to_json(grp)))
        assert back.key() == grp.key()


def test_morphism_round_trip_keeps_collapsed_edges():
    inst = decorated_cycle(6, edge_tree())
    Q, phi = quotient(inst.graph, inst.group)
    data = json.loads(json.dumps(io.morphism_to_json(phi)))
    assert any(v is None for v in data["edge_map"].values())
    back = io.morphism_from_json(inst.graph, Q, data)
    assert back.vidx == phi.vidx and back.eidx == phi.eidx


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as exc:
        io.parse_graph('{"vertices": [1,\n  ]}', source="g.json")
    assert "g.json:2:" in str(exc.value)


def test_missing_field_and_bad_ends():
    with pytest.raises(ParseError, match="edges"):
        io.parse_graph('{"vertices": ["a"]}')
    with pytest.raises(ParseError, match=r"edges\[0\]\.ends"):
        io.parse_graph('{"vertices": ["a","b"], "edges": [{"id": "e", "ends": ["a"]}]}')


def test_action_errors():
    G = barbell().graph
    v = {x: x for x in G.vertices}
    e = {x: x for x in G.edges}
    bad = dict(v)
    bad[G.vertices[0]] = G.vertices[1]
    with pytest.raises(ParseError, match="bijective"):
        io.action_from_json(G, {"generators": [{"vertex_map": bad, "edge_map": e}]})
    e2 = dict(e)
    e2[G.edges[0]] = "nope"
    with pytest.raises(ParseError, match="unknown image"):
        io.action_from_json(G, {"generators": [{"vertex_map": v, "edge_map": e2}]})
    with pytest.raises(ParseError, match="entries"):
        io.action_from_json(G, {"generators": [{"vertex_map": {}, "edge_map": e}]})


def test_dot_output():
    inst = decorated_cycle(6, edge_tree())
    text = io.action_dot(inst.graph, inst.group)
    assert "style=dashed" in text and text.startswith("graph")
    from harmonica.ramification import profile

    qdot = io.quotient_dot(profile(inst.graph, inst.group))
    assert "doublecircle" in qdot and "(2,1)" in qdot


# -- CLI --------------------------------------------------------------------------------


@pytest.fixture
def barbell_files(tmp_path):
    inst = barbell()
    g = _write(tmp_path, "g.json", io.graph_to_json(inst.graph))
    acts = {
        k: _write(tmp_path, f"{k}.json", io.action_to_json(generate_group(inst.graph, [a])))
        for k, a in inst.named.items()
    }
    return tmp_path, g, acts


def test_cli_verify(barbell_files, capsys):
    _, g, acts = barbell_files
    assert main(["verify", "--graph", g, "--action", acts["vertical_reflection"], "--definition"]) == 0
    out = capsys.readouterr().out
    assert "HARMONIC" in out and "agrees" in out and "holds" in out
    assert main(["verify", "--graph", g, "--action", acts["horizontal_reflection"]]) == 1
    assert "NOT HARMONIC" in capsys.readouterr().out


def test_cli_quotient_and_profile(barbell_files):
    tmp, g, acts = barbell_files
    a = acts["vertical_reflection"]
    assert main(["quotient", "--graph", g, "--action", a, "--out", str(tmp / "q")]) == 0
    Q = io.load_graph(tmp / "q" / "quotient.json")
    assert Q.num_vertices >= 1
    assert main(["profile", "--graph", g, "--action", a, "--out", str(tmp / "p.json")]) == 0
    data = json.loads((tmp / "p.json").read_text())
    assert data["R"] == "1" and "case" in data
    assert main(["profile", "--graph", g, "--action", acts["horizontal_reflection"]]) == 1


def test_cli_construct_writes_artifacts(tmp_path):
    assert main(["construct", "--family", "klein5", "--out", str(tmp_path)]) == 0
    stem = klein_genus5().name
    for suffix in (".graph.json", ".action.json", ".profile.json", ".quotient.dot", ".dot"):
        assert (tmp_path / f"{stem}{suffix}").exists()
    G = io.load_graph(tmp_path / f"{stem}.graph.json")
    grp = io.load_action(G, tmp_path / f"{stem}.action.json")
    assert is_harmonic_action(G, grp)


def test_cli_construct_stdout_and_options(capsys):
    assert main(["construct", "--family", "tree-star", "--tree", "path2", "--group", "cyclic:3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "profile" in data
    assert main(["construct", "--family", "tree-star", "--group", "dihedral"]) == 2


def test_cli_cover(tmp_path, barbell_files):
    _, g, _ = barbell_files
    assert main(["cover", "--graph", g, "--m", "2", "--out", str(tmp_path / "c")]) == 0
    C = io.load_graph(tmp_path / "c" / "cover.graph.json")
    deck = io.load_action(C, tmp_path / "c" / "cover.deck.json")
    assert deck.order == 4 and is_harmonic_action(C, deck)
    volt = _write(tmp_path, "v.json", {"moduli": [3], "voltages": {"ab2": [1], "cd2": [2]}})
    assert main(["cover", "--graph", g, "--voltages", volt]) == 0
    # trivial voltages give a disconnected cover and are rejected
    empty = _write(tmp_path, "e.json", {"moduli": [3], "voltages": {}})
    assert main(["cover", "--graph", g, "--voltages", empty]) == 2
    bad = _write(tmp_path, "bad_v.json", {"voltages": {}})
    assert main(["cover", "--graph", g, "--voltages", bad]) == 2


def test_cli_census(tmp_path, capsys):
    out = tmp_path / "census.json"
    assert main(["census", "--genus", "2", "--max-vertices", "5", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["max_order"] == 6 and data["violations"] == []
    assert "max harmonic order 6" in capsys.readouterr().out


def test_cli_export_dot(barbell_files, capsys):
    tmp, g, acts = barbell_files
    assert main(["export-dot", "--graph", g]) == 0
    assert capsys.readouterr().out.startswith("graph")
    a = acts["vertical_reflection"]
    assert main(["export-dot", "--graph", g, "--action", a, "--quotient", "--out", str(tmp / "q.dot")]) == 0
    assert "doublecircle" in (tmp / "q.dot").read_text()
    assert main(["export-dot", "--graph", g, "--action", acts["horizontal_reflection"], "--quotient"]) == 1


def test_cli_exit_codes(tmp_path, monkeypatch, capsys):
    bad = _write(tmp_path, "bad.json", '{"vertices": [')
    assert main(["export-dot", "--graph", bad]) == 2
    assert "bad.json:1:" in capsys.readouterr().err
    assert main(["export-dot", "--graph", str(tmp_path / "missing.json")]) == 2
    monkeypatch.setenv("HARMONICA_BUDGET", "10")
    assert main(["construct", "--family", "macbeath", "--m", "2"]) == 3
    assert main(["--budget", "100000", "construct", "--family", "macbeath", "--m", "2", "--out", str(tmp_path)]) == 0
    with pytest.raises(SystemExit):
        main(["--budget", "0", "verify"])
