"""JSON codecs and DOT export.

Formats::

    graph     {"vertices": [...], "edges": [{"id": .., "ends": [u, v]}, ...]}
    action    {"generators": [{"vertex_map": {..}, "edge_map": {..}}, ...]}
    morphism  {"vertex_map": {..}, "edge_map": {e: f or null}}

``null`` in a morphism edge map means the edge is collapsed.  Errors in the
input raise :class:`ParseError` naming the position (for malformed JSON) or
the offending field path.
"""

from __future__ import annotations

import json
from pathlib import Path

from .action import ActionGroup, generate_group
from .errors import HarmonicaInputError, ParseError
from .morphism import COLLAPSED, GraphMorphism, build_morphism
from .multigraph import MultiGraph
from .ramification import RamificationProfile, classify_branch_locus


def _loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def _field(obj, key, kind, path):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path or "$")
    if key not in obj:
        raise ParseError("missing field", f"{path}.{key}" if path else key)
    val = obj[key]
    if not isinstance(val, kind):
        raise ParseError(f"expected {kind.__name__}", f"{path}.{key}" if path else key)
    return val


def _id(x, path):
    if not isinstance(x, (str, int)) or isinstance(x, bool):
        raise ParseError("ids must be strings or integers", path)
    return x


# -- graphs ----------------------------------------------------------------------------


def graph_to_json(G: MultiGraph) -> dict:
    return {
        "vertices": list(G.vertices),
        "edges": [{"id": e, "ends": [u, v]} for e, u, v in G.edge_triples()],
    }


def graph_from_json(data, path: str = "") -> MultiGraph:
    verts = _field(data, "vertices", list, path)
    edges = _field(data, "edges", list, path)
    vs = [_id(v, f"vertices[{i}]") for i, v in enumerate(verts)]
    triples = []
    for i, item in enumerate(edges):
        where = f"edges[{i}]"
        eid = _id(_field(item, "id", (str, int), where), f"{where}.id")
        ends = _field(item, "ends", list, where)
        if len(ends) != 2:
            raise ParseError("an edge needs exactly two ends", f"{where}.ends")
        triples.append((eid, _id(ends[0], f"{where}.ends[0]"), _id(ends[1], f"{where}.ends[1]")))
    if not vs:
        raise ParseError("graph has no vertices", "vertices")
    try:
        return MultiGraph(vs, triples)
    except HarmonicaInputError as exc:
        raise ParseError(str(exc), "edges") from None


def parse_graph(text: str, source: str = "<input>") -> MultiGraph:
    return graph_from_json(_loads(text, source))


# -- actions ---------------------------------------------------------------------------


def _perm_from_maps(G: MultiGraph, vmap: dict, emap: dict, where: str) -> tuple:
    n = G.num_vertices
    keyed_v = {str(k): k for k in G.vertices}
    keyed_e = {str(k): k for k in G.edges}
    perm = [None] * (n + G.num_edges)
    for name, field_map, keyed, index, offset in (
        ("vertex_map", vmap, keyed_v, G.vertex_index, 0),
        ("edge_map", emap, keyed_e, G.edge_index, n),
    ):
        size = len(keyed)
        if len(field_map) != size:
            raise ParseError(f"expected {size} entries, got {len(field_map)}", f"{where}.{name}")
        for k, v in field_map.items():
            if str(k) not in keyed:
                raise ParseError(f"unknown id {k!r}", f"{where}.{name}")
            if str(v) not in keyed:
                raise ParseError(f"unknown image {v!r}", f"{where}.{name}.{k}")
            perm[offset + index(keyed[str(k)])] = offset + index(keyed[str(v)])
        images = [perm[offset + i] for i in range(size)]
        if len(set(images)) != size:
            raise ParseError("map is not bijective", f"{where}.{name}")
    return tuple(perm)


def action_to_json(group: ActionGroup) -> dict:
    G = group.graph
    n = G.num_vertices
    gens = []
    for p in group.generators:
        gens.append({
            "vertex_map": {G.vertices[i]: G.vertices[p[i]] for i in range(n)},
            "edge_map": {G.edges[j]: G.edges[p[n + j] - n] for j in range(G.num_edges)},
        })
    return {"generators": gens}


def action_from_json(G: MultiGraph, data, budget: int | None = None) -> ActionGroup:
    gens = _field(data, "generators", list, "")
    perms = []
    for i, item in enumerate(gens):
        where = f"generators[{i}]"
        vmap = _field(item, "vertex_map", dict, where)
        emap = _field(item, "edge_map", dict, where)
        perms.append(_perm_from_maps(G, vmap, emap, where))
    try:
        return generate_group(G, perms, budget)
    except HarmonicaInputError as exc:
        raise ParseError(str(exc), "generators") from None


def parse_action(G: MultiGraph, text: str, source: str = "<input>", budget: int | None = None) -> ActionGroup:
    return action_from_json(G, _loads(text, source), budget)


# -- morphisms -------------------------------------------------------------------------


def morphism_to_json(phi: GraphMorphism) -> dict:
    return {
        "vertex_map": {x: phi.target.vertices[y] for x, y in zip(phi.source.vertices, phi.vidx)},
        "edge_map": {
            e: (None if k < 0 else phi.target.edges[k]) for e, k in zip(phi.source.edges, phi.eidx)
        },
    }


def morphism_from_json(source: MultiGraph, target: MultiGraph, data) -> GraphMorphism:
    vmap = _field(data, "vertex_map", dict, "")
    emap = _field(data, "edge_map", dict, "")
    sv = {str(v): v for v in source.vertices}
    tv = {str(v): v for v in target.vertices}
    se = {str(e): e for e in source.edges}
    te = {str(e): e for e in target.edges}
    vm, em = {}, {}
    for k, v in vmap.items():
        if k not in sv:
            raise ParseError(f"unknown source vertex {k!r}", "vertex_map")
        if str(v) not in tv:
            raise ParseError(f"unknown target vertex {v!r}", f"vertex_map.{k}")
        vm[sv[k]] = tv[str(v)]
    for k, v in emap.items():
        if k not in se:
            raise ParseError(f"unknown source edge {k!r}", "edge_map")
        if v is None:
            em[se[k]] = COLLAPSED
        elif str(v) in te:
            em[se[k]] = te[str(v)]
        else:
            raise ParseError(f"unknown target edge {v!r}", f"edge_map.{k}")
    try:
        return build_morphism(source, target, vm, em)
    except HarmonicaInputError as exc:
        raise ParseError(str(exc), "$") from None


# -- profiles --------------------------------------------------------------------------


def profile_to_json(p: RamificationProfile, with_case: bool = False) -> dict:
    out = p.to_json()
    if with_case:
        out["case"] = str(classify_branch_locus(p))
    return out


# -- files -----------------------------------------------------------------------------


def read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(exc.strerror or "cannot read file", str(path)) from None
    return _loads(text, str(path))


def write_json(path, data) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=False) + "\n")


def load_graph(path) -> MultiGraph:
    data = read_json(path)
    try:
        return graph_from_json(data)
    except ParseError as exc:
        raise ParseError(str(exc), str(path)) from None


def load_action(G: MultiGraph, path, budget: int | None = None) -> ActionGroup:
    data = read_json(path)
    try:
        return action_from_json(G, data, budget)
    except ParseError as exc:
        raise ParseError(str(exc), str(path)) from None


# -- DOT -------------------------------------------------------------------------------


def _q(x) -> str:
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(G: MultiGraph, morphism: GraphMorphism | None = None,
           branch_labels: dict | None = None, name: str = "G") -> str:
    """DOT text for ``G``.

    With a morphism, collapsed edges are drawn dashed.  ``branch_labels`` maps
    vertex ids to ``(r, w)``; those vertices get the pair in their label.
    """
    branch_labels = branch_labels or {}
    lines = [f"graph {_q(name)} {{", "  node [shape=circle];"]
    for v in G.vertices:
        if v in branch_labels:
            r, w = branch_labels[v]
            lines.append(f"  {_q(v)} [label={_q(f'{v} ({r},{w})')}, shape=doublecircle];")
        else:
            lines.append(f"  {_q(v)};")
    for j, (e, u, v) in enumerate(G.edge_triples()):
        style = ""
        if morphism is not None and morphism.eidx[j] < 0:
            style = ", style=dashed"
        lines.append(f"  {_q(u)} -- {_q(v)} [label={_q(e)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_dot(p: RamificationProfile, name: str = "quotient") -> str:
    """The quotient graph with branch points labelled by ``(r, w)``."""
    labels = {b.vertex: (b.r, b.w) for b in p.branch_points}
    return to_dot(p.quotient, branch_labels=labels, name=name)


def action_dot(G: MultiGraph, group: ActionGroup, name: str = "G") -> str:
    """``G`` with edges dashed when the quotient by ``group`` collapses them."""
    from .action import quotient

    _, phi = quotient(G, group)
    return to_dot(G, morphism=phi, name=name)
