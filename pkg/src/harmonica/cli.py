"""Command-line front end.

Exit codes: 0 success or the property holds, 1 the property fails (a
certificate is printed), 2 bad input, 3 a group-order budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import census, covers, families, io
from .action import default_budget, is_harmonic_action, is_harmonic_action_by_definition, quotient
from .errors import BudgetExceeded, HarmonicaError, HarmonicaInputError
from .ramification import classify_branch_locus, profile, verify_riemann_hurwitz

EXIT_OK, EXIT_FAILS, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

TREES = {
    "point": families.point_tree,
    "edge": families.edge_tree,
    "star2": lambda: families.star_tree(2),
    "path2": lambda: families.path_tree(2),
}

log = logging.getLogger("harmonica")


def _positive(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if val <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return val


def _group_table(name: str) -> families.GroupTable:
    if name == "klein":
        return families.klein_table()
    if name.startswith("cyclic:"):
        return families.cyclic_table(int(name.split(":", 1)[1]))
    raise HarmonicaInputError(f"unknown group {name!r}; use klein or cyclic:<k>")


def _emit(data, out) -> None:
    if out:
        io.write_json(out, data)
        print(f"wrote {out}")
    else:
        print(json.dumps(data, indent=2))


def _load_pair(args):
    G = io.load_graph(args.graph)
    group = io.load_action(G, args.action, args.budget)
    return G, group


def _profile_json(G, group) -> dict:
    return io.profile_to_json(profile(G, group), with_case=True)


# -- subcommands -----------------------------------------------------------------------


def cmd_verify(args) -> int:
    G, group = _load_pair(args)
    cert = is_harmonic_action(G, group)
    print(cert.describe())
    if args.definition:
        agrees = bool(is_harmonic_action_by_definition(G, group, args.budget)) == bool(cert)
        print(f"definition check {'agrees' if agrees else 'DISAGREES'}")
        if not agrees:
            return EXIT_FAILS
    if not cert:
        return EXIT_FAILS
    p = profile(G, group)
    print(json.dumps(io.profile_to_json(p, with_case=True)))
    print(f"Riemann-Hurwitz: {'holds' if verify_riemann_hurwitz(p) else 'FAILS'}")
    return EXIT_OK if verify_riemann_hurwitz(p) else EXIT_FAILS


def cmd_quotient(args) -> int:
    G, group = _load_pair(args)
    Q, phi = quotient(G, group)
    data = {"graph": io.graph_to_json(Q), "morphism": io.morphism_to_json(phi)}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        io.write_json(out / "quotient.json", data["graph"])
        io.write_json(out / "morphism.json", data["morphism"])
        print(f"wrote {out / 'quotient.json'} and {out / 'morphism.json'}")
    else:
        print(json.dumps(data, indent=2))
    return EXIT_OK


def cmd_profile(args) -> int:
    G, group = _load_pair(args)
    cert = is_harmonic_action(G, group)
    if not cert:
        print(cert.describe())
        return EXIT_FAILS
    data = _profile_json(G, group)
    _emit(data, args.out)
    if args.out:
        print(f"case: {data['case']}")
    return EXIT_OK


def _build_family(args):
    name = args.family
    if name == "macbeath":
        mb = covers.macbeath(args.m, args.budget)
        return f"macbeath-{args.m}", mb.graph, mb.group
    if name == "decorated-cycle":
        inst = families.decorated_cycle(args.n, TREES[args.tree]())
    elif name == "tree-double":
        inst = families.tree_double(TREES[args.tree]())
    elif name == "tree-star":
        inst = families.tree_star(TREES[args.tree](), _group_table(args.group))
    elif name == "lower-bound":
        inst = families.lower_bound_family(args.g)
    else:
        inst = families.FAMILIES[name]()
    return inst.name, inst.graph, inst.group


def _write_artifacts(out: Path, stem: str, G, group) -> int:
    out.mkdir(parents=True, exist_ok=True)
    io.write_json(out / f"{stem}.graph.json", io.graph_to_json(G))
    io.write_json(out / f"{stem}.action.json", io.action_to_json(group))
    cert = is_harmonic_action(G, group)
    written = [f"{stem}.graph.json", f"{stem}.action.json"]
    if cert:
        p = profile(G, group)
        io.write_json(out / f"{stem}.profile.json", io.profile_to_json(p, with_case=True))
        (out / f"{stem}.quotient.dot").write_text(io.quotient_dot(p, name=f"{stem}/group"))
        written += [f"{stem}.profile.json", f"{stem}.quotient.dot"]
    (out / f"{stem}.dot").write_text(io.action_dot(G, group, name=stem))
    written.append(f"{stem}.dot")
    for w in written:
        print(f"wrote {out / w}")
    print(cert.describe())
    return EXIT_OK


def cmd_construct(args) -> int:
    stem, G, group = _build_family(args)
    if args.out is None:
        data = {"graph": io.graph_to_json(G), "action": io.action_to_json(group)}
        if is_harmonic_action(G, group):
            data["profile"] = _profile_json(G, group)
        print(json.dumps(data, indent=2))
        return EXIT_OK
    return _write_artifacts(Path(args.out), stem, G, group)


def cmd_cover(args) -> int:
    G = io.load_graph(args.graph)
    tree = covers.spanning_tree(G)
    if args.voltages:
        data = io.read_json(args.voltages)
        if not isinstance(data, dict) or "moduli" not in data or "voltages" not in data:
            raise io.ParseError("expected {'moduli': [...], 'voltages': {...}}", args.voltages)
        va = covers.voltage_assignment(G, tree, data["moduli"], data["voltages"])
    else:
        va = covers.homology_voltages(G, tree, args.m)
    dc = covers.derived_cover(va)
    out = Path(args.out) if args.out else None
    if out is None:
        print(json.dumps({
            "graph": io.graph_to_json(dc.cover),
            "deck": io.action_to_json(dc.deck),
            "projection": io.morphism_to_json(dc.projection),
        }, indent=2))
        return EXIT_OK
    out.mkdir(parents=True, exist_ok=True)
    io.write_json(out / "cover.graph.json", io.graph_to_json(dc.cover))
    io.write_json(out / "cover.deck.json", io.action_to_json(dc.deck))
    io.write_json(out / "cover.projection.json", io.morphism_to_json(dc.projection))
    print(f"wrote cover of genus {dc.cover.num_edges - dc.cover.num_vertices + 1} "
          f"with deck group of order {dc.deck.order} to {out}")
    return EXIT_OK


def cmd_census(args) -> int:
    report = census.run_census(args.genus, args.max_vertices, args.jobs, args.aut_budget)
    data = report.to_json()
    if args.out:
        io.write_json(args.out, data)
        print(f"wrote {args.out}")
    print(f"genus {report.genus}, up to {report.max_vertices} vertices: "
          f"{len(report.records)} graphs, max harmonic order {report.max_order}, "
          f"{len(report.violations)} violations")
    for note in report.notes:
        print(f"note: {note}")
    for v in report.violations:
        print(f"VIOLATION {v}")
    return EXIT_FAILS if report.violations else EXIT_OK


def cmd_export_dot(args) -> int:
    G = io.load_graph(args.graph)
    if args.action is None:
        text = io.to_dot(G, name=Path(args.graph).stem)
    else:
        group = io.load_action(G, args.action, args.budget)
        if args.quotient:
            cert = is_harmonic_action(G, group)
            if not cert:
                print(cert.describe())
                return EXIT_FAILS
            text = io.quotient_dot(profile(G, group))
        else:
            text = io.action_dot(G, group, name=Path(args.graph).stem)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmonica", description="Harmonic group actions on multigraphs.")
    parser.add_argument("--budget", type=_positive, default=None,
                        help="largest group order to enumerate (default: $HARMONICA_BUDGET or 256)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair(p):
        p.add_argument("--graph", required=True, help="graph JSON")
        p.add_argument("--action", required=True, help="action JSON")

    p = sub.add_parser("verify", help="check harmonicity of an action and print its profile")
    pair(p)
    p.add_argument("--definition", action="store_true",
                   help="also check every subgroup's quotient morphism directly")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("quotient", help="write the quotient graph and morphism")
    pair(p)
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("profile", help="write the ramification profile")
    pair(p)
    p.add_argument("--out", help="output JSON file")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("construct", help="build a named family member")
    p.add_argument("--family", required=True, choices=[
        "barbell", "klein3", "klein5", "hurwitz2", "decorated-cycle",
        "tree-double", "tree-star", "lower-bound", "macbeath",
    ])
    p.add_argument("--n", type=_positive, default=6, help="cycle length for decorated-cycle")
    p.add_argument("--g", type=int, default=3, help="genus for lower-bound")
    p.add_argument("--m", type=_positive, default=2, help="modulus for macbeath")
    p.add_argument("--tree", choices=sorted(TREES), default="edge", help="rooted tree for tree families")
    p.add_argument("--group", default="klein", help="klein or cyclic:<k> for tree-star")
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("cover", help="derived cover from voltages (default: mod-m homology)")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=_positive, default=2)
    p.add_argument("--voltages", help='JSON {"moduli": [...], "voltages": {edge: [...]}}')
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("census", help="exhaustive census of small graphs of one genus")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--aut-budget", type=_positive, default=census.DEFAULT_AUT_BUDGET,
                   help="skip (and flag) graphs whose automorphism group is larger")
    p.add_argument("--out", help="report JSON")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("export-dot", help="render a graph, optionally with an action or its quotient")
    p.add_argument("--graph", required=True)
    p.add_argument("--action")
    p.add_argument("--quotient", action="store_true", help="render the quotient with branch labels")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget is None:
        args.budget = default_budget()
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (HarmonicaInputError, ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HarmonicaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILS


if __name__ == "__main__":
    sys.exit(main())
