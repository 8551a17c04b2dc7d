"""Command-line surface: density/arboricity/orientation on edge-list files,
VC reports and reductions on product-subgraph instances, factor
classification, adjacency labels, and the verification/fuzzing suites.

Exit codes: 0 all checks hold, 1 a proved claim was violated, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classes import (chordal_certificate, clique_number, min_dismantling_order,
                      suboctahedron_structure)
from .density import (arboricity, bounded_outdegree_orientation, densest_subgraph,
                      forest_decomposition)
from .graph import FactorGraph, GraphError, degeneracy_ordering, from_edgelist
from .harness import (SUITES, fuzz_records, report_to_json, resolve_mu, run_suite)
from .labeling import decode, encode, from_label_file, to_label_file
from .products import (ProductSpace, instance_from_json, instance_to_json)
from .reductions import reduce_edge, reduce_opposite_pair
from .vc import compute_vc_report, vcd_induced, vcdens_induced

SCHEMA = "prodvc-report-1"


def _rational(x) -> dict:
    f = Fraction(x)
    return {"exact": f"{f.numerator}/{f.denominator}", "approx": float(f)}


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _emit(doc: dict, out: str | None = None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_graph(path: str) -> FactorGraph:
    return from_edgelist(_read(path))


def _load_instance(path: str):
    return instance_from_json(_read(path))


# ---------------------------------------------------------------------------
# subcommands

def cmd_density(args) -> int:
    g = _load_graph(args.file)
    rep = densest_subgraph(g)
    _emit({"schema": SCHEMA, "density": _rational(rep.density),
           "mad": _rational(rep.mad), "witness": list(rep.witness)})
    return 0


def cmd_arboricity(args) -> int:
    g = _load_graph(args.file)
    k = arboricity(g)
    doc = {"schema": SCHEMA, "arboricity": k}
    _, degeneracy = degeneracy_ordering(g)
    fd = forest_decomposition(g, degeneracy)
    doc["forests"] = {str(j): [list(e) for e in fd.forest_edges(j)]
                      for j in range(fd.k)}
    _emit(doc)
    return 0


def cmd_orient(args) -> int:
    g = _load_graph(args.file)
    orientation = bounded_outdegree_orientation(g, args.max_outdegree)
    arcs = sorted([u, v] if head == v else [v, u]
                  for (u, v), head in orientation.items())
    _emit({"schema": SCHEMA, "max_outdegree": args.max_outdegree,
           "arcs_tail_head": arcs})
    return 0


def cmd_vcd(args) -> int:
    g = _load_instance(args.instance)
    doc = {"schema": SCHEMA, "n": g.n, "m": g.num_edges}
    if args.minor:
        rep = compute_vc_report(g, budget=args.budget,
                                f_cap=args.exact_caps[0], m_cap=args.exact_caps[1])
        doc.update({
            "vcd": rep.vcd, "vcdens": _rational(rep.vcdens),
            "vcd_star": rep.vcd_star, "vcdens_star": _rational(rep.vcdens_star),
            "vcd_star_exact": rep.vcd_star_exact,
            "vcdens_star_exact": rep.vcdens_star_exact,
            "vcd_witness": _edge_witness(rep.vcd_witness),
            "vcdens_witness": _set_witness(rep.vcdens_witness),
            "vcd_star_witness": _partition_witness(rep.vcd_star_witness),
            "vcdens_star_witness": _partition_witness(rep.vcdens_star_witness),
        })
    else:
        d, w1 = vcd_induced(g)
        s, w2 = vcdens_induced(g)
        doc.update({"vcd": d, "vcdens": _rational(s),
                    "vcd_witness": _edge_witness(w1),
                    "vcdens_witness": _set_witness(w2)})
    _emit(doc)
    return 0


def _edge_witness(w):
    return None if w is None else {str(i): list(e) for i, e in w.items()}


def _set_witness(w):
    return None if w is None else {str(i): list(s) for i, s in w.items()}


def _partition_witness(mp):
    if mp is None:
        return None
    return [[sorted(p) for p in factor_parts] for factor_parts in mp.parts]


def cmd_reduce(args) -> int:
    g = _load_instance(args.instance)
    if args.octahedron is not None:
        step = reduce_opposite_pair(g, args.factor, args.octahedron)
    else:
        try:
            u, v = map(int, args.edge.split(","))
        except (AttributeError, ValueError):
            return _fail("--edge expects the form u,v")
        step = reduce_edge(g, args.factor, u, v)
    doc = {
        "schema": SCHEMA,
        "factor": step.factor_index,
        "edge": list(step.edge),
        "graphs": {
            "input": json.loads(instance_to_json(step.g)),
            "contracted": json.loads(instance_to_json(step.g_contracted)),
            "link": json.loads(instance_to_json(step.g_link)),
            "link_centers": json.loads(instance_to_json(step.g_link_centers)),
            "link_tips": sorted(list(v) for v in step.tips),
        },
        "contraction_map": sorted([list(a), list(b)]
                                  for a, b in step.contraction_map.items()),
        "edge_groups": step.edge_groups,
        "common_neighbors": step.num_common_neighbors,
    }
    _emit(doc)
    return 0


def cmd_classify(args) -> int:
    g = _load_graph(args.file)
    cert = chordal_certificate(g)
    dis = min_dismantling_order(g)
    sub = suboctahedron_structure(g)
    _, degeneracy = degeneracy_ordering(g)
    doc = {"schema": SCHEMA,
           "chordal": cert.chordal,
           "dismantlable": dis is not None,
           "suboctahedron": sub is not None,
           "dd": dis.dd if dis is not None else None,
           "omega": clique_number(g),
           "degeneracy": degeneracy}
    if cert.hole:
        doc["hole"] = list(cert.hole)
    _emit(doc)
    return 0


def cmd_label(args) -> int:
    if args.action == "encode":
        g = _load_graph(args.file)
        if args.forests is not None:
            fd = forest_decomposition(g, args.forests)
        else:
            fd = None
        scheme = encode(g, fd)
        text = to_label_file(scheme)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    scheme = from_label_file(_read(args.file))
    x, y = args.x, args.y
    if not (0 <= x < scheme.n and 0 <= y < scheme.n):
        return _fail(f"vertices must lie in 0..{scheme.n - 1}")
    adjacent = decode(scheme.labels[x], scheme.labels[y], scheme.k, scheme.w)
    _emit({"schema": SCHEMA, "x": x, "y": y, "adjacent": adjacent})
    return 0


def cmd_verify(args) -> int:
    records = run_suite(args.suite, trials=args.trials, seed=args.seed,
                        mu=resolve_mu(args.mu) if args.mu is not None else None)
    text = report_to_json(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    violated = [r for r in records if r.verdict == "violated" and r.claim != "Conj3"]
    return 1 if violated else 0


def _named_space(name: str) -> ProductSpace:
    from .graph import path_graph
    key = name.lower()
    sizes = {"p3p3": (3, 3), "p4p3": (4, 3), "p4p4": (4, 4)}.get(key)
    if sizes is None:
        raise GraphError(f"unknown space {name!r}; choose from p3p3, p4p3, p4p4")
    return ProductSpace([path_graph(s) for s in sizes])


def cmd_fuzz(args) -> int:
    records = []
    violations = []
    for idx, name in enumerate(args.spaces):
        space = _named_space(name)
        recs, viols = fuzz_records(space, args.trials, seed=args.seed + idx)
        records.extend(recs)
        violations.extend(viols)
    doc = json.loads(report_to_json(records))
    doc["violations"] = violations
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0  # discoveries are archived, never a failure


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodvc",
        description="density and VC-dimension toolkit for subgraphs of "
                    "Cartesian products")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("density", help="exact densest subgraph of an edge-list graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_density)

    p = subs.add_parser("arboricity", help="exact arboricity and a forest decomposition")
    p.add_argument("file")
    p.set_defaults(func=cmd_arboricity)

    p = subs.add_parser("orient", help="orientation with bounded outdegree")
    p.add_argument("file")
    p.add_argument("--max-outdegree", type=int, required=True)
    p.set_defaults(func=cmd_orient)

    p = subs.add_parser("vcd", help="VC quantities of a product-subgraph instance")
    p.add_argument("instance")
    p.add_argument("--minor", action="store_true",
                   help="also compute the minor (starred) quantities")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--exact-caps", type=int, nargs=2, default=(8, 6),
                   metavar=("F_MAX", "M_MAX"))
    p.set_defaults(func=cmd_vcd)

    p = subs.add_parser("reduce", help="one reduction step along a factor edge")
    p.add_argument("instance")
    p.add_argument("--factor", type=int, required=True)
    p.add_argument("--edge", help="factor edge as u,v")
    p.add_argument("--octahedron", type=int, default=None,
                   help="reduce along the opposite pair of this factor vertex")
    p.set_defaults(func=cmd_reduce)

    p = subs.add_parser("classify", help="structure classes of an edge-list graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("label", help="adjacency labels from forests")
    label_subs = p.add_subparsers(dest="action", required=True)
    pe = label_subs.add_parser("encode")
    pe.add_argument("file")
    pe.add_argument("--forests", type=int, default=None)
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=cmd_label, action="encode")
    pd = label_subs.add_parser("decode")
    pd.add_argument("file", help="label file")
    pd.add_argument("x", type=int)
    pd.add_argument("y", type=int)
    pd.set_defaults(func=cmd_label, action="decode")

    p = subs.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mu", default=None,
                   help="minor-density constant: integer or preset "
                        "(tree/planar/k4-minor-free)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("fuzz-conj3",
                        help="fuzz |E|/|V| <= vcdens_star on small grids")
    p.add_argument("--spaces", nargs="+", default=["p3p3", "p4p3"])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        return _fail(str(exc))
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
