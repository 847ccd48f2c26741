"""Command line interface.

Exit codes: 0 success, 1 negative mathematical answer, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import golden
from .arrangements import (
    InvalidArrangement,
    TreeArrangement,
    enumerate_dressian,
    is_abstract_arrangement,
    realizability_cone,
)
from .foundations import DressianError, InvalidInput, canonical_vector
from .matroid import classify_label, is_series_parallel, named
from .subdivision import regular_subdivision
from .tropical import (
    TropicalPluckerVector,
    cone_signature,
    failing_relation,
    matroid_dressian_member,
    relation_action,
)
from .trees import parse_tree, to_notation

MAX_DEFAULT_N = 7


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _read_plucker(path: str) -> TropicalPluckerVector:
    try:
        return TropicalPluckerVector.from_text(_read(path))
    except InvalidInput as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def signature_hash(pi: TropicalPluckerVector) -> str:
    masks = cone_signature(pi).masks
    return hashlib.sha256(bytes(masks)).hexdigest()[:16]


# ---------------------------------------------------------------------------
# check

def cmd_check(args) -> int:
    if args.arrangement:
        return _check_arrangement(args.file)
    pi = _read_plucker(args.file)
    out = [f"d {pi.d} n {pi.n}"]
    try:
        support = pi.support_matroid() if not pi.is_finite else None
    except InvalidInput as exc:
        out += ["support not a matroid", "member no", str(exc)]
        print("\n".join(out))
        return 1
    member = matroid_dressian_member(pi, support) if support is not None else failing_relation(pi) is None
    out.append(f"support {'uniform' if support is None else f'{len(support.bases)} bases'}")
    if not member:
        rel = failing_relation(pi)
        out.append("member no")
        if rel is not None:
            out.append(f"failing relation S={''.join(map(str, rel.s))} quad={''.join(map(str, rel.quad))}")
        print("\n".join(out))
        return 1
    sub = regular_subdivision(pi)
    out.append("member yes")
    out.append(f"signature {signature_hash(pi)}")
    out.append(f"spread {len(sub.cells)}")
    if pi.d == 3 and pi.is_finite:
        from .arrangements import arrangement_from_subdivision
        out.append(f"trees {arrangement_from_subdivision(sub).topology().notation()}")
    print("\n".join(out))
    return 0


def _check_arrangement(path: str) -> int:
    try:
        arr = TreeArrangement.from_text(_read(path))
    except InvalidInput as exc:
        raise UsageError(f"{path}: {exc}") from exc
    print(f"n {arr.n}")
    if not is_abstract_arrangement(arr):
        print("abstract no")
        return 1
    print("abstract yes")
    cell = realizability_cone(arr)
    if cell is None:
        print("realizable no")
        print("the tree metrics cannot be chosen consistently: the realizability cone is empty, "
              "so no Plucker vector induces this arrangement")
        return 1
    print("realizable yes")
    print(f"dimension {cell.dimension}")
    print("plucker " + " ".join(str(v) for v in cell.interior.values))
    return 0


# ---------------------------------------------------------------------------
# enumerate

def cmd_enumerate(args) -> int:
    if args.d != 3:
        raise UsageError("only d = 3 is supported")
    if args.n < 4:
        raise UsageError("n must be at least 4")
    if args.n > MAX_DEFAULT_N and not args.force:
        raise UsageError(f"n = {args.n} exceeds the default guard {MAX_DEFAULT_N}; pass --force")
    census = enumerate_dressian(args.n)
    fmod, fabs = census.f_vector(True), census.f_vector()
    lines = []
    if not args.fvector:
        lines += [c.census_line() for c in census.cells]
    if args.mod_sym:
        lines.append("f " + " ".join(map(str, fmod)))
    else:
        lines.append("f " + " ".join(map(str, fmod)) + " ; " + " ".join(map(str, fabs)))
    print("\n".join(lines))
    if args.figures:
        from .plotting import fvector_figure, save
        save(fvector_figure(fabs, fmod, f"Dr(3,{args.n})"), Path(args.figures) / f"dr3{args.n}_fvector.png")
    return 0


# ---------------------------------------------------------------------------
# draw

def bounded_dot(plane) -> str:
    """Vertices named by their cell matroids, bounded edges, and each vertex's rays as an xlabel."""
    out = ["graph bounded {", "  node [shape=box];"]
    rays = {}
    for r in plane.rays:
        rays.setdefault(r.vertices[0], []).append("".join(map(str, r.directions)))
    for k, v in enumerate(plane.vertices):
        extra = f', xlabel="rays {" ".join(sorted(rays[k]))}"' if k in rays else ""
        out.append(f'  v{k} [label="{v.label}"{extra}];')
    for a, b in plane.bounded_edges():
        out.append(f"  v{a} -- v{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def trees_dot(arr: TreeArrangement) -> str:
    out = ["graph trees {"]
    for k, t in enumerate(arr.trees, start=1):
        nodes, edges = t.graph()
        ids = {}
        out.append(f"  subgraph cluster_T{k} {{")
        out.append(f'    label="T{k}: {to_notation(t.topology())}";')
        for j, v in enumerate(nodes):
            ids[v] = f"t{k}_{v}" if isinstance(v, int) else f"t{k}_i{j}"
            if isinstance(v, int):
                out.append(f'    {ids[v]} [label="{v}", shape=plaintext];')
            else:
                out.append(f'    {ids[v]} [label="", shape=point];')
        for a, b, _ in edges:
            out.append(f"    {ids[a]} -- {ids[b]};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


def bounded_text(plane) -> str:
    f = plane.f_vector()
    out = [f"f_vector {' '.join(map(str, f))}"]
    for k, v in enumerate(plane.vertices):
        out.append(f"vertex {k} {v.label} ({', '.join(str(c) for c in v.coords)})")
    for a, b in plane.bounded_edges():
        out.append(f"edge {a} {b}")
    for p in plane.bounded_polygons:
        out.append("polygon " + " ".join(map(str, p.vertices)))
    return "\n".join(out) + "\n"


def trees_text(arr: TreeArrangement) -> str:
    return "\n".join(f"T{k}: {to_notation(t.topology())}" for k, t in enumerate(arr.trees, start=1)) + "\n"


def cmd_draw(args) -> int:
    from .planes import plane_from_plucker
    pi = _read_plucker(args.file)
    if pi.d != 3 or not pi.is_finite:
        raise UsageError("draw needs a finite vector with d = 3")
    if failing_relation(pi) is not None:
        print("member no")
        return 1
    plane = plane_from_plucker(pi)
    arr = plane.arrangement()
    parts = ("bounded", "trees") if args.part == "both" else (args.part,)
    if args.format == "svg":
        from .plotting import arrangement_figure, plane_figure, save
        if not args.output:
            raise UsageError("svg output needs --output")
        base = Path(args.output)
        written = []
        for part in parts:
            fig = plane_figure(plane, "bounded complex") if part == "bounded" else arrangement_figure(arr)
            path = base if len(parts) == 1 else base.with_name(f"{base.stem}_{part}{base.suffix or '.svg'}")
            written.append(str(save(fig, path)))
        print("\n".join(written))
        return 0
    docs = []
    for part in parts:
        if args.format == "dot":
            docs.append(bounded_dot(plane) if part == "bounded" else trees_dot(arr))
        else:
            docs.append(bounded_text(plane) if part == "bounded" else trees_text(arr))
    _emit("".join(docs), args.output)
    return 0


# ---------------------------------------------------------------------------
# matroid

def cmd_matroid(args) -> int:
    try:
        m = named(args.name)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from exc
    if args.bases:
        sys.stdout.write(m.to_text())
        return 0
    out = [f"name {args.name}", f"rank {m.d}", f"elements {m.n}", f"bases {len(m.bases)}",
           f"nonbases {' '.join(''.join(map(str, s)) for s in m.nonbases()) or '-'}",
           f"connected {'yes' if m.is_connected() else 'no'}"]
    if m.d == 3 and m.n <= 7:
        out.append(f"series_parallel {'yes' if is_series_parallel(m) else 'no'}")
        out.append(f"label {classify_label(m)}")
    if m.is_connected() and args.dressian:
        from .tropical import indicator_vector
        lam = indicator_vector(m)
        member = failing_relation(lam) is None
        out.append(f"indicator_member {'yes' if member else 'no'}")
        if member:
            out.append(f"spread {len(regular_subdivision(lam).cells)}")
    print("\n".join(out))
    return 0


# ---------------------------------------------------------------------------
# tiling

def cmd_tiling(args) -> int:
    from .cayley import (
        MixedSubdivision,
        arrangement_from_tiling,
        enumerate_lozenge_tilings,
        refinement_dependence,
    )
    if args.action == "count":
        print(len(enumerate_lozenge_tilings(args.k)))
        return 0
    if args.action == "list":
        sys.stdout.write("\n".join(t.to_text() for t in enumerate_lozenge_tilings(args.k)))
        return 0
    try:
        tiling = MixedSubdivision.from_text(_read(args.file))
    except InvalidInput as exc:
        raise UsageError(f"{args.file}: {exc}") from exc
    try:
        arr = arrangement_from_tiling(tiling)
    except InvalidInput as exc:
        print(f"invalid {exc}")
        return 1
    print(trees_text(arr), end="")
    print(f"abstract {'yes' if is_abstract_arrangement(arr) else 'no'}")
    if not tiling.fine:
        dep = refinement_dependence(tiling)
        print(f"refinements {sum(dep.values())} distinct_arrangements {len(dep)}")
    if args.realizable:
        cell = realizability_cone(arr)
        print(f"realizable {'no' if cell is None else 'yes'}")
        return 1 if cell is None else 0
    return 0


# ---------------------------------------------------------------------------
# census verification

def _diff(name, got, want, report) -> bool:
    ok = got == want
    report.append(f"{'PASS' if ok else 'FAIL'} {name} got={got} want={want}")
    return ok


def _load_golden(args, target: str) -> dict:
    if not args.golden_dir:
        return {}
    path = Path(args.golden_dir) / f"{target}.json"
    if not path.exists():
        return {}
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def verify_target(target: str, override: dict | None = None) -> tuple:
    """(all passed, report lines) comparing a recomputation with the golden tables."""
    override = override or {}
    report = []
    ok = True
    if target == "dr36":
        census = enumerate_dressian(6)
        full = set(range(1, 7))
        action = relation_action(3, 6)
        want = {}
        for name, rows, size in golden.DR36_TYPES:
            arr = TreeArrangement(6, [parse_tree(r, full - {i}) for i, r in enumerate(rows, start=1)])
            want[canonical_vector(arr.signature(), action).key] = (name, size)
        maximal = {c.signature: c.orbit_size for c in census.maximal()}
        got_sizes = sorted((want[s][0], maximal[s]) for s in maximal if s in want)
        ok &= _diff("maximal_orbits", len(maximal), override.get("maximal_orbits", len(want)), report)
        ok &= _diff("types", got_sizes, sorted((n, s) for n, s in want.values()), report)
        ok &= _diff("maximal_cells", sum(maximal.values()),
                    override.get("maximal_cells", golden.DR36_MAXIMAL_CELLS), report)
        ok &= _diff("rays", census.f_vector()[0], override.get("rays", golden.DR36_RAYS), report)
    elif target == "dr37":
        census = enumerate_dressian(7)
        ok &= _diff("f_mod_sym", list(census.f_vector(True)),
                    override.get("f_mod_sym", list(golden.DR37_FVECTOR_MOD_SYM)), report)
        ok &= _diff("f", list(census.f_vector()), override.get("f", list(golden.DR37_FVECTOR)), report)
        top = [c for c in census.cells if c.dimension == len(census.f_vector()) - 1]
        ok &= _diff("top_stabilizers", [c.stabilizer_order for c in top],
                    override.get("top_stabilizers", [golden.DR37_TOP_STABILIZER]), report)
    elif target == "pappus":
        from .complexes import verify_pappus_census
        try:
            res = verify_pappus_census()
        except InvalidInput as exc:
            report.append(f"FAIL pappus {exc}")
            return False, report
        g = golden.PAPPUS_COUNTS
        split, graves, conn, edges = g["split"], g["graves"], g["connector"], g["edges"]
        ok &= _diff("nodes", [len(res.split_nodes), len(res.graves_nodes), len(res.connector_nodes)],
                    override.get("nodes", [split, graves, conn]), report)
        ok &= _diff("edges", len(res.edges), override.get("edges", edges), report)
        ok &= _diff("triangles", [sorted(t) for t in res.triangles],
                    override.get("triangles", [sorted(golden.PAPPUS_TRIANGLE)]), report)
        ok &= _diff("connector_cells", sorted({p.cells for p in res.connector_nodes}),
                    [tuple(override.get("connector_cells", golden.PAPPUS_CONNECTOR_CELLS))], report)
        ok &= _diff("graves_cells", sorted({p.cells for p in res.graves_nodes}),
                    [(override.get("graves_cell", golden.PAPPUS_GRAVES_CELL),) * 3], report)
        ok &= _diff("core_is_hessian", res.core_cell_is_hessian, True, report)
        ok &= _diff("trinomial_excludes", res.trinomial_excludes, True, report)
    elif target == "tilings4":
        from .cayley import enumerate_lozenge_tilings
        ok &= _diff("tilings", len(enumerate_lozenge_tilings(4)),
                    override.get("tilings", golden.LOZENGE_TILINGS[4]), report)
    else:
        raise UsageError(f"unknown target {target}")
    return bool(ok), report


def cmd_census_verify(args) -> int:
    ok, report = verify_target(args.target, _load_golden(args, args.target))
    print("\n".join(report))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# pappus

def cmd_pappus(args) -> int:
    from .complexes import verify_pappus_census
    try:
        res = verify_pappus_census()
    except InvalidInput as exc:
        print(f"mismatch {exc}")
        return 1
    if args.json:
        print(res.to_json())
    else:
        print(f"vertices {len(res.nodes)} split {len(res.split_nodes)} graves {len(res.graves_nodes)} "
              f"connector {len(res.connector_nodes)}")
        print(f"edges {len(res.edges)}")
        print("triangles " + " ".join("{" + ",".join(t) + "}" for t in res.triangles))
        for p in res.nodes:
            print(f"node\t{p.kind}\t{p.name}\t{','.join(map(str, p.cells))}")
        for a, b in res.edges:
            print(f"edge\t{a}\t{b}")
        print(f"core_is_hessian {'yes' if res.core_cell_is_hessian else 'no'}")
        print(f"trinomial_excludes {'yes' if res.trinomial_excludes else 'no'}")
    if args.figures:
        from .plotting import graph_figure, save
        fig = graph_figure([p.name for p in res.nodes], res.edges, [p.kind for p in res.nodes],
                           res.triangles, "Dr(Pappus)")
        save(fig, Path(args.figures) / "pappus_dressian.png")
    return 0


# ---------------------------------------------------------------------------
# report

def cmd_report(args) -> int:
    """Census table, f-vector plot, and plane and tree figures for every maximal type."""
    from .planes import classify_type, plane_from_plucker
    from .plotting import arrangement_figure, fvector_figure, plane_figure, save
    if args.n > MAX_DEFAULT_N and not args.force:
        raise UsageError(f"n = {args.n} exceeds the default guard {MAX_DEFAULT_N}; pass --force")
    census = enumerate_dressian(args.n)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = ["type\tdimension\torbit_size\tstabilizer\tf0\tf1b\tf1u\tf2b\tf2u\tseries_parallel\ttrees"]
    figures = []
    fmod, fabs = census.f_vector(True), census.f_vector()
    figures.append(save(fvector_figure(fabs, fmod, f"Dr(3,{args.n})"), out / "fvector.png"))
    for cell in census.maximal():
        plane = plane_from_plucker(cell.interior)
        try:
            name = classify_type(plane)
        except InvalidInput:
            name = "nongeneric"
        f = plane.f_vector()
        stem = name.replace("(", "_").replace(")", "")
        rows.append("\t".join([name, str(cell.dimension), str(cell.orbit_size), str(cell.stabilizer_order),
                               *map(str, f), "yes" if plane.is_series_parallel() else "no",
                               cell.arrangement.notation()]))
        figures.append(save(plane_figure(plane, f"type {name}"), out / f"plane_{stem}.png"))
        figures.append(save(arrangement_figure(cell.arrangement), out / f"trees_{stem}.png"))
    (out / "census.tsv").write_text("\n".join(rows) + "\n")
    print("\n".join(rows))
    print("f " + " ".join(map(str, fmod)) + " ; " + " ".join(map(str, fabs)))
    for p in figures:
        print(f"figure {p}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dressian", description="Dressians, tropical planes and tree arrangements")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", help="Dressian membership of a Plucker file, or realizability of an arrangement")
    c.add_argument("file")
    c.add_argument("--arrangement", action="store_true", help="the file lists n trees, one per line")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("enumerate", help="census of Dr(3,n) up to symmetry")
    e.add_argument("--d", type=int, default=3)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--mod-sym", action="store_true", help="f-vector line modulo Sym(n) only")
    e.add_argument("--fvector", action="store_true", help="print only the f-vector line")
    e.add_argument("--force", action="store_true")
    e.add_argument("--figures", metavar="DIR")
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("draw", help="bounded complex and tree arrangement of a tropical plane")
    d.add_argument("file")
    d.add_argument("--format", choices=("dot", "svg", "txt"), default="txt")
    d.add_argument("--part", choices=("bounded", "trees", "both"), default="both")
    d.add_argument("--output", "-o")
    d.set_defaults(func=cmd_draw)

    m = sub.add_parser("matroid", help="information on a named matroid")
    m.add_argument("name")
    m.add_argument("--bases", action="store_true", help="print the matroid file")
    m.add_argument("--dressian", action="store_true", help="test the indicator vector")
    m.set_defaults(func=cmd_matroid)

    t = sub.add_parser("tiling", help="lozenge tilings and their tree arrangements")
    t.add_argument("action", choices=("count", "list", "arrangement"))
    t.add_argument("target", help="k for count/list, a tiling file for arrangement")
    t.add_argument("--realizable", action="store_true")
    t.set_defaults(func=cmd_tiling)

    s = sub.add_parser("census", help="recompute a census and compare with the built-in tables")
    s.add_argument("--target", choices=("dr36", "dr37", "pappus", "tilings4"), required=True)
    s.add_argument("--golden-dir", metavar="DIR", help="JSON files <target>.json overriding built-in values")
    s.set_defaults(func=cmd_census_verify)

    pp = sub.add_parser("pappus", help="vertices, edges and triangle of the Pappus Dressian")
    pp.add_argument("--json", action="store_true")
    pp.add_argument("--figures", metavar="DIR")
    pp.set_defaults(func=cmd_pappus)

    r = sub.add_parser("report", help="tab-separated census with plane and tree figures")
    r.add_argument("--n", type=int, default=6)
    r.add_argument("--out", required=True, metavar="DIR")
    r.add_argument("--force", action="store_true")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.verb == "tiling":
        if args.action in ("count", "list"):
            try:
                args.k = int(args.target)
            except ValueError:
                parser.print_usage(sys.stderr)
                print(f"dressian: k must be an integer, got {args.target!r}", file=sys.stderr)
                return 2
        else:
            args.file = args.target
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dressian: {exc}", file=sys.stderr)
        return 2
    except InvalidArrangement as exc:
        print(f"dressian: {exc}", file=sys.stderr)
        return 2
    except DressianError as exc:
        print(f"dressian: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
