"""Command-line frontend.

Subcommands: params, grid, construct, verify, dual, code, geometry,
export-graph.  Every run is deterministic: field models, subspaces and
orderings are fixed by the build rules, and nothing in the pipeline draws
randomness (there is no seed because there is nothing to seed; the
``--seedless`` flag merely asserts this contract).  Exit codes: 0 success,
1 verification failure, 2 usage error, 3 resource cap exceeded.

Caps may also be set through environment variables DENPDS_TABLE_CAP,
DENPDS_PROFILE_CAP, DENPDS_SPECTRUM_CAP, DENPDS_NEIGHBOR_CAP and
DENPDS_ENUM_CAP.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import coding as cd
from . import params as pm
from . import verify as vf
from .construct import PdsSet, Tower, TowerParams, pds_from_json_dict
from .errors import CapExceededError, DenpdsError
from .ff import DEFAULT_TABLE_CAP

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _add_tower_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-p", type=int, required=True, help="characteristic (prime)")
    sub.add_argument("-s", type=int, default=1, help="q = p^s")
    sub.add_argument("-m", type=int, required=True, help="middle extension degree")
    sub.add_argument("-l", "--ell", type=int, required=True, dest="ell")
    sub.add_argument("-r", type=int, required=True, help="subspace rank, 0..m")


def _add_common(sub: argparse.ArgumentParser, caps=True) -> None:
    sub.add_argument("--family", choices=["primal", "dual"], default="primal")
    sub.add_argument(
        "--subspace-exps",
        help="comma list of generator exponents spanning R (default: 0..r-1)",
    )
    sub.add_argument(
        "--subspace-coords",
        help="semicolon-separated GF(p) coefficient rows spanning R",
    )
    sub.add_argument("-o", "--output", help="output path (default stdout)")
    sub.add_argument("--format", choices=["json", "text"], default="json")
    sub.add_argument("--parallel", type=int, default=0, help="worker threads (0 = off)")
    sub.add_argument(
        "--seedless",
        action="store_true",
        help="assert the no-randomness guarantee (always true; informational)",
    )
    if caps:
        sub.add_argument("--table-cap", type=int, default=None)
        sub.add_argument("--profile-cap", type=int, default=None)
        sub.add_argument("--spectrum-cap", type=int, default=None)
        sub.add_argument("--neighbor-cap", type=int, default=None)
        sub.add_argument("--enum-cap", type=int, default=None)


def _caps_from(args) -> tuple[int, vf.Caps, int]:
    table = args.table_cap if getattr(args, "table_cap", None) else _env_cap(
        "DENPDS_TABLE_CAP", DEFAULT_TABLE_CAP
    )
    caps = vf.Caps(
        profile=args.profile_cap
        if getattr(args, "profile_cap", None)
        else _env_cap("DENPDS_PROFILE_CAP", vf.DEFAULT_PROFILE_CAP),
        spectrum=args.spectrum_cap
        if getattr(args, "spectrum_cap", None)
        else _env_cap("DENPDS_SPECTRUM_CAP", vf.DEFAULT_SPECTRUM_CAP),
        neighbor=args.neighbor_cap
        if getattr(args, "neighbor_cap", None)
        else _env_cap("DENPDS_NEIGHBOR_CAP", vf.DEFAULT_NEIGHBOR_CAP),
    )
    enum_cap = args.enum_cap if getattr(args, "enum_cap", None) else _env_cap(
        "DENPDS_ENUM_CAP", cd.DEFAULT_ENUM_CAP
    )
    return table, caps, enum_cap


def _tower_params(args) -> TowerParams:
    try:
        return TowerParams(args.p, args.s, args.m, args.ell, args.r)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _subspace(tower: Tower, args):
    if getattr(args, "subspace_exps", None):
        exps = [int(x) for x in args.subspace_exps.split(",") if x != ""]
        return tower.subspace_from_exponents(exps)
    if getattr(args, "subspace_coords", None):
        rows = [
            [int(x) for x in row.replace(",", " ").split()]
            for row in args.subspace_coords.split(";")
            if row.strip()
        ]
        return tower.subspace_from_coeff_rows(rows)
    return tower.default_subspace()


def _build(tower: Tower, R, family: str) -> PdsSet:
    return tower.build_D(R) if family == "primal" else tower.build_D_dual(R)


# -- subcommands --


def cmd_params(args) -> int:
    if args.grid:
        return _emit_grid(args.grid, args)
    tp = _tower_params(args)
    q = tp.q
    primal = tp.primal_params()
    dual = tp.dual_params()
    doc = {
        "tower": tp.as_dict(),
        "q": q,
        "e": tp.e,
        "degenerate": tp.degenerate,
        "primal": primal.as_dict(),
        "dual": dual.as_dict(),
        "complement": pm.complement_params(primal).as_dict(),
        "delsarte_dual": pm.delsarte_dual_params(primal).as_dict(),
        "spectrum": dict(zip(("positive", "negative"), tp.spectrum_values())),
        "classification": {
            "primal": pm.classify_type(primal).describe(),
            "dual": pm.classify_type(dual).describe(),
        },
        "projective": {
            fam: dict(
                zip(("n", "dim", "h1", "h2"), pm.projective_params(q, tp.m, tp.ell, tp.r, fam))
            )
            for fam in ("primal", "dual")
        },
        "code": {
            fam: dict(
                zip(("n", "dim", "w1", "w2"), pm.code_params(q, tp.m, tp.ell, tp.r, fam))
            )
            for fam in ("primal", "dual")
        },
    }
    if args.format == "text":
        lines = [
            "tower p=%d s=%d m=%d ell=%d r=%d (q=%d, v=%d)%s"
            % (tp.p, tp.s, tp.m, tp.ell, tp.r, q, tp.v,
               " [degenerate]" if tp.degenerate else ""),
            "primal         %s" % (primal.as_tuple(),),
            "dual           %s" % (dual.as_tuple(),),
            "complement     %s" % (pm.complement_params(primal).as_tuple(),),
            "delsarte dual  %s" % (pm.delsarte_dual_params(primal).as_tuple(),),
            "spectrum       {%d, %d}" % tp.spectrum_values(),
            "classification %s / %s"
            % (pm.classify_type(primal).describe(), pm.classify_type(dual).describe()),
            "projective     primal %s dual %s"
            % (doc["projective"]["primal"], doc["projective"]["dual"]),
            "code           primal %s dual %s"
            % (doc["code"]["primal"], doc["code"]["dual"]),
        ]
        _write("\n".join(lines) + "\n", args.output)
    else:
        _write(_dump_json(doc), args.output)
    return EXIT_OK


def _parse_range(spec: str, r_max=None) -> list[int]:
    if spec == "all":
        if r_max is None:
            raise ValueError("'all' is only valid for r")
        return list(range(r_max + 1))
    if ".." in spec:
        lo, hi = spec.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",")]


def _emit_grid(grid_args: list[str], args) -> int:
    spec = {}
    for item in grid_args:
        if "=" not in item:
            print("error: grid entries look like key=value", file=sys.stderr)
            return EXIT_USAGE
        key, val = item.split("=", 1)
        spec[key] = val
    try:
        ps = _parse_range(spec.get("p", "2"))
        ss = _parse_range(spec.get("s", "1"))
        ms = _parse_range(spec.get("m", "2"))
        ls = _parse_range(spec.get("l", spec.get("ell", "1")))
        rows = []
        for p in ps:
            for s in ss:
                for m in ms:
                    for ell in ls:
                        rs = (
                            list(range(m + 1))
                            if spec.get("r", "all") == "all"
                            else _parse_range(spec["r"])
                        )
                        for r in rs:
                            tp = TowerParams(p, s, m, ell, r)
                            rows.append(
                                {
                                    "tower": tp.as_dict(),
                                    "primal": tp.primal_params().as_dict(),
                                    "dual": tp.dual_params().as_dict(),
                                    "classification": pm.classify_type(
                                        tp.primal_params()
                                    ).describe(),
                                }
                            )
        if args.format == "text":
            lines = []
            for row in rows:
                t = row["tower"]
                lines.append(
                    "p=%d s=%d m=%d ell=%d r=%d primal=%s dual=%s %s"
                    % (
                        t["p"], t["s"], t["m"], t["ell"], t["r"],
                        tuple(row["primal"].values()),
                        tuple(row["dual"].values()),
                        row["classification"],
                    )
                )
            _write("\n".join(lines) + "\n", args.output)
        else:
            _write(_dump_json({"rows": rows}), args.output)
        return EXIT_OK
    except (ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def cmd_construct(args) -> int:
    tp = _tower_params(args)
    table_cap, _, _ = _caps_from(args)
    tower = Tower(tp, table_cap=table_cap)
    R = _subspace(tower, args)
    pds = _build(tower, R, args.family)
    _write(pds.to_json(tower), args.output)
    print(
        "constructed %s set: k=%d v=%d basis=%s%s"
        % (
            pds.provenance,
            pds.k,
            tp.v,
            [list(row) for row in pds.subspace_rows],
            " [degenerate]" if tp.degenerate else "",
        ),
        file=sys.stderr,
    )
    return EXIT_OK


def _load_or_build(args) -> tuple[Tower, PdsSet, object]:
    table_cap, _, _ = _caps_from(args)
    if getattr(args, "set_file", None):
        with open(args.set_file) as fh:
            doc = json.load(fh)
        tower, pds = pds_from_json_dict(doc, table_cap=table_cap)
        R = tower.subspace_from_coeff_rows(pds.subspace_rows)
        return tower, pds, R
    tp = _tower_params(args)
    tower = Tower(tp, table_cap=table_cap)
    R = _subspace(tower, args)
    return tower, _build(tower, R, args.family), R


def cmd_verify(args) -> int:
    tower, pds, R = _load_or_build(args)
    _, caps, _ = _caps_from(args)
    report = vf.verify_pds(pds, tower, R, caps=caps, threads=args.parallel)
    text = report.to_text() if args.format == "text" else report.to_json()
    _write(text, args.output)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_dual(args) -> int:
    tower, pds, _ = _load_or_build(args)
    _, caps, _ = _caps_from(args)
    indexer = vf.GroupIndexer(tower)
    dual = vf.delsarte_dual(pds, indexer, cap=caps.spectrum)
    _write(dual.to_json(tower), args.output)
    print("delsarte dual: k=%d" % dual.k, file=sys.stderr)
    return EXIT_OK


def cmd_code(args) -> int:
    tower, pds, _ = _load_or_build(args)
    if pds.provenance not in ("primal", "dual"):
        print("error: code export needs a primal or dual set", file=sys.stderr)
        return EXIT_USAGE
    _, caps, enum_cap = _caps_from(args)
    tp = tower.params
    ctx = cd.CodingContext(tower)
    S = cd.to_projective_set(pds, ctx)
    gm = cd.build_code(S, ctx)
    enum = cd.weight_enumerator(gm, ctx, cap=enum_cap, threads=args.parallel)
    fam = "primal" if pds.provenance == "primal" else "dual"
    expected = pm.code_params(tp.q, tp.m, tp.ell, tp.r, fam)
    kernel = tp.q ** (gm.dim - gm.rank)
    checks = [
        cd.check_two_weight(enum, expected, kernel),
        cd.check_dictionary(
            vf.expected_params(pds), S.n, expected[2], expected[3], tp.q, tp.dim_q
        ),
    ]
    doc = {
        "tower": tp.as_dict(),
        "family": fam,
        "q": tp.q,
        "n": gm.n,
        "dim": gm.dim,
        "rank": gm.rank,
        "expected_weights": [expected[2], expected[3]],
        "generator_rows": [[int(x) for x in row] for row in gm.mat],
        "weight_enumerator": {str(w): c for w, c in sorted(enum.items())},
        "checks": [c.as_dict() for c in checks],
        "ok": all(c.passed for c in checks),
    }
    _write(_dump_json(doc), args.output)
    if args.matrix_out:
        _write("\n".join(gm.row_strings()) + "\n", args.matrix_out)
    return EXIT_OK if doc["ok"] else EXIT_VERIFY


def cmd_geometry(args) -> int:
    tower, pds, _ = _load_or_build(args)
    if pds.provenance not in ("primal", "dual"):
        print("error: geometry export needs a primal or dual set", file=sys.stderr)
        return EXIT_USAGE
    _, _, enum_cap = _caps_from(args)
    tp = tower.params
    ctx = cd.CodingContext(tower)
    S = cd.to_projective_set(pds, ctx)
    profile = cd.hyperplane_profile(S, ctx, cap=enum_cap, threads=args.parallel)
    fam = "primal" if pds.provenance == "primal" else "dual"
    expected = pm.projective_params(tp.q, tp.m, tp.ell, tp.r, fam)
    check = cd.check_two_intersection(profile, expected)
    doc = {
        "tower": tp.as_dict(),
        "family": fam,
        "q": tp.q,
        "n": S.n,
        "dim": S.dim,
        "expected_sizes": [expected[2], expected[3]],
        "points": S.point_strings(),
        "hyperplane_profile": {str(h): c for h, c in sorted(profile.items())},
        "checks": [check.as_dict()],
        "ok": check.passed,
    }
    _write(_dump_json(doc), args.output)
    return EXIT_OK if check.passed else EXIT_VERIFY


def cmd_export_graph(args) -> int:
    tower, pds, _ = _load_or_build(args)
    _, caps, _ = _caps_from(args)
    indexer = vf.GroupIndexer(tower)
    edges = vf.cayley_edges(pds, indexer, cap=caps.profile)
    v = tower.params.v
    lines = []
    if args.graph_format == "dimacs":
        lines.append("p edge %d %d" % (v, len(edges)))
        lines.extend("e %d %d" % (u + 1, w + 1) for u, w in edges)
    else:
        lines.append("%d %d" % (v, len(edges)))
        lines.extend("%d %d" % (u, w) for u, w in edges)
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="denpds",
        description="Construct and exactly certify two-family difference sets, "
        "their Cayley graphs, projective point sets and two-weight codes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="closed-form parameter tables")
    _add_tower_args_optional(sp)
    sp.add_argument("--grid", nargs="*", help="key=value ranges, e.g. m=2..3 r=all")
    sp.add_argument("-o", "--output")
    sp.add_argument("--format", choices=["json", "text"], default="text")
    sp.set_defaults(func=cmd_params)

    sg = sub.add_parser("grid", help="parameter rows over ranges")
    sg.add_argument("ranges", nargs="+", help="key=value ranges, e.g. p=2 m=2..3 r=all")
    sg.add_argument("-o", "--output")
    sg.add_argument("--format", choices=["json", "text"], default="text")
    sg.set_defaults(func=lambda a: _emit_grid(a.ranges, a))

    for name, fn, extra in (
        ("construct", cmd_construct, ()),
        ("verify", cmd_verify, ("set",)),
        ("dual", cmd_dual, ("set",)),
        ("code", cmd_code, ("set", "matrix")),
        ("geometry", cmd_geometry, ("set",)),
        ("export-graph", cmd_export_graph, ("set", "graph")),
    ):
        sc = sub.add_parser(name)
        if "set" in extra:
            group = sc.add_mutually_exclusive_group()
            group.add_argument("--set", dest="set_file", help="constructed set JSON file")
        if name == "construct" or "set" in extra:
            _add_tower_args_optional(sc)
        _add_common(sc)
        if "matrix" in extra:
            sc.add_argument("--matrix-out", help="also write the generator matrix as text")
        if "graph" in extra:
            sc.add_argument(
                "--graph-format", choices=["edgelist", "dimacs"], default="edgelist"
            )
        sc.set_defaults(func=fn)
    return ap


def _add_tower_args_optional(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-p", type=int)
    sub.add_argument("-s", type=int, default=1)
    sub.add_argument("-m", type=int)
    sub.add_argument("-l", "--ell", type=int, dest="ell")
    sub.add_argument("-r", type=int)


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    if args.command in ("params",) and not args.grid:
        missing = [k for k in ("p", "m", "ell", "r") if getattr(args, k, None) is None]
        if missing:
            print("error: missing %s (or use --grid)" % ", ".join(missing), file=sys.stderr)
            return EXIT_USAGE
    if args.command in ("construct", "verify", "dual", "code", "geometry", "export-graph"):
        if not getattr(args, "set_file", None):
            missing = [k for k in ("p", "m", "ell", "r") if getattr(args, k, None) is None]
            if missing:
                print(
                    "error: missing %s (or use --set FILE)" % ", ".join(missing),
                    file=sys.stderr,
                )
                return EXIT_USAGE
    try:
        return args.func(args)
    except CapExceededError as exc:
        print("resource cap exceeded: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    except DenpdsError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
