"""Command line interface: ``sphtiling <command> ...``.

Exit status is 0 on success, 1 when a validation fails and 2 on usage
errors (bad arguments, unknown ids).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from . import __version__, catalog
from .catalog import Protoset, truncate_pi
from .errors import ClosureFailure, DomainError, SphTilingError
from .sphtrig import PI, AngleTriple, residuals
from .vertexcomb import enumerate_vertex_types, format_avc

CLI_SCHEMA = "sphtiling.cli"
CLI_VERSION = 1

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ output


class Out:
    def __init__(self, args, stream=None):
        self.format = args.format
        self.units = args.units
        self.stream = stream or sys.stdout

    def angle(self, x: float) -> float:
        return x / PI if self.units == "pi" else x

    def emit(self, command: str, result, lines: Sequence[str]):
        if self.format == "json":
            doc = {"schema": CLI_SCHEMA, "version": CLI_VERSION, "command": command,
                   "units": self.units, "result": result}
            self.stream.write(json.dumps(doc, indent=2) + "\n")
        else:
            self.stream.write("\n".join(lines) + "\n")


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _angle_arg(text: str, units: str) -> float:
    """A bare number is read in the chosen units; an expression is radians."""
    try:
        v = float(text)
    except ValueError:
        try:
            return catalog.eval_expr(text)
        except (ValueError, SyntaxError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot read angle {text!r}: {exc}") from None
    return v * PI if units == "pi" else v


def _protoset_view(p: Protoset, out: Out) -> tuple[dict, list[str]]:
    al, be, ga = p.angles.as_tuple()
    r = residuals(p.angles)
    rep = catalog.verify_protoset(p)
    trunc = [truncate_pi(x / PI) for x in (al, be, ga, p.a)]
    unit = "pi" if out.units == "pi" else "rad"
    result = {
        "id": p.id,
        "family": p.family,
        "kind": p.kind,
        "angles": [out.angle(al), out.angle(be), out.angle(ga)],
        "a": out.angle(p.a),
        "truncated_pi": trunc,
        "residuals": {"r1": r.r1, "r2": r.r2},
        "expected": [
            {"faces": list(e.faces), "avc": format_avc(e.avc), "tilings": e.tilings} for e in p.expected
        ],
        "verification": rep.to_dict(),
    }
    lines = [
        f"protoset {p.id}  ({p.family}, {p.kind})",
        f"  table view (pi, truncated): {trunc[0]}, {trunc[1]}, {trunc[2]}; {trunc[3]}",
        f"  alpha = {_fmt(out.angle(al))} {unit}",
        f"  beta  = {_fmt(out.angle(be))} {unit}",
        f"  gamma = {_fmt(out.angle(ga))} {unit}",
        f"  a     = {_fmt(out.angle(p.a))} {unit}",
        f"  residuals: r1 = {r.r1:.3e}, r2 = {r.r2:.3e}",
    ]
    for e in p.expected:
        n = "?" if e.tilings is None else e.tilings
        lines.append(f"  ({e.faces[0]},{e.faces[1]}) {format_avc(e.avc)} : {n}")
    lines.append(f"  verified: {'yes' if rep.ok else 'NO'}")
    return result, lines


# ---------------------------------------------------------------- commands


def cmd_catalog_list(args, out: Out) -> int:
    fams = [
        ("prism", f"alpha in [{truncate_pi(math.acos(1 / 8) / PI)}, 1)", "6abc : 1"),
        ("cuboct", f"alpha in [{truncate_pi(math.acos(1 / 3) / PI)}, 0.5)", "12a2bc : 2"),
        ("antiprism", "n >= 3", "6abc^n, (6n-6)b2c : 1"),
    ]
    rows = []
    lines = ["families:"]
    for name, dom, avc in fams:
        lines.append(f"  {name:10s} {dom:28s} {avc}")
    lines.append("sporadic:")
    lines.append(f"  {'id':10s} {'alpha':>6s} {'beta':>6s} {'gamma':>6s} {'a':>6s}  AVC : tilings")
    for p in catalog.all_sporadic():
        tr = [truncate_pi(x / PI) for x in (*p.angles.as_tuple(), p.a)]
        avcs = "; ".join(
            f"{format_avc(e.avc)} : {'?' if e.tilings is None else e.tilings}" for e in p.expected[:3]
        )
        if len(p.expected) > 3:
            avcs += f"; ... ({len(p.expected)} AVCs)"
        lines.append(f"  {p.id:10s} {tr[0]} {tr[1]} {tr[2]} {tr[3]}  {avcs}")
        rows.append({
            "id": p.id,
            "truncated_pi": tr,
            "angles": [out.angle(x) for x in p.angles.as_tuple()],
            "a": out.angle(p.a),
            "expected": [
                {"faces": list(e.faces), "avc": format_avc(e.avc), "tilings": e.tilings} for e in p.expected
            ],
        })
    result = {"families": [{"name": n, "domain": d, "avc": a} for n, d, a in fams], "sporadic": rows}
    out.emit("catalog list", result, lines)
    return EXIT_OK


def cmd_catalog_show(args, out: Out) -> int:
    p = catalog.parse_protoset_spec(args.id)
    result, lines = _protoset_view(p, out)
    out.emit("catalog show", result, lines)
    return EXIT_OK if result["verification"]["ok"] else EXIT_INVALID


def cmd_solve(args, out: Out) -> int:
    if args.family == "antiprism":
        if args.n is None:
            raise UsageError("solve antiprism needs --n")
        p = catalog.antiprism_family(args.n)
        lo, hi = catalog.antiprism_bracket(args.n)
        extra = {"bracket": [out.angle(lo), out.angle(hi)]}
    else:
        if args.alpha is None:
            raise UsageError(f"solve {args.family} needs --alpha")
        alpha = _angle_arg(args.alpha, out.units)
        p = catalog.prism_family(alpha) if args.family == "prism" else catalog.cuboct_family(alpha)
        extra = {}
    result, lines = _protoset_view(p, out)
    result.update(extra)
    if extra:
        lo, hi = extra["bracket"]
        lines.insert(1, f"  beta bracket: ({_fmt(lo)}, {_fmt(hi)})")
    out.emit("solve", result, lines)
    return EXIT_OK if result["verification"]["ok"] else EXIT_INVALID


def cmd_enumerate(args, out: Out) -> int:
    ang = [_angle_arg(x, out.units) for x in (args.alpha, args.beta, args.gamma)]
    t = AngleTriple(*ang)
    tol = args.tol if args.tol is not None else 1e-6
    try:
        types = enumerate_vertex_types(t, tol=tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = {"angles": [out.angle(x) for x in ang], "tol": tol,
              "vertex_types": [{"code": v.code(), "n": list(v), "degree": v.degree} for v in types]}
    lines = [f"{len(types)} vertex types"] + [f"  {v.code():10s} {v}  (degree {v.degree})" for v in types]
    out.emit("enumerate", result, lines)
    return EXIT_OK


def _load_tiling(path: str):
    from .geom import load_export
    from .tilingcore.tiling import CombinatorialTiling

    try:
        text = Path(path).read_text()
        doc = json.loads(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        if doc.get("schema") == "sphtiling.embedding":
            return load_export(text)[0]
        return CombinatorialTiling.from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a tiling document: {exc}") from None


def cmd_verify(args, out: Out) -> int:
    from .tilingcore.registry import default_protoset
    from .tilingcore.tiling import validate

    t = _load_tiling(args.tiling)
    if args.protoset:
        p = catalog.parse_protoset_spec(args.protoset)
    elif t.name:
        p = default_protoset(t.name)
    else:
        raise UsageError("tiling has no registry name; pass --protoset")
    tol = args.tol if args.tol is not None else 1e-9
    rep = validate(t, p.angles, tol)
    result = {"tiling": t.name, "protoset": p.id, **rep.to_dict()}
    d = rep.to_dict()
    lines = [f"tiling {t.name or args.tiling} against {p.id}: {'valid' if rep.all_green else 'INVALID'}"]
    for k in ("edge_to_edge_ok", "degree_ok", "euler_ok", "labels_ok", "no_alpha3"):
        lines.append(f"  {k:16s} {d[k]}")
    lines.append(f"  max angle-sum defect {d['max_vertex_sum_defect']:.3e}")
    lines.append(f"  AVC {d['avc']}")
    lines += [f"  problem: {s}" for s in rep.problems]
    out.emit("verify", result, lines)
    return EXIT_OK if rep.all_green else EXIT_INVALID


def cmd_generate(args, out: Out) -> int:
    if args.what == "merges":
        from .tilingcore.merges import icosahedral_merges

        if args.m is None:
            raise UsageError("generate merges needs --m")
        fam = icosahedral_merges(args.m, dedup=args.dedup)
        p = catalog.icosahedral_protoset()
        ok = fam.validate_all(p.angles, args.tol if args.tol is not None else 1e-9)
        result = {"m": args.m, "dedup": args.dedup, "count": len(fam), "all_valid": bool(ok.all()),
                  "faces": [20 - 2 * args.m, args.m]}
        if args.emit:
            result["tilings"] = [t.to_dict() for t in fam]
        lines = [f"m = {args.m}{' (up to symmetry)' if args.dedup else ''}: {len(fam)} tilings, "
                 f"{'all valid' if ok.all() else 'SOME INVALID'}"]
        out.emit("generate merges", result, lines)
        return EXIT_OK if ok.all() else EXIT_INVALID

    from .tilingcore.registry import FLIP_MAX_K, flip_chain
    from .tilingcore.tiling import extract_avc, validate

    if args.k is None:
        raise UsageError("generate flips needs --k")
    if args.k < 0:
        raise UsageError("k must be >= 0")
    if args.k > FLIP_MAX_K:
        msg = f"no tiling with k = {args.k}: single flips stop at k = {FLIP_MAX_K}"
        out.emit("generate flips", {"k": args.k, "found": False, "reason": msg}, [msg])
        return EXIT_INVALID
    t = flip_chain()[args.k]
    p = catalog.sporadic("20,24.2")
    rep = validate(t, p.angles)
    result = {"k": args.k, "found": True, "valid": rep.all_green, "avc": format_avc(extract_avc(t)),
              "tiling": t.to_dict()}
    lines = [f"k = {args.k}: {format_avc(extract_avc(t))} ({'valid' if rep.all_green else 'INVALID'})"]
    out.emit("generate flips", result, lines)
    return EXIT_OK if rep.all_green else EXIT_INVALID


def cmd_export(args, out: Out) -> int:
    from .geom import CLOSURE_TOL, export, realize
    from .tilingcore.registry import default_protoset, lookup

    entry = lookup(args.tiling)
    t = entry.build()
    p = catalog.parse_protoset_spec(args.protoset) if args.protoset else default_protoset(args.tiling)
    tol = args.tol if args.tol is not None else CLOSURE_TOL
    try:
        emb = realize(t, p, tol)
    except ClosureFailure as exc:
        out.emit("export", {"tiling": args.tiling, "protoset": p.id, "closure_failure": str(exc)},
                 [f"closure failure: {exc}"])
        return EXIT_INVALID
    data = export(emb, args.export_format)
    if args.out and args.out != "-":
        Path(args.out).write_bytes(data)
        info = emb.summary()
        out.emit("export", {**info, "path": args.out, "bytes": len(data)},
                 [f"wrote {args.out} ({len(data)} bytes), closure defect {emb.closure_defect:.2e}"])
    else:
        sys.stdout.buffer.write(data) if out.stream is sys.stdout else out.stream.write(data.decode())
    return EXIT_OK


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sphtiling", description="Spherical tilings by regular triangles and rhombi.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--format", choices=("table", "json"), default="table", help="output format")
    ap.add_argument("--units", choices=("pi", "radians"), default="pi", help="angle units for I/O")
    ap.add_argument("--tol", type=float, default=None, help="override the relevant tolerance")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cat = sub.add_parser("catalog", help="query the protoset catalog")
    csub = cat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    csub.add_parser("list", help="all families and sporadic rows").set_defaults(func=cmd_catalog_list)
    show = csub.add_parser("show", help="one protoset in full precision")
    show.add_argument("id", help="sporadic id (e.g. 8,2) or spec (prism@alpha=acos(1/8), antiprism@n=3)")
    show.set_defaults(func=cmd_catalog_show)

    solve = sub.add_parser("solve", help="solve a parametric family")
    solve.add_argument("family", choices=("antiprism", "prism", "cuboct"))
    solve.add_argument("--n", type=int)
    solve.add_argument("--alpha", help="number in --units, or an expression in radians")
    solve.set_defaults(func=cmd_solve)

    en = sub.add_parser("enumerate", help="vertex types of an angle triple")
    for name in ("alpha", "beta", "gamma"):
        en.add_argument(f"--{name}", required=True)
    en.set_defaults(func=cmd_enumerate)

    ver = sub.add_parser("verify", help="validate a tiling JSON file")
    ver.add_argument("tiling")
    ver.add_argument("--protoset")
    ver.set_defaults(func=cmd_verify)

    gen = sub.add_parser("generate", help="generate merge or flip tilings")
    gen.add_argument("what", choices=("merges", "flips"))
    gen.add_argument("--m", type=int)
    gen.add_argument("--dedup", action="store_true")
    gen.add_argument("--emit", action="store_true", help="include the tilings in JSON output")
    gen.add_argument("--k", type=int)
    gen.set_defaults(func=cmd_generate)

    ex = sub.add_parser("export", help="realize a registry tiling and write OBJ or JSON")
    ex.add_argument("tiling")
    ex.add_argument("--protoset")
    ex.add_argument("--format", dest="export_format", choices=("obj", "json"), default="obj")
    ex.add_argument("--out", help="output path ('-' for stdout)")
    ex.set_defaults(func=cmd_export)
    return ap


def run(argv: Sequence[str] | None = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    out = Out(args, stream)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"sphtiling: {exc}\n")
        return EXIT_USAGE
    except (KeyError, DomainError) as exc:
        # unknown ids (CatalogMiss, RegistryMiss) and out-of-domain parameters
        msg = exc.args[0] if exc.args else exc
        sys.stderr.write(f"sphtiling: {msg}\n")
        return EXIT_USAGE
    except SphTilingError as exc:
        sys.stderr.write(f"sphtiling: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
