"""Command-line entry point: scan, mesh, verify, classify, spheres."""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .classify import classify, trace_invariants
from .config import DEFAULT, Tolerances, read_config
from .errors import FordError, InvalidModuliError, OutOfScopeError, UsageError
from .ford import FAMILIES, full_report, jsonable, neighborhood_report
from .group import ModuliPoint, generators
from .heisenberg import isometric_sphere
from .mesh import mesh_text, sphere_mesh
from .scan import ScanConfig, curves_json, scan, scan_csv
from .words import a_conjugate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _real(text: str) -> float:
    """Float, also accepting expressions such as sqrt(2) or acos(-7/8)."""
    try:
        return float(text)
    except ValueError:
        pass
    allowed = {k: getattr(math, k) for k in ("sqrt", "acos", "asin", "atan", "cos", "sin", "pi")}
    try:
        return float(eval(text, {"__builtins__": {}}, allowed))  # noqa: S307 - restricted namespace
    except Exception as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _add_common(p: argparse.ArgumentParser, point: bool = True) -> None:
    p.add_argument("--config", help="key = value file; flags given on the command line win")
    if point:
        p.add_argument("--h", type=_real, help="moduli parameter h (default sqrt(2))")
        p.add_argument("--t", type=_real, help="moduli parameter t (default acos(-7/8))")
    p.add_argument("--tol-id", type=float, help="identity / relation tolerance")
    p.add_argument("--tol-geom", type=float, help="geometric membership tolerance")
    p.add_argument("--out", help="output path (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fordpu", description="Ford domain checks for a (3,3,4) triangle group family.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sc = sub.add_parser("scan", help="holy-grail scan over (h, t) and zero-curve traces")
    _add_common(sc, point=False)
    sc.add_argument("--grid", type=int, help="samples per axis (default 400)")
    sc.add_argument("--word", action="append", help="reflection word, repeatable (default: four words)")
    sc.add_argument("--h-range", type=_real, nargs=2, metavar=("LO", "HI"))
    sc.add_argument("--t-range", type=_real, nargs=2, metavar=("LO", "HI"))
    sc.add_argument("--curves", help="JSON path for the curve traces")

    me = sub.add_parser("mesh", help="text mesh of an isometric sphere")
    _add_common(me)
    me.add_argument("--word", default="C")
    me.add_argument("--grid", type=int, help="latitude samples (default 32)")

    ve = sub.add_parser("verify", help="run the audits and write a JSON report")
    _add_common(ve)
    ve.add_argument("--full", action="store_true", help="full suite at the base point")
    ve.add_argument("--k-max", type=int, help="conjugation range |k| <= K (default 5)")
    ve.add_argument("--grid", type=int, help="certificate grid")

    cl = sub.add_parser("classify", help="isometry type of a word")
    _add_common(cl)
    cl.add_argument("--word", help="word to classify (required here or in --config)")
    cl.add_argument("--dim", type=int, choices=(2, 3), default=3)

    sp = sub.add_parser("spheres", help="centres and radii of the isometric spheres")
    _add_common(sp)
    sp.add_argument("--k-max", type=int, help="conjugation range |k| <= K (default 5)")
    return ap


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if not getattr(args, "config", None):
        return args
    try:
        cfg = read_config(args.config)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    converters = {"h": _real, "t": _real, "grid": int, "k_max": int, "tol_id": float, "tol_geom": float,
                  "out": str, "curves": str, "word": lambda v: [w.strip() for w in v.split(",") if w.strip()],
                  "full": lambda v: v.lower() in ("1", "true", "yes"),
                  "h_range": lambda v: [_real(x) for x in v.split(",")],
                  "t_range": lambda v: [_real(x) for x in v.split(",")]}
    for key, raw in cfg.items():
        if key not in converters:
            raise UsageError(f"unknown config key {key!r}")
        if hasattr(args, key) and getattr(args, key) in (None, False):
            value = converters[key](raw)
            if key == "word" and args.command != "scan":
                value = value[0]
            setattr(args, key, value)
    return args


def _tolerances(args) -> Tolerances:
    return DEFAULT.with_overrides(identity=args.tol_id, geometric=args.tol_geom)


def _point(args) -> ModuliPoint:
    base = ModuliPoint.base()
    h = base.h if args.h is None else args.h
    t = base.t if args.t is None else args.t
    return ModuliPoint(h, t).require()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def cmd_scan(args) -> int:
    kw = {}
    if args.grid is not None:
        kw["grid"] = args.grid
    if args.word:
        kw["words"] = tuple(args.word)
    if args.h_range:
        kw["h_range"] = tuple(args.h_range)
    if args.t_range:
        kw["t_range"] = tuple(args.t_range)
    if args.tol_geom is not None:
        kw["tol"] = args.tol_geom
    cfg = ScanConfig(**kw, csv_path=args.out, curves_path=args.curves)
    result = scan(cfg)
    _emit(scan_csv(result), args.out)
    if args.curves:
        Path(args.curves).write_text(json.dumps(curves_json(result), sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _gens_for(p: ModuliPoint, dim: int | None = None):
    if dim is None:
        dim = 2 if p.is_2d_slice else 3
    return generators(p, dim)


def cmd_mesh(args) -> int:
    p = _point(args)
    if not p.is_2d_slice:
        raise UsageError("meshes need a point on the degenerate curve (complex dimension 2)")
    gens = _gens_for(p, 2)
    sphere = isometric_sphere(gens.word(args.word))
    mesh = sphere_mesh(sphere, args.grid or 32)
    _emit(mesh_text(mesh, f"I({args.word}) at h={p.h!r} t={p.t!r}"), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    K = args.k_max if args.k_max is not None else 5
    if args.full:
        report = full_report(tol, K, args.grid)
    else:
        p = _point(args)
        report = neighborhood_report(p, tol, K, args.grid or 512)
    _emit(json.dumps(report, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_FAIL


def cmd_classify(args) -> int:
    if not args.word:
        raise UsageError("classify needs --word (on the command line or in --config)")
    p = _point(args)
    gens = generators(p, args.dim)
    M = gens.word(args.word).matrix
    cls = classify(M, _tolerances(args))
    ti = trace_invariants(M)
    out = {"word": args.word, "h": p.h, "t": p.t, "dim": args.dim, "kind": cls.kind, "order": cls.order,
           "discriminant": cls.discriminant, "tau": complex(ti.tau),
           "eigenvalue_args": sorted(float(np.angle(z)) for z in cls.eigenvalues)}
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_spheres(args) -> int:
    p = _point(args)
    gens = _gens_for(p)
    K = args.k_max if args.k_max is not None else 5
    rows = []
    for fam in FAMILIES:
        for k in range(-K, K + 1):
            word = a_conjugate(fam, k)
            s = isometric_sphere(gens.word(word))
            rows.append({"family": fam, "k": k, "word": word, "center": s.center.as_list()[:-1],
                         "radius": s.radius})
    _emit(_dump({"h": p.h, "t": p.t, "dim": gens.dim, "spheres": rows}), args.out)
    return EXIT_OK


COMMANDS = {"scan": cmd_scan, "mesh": cmd_mesh, "verify": cmd_verify, "classify": cmd_classify,
            "spheres": cmd_spheres}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        return COMMANDS[args.command](args)
    except (InvalidModuliError, OutOfScopeError, UsageError) as exc:
        print(f"fordpu {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FordError as exc:
        print(f"fordpu {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"fordpu {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
