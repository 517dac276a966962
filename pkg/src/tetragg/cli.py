"""Command-line entry point: build, analyze, verify, junction-svg.

Exit codes: 0 success, 1 failed verification checks, 2 usage error,
3 I/O error, 4 malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .aggregates import build_edge_ring, build_icosahedral, twist_edge_ring, twist_icosahedral
from .analysis import find_face_junctions, plane_classes
from .exceptions import DomainError, ParseError
from .formats import aggregate_to_json, aggregate_to_obj, dumps, junction_svg, read_aggregate
from .geometry import ToleranceConfig
from .helix import Chirality, HelixSpec, build_helix
from .report import analyze
from .verify import SUITES, run_suite

EXIT_FAILED, EXIT_USAGE, EXIT_IO, EXIT_PARSE = 1, 2, 3, 4

BUILD_KINDS = ("edge-ring", "icosahedral", "bc-helix", "helix-5bc", "helix-3bc", "modified-helix")
HELIX_KINDS = BUILD_KINDS[2:]


class UsageError(Exception):
    pass


def tolerance_from_env() -> ToleranceConfig:
    """Honour TETRA_TOLERANCE_POINT (a testing aid) for the point tolerance."""
    raw = os.environ.get("TETRA_TOLERANCE_POINT")
    if not raw:
        return ToleranceConfig()
    try:
        return ToleranceConfig(point_tol=float(raw))
    except ValueError as exc:
        raise UsageError(f"TETRA_TOLERANCE_POINT: {exc}") from None


def _build(args):
    kind = args.kind
    if kind == "edge-ring":
        if args.n is None:
            raise UsageError("--kind edge-ring needs --n")
        if args.count is not None:
            raise UsageError("--count applies to helices only")
        try:
            agg = build_edge_ring(args.n, args.edge_length)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        return twist_edge_ring(agg) if args.twisted else agg
    if args.n is not None:
        raise UsageError("--n applies to --kind edge-ring only")
    if kind == "icosahedral":
        if args.count is not None:
            raise UsageError("--count applies to helices only")
        agg = build_icosahedral(args.edge_length)
        return twist_icosahedral(agg) if args.twisted else agg
    if args.twisted:
        raise UsageError("--twisted applies to edge-ring and icosahedral only")
    if args.count is None:
        raise UsageError(f"--kind {kind} needs --count")
    underlying = Chirality(args.chirality)
    if kind == "bc-helix":
        spec = HelixSpec(args.count, underlying, a=args.edge_length)
    else:
        sense = {
            "helix-5bc": underlying,
            "helix-3bc": underlying.flipped(),
            "modified-helix": Chirality(args.rotation_sense),
        }[kind]
        spec = HelixSpec(args.count, underlying, sense, args.edge_length, modified=True)
    return build_helix(spec)


def cmd_build(args, out) -> int:
    try:
        agg = _build(args)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _write(args.json, aggregate_to_json(agg))
    if args.obj:
        _write(args.obj, aggregate_to_obj(agg))
    tol = tolerance_from_env()
    print(
        f"kind={agg.kind} tetrahedra={len(agg)} plane_classes={plane_classes(agg, tol).count}",
        file=out,
    )
    return 0


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from None


def _read(path):
    try:
        return read_aggregate(path)
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from None


def cmd_analyze(args, out) -> int:
    agg = _read(args.input)
    chosen = {k: getattr(args, k) for k in ("planes", "junctions", "period", "symmetry")}
    if not any(chosen.values()):
        chosen = dict.fromkeys(chosen, True)
    report = analyze(agg, max_m=args.max_m, tol=tolerance_from_env(), **chosen)
    text = dumps(report.to_dict()) + "\n"
    if args.output:
        _write(args.output, text)
    else:
        out.write(text)
    return 0


def cmd_verify(args, out) -> int:
    report = run_suite(args.suite, tolerance_from_env())
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: measured={c.measured} expected={c.expected}", file=out)
    failures = report.failures()
    print(f"{len(report.checks) - len(failures)}/{len(report.checks)} checks passed", file=out)
    if args.output:
        _write(args.output, dumps(report.to_dict()) + "\n")
    if failures:
        print("failed checks:", file=sys.stderr)
        for c in failures:
            print(f"  {c.name}", file=sys.stderr)
        return EXIT_FAILED
    return 0


def cmd_junction_svg(args, out) -> int:
    agg = _read(args.input)
    junctions = find_face_junctions(agg, tolerance_from_env())
    if not 0 <= args.index < len(junctions):
        raise UsageError(f"junction index {args.index} out of range (found {len(junctions)} junctions)")
    _write(args.output, junction_svg(junctions[args.index]))
    print(f"wrote junction {args.index} of {len(junctions)} to {args.output}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tetragg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct an aggregate and write JSON/OBJ")
    p.add_argument("--kind", choices=BUILD_KINDS, required=True)
    p.add_argument("--n", type=int, help="edge-ring size (3..5)")
    p.add_argument("--twisted", action="store_true", help="apply the gap-closing twist")
    p.add_argument("--edge-length", type=float, default=1.0)
    p.add_argument("--count", type=int, help="number of tetrahedra in a helix")
    p.add_argument("--chirality", choices=[c.value for c in Chirality], default="right",
                   help="hand of the underlying helix")
    p.add_argument("--rotation-sense", choices=[c.value for c in Chirality], default="right",
                   help="hand of the beta spin (modified-helix only)")
    p.add_argument("--json", help="aggregate JSON output path")
    p.add_argument("--obj", help="Wavefront OBJ output path")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="analyse an aggregate JSON file")
    p.add_argument("input")
    p.add_argument("--planes", action="store_true")
    p.add_argument("--junctions", action="store_true")
    p.add_argument("--period", action="store_true")
    p.add_argument("--symmetry", action="store_true")
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the built-in verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--output", "-o", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("junction-svg", help="draw one face junction as SVG")
    p.add_argument("input")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_junction_svg)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tetragg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"tetragg: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"tetragg: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
