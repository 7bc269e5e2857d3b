"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 inconclusive at the
given bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .covering import classify, exact_str
from .errors import InputError
from .flow import Direction, Inconclusive, LengthSq, cylinder_decomposition
from .invariants import SimpleWitness, is_j_simple, j_surface, phi
from .render import render_svg
from .surface import PolygonNet, Vec2, area, is_convex_pattern, load_net, serialize_net, stratum
from .topology import net_homology

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def load_input(source: str) -> PolygonNet:
    if source.startswith("catalog:"):
        return catalog.get(source[len("catalog:") :])
    path = Path(source)
    if not path.is_file():
        raise InputError(f"no such net file: {source}")
    return load_net(path)


def parse_direction(net: PolygonNet, text: str) -> Direction:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"direction must look like x,y, got {text!r}")
    try:
        x, y = (net.field.parse(t) for t in parts)
    except ValueError as exc:
        raise InputError(f"bad direction {text!r}: {exc}") from None
    v = Vec2(x, y)
    if v.is_zero():
        raise InputError("direction must be nonzero")
    return Direction.of(v)


def parse_bound(net: PolygonNet, text: str, what: str):
    """A positive length; ``sqrt:N`` gives a bound by its square."""
    try:
        if text.startswith("sqrt:"):
            sq = net.field.parse(text[5:])
            val = LengthSq(sq)
            ok = sq.sign() > 0
        else:
            val = net.field.parse(text)
            ok = val.sign() > 0
    except ValueError as exc:
        raise InputError(f"bad {what} {text!r}: {exc}") from None
    if not ok:
        raise InputError(f"{what} must be positive")
    return val


def _bound_str(b) -> str:
    if isinstance(b, LengthSq):
        return f"sqrt({b.value})"
    return str(b)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tsurf", description="Exact computations on translation surfaces given as polygon nets.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input(p):
        p.add_argument("input", help="net file or catalog:<name> (catalog:origami:<h>:<v> for origamis)")

    p = sub.add_parser("info", help="stratum, genus, area")
    add_input(p)

    p = sub.add_parser("cylinders", help="cylinder decomposition in one direction")
    add_input(p)
    p.add_argument("--direction", required=True, help="x,y (field elements)")
    p.add_argument("--cutoff", default="100", help="separatrix length cutoff")
    p.add_argument("--svg", help="write an SVG picture of the decomposition")

    p = sub.add_parser("jinv", help="J-invariant and simplicity test")
    add_input(p)

    p = sub.add_parser("classify", help="bounded evidence for pure periodicity and torus coverings")
    add_input(p)
    p.add_argument("--bound", default="3", help="saddle connection length bound for directions")
    p.add_argument("--cutoff", default="100", help="separatrix length cutoff")
    p.add_argument("--report", help="also write the report to this path")
    p.add_argument("--threads", type=int, default=None, help="worker threads (capped by FLATSURF_THREADS)")

    p = sub.add_parser("render", help="SVG picture of a net")
    add_input(p)
    p.add_argument("--direction", help="shade the cylinders of this direction")
    p.add_argument("--cutoff", default="100", help="separatrix length cutoff")
    p.add_argument("--svg", help="output path (default: stdout)")

    p = sub.add_parser("catalog", help="list catalog surfaces or export one as a net file")
    p.add_argument("name", nargs="?", help="surface to export")
    return ap


def _cmd_info(args, out):
    net = load_input(args.input)
    st = stratum(net)
    H = net_homology(net)
    out.write(f"input: {args.input}\n")
    out.write(f"field: {net.field.header()}\n")
    out.write(f"polygons: {len(net.polygons)}\n")
    out.write(f"stratum: {st}\n")
    out.write(f"genus: {st.genus}\n")
    out.write(f"area: {exact_str(area(net))}\n")
    out.write(f"homology rank: {H.rank}\n")
    out.write(f"convex pattern: {'yes' if is_convex_pattern(net) else 'no'}\n")
    for vid, s in enumerate(net.vertex_cycles()):
        kind = "marked point" if s.turns == 1 else f"singularity of multiplicity {s.turns - 1}"
        out.write(f"vertex {vid}: cone angle {2 * s.turns}pi, {kind}, {len(s.corners)} corners\n")
    return EXIT_OK


def _write_decomposition(dec, out):
    out.write(f"direction: {dec.direction}\n")
    if isinstance(dec, Inconclusive):
        out.write(f"verdict: inconclusive ({dec.escaped} separatrices escaped the cutoff)\n")
    else:
        verdict = "commensurable" if dec.commensurable else "incommensurable"
        out.write(f"verdict: complete, {verdict}\n")
    out.write(f"saddle connections: {len(dec.saddle_connections)}\n")
    out.write(f"cylinders: {len(dec.cylinders)}\n")
    for i, c in enumerate(dec.cylinders):
        out.write(
            f"  cylinder {i}: width {exact_str(c.width)}, height {exact_str(c.height)}, "
            f"core class {list(c.core_class.coeffs)}, core holonomy {exact_str(c.core_holonomy)}\n"
        )


def _cmd_cylinders(args, out):
    net = load_input(args.input)
    d = parse_direction(net, args.direction)
    cutoff = parse_bound(net, args.cutoff, "cutoff")
    dec = cylinder_decomposition(net, d, cutoff)
    _write_decomposition(dec, out)
    if args.svg:
        Path(args.svg).write_text(render_svg(net, dec))
    return EXIT_INCONCLUSIVE if isinstance(dec, Inconclusive) else EXIT_OK


def _cmd_jinv(args, out):
    net = load_input(args.input)
    J = j_surface(net)
    out.write(f"J: {J}\n")
    out.write(f"phi(J): {exact_str(phi(J))}\n")
    out.write(f"2*area: {exact_str(2 * area(net))}\n")
    r = is_j_simple(J)
    if isinstance(r, SimpleWitness):
        out.write(f"J-simple: yes, J = v ^ w with v = {exact_str(r.v)}, w = {exact_str(r.w)}\n")
    else:
        out.write(f"J-simple: no, Pluecker coordinate {r.indices} of J ^ J is {r.value}\n")
    return EXIT_OK


def _cmd_classify(args, out):
    net = load_input(args.input)
    bound = parse_bound(net, args.bound, "bound")
    cutoff = parse_bound(net, args.cutoff, "cutoff")
    if args.threads is not None and args.threads < 1:
        raise UsageError("tsurf classify: error: --threads must be positive")
    rep = classify(net, bound, cutoff, threads=args.threads)
    d = rep.to_dict()
    d["bounds"] = {"direction_bound": _bound_str(bound), "cutoff": _bound_str(cutoff)}
    text = json.dumps(d, indent=2, ensure_ascii=False) + "\n"
    out.write(text)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    return EXIT_INCONCLUSIVE if rep.inconclusive else EXIT_OK


def _cmd_render(args, out):
    net = load_input(args.input)
    dec = None
    if args.direction:
        d = parse_direction(net, args.direction)
        dec = cylinder_decomposition(net, d, parse_bound(net, args.cutoff, "cutoff"))
    svg = render_svg(net, dec)
    if args.svg:
        Path(args.svg).write_text(svg)
    else:
        out.write(svg)
    return EXIT_OK


def _cmd_catalog(args, out):
    if args.name is None:
        for name, e in catalog.CATALOG.items():
            out.write(f"{name}: {e.notes}\n" if e.notes else f"{name}\n")
        return EXIT_OK
    out.write(serialize_net(catalog.get(args.name)))
    return EXIT_OK


COMMANDS = {
    "info": _cmd_info,
    "cylinders": _cmd_cylinders,
    "jinv": _cmd_jinv,
    "classify": _cmd_classify,
    "render": _cmd_render,
    "catalog": _cmd_catalog,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except (InputError, OSError, UnicodeDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
