"""Command-line interface: JSON results, SVG net pictures, CSV arc dumps.

Exit codes: 0 success, 1 numerical failure (a path, count, or trace
problem, reported with diagnostics), 2 invalid input.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import electro, fuchs, nets, poly, tracker
from .combinat import catalan, kostka
from .errors import (CountMismatch, NewtonDiverged, PathStuck,
                     ScheduleExhausted, TraceLost, WronskiError)
from .tracker import TrackOptions

NUMERICAL = (PathStuck, CountMismatch, TraceLost, NewtonDiverged,
             ScheduleExhausted)


def _parse_points(text):
    try:
        pts = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "points must be a comma-separated list of reals")
    return np.asarray(pts)


class SystemExit2(Exception):
    """Invalid input; maps to exit code 2."""


def _seed(args):
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("WRONSKI_SEED", "0"))


def _round(x):
    # fixed-precision serialization keeps equal runs byte-identical
    return float(f"{float(x):.12g}")


def _vec(v):
    return [_round(t) for t in np.asarray(v, dtype=float)]


def _class_doc(pc, points):
    points = np.sort(points)
    w_roots = np.sort(pc.wronskian_roots().real)
    x = fuchs.residues((pc.q1.real, pc.q2.real), w_roots)
    _, _, s = fuchs.prop6_check(x, w_roots)
    net = nets.net_from_ballot(pc.ballot, w_roots)
    return {
        "ballot": pc.ballot,
        "chart_base": _round(pc.chart.base_point),
        "q1_coeffs": _vec(pc.q1.real),
        "q2_coeffs": _vec(pc.q2.real),
        "wronskian_roots": _vec(w_roots),
        "residues_x": _vec(x),
        "s": int(round(s)),
        "net_matching": sorted(list(p) for p in net.matching),
        "diagnostics": {
            "max_imag": _round(pc.max_imag()),
            "residual": _round(np.abs(w_roots - points).max()),
        },
    }


def _solve(points, d, seed, jobs):
    if np.unique(points).size != points.size:
        raise SystemExit2("points must be distinct")
    if d is None:
        if points.size % 2:
            raise SystemExit2("need an even number of points")
        d = points.size // 2 + 1
    if points.size != 2 * d - 2:
        raise SystemExit2(f"need {2 * d - 2} points for degree {d}")
    opts = TrackOptions(rng_seed=seed)
    return tracker.solve_all(points, d, opts=opts, jobs=jobs), d


def cmd_count(args):
    if args.d is None or args.d < 2:
        raise SystemExit2("count requires --d >= 2")
    return {"command": "count", "d": args.d, "u": catalan(args.d)}


def cmd_kostka(args):
    if not args.content:
        raise SystemExit2("kostka requires --content")
    total = sum(args.content)
    if args.d is None:
        if total % 2:
            raise SystemExit2("content must sum to 2(d-1)")
        d = total // 2 + 1
    else:
        d = args.d
    return {"command": "kostka", "content": list(args.content), "d": d,
            "kostka": kostka(tuple(args.content), d)}


def cmd_solve(args):
    if args.points is None:
        raise SystemExit2("solve requires --points")
    classes, d = _solve(args.points, args.d, _seed(args), args.jobs)
    return {"command": "solve", "d": d, "points": _vec(np.sort(args.points)),
            "classes": [_class_doc(pc, args.points) for pc in classes]}


def cmd_bethe(args):
    if args.points is None:
        raise SystemExit2("bethe requires --points (the singular points a)")
    if np.unique(args.points).size != args.points.size:
        raise SystemExit2("points must be distinct")
    sols = fuchs.bethe_solve(args.points, budget=args.starts,
                             seed=_seed(args))
    return {"command": "bethe", "a": _vec(np.sort(args.points)),
            "solutions": [{"x": _vec(s.x), "s": s.s,
                           "qstar": _round(s.qstar),
                           "degrees": list(s.degrees)} for s in sols]}


def cmd_equilibrium(args):
    if args.points is None or args.m is None:
        raise SystemExit2("equilibrium requires --points and --m")
    if np.unique(args.points).size != args.points.size:
        raise SystemExit2("points must be distinct")
    try:
        eqs = electro.solve_equilibrium(args.points, args.m,
                                        budget=args.starts, seed=_seed(args))
    except ValueError as e:
        raise SystemExit2(str(e))
    docs = []
    for c in eqs:
        r = electro.equilibrium_residual(c)
        docs.append({
            "z": [[_round(z.real), _round(z.imag)] for z in c.mobile],
            "energy": _round(electro.energy(c)),
            "residual_norm": _round(np.abs(r).max(initial=0.0)),
        })
    return {"command": "equilibrium", "a": _vec(np.sort(args.points)),
            "m": args.m, "equilibria": docs}


def cmd_net(args):
    if args.points is None:
        raise SystemExit2("net requires --points")
    classes, d = _solve(args.points, args.d, _seed(args), args.jobs)
    traced = [nets.trace_net(pc.realified()) for pc in classes]
    if args.svg:
        emit_svg(traced, args.svg)
    if args.csv:
        _emit_csv(traced, args.csv)
    return {"command": "net", "d": d, "points": _vec(np.sort(args.points)),
            "nets": [{"ballot": pc.ballot,
                      "matching": sorted(list(p) for p in net.matching),
                      "distinguished": net.distinguished}
                     for pc, net in zip(classes, traced)]}


def cmd_verify(args):
    if args.points is None:
        raise SystemExit2("verify requires --points")
    classes, d = _solve(args.points, args.d, _seed(args), args.jobs)
    pts = np.sort(args.points)
    max_res = 0.0
    round_trip = True
    for pc in classes:
        w_roots = np.sort(pc.wronskian_roots().real)
        max_res = max(max_res, float(np.abs(w_roots - pts).max()))
        x = fuchs.residues((pc.q1.real, pc.q2.real), w_roots)
        lo, hi = fuchs.polynomial_solutions(w_roots, x)
        if not poly.span_equivalent((lo, hi), (pc.q1, pc.q2), tol=1e-6):
            round_trip = False
    traced = [nets.trace_net(pc.realified()).matching for pc in classes]
    distinct = len(set(traced)) == len(traced)
    ok = round_trip and distinct and max_res < 1e-8 * (1 + np.abs(pts).max())
    return {"command": "verify", "d": d, "points": _vec(pts),
            "classes": len(classes), "round_trip_ok": round_trip,
            "nets_distinct": distinct, "max_residual": _round(max_res),
            "ok": bool(ok)}


def _svg_arc(pts, sx, sy, mirror=False):
    coords = " ".join(
        f"{sx(p.real):.2f},{sy(-p.imag if mirror else p.imag):.2f}"
        for p in pts)
    return f'<polyline fill="none" stroke="{"#888" if mirror else "#06c"}" ' \
           f'stroke-width="1.5" points="{coords}"/>'


def emit_svg(traced, path):
    """One SVG file per net; multiple nets get numbered suffixes."""
    base, ext = os.path.splitext(path)
    ext = ext or ".svg"
    names = [path if len(traced) == 1 else f"{base}-{i + 1}{ext}"
             for i in range(len(traced))]
    for net, name in zip(traced, names):
        xs = np.asarray(net.vertices)
        span = xs.max() - xs.min() or 1.0
        x0, x1 = xs.min() - 0.2 * span, xs.max() + 0.2 * span
        height = 0.0
        for pts in net.arcs.values():
            height = max(height, max(p.imag for p in pts))
        height = max(height * 1.2, 0.2 * span)
        W, H = 640, 480
        sx = lambda x: (x - x0) / (x1 - x0) * W
        sy = lambda y: H / 2 - y / height * (H / 2 - 20)
        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" '
                 f'height="{H}" viewBox="0 0 {W} {H}">',
                 f'<line x1="0" y1="{H / 2}" x2="{W}" y2="{H / 2}" '
                 'stroke="#000" stroke-width="1"/>']
        for pts in net.arcs.values():
            parts.append(_svg_arc(pts, sx, sy))
            parts.append(_svg_arc(pts, sx, sy, mirror=True))
        for x in xs:
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{H / 2}" r="3" '
                         'fill="#c00"/>')
        parts.append("</svg>")
        with open(name, "w") as fh:
            fh.write("\n".join(parts))


def _emit_csv(traced, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["net", "arc_lo", "arc_hi", "re", "im"])
        for i, net in enumerate(traced, start=1):
            for (a, b), pts in sorted(net.arcs.items()):
                for p in pts:
                    writer.writerow([i, a, b, f"{p.real:.12g}",
                                     f"{p.imag:.12g}"])


COMMANDS = {
    "count": cmd_count,
    "kostka": cmd_kostka,
    "solve": cmd_solve,
    "bethe": cmd_bethe,
    "equilibrium": cmd_equilibrium,
    "net": cmd_net,
    "verify": cmd_verify,
}


def build_parser():
    p = argparse.ArgumentParser(
        prog="wronski",
        description="Classes of rational functions with prescribed real "
                    "critical points.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--points", type=_parse_points, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--content", type=lambda s: tuple(
        int(t) for t in s.split(",") if t.strip()), default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--starts", type=int, default=20000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", dest="json_path", default=None)
    p.add_argument("--svg", default=None)
    p.add_argument("--csv", default=None)
    return p


def _merge_negative_values(argv):
    """Join `--points -1,1` into `--points=-1,1` so argparse does not
    mistake a leading minus sign for an option."""
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in ("--points", "--content") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def run(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_negative_values(list(argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2, None
    try:
        doc = COMMANDS[args.command](args)
        code = 0
    except (SystemExit2, WronskiError, ValueError) as e:
        numerical = isinstance(e, NUMERICAL)
        doc = {"error": str(e), "kind": type(e).__name__}
        code = 1 if numerical else 2
    text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    if getattr(args, "json_path", None):
        with open(args.json_path, "w") as fh:
            fh.write(text)
    return code, text


def main(argv=None):
    code, text = run(argv)
    if text is not None:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
