"""Command line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage,
parse and domain errors.  Wherever a surface file is expected, the name of a
builtin surface is accepted as well.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence

from . import center, chebyshev, flips, frobenius, surface, surgery, verify
from .errors import SkeinTorusError
from .parsing import format_element, format_surface, parse_expression, parse_surface
from .scalars import root_data
from .surface import skein_torus, vertex_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_surface(source: str):
    """Parse a surface file, or fall back to a builtin of that name."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_surface(fh.read())[1]
    if source in surface.builtin_names():
        return surface.builtin(source)[1]
    raise UsageError(f"no such file or builtin surface: {source}")


def _mod(args):
    m = getattr(args, "mod", None)
    if m is not None and m < 1:
        raise UsageError("--mod must be a positive integer")
    return m


# ------------------------------------------------------------------ commands


def cmd_vmatrix(args, out):
    q = load_surface(args.file)
    out.append(vertex_matrix(q).format())
    return EXIT_OK


def cmd_center(args, out):
    q = load_surface(args.file)
    rep = center.verify_center(q)
    out.extend(rep.lines())
    out.append("PASS center" if rep.ok else "FAIL center")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_flip(args, out):
    q = load_surface(args.file)
    fr = flips.flip(q, args.edge)
    out.append(f"case {fr.case}")
    out.append("labels " + " ".join(fr.labels))
    out.append(f"theta({fr.edge}) = {format_element(flips.theta_image(fr))}")
    out.append(format_surface(fr.new_q).rstrip("\n"))
    return EXIT_OK


def cmd_transfer(args, out):
    q = load_surface(args.file)
    m = _mod(args)
    x = parse_expression(args.expr, skein_torus(q), m)
    out.append(format_element(flips.transfer(q, args.edge, x)))
    return EXIT_OK


def cmd_cheb(args, out):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    m = _mod(args)
    if args.action == "poly":
        out.append(str(chebyshev.cheb_poly(args.n)))
    else:
        out.append(format_element(chebyshev.cheb_closed_form(args.n, m)))
    return EXIT_OK


def cmd_frobenius(args, out):
    q = load_surface(args.file)
    m = _mod(args)
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.expr is not None:
        x = parse_expression(args.expr, skein_torus(q), m)
        out.append(format_element(frobenius.frobenius_epsilon(x, args.n)))
        return EXIT_OK
    status = EXIT_OK
    edges = [a for a in flips.flippable_edges(q) if flips.flip(q, a).case == 1]
    if m is not None:
        out.append(f"m={m} ord(xi^4)={root_data(m).N}")
    for a in edges:
        ok = flips.verify_frobenius_flip(q, a, m, args.n)
        out.append(f"{'PASS' if ok else 'FAIL'} (X+Y)^{args.n} = X^{args.n} + Y^{args.n} at {a}")
        status = status if ok else EXIT_FAIL
    if not edges:
        out.append("no edges flip as a quadrilateral diagonal")
    return status


def cmd_surgery(args, out):
    q = load_surface(args.file)
    m = _mod(args)
    alg = surgery.SurgeryContext(q)
    if args.action == "mul":
        prod = alg.one(m)
        for text in args.exprs:
            prod = prod * parse_expression(text, alg, m)
        out.append(str(prod))
        return EXIT_OK
    if args.action == "plug":
        data = surgery.plug_hole(q, args.hole)
        _, a, b, c = data
        out.append(f"removed {a} {b}; {b} -> {c}")
        out.append(format_surface(data[0]).rstrip("\n"))
        if args.expr is not None:
            img, _ = surgery.psi_plug_hole(alg, args.hole, parse_expression(args.expr, alg, m), data)
            out.append(f"image = {img}")
        return EXIT_OK
    # addpoint
    if (args.edge is None) == (args.hole is None):
        raise UsageError("addpoint needs exactly one of --edge, --hole")
    if args.edge is not None:
        data = surgery.add_point_boundary(q, args.edge)
        new_q, a1, a2, point = data
        out.append(f"new point {point}; {args.edge} -> {a1} {a2}")
        out.append(format_surface(new_q).rstrip("\n"))
        if args.expr is not None:
            dst = surgery.SurgeryContext(new_q)
            img = surgery.psi_add_point_boundary(alg, args.edge, parse_expression(args.expr, alg, m), dst)
            out.append(f"image = {img}")
        return EXIT_OK
    data = surgery.add_point_unmarked(q, args.hole)
    new_q, d, e, f, point = data
    out.append(f"new point {point}; new edges {d} {e} {f}")
    out.append(format_surface(new_q).rstrip("\n"))
    if args.expr is not None:
        img, _ = surgery.psi_add_point_unmarked(alg, args.hole, parse_expression(args.expr, alg, m), data)
        out.append(f"image = {img}")
    return EXIT_OK


def cmd_verify(args, out):
    m = _mod(args)
    if args.suite and args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}")
    passed = failed = 0
    for chk, ok, detail in verify.run_checks(m, args.suite, args.seed):
        out.append(verify.format_line(chk, ok, detail))
        passed += ok
        failed += not ok
    out.append(f"{passed} passed, {failed} failed")
    return EXIT_OK if not failed else EXIT_FAIL


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skeintorus", description="Exact quantum torus computations for marked surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_mod(sp):
        sp.add_argument("--mod", type=int, metavar="M", help="work at a primitive M-th root of unity v")
        return sp

    sp = sub.add_parser("vmatrix", help="print the vertex matrix")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_vmatrix)

    sp = sub.add_parser("center", help="check the center of the skein torus")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_center)

    sp = sub.add_parser("flip", help="flip an inner edge")
    sp.add_argument("file")
    sp.add_argument("--edge", required=True)
    sp.set_defaults(func=cmd_flip)

    sp = with_mod(sub.add_parser("transfer", help="push an element through a flip"))
    sp.add_argument("file")
    sp.add_argument("--edge", required=True)
    sp.add_argument("--expr", required=True)
    sp.set_defaults(func=cmd_transfer)

    sp = with_mod(sub.add_parser("cheb", help="Chebyshev polynomials"))
    sp.add_argument("action", choices=["expand", "poly"])
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_cheb)

    sp = with_mod(sub.add_parser("frobenius", help="Frobenius map and its compatibility with flips"))
    sp.add_argument("--file", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--expr")
    sp.set_defaults(func=cmd_frobenius)

    sp = sub.add_parser("surgery", help="surgery algebra")
    ss = sp.add_subparsers(dest="action", required=True)
    s1 = with_mod(ss.add_parser("mul", help="multiply expressions left to right"))
    s1.add_argument("file")
    s1.add_argument("exprs", nargs="+")
    s2 = with_mod(ss.add_parser("plug", help="glue a disk into an unmarked component"))
    s2.add_argument("file")
    s2.add_argument("--hole", required=True)
    s2.add_argument("--expr")
    s3 = with_mod(ss.add_parser("addpoint", help="add a marked point"))
    s3.add_argument("file")
    s3.add_argument("--edge")
    s3.add_argument("--hole")
    s3.add_argument("--expr")
    for s in (s1, s2, s3):
        s.set_defaults(func=cmd_surgery)

    sp = with_mod(sub.add_parser("verify", help="run the identity suite"))
    sp.add_argument("--suite")
    sp.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out: List[str] = []
    try:
        status = args.func(args, out)
    except (SkeinTorusError, UsageError, KeyError, ValueError, OSError) as exc:
        for line in out:
            print(line, file=stdout)
        msg = f"unknown name {exc.args[0]!r}" if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=stderr)
        return EXIT_USAGE
    for line in out:
        print(line, file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
