"""Command-line interface.  Every report is a JSON object on stdout.

Elements are 1-based in all input files and reports.  Region ids are the
0-based ids printed by ``color --describe``; region 0 is unbounded.
Exit codes: 0 ok, 1 input error, 2 resource cap, 3 invariant violation.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .algebra import TernaryQuasigroup, builtin_ktq, check_latin, check_ktq, load_ktq
from .braidknot import build_diagram, parse_braid
from .census import enumerate_ktq
from .errors import InputError, InvariantError, KTQError
from .homology import DEFAULT_CAP, ComplexSpec, TruncatedComplex

SCHEMA_VERSION = 1
LAYER_CONVENTION = "p left layers C_0..C_{p-1}, base C_p, k right layers C_{p+1}..C_{p+k}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _report(**fields):
    return {"schema_version": SCHEMA_VERSION, **fields}


def _resolve_ktq(ref, check_axioms=False):
    path = Path(ref)
    if not path.exists() and ref in ("five", "six"):
        T = builtin_ktq(ref)
        if check_axioms and check_ktq(T) is not None:
            raise InputError(f"built-in table {ref} is not a KTQ")
        return T
    return load_ktq(path, check_axioms=check_axioms)


def _one_based(seq):
    return [v + 1 for v in seq]


def _color(T, v, what):
    if not 1 <= v <= T.size:
        raise InputError(f"{what} {v} outside 1..{T.size}")
    return v - 1


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_check(args):
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {args.file}: {exc}") from None
    if not isinstance(data, dict) or "cube" not in data:
        raise InputError('KTQ JSON needs "size" and "cube" fields')
    cube = [[[v - 1 for v in row] for row in plane] for plane in data["cube"]]
    bad = check_latin(cube)
    if bad is not None:
        return _report(latin=False, ktq=False,
                       violation={"kind": "latin", "direction": bad.direction,
                                  "line": _one_based(bad.line), "value": bad.value + 1})
    T = TernaryQuasigroup(cube, validate=False)
    if "size" in data and data["size"] != T.size:
        raise InputError(f"declared size {data['size']} but cube has size {T.size}")
    bad = check_ktq(T)
    if bad is not None:
        return _report(latin=True, ktq=False,
                       violation={"kind": bad.axiom, "quad": _one_based(bad.quad)})
    return _report(latin=True, ktq=True, size=T.size)


def cmd_census(args):
    workers = args.threads if args.threads is not None else (os.cpu_count() or 1)
    res = enumerate_ktq(args.size, up_to_iso=not args.no_iso, limit=args.limit,
                        timeout=args.timeout, workers=workers)
    out = _report(size=args.size, up_to_iso=res.up_to_iso, count=res.count,
                  complete=res.complete, seconds=round(res.elapsed, 3))
    if not args.count_only:
        out["cubes"] = [[[[v + 1 for v in row] for row in plane] for plane in cube]
                        for cube in res.cubes]
    return out


def cmd_homology(args):
    T = _resolve_ktq(args.ktq)
    spec = ComplexSpec(T, args.p, args.k, normalized=not args.unnormalized)
    res = TruncatedComplex(spec, cap=args.cap).homology(args.n)
    return _report(n=args.n, p=args.p, k=args.k, normalized=spec.normalized,
                   betti=res.betti, torsion=list(res.torsion))


def _constraints(args, T, D):
    base = {}
    for item in args.fix or ():
        try:
            r, v = item.split("=")
            r, v = int(r), int(v)
        except ValueError:
            raise InputError(f"--fix expects region=color, got {item!r}") from None
        if not 0 <= r < D.regions:
            raise InputError(f"no region {r}; diagram has {D.regions}")
        base[r] = _color(T, v, "color")
    seeds = None
    if args.long_path is not None:
        try:
            a, b = (int(s) for s in args.long_path.split(","))
        except ValueError:
            raise InputError(f"--long-path expects a,b, got {args.long_path!r}") from None
        seed = _color(T, args.layer_seeds, "layer seed") if args.layer_seeds is not None else None
        pinned, seeds = D.long_knot_constraints(_color(T, a, "color"), _color(T, b, "color"),
                                                seed, seed, args.p, args.k)
        for r, v in pinned.items():
            if base.get(r, v) != v:
                raise InputError(f"region {r} is fixed twice with different colors")
            base[r] = v
    elif args.layer_seeds is not None:
        seeds = [_color(T, args.layer_seeds, "layer seed")] * (args.p + args.k)
    return base, seeds


def _diagram(args):
    return build_diagram(parse_braid(args.braid), mode=args.mode, strands=args.strands)


def cmd_color(args):
    D = _diagram(args)
    if args.describe:
        return _report(diagram=D.describe())
    T = _resolve_ktq(args.ktq)
    base, seeds = _constraints(args, T, D)
    if args.p or args.k:
        lcs = D.enumerate_layered(T, args.p, args.k, base, seeds)
        out = _report(p=args.p, k=args.k, layers=LAYER_CONVENTION, count=len(lcs))
        if not args.count_only:
            out["colorings"] = [[_one_based(layer) for layer in lc.layers] for lc in lcs]
        return out
    cols = D.enumerate_colorings(T, base)
    out = _report(count=len(cols))
    if not args.count_only:
        out["colorings"] = [_one_based(c) for c in cols]
    return out


def cmd_classify(args):
    T = _resolve_ktq(args.ktq)
    D = _diagram(args)
    base, seeds = _constraints(args, T, D)
    lcs = D.enumerate_layered(T, args.p, args.k, base, seeds)
    C = TruncatedComplex(ComplexSpec(T, args.p, args.k), cap=args.cap)
    n = args.p + args.k + 1
    cycles = []
    for lc in lcs:
        z = D.cycle(lc)
        if not C.is_cycle(n, z):
            raise InvariantError("a coloring cycle has nonzero boundary")
        cycles.append(z)
    return _report(p=args.p, k=args.k, degree=n, layers=LAYER_CONVENTION,
                   colorings=len(lcs), partition=C.classify(n, cycles))


# ----------------------------------------------------------------------

def _diagram_args(sp, need_ktq):
    sp.add_argument("--ktq", required=need_ktq, help="KTQ JSON file, or 'five' / 'six'")
    sp.add_argument("--braid", required=True, help='comma separated word, e.g. "1,-2,1"')
    sp.add_argument("--strands", type=int)
    sp.add_argument("--mode", choices=("closed", "long"), default="closed")
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--fix", action="append", metavar="REGION=COLOR")
    sp.add_argument("--long-path", metavar="A,B")
    sp.add_argument("--layer-seeds", type=int, metavar="X")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)


def build_parser():
    parser = _Parser(prog="ktq", description="Ternary quasigroup homology and knot colorings.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("check", help="verify the Latin and nesting conditions")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("census", help="enumerate KTQs of a given size")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--no-iso", action="store_true", help="count labeled cubes")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--timeout", type=float)
    sp.add_argument("--threads", type=int)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("homology", help="truncated homology group")
    sp.add_argument("--ktq", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--unnormalized", action="store_true")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--threads", type=int, help="accepted for symmetry; SNF is single-threaded")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("color", help="region colorings of a braid closure or long knot")
    _diagram_args(sp, need_ktq=False)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--describe", action="store_true", help="dump the region structure")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("classify", help="partition coloring cycles by homology class")
    _diagram_args(sp, need_ktq=True)
    sp.set_defaults(func=cmd_classify)
    return parser


def run(argv=None):
    """Run one command; returns ``(exit_code, report)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "color" and not args.describe and not args.ktq:
            raise InputError("color needs --ktq unless --describe is given")
        if getattr(args, "p", 0) < 0 or getattr(args, "k", 0) < 0:
            raise InputError("p and k must be nonnegative")
        out = args.func(args)
    except KTQError as exc:
        return exc.exit_code, _report(error={"type": type(exc).__name__, "message": str(exc),
                                             "exit_code": exc.exit_code})
    return 0, out


def main(argv=None):
    code, out = run(argv)
    json.dump(out, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
