"""Command-line interface: ``strata-pi1 <subcommand> ...``.

Exit codes: 0 success, 2 malformed input, 3 precondition violation,
4 numerical resolution failure.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys

from . import __version__
from .compositions import enumerate_omega
from .errors import InputError, StrataError
from .graph import build_dual_graph, graph_rank, to_dot, to_json
from .io import (
    dumps,
    path_from_json,
    path_to_json,
    presentation_from_json,
    presentation_to_json,
    read_json,
    simplified_to_json,
    theta_from_json,
    theta_to_json,
)
from .presentation import (
    classify_freeness,
    critical_presentation,
    free_product_split,
    pi1_compactified,
    presentation,
    split_points,
    stabilize,
)
from .presets import PRESETS, preset
from .simplify import abelianize, simplify
from .tracer import BISECT_TOL, export_zero_locus, synthesize, trace
from .words import Word


def _add_theta(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--theta", metavar="FILE", help='Theta JSON {"d", "compositions", "mode"}; "-" for stdin')
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in pattern set (needs --d)")
    p.add_argument("--d", type=int, help="degree for --preset")


def _theta(args):
    if args.theta is not None:
        return theta_from_json(read_json(args.theta))
    if args.d is None:
        raise InputError("--preset needs --d")
    return preset(args.preset, args.d)


def _presentation_input(args):
    if getattr(args, "input", None) is not None:
        return presentation_from_json(read_json(args.input))
    return presentation(_theta(args))


def cmd_closure(args) -> str:
    return dumps(theta_to_json(_theta(args)))


def cmd_enumerate(args) -> str:
    if args.d < 1:
        raise InputError("--d must be positive")
    comps = enumerate_omega(args.d, eq=args.eq, ge=args.ge)
    if args.format == "text":
        return "".join(f"{c}\n" for c in comps)
    return dumps({"d": args.d, "compositions": [list(c) for c in comps]})


def cmd_graph(args) -> str:
    g = build_dual_graph(args.d, subdivided=args.subdivided)
    if args.format == "dot":
        return to_dot(g)
    if args.format == "rank":
        return f"{graph_rank(g)}\n"
    return to_json(g)


def cmd_presentation(args) -> str:
    theta = _theta(args)
    if args.critical:
        pres = critical_presentation(theta)
    else:
        pres = presentation(theta, keep_dummies=args.keep_dummies)
    if args.format == "text":
        return pres.text() + "\n"
    return dumps(presentation_to_json(pres))


def _simplify_or_abelianize(args) -> str:
    pres = _presentation_input(args)
    simplified = simplify(pres)
    return dumps(simplified_to_json(simplified, abelianize(pres)))


def cmd_classify(args) -> str:
    theta = _theta(args)
    return dumps(
        {
            "d": theta.d,
            "classification": classify_freeness(theta),
            "pi1_compactified": pi1_compactified(theta),
            "split_points": split_points(theta),
        }
    )


def cmd_stabilize(args) -> str:
    return dumps(theta_to_json(stabilize(_theta(args), args.target)))


def cmd_split(args) -> str:
    split = free_product_split(_theta(args), args.d_prime)
    if split is None:
        return dumps({"split": None})
    return dumps(
        {
            "split": {
                "d_prime": split.d_prime,
                "low": presentation_to_json(split.low),
                "high": presentation_to_json(split.high),
            }
        }
    )


def cmd_trace(args) -> str:
    path = path_from_json(read_json(args.path))
    return str(trace(path, raw=args.raw, bisect_tol=args.bisect_tol)) + "\n"


def cmd_synthesize(args) -> str:
    word = Word.parse(args.word)
    return dumps(path_to_json(synthesize(word, args.d, args.samples_per_letter)))


def cmd_locus(args) -> str:
    path = path_from_json(read_json(args.path))
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["psi", "x"])
    for psi, x in export_zero_locus(path, args.resolution):
        writer.writerow([repr(psi), repr(x)])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    # argparse exits with 2 on usage errors, matching the malformed-input code
    parser = argparse.ArgumentParser(prog="strata-pi1", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="close a pattern set and print it as Theta JSON")
    _add_theta(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("enumerate", help="list Omega_<d], optionally filtered by reduced norm")
    p.add_argument("--d", type=int, required=True)
    f = p.add_mutually_exclusive_group()
    f.add_argument("--eq", type=int, help="keep reduced norm == EQ")
    f.add_argument("--ge", type=int, help="keep reduced norm >= GE")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="dual graph of the top cells and walls")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json", "rank"), default="dot")
    p.add_argument("--subdivided", action="store_true", help="keep walls as vertices")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("presentation", help="group presentation of the complement of Theta")
    _add_theta(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--keep-dummies", action="store_true", help="keep the trivial gamma(0,j) symbols")
    p.add_argument("--critical", action="store_true", help="tag as the degree d+1 critical-point variant")
    p.set_defaults(func=cmd_presentation)

    for name, help_text in (
        ("simplify", "Tietze-simplify a presentation"),
        ("abelianize", "abelian invariants of a presentation"),
    ):
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="FILE", help='presentation JSON; "-" for stdin')
        src.add_argument("--theta", metavar="FILE")
        src.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--d", type=int)
        p.set_defaults(func=_simplify_or_abelianize)

    p = sub.add_parser("classify", help="freeness criterion and compactified pi_1")
    _add_theta(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stabilize", help="push Theta to a higher degree of the same parity")
    _add_theta(p)
    p.add_argument("--target", type=int, required=True)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("split", help="free-product splitting of the presentation")
    _add_theta(p)
    p.add_argument("--d-prime", type=int, default=None, help="split level (default: smallest)")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("trace", help="word of a sampled loop of coefficient vectors")
    p.add_argument("--path", required=True, metavar="FILE")
    p.add_argument("--raw", action="store_true", help="do not reduce the word")
    p.add_argument(
        "--bisect-tol", type=float, default=BISECT_TOL, help=f"crossing parameter tolerance (default {BISECT_TOL:g})"
    )
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("synthesize", help="a loop realizing a reduced admissible word")
    p.add_argument("--word", required=True, help="e.g. 'w(0,0)+ w(1,1)+ w(0,2)- w(0,0)-'")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples-per-letter", type=int, default=12, help="default 12")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("locus", help="zero locus of a loop as CSV psi,x")
    p.add_argument("--path", required=True, metavar="FILE")
    p.add_argument("--resolution", type=int, default=400, help="psi samples (default 400)")
    p.set_defaults(func=cmd_locus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except StrataError as exc:
        print(f"strata-pi1: error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
