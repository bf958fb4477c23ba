"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 bad input, 3 search guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import census, chroma, presets
from .design import (BlockDesign, DesignError, collinearity, parse_design,
                     read_graph_list, serialize, validate)
from .evaluate import FormError, FormSet, evaluate_full, parse_forms
from .gen import GenParams, GuardExceeded, generate, pipeline_filter
from .symmetry import design_aut_order, graph_aut_order

log = logging.getLogger("blockinv")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_designs(spec: str) -> list[BlockDesign]:
    """Preset name, then file path, then literal design text."""
    preset = presets.get_design(spec)
    path = Path(spec)
    if preset is not None:
        if path.exists():
            log.warning("%r is both a preset and a file; using the preset", spec)
        return [preset]
    if path.exists():
        with path.open() as fh:
            designs = list(read_graph_list(fh))
        if not designs:
            raise DesignError(f"{spec}: no designs found")
        return designs
    if any(ch.isdigit() for ch in spec) or "(" in spec:
        return [parse_design(spec)]
    raise DesignError(f"{spec!r} is not a preset, file or design")


def load_forms(args: argparse.Namespace) -> FormSet:
    if args.preset is not None:
        forms = presets.get_forms(args.preset)
        if forms is None:
            raise FormError(f"unknown form preset {args.preset!r}")
        fs = FormSet(forms)
    else:
        fs = parse_forms(Path(args.forms).read_text())
    if args.take is not None:
        if not 0 <= args.take <= len(fs):
            raise FormError(f"--take {args.take} outside 0..{len(fs)}")
        fs = fs.take(args.take)
    return fs


def _emit(args: argparse.Namespace, record: dict, plain: str) -> None:
    print(json.dumps(record, sort_keys=True) if args.json else plain)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_validate(args: argparse.Namespace) -> int:
    for d in load_designs(args.input):
        rep = validate(d)
        rec = {"points": d.num_points, "blocks": d.num_blocks, "block_size": d.block_size,
               "biregular": rep.is_biregular, "degrees": list(rep.observed_degrees),
               "repeated_vertices": rep.has_repeated_vertices,
               "repeated_blocks": rep.has_repeated_blocks}
        degree = rep.observed_degrees[0] if rep.is_biregular else "mixed"
        _emit(args, rec,
              f"points={d.num_points} blocks={d.num_blocks} block_size={d.block_size} "
              f"degree={degree} biregular={_yn(rep.is_biregular)} "
              f"repeated_vertices={_yn(rep.has_repeated_vertices)} "
              f"repeated_blocks={_yn(rep.has_repeated_blocks)}")
    return EXIT_OK


def cmd_chi(args: argparse.Namespace) -> int:
    for d in load_designs(args.input):
        g = collinearity(d)
        if args.report:
            rep = chroma.report(g, args.clique)
            rec = {"chi": rep.chi, "vertex_critical": rep.is_vertex_critical,
                   "max_clique": rep.max_clique_lower_bound}
            plain = (f"chi={rep.chi} vertex_critical={_yn(rep.is_vertex_critical)} "
                     f"max_clique={rep.max_clique_lower_bound}")
            if args.clique is not None:
                rec[f"has_clique_{args.clique}"] = rep.clique_found
                plain += f" has_clique_{args.clique}={_yn(bool(rep.clique_found))}"
            _emit(args, rec, plain)
        else:
            chi = chroma.chromatic_number(g)
            _emit(args, {"chi": chi}, str(chi))
    return EXIT_OK


def cmd_colorings(args: argparse.Namespace) -> int:
    if args.colors < 0:
        raise UsageError("--colors must be >= 0")
    if args.list and args.count_only:
        raise UsageError("--list and --count-only are exclusive")
    for d in load_designs(args.input):
        g = collinearity(d)
        if args.list:
            n = 0
            for col in chroma.iter_proper_colorings(g, args.colors):
                print(",".join(map(str, col)))
                n += 1
        else:
            n = chroma.count_proper_colorings(g, args.colors, parts=args.parts)
        _emit(args, {"colors": args.colors, "count": n}, str(n))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    if args.parts < 1:
        raise UsageError("--parts must be >= 1")
    forms = load_forms(args)
    for d in load_designs(args.input):
        res = evaluate_full(d, forms, parts=args.parts)
        value = res.value
        rec = {"raw": value, "colorings": res.colorings}
        if args.divisor is not None:
            if args.divisor == 0 or value % args.divisor:
                raise FormError(f"{value} is not divisible by {args.divisor}")
            value //= args.divisor
            rec["divisor"] = args.divisor
        rec["value"] = value
        _emit(args, rec, str(value))
    return EXIT_OK


def cmd_aut(args: argparse.Namespace) -> int:
    for d in load_designs(args.input):
        if args.collinearity:
            order = graph_aut_order(collinearity(d))
        else:
            order = design_aut_order(d)
        _emit(args, {"order": order, "of": "collinearity" if args.collinearity else "design"},
              str(order))
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    if args.what == "isobaric":
        v = census.count_weight_arrays(args.rows, args.cols, args.row_sum, args.col_sum)
        _emit(args, {"isobaric": v}, str(v))
    elif args.what == "total":
        v = census.count_total_monomials(args.vars, args.degree)
        _emit(args, {"total": v}, str(v))
    elif args.what == "cover-bound":
        v = census.covering_bound(args.m)
        _emit(args, {"cover_bound": v}, str(v))
    else:
        t = census.AHTriple(args.k, args.d, args.n)
        v = census.ah_codimension(t)
        _emit(args, {"codimension": v, "ah_ordinary": census.is_ah_ordinary(t), "N": t.N},
              str(v))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    params = GenParams(args.points, args.blocks, args.block_size, args.degree,
                       allow_repeated_blocks=not args.no_repeated_blocks)
    limit = None if args.unbounded else args.max_nodes
    for d in generate(params, max_nodes=limit, checkpoint_dir=args.checkpoint):
        text = serialize(d)
        if args.pipeline is None:
            _emit(args, {"design": text}, text)
        else:
            v = pipeline_filter(d, args.pipeline)
            _emit(args, {"design": text, "verdict": v.outcome, "chi": v.chi},
                  f"{v}\t{text}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON record per result")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="blockinv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="structural report")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("chi", parents=[common], help="chromatic number of the collinearity graph")
    s.add_argument("input")
    s.add_argument("--report", action="store_true",
                   help="also vertex-criticality and clique number")
    s.add_argument("--clique", type=int, help="with --report, test for a clique of this size")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("colorings", parents=[common], help="count proper colourings")
    s.add_argument("input")
    s.add_argument("--colors", type=int, required=True)
    s.add_argument("--count-only", action="store_true", help="print only the count (default)")
    s.add_argument("--list", action="store_true", help="print every colouring before the count")
    s.add_argument("--parts", type=int, default=1)
    s.set_defaults(func=cmd_colorings)

    s = sub.add_parser("eval", parents=[common], help="evaluate at a sum of powers")
    s.add_argument("input")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--forms", help="file with one comma-separated vector per line")
    src.add_argument("--preset", help="named form set, e.g. paper8")
    s.add_argument("--take", type=int, help="use only the first K forms")
    s.add_argument("--parts", type=int, default=1)
    s.add_argument("--divisor", type=int, help="divide the value exactly by D")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("aut", parents=[common], help="automorphism group order")
    s.add_argument("input")
    s.add_argument("--collinearity", action="store_true", help="of the collinearity graph")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("census", help="counting formulas")
    csub = s.add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = csub.add_parser("isobaric", parents=[common])
    c.add_argument("--rows", type=int, required=True)
    c.add_argument("--cols", type=int, required=True)
    c.add_argument("--row-sum", type=int, required=True)
    c.add_argument("--col-sum", type=int, required=True)
    c = csub.add_parser("total", parents=[common])
    c.add_argument("--vars", type=int, required=True)
    c.add_argument("--degree", type=int, required=True)
    c = csub.add_parser("cover-bound", parents=[common])
    c.add_argument("--m", type=int, required=True)
    c = csub.add_parser("ah", parents=[common])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("generate", parents=[common], help="isomorph-free design generation")
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--blocks", type=int, required=True)
    s.add_argument("--block-size", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--pipeline", type=int, metavar="TARGET",
                   help="run the viability pipeline with this many colours")
    s.add_argument("--no-repeated-blocks", action="store_true")
    s.add_argument("--max-nodes", type=int, default=200_000,
                   help="guard on partial designs examined (default 200000)")
    s.add_argument("--unbounded", action="store_true", help="disable the guard")
    s.add_argument("--checkpoint", metavar="DIR", help="store/resume finished levels here")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"blockinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"blockinv: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (DesignError, FormError, OSError, ValueError) as exc:
        print(f"blockinv: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
