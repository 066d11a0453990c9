"""Command line: braidnomial {predict,verify,galois,diagram} --equation n,p,g,r ..."""

from __future__ import annotations

import argparse
import json
import sys

from .braids import BraidWord
from .errors import BraidnomialError
from .report import RunConfig, SCHEMA, cmd_galois, cmd_predict, cmd_verify, dumps
from .svg import braid_svg, strand_labels


def _equation(text: str) -> tuple:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected four integers n,p,g,r")
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("expected four integers n,p,g,r")
    return vals


def _word(text: str) -> list:
    return [int(v) for v in text.split(",") if v.strip()] if text.strip() else []


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braidnomial", description="Braid monodromy of Y^(mn) - X^g Y^(mp) + X^r")
    ap.add_argument("mode", choices=["predict", "verify", "galois", "diagram"])
    ap.add_argument("--equation", type=_equation, help="total exponents n,p,g,r")
    ap.add_argument("--loop", default="all", help="zero|sigma|infinity|omega:<l>|all|composite:<list>")
    ap.add_argument("--terms", type=int, default=60, help="series terms for labeling")
    ap.add_argument("--delta", type=float, default=None, help="probe radius about branch points")
    ap.add_argument("--tol", type=float, default=1e-10, help="relative residual tolerance")
    ap.add_argument("--direction", type=float, default=None, help="projection angle in radians")
    ap.add_argument("--tracker-only", action="store_true", help="skip the predictor")
    ap.add_argument("--report", default=None, help="write the JSON report here")
    ap.add_argument("--svg", default=None, help="write an SVG braid diagram here")
    ap.add_argument("--cache", default=None, help="trace cache directory")
    ap.add_argument("--word", type=_word, default=None, help="diagram mode: braid word like 1,-2")
    ap.add_argument("--strands", type=int, default=None, help="diagram mode: strand count for --word")
    return ap


def _emit(report: dict, path: str | None) -> None:
    text = dumps(report)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _diagram(cfg: RunConfig) -> tuple:
    if cfg.word is not None:
        n = cfg.strands or (max((abs(x) for x in cfg.word), default=0) + 1)
        word, labels = BraidWord(n, tuple(cfg.word)), None
        report = {"schema": SCHEMA, "mode": "diagram", "word": list(word.letters), "strands": n, "warnings": []}
    else:
        from .equation import build_equation
        from .loops import parse_loop_selector
        from .predictor import predict

        eq = build_equation(*cfg.equation)
        prod = parse_loop_selector(cfg.loop, eq)
        if len(prod) != 1:
            raise BraidnomialError("diagram needs a single loop or composite")
        pred = predict(eq, prod[0])
        word = pred.artin.freely_reduced()
        labels = strand_labels(eq.n_total, eq.m, pred.position_labels)
        report = {"schema": SCHEMA, "mode": "diagram", "equation": list(eq.key()), "loop": cfg.loop,
                  "word": word.to_list(), "strands": word.strand_count, "warnings": []}
    svg = braid_svg(word, labels)
    if cfg.svg:
        with open(cfg.svg, "w") as fh:
            fh.write(svg)
    report["crossings"] = len(word.letters)
    return report, 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.mode != "diagram" and args.equation is None:
            raise BraidnomialError("--equation is required")
        if args.mode == "diagram" and args.word is None and args.equation is None:
            raise BraidnomialError("diagram needs --word or --equation")
        cfg = RunConfig(equation=args.equation, loop=args.loop, terms=args.terms, delta=args.delta,
                        tol=args.tol, direction=args.direction, tracker_only=args.tracker_only,
                        report=args.report, svg=args.svg, cache=args.cache, mode=args.mode,
                        word=args.word, strands=args.strands)
        handler = {"predict": cmd_predict, "verify": cmd_verify, "galois": cmd_galois, "diagram": _diagram}[args.mode]
        report, code = handler(cfg)
    except BraidnomialError as exc:
        code = exc.code if exc.code in (2, 3) else 3
        if type(exc).__name__ == "BraidnomialError":
            code = 2
        report = {"schema": SCHEMA, "mode": args.mode, "error": type(exc).__name__, "message": str(exc)}
    except ValueError as exc:
        code = 2
        report = {"schema": SCHEMA, "mode": args.mode, "error": type(exc).__name__, "message": str(exc)}
    _emit(report, args.report)
    return code


if __name__ == "__main__":
    sys.exit(main())
