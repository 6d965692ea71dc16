"""figs command line: render error-bar figures and print CSV summaries."""

from __future__ import annotations

import argparse
import sys

from .core import FigsError, FigureSpec, format_summary_table, render, summarize


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="figs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render a line + errorbar figure")
    p_render.add_argument("--csv", required=True)
    p_render.add_argument("--x", required=True)
    p_render.add_argument("--series", required=True,
                          help="comma-separated CSV field names")
    p_render.add_argument("--inset", default="",
                          help="comma-separated fields for an inset panel")
    p_render.add_argument("--out", required=True)

    p_sum = sub.add_parser("summarize", help="print per-point mean/stddev table")
    p_sum.add_argument("--csv", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        if args.command == "render":
            spec = FigureSpec(
                csv=args.csv,
                x=args.x,
                series=tuple(s for s in args.series.split(",") if s),
                inset=tuple(s for s in args.inset.split(",") if s),
                out=args.out,
            )
            render(spec)
            print(f"wrote {args.out}")
        else:
            print(format_summary_table(summarize(args.csv)))
        return 0
    except FigsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
