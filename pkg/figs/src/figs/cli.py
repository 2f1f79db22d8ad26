"""Command line: figs <fig-id> --in a.csv[,b.csv] --out figure.png"""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureSpec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="figs", description="Render figures from ergokit sweep tables."
    )
    parser.add_argument("figure", choices=FIGURE_IDS)
    parser.add_argument("--in", dest="inputs", required=True,
                        help="comma-separated input CSV/JSON paths")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(sys.argv[1:] if argv is None else argv)
    spec = FigureSpec(
        figure=args.figure,
        inputs=tuple(p for p in args.inputs.split(",") if p),
        output=args.out,
        title=args.title,
    )
    try:
        render(spec)
    except (ValueError, OSError, KeyError) as exc:
        print(f"figs: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {spec.output}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
