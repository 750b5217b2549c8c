import argparse
import sys

from ._version import __version__
from .reader import MalformedCsvError
from .render import DEFAULT_CONTOUR_LEVEL, PlotJob, render_heatmap


def _err(message: str) -> None:
    print(f"plotrender: {message}", file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotrender",
        description="render a sweep CSV grid as a heatmap PNG",
    )
    parser.add_argument("--version", action="version", version=f"plotrender {__version__}")
    parser.add_argument("csv", help="input CSV produced by the sweep tool")
    parser.add_argument("--quantity", required=True, help="numeric column to plot")
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--x-label", default="x")
    parser.add_argument("--y-label", default="y")
    parser.add_argument("--vmin", type=float, default=None, help="color range lower bound")
    parser.add_argument("--vmax", type=float, default=None, help="color range upper bound")
    parser.add_argument(
        "--contour",
        nargs="?",
        const="steering_s",
        default=None,
        metavar="COLUMN",
        help="overlay a level-set contour of COLUMN (default steering_s)",
    )
    parser.add_argument(
        "--contour-level",
        type=float,
        default=DEFAULT_CONTOUR_LEVEL,
        help="contour level (default 8/3)",
    )
    parser.add_argument("--cmap", default="viridis", help="matplotlib colormap name")
    parser.add_argument("--title", default=None)
    parser.add_argument("--dpi", type=int, default=100)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = PlotJob(
            csv_path=args.csv,
            quantity=args.quantity,
            out_path=args.out,
            x_label=args.x_label,
            y_label=args.y_label,
            vmin=args.vmin,
            vmax=args.vmax,
            contour_column=args.contour,
            contour_level=args.contour_level,
            cmap=args.cmap,
            title=args.title,
            dpi=args.dpi,
        )
    except ValueError as exc:
        _err(str(exc))
        return 2
    try:
        values = render_heatmap(job)
    except KeyError as exc:
        _err(str(exc.args[0]))
        return 2
    except MalformedCsvError as exc:
        _err(str(exc))
        return 1
    except OSError as exc:
        _err(str(exc))
        return 1
    print(
        f"wrote {job.out_path} ({values.shape[1]} x {values.shape[0]} cells)",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
