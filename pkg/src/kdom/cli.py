"""Command-line surface: set files, rendering, and the kdom commands.

Set files are line-oriented plain text ("kdom v1" magic, a "k m n count"
header, optional "# <flag>" lines, then one "i j" pair per line) so test
fixtures stay diffable.  Exit codes: 0 success, 1 verification negative,
2 input or domain error, 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .bounds import TABLE1_PAIRS, chang_bound, bijm_bound, comparison_table, cor_bound, fss_bound, new_bound
from .construction import ConstructionTrace, construct
from .errors import DomainError, KdomError, SetFileError
from .exact import DEFAULT_NODE_BUDGET, exact_gamma
from .gridmodel import GridDims, verify_domination
from .lattice import LatticePoint, Radius, VertexSet

MAGIC = "kdom v1"
KNOWN_FLAGS = ("projected", "no-corner-removal")


@dataclass(frozen=True)
class SetFile:
    """A dominating-set file: header (k, m, n, count), flags, points."""

    k: int
    m: int
    n: int
    points: VertexSet
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.k < 1 or self.m < 1 or self.n < 1:
            raise SetFileError(f"header values must be >= 1: k={self.k} m={self.m} n={self.n}")
        for f in self.flags:
            if f not in KNOWN_FLAGS:
                raise SetFileError(f"unknown flag {f!r}")
        if "projected" in self.flags:
            for (i, j) in self.points:
                if not (0 <= i < self.m and 0 <= j < self.n):
                    raise SetFileError(
                        f"point {i},{j} outside the {self.m}x{self.n} grid of a projected file"
                    )


def save_setfile(sf: SetFile) -> str:
    lines = [MAGIC, f"{sf.k} {sf.m} {sf.n} {len(sf.points)}"]
    for flag in KNOWN_FLAGS:
        if flag in sf.flags:
            lines.append(f"# {flag}")
    for (i, j) in sf.points:
        lines.append(f"{i} {j}")
    return "\n".join(lines) + "\n"


def load_setfile(text: str) -> SetFile:
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise SetFileError(f"missing magic line {MAGIC!r}")
    if len(lines) < 2:
        raise SetFileError("missing header line")
    header = lines[1].split()
    if len(header) != 4:
        raise SetFileError(f"header must be 'k m n count', got {lines[1]!r}")
    try:
        k, m, n, count = (int(x) for x in header)
    except ValueError as exc:
        raise SetFileError(f"non-integer header field: {exc}") from None
    flags = []
    body = []
    for line in lines[2:]:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            flag = line[1:].strip()
            if flag not in KNOWN_FLAGS:
                raise SetFileError(f"unknown flag {flag!r}")
            if flag not in flags:
                flags.append(flag)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SetFileError(f"expected 'i j', got {line!r}")
        try:
            body.append(LatticePoint(int(parts[0]), int(parts[1])))
        except ValueError:
            raise SetFileError(f"non-integer coordinate in {line!r}") from None
    if len(body) != count:
        raise SetFileError(f"header count {count} != {len(body)} body lines")
    if len(set(body)) != len(body):
        seen = set()
        dup = next(pt for pt in body if pt in seen or seen.add(pt))
        raise SetFileError(f"duplicate vertex {dup.i} {dup.j}")
    return SetFile(k=k, m=m, n=n, points=VertexSet.from_iterable(body), flags=tuple(flags))


def render_ascii(sf: SetFile, coverage: bool = False) -> str:
    """Rows printed north to south; '#' marks set points."""
    dims = GridDims(sf.m, sf.n)
    k = Radius(sf.k)
    uncovered = set()
    if coverage:
        report = verify_domination(dims, k, sf.points)
        uncovered = {(pt.i, pt.j) for pt in report.uncovered}
    rows = []
    for j in range(sf.n - 1, -1, -1):
        cells = []
        for i in range(sf.m):
            if LatticePoint(i, j) in sf.points:
                cells.append("#")
            elif coverage:
                cells.append("!" if (i, j) in uncovered else "+")
            else:
                cells.append(".")
        rows.append(" ".join(cells))
    return "\n".join(rows) + "\n"


def render_svg(sf: SetFile, diamonds: tuple[LatticePoint, ...] = ()) -> str:
    """Grid with the k-margin box in green, grid boundary in red."""
    cell = 20
    k, m, n = sf.k, sf.m, sf.n
    pad = cell

    def x(i):
        return pad + (i + k) * cell

    def y(j):
        return pad + (n - 1 + k - j) * cell

    width = 2 * pad + (m + 2 * k - 1) * cell
    height = 2 * pad + (n + 2 * k - 1) * cell
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(m):
        parts.append(
            f'<line x1="{x(i)}" y1="{y(n - 1)}" x2="{x(i)}" y2="{y(0)}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
    for j in range(n):
        parts.append(
            f'<line x1="{x(0)}" y1="{y(j)}" x2="{x(m - 1)}" y2="{y(j)}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
    parts.append(
        f'<rect x="{x(-k)}" y="{y(n - 1 + k)}" width="{(m + 2 * k - 1) * cell}" '
        f'height="{(n + 2 * k - 1) * cell}" fill="none" stroke="green" stroke-width="3"/>'
    )
    parts.append(
        f'<rect x="{x(0)}" y="{y(n - 1)}" width="{(m - 1) * cell}" '
        f'height="{(n - 1) * cell}" fill="none" stroke="red" stroke-width="2"/>'
    )
    for (i, j) in sf.points:
        parts.append(f'<circle cx="{x(i)}" cy="{y(j)}" r="5" fill="blue"/>')
    for (i, j) in diamonds:
        pts = f"{x(i + k)},{y(j)} {x(i)},{y(j + k)} {x(i - k)},{y(j)} {x(i)},{y(j - k)}"
        parts.append(f'<polygon points="{pts}" fill="none" stroke="red" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def trace_lines(trace: ConstructionTrace) -> list[str]:
    lines = [
        f"k={trace.k.k}",
        f"m={trace.dims.m}",
        f"n={trace.dims.n}",
        f"residue={trace.chosen_residue.value}",
        f"base_size={trace.base_size}",
        f"corner_removal={'yes' if trace.corner_removal_applied else 'no'}",
    ]
    if trace.corner_cases is not None:
        for ctx in trace.corner_cases:
            tag = ctx.corner.value
            slope = "none" if ctx.slope_l1 is None else str(ctx.slope_l1)
            lines.append(f"corner_{tag}_case={ctx.case.value}")
            lines.append(f"corner_{tag}_s={ctx.s.i},{ctx.s.j}")
            lines.append(f"corner_{tag}_z={ctx.z.i},{ctx.z.j}")
            lines.append(f"corner_{tag}_slope_l1={slope}")
    for pt in trace.removed:
        lines.append(f"removed={pt.i},{pt.j}")
    for src, dst in trace.shifted_pairs:
        lines.append(f"shift={src.i},{src.j}>{dst.i},{dst.j}")
    lines.append(f"projection_merged={trace.projection_merged}")
    lines.append(f"fallback_activations={trace.fallback_activations}")
    lines.append(f"final_size={trace.final_size}")
    return lines


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _threads_default() -> int:
    env = os.environ.get("KDOM_THREADS", "1")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def cmd_construct(args) -> int:
    if args.m < 1:
        print("m must be >= 1", file=sys.stderr)
        return 2
    if args.n < 1:
        print("n must be >= 1", file=sys.stderr)
        return 2
    if args.k < 1:
        print("k must be >= 1", file=sys.stderr)
        return 2
    dims = GridDims(args.m, args.n)
    k = Radius(args.k)
    pts, trace = construct(dims, k, enable_fallback_repair=args.fallback_repair)
    flags = ["projected"]
    if not trace.corner_removal_applied:
        flags.append("no-corner-removal")
    sf = SetFile(k=args.k, m=args.m, n=args.n, points=pts, flags=tuple(flags))
    _write(args.output, save_setfile(sf))
    if args.trace:
        _write(args.trace, "\n".join(trace_lines(trace)) + "\n")
    return 0


def cmd_verify(args) -> int:
    with open(args.setfile) as fh:
        sf = load_setfile(fh.read())
    k = Radius(args.k if args.k is not None else sf.k)
    report = verify_domination(GridDims(sf.m, sf.n), k, sf.points)
    if len(report.uncovered) == 0:
        print(f"dominating: {len(sf.points)} points cover {sf.m}x{sf.n} at k={k.k}")
        return 0
    print(f"NOT dominating: {len(report.uncovered)} uncovered vertices")
    for pt in report.uncovered:
        print(f"{pt.i} {pt.j}")
    return 1


def cmd_bound(args) -> int:
    k = Radius(args.k)
    fields = []
    try:
        fields.append(f"new={new_bound(args.m, args.n, k)}")
    except DomainError:
        fields.append("new=n/a (domain)")
    fields.append(f"cor={cor_bound(args.m, args.n, k)}")
    fields.append(f"fss={fss_bound(args.m, args.n, k)}")
    if args.k == 1:
        try:
            fields.append(f"chang={chang_bound(args.m, args.n)}")
        except DomainError:
            fields.append("chang=n/a (domain)")
    if args.k == 2:
        try:
            fields.append(f"bijm={bijm_bound(args.m, args.n)}")
        except DomainError:
            fields.append("bijm=n/a (domain)")
    print(" ".join(fields))
    return 0


def _parse_pairs(args) -> list[tuple[int, int]]:
    if args.pairs is not None:
        pairs = []
        if args.pairs.strip():
            for token in args.pairs.split(","):
                a, _, b = token.partition("x")
                pairs.append((int(a), int(b)))
        return pairs
    if args.range is not None:
        spec = args.range
        step = 2
        if ":" in spec:
            spec, step_text = spec.split(":")
            step = int(step_text)
        lo, _, hi = spec.partition("..")
        return [(m, m + 1) for m in range(int(lo), int(hi) + 1, step)]
    return list(TABLE1_PAIRS)


def cmd_table(args) -> int:
    k = Radius(args.k)
    pairs = _parse_pairs(args)
    rows = comparison_table(pairs, k, build=args.build)
    header = ["M", "N", "New Bound", "Old Bound"]
    if args.build:
        header.append("Constructed")
    out = []
    if args.csv:
        out.append(",".join(header))
        for r in rows:
            cells = [str(r.m), str(r.n),
                     "n/a" if r.new_bound is None else str(r.new_bound),
                     str(r.fss_bound)]
            if args.build:
                cells.append("n/a" if r.constructed_size is None else str(r.constructed_size))
            out.append(",".join(cells))
    else:
        out.append(f"# kdom table k={args.k}")
        widths = [4, 4, 10, 10, 12]
        out.append("".join(h.rjust(w) for h, w in zip(header, widths)))
        for r in rows:
            cells = [str(r.m), str(r.n),
                     "n/a" if r.new_bound is None else str(r.new_bound),
                     str(r.fss_bound)]
            if args.build:
                cells.append("n/a" if r.constructed_size is None else str(r.constructed_size))
            out.append("".join(c.rjust(w) for c, w in zip(cells, widths)))
    _write(args.output, "\n".join(out) + "\n")
    return 0


def cmd_exact(args) -> int:
    dims = GridDims(args.m, args.n)
    k = Radius(args.k)
    result = exact_gamma(dims, k, node_budget=args.budget)
    if result.time_budget_exceeded:
        lower = -(-dims.area // k.p)
        print(f"gamma>={lower} gamma<={result.gamma} budget exceeded "
              f"({result.nodes_explored} nodes)")
        return 3
    print(f"gamma={result.gamma}")
    if args.witness:
        for pt in result.witness:
            print(f"{pt.i} {pt.j}")
    return 0


def cmd_render(args) -> int:
    with open(args.setfile) as fh:
        sf = load_setfile(fh.read())
    if args.format == "ascii":
        _write(args.output, render_ascii(sf, coverage=args.coverage))
    else:
        diamonds = []
        for token in args.diamond or ():
            a, _, b = token.partition(",")
            diamonds.append(LatticePoint(int(a), int(b)))
        _write(args.output, render_svg(sf, tuple(diamonds)))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kdom",
        description="k-distance dominating sets of m x n grid graphs",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=_threads_default(),
        help="worker threads (default from KDOM_THREADS; evaluation is "
        "deterministic and currently sequential)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a dominating set")
    c.add_argument("-m", type=int, required=True)
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-k", type=int, required=True)
    c.add_argument("-o", "--output", default=None, help="set file (default stdout)")
    c.add_argument("--trace", default=None, help="write the construction trace here")
    c.add_argument("--fallback-repair", action="store_true",
                   help="enable the bounded local-search repair (off by default)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a set file for domination")
    v.add_argument("setfile")
    v.add_argument("--k", type=int, default=None, help="override the file's k")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bound", help="print the closed-form bounds")
    b.add_argument("-m", type=int, required=True)
    b.add_argument("-n", type=int, required=True)
    b.add_argument("-k", type=int, required=True)
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("table", help="bound comparison table")
    t.add_argument("--k", type=int, default=3)
    t.add_argument("--pairs", default=None, help='e.g. "51x52,53x54" (overrides --range)')
    t.add_argument("--range", default=None, help='e.g. "51..65:2", pairs (m, m+1)')
    t.add_argument("--csv", action="store_true")
    t.add_argument("--build", action="store_true", help="also run the construction per row")
    t.add_argument("-o", "--output", default=None)
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("exact", help="exact minimum for desk-scale grids")
    e.add_argument("-m", type=int, required=True)
    e.add_argument("-n", type=int, required=True)
    e.add_argument("-k", type=int, required=True)
    e.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                   help="search-node budget (deterministic)")
    e.add_argument("--witness", action="store_true", help="print the witness points")
    e.set_defaults(func=cmd_exact)

    r = sub.add_parser("render", help="draw a set file")
    r.add_argument("setfile")
    r.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    r.add_argument("--coverage", action="store_true", help="shade covered/uncovered cells")
    r.add_argument("--diamond", action="append", default=None,
                   help='outline the radius-k ball around "i,j" (svg, repeatable)')
    r.add_argument("-o", "--output", default=None)
    r.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("--threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (KdomError, OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
