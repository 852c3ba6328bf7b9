"""Command-line interface: ``cidc <command> ...``.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 resource limit,
4 verification or certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO

from . import __version__
from .boundary import BoundaryError, enumerate_boundaries
from .counting import ENGINES, count
from .embedding import flower_count_check
from .generators import FAMILIES
from .graph import CubicMultipole, GraphError, NotCubicError
from .io import (
    ParseError,
    parse_graph6,
    read_graph6_stream,
    read_multipole_stream,
    write_graph6,
    write_multipole,
    write_rotation,
)
from .lp import LPError, lp_to_json, run_cycle_lp
from .reductions import (
    PLANAR_BASE,
    ReductionError,
    certificate_from_json,
    certificate_to_json,
    certify_planar_bound,
    meets_planar_target,
    verify_certificate,
)
from .strands import ResourceLimitError

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _open_in(path: str) -> TextIO:
    if path == "-":
        return sys.stdin
    try:
        return open(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_graphs(path: str, fmt: str) -> list[CubicMultipole]:
    with _open_in(path) as fh:
        if fmt == "g6":
            return [parse_graph6(line) for line in read_graph6_stream(fh)]
        return list(read_multipole_stream(fh))


def _ratio(n: int, nu: int) -> Fraction:
    return Fraction(nu * 2, 2 ** (n // 2))


# -- count -----------------------------------------------------------------------------


def cmd_count(args: argparse.Namespace) -> int:
    graphs = _read_graphs(args.input, args.format)
    for g in graphs:
        res = count(g, args.engine, workers=args.workers)
        print(res.value)
        print(f"engine {res.engine}, n = {g.n}, {res.elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK


# -- scan ------------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRecord:
    index: int
    n: int
    nu: int

    @property
    def ratio(self) -> Fraction:
        return _ratio(self.n, self.nu)


def _scan_one(job: tuple[int, str, str]) -> tuple[int, int, int] | tuple[int, str]:
    index, line, engine = job
    try:
        g = parse_graph6(line)
    except (ParseError, GraphError) as exc:
        return index, str(exc)
    return index, g.n, int(count(g, engine).value)


def scan_records(lines: Iterable[str], engine: str = "auto", workers: int = 1) -> Iterator[ScanRecord | tuple[int, str]]:
    """Count every graph6 line; results come back in input order."""
    jobs = [(i, line, engine) for i, line in enumerate(read_graph6_stream(lines))]
    if workers <= 1:
        results: Iterable = map(_scan_one, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_scan_one, jobs, chunksize=4)
    try:
        for r in results:
            if len(r) == 2:
                yield r  # type: ignore[misc]
            else:
                yield ScanRecord(*r)  # type: ignore[misc]
    finally:
        if workers > 1:
            pool.shutdown()


def cmd_scan(args: argparse.Namespace) -> int:
    out = open(args.csv, "w") if args.csv else sys.stdout
    total = skipped = 0
    best: ScanRecord | None = None
    with _open_in(args.input) as fh:
        try:
            for rec in scan_records(fh, args.engine, args.workers):
                if isinstance(rec, tuple):
                    skipped += 1
                    print(f"warning: skipping record {rec[0]}: {rec[1]}", file=sys.stderr)
                    continue
                total += 1
                out.write(f"{rec.n},{rec.nu}\n")
                if best is None or rec.ratio < best.ratio:
                    best = rec
        finally:
            if out is not sys.stdout:
                out.close()
    summary = f"{total} graphs"
    if skipped:
        summary += f", {skipped} skipped"
    if best is not None:
        r = best.ratio
        summary += f"; min ratio {r.numerator}/{r.denominator} (approx {float(r):.4f}) at index {best.index}"
    print(summary, file=sys.stderr)
    return EXIT_OK


# -- certificates ------------------------------------------------------------------------


def cmd_certify(args: argparse.Namespace) -> int:
    graphs = _read_graphs(args.input, args.format)
    if len(graphs) != 1:
        raise UsageError(f"certify expects exactly one graph, got {len(graphs)}")
    g = graphs[0]
    try:
        cert = certify_planar_bound(g, use_triangle=args.triangles)
    except ReductionError as exc:
        raise VerificationFailure(f"no certificate: {exc}") from None
    data = certificate_to_json(cert)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
    b = cert.bound
    e = g.n - 2
    target4 = PLANAR_BASE ** e
    print(f"bound {b.numerator}/{b.denominator}")
    print(f"target (5/2)^({e}/4) (approx {float(PLANAR_BASE) ** (e / 4):.4f})")
    ok = meets_planar_target(g.n, b)
    b4 = b ** 4
    print(
        f"check bound^4 = {b4.numerator}/{b4.denominator} >= (5/2)^{e} = "
        f"{target4.numerator}/{target4.denominator}: {'ok' if ok else 'FAILED'}"
    )
    print(f"steps {len(cert.steps())}, leaves {len(cert.leaves())}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args: argparse.Namespace) -> int:
    with _open_in(args.input) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    cert = certificate_from_json(data)
    verdict = verify_certificate(cert)
    print("VALID" if verdict.ok else verdict.reason)
    return EXIT_OK if verdict.ok else EXIT_VERIFY


# -- boundary, LP, generators, flowers -------------------------------------------------


def cmd_boundaries(args: argparse.Namespace) -> int:
    bs = enumerate_boundaries(args.k)
    print(len(bs))
    if args.list:
        for b in bs:
            print(b)
    return EXIT_OK


def cmd_lp(args: argparse.Namespace) -> int:
    res = run_cycle_lp(args.cycle, args.mode)
    opt = res.optimum
    opt_txt = str(opt.numerator) if opt.denominator == 1 else f"{opt.numerator}/{opt.denominator}"
    status = "certified" if res.certified == opt else "not certified"
    print(f"optimum = {opt_txt} ({status}); factor {res.c4}")
    ys = ", ".join(str(y) for y in res.dual.multipliers)
    print(f"variables {res.lp.num_variables}, constraints {res.lp.num_constraints}; dual ({ys})")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(lp_to_json(res.lp, res.dual), fh, indent=1)
            fh.write("\n")
    if not res.holds:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    try:
        g = FAMILIES[args.family](args.param)
    except TypeError:
        raise UsageError(f"family {args.family} needs --param") from None
    if args.format == "g6":
        print(write_graph6(g))
    elif args.format == "multipole":
        sys.stdout.write(write_multipole(g))
    else:
        sys.stdout.write(write_rotation(g.rot))
    return EXIT_OK


def cmd_flower(args: argparse.Namespace) -> int:
    res = flower_count_check(args.k)
    print(
        f"outer-fixed CiDCs: {res.count} (bound {res.bound}: {'ok' if res.bound_ok else 'FAILED'}; "
        f"formula: {'ok' if res.formula_ok else 'FAILED'})"
    )
    return EXIT_OK if res.bound_ok and res.formula_ok else EXIT_VERIFY


# -- entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cidc", description="Count and certify circuit double covers of cubic graphs.")
    ap.add_argument("--version", action="version", version=f"cidc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="count circuit double covers")
    p.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
    p.add_argument("--engine", choices=ENGINES, default="auto")
    p.add_argument("--format", choices=("g6", "multipole"), default="g6")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("scan", help="count a graph6 stream and write n,nu CSV")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--csv", help="output file (default: stdout)")
    p.add_argument("--engine", choices=ENGINES, default="auto")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("certify", help="build a planar lower-bound certificate")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=("g6", "multipole"), default="g6")
    p.add_argument("--mode", choices=("planar-bound",), default="planar-bound")
    p.add_argument("--out", help="write the certificate JSON here")
    p.add_argument("--triangles", action="store_true", help="contract triangles directly")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="replay a certificate JSON")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("boundaries", help="count (and list) boundaries of size k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_boundaries)

    p = sub.add_parser("lp", help="solve and certify a cycle-reduction LP")
    p.add_argument("--cycle", type=int, choices=(4, 5), required=True)
    p.add_argument("--mode", choices=("planar", "all"), default="planar")
    p.add_argument("--json", help="write the LP and its dual here")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("gen", help="print a generated graph")
    p.add_argument("--family", required=True)
    p.add_argument("--param", type=int)
    p.add_argument("--format", choices=("g6", "multipole", "rotation"), default="multipole")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("flower", help="outer-fixed cover count of the k-flower")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_flower)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cidc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, NotCubicError, json.JSONDecodeError) as exc:
        print(f"cidc: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"cidc: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationFailure as exc:
        print(f"cidc: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (GraphError, BoundaryError, LPError, ValueError) as exc:
        print(f"cidc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
