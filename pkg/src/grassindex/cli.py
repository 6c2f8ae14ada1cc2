"""Command line: index, table, relations, verify-numeric.

Exit codes: 0 success, 1 usage error, 2 consistency or tolerance failure,
3 resource exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Sequence

from .kernel import (
    IndexConsistencyError,
    IndexReport,
    compute_index,
    kernel_generators,
    theorem_bounds,
    theorem_exact,
)
from .numeric import verify_numeric

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_RESOURCE = 0, 1, 2, 3
THREADS_ENV = "GRASSINDEX_THREADS"

log = logging.getLogger("grassindex")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_n_list(text: str) -> list[int]:
    """'1..8', '2,4,8' or mixtures such as '1..4,8'.  Ranges are inclusive."""
    out: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            if ".." in chunk:
                a, b = chunk.split("..", 1)
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise UsageError(f"empty range {chunk!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(chunk))
        except ValueError:
            raise UsageError(f"bad n-list entry {chunk!r}") from None
    if not out:
        raise UsageError("n-list is empty")
    if min(out) < 1:
        raise UsageError("every n must be at least 1")
    return sorted(set(out))


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grassindex", description="Z2-index of the Grassmannian G(2n, n) by exact GF(2) algebra.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("text", "json", "csv")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    sp = sub.add_parser("index", help="index of one Grassmannian")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--degree-cap", type=_positive)
    sp.add_argument("--certificates", action="store_true", help="emit witness covectors for c^d outside the ideal")
    sp.add_argument("--threads", type=_positive, default=None)
    common(sp)

    sp = sub.add_parser("table", help="indices for a list of n")
    sp.add_argument("--n-list", required=True)
    sp.add_argument("--threads", type=_positive, default=None)
    common(sp)

    sp = sub.add_parser("relations", help="dump the kernel generators")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--degree", type=_positive)
    common(sp, ("text", "json"))

    sp = sub.add_parser("verify-numeric", help="check the equivariant maps on sampled projections")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--samples", type=_positive, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, ("json", "text"))
    return p


# --- rendering ----------------------------------------------------------------


def report_json(report: IndexReport) -> str:
    return json.dumps(report.to_dict(), indent=2)


def report_csv(reports: Sequence[IndexReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "d", "dimBasis", "dimIdeal", "cInIdeal", "hind"])
    for rep in reports:
        for r in rep.degrees:
            w.writerow([rep.n, r.d, r.dim_basis, r.dim_ideal, str(r.c_in_ideal).lower(), rep.hind])
    return buf.getvalue()


def report_text(report: IndexReport) -> str:
    f = report.flags
    lines = [f"G(2n, n) with n = {report.n}", f"{'d':>4} {'dim basis':>10} {'dim ideal':>10}  c^d in ideal"]
    for r in report.degrees:
        lines.append(f"{r.d:>4} {r.dim_basis:>10} {r.dim_ideal:>10}  {'yes' if r.c_in_ideal else 'no'}")
    lines.append(f"hind = {report.hind}")
    if f.get("truncated"):
        lines.append(f"truncated at degree {f['degreeCap']}: lower bound only")
    verdict = "ok" if f["theoremBounds"] else "VIOLATED"
    if f.get("truncated"):
        lines.append(f"hind <= {f['theoremUpper']}: {verdict}")
    else:
        lines.append(f"bounds {f['theoremLower']} <= hind <= {f['theoremUpper']}: {verdict}")
    if f.get("upperBoundKernel") is not None:
        lines.append(f"c^{2 * report.n} in ideal: {'ok' if f['upperBoundKernel'] else 'VIOLATED'}")
    if f.get("exploratory"):
        lines.append("exploratory: no proven exact value, bounds checked only")
    elif f.get("theoremExact") is not None:
        lines.append(f"matches proven value: {'ok' if f['theoremExact'] else 'VIOLATED'}")
    for r in report.degrees:
        if r.certificate is not None:
            lines.append(f"certificate d={r.d}: {' '.join(map(str, r.certificate))}")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands -----------------------------------------------------------------


def cmd_index(args) -> int:
    threads = args.threads or _default_threads()
    if args.degree_cap is not None and args.degree_cap > 2 * args.n:
        raise UsageError(f"--degree-cap must not exceed 2n = {2 * args.n}")
    try:
        report = compute_index(args.n, args.degree_cap, workers=threads, certificates=args.certificates)
        code = EXIT_OK
    except IndexConsistencyError as exc:
        print(str(exc), file=sys.stderr)
        report, code = exc.report, EXIT_FAIL
    render = {"json": lambda: report_json(report) + "\n", "csv": lambda: report_csv([report]),
              "text": lambda: report_text(report)}[args.format]
    _emit(render(), args.output)
    return code


def divisor_violations(hinds: dict[int, int]) -> list[tuple[int, int]]:
    """Pairs (d, n) with d | n in the table but hind(n) < hind(d)."""
    return [(d, n) for n in hinds for d in hinds if d < n and n % d == 0 and hinds[n] < hinds[d]]


def cmd_table(args) -> int:
    ns = parse_n_list(args.n_list)
    threads = args.threads or _default_threads()
    reports, code = [], EXIT_OK
    for n in ns:
        try:
            reports.append(compute_index(n, workers=threads))
        except IndexConsistencyError as exc:
            print(str(exc), file=sys.stderr)
            reports.append(exc.report)
            code = EXIT_FAIL
    hinds = {r.n: r.hind for r in reports}
    bad = divisor_violations(hinds)
    if bad:
        print(f"divisibility monotonicity violated for (d, n) pairs {bad}", file=sys.stderr)
        code = EXIT_FAIL
    rows = []
    for r in reports:
        lower, upper = theorem_bounds(r.n)
        exact = theorem_exact(r.n)
        rows.append({"n": r.n, "hind": r.hind, "theoremLower": lower, "theoremUpper": upper,
                     "match": None if exact is None else r.hind == exact,
                     "exploratory": exact is None})
    if args.format == "json":
        text = json.dumps({"rows": rows, "divisibilityMonotone": not bad}, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: ("" if v is None else str(v).lower() if isinstance(v, bool) else v)
                        for k, v in row.items()})
        text = buf.getvalue()
    else:
        lines = [f"{'n':>4} {'hind':>5} {'lower':>6} {'upper':>6}  match"]
        for row in rows:
            match = "exploratory" if row["exploratory"] else ("yes" if row["match"] else "NO")
            lines.append(f"{row['n']:>4} {row['hind']:>5} {row['theoremLower']:>6} {row['theoremUpper']:>6}  {match}")
        lines.append(f"divisibility monotone: {'yes' if not bad else 'NO'}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return code


def cmd_relations(args) -> int:
    gens = kernel_generators(args.n)
    if args.degree is not None and args.degree > gens.top:
        raise UsageError(f"--degree must not exceed 2n = {gens.top}")
    degrees = [args.degree] if args.degree else list(range(1, gens.top + 1))
    if args.format == "json":
        payload = {"n": args.n, "generators": [
            {"d": d, "relation": str(gens[d]), "terms": [str(t) for t in gens[d]]} for d in degrees]}
        text = json.dumps(payload, indent=2) + "\n"
    elif args.degree:
        text = f"{gens[args.degree]}\n"
    else:
        text = "".join(f"g{d} = {gens[d]}\n" for d in degrees)
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify_numeric(args) -> int:
    summary = verify_numeric(args.n, args.samples, args.seed)
    if args.format == "json":
        text = json.dumps(summary.to_dict(), indent=2) + "\n"
    else:
        text = "".join(f"{k}: {v}\n" for k, v in summary.to_dict().items())
    _emit(text, args.output)
    return EXIT_OK if summary.passed else EXIT_FAIL


COMMANDS = {"index": cmd_index, "table": cmd_table, "relations": cmd_relations,
            "verify-numeric": cmd_verify_numeric}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"grassindex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryError:
        print("grassindex: out of memory", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
