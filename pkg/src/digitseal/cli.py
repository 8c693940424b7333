"""Command line interface.

Exit codes: 0 found / valid / complete, 1 no multiple / invalid witness,
2 inconclusive (or a table with inconclusive members, or a truncated graph),
3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from .classify.families import FAMILIES, FamilySpec
from .classify.pipeline import TARGETS, Tri, VerdictCache, classify_polynomial, default_options
from .classify.tables import (
    COUNT_COLUMNS,
    PARTITION_COLUMNS,
    classify_family,
    count_row,
    delta_histogram,
    listing,
    record_to_json,
    rows_to_csv,
    rows_to_json,
)
from .polyz.core import IntPoly, PolyParseError, format_coeffs, format_poly, parse_poly
from .polyz.structure import has_nonneg_real_root
from .search.digits import DigitSet
from .search.engine import Found, NoMultiple, SearchOptions, decide, make_schedule
from .search.graph import export_graph
from .search.rem import UnimodularUnresolvedError
from .search.witness import format_sign_string, load_fixture, parse_sign_string, verify_witness

EXIT_FOUND = 0
EXIT_NONE = 1
EXIT_INCONCLUSIVE = 2
EXIT_ERROR = 3

log = logging.getLogger("digitseal")


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# -- input helpers ------------------------------------------------------------


def _read_arg(text: str) -> str:
    """Inline text, or the contents of a file when written as @path."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return fh.read()
    return text


def read_poly(text: str) -> IntPoly:
    try:
        return parse_poly(_read_arg(text).strip())
    except PolyParseError as exc:
        raise CliError(str(exc)) from exc


def read_witness(text: str) -> IntPoly:
    """Sign string (first character = leading coefficient) or polynomial text."""
    body = text.strip()
    if body and set(body) <= set("+-\n\t\r "):
        return parse_sign_string(body)
    try:
        return parse_poly(body)
    except PolyParseError as exc:
        raise CliError(f"cannot read witness: {exc}") from exc


def normalise(P: IntPoly) -> IntPoly:
    if not P:
        raise CliError("the zero polynomial has no multiples to search for")
    if P.lc == -1:
        log.info("leading coefficient -1: searching for multiples of %s instead", format_poly(-P))
        P = -P
    if P.lc != 1:
        raise CliError(
            f"leading coefficient {P.lc} is not supported: only monic polynomials (or leading -1, "
            "which is negated) can be searched; a multiple with leading digit +-1 cannot exist "
            "for a primitive input with non-unit leading coefficient"
        )
    if P.degree >= 1 and P.coeffs[0] == 0:
        raise CliError("P(0) = 0: divide out the power of x first")
    return P


def digit_set(args) -> DigitSet:
    if args.custom is not None:
        try:
            return DigitSet.parse(args.custom)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    if args.newman:
        return DigitSet.newman()
    return DigitSet.littlewood()


def search_options(args, progress=None) -> SearchOptions:
    try:
        sched = make_schedule(Fraction(args.delta_start), Fraction(args.delta_step))
        return SearchOptions(
            delta_schedule=sched,
            node_cap=args.node_cap,
            depth_cap=args.depth_cap,
            exclude_unimodular=args.exclude_unimodular,
            traversal="bfs" if args.bfs else "dfs",
            progress=progress,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _progress(nodes, depth, delta):
    print(f"progress: {nodes} nodes, depth {depth}, delta {float(delta):.2f}", file=sys.stderr, flush=True)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- verdict rendering --------------------------------------------------------


def verdict_json(P: IntPoly, D: DigitSet, v) -> dict:
    out = {"poly": format_poly(P), "digits": list(D), "verdict": v.kind,
           "nodes_explored": v.nodes_explored}
    if isinstance(v, Found):
        out.update(
            witness=format_poly(v.witness),
            witness_coeffs=format_coeffs(v.witness),
            digit_string=",".join(str(d) for d in v.digits),
            leading_digit=v.leading_digit,
            degree=v.degree,
            delta=float(v.delta),
        )
    elif isinstance(v, NoMultiple):
        out["max_depth"] = v.max_depth
    else:
        out["reason"] = v.reason
    return out


def verdict_text(P: IntPoly, D: DigitSet, v) -> str:
    lines = [f"poly: {format_poly(P)}", f"digits: {D}"]
    if isinstance(v, Found):
        lines.append("verdict: found")
        lines.append(f"witness: {format_poly(v.witness)}")
        lines.append(f"coeffs: {format_coeffs(v.witness)}")
        if all(c in (-1, 1) for c in v.witness.coeffs):
            lines.append(f"signs: {format_sign_string(v.witness)}")
        else:
            lines.append(f"digit string: {','.join(str(d) for d in v.digits)}")
        lines.append(f"degree: {v.degree}")
        lines.append(f"delta: {float(v.delta):.2f}")
    elif isinstance(v, NoMultiple):
        lines.append("verdict: no multiple")
        lines.append(f"max depth: {v.max_depth}")
    else:
        lines.append(f"verdict: inconclusive ({v.reason})")
        if "unimodular" in v.reason:
            lines.append("hint: rerun with --exclude-unimodular")
    lines.append(f"nodes explored: {v.nodes_explored}")
    return "\n".join(lines) + "\n"


def _exit_for(v) -> int:
    if isinstance(v, Found):
        return EXIT_FOUND
    if isinstance(v, NoMultiple):
        return EXIT_NONE
    return EXIT_INCONCLUSIVE


# -- subcommands --------------------------------------------------------------


def cmd_decide(args) -> int:
    P = normalise(read_poly(args.poly))
    D = digit_set(args)
    opts = search_options(args, _progress if args.verbose else None)
    v = decide(P, D, opts)
    if args.format == "json":
        _emit(args, json.dumps(verdict_json(P, D, v), indent=1) + "\n")
    else:
        _emit(args, verdict_text(P, D, v))
    return _exit_for(v)


# the witness is always printed on Found; the alias exists for discoverability
cmd_witness = cmd_decide


def cmd_verify(args) -> int:
    P = read_poly(args.poly)
    if args.fixture:
        text = load_fixture(args.fixture)
    elif args.witness is not None:
        text = _read_arg(args.witness)
    else:
        raise CliError("give a witness (inline, @file) or --fixture NAME")
    Q = read_witness(text)
    D = digit_set(args)
    ok = verify_witness(P, Q, D)
    if args.format == "json":
        _emit(args, json.dumps({"poly": format_poly(P), "witness_degree": Q.degree,
                                "digits": list(D), "valid": ok}, indent=1) + "\n")
    else:
        _emit(args, f"{'valid' if ok else 'invalid'}: degree {Q.degree} witness for {format_poly(P)} over {D}\n")
    return EXIT_FOUND if ok else EXIT_NONE


def _classify_opts(args) -> SearchOptions:
    opts = default_options()
    if args.node_cap is not None:
        opts = SearchOptions(opts.delta_schedule, args.node_cap, None, True, opts.traversal)
    return opts


def _targets(args):
    return TARGETS if args.target == "both" else (args.target,)


def cmd_classify(args) -> int:
    opts = _classify_opts(args)
    cache = VerdictCache()
    targets = _targets(args)
    if args.family:
        if not args.degree:
            raise CliError("--family needs --degree")
        res = classify_family(FamilySpec(args.family, args.degree), opts, cache,
                              workers=args.workers, targets=targets, mahler=args.mahler)
        records = res.records
    else:
        if not args.polys:
            raise CliError("give polynomials or --family/--degree")
        records = []
        for s in args.polys:
            p = read_poly(s)
            if not p or p.coeffs[0] == 0:
                raise CliError(f"{s}: need p(0) != 0")
            records.append(classify_polynomial(p, targets, opts, cache, args.mahler))
    rows = [record_to_json(r) for r in records]
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=1) + "\n")
    elif args.format == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["poly", "noncyclo", "structure", "in_L", "in_N", "mahler", "notes"],
                           lineterminator="\n")
        w.writeheader()
        for r in rows:
            r = dict(r, notes="; ".join(r["notes"]))
            w.writerow(r)
        _emit(args, buf.getvalue())
    else:
        lines = []
        for r in rows:
            extra = f" mahler={r['mahler']:.9f}" if r["mahler"] is not None else ""
            lines.append(f"{r['poly']}  structure={r['structure']} L={r['in_L']} N={r['in_N']}{extra}")
        _emit(args, "\n".join(lines) + "\n")
    bad = any(Tri.INCONCLUSIVE in (r.in_L, r.in_N) for r in records)
    return EXIT_INCONCLUSIVE if bad else 0


def _is_quadrinomial(p: IntPoly) -> bool:
    return p.lc == 1 and sum(1 for c in p.coeffs if c) == 4


def cmd_tables(args) -> int:
    if args.max_degree < 1:
        raise CliError("--max-degree must be positive")
    opts = _classify_opts(args)
    cache = VerdictCache()
    rows, records = [], []
    for d in range(1, args.max_degree + 1):
        res = classify_family(FamilySpec("borwein", d), opts, cache, workers=args.workers)
        rows.append(count_row(res))
        records.extend(res.records)
        log.info("degree %d done", d)
    d = args.max_degree
    lists = {
        f"B_le{d}_not_L": listing(r.poly for r in records if r.in_L is Tri.NO),
        f"Bminus_le{d}_not_N": listing(
            r.poly for r in records if r.in_N is Tri.NO and not has_nonneg_real_root(r.poly)),
        f"quadrinomials_le{d}_not_L": listing(
            r.poly for r in records if r.in_L is Tri.NO and _is_quadrinomial(r.poly)),
    }
    if args.newman_degree:
        nres = classify_family(FamilySpec("newman", args.newman_degree), opts, cache,
                               workers=args.workers, targets=("littlewood",))
        lists[f"N_{args.newman_degree}_not_L"] = listing(r.poly for r in nres.records if r.in_L is Tri.NO)
        newman_bad = any(r.in_L is Tri.INCONCLUSIVE for r in nres.records)
    else:
        newman_bad = False
    doc = {"counts": rows_to_json(rows), "listings": lists, "delta_histogram": delta_histogram(cache)}
    poisoned = newman_bad or any(r.poisoned for r in rows)
    if args.out and os.path.isdir(args.out):
        with open(os.path.join(args.out, "counts.csv"), "w") as fh:
            fh.write(rows_to_csv(rows, COUNT_COLUMNS))
        with open(os.path.join(args.out, "partition.csv"), "w") as fh:
            fh.write(rows_to_csv(rows, PARTITION_COLUMNS))
        with open(os.path.join(args.out, "tables.json"), "w") as fh:
            json.dump(doc, fh, indent=1)
    elif args.format == "json":
        _emit(args, json.dumps(doc, indent=1) + "\n")
    elif args.format == "csv":
        _emit(args, rows_to_csv(rows, COUNT_COLUMNS) + "\n" + rows_to_csv(rows, PARTITION_COLUMNS))
    else:
        out = ["# counts", rows_to_csv(rows, COUNT_COLUMNS), "# partition", rows_to_csv(rows, PARTITION_COLUMNS)]
        for name, items in lists.items():
            out.append(f"# {name} ({len(items)})")
            for it in items:
                tag = f"   reciprocal of {it['reciprocal_of']}" if it["reciprocal_of"] else ""
                out.append(it["poly"] + tag)
            out.append("")
        out.append("# searches with a witness, by delta of the successful pass")
        out.append("delta,count,nodes_total,nodes_max")
        for b in doc["delta_histogram"]:
            out.append(f"{b['delta']:.2f},{b['count']},{b['nodes_total']},{b['nodes_max']}")
        _emit(args, "\n".join(out) + "\n")
    if poisoned:
        print("warning: some polynomials are inconclusive; affected counts are flagged", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return 0


def cmd_export_graph(args) -> int:
    P = normalise(read_poly(args.poly))
    D = digit_set(args)
    opts = search_options(args)
    try:
        g = export_graph(P, D, opts)
    except UnimodularUnresolvedError as exc:
        print(f"error: {exc}; rerun with --exclude-unimodular", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if args.format == "json":
        _emit(args, json.dumps(g.to_json(), indent=1) + "\n")
    else:
        _emit(args, g.to_dot())
    return EXIT_INCONCLUSIVE if g.truncated else 0


# -- parser -------------------------------------------------------------------


def _digit_flags(p, required=False):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--littlewood", action="store_true", help="digits {-1,1} (default)")
    g.add_argument("--newman", action="store_true", help="digits {0,1}")
    g.add_argument("--custom", metavar="LIST", help="comma separated digits, e.g. '-1,0,1'")


def _search_flags(p):
    p.add_argument("--delta-start", default="0.95", help="first delta of the schedule (default 0.95)")
    p.add_argument("--delta-step", default="0.05", help="delta decrement (default 0.05)")
    p.add_argument("--node-cap", type=int, default=50_000_000)
    p.add_argument("--depth-cap", type=int, default=None)
    p.add_argument("--exclude-unimodular", action="store_true",
                   help="drop roots that cannot be separated from |z| = 1 from the bounds")
    p.add_argument("--bfs", action="store_true", help="breadth-first search (shortest witness)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="digitseal", description=__doc__.split("\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="progress and info on stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, helptext in (("decide", cmd_decide, "decide whether a D-multiple exists"),
                               ("witness", cmd_witness, "like decide, always printing the witness")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("poly", help="polynomial, e.g. 'x^3-x+1' or '1,-1,0,1', or @file")
        _digit_flags(p)
        _search_flags(p)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write to this file instead of stdout")
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", help="check a witness")
    p.add_argument("poly")
    p.add_argument("witness", nargs="?", help="sign string, polynomial, or @file")
    p.add_argument("--fixture", help="use a packaged fixture, e.g. table_psl.txt")
    _digit_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="Littlewood/Newman verdicts for polynomials or a family")
    p.add_argument("polys", nargs="*")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--degree", type=int)
    p.add_argument("--target", choices=("both",) + TARGETS, default="both")
    p.add_argument("--mahler", action="store_true", help="also compute Mahler measures")
    p.add_argument("--node-cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tables", help="count tables and set listings for Borwein degrees 1..d")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--newman-degree", type=int, default=None,
                   help="also list Newman polynomials of this degree with no Littlewood multiple")
    p.add_argument("--node-cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="file, or an existing directory for counts.csv/partition.csv/tables.json")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("export-graph", help="write the delta = 0 remainder graph")
    p.add_argument("poly")
    _digit_flags(p)
    _search_flags(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_graph)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
