"""Family sweeps and the count tables built from them."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional

from ..polyz.core import IntPoly, format_poly, reciprocal
from ..polyz.factor import mahler_measure
from ..polyz.structure import has_nonneg_real_root
from ..search.engine import SearchOptions
from .families import FamilySpec, enumerate_family
from .pipeline import (
    TARGETS,
    ClassRecord,
    Structure,
    Tri,
    VerdictCache,
    classify_polynomial,
    default_options,
)

log = logging.getLogger(__name__)


@dataclass
class FamilyResult:
    spec: FamilySpec
    records: list = field(default_factory=list)

    def select(self, pred) -> list:
        return [r for r in self.records if pred(r)]


@dataclass
class CountRow:
    degree: int
    total: int
    C: int = 0
    F1: int = 0
    F2: int = 0
    M: int = 0
    other: int = 0
    L_minus_N: int = 0
    N_minus_L: int = 0
    L_and_N: int = 0
    not_L: int = 0
    not_N: int = 0
    neither: int = 0
    inconclusive: int = 0

    @property
    def poisoned(self) -> bool:
        return self.inconclusive > 0


def _chunk(args):
    polys, targets, opts, mahler = args
    cache = VerdictCache()
    recs = [classify_polynomial(p, targets, opts, cache, mahler) for p in polys]
    return recs, cache.items()


def classify_family(spec: FamilySpec, opts: Optional[SearchOptions] = None,
                    cache: Optional[VerdictCache] = None, workers: int = 1,
                    targets=TARGETS, mahler: bool = False,
                    progress: Optional[Callable[[int, int], None]] = None) -> FamilyResult:
    """Classify every member of a family; the memo is shared across the sweep.

    With ``workers > 1`` the family is cut into chunks handled by separate
    processes, each with a private memo that is merged back at the end.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    opts = opts or default_options()
    cache = cache if cache is not None else VerdictCache()
    polys = list(enumerate_family(spec))
    out = FamilyResult(spec)
    if workers == 1:
        for i, p in enumerate(polys):
            out.records.append(classify_polynomial(p, targets, opts, cache, mahler))
            if progress is not None:
                progress(i + 1, len(polys))
        return out
    size = max(1, len(polys) // (workers * 4))
    chunks = [(polys[i:i + size], targets, opts, mahler) for i in range(0, len(polys), size)]
    # progress callbacks do not cross process boundaries
    opts_plain = SearchOptions(opts.delta_schedule, opts.node_cap, opts.depth_cap,
                               opts.exclude_unimodular, opts.traversal, opts.reduce_cyclotomic)
    chunks = [(c[0], targets, opts_plain, mahler) for c in chunks]
    done = 0
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for recs, state in ex.map(_chunk, chunks):
            out.records.extend(recs)
            cache.merge(state)
            done += len(recs)
            if progress is not None:
                progress(done, len(polys))
    return out


def count_row(result: FamilyResult) -> CountRow:
    recs = result.records
    row = CountRow(result.spec.degree, len(recs))
    for r in recs:
        setattr(row, r.structure.value if r.structure is not Structure.OTHER else "other",
                getattr(row, r.structure.value if r.structure is not Structure.OTHER else "other") + 1)
        if r.in_L is Tri.INCONCLUSIVE or r.in_N is Tri.INCONCLUSIVE:
            row.inconclusive += 1
            continue
        if r.in_L is Tri.YES and r.in_N is Tri.NO:
            row.L_minus_N += 1
        elif r.in_L is Tri.NO and r.in_N is Tri.YES:
            row.N_minus_L += 1
        elif r.in_L is Tri.YES and r.in_N is Tri.YES:
            row.L_and_N += 1
    # second table via inclusion-exclusion on the four-way decomposition
    row.not_L = row.total - row.L_minus_N - row.L_and_N
    row.not_N = row.total - row.N_minus_L - row.L_and_N
    row.neither = row.total - row.L_minus_N - row.N_minus_L - row.L_and_N
    if row.inconclusive:
        log.warning("degree %d: %d inconclusive members, counts are lower bounds",
                    row.degree, row.inconclusive)
    return row


COUNT_COLUMNS = ("degree", "total", "L_minus_N", "N_minus_L", "L_and_N",
                 "not_L", "not_N", "neither")
PARTITION_COLUMNS = ("degree", "total", "C", "F1", "F2", "M")


def rows_to_csv(rows: Iterable[CountRow], columns=COUNT_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(columns) + ["inconclusive"])
    for r in rows:
        w.writerow([getattr(r, c) for c in columns] + [r.inconclusive])
    return buf.getvalue()


def rows_to_json(rows: Iterable[CountRow]) -> list:
    out = []
    for r in rows:
        d = asdict(r)
        d["poisoned"] = r.poisoned
        out.append(d)
    return out


def listing(polys: Iterable[IntPoly]) -> list[dict]:
    """Set listing with reciprocals marked by ``reciprocal_of``."""
    polys = list(polys)
    first: dict = {}
    out = []
    for p in polys:
        rec = reciprocal(p)
        src = first.get(rec.coeffs) if rec != p else None
        out.append({"poly": format_poly(p),
                    "reciprocal_of": format_poly(src) if src is not None else None})
        first.setdefault(p.coeffs, p)
    return out


def record_to_json(r: ClassRecord) -> dict:
    return {
        "poly": format_poly(r.poly),
        "noncyclo": format_poly(r.noncyclo),
        "structure": r.structure.value,
        "in_L": r.in_L.value if r.in_L is not None else None,
        "in_N": r.in_N.value if r.in_N is not None else None,
        "mahler": r.mahler,
        "notes": list(r.notes),
    }


def mahler_screen(records: Iterable[ClassRecord], cutoff: float) -> list[tuple[ClassRecord, float]]:
    """Members without nonnegative real roots, with no Newman multiple and
    Mahler measure below ``cutoff``, smallest measure first."""
    if cutoff <= 1:
        return []
    out = []
    for r in records:
        if r.in_N is not Tri.NO or has_nonneg_real_root(r.poly):
            continue
        m = r.mahler if r.mahler is not None else mahler_measure(r.poly)
        if m < cutoff:
            out.append((r, m))
    out.sort(key=lambda rm: (rm[1], rm[0].poly.coeffs))
    return out


def delta_histogram(cache: VerdictCache, target: Optional[str] = None) -> list[dict]:
    """Searches that found a witness, binned by the delta of the successful pass.

    One entry per delta value: how many searches succeeded there and the
    total and largest node counts of those passes.
    """
    bins: dict = {}
    for (t, _), (delta, nodes) in cache.found_stats.items():
        if target is not None and t != target:
            continue
        b = bins.setdefault(delta, {"delta": float(delta), "count": 0, "nodes_total": 0, "nodes_max": 0})
        b["count"] += 1
        b["nodes_total"] += nodes
        b["nodes_max"] = max(b["nodes_max"], nodes)
    return [bins[k] for k in sorted(bins, reverse=True)]


def dumps(obj) -> str:
    return json.dumps(obj, indent=1)
