"""Per-polynomial classification: Littlewood / Newman multiple existence.

Pipeline: drop the cyclotomic part (it never changes the answer for these
two digit sets, except Phi_1 for Newman), apply the Newman necessary
conditions, then decide on the noncyclotomic part. Verdicts are memoised on
irreducible factors and on whole noncyclotomic parts; a "no" on any factor
settles the product, a "yes" on every factor does not.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..polyz.core import IntPoly
from ..polyz.factor import UnsupportedDegreeError, factor_noncyclotomic, mahler_measure
from ..polyz.structure import cyclotomic_split, has_nonneg_real_root
from ..roots import RootIsolationError, RootProfile, isolate_roots
from ..search.digits import DigitSet
from ..search.engine import Found, Inconclusive, NoMultiple, SearchOptions, decide

TARGETS = ("littlewood", "newman")
PARTITION_DEGREE_CAP = 11
FACTOR_CAP_FOR_STRUCTURE = 16
CLASSIFY_NODE_CAP = 12_000_000


class Tri(str, enum.Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


class Prefilter(str, enum.Enum):
    PASS = "pass"
    FAIL_REAL_ROOT = "fail_real_root"
    FAIL_ANNULUS = "fail_annulus"


class Structure(str, enum.Enum):
    C = "C"
    F1 = "F1"
    F2 = "F2"
    M = "M"
    OTHER = "other"  # only reachable for inputs outside the Borwein range


@dataclass(frozen=True)
class ClassRecord:
    poly: IntPoly
    noncyclo: IntPoly
    structure: Structure
    in_L: Optional[Tri]
    in_N: Optional[Tri]
    mahler: Optional[float] = None
    notes: tuple = ()

    def verdict(self, target: str) -> Optional[Tri]:
        return self.in_L if target == "littlewood" else self.in_N


def digit_set(target: str) -> DigitSet:
    if target == "littlewood":
        return DigitSet.littlewood()
    if target == "newman":
        return DigitSet.newman()
    raise ValueError(f"unknown target {target!r}")


# -- Newman necessary conditions ----------------------------------------------


def _at_least_tau(x: Fraction) -> bool:
    # x >= (1+sqrt5)/2  <=>  x >= 1 and x^2 - x - 1 >= 0
    return x >= 1 and x * x - x - 1 >= 0


def _at_most_inv_tau(x: Fraction) -> bool:
    # 0 <= x <= (sqrt5-1)/2  <=>  x^2 + x - 1 <= 0
    return x * x + x - 1 <= 0


def newman_prefilter(p: IntPoly, profile: Optional[RootProfile] = None) -> Prefilter:
    """Cheap certificates that p divides no Newman polynomial.

    Roots of Newman polynomials are never nonnegative reals and lie in the
    open annulus 1/tau < |z| < tau. The annulus is checked first, so a
    root such as 2 reports the annulus. A pass proves nothing.
    """
    if p.degree < 1:
        return Prefilter.PASS
    if profile is None:
        profile = isolate_roots(p)
    for d in profile.disks:
        lo, hi = d.modulus_bounds()
        if _at_least_tau(lo) or _at_most_inv_tau(hi):
            return Prefilter.FAIL_ANNULUS
    if has_nonneg_real_root(p):
        return Prefilter.FAIL_REAL_ROOT
    return Prefilter.PASS


# -- memo -----------------------------------------------------------------------


class VerdictCache:
    """Shared memo: concurrent readers, one writer at a time."""

    def __init__(self):
        self._lock = threading.Lock()
        self._verdicts: dict = {}
        self._factors: dict = {}
        # (target, coeffs) -> (delta, nodes) for every search that found a witness
        self.found_stats: dict = {}
        self.decide_calls = 0

    def get(self, target: str, f: IntPoly):
        return self._verdicts.get((target, f.coeffs))

    def put(self, target: str, f: IntPoly, value):
        with self._lock:
            self._verdicts.setdefault((target, f.coeffs), value)

    def factors(self, f: IntPoly):
        hit = self._factors.get(f.coeffs)
        if hit is None:
            try:
                hit = tuple(factor_noncyclotomic(f))
            except UnsupportedDegreeError:
                hit = ()
            with self._lock:
                self._factors.setdefault(f.coeffs, hit)
        return hit

    def items(self):
        return dict(self._verdicts), dict(self._factors), dict(self.found_stats)

    def merge(self, state):
        verdicts, factors, stats = state
        with self._lock:
            for k, v in verdicts.items():
                self._verdicts.setdefault(k, v)
            for k, v in factors.items():
                self._factors.setdefault(k, v)
            for k, v in stats.items():
                self.found_stats.setdefault(k, v)

    def __len__(self):
        return len(self._verdicts)


def default_options() -> SearchOptions:
    return SearchOptions(exclude_unimodular=True, traversal="bfs", node_cap=CLASSIFY_NODE_CAP)


def _from_verdict(v) -> tuple[Tri, str]:
    if isinstance(v, Found):
        return Tri.YES, f"witness degree {v.degree}"
    if isinstance(v, NoMultiple):
        return Tri.NO, f"graph exhausted ({v.nodes_explored} nodes)"
    return Tri.INCONCLUSIVE, f"inconclusive: {v.reason}"


def _direct(f: IntPoly, target: str, opts: SearchOptions, cache: VerdictCache) -> tuple[Tri, str]:
    if target == "newman":
        pf = newman_prefilter(f)
        if pf is not Prefilter.PASS:
            return Tri.NO, pf.value
    cache.decide_calls += 1
    try:
        v = decide(f, digit_set(target), opts)
    except RootIsolationError:
        v = Inconclusive("precision_cap", 0)
    if isinstance(v, Found):
        with cache._lock:
            cache.found_stats.setdefault((target, f.coeffs), (v.delta, v.nodes_explored))
    return _from_verdict(v)


def noncyclo_verdict(N: IntPoly, target: str, opts: Optional[SearchOptions] = None,
                     cache: Optional[VerdictCache] = None) -> tuple[Tri, str]:
    """Verdict for a monic, cyclotomic-free N, using the factor-level memo."""
    opts = opts or default_options()
    cache = cache if cache is not None else VerdictCache()
    hit = cache.get(target, N)
    if hit is not None:
        return hit
    facs = cache.factors(N)
    result = None
    if len(facs) > 1 or (facs and facs[0][1] > 1):
        for f, _ in facs:
            fv, why = noncyclo_verdict(f, target, opts, cache)
            if fv is Tri.NO:
                result = (Tri.NO, f"factor {f} has none ({why})")
                break
    if result is None:
        result = _direct(N, target, opts, cache)
    cache.put(target, N, result)
    return result


def partition_structure(p: IntPoly, cache: Optional[VerdictCache] = None) -> Structure:
    if p.degree > PARTITION_DEGREE_CAP:
        raise UnsupportedDegreeError(
            f"the four-way partition is only exhaustive up to degree {PARTITION_DEGREE_CAP}"
        )
    N = cyclotomic_split(p if p.lc > 0 else -p).noncyclo
    return _structure(N, cache)


def _structure(N: IntPoly, cache: Optional[VerdictCache]) -> Structure:
    if N.degree < 1:
        return Structure.C
    facs = cache.factors(N) if cache is not None else tuple(factor_noncyclotomic(N))
    if len(facs) == 1 and facs[0][1] == 1:
        return Structure.F1
    if len(facs) == 2 and facs[0][1] == facs[1][1] == 1:
        return Structure.F2
    if len(facs) == 1 and facs[0][1] == 2:
        return Structure.M
    return Structure.OTHER


def classify_polynomial(p: IntPoly, targets=TARGETS, opts: Optional[SearchOptions] = None,
                        cache: Optional[VerdictCache] = None, mahler: bool = False) -> ClassRecord:
    if not p:
        raise ValueError("zero polynomial")
    if p.coeffs[0] == 0:
        raise ValueError("p(0) must be nonzero")
    for t in targets:
        digit_set(t)
    opts = opts or default_options()
    cache = cache if cache is not None else VerdictCache()
    notes = []
    q = p if p.lc > 0 else -p
    split = cyclotomic_split(q)
    N = split.noncyclo
    if N.degree <= FACTOR_CAP_FOR_STRUCTURE:
        structure = _structure(N, cache)
    else:
        structure = Structure.OTHER
    verdicts: dict = {}
    if abs(p.lc) != 1:
        # a multiple with leading digit +-1 would need a unit leading coefficient
        for t in targets:
            verdicts[t] = Tri.NO
        notes.append("leading coefficient is not a unit")
    elif N.degree < 1:
        if "littlewood" in targets:
            verdicts["littlewood"] = Tri.YES
        if "newman" in targets:
            verdicts["newman"] = Tri.YES if p(1) != 0 else Tri.NO
            if p(1) == 0:
                notes.append("newman: p(1) = 0")
        notes.append("cyclotomic")
    else:
        for t in targets:
            if t == "newman" and p(1) == 0:
                verdicts[t] = Tri.NO
                notes.append("newman: p(1) = 0")
                continue
            v, why = noncyclo_verdict(N, t, opts, cache)
            verdicts[t] = v
            notes.append(f"{t}: {why}")
    m = mahler_measure(p) if mahler else None
    return ClassRecord(p, N, structure, verdicts.get("littlewood"), verdicts.get("newman"),
                       m, tuple(notes))

