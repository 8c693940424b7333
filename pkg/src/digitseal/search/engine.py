"""Exploration of the remainder graph.

Vertices are remainders R modulo the monic polynomial P, stored as
coefficient tuples of length deg P; the edge labelled d goes from R to
X*R + d mod P. A path from the constant a_n (a nonzero digit) to 0 spells
the digits of a multiple of P, highest power first. Only remainders passing
the bound test of :mod:`.rem` are expanded, which keeps the graph finite
when P has no root on the unit circle.
"""

from __future__ import annotations

import logging
from array import array
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Union

from ..polyz.core import IntPoly
from ..polyz.structure import cyclotomic_split
from ..roots import RootIsolationError, RootProfile, profile_for
from .digits import DigitSet
from .rem import RemChecker, UnimodularUnresolvedError, _as_fraction
from .witness import extend_with_cyclotomic, verify_witness

log = logging.getLogger(__name__)

DEFAULT_SCHEDULE = tuple(Fraction(95 - 5 * i, 100) for i in range(20))
DEFAULT_NODE_CAP = 50_000_000
PROGRESS_EVERY = 1_000_000

REASON_NODE_CAP = "node_cap"
REASON_PRECISION = "precision_cap"
REASON_UNIMODULAR = "unimodular_unresolved"
REASON_DEPTH_CAP = "depth_cap"
REASON_SCHEDULE = "schedule_incomplete"


def make_schedule(start=Fraction(95, 100), step=Fraction(5, 100)) -> tuple[Fraction, ...]:
    """start, start-step, ... down to and including 0."""
    start, step = _as_fraction(start), _as_fraction(step)
    if step <= 0:
        raise ValueError("delta step must be positive")
    if not 0 <= start < 1:
        raise ValueError("delta start must lie in [0, 1)")
    out = []
    d = start
    while d > 0:
        out.append(d)
        d -= step
    out.append(Fraction(0))
    return tuple(out)


@dataclass
class SearchOptions:
    delta_schedule: tuple = DEFAULT_SCHEDULE
    node_cap: int = DEFAULT_NODE_CAP
    depth_cap: Optional[int] = None
    exclude_unimodular: bool = False
    traversal: str = "dfs"
    reduce_cyclotomic: bool = True
    # called as progress(nodes, depth, delta) every PROGRESS_EVERY accepted nodes
    progress: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        sched = tuple(_as_fraction(d) for d in self.delta_schedule)
        if not sched:
            raise ValueError("empty delta schedule")
        if any(not 0 <= d < 1 for d in sched):
            raise ValueError("delta values must lie in [0, 1)")
        if any(a <= b for a, b in zip(sched, sched[1:])):
            raise ValueError("delta schedule must be strictly descending")
        self.delta_schedule = sched
        if self.node_cap < 1:
            raise ValueError("node_cap must be positive")
        if self.depth_cap is not None and self.depth_cap < 1:
            raise ValueError("depth_cap must be positive")
        if self.traversal not in ("dfs", "bfs"):
            raise ValueError("traversal must be 'dfs' or 'bfs'")


@dataclass(frozen=True)
class Found:
    witness: IntPoly
    leading_digit: int
    degree: int
    nodes_explored: int
    delta: Fraction = Fraction(0)
    digits: tuple = ()

    kind = "found"


@dataclass(frozen=True)
class NoMultiple:
    nodes_explored: int
    max_depth: int

    kind = "no_multiple"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    nodes_explored: int

    kind = "inconclusive"


Verdict = Union[Found, NoMultiple, Inconclusive]


# -- graph primitives ---------------------------------------------------------


def _tail(P: IntPoly) -> tuple[int, ...]:
    if P.degree < 1 or P.lc != 1:
        raise ValueError(f"P must be monic of positive degree, got {P}")
    return P.coeffs[:-1]


def _pad(R, n: int) -> tuple[int, ...]:
    c = R.coeffs if isinstance(R, IntPoly) else tuple(R)
    if len(c) > n:
        if any(c[n:]):
            raise ValueError("remainder degree must be below deg P")
        c = c[:n]
    return c + (0,) * (n - len(c))


def _step_tuple(state: tuple, d: int, tail: tuple) -> tuple:
    top = state[-1]
    if top:
        base = [-top * tail[0]] + [s - top * p for s, p in zip(state[:-1], tail[1:])]
    else:
        base = [0] + list(state[:-1])
    base[0] += d
    return tuple(base)


def step(R, d: int, P: IntPoly) -> IntPoly:
    """X*R + d reduced modulo the monic P."""
    tail = _tail(P)
    return IntPoly(_step_tuple(_pad(R, len(tail)), d, tail))


def _key(state: tuple):
    """Compact hashable key for a state.

    Packed 16-bit or 64-bit bytes when the coefficients fit, the tuple
    itself otherwise. The two packings differ in length and bytes never
    equal tuples, so the encoding is injective.
    """
    try:
        return array("h", state).tobytes()
    except OverflowError:
        try:
            return array("q", state).tobytes()
        except OverflowError:
            return state


def _witness(digits) -> IntPoly:
    # digits are highest power first
    return IntPoly(tuple(reversed(digits)))


@dataclass
class _Pass:
    found: Optional[tuple] = None
    nodes: int = 0
    max_depth: int = 0
    capped: Optional[str] = None


def _explore(start, D, tail, accept, opts: SearchOptions) -> _Pass:
    if opts.traversal == "bfs":
        return _explore_bfs(start, D, tail, accept, opts)
    return _explore_dfs(start, D, tail, accept, opts)


def _explore_dfs(start, D, tail, accept, opts) -> _Pass:
    res = _Pass()
    n = len(tail)
    zero = (0,) * n
    digits = tuple(D)
    ndig = len(digits)
    cap = opts.node_cap
    depth_cap = opts.depth_cap
    progress = opts.progress
    t_rest = tail[1:]
    t0 = tail[0]

    # keys of expanded states; with a depth cap, key -> best depth seen
    visited = {_key(start): 0} if depth_cap is not None else {_key(start)}
    rejected = set()
    res.nodes = 1
    path = []  # digits chosen below the start
    # frame: [base list for successors (without digit), next digit index]
    stack = []

    def push(state):
        top = state[-1]
        if top:
            base = (-top * t0,) + tuple(s - top * p for s, p in zip(state[:-1], t_rest))
        else:
            base = (0,) + state[:-1]
        stack.append([base, 0])

    push(start)
    while stack:
        frame = stack[-1]
        depth = len(path) + 1  # depth of the children of this frame
        if frame[1] >= ndig or (depth_cap is not None and depth > depth_cap):
            stack.pop()
            if path:
                path.pop()
            continue
        d = digits[frame[1]]
        frame[1] += 1
        base = frame[0]
        child = (base[0] + d,) + base[1:]
        if child == zero:
            res.found = tuple(path) + (d,)
            res.max_depth = max(res.max_depth, depth)
            return res
        key = _key(child)
        if key in rejected:
            continue
        if depth_cap is None:
            seen = 0 if key in visited else None
        else:
            seen = visited.get(key)
        if seen is not None and (depth_cap is None or seen <= depth):
            continue
        if seen is None:
            if not accept(child):
                rejected.add(key)
                continue
            res.nodes += 1
            if res.nodes > cap:
                res.capped = REASON_NODE_CAP
                return res
            if progress is not None and res.nodes % PROGRESS_EVERY == 0:
                progress(res.nodes, depth)
        if depth_cap is None:
            visited.add(key)
        else:
            visited[key] = depth
        if depth > res.max_depth:
            res.max_depth = depth
        path.append(d)
        push(child)
    return res


def _explore_bfs(start, D, tail, accept, opts) -> _Pass:
    res = _Pass()
    n = len(tail)
    zero = (0,) * n
    parent = {_key(start): None}  # key -> (parent key, digit)
    rejected = set()
    queue = deque([(start, 0)])
    res.nodes = 1
    while queue:
        state, depth = queue.popleft()
        if opts.depth_cap is not None and depth >= opts.depth_cap:
            continue
        skey = _key(state)
        for d in D:
            child = _step_tuple(state, d, tail)
            if child == zero:
                digits = [d]
                k = skey
                while parent[k] is not None:
                    k, dd = parent[k]
                    digits.append(dd)
                res.found = tuple(reversed(digits))
                res.max_depth = max(res.max_depth, depth + 1)
                return res
            key = _key(child)
            if key in parent or key in rejected:
                continue
            if not accept(child):
                rejected.add(key)
                continue
            res.nodes += 1
            if res.nodes > opts.node_cap:
                res.capped = REASON_NODE_CAP
                return res
            if opts.progress is not None and res.nodes % PROGRESS_EVERY == 0:
                opts.progress(res.nodes, depth + 1)
            parent[key] = (skey, d)
            res.max_depth = max(res.max_depth, depth + 1)
            queue.append((child, depth + 1))
    return res


# -- search and decide --------------------------------------------------------


def _profile(P: IntPoly, profile: Optional[RootProfile]) -> RootProfile:
    return profile if profile is not None else profile_for(P)


def _bind_delta(cb, delta):
    return lambda nodes, depth: cb(nodes, depth, delta)


def search(P: IntPoly, D: DigitSet, leading: int, opts: Optional[SearchOptions] = None,
           profile: Optional[RootProfile] = None) -> Verdict:
    """Run the delta schedule from the start vertex ``leading``."""
    opts = opts or SearchOptions()
    tail = _tail(P)
    if tail[0] == 0:
        raise ValueError("P(0) must be nonzero")
    if leading == 0 or leading not in D:
        raise ValueError("leading digit must be a nonzero element of D")
    n = len(tail)
    try:
        profile = _profile(P, profile)
    except RootIsolationError:
        return Inconclusive(REASON_PRECISION, 0)
    start = (leading,) + (0,) * (n - 1)
    last = None
    for delta in opts.delta_schedule:
        try:
            checker = RemChecker(profile, D, delta, n, opts.exclude_unimodular)
        except UnimodularUnresolvedError:
            return Inconclusive(REASON_UNIMODULAR, 0)
        run_opts = opts
        if opts.progress is not None:
            run_opts = replace(opts, progress=_bind_delta(opts.progress, delta))
        if not checker(start):
            res = _Pass(nodes=0)
        else:
            res = _explore(start, D, tail, checker, run_opts)
        log.debug("P=%s leading=%d delta=%s nodes=%d", P, leading, delta, res.nodes)
        if res.found is not None:
            digits = (leading,) + res.found
            Q = _witness(digits)
            if not verify_witness(P, Q, D):
                raise AssertionError(f"search produced an invalid witness {Q} for {P}")
            return Found(Q, leading, Q.degree, res.nodes, delta, digits)
        if res.capped:
            return Inconclusive(res.capped, res.nodes)
        last = (delta, res, checker)
    delta, res, checker = last
    if delta != 0:
        return Inconclusive(REASON_SCHEDULE, res.nodes)
    if opts.depth_cap is not None and res.max_depth >= opts.depth_cap:
        return Inconclusive(REASON_DEPTH_CAP, res.nodes)
    return NoMultiple(res.nodes, res.max_depth)


def _leading_digits(D: DigitSet) -> tuple[int, ...]:
    if D.is_symmetric:
        return tuple(d for d in D.nonzero if d > 0)
    return D.nonzero


def _finish(P: IntPoly, D: DigitSet, verdict: Found, indices) -> Found:
    Q, k = verdict.witness.strip_x()
    for n in indices:
        Q = extend_with_cyclotomic(Q, n, D)
    if not verify_witness(P, Q, D):
        raise AssertionError(f"invalid witness {Q} for {P}")
    return Found(Q, Q.lc, Q.degree, verdict.nodes_explored, verdict.delta,
                 tuple(reversed(Q.coeffs)))


def _combine(verdicts: list) -> Verdict:
    inc = [v for v in verdicts if isinstance(v, Inconclusive)]
    nodes = sum(v.nodes_explored for v in verdicts)
    if inc:
        reasons = sorted({v.reason for v in inc})
        return Inconclusive("+".join(reasons), nodes)
    return NoMultiple(nodes, max(v.max_depth for v in verdicts))


def _reducible(n: int, D: DigitSet) -> bool:
    return (n >= 2 and D.contains_zero) or D.is_symmetric


def decide(P: IntPoly, D: DigitSet, opts: Optional[SearchOptions] = None) -> Verdict:
    """Does some nonzero D-polynomial vanish modulo P?"""
    opts = opts or SearchOptions()
    if not P:
        raise ValueError("P must be nonzero")
    if P.lc != 1:
        raise ValueError(f"P must be monic, got {P}")
    if P.coeffs[0] == 0:
        raise ValueError("P(0) must be nonzero")
    if P.degree == 0:
        d = min(_leading_digits(D), key=abs)
        Q = IntPoly.constant(d)
        return Found(Q, d, 0, 0, Fraction(0), (d,))

    core, indices = P, ()
    if opts.reduce_cyclotomic:
        split = cyclotomic_split(P)
        if split.indices:
            if 1 in split.indices and not D.is_symmetric and D.one_signed:
                # Q(1) is a sum of same-signed digits with nonzero leading term
                return NoMultiple(0, 0)
            kept = [n for n in split.indices if not _reducible(n, D)]
            indices = tuple(n for n in split.indices if _reducible(n, D))
            core = split.noncyclo
            for n in kept:
                core = core * _cyclo(n)
    if core.degree == 0:
        base = decide(core, D, opts)
        return _finish(P, D, base, indices)

    try:
        profile = profile_for(core)
    except RootIsolationError:
        return Inconclusive(REASON_PRECISION, 0)
    verdicts = []
    for a in _leading_digits(D):
        v = search(core, D, a, opts, profile)
        if isinstance(v, Found):
            return _finish(P, D, v, indices)
        verdicts.append(v)
    return _combine(verdicts)


def _cyclo(n):
    from ..polyz.structure import cyclotomic

    return cyclotomic(n)
