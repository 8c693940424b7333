"""Membership in the bounded remainder set.

A remainder R (deg R < deg P) is kept when, at every root a of P with
multiplicity e and every k < e,

    |R^(k)(a)| <= k! * (B - delta) / ||a| - 1|^(k+1).

:func:`in_rem` is the exact reference test: the root is only known up to a
certified disk, so both sides are enclosed in rational intervals and the
answer is three-valued. :class:`RemChecker` is the hot-path version used by
the graph search; it works in floats with a rigorous a-priori error bound
and falls back to the exact test (then to root refinement) when the float
enclosure cannot decide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from operator import mul

from ..polyz.core import IntPoly
from ..roots import CircleStatus, RootDisk, RootIsolationError, RootProfile, refine_once
from .digits import DigitSet


class UnimodularUnresolvedError(ValueError):
    """A root could not be separated from the unit circle and exclusion is off."""


class Membership(str, enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class RootBound:
    disk_index: int
    order: int
    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class Thresholds:
    bounds: tuple[RootBound, ...]
    delta: Fraction
    digit_bound: int
    excluded: tuple[int, ...]

    def value(self, j: int, k: int) -> Fraction:
        """Upper-rounded bound for root j, derivative order k."""
        for b in self.bounds:
            if b.disk_index == j and b.order == k:
                return b.hi
        raise KeyError((j, k))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _gap_bounds(disk: RootDisk) -> tuple[Fraction, Fraction]:
    mlo, mhi = disk.modulus_bounds()
    if disk.circle_status is CircleStatus.OUTSIDE:
        return mlo - 1, mhi - 1
    return 1 - mhi, 1 - mlo


def compute_thresholds(
    profile: RootProfile, digits: DigitSet, delta=0, exclude_unimodular: bool = False
) -> Thresholds:
    delta = _as_fraction(delta)
    if not 0 <= delta < 1:
        raise ValueError("delta must lie in [0, 1)")
    budget = digits.bound - delta
    bounds = []
    excluded = []
    for j, disk in enumerate(profile.disks):
        if disk.circle_status is CircleStatus.UNDECIDED:
            if not exclude_unimodular:
                raise UnimodularUnresolvedError(
                    f"root near {disk.center_complex:.6g} of {profile.poly} is not separated from |z| = 1"
                )
            excluded.append(j)
            continue
        glo, ghi = _gap_bounds(disk)
        if glo <= 0:
            raise AssertionError("decided root with nonpositive gap")
        for k in range(disk.multiplicity):
            num = math.factorial(k) * budget
            bounds.append(RootBound(j, k, num / ghi ** (k + 1), num / glo ** (k + 1)))
    return Thresholds(tuple(bounds), delta, digits.bound, tuple(excluded))


def _derivative_coeffs(coeffs, k: int) -> list[int]:
    return [math.perm(i, k) * c for i, c in enumerate(coeffs)][k:]


def _value_bounds(coeffs, k: int, disk: RootDisk) -> tuple[Fraction, Fraction]:
    """Rational enclosure of |R^(k)(a)| over every a in ``disk``."""
    dk = _derivative_coeffs(coeffs, k)
    while dk and dk[-1] == 0:
        dk.pop()
    if not dk:
        return Fraction(0), Fraction(0)
    a, b, s = disk.re_num, disk.im_num, disk.scale
    m = len(dk) - 1
    re, im = dk[m], 0
    for i in range(m - 1, -1, -1):
        re, im = re * a - im * b, re * b + im * a
        re += dk[i] << (s * (m - i))
    norm = re * re + im * im
    root = math.isqrt(norm)
    denom = 1 << (s * m)
    vlo = Fraction(root, denom)
    vhi = vlo if root * root == norm else Fraction(root + 1, denom)
    r = disk.radius
    if r == 0:
        return vlo, vhi
    _, u = disk.modulus_bounds()
    u -= r
    absd = [abs(c) for c in dk]
    major = lambda t: sum(c * t ** i for i, c in enumerate(absd))
    err = major(u + r) - major(u)
    return max(Fraction(0), vlo - err), vhi + err


def _coeff_tuple(R) -> tuple[int, ...]:
    return R.coeffs if isinstance(R, IntPoly) else tuple(R)


def in_rem(R, thresholds: Thresholds, profile: RootProfile) -> Membership:
    """Exact three-valued membership test for the remainder R."""
    coeffs = _coeff_tuple(R)
    if not any(coeffs):
        return Membership.ACCEPT
    ambiguous = False
    for bnd in thresholds.bounds:
        disk = profile.disks[bnd.disk_index]
        if disk.im_num < 0:
            continue  # |R^(k)(conj a)| = |R^(k)(a)| for real R
        vlo, vhi = _value_bounds(coeffs, bnd.order, disk)
        if vlo > bnd.hi:
            return Membership.REJECT
        if vhi > bnd.lo:
            ambiguous = True
    return Membership.AMBIGUOUS if ambiguous else Membership.ACCEPT


# -- fast path --------------------------------------------------------------

_EPS = 2.0 ** -52
_SLACK = 1 + 2.0 ** -40


def _down(x: Fraction) -> float:
    f = float(x)
    return f - abs(f) * 2.0 ** -50 - 5e-324


def _up(x: Fraction) -> float:
    f = float(x)
    return f + abs(f) * 2.0 ** -50 + 5e-324


REFINE_BITS = 512


class RemChecker:
    """Callable ``state -> bool`` used by the graph search.

    A state that stays ambiguous after refining the roots to ``refine_bits``
    is accepted. That only enlarges the explored graph, so exhausting it
    still proves that no path to 0 exists; genuine ties (|R(a)| equal to
    the bound, which happens for algebraic reasons) are accepted correctly.
    ``included`` counts such states.
    """

    MAX_FAST_COEFF = 2 ** 50

    def __init__(self, profile: RootProfile, digits: DigitSet, delta, n: int,
                 exclude_unimodular: bool = False, refine_bits: int = REFINE_BITS):
        self.profile = profile
        self.digits = digits
        self.delta = _as_fraction(delta)
        self.exclude = exclude_unimodular
        self.n = n
        self.thresholds = compute_thresholds(profile, digits, self.delta, exclude_unimodular)
        self.refine_bits = refine_bits
        self.included = 0
        self.ambiguous_count = 0
        self._refined: list[tuple[RootProfile, Thresholds]] = []
        self._rows = [self._row(b) for b in self.thresholds.bounds
                      if profile.disks[b.disk_index].im_num >= 0]

    def _row(self, bnd: RootBound):
        disk = self.profile.disks[bnd.disk_index]
        k, n = bnd.order, self.n
        s = disk.scale
        coef = [math.perm(i, k) if i >= k else 0 for i in range(n)]
        if disk.radius == 0 and disk.im_num == 0 and disk.re_num % (1 << s) == 0:
            c = disk.re_num >> s
            w = [coef[i] * c ** (i - k) if i >= k else 0 for i in range(n)]
            return ("exact", w, bnd.hi)
        a, b = disk.re_num, disk.im_num
        # powers of the centre as exact Gaussian dyadics
        pows = [(1, 0)]
        for _ in range(n):
            x, y = pows[-1]
            pows.append((x * a - y * b, x * b + y * a))
        _, u = disk.modulus_bounds()
        u -= disk.radius
        r = disk.radius
        wr, wi, err = [], [], []
        for i in range(n):
            if i < k:
                wr.append(0.0)
                wi.append(0.0)
                err.append(0.0)
                continue
            m = i - k
            x, y = pows[m]
            den = 1 << (s * m)
            fr = float(Fraction(coef[i] * x, den))
            fi = float(Fraction(coef[i] * y, den))
            disk_err = coef[i] * ((u + r) ** m - u ** m) if r else Fraction(0)
            e = _up(disk_err) + (n + 4) * _EPS * (abs(fr) + abs(fi))
            wr.append(fr)
            wi.append(fi)
            err.append(e * _SLACK)
        kind = "real" if disk.im_num == 0 else "complex"
        return (kind, (wr, wi, err), (_down(bnd.lo), _up(bnd.hi)))

    def __call__(self, state) -> bool:
        verdict = self.fast(state)
        if verdict is None:
            return self._resolve(state)
        return verdict

    def fast(self, state):
        """True/False when the float enclosure decides, None otherwise."""
        rows = self._rows
        absS = None
        undecided = False
        for idx, row in enumerate(rows):
            kind = row[0]
            if kind == "exact":
                v = abs(sum(map(mul, state, row[1])))
                if v > row[2]:
                    if idx:
                        rows.insert(0, rows.pop(idx))
                    return False
                continue
            if absS is None:
                if max(state) > self.MAX_FAST_COEFF or min(state) < -self.MAX_FAST_COEFF:
                    return None
                absS = list(map(abs, state))
            wr, wi, err = row[1]
            tlo, thi = row[2]
            e = sum(map(mul, absS, err))
            if kind == "real":
                v = abs(sum(map(mul, state, wr)))
            else:
                v = math.hypot(sum(map(mul, state, wr)), sum(map(mul, state, wi)))
            if v * (1 - 2.0 ** -50) - e > thi:
                if idx:
                    rows.insert(0, rows.pop(idx))
                return False
            if v * (1 + 2.0 ** -50) + e > tlo:
                undecided = True
        return None if undecided else True

    def _resolve(self, state) -> bool:
        self.ambiguous_count += 1
        verdict = in_rem(state, self.thresholds, self.profile)
        level = 0
        while verdict is Membership.AMBIGUOUS:
            try:
                prof, thr = self._refined_level(level)
            except RootIsolationError:
                prof = None
            if prof is None or prof.precision > max(self.refine_bits, self.profile.precision):
                self.included += 1
                return True
            verdict = in_rem(state, thr, prof)
            level += 1
        return verdict is Membership.ACCEPT

    def _refined_level(self, level: int) -> tuple[RootProfile, Thresholds]:
        while len(self._refined) <= level:
            base = self._refined[-1][0] if self._refined else self.profile
            prof = refine_once(base)
            thr = compute_thresholds(prof, self.digits, self.delta, self.exclude)
            self._refined.append((prof, thr))
        return self._refined[level]
