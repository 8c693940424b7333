"""Certified complex root isolation.

Roots of each squarefree factor are approximated by Aberth-Ehrlich
iteration in mpmath, then centres are rounded to Gaussian dyadics
``(a + b*i) / 2**E`` and certified exactly: with the Weierstrass
corrections ``W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j))`` the disks
``|z - z_i| <= deg * |W_i|`` cover the roots, and any disk disjoint from the
others holds exactly one root (Smith's Gerschgorin-type bound). All
certification arithmetic is done on Python integers, so the radii are true
upper bounds with no floating point rounding involved.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations

import numpy as np
from mpmath.ctx_mp import MPContext

from .polyz.core import IntPoly, reciprocal
from .polyz.structure import poly_gcd, real_root_count, squarefree_decomposition

DEFAULT_PRECISION = 64
PRECISION_CAP = 4096
UNIMODULAR_PROBE_BITS = 256


class RootIsolationError(RuntimeError):
    pass


def precision_cap() -> int:
    env = os.environ.get("DIGITSEAL_PRECISION_CAP")
    if env:
        return max(DEFAULT_PRECISION, int(env))
    return PRECISION_CAP


class CircleStatus(str, enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    UNDECIDED = "on_or_undecided"


@dataclass(frozen=True)
class RootDisk:
    """Closed disk around one root. The centre is the exact Gaussian dyadic
    ``(re_num + im_num*i) / 2**scale``."""

    re_num: int
    im_num: int
    scale: int
    radius: Fraction
    multiplicity: int
    circle_status: CircleStatus
    factor: int = 0

    @property
    def center(self):
        ctx = MPContext()
        ctx.prec = max(53, self.scale + 64)
        return ctx.mpc(ctx.mpf((self.re_num, -self.scale)), ctx.mpf((self.im_num, -self.scale)))

    @property
    def center_complex(self) -> complex:
        return complex(math.ldexp(self.re_num, -self.scale) if self.re_num else 0.0,
                       math.ldexp(self.im_num, -self.scale) if self.im_num else 0.0)

    @property
    def is_real(self) -> bool:
        return self.im_num == 0

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def center_fraction(self) -> tuple[Fraction, Fraction]:
        d = 1 << self.scale
        return Fraction(self.re_num, d), Fraction(self.im_num, d)

    def modulus_bounds(self) -> tuple[Fraction, Fraction]:
        """Certified lower and upper bounds on |root|."""
        lo, hi = _abs_bounds(self.re_num, self.im_num, self.scale)
        return max(Fraction(0), lo - self.radius), hi + self.radius

    def contains_point(self, re: Fraction, im: Fraction) -> bool:
        cr, ci = self.center_fraction()
        return (re - cr) ** 2 + (im - ci) ** 2 <= self.radius ** 2

    def conjugate(self) -> "RootDisk":
        return replace(self, im_num=-self.im_num)


@dataclass(frozen=True)
class RootProfile:
    poly: IntPoly
    disks: tuple[RootDisk, ...]
    precision: int
    factors: tuple[tuple[IntPoly, int], ...]

    def undecided(self) -> list[int]:
        return [i for i, d in enumerate(self.disks) if d.circle_status is CircleStatus.UNDECIDED]

    def max_radius(self) -> Fraction:
        return max((d.radius for d in self.disks), default=Fraction(0))


# -- exact helpers ----------------------------------------------------------


def _abs_bounds(a: int, b: int, scale: int) -> tuple[Fraction, Fraction]:
    n = a * a + b * b
    s = math.isqrt(n)
    d = 1 << scale
    if s * s == n:
        return Fraction(s, d), Fraction(s, d)
    return Fraction(s, d), Fraction(s + 1, d)


def _gauss_eval(coeffs: tuple[int, ...], a: int, b: int, scale: int) -> tuple[int, int]:
    """f(z) * 2**(scale*deg f) as a Gaussian integer, for z = (a + b i)/2**scale."""
    n = len(coeffs) - 1
    re, im = coeffs[n], 0
    for k in range(n - 1, -1, -1):
        re, im = re * a - im * b, re * b + im * a
        re += coeffs[k] << (scale * (n - k))
    return re, im


def _certify(f: IntPoly, centers: list[tuple[int, int]], scale: int) -> list[Fraction]:
    """Smith inclusion radii for approximations of all roots of squarefree f."""
    m = f.degree
    lc = abs(f.lc)
    radii = []
    for i, (a, b) in enumerate(centers):
        gr, gi = _gauss_eval(f.coeffs, a, b, scale)
        n1 = gr * gr + gi * gi
        if n1 == 0:
            radii.append(Fraction(0))
            continue
        num_hi = math.isqrt(n1) + 1
        den_lo = lc
        for j, (c, d) in enumerate(centers):
            if j != i:
                s = math.isqrt((a - c) ** 2 + (b - d) ** 2)
                if s == 0:
                    raise _CertificationFailed("coincident centres")
                den_lo *= s
        # |f(z)| <= num_hi / 2^(scale*m); prod |z_i - z_j| >= den_lo / 2^(scale*(m-1))
        radii.append(Fraction(m * num_hi, den_lo << scale))
    return radii


def _disjoint(d1: tuple[int, int, Fraction], d2: tuple[int, int, Fraction], scale: int) -> bool:
    a, b, r1 = d1
    c, d, r2 = d2
    dist2 = Fraction((a - c) ** 2 + (b - d) ** 2, 1 << (2 * scale))
    return dist2 > (r1 + r2) ** 2


def _status(a: int, b: int, scale: int, r: Fraction) -> CircleStatus:
    abs2 = Fraction(a * a + b * b, 1 << (2 * scale))
    if abs2 > (1 + r) ** 2:
        return CircleStatus.OUTSIDE
    if r < 1 and abs2 < (1 - r) ** 2:
        return CircleStatus.INSIDE
    return CircleStatus.UNDECIDED


class _CertificationFailed(Exception):
    pass


# -- approximation ----------------------------------------------------------


def _initial_guess(f: IntPoly, ctx) -> list:
    m = f.degree
    try:
        with np.errstate(all="raise"):
            approx = np.roots([float(c) for c in reversed(f.coeffs)])
        if len(approx) == m and np.all(np.isfinite(approx)):
            return [ctx.mpc(complex(z)) for z in approx]
    except (FloatingPointError, OverflowError, np.linalg.LinAlgError):
        pass
    # Cauchy bound circle with an irrational angular offset
    bound = 1 + max(abs(Fraction(c, f.lc)) for c in f.coeffs[:-1])
    rad = ctx.mpf(float(bound)) / 2
    return [rad * ctx.expj(2 * ctx.pi * k / m + 0.4) for k in range(m)]


def _aberth(f: IntPoly, z: list, ctx, max_iter: int = 400) -> list:
    m = f.degree
    coeffs = [ctx.mpf(c) for c in f.coeffs]
    dcoeffs = [ctx.mpf(i * c) for i, c in enumerate(f.coeffs)][1:]
    tol = ctx.ldexp(1, -ctx.prec + 8)
    z = list(z)
    for _ in range(max_iter):
        worst = 0
        new = []
        for i in range(m):
            zi = z[i]
            fv = ctx.polyval(coeffs[::-1], zi)
            dv = ctx.polyval(dcoeffs[::-1], zi)
            if fv == 0:
                new.append(zi)
                continue
            if dv == 0:
                dv = ctx.mpf(1)
            ratio = fv / dv
            s = 0
            for j in range(m):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        s += 1 / diff
            denom = 1 - ratio * s
            corr = ratio / denom if denom != 0 else ratio
            new.append(zi - corr)
            rel = abs(corr) / (1 + abs(zi))
            if rel > worst:
                worst = rel
        z = new
        if worst < tol:
            break
    return z


def _round_scaled(x, scale: int) -> int:
    """round(x * 2**scale) computed exactly from the mantissa/exponent of x."""
    sign, man, exp, _bc = x._mpf_
    man, exp = int(man), int(exp)
    if man == 0:
        return 0
    if sign:
        return -_round_scaled_abs(man, exp, scale)
    return _round_scaled_abs(man, exp, scale)


def _round_scaled_abs(man: int, exp: int, scale: int) -> int:
    shift = exp + scale
    if shift >= 0:
        return man << shift
    q, r = divmod(man, 1 << -shift)
    return q + (1 if 2 * r >= (1 << -shift) else 0)


def _snap(f: IntPoly, approx: list, scale: int) -> list[tuple[int, int]]:
    """Round approximations to Gaussian dyadics, forcing exact conjugate symmetry.

    The number of real roots is known exactly from a Sturm count; the
    ``nreal`` approximations closest to the real axis become real centres and
    the rest are paired with their mirror images.
    """
    m = f.degree
    nreal = real_root_count(f)
    if (m - nreal) % 2:
        raise _CertificationFailed("parity of nonreal roots")
    order = sorted(range(m), key=lambda i: abs(approx[i].imag))
    real_idx = order[:nreal]
    rest = order[nreal:]
    one = 1 << scale
    centers = []
    used = set()
    for i in real_idx:
        x = approx[i].real
        c = int(round(float(x))) if abs(x) < 2**52 else None
        if c is not None and c not in used and abs(x - c) < 2.0 ** -20 and f(c) == 0:
            used.add(c)
            centers.append((c * one, 0))
        else:
            centers.append((_round_scaled(x, scale), 0))
    upper = [i for i in rest if approx[i].imag > 0]
    lower = [i for i in rest if approx[i].imag <= 0]
    if len(upper) != len(lower):
        raise _CertificationFailed("unbalanced conjugate pairs")
    for i in upper:
        a = _round_scaled(approx[i].real, scale)
        b = _round_scaled(approx[i].imag, scale)
        if b == 0:
            raise _CertificationFailed("nonreal root collapsed onto axis")
        centers.append((a, b))
        centers.append((a, -b))
    return centers


def _isolate_factor(f: IntPoly, prec: int, start: list | None):
    ctx = MPContext()
    ctx.prec = prec + 32
    if f.degree == 1 and f.coeffs[0] % f.lc == 0:
        c = -f.coeffs[0] // f.lc
        return [(c << prec, 0)], [Fraction(0)], [ctx.mpc(c)]
    z = _initial_guess(f, ctx) if start is None else [ctx.mpc(s) for s in start]
    z = _aberth(f, z, ctx)
    centers = _snap(f, z, prec)
    radii = _certify(f, centers, prec)
    for (i, ci), (j, cj) in combinations(enumerate(centers), 2):
        if not _disjoint((*ci, radii[i]), (*cj, radii[j]), prec):
            raise _CertificationFailed("overlapping disks")
    approx = [ctx.mpc(ctx.mpf((a, -prec)), ctx.mpf((b, -prec))) for a, b in centers]
    return centers, radii, approx


def _build(p: IntPoly, factors, prec: int, starts) -> tuple[RootProfile, list]:
    disks: list[RootDisk] = []
    approxes = []
    for k, (f, e) in enumerate(factors):
        centers, radii, approx = _isolate_factor(f, prec, starts[k] if starts else None)
        approxes.append(approx)
        for (a, b), r in zip(centers, radii):
            disks.append(RootDisk(a, b, prec, r, e, _status(a, b, prec, r), k))
    for d1, d2 in combinations(disks, 2):
        if d1.factor != d2.factor and not _disjoint(
            (d1.re_num, d1.im_num, d1.radius), (d2.re_num, d2.im_num, d2.radius), prec
        ):
            raise _CertificationFailed("disks of different factors overlap")
    disks.sort(key=lambda d: (d.factor, d.re_num, -d.im_num))
    return RootProfile(p, tuple(disks), prec, tuple(factors)), approxes


def isolate_roots(p: IntPoly, precision: int = DEFAULT_PRECISION) -> RootProfile:
    """Certified disks for every distinct root of p, tagged with multiplicities."""
    if p.degree < 1:
        raise ValueError("root isolation needs a nonconstant polynomial")
    factors = squarefree_decomposition(p).parts
    cap = precision_cap()
    prec = precision
    starts = None
    while True:
        try:
            profile, _ = _build(p, factors, prec, starts)
            return profile
        except _CertificationFailed:
            if prec >= cap:
                raise RootIsolationError(f"could not isolate roots of {p} within {cap} bits")
            prec = min(2 * prec, cap)


def _match(old: RootProfile, new: RootProfile) -> RootProfile:
    """Carry decided statuses over from ``old`` (statuses never revert)."""
    out = []
    for nd in new.disks:
        status = nd.circle_status
        if status is CircleStatus.UNDECIDED:
            cr, ci = nd.center_fraction()
            for od in old.disks:
                if od.factor == nd.factor and od.circle_status is not CircleStatus.UNDECIDED:
                    ocr, oci = od.center_fraction()
                    if (cr - ocr) ** 2 + (ci - oci) ** 2 <= (od.radius + nd.radius) ** 2:
                        status = od.circle_status
                        break
        out.append(replace(nd, circle_status=status))
    return replace(new, disks=tuple(out))


def _reisolate(profile: RootProfile, prec: int) -> RootProfile:
    starts = []
    for k in range(len(profile.factors)):
        starts.append([d.center for d in profile.disks if d.factor == k])
    cap = precision_cap()
    while True:
        try:
            new, _ = _build(profile.poly, profile.factors, prec, starts)
            return _match(profile, new)
        except _CertificationFailed:
            if prec >= cap:
                raise RootIsolationError(f"refinement of {profile.poly} failed at {cap} bits")
            prec = min(2 * prec, cap)
            starts = None


def refine(profile: RootProfile, target_radius) -> RootProfile:
    """Re-isolate at doubling precision until every radius is <= target_radius."""
    target = Fraction(target_radius)
    cap = precision_cap()
    while profile.max_radius() > target:
        if profile.precision >= cap:
            raise RootIsolationError(
                f"radius {float(profile.max_radius()):.3g} above target at the {cap}-bit cap"
            )
        profile = _reisolate(profile, min(2 * profile.precision, cap))
    return profile


def refine_once(profile: RootProfile) -> RootProfile:
    cap = precision_cap()
    if profile.precision >= cap:
        raise RootIsolationError("precision cap reached")
    return _reisolate(profile, min(2 * profile.precision, cap))


# -- unit circle ------------------------------------------------------------


def _nonzero_on_disk(g: IntPoly, disk: RootDisk) -> bool:
    """Certify g has no zero in ``disk`` (so the disk's root is not a root of g)."""
    if g.degree < 1:
        return bool(g)
    a, b, s = disk.re_num, disk.im_num, disk.scale
    gr, gi = _gauss_eval(g.coeffs, a, b, s)
    val_lo = Fraction(math.isqrt(gr * gr + gi * gi), 1 << (s * g.degree))
    _, zabs_hi = _abs_bounds(a, b, s)
    r = disk.radius
    # |g(w) - g(z)| <= G(|z| + r) - G(|z|) with G the absolute-coefficient majorant
    absg = [abs(c) for c in g.coeffs]
    major = lambda t: sum(c * t ** i for i, c in enumerate(absg))
    return val_lo > major(zabs_hi + r) - major(zabs_hi)


def classify_circle_status(
    p: IntPoly, profile: RootProfile, probe_bits: int = UNIMODULAR_PROBE_BITS
) -> RootProfile:
    """Resolve inside/outside for every root that can possibly be resolved.

    A root on the unit circle satisfies 1/conj(a) = a, so it is a common root
    of f and its reciprocal. Roots that are provably not roots of
    gcd(f, f*) are refined until decided; the others are only refined up to
    ``probe_bits`` and otherwise stay ``on_or_undecided``.
    """
    gcds = []
    for f, _ in profile.factors:
        g, _k = f.strip_x()
        gcds.append(poly_gcd(g, reciprocal(g)) if g.degree >= 1 else IntPoly((1,)))
    cap = precision_cap()
    while True:
        pending_hard = False
        pending_probe = False
        for d in profile.disks:
            if d.circle_status is not CircleStatus.UNDECIDED:
                continue
            if _nonzero_on_disk(gcds[d.factor], d):
                pending_hard = True
            else:
                pending_probe = True
        if not pending_hard and (not pending_probe or profile.precision >= probe_bits):
            return profile
        if profile.precision >= cap:
            return profile
        profile = refine_once(profile)


def profile_for(p: IntPoly, precision: int = DEFAULT_PRECISION) -> RootProfile:
    """isolate_roots followed by classify_circle_status."""
    return classify_circle_status(p, isolate_roots(p, precision))
