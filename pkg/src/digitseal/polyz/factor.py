"""Factorisation of small noncyclotomic parts and Mahler measure.

Both are driven by certified root disks from :mod:`digitseal.roots`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from mpmath.ctx_mp import MPContext

from .core import IntPoly, exact_div, primitive_part, InexactDivisionError
from .structure import squarefree_decomposition

FACTOR_DEGREE_CAP = 16


class UnsupportedDegreeError(ValueError):
    pass


def _units(disks):
    """Split disks into real roots and conjugate pairs (upper member first)."""
    reals, pairs = [], []
    seen = set()
    for i, d in enumerate(disks):
        if d.im_num == 0:
            reals.append((i,))
        elif d.im_num > 0:
            j = next(
                k for k, e in enumerate(disks)
                if k not in seen and e.re_num == d.re_num and e.im_num == -d.im_num
            )
            seen.add(j)
            pairs.append((i, j))
    return reals, pairs


def _subsets(reals, pairs, size):
    for npairs in range(size // 2 + 1):
        nreal = size - 2 * npairs
        if nreal > len(reals) or npairs > len(pairs):
            continue
        for rs in combinations(reals, nreal):
            for ps in combinations(pairs, npairs):
                yield [i for unit in rs + ps for i in unit]


def _coefficient_error(disks, idx) -> Fraction:
    """Bound on the total coefficient error of prod (X - centre) vs prod (X - root)."""
    hi_with, hi_without = Fraction(1), Fraction(1)
    for i in idx:
        _, mhi = disks[i].modulus_bounds()
        hi_with *= 1 + mhi
        hi_without *= 1 + mhi - disks[i].radius
    return hi_with - hi_without


def _split_squarefree(f: IntPoly) -> list[IntPoly]:
    from ..roots import isolate_roots, refine

    if f.degree <= 1:
        return [f]
    profile = isolate_roots(f)
    found: list[IntPoly] = []
    rest = f
    remaining = list(range(len(profile.disks)))
    size = 1
    while size <= (rest.degree // 2):
        disks = profile.disks
        reals, pairs = _units([disks[i] for i in remaining])
        reals = [tuple(remaining[i] for i in u) for u in reals]
        pairs = [tuple(remaining[i] for i in u) for u in pairs]
        hit = None
        for idx in _subsets(reals, pairs, size):
            cand = _candidate(rest.lc, profile, idx)
            while cand is _NEEDS_PRECISION:
                profile = refine(profile, profile.max_radius() / 2**32)
                cand = _candidate(rest.lc, profile, idx)
            if cand is None:
                continue
            try:
                quotient = exact_div(rest, cand)
            except InexactDivisionError:
                continue
            hit = (idx, cand, quotient)
            break
        if hit is None:
            size += 1
            continue
        idx, cand, quotient = hit
        found.append(cand)
        rest = quotient
        remaining = [i for i in remaining if i not in idx]
    found.append(primitive_part(rest))
    return found


_NEEDS_PRECISION = object()


def _candidate(lc: int, profile, idx):
    """Integer polynomial whose roots are the disks ``idx`` (times lc), or None."""
    disks = profile.disks
    ctx = MPContext()
    ctx.prec = profile.precision + 64
    err = _coefficient_error(disks, idx) * abs(lc)
    if err > Fraction(1, 8):
        return _NEEDS_PRECISION
    coeffs = [ctx.mpc(1)]
    for i in idx:
        z = disks[i].center
        new = [ctx.mpc(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] += c
            new[k] -= c * z
        coeffs = new
    out = []
    for c in coeffs:
        v = c.real * lc
        n = int(ctx.nint(v))
        if abs(v - n) > 0.25:
            return None
        out.append(n)
    return primitive_part(IntPoly(out))


def factor_noncyclotomic(p: IntPoly, degree_cap: int = FACTOR_DEGREE_CAP) -> list[tuple[IntPoly, int]]:
    """Irreducible factorisation over Z by root-subset recombination.

    Factors are primitive with positive leading coefficient; the result is
    checked to recompose to ``p`` up to its sign and content.
    """
    if not p or p.degree < 1:
        return []
    if p.degree > degree_cap:
        raise UnsupportedDegreeError(f"degree {p.degree} exceeds the factorisation cap {degree_cap}")
    out: dict[IntPoly, int] = {}
    for f, e in squarefree_decomposition(p).parts:
        for g in _split_squarefree(f):
            if g.degree >= 1:
                out[g] = out.get(g, 0) + e
    result = sorted(out.items(), key=lambda fe: (fe[0].degree, fe[0].coeffs))
    check = IntPoly((1,))
    for g, e in result:
        check = check * g ** e
    if primitive_part(check) != primitive_part(p):
        raise AssertionError(f"factorisation of {p} does not recompose")
    return result


def mahler_measure(p: IntPoly, tol: float = 1e-12) -> float:
    """|lc| * prod max(1, |root|), to within ``tol``."""
    from ..roots import isolate_roots, refine_once

    if not p:
        raise ValueError("Mahler measure of the zero polynomial")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if p.degree < 1:
        return float(abs(p.lc))
    profile = isolate_roots(p)
    while True:
        lo = hi = Fraction(abs(p.lc))
        for d in profile.disks:
            mlo, mhi = d.modulus_bounds()
            lo *= max(Fraction(1), mlo) ** d.multiplicity
            hi *= max(Fraction(1), mhi) ** d.multiplicity
        if hi - lo < Fraction(tol):
            return float((lo + hi) / 2)
        profile = refine_once(profile)
