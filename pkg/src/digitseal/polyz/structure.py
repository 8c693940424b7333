"""Structural decompositions over Z[X]: gcd, squarefree parts, cyclotomic
factors and exact real-root counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    ZERO,
    IntPoly,
    content,
    derivative,
    divmod_monic,
    exact_div,
    primitive_part,
    product,
    pseudo_rem,
)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor in Z[X], primitive PRS.

    The result has positive leading coefficient and content equal to the gcd
    of the contents of the inputs.
    """
    if not a:
        return primitive_part(b) * content(b) if b else ZERO
    if not b:
        return primitive_part(a) * content(a)
    c = math.gcd(content(a), content(b))
    u, v = primitive_part(a), primitive_part(b)
    if u.degree < v.degree:
        u, v = v, u
    while v:
        r = pseudo_rem(u, v)
        u, v = v, (primitive_part(r) if r else ZERO)
    return u * c


@dataclass(frozen=True)
class SquarefreeDecomposition:
    parts: tuple[tuple[IntPoly, int], ...]
    unit: int

    def recompose(self) -> IntPoly:
        return product(f ** e for f, e in self.parts) * self.unit

    @property
    def squarefree_part(self) -> IntPoly:
        return product(f for f, _ in self.parts)


def squarefree_decomposition(p: IntPoly) -> SquarefreeDecomposition:
    """Yun's algorithm on the primitive part of p.

    Parts come out in increasing multiplicity; ``unit`` carries the signed
    content so that the parts recompose to p exactly.
    """
    if not p:
        raise ValueError("squarefree decomposition of the zero polynomial")
    f = primitive_part(p)
    unit = p.lc // f.lc
    parts: list[tuple[IntPoly, int]] = []
    if f.degree >= 1:
        df = derivative(f)
        a = primitive_part(poly_gcd(f, df))
        b = exact_div(f, a)
        c = exact_div(df, a)
        d = c - derivative(b)
        i = 1
        while b.degree >= 1:
            a = primitive_part(poly_gcd(b, d))
            b = exact_div(b, a)
            c = exact_div(d, a)
            if a.degree >= 1:
                parts.append((a, i))
            d = c - derivative(b)
            i += 1
    dec = SquarefreeDecomposition(tuple(parts), unit)
    if dec.recompose() != p:
        raise AssertionError(f"squarefree decomposition failed to recompose {p}")
    return dec


def squarefree_part(p: IntPoly) -> IntPoly:
    if p.degree < 1:
        return primitive_part(p) if p else p
    return exact_div(primitive_part(p), primitive_part(poly_gcd(p, derivative(p))))


# -- Sturm sequences --------------------------------------------------------


def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of the squarefree part of p, kept in Z[X].

    Pseudo-remainders are sign-corrected so that each entry is a positive
    multiple of the classical Euclidean remainder.
    """
    f = squarefree_part(p)
    seq = [f, derivative(f)]
    while seq[-1].degree >= 1:
        a, b = seq[-2], seq[-1]
        r = pseudo_rem(a, b)
        k = a.degree - b.degree + 1
        if b.lc < 0 and k % 2:
            r = -r
        if not r:
            break
        # next entry is -r with its content removed
        seq.append(primitive_part(r) * (-1 if r.lc > 0 else 1))
    return [s for s in seq if s]


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def _signs_at_inf(seq: list[IntPoly], negative: bool) -> list[int]:
    out = []
    for s in seq:
        sg = _sgn(s.lc)
        if negative and s.degree % 2:
            sg = -sg
        out.append(sg)
    return out


def real_root_count(p: IntPoly) -> int:
    """Number of distinct real roots of p."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    return _variations(_signs_at_inf(seq, True)) - _variations(_signs_at_inf(seq, False))


def count_roots_in(p: IntPoly, lo, hi) -> int:
    """Distinct real roots in the half-open interval (lo, hi]; lo, hi rational."""
    seq = sturm_sequence(p)
    return _variations(_sgn(s(lo)) for s in seq) - _variations(_sgn(s(hi)) for s in seq)


def has_nonneg_real_root(p: IntPoly) -> bool:
    """True iff p has a real root in [0, oo). Exact (Sturm)."""
    if not p:
        raise ValueError("zero polynomial")
    if p.degree < 1:
        return False
    if p.tc == 0:
        return True
    seq = sturm_sequence(p)
    at_zero = _variations(_sgn(s.tc) for s in seq)
    return at_zero - _variations(_signs_at_inf(seq, False)) > 0


# -- cyclotomic polynomials -------------------------------------------------


def euler_phi(n: int) -> int:
    result, m, q = n, n, 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """n-th cyclotomic polynomial via X^n - 1 = prod over d | n of Phi_d."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    f = IntPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            f, r = divmod_monic(f, cyclotomic(d))
            assert not r
    return f


def cyclotomic_candidates(degree: int) -> list[int]:
    """All n with phi(n) <= degree; phi(n) >= sqrt(n/2) gives n <= 2*degree^2."""
    if degree < 1:
        return []
    return [n for n in range(1, 2 * degree * degree + 1) if euler_phi(n) <= degree]


@dataclass(frozen=True)
class CyclotomicSplit:
    cyclo: IntPoly
    noncyclo: IntPoly
    scalar: int
    indices: tuple[int, ...]  # cyclotomic indices, repeated by multiplicity

    def recompose(self) -> IntPoly:
        return self.cyclo * self.noncyclo * self.scalar


def cyclotomic_split(p: IntPoly) -> CyclotomicSplit:
    if not p:
        raise ValueError("zero polynomial")
    rest = p
    indices = []
    for n in cyclotomic_candidates(p.degree):
        phi = cyclotomic(n)
        while rest.degree >= phi.degree:
            q, r = divmod_monic(rest, phi)
            if r:
                break
            rest = q
            indices.append(n)
    noncyclo = primitive_part(rest)
    scalar = rest.lc // noncyclo.lc
    split = CyclotomicSplit(
        product(cyclotomic(n) for n in indices), noncyclo, scalar, tuple(indices)
    )
    if split.recompose() != p:
        raise AssertionError(f"cyclotomic split failed to recompose {p}")
    return split


def is_cyclotomic_free(p: IntPoly) -> bool:
    for n in cyclotomic_candidates(p.degree):
        phi = cyclotomic(n)
        if phi.degree <= p.degree and not divmod_monic(p, phi)[1]:
            return False
    return True
