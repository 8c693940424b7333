"""Shared oracles for the test suite (sympy is only used here)."""

import sympy

from digitseal.polyz.core import IntPoly

XS = sympy.Symbol("x")


def to_sympy(p: IntPoly) -> sympy.Poly:
    return sympy.Poly(list(reversed(p.coeffs)) or [0], XS, domain="ZZ")


def from_sympy(q) -> IntPoly:
    q = sympy.Poly(q, XS)
    return IntPoly(int(c) for c in reversed(q.all_coeffs()))


def brute_force_hit(P: IntPoly, digits, max_degree: int) -> bool:
    """Is some D-polynomial of degree <= max_degree (nonzero leading digit)
    divisible by monic P?  Walks every digit string, tracking the value mod P
    by plain long division of the running Horner sum; no pruning at all."""
    n = P.degree
    tail = [-c for c in P.coeffs[:-1]]
    digits = sorted(set(digits))

    def reduce(v):
        # v has length n+1 at most; fold the top coefficient back
        top = v[n]
        return [v[i] + top * tail[i] for i in range(n)]

    stack = [([d] + [0] * (n - 1), 0) for d in digits if d != 0]
    while stack:
        r, deg = stack.pop()
        if not any(r):
            return True
        if deg == max_degree:
            continue
        for d in digits:
            shifted = [d] + r  # X*R + d
            stack.append((reduce(shifted) if len(shifted) > n else shifted, deg + 1))
    return False
