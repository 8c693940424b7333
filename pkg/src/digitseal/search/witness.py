from __future__ import annotations

from ..polyz.core import IntPoly, divmod_monic, NotMonicError, exact_div, InexactDivisionError
from .digits import DigitSet


def verify_witness(P: IntPoly, Q: IntPoly, D: DigitSet) -> bool:
    """Q is a nonzero D-polynomial (nonzero leading digit) divisible by P."""
    if not Q:
        return False
    if any(c not in D for c in Q.coeffs):
        return False
    if Q.lc == 0 or Q.lc not in D:
        return False
    if not P:
        return False
    try:
        return not divmod_monic(Q, P)[1]
    except NotMonicError:
        # non-monic divisors are still well defined over Q; use exact division
        try:
            exact_div(Q, P)
            return True
        except InexactDivisionError:
            return False


def extend_with_cyclotomic(Q: IntPoly, n: int, D: DigitSet) -> IntPoly:
    """A D-multiple of Q * Phi_n built from Q alone.

    With 0 in D (n >= 2), Q is spread out with gaps:
    Q * (X^((n-1)t) + ... + X^t + 1), t = deg(Q)*n + 1 so n does not divide t.
    With D = -D, copies of Q are concatenated without gaps (t = deg Q + 1),
    or, when n divides deg Q + 1, Q * (X^(deg Q + 1) - 1) is used.
    """
    if not Q:
        raise ValueError("Q must be nonzero")
    if any(c not in D for c in Q.coeffs):
        raise ValueError("Q must have coefficients in D")
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    d = Q.degree
    if n >= 2 and D.contains_zero:
        t = d * n + 1
        factor = IntPoly.constant(0)
        for i in range(n):
            factor = factor + IntPoly.monomial(i * t)
    elif D.is_symmetric:
        if (d + 1) % n == 0:
            factor = IntPoly.monomial(d + 1) - 1
        else:
            t = d + 1
            factor = IntPoly.constant(0)
            for i in range(n):
                factor = factor + IntPoly.monomial(i * t)
    else:
        raise ValueError(f"no cyclotomic extension for n={n} with digits {D}")
    out = Q * factor
    if any(c not in D for c in out.coeffs):
        raise AssertionError(f"extension left the digit set: {out}")
    return out


def parse_sign_string(text: str) -> IntPoly:
    """'+'/'-' characters, whitespace ignored, first character = leading coefficient."""
    signs = "".join(text.split())
    if not signs:
        raise ValueError("empty sign string")
    bad = set(signs) - {"+", "-"}
    if bad:
        raise ValueError(f"sign string may only contain '+' and '-', found {''.join(sorted(bad))!r}")
    return IntPoly(tuple(1 if c == "+" else -1 for c in reversed(signs)))


def format_sign_string(Q: IntPoly) -> str:
    if not Q or any(c not in (-1, 1) for c in Q.coeffs):
        raise ValueError("sign strings need all coefficients in {-1, 1}")
    return "".join("+" if c == 1 else "-" for c in reversed(Q.coeffs))


def load_fixture(name: str = "table_psl.txt") -> str:
    """Text of a fixture shipped in the package data directory."""
    from importlib import resources

    return resources.files("digitseal").joinpath("data", name).read_text()
