"""Dense univariate polynomials over Z.

Coefficients are stored lowest degree first as a tuple of Python ints, so
there is no overflow anywhere. The zero polynomial is the empty tuple.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Sequence


class PolyParseError(ValueError):
    pass


class NotMonicError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    pass


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(int(c) for c in coeffs[:n])


class IntPoly:
    """Immutable integer polynomial, ``coeffs[i]`` is the coefficient of X^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(list(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __reduce__(self):
        return (IntPoly, (self.coeffs,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        return cls((0,) * degree + (coeff,))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def tc(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- ring operations --------------------------------------------------

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions, floats, mpmath values."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_neg_x(self) -> "IntPoly":
        """Substitute X -> -X."""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by X^k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def strip_x(self) -> tuple["IntPoly", int]:
        """Split off the largest power of X dividing self: returns (self / X^k, k)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return IntPoly(self.coeffs[k:]), k


def _coerce(obj) -> IntPoly | None:
    if isinstance(obj, IntPoly):
        return obj
    if isinstance(obj, int):
        return IntPoly((obj,))
    return None


ZERO = IntPoly()
ONE = IntPoly((1,))
X = IntPoly((0, 1))


# -- elementary functions ---------------------------------------------------


def height(p: IntPoly) -> int:
    return max((abs(c) for c in p.coeffs), default=0)


def content(p: IntPoly) -> int:
    return reduce(math.gcd, p.coeffs, 0)


def primitive_part(p: IntPoly) -> IntPoly:
    """p / content(p), normalised to a positive leading coefficient."""
    if not p:
        return p
    c = content(p)
    if p.lc < 0:
        c = -c
    return IntPoly(a // c for a in p.coeffs)


def reciprocal(p: IntPoly) -> IntPoly:
    """X^deg p * p(1/X)."""
    if not p or p.tc == 0:
        raise ValueError("reciprocal needs a nonzero constant term")
    return IntPoly(reversed(p.coeffs))


def derivative(p: IntPoly, k: int = 1) -> IntPoly:
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    coeffs = p.coeffs
    for _ in range(k):
        coeffs = tuple(i * c for i, c in enumerate(coeffs))[1:]
        if not coeffs:
            break
    return IntPoly(coeffs)


def divmod_monic(q: IntPoly, p: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Quotient and remainder of q by the monic polynomial p, exactly in Z[X]."""
    if p.degree < 1 or p.lc != 1:
        raise NotMonicError(f"divisor must be monic of degree >= 1, got {p}")
    n = p.degree
    rem = list(q.coeffs)
    if len(rem) <= n:
        return ZERO, q
    quot = [0] * (len(rem) - n)
    pc = p.coeffs
    for i in range(len(rem) - 1, n - 1, -1):
        c = rem[i]
        if c:
            s = i - n
            quot[s] = c
            for j in range(n + 1):
                rem[s + j] -= c * pc[j]
    return IntPoly(quot), IntPoly(rem[:n])


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """a / b in Z[X]; raises InexactDivisionError if b does not divide a over Z."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return ZERO
    db, lb = b.degree, b.lc
    rem = list(a.coeffs)
    if len(rem) - 1 < db:
        raise InexactDivisionError(f"{b} does not divide {a}")
    quot = [0] * (len(rem) - db)
    bc = b.coeffs
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            qc, r = divmod(c, lb)
            if r:
                raise InexactDivisionError(f"{b} does not divide {a}")
            s = i - db
            quot[s] = qc
            for j in range(db + 1):
                rem[s + j] -= qc * bc[j]
    if any(rem[:db]):
        raise InexactDivisionError(f"{b} does not divide {a}")
    return IntPoly(quot)


def divides(b: IntPoly, a: IntPoly) -> bool:
    try:
        exact_div(a, b)
    except InexactDivisionError:
        return False
    return True


def pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions."""
    if not b:
        raise ZeroDivisionError("pseudo-remainder by zero")
    db, lb = b.degree, b.lc
    rem = list(a.coeffs)
    if len(rem) - 1 < db:
        return a
    bc = b.coeffs
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        rem = [lb * r for r in rem]
        if c:
            s = i - db
            for j in range(db + 1):
                rem[s + j] -= c * bc[j]
    return IntPoly(rem[:db])


def product(polys: Iterable[IntPoly]) -> IntPoly:
    return reduce(lambda u, v: u * v, polys, ONE)


# -- text formats -----------------------------------------------------------


def format_poly(p: IntPoly, var: str = "x") -> str:
    """Human form such as ``x^4+x^3-x+1`` (highest degree first)."""
    if not p:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def format_coeffs(p: IntPoly) -> str:
    """Coefficient-list form, lowest degree first: ``1,-1,0,1,1``."""
    return ",".join(str(c) for c in p.coeffs) if p else "0"


_TERM = re.compile(r"^(\d*)(\*?)(x(\^(\d+))?)?$")


def parse_poly(text: str) -> IntPoly:
    """Parse either the human form (contains ``x``) or a comma-separated list."""
    s = "".join(text.split()).lower().replace("**", "^")
    if not s:
        raise PolyParseError("empty polynomial text")
    if "(" in s or ")" in s:
        return _parse_expr(s, text)
    if "x" not in s:
        if "," in s or re.fullmatch(r"[+-]?\d+", s):
            try:
                return IntPoly(int(tok) for tok in s.split(","))
            except ValueError as exc:
                raise PolyParseError(f"bad coefficient list {text!r}") from exc
        raise PolyParseError(f"cannot parse polynomial {text!r}")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise PolyParseError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        m = _TERM.match(body)
        if not m or (not m.group(1) and not m.group(3)) or (m.group(2) and not (m.group(1) and m.group(3))):
            raise PolyParseError(f"bad term {term!r} in {text!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if m.group(3) is None:
            exp = 0
        elif m.group(5) is None:
            exp = 1
        else:
            exp = int(m.group(5))
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    top = max(coeffs)
    return IntPoly(coeffs.get(i, 0) for i in range(top + 1))


def _parse_expr(s: str, text: str) -> IntPoly:
    """Products, powers and parentheses, e.g. ``(x^2+x+1)*(x^3-x+1)^2``."""
    tokens = re.findall(r"\d+|[x+\-*^()]", s)
    if "".join(tokens) != s:
        raise PolyParseError(f"cannot parse polynomial {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def expr():
        sign = -1 if peek() == "-" else 1
        if peek() in ("+", "-"):
            take()
        acc = term() * sign
        while peek() in ("+", "-"):
            op = take()
            acc = acc + term() if op == "+" else acc - term()
        return acc

    def term():
        acc = power()
        while peek() == "*" or peek() in ("x", "(") or (peek() or "").isdigit():
            if peek() == "*":
                take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == "^":
            take()
            e = take() if pos < len(tokens) else None
            if e is None or not e.isdigit():
                raise PolyParseError(f"exponent must be a nonnegative integer in {text!r}")
            base = base ** int(e)
        return base

    def atom():
        t = take() if pos < len(tokens) else None
        if t == "(":
            v = expr()
            if (take() if pos < len(tokens) else None) != ")":
                raise PolyParseError(f"unbalanced parentheses in {text!r}")
            return v
        if t == "x":
            return X
        if t is not None and t.isdigit():
            return IntPoly((int(t),))
        raise PolyParseError(f"unexpected {t!r} in {text!r}")

    out = expr()
    if pos != len(tokens):
        raise PolyParseError(f"trailing input in {text!r}")
    return out
