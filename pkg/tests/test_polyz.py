import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from digitseal.polyz import (
    IntPoly,
    InexactDivisionError,
    NotMonicError,
    PolyParseError,
    cyclotomic,
    cyclotomic_split,
    derivative,
    divmod_monic,
    exact_div,
    factor_noncyclotomic,
    format_coeffs,
    format_poly,
    has_nonneg_real_root,
    height,
    mahler_measure,
    parse_poly,
    poly_gcd,
    real_root_count,
    reciprocal,
    squarefree_decomposition,
)
from digitseal.polyz.factor import UnsupportedDegreeError
from digitseal.polyz.structure import count_roots_in, cyclotomic_candidates, euler_phi

from helpers import XS, from_sympy, to_sympy

P = parse_poly

coeff_lists = st.lists(st.integers(-5, 5), min_size=0, max_size=9)
polys = coeff_lists.map(IntPoly)
nonzero_polys = polys.filter(bool)


def monic(draw_list):
    return IntPoly(list(draw_list) + [1])


monic_polys = st.lists(st.integers(-4, 4), min_size=1, max_size=6).map(monic)


# -- ring operations -----------------------------------------------------------


def test_zero_and_degree():
    assert IntPoly(()).degree == -1
    assert IntPoly((0, 0)).coeffs == ()
    assert IntPoly((1, 2, 0)).degree == 1


def test_ring_examples():
    assert P("x+1") * P("x-1") == P("x^2-1")
    assert P("x^3-x+1").at_neg_x() == P("-x^3+x+1")
    assert P("x^3-x+1") * P("x^3-x^2+1") == P("x^6-x^5-x^4+3x^3-x^2-x+1")
    assert P("x^3-x+1")(2) == 7
    assert -P("x-1") == P("1-x")


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a


def test_divmod_examples():
    assert divmod_monic(P("x^5+x^4+1"), P("x^3-x+1")) == (P("x^2+x+1"), IntPoly())
    assert divmod_monic(P("x^3"), P("x^3-x+1")) == (IntPoly((1,)), P("x-1"))
    assert divmod_monic(IntPoly((1,)), P("x^2+1")) == (IntPoly(), IntPoly((1,)))
    with pytest.raises(NotMonicError):
        divmod_monic(P("x^2"), P("2x+1"))


@given(polys, monic_polys)
def test_divmod_property(q, p):
    quo, rem = divmod_monic(q, p)
    assert p * quo + rem == q
    assert rem.degree < p.degree


def test_exact_div():
    assert exact_div(P("2x^2-2"), P("x+1")) == P("2x-2")
    with pytest.raises(InexactDivisionError):
        exact_div(P("x^2+1"), P("x+1"))


def test_reciprocal():
    assert reciprocal(P("x^3-x+1")) == P("x^3-x^2+1")
    assert reciprocal(P("x^2+x+1")) == P("x^2+x+1")
    assert reciprocal(P("x^4+x^3-x+1")) == P("x^4-x^3+x+1")
    with pytest.raises(ValueError):
        reciprocal(P("x^2+x"))


@given(nonzero_polys.filter(lambda p: p.coeffs[0] != 0), nonzero_polys.filter(lambda p: p.coeffs[0] != 0))
def test_reciprocal_properties(a, b):
    assert reciprocal(reciprocal(a)) == a
    assert reciprocal(a * b) == reciprocal(a) * reciprocal(b)


def test_height_and_derivative():
    assert height(P("x^5+x^4+1")) == 1
    assert height(P("x^6-x^5-x^4+3x^3-x^2-x+1")) == 3
    assert height(IntPoly()) == 0
    assert derivative(P("x^3-x+1"), 1) == P("3x^2-1")
    assert derivative(P("x^3-x+1"), 0) == P("x^3-x+1")
    assert derivative(P("x^2+x"), 3) == IntPoly()


# -- text formats ---------------------------------------------------------------


def test_formats():
    p = P("x^4+x^3-x+1")
    assert format_poly(p) == "x^4+x^3-x+1"
    assert format_coeffs(p) == "1,-1,0,1,1"
    assert P("1,-1,0,1,1") == p
    assert P(" X^4 + x**3 - X + 1 ") == p
    assert P("x^2 + x^2") == P("2*x^2")
    assert P("(x^3-x+1)^2") == P("x^6-2x^4+2x^3+x^2-2x+1")
    for bad in ["", "x^", "x^-1", "3y", "(x+1", "1,,2"]:
        with pytest.raises(PolyParseError):
            P(bad)


@given(polys)
def test_format_round_trip(p):
    assert P(format_poly(p)) == p
    assert P(format_coeffs(p)) == p


# -- gcd / squarefree -------------------------------------------------------------


@settings(max_examples=60)
@given(nonzero_polys, nonzero_polys)
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(a, b)
    expect = from_sympy(sympy.gcd(to_sympy(a), to_sympy(b)))
    if expect.lc < 0:
        expect = -expect
    assert g == expect


def test_squarefree_examples():
    sq = P("x^3-x+1") ** 2
    assert sq == P("x^6-2x^4+2x^3+x^2-2x+1")
    assert squarefree_decomposition(sq).parts == ((P("x^3-x+1"), 2),)
    assert squarefree_decomposition(P("x^3-x+1")).parts == ((P("x^3-x+1"), 1),)
    dec = squarefree_decomposition(P("(x-1)^2*(x+1)"))
    assert sorted(dec.parts, key=lambda fe: -fe[1]) == [(P("x-1"), 2), (P("x+1"), 1)]


@settings(max_examples=60)
@given(st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(1, 3)),
                min_size=1, max_size=3), st.sampled_from([1, -1, 2, -3]))
def test_squarefree_recomposes(factors, unit):
    p = IntPoly((unit,))
    for cs, e in factors:
        p = p * IntPoly(cs + [1]) ** e
    dec = squarefree_decomposition(p)
    assert dec.recompose() == p
    mults = [e for _, e in dec.parts]
    assert len(set(mults)) == len(mults)
    for f, _ in dec.parts:
        assert f.lc > 0 and math.gcd(*f.coeffs) == 1
        assert poly_gcd(f, derivative(f)).degree == 0


# -- real roots -------------------------------------------------------------------


def test_nonneg_real_root_examples():
    assert has_nonneg_real_root(P("x-1"))
    assert not has_nonneg_real_root(P("x^3+x^2-x+1"))
    assert has_nonneg_real_root(P("x^2-2"))


@settings(max_examples=80)
@given(nonzero_polys.filter(lambda p: p.degree >= 1))
def test_real_root_count_matches_sympy(p):
    expect = len(set(sympy.real_roots(to_sympy(p))))
    assert real_root_count(p) == expect
    nonneg = any(r >= 0 for r in sympy.real_roots(to_sympy(p)))
    assert has_nonneg_real_root(p) == nonneg


def test_count_roots_in():
    assert count_roots_in(P("x^2-2"), 0, 2) == 1
    assert count_roots_in(P("x^2-2"), -2, 2) == 2


@given(st.integers(1, 12), st.lists(st.integers(0, 1), min_size=0, max_size=11))
def test_newman_has_no_nonneg_root(d, mid):
    mid = (mid + [0] * d)[: d - 1]
    p = IntPoly([1] + mid + [1])
    assert not has_nonneg_real_root(p)


# -- cyclotomic ---------------------------------------------------------------------


def test_cyclotomic_examples():
    assert cyclotomic(1) == P("x-1")
    assert cyclotomic(2) == P("x+1")
    assert cyclotomic(6) == P("x^2-x+1")


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_against_sympy(n):
    assert cyclotomic(n) == from_sympy(sympy.cyclotomic_poly(n, XS))
    assert divmod_monic(IntPoly.monomial(n) - 1, cyclotomic(n))[1] == IntPoly()
    assert sum(cyclotomic(d).degree for d in range(1, n + 1) if n % d == 0) == n
    assert cyclotomic(n).degree == euler_phi(n)


def test_candidate_bound_is_exhaustive():
    # every n with phi(n) <= d is below 2 d^2
    for d in range(1, 17):
        cands = set(cyclotomic_candidates(d))
        assert {n for n in range(1, 4 * d * d + 50) if euler_phi(n) <= d} == cands


def test_cyclotomic_split_examples():
    s = cyclotomic_split(P("x^9-x^7-x^5+x^3+x+1"))
    assert s.cyclo == P("x+1") and s.noncyclo == P("x^8-x^7-x^4+x^3+1")
    s = cyclotomic_split(P("x^2+x+1"))
    assert s.cyclo == P("x^2+x+1") and s.noncyclo == IntPoly((1,))
    s = cyclotomic_split(P("x^3-x+1"))
    assert s.cyclo == IntPoly((1,)) and s.noncyclo == P("x^3-x+1")
    s = cyclotomic_split(P("-2*(x+1)^2*(x^2+1)*(x^3-x+1)"))
    assert s.indices == (2, 2, 4) and s.scalar == -2 and s.recompose() == P("-2*(x+1)^2*(x^2+1)*(x^3-x+1)")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 10, 12]), max_size=3),
       st.lists(st.integers(-2, 2), min_size=1, max_size=4))
def test_cyclotomic_split_property(idx, rest):
    base = IntPoly(rest + [1])
    p = base
    for n in idx:
        p = p * cyclotomic(n)
    s = cyclotomic_split(p)
    assert s.recompose() == p
    # sympy oracle: noncyclo part has no cyclotomic factor
    for f, _ in sympy.factor_list(to_sympy(s.noncyclo))[1]:
        g = from_sympy(f)
        assert g.degree < 1 or not any(g == cyclotomic(n) or g == -cyclotomic(n)
                                       for n in cyclotomic_candidates(g.degree))


# -- factorisation / Mahler -----------------------------------------------------------


def _sympy_factors(p):
    out = []
    for f, e in sympy.factor_list(to_sympy(p))[1]:
        g = from_sympy(f)
        if g.lc < 0:
            g = -g
        out.append((g, e))
    return sorted(out, key=lambda fe: (fe[0].degree, fe[0].coeffs))


def test_factor_examples():
    n11 = P("x^11+x^10+x^9+x^8+x^7+x^5+x^4+x^3+1")
    facs = factor_noncyclotomic(cyclotomic_split(n11).noncyclo)
    assert (P("x^4+x^3+1"), 1) in facs and (P("x^5-x^4+x^3-x+1"), 1) in facs
    assert set(factor_noncyclotomic(P("x^6-x^5-x^4+3x^3-x^2-x+1"))) == {(P("x^3-x^2+1"), 1), (P("x^3-x+1"), 1)}
    assert factor_noncyclotomic(P("x^3-x+1")) == [(P("x^3-x+1"), 1)]
    with pytest.raises(UnsupportedDegreeError):
        factor_noncyclotomic(P("x^17+x+1"))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=1, max_size=4), min_size=1, max_size=3))
def test_factor_matches_sympy(parts):
    p = IntPoly((1,))
    for cs in parts:
        p = p * IntPoly(cs + [1])
    n = cyclotomic_split(p).noncyclo
    if n.degree < 1 or n.coeffs[0] == 0:
        return
    assert factor_noncyclotomic(n) == _sympy_factors(n)


MAHLER_TABLE = [
    ("x^9+x^8+x^7-x^5-x^4-x^3+1", 1.436632261),
    ("x^8-x^7-x^4+x^3+1", 1.489581321),
    ("x^2+x+1", 1.0),
    ("x-2", 2.0),
]


@pytest.mark.parametrize("text,value", MAHLER_TABLE)
def test_mahler_examples(text, value):
    assert abs(mahler_measure(P(text)) - value) < 1e-6


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=1, max_size=4), st.lists(st.integers(-2, 2), min_size=1, max_size=4))
def test_mahler_multiplicative(a, b):
    pa, pb = IntPoly(a + [1]), IntPoly(b + [1])
    ma, mb, mab = mahler_measure(pa), mahler_measure(pb), mahler_measure(pa * pb)
    assert ma >= 1 - 1e-12 and mb >= 1 - 1e-12
    assert abs(mab - ma * mb) < 1e-9 * max(1.0, mab)
