"""digitseal: decide whether an integer polynomial divides a polynomial with
coefficients from a finite digit set, and classify small Borwein polynomials
by their Littlewood and Newman multiples."""

from .polyz import IntPoly, format_poly, parse_poly
from .search import DigitSet, Found, Inconclusive, NoMultiple, SearchOptions, decide, verify_witness

__version__ = "0.1.0"
