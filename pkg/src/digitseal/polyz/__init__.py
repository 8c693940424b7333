"""Exact integer polynomial arithmetic and structure."""

from .core import (
    ONE,
    X,
    ZERO,
    InexactDivisionError,
    IntPoly,
    NotMonicError,
    PolyParseError,
    content,
    derivative,
    divides,
    divmod_monic,
    exact_div,
    format_coeffs,
    format_poly,
    height,
    parse_poly,
    primitive_part,
    product,
    reciprocal,
)
from .factor import UnsupportedDegreeError, factor_noncyclotomic, mahler_measure
from .structure import (
    CyclotomicSplit,
    SquarefreeDecomposition,
    cyclotomic,
    cyclotomic_split,
    has_nonneg_real_root,
    is_cyclotomic_free,
    poly_gcd,
    real_root_count,
    squarefree_decomposition,
    squarefree_part,
    sturm_sequence,
)
