"""Family sweeps: which Borwein / Newman / Littlewood polynomials have
Littlewood or Newman multiples."""

from .families import FamilySpec, enumerate_family
from .pipeline import (
    ClassRecord,
    Prefilter,
    Structure,
    Tri,
    VerdictCache,
    classify_polynomial,
    newman_prefilter,
    partition_structure,
)
from .tables import CountRow, FamilyResult, classify_family, count_row, delta_histogram, listing, mahler_screen
