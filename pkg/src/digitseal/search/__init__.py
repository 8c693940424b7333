"""Remainder graph search for digit-restricted multiples."""

from .digits import DigitSet
from .engine import (
    DEFAULT_SCHEDULE,
    Found,
    Inconclusive,
    NoMultiple,
    SearchOptions,
    Verdict,
    decide,
    make_schedule,
    search,
    step,
)
from .graph import GraphExport, export_graph
from .rem import Membership, RemChecker, Thresholds, UnimodularUnresolvedError, compute_thresholds, in_rem
from .witness import (
    extend_with_cyclotomic,
    format_sign_string,
    load_fixture,
    parse_sign_string,
    verify_witness,
)
