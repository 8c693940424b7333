from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from ..polyz.core import IntPoly

FAMILIES = ("borwein", "newman", "littlewood")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    degree: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.degree < 1:
            raise ValueError("degree must be positive")

    @property
    def count(self) -> int:
        """Closed-form family size.

        borwein: ends in {-1,1}, d-1 middle digits in {-1,0,1} -> 4*3^(d-1)
        newman: ends fixed at 1, d-1 middle digits in {0,1}     -> 2^(d-1)
        littlewood: d+1 digits in {-1,1}                        -> 2^(d+1)
        """
        d = self.degree
        if self.family == "borwein":
            return 4 * 3 ** (d - 1)
        if self.family == "newman":
            return 2 ** (d - 1)
        return 2 ** (d + 1)


def enumerate_family(spec: FamilySpec) -> Iterator[IntPoly]:
    d = spec.degree
    if spec.family == "borwein":
        ends, middle = (-1, 1), (-1, 0, 1)
        for c0 in ends:
            for mid in product(middle, repeat=d - 1):
                for cd in ends:
                    yield IntPoly((c0,) + mid + (cd,))
    elif spec.family == "newman":
        for mid in product((0, 1), repeat=d - 1):
            yield IntPoly((1,) + mid + (1,))
    else:
        for cs in product((-1, 1), repeat=d + 1):
            yield IntPoly(cs)
