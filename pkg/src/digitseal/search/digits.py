from __future__ import annotations

from dataclasses import dataclass

MAX_DIGITS = 16


@dataclass(frozen=True)
class DigitSet:
    """Finite set of integer digits, stored sorted and without repeats."""

    digits: tuple[int, ...]

    def __post_init__(self):
        ds = tuple(sorted(set(int(d) for d in self.digits)))
        if not ds:
            raise ValueError("digit set must be nonempty")
        if not any(ds):
            raise ValueError("digit set {0} has no admissible leading digit")
        if len(ds) > MAX_DIGITS:
            raise ValueError(f"digit sets larger than {MAX_DIGITS} are not supported")
        object.__setattr__(self, "digits", ds)

    @classmethod
    def littlewood(cls) -> "DigitSet":
        return cls((-1, 1))

    @classmethod
    def newman(cls) -> "DigitSet":
        return cls((0, 1))

    @classmethod
    def parse(cls, text: str) -> "DigitSet":
        try:
            return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))
        except ValueError as exc:
            raise ValueError(f"bad digit list {text!r}: {exc}") from exc

    @property
    def bound(self) -> int:
        return max(abs(d) for d in self.digits)

    @property
    def is_symmetric(self) -> bool:
        return all(-d in self.digits for d in self.digits)

    @property
    def contains_zero(self) -> bool:
        return 0 in self.digits

    @property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(d for d in self.digits if d)

    @property
    def one_signed(self) -> bool:
        """All digits >= 0 or all <= 0."""
        return min(self.digits) >= 0 or max(self.digits) <= 0

    def __contains__(self, d: int) -> bool:
        return d in self.digits

    def __iter__(self):
        return iter(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return "{" + ",".join(str(d) for d in self.digits) + "}"
