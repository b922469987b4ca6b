"""Fixed-length base-k digit strings with Lee and Hamming metrics."""
from __future__ import annotations

from dataclasses import dataclass

from .const import MAX_RADIX, RADIX
from .exceptions import CodecError, DimensionError


@dataclass(frozen=True, slots=True)
class TritString:
    """A digit string written most significant first.

    Digit 0 is the rightmost character, so ``TritString.parse("0010").digit(1) == 1``.
    """

    digits: tuple[int, ...]
    radix: int = RADIX

    def __post_init__(self) -> None:
        """Validate the type invariants."""
        if not 2 <= self.radix <= MAX_RADIX:
            raise DimensionError(f"Radix must lie in [2, {MAX_RADIX}], got {self.radix}")
        if not self.digits:
            raise DimensionError("A digit string needs at least one digit")
        for value in self.digits:
            if not 0 <= value < self.radix:
                raise CodecError(f"Digit {value} out of range for radix {self.radix}")

    @classmethod
    def parse(cls, text: str, radix: int = RADIX) -> TritString:
        """Parse a written digit string such as ``"0120"``.

        Args:
            text: Digits, most significant first
            radix: Alphabet size

        Returns:
            The parsed string

        Raises:
            CodecError: If a character is not a digit below the radix
        """
        if not text or any(char not in "0123456789" for char in text):
            raise CodecError(f"Not a digit string: {text!r}")
        return cls(tuple(int(char) for char in text), radix)

    @classmethod
    def zeros(cls, length: int, radix: int = RADIX) -> TritString:
        """Return the all-zero string of the given length."""
        return cls((0,) * length, radix)

    @classmethod
    def filled(cls, value: int, length: int, radix: int = RADIX) -> TritString:
        """Return ``value`` repeated ``length`` times."""
        return cls((value,) * length, radix)

    @classmethod
    def from_int(cls, value: int, length: int, radix: int = RADIX) -> TritString:
        """Decode a base-``radix`` integer into a fixed-length string.

        Raises:
            CodecError: If the value does not fit in ``length`` digits
        """
        if not 0 <= value < radix**length:
            raise CodecError(f"Index {value} outside [0, {radix}^{length})")
        digits = []
        for _ in range(length):
            value, rest = divmod(value, radix)
            digits.append(rest)
        return cls(tuple(reversed(digits)), radix)

    def to_int(self) -> int:
        """Encode as a base-``radix`` integer, rightmost digit least significant."""
        value = 0
        for digit in self.digits:
            value = value * self.radix + digit
        return value

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return "".join(str(digit) for digit in self.digits)

    def digit(self, position: int) -> int:
        """Return the digit at ``position``, counted from the right."""
        return self.digits[len(self.digits) - 1 - position]

    def with_digit(self, position: int, value: int) -> TritString:
        """Return a copy with the digit at ``position`` (from the right) replaced."""
        digits = list(self.digits)
        digits[len(digits) - 1 - position] = value % self.radix
        return TritString(tuple(digits), self.radix)

    def shifted(self, position: int, step: int) -> TritString:
        """Return a copy with the digit at ``position`` moved by ``step`` mod radix."""
        return self.with_digit(position, self.digit(position) + step)


def _check_compatible(x: TritString, y: TritString) -> None:
    if len(x) != len(y) or x.radix != y.radix:
        raise DimensionError(
            f"Incompatible strings {x} (k={x.radix}) and {y} (k={y.radix})"
        )


def lee_weight(s: TritString) -> int:
    """Return the Lee weight, the sum of circular digit magnitudes."""
    return sum(min(digit, s.radix - digit) for digit in s.digits)


def lee_distance(x: TritString, y: TritString) -> int:
    """Return the Lee distance between two strings of equal length and radix.

    Raises:
        DimensionError: If the strings are not comparable
    """
    _check_compatible(x, y)
    difference = TritString(
        tuple((a - b) % x.radix for a, b in zip(x.digits, y.digits)), x.radix
    )
    return lee_weight(difference)


def hamming_distance(
    x: TritString, y: TritString, span: tuple[int, int] | None = None
) -> int:
    """Count differing positions, optionally within an inclusive index span.

    Args:
        x: First string
        y: Second string
        span: Inclusive ``(p, q)`` positions counted from the right; full range if omitted

    Returns:
        Number of positions ``i`` in the span with ``x[i] != y[i]``

    Raises:
        DimensionError: If lengths differ or the span is invalid
    """
    if len(x) != len(y):
        raise DimensionError(f"Length mismatch: {len(x)} != {len(y)}")
    low, high = (0, len(x) - 1) if span is None else span
    if not 0 <= low <= high < len(x):
        raise DimensionError(f"Invalid span [{low}, {high}] for length {len(x)}")
    return sum(1 for position in range(low, high + 1) if x.digit(position) != y.digit(position))
