"""Tests for digit strings and their metrics."""
from __future__ import annotations

import itertools

import pytest

from e3c.exceptions import CodecError, DimensionError
from e3c.trits import TritString, hamming_distance, lee_distance, lee_weight


def t(text: str, radix: int = 3) -> TritString:
    return TritString.parse(text, radix)


def test_digit_zero_is_rightmost() -> None:
    value = t("0010")
    assert value.digit(1) == 1
    assert value.digit(0) == 0
    assert str(value) == "0010"


@pytest.mark.parametrize(
    ("text", "radix", "expected"),
    [("4321", 5, 6), ("0000", 3, 0), ("122", 3, 3)],
)
def test_lee_weight(text: str, radix: int, expected: int) -> None:
    assert lee_weight(t(text, radix)) == expected


@pytest.mark.parametrize(
    ("x", "y", "radix", "expected"),
    [("1234", "4321", 5, 6), ("012", "210", 3, 2), ("0120", "0120", 3, 0)],
)
def test_lee_distance(x: str, y: str, radix: int, expected: int) -> None:
    assert lee_distance(t(x, radix), t(y, radix)) == expected


def test_hamming_distance_full_and_span() -> None:
    assert hamming_distance(t("1234", 5), t("4321", 5)) == 4
    assert hamming_distance(t("0010"), t("0000"), (1, 1)) == 1
    assert hamming_distance(t("0120"), t("0210"), (1, 2)) == 2
    assert hamming_distance(t("0120"), t("0210"), (0, 0)) == 0


def test_hamming_rejects_bad_span() -> None:
    with pytest.raises(DimensionError):
        hamming_distance(t("0120"), t("0210"), (2, 1))
    with pytest.raises(DimensionError):
        hamming_distance(t("0120"), t("0210"), (0, 4))


def test_lee_distance_rejects_mismatch() -> None:
    with pytest.raises(DimensionError):
        lee_distance(t("012"), t("0120"))
    with pytest.raises(DimensionError):
        lee_distance(t("012", 3), t("012", 5))


@pytest.mark.parametrize("text", ["", "01a", "-1", "0 1"])
def test_parse_rejects_non_digits(text: str) -> None:
    with pytest.raises(CodecError):
        TritString.parse(text)


def test_digit_out_of_radix() -> None:
    with pytest.raises(CodecError):
        TritString.parse("013")
    with pytest.raises(DimensionError):
        TritString((0,), 11)
    with pytest.raises(DimensionError):
        TritString(())


def test_int_codec() -> None:
    assert str(TritString.from_int(1, 4)) == "0001"
    assert TritString.parse("2101").to_int() == 2 * 27 + 9 + 1
    with pytest.raises(CodecError):
        TritString.from_int(81, 4)


def test_shifted_wraps() -> None:
    assert str(t("02").shifted(0, 1)) == "00"
    assert str(t("02").with_digit(1, 4)) == "12"


@pytest.mark.parametrize("radix", [2, 3])
def test_lee_equals_hamming_for_small_radix(radix: int) -> None:
    strings = [TritString(digits, radix) for digits in itertools.product(range(radix), repeat=4)]
    for x, y in itertools.product(strings, repeat=2):
        assert lee_distance(x, y) == hamming_distance(x, y)


def test_lee_distance_is_a_metric() -> None:
    strings = [TritString(digits) for digits in itertools.product(range(3), repeat=3)]
    for x, y in itertools.product(strings, repeat=2):
        assert lee_distance(x, y) == lee_distance(y, x)
        assert (lee_distance(x, y) == 0) == (x == y)
    for x, y, z in itertools.product(strings, repeat=3):
        assert lee_distance(x, z) <= lee_distance(x, y) + lee_distance(y, z)


def test_lee_weight_ceiling() -> None:
    for digits in itertools.product(range(5), repeat=3):
        assert lee_weight(TritString(digits, 5)) <= 3 * 2
