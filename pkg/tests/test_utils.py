from fractions import Fraction

import pytest

from app.exceptions import SpaceInputError
from app.utils import format_dist, format_points, parse_dist


@pytest.mark.parametrize(
    "value, expected",
    [
        (3, Fraction(3)),
        ("3", Fraction(3)),
        (" 7/2 ", Fraction(7, 2)),
        ("1.25", Fraction(5, 4)),
        (Fraction(2, 6), Fraction(1, 3)),
        ("0", Fraction(0)),
    ],
)
def test_parse_dist(value, expected):
    result = parse_dist(value)
    assert result == expected, f"For {value!r}, expected {expected} but got {result}"


@pytest.mark.parametrize("value", [1.5, True, None, "abc", "1/0", [1]])
def test_parse_dist_rejects(value):
    with pytest.raises(SpaceInputError):
        parse_dist(value)


@pytest.mark.parametrize(
    "value, expected",
    [(Fraction(3), "3"), (Fraction(7, 2), "7/2"), (Fraction(4, 6), "2/3"), (0, "0")],
)
def test_format_dist(value, expected):
    assert format_dist(value) == expected


def test_format_points():
    assert format_points(("p1", "p2")) == "{p1, p2}"
    assert format_points(()) == "{}"
