from fractions import Fraction

from app.exceptions import SpaceInputError


def parse_dist(value):
    """
    Parse an exact distance from an int, a Fraction or a string such as
    "3", "1.25" or "7/2". Binary floats and booleans are rejected.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise SpaceInputError(
            f"Distance {value!r} must be an integer or a decimal/rational string"
        )
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SpaceInputError(f"Malformed numeral '{value}'")
    raise SpaceInputError(f"Unsupported distance value {value!r}")


def format_dist(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_points(points):
    return "{" + ", ".join(points) + "}"
