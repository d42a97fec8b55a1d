"""
Utility functions for the cyquiver package.

Sign rules, rational coefficient helpers and the small conversions shared
by the series, bracket and linear algebra code.
"""

from fractions import Fraction

from sympy import QQ


def koszul_sign(a, b):
    """Sign (-1)^(a*b) for moving a block of degree a past a block of degree b."""
    return -1 if (a * b) % 2 else 1


def as_fraction(value):
    """Converts ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_coefficient(value):
    """Formats a Fraction as 'p' or 'p/q'."""
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_qq(value):
    """Converts an exact coefficient to an element of sympy's QQ domain."""
    value = as_fraction(value)
    return QQ(value.numerator, value.denominator)


def min_precision(*values):
    """Minimum of precisions where None stands for infinite precision."""
    finite = [v for v in values if v is not None]
    if not finite:
        return None
    return min(finite)


def add_precision(value, shift):
    if value is None:
        return None
    return value + shift
