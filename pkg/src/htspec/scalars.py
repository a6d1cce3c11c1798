"""Scalar values and their wire format.

Two backends are used throughout: exact rationals (`fractions.Fraction`,
always lowest terms with positive denominator) and complex doubles. The
JSON wire encoding is: integers as numbers, non-integer rationals as
"p/q" strings, everything inexact as a two-element [re, im] array.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import StructuralError

Scalar = Fraction | complex


def parse_scalar(raw) -> Scalar:
    """Parse a wire scalar: number, "p/q" string, or [re, im] pair."""
    if isinstance(raw, bool):
        raise StructuralError(f"boolean is not a scalar: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        return complex(raw, 0.0)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"bad rational literal {raw!r}: {exc}") from None
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2 or any(isinstance(p, bool) or not isinstance(p, (int, float)) for p in raw):
            raise StructuralError(f"complex scalar must be [re, im]: {raw!r}")
        return complex(float(raw[0]), float(raw[1]))
    raise StructuralError(f"unsupported scalar: {raw!r}")


def format_scalar(value: Scalar):
    """Inverse of parse_scalar, choosing the most compact encoding."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    value = complex(value)
    return [value.real, value.imag]


def to_complex(value: Scalar) -> complex:
    if isinstance(value, Fraction):
        return complex(float(value), 0.0)
    return complex(value)


def is_exact(value: Scalar) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def is_real(value: Scalar) -> bool:
    if isinstance(value, Fraction):
        return True
    return complex(value).imag == 0.0


def real_part(value: Scalar) -> float:
    if isinstance(value, Fraction):
        return float(value)
    return complex(value).real
