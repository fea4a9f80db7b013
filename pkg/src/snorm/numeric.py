"""Rational scalars: parsing, serialization and correctly rounded decimals."""

from fractions import Fraction

import gmpy2

from snorm.errors import DomainError

DEFAULT_DIGITS = 12


def to_scalar(value):
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings such as ``"-3/4"``.  Floats are
    refused because they would smuggle rounding into exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {value!r}") from exc
    raise DomainError(f"not an exact scalar: {value!r}")


def format_scalar(value):
    """Serialize a rational as ``"num/den"``."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _round_half_even(floor_value, above_half, is_half):
    if above_half or (is_half and floor_value % 2 == 1):
        return floor_value + 1
    return floor_value


def _digits_string(scaled, digits):
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def render_decimal(value, digits=DEFAULT_DIGITS):
    """Decimal string of a rational, rounded half-even to ``digits`` places."""
    value = Fraction(value)
    scaled = value * 10**digits
    fl = scaled.numerator // scaled.denominator
    rem = scaled - fl
    out = _round_half_even(fl, rem > Fraction(1, 2), rem == Fraction(1, 2))
    return _digits_string(out, digits)


def render_root(value, p, digits=DEFAULT_DIGITS):
    """Decimal string of ``value ** (1/p)`` for rational ``value >= 0``.

    The rounding is exact: the floor comes from an integer p-th root and
    the half-way comparison is done in integers, so no digit is ever
    off by one.
    """
    value = Fraction(value)
    if value < 0:
        raise DomainError("p-th roots are taken of non-negative values only")
    if p == 1:
        return render_decimal(value, digits)
    a, b = value.numerator, value.denominator
    target = a * 10 ** (digits * p)
    fl = int(gmpy2.iroot(gmpy2.mpz(target // b), p)[0])
    # compare (fl + 1/2)**p with target/b
    lhs = (2 * fl + 1) ** p * b
    rhs = target * 2**p
    out = _round_half_even(fl, rhs > lhs, rhs == lhs)
    return _digits_string(out, digits)
