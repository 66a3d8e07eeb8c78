"""Univariate polynomial helpers on ascending coefficient sequences.

Coefficients are exact scalars (BigRat) or ParamPoly values; every function
works uniformly over both as long as the entries support ring arithmetic.
The zero polynomial is the empty tuple. Used by the Pade construction, the
continued-fraction expansion and the ladder synthesis.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateMathError
from .exact import ParamFraction, ParamPoly, poly_normalize


def trim(coeffs) -> tuple:
    """Drop trailing (highest-order) zeros."""
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def degree(coeffs) -> int:
    return len(trim(coeffs)) - 1


def add(a, b) -> tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x + y)
    return trim(out)


def sub(a, b) -> tuple:
    return add(a, tuple(-c for c in b))


def mul(a, b) -> tuple:
    a = trim(a)
    b = trim(b)
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def scale(a, factor) -> tuple:
    return trim(tuple(c * factor for c in a))


def reverse(coeffs, length: int | None = None) -> tuple:
    """Reverse coefficient order, padding with zeros up to `length` first.

    Realizes the substitution s -> 1/s followed by clearing denominators.
    """
    coeffs = list(coeffs)
    if length is not None:
        if length < len(coeffs):
            raise ValueError("length shorter than the coefficient sequence")
        coeffs += [Fraction(0)] * (length - len(coeffs))
    return trim(reversed(coeffs))


def evaluate(coeffs, point):
    """Horner evaluation; `point` may be exact, float or complex."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * point + (c if not isinstance(c, ParamPoly) else c.constant_value())
    return acc


def divmod_field(a, b) -> tuple[tuple, tuple]:
    """Quotient and remainder with field-valued coefficients.

    Entries must divide exactly (Fraction, or ParamFraction-wrapped); plain
    ParamPoly coefficients are lifted into ParamFraction so that symbolic
    division steps stay exact.
    """
    a = trim(a)
    b = trim(b)
    if not b:
        raise DegenerateMathError("polynomial division by zero")
    lifted = any(isinstance(c, (ParamPoly, ParamFraction)) for c in a + b)
    if lifted:
        a = [c if isinstance(c, ParamFraction) else ParamFraction(c) for c in a]
        b = [c if isinstance(c, ParamFraction) else ParamFraction(c) for c in b]
    else:
        a = list(a)
        b = list(b)
    q = [ParamFraction.from_scalar(0) if lifted else Fraction(0)] * max(
        len(a) - len(b) + 1, 0
    )
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - factor * c
        while a and not a[-1]:
            a.pop()
    return trim(q), trim(a)


def gcd_field(a, b) -> tuple:
    """Monic GCD over the coefficient field; (0, 0) is undefined."""
    a = trim(a)
    b = trim(b)
    if not a and not b:
        raise DegenerateMathError("gcd undefined for two zero polynomials")
    while b:
        a, b = b, divmod_field(a, b)[1]
    lead = a[-1]
    if isinstance(lead, ParamPoly):
        lead = ParamFraction(lead)
    inv = ParamFraction.from_scalar(1) / lead if isinstance(
        lead, ParamFraction
    ) else Fraction(1) / lead
    return scale(a, inv)


def sequence_content(coeff_sequences) -> Fraction:
    """Positive rational content shared by several coefficient sequences.

    Accepts an iterable of sequences whose entries are BigRat or ParamPoly.
    The content is gcd(numerators)/lcm(denominators) taken over every term
    of every entry; all-zero input yields 0.
    """
    from math import gcd as _gcd

    num_gcd = 0
    den_lcm = 1
    for seq in coeff_sequences:
        for c in seq:
            entry = c if isinstance(c, ParamPoly) else ParamPoly.constant(c)
            if entry.is_zero():
                continue
            ec, _ = poly_normalize(entry)
            num_gcd = _gcd(num_gcd, abs(ec.numerator))
            den_lcm = den_lcm * ec.denominator // _gcd(den_lcm, ec.denominator)
    if num_gcd == 0:
        return Fraction(0)
    return Fraction(num_gcd, den_lcm)
