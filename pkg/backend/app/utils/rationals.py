"""Exact rational helpers for bounded-denominator exclusion."""

import math
from fractions import Fraction


def farey_neighbors(x: Fraction, qmax: int) -> tuple[Fraction, Fraction]:
    """
    Closest fractions with denominator <= qmax on either side of x.

    Walks the Stern-Brocot tree in batched steps, so the cost is the length
    of the continued fraction of x rather than its size.

    Args:
        x: Non-negative exact rational
        qmax: Largest admissible denominator (>= 1)

    Returns:
        (lo, hi) with lo <= x <= hi; both equal x when x.denominator <= qmax
    """
    if qmax < 1:
        raise ValueError("qmax must be positive")
    if x.denominator <= qmax:
        return x, x
    num, den = x.numerator, x.denominator
    lo_p, lo_q = num // den, 1
    hi_p, hi_q = lo_p + 1, 1
    while lo_q + hi_q <= qmax:
        mid_p, mid_q = lo_p + hi_p, lo_q + hi_q
        if mid_p * den < num * mid_q:
            # Move lo toward x as far as the bound allows.
            gap = num * lo_q - lo_p * den
            slope = hi_p * den - num * hi_q
            steps = min((gap - 1) // slope, (qmax - lo_q) // hi_q)
            lo_p, lo_q = lo_p + steps * hi_p, lo_q + steps * hi_q
        else:
            gap = hi_p * den - num * hi_q
            slope = num * lo_q - lo_p * den
            steps = min((gap - 1) // slope, (qmax - hi_q) // lo_q)
            hi_p, hi_q = hi_p + steps * lo_p, hi_q + steps * lo_q
    return Fraction(lo_p, lo_q), Fraction(hi_p, hi_q)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """
    The fraction with the smallest denominator in the closed interval [lo, hi].

    Args:
        lo: Lower end, 0 <= lo
        hi: Upper end, lo <= hi

    Returns:
        The simplest rational in [lo, hi] (smallest numerator on ties)
    """
    if lo < 0 or hi < lo:
        raise ValueError("need 0 <= lo <= hi")
    whole = math.floor(lo)
    if whole == lo:
        return Fraction(whole)
    if whole + 1 <= hi:
        return Fraction(whole + 1)
    # whole < lo <= hi < whole + 1: recurse on the reciprocal of the fractional parts.
    inner = simplest_between(1 / (hi - whole), 1 / (lo - whole))
    return whole + 1 / inner


def bounded_fraction_in(lo: Fraction, hi: Fraction, qmax: int) -> Fraction | None:
    """A fraction with denominator <= qmax inside [lo, hi], or None."""
    candidate = simplest_between(lo, hi)
    return candidate if candidate.denominator <= qmax else None


def denominator_sweep(lo: Fraction, hi: Fraction, qmax: int) -> Fraction | None:
    """
    Brute-force oracle: scan q = 1..qmax for some p/q in [lo, hi].

    Independent of the continued-fraction code above; used to re-check
    exclusion claims.
    """
    a, b = lo.numerator, lo.denominator
    c, d = hi.numerator, hi.denominator
    for q in range(1, qmax + 1):
        p = -((-a * q) // b)  # ceil(lo * q)
        if p * d <= c * q:
            return Fraction(p, q)
    return None


def dyadic_level(distance: Fraction) -> int:
    """Least k >= 0 with 2**-k <= distance."""
    if distance <= 0:
        raise ValueError("distance must be positive")
    ratio = math.ceil(1 / distance)
    return (ratio - 1).bit_length()


def dyadic_ball_contains(center: Fraction, level: int, x: Fraction) -> bool:
    """|x - center| < 2**-level, exactly."""
    return abs(x - center) * (1 << level) < 1
