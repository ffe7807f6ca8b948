"""Independent reference computations used to check the package.

Nothing here imports the package, so agreement is a genuine cross-check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def rh_genus(n, g0, periods):
    """Genus from the Riemann-Hurwitz relation, or None if not a non-negative integer."""
    two_minus_2g = n * (2 - 2 * g0 + sum((Fraction(1, m) - 1 for m in periods), Fraction(0)))
    g = (2 - two_minus_2g) / 2
    if g.denominator != 1 or g < 0:
        return None
    return int(g)


def egcd_inverse(c, m):
    """Inverse of c modulo m by the extended Euclidean algorithm."""
    old_r, r, old_s, s = c % m, m, 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ValueError("not invertible")
    return old_s % m


def brute_force_datasets(n, g):
    """All data sets of order n >= 2 and genus g, via generating vectors.

    A cone point is an element x != 0 of Z_n (its stabilizer generator); the
    elements must sum to 0, and must generate Z_n when the quotient is a
    sphere. The pair recorded is (x / (n/m), m) with m the order of x.
    """
    out = set()
    for g0 in range(0, g + 2):
        budget = 2 * g - 2 - n * (2 * g0 - 2)
        if budget < 0:
            continue
        if budget == 0 and g0 >= 1:
            for r in range(1, n):
                if math.gcd(r, n) == 1:
                    out.add((n, g0, r, ()))
        max_len = budget // (n // 2) if n >= 2 else 0
        for length in range(1, max_len + 1):
            for xs in itertools.combinations_with_replacement(range(1, n), length):
                if sum(xs) % n:
                    continue
                if g0 == 0 and math.gcd(n, *xs) != 1:
                    continue
                periods = [n // math.gcd(x, n) for x in xs]
                if rh_genus(n, g0, periods) != g:
                    continue
                pairs = tuple(sorted(((x // (n // m), m) for x, m in zip(xs, periods)), key=lambda p: (p[1], p[0])))
                out.add((n, g0, 0, pairs))
    return out


def harvey_dimension(g0, cone_count):
    return 6 * g0 + 2 * cone_count - 6
