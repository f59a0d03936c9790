"""Shared generators for the seeded-random test suites."""

from fractions import Fraction

import mpmath

from bringform import UniPoly, rat


def rand_fraction(rng, lo=-10, hi=10, max_den=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_scalar(rng, lo=-10, hi=10, max_den=6):
    f = rand_fraction(rng, lo, hi, max_den)
    return rat(f.numerator, f.denominator)


def rand_monic(rng, deg, lo=-10, hi=10, max_den=6, var="z") -> UniPoly:
    cs = [rand_scalar(rng, lo, hi, max_den) for _ in range(deg)]
    cs.append(rat(1))
    return UniPoly(cs, var)


def rand_int_monic(rng, deg, lo=-10, hi=10, var="z") -> UniPoly:
    cs = [rat(rng.randint(lo, hi)) for _ in range(deg)]
    cs.append(rat(1))
    return UniPoly(cs, var)


def max_coeff_diff(P: UniPoly, Q: UniPoly):
    """Largest |p_i - q_i| over the union of coefficient positions."""
    n = max(P.degree, Q.degree)
    worst = mpmath.mpf(0)
    for k in range(n + 1):
        d = (P.coeff(k) - Q.coeff(k)).mag()
        if d > worst:
            worst = d
    return worst
