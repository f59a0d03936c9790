"""Resultant elimination against power-sum transport.

The two routes share nothing past the polynomial ring: one goes through a
Sylvester determinant, the other through Newton's identities.  On rational
input they must agree coefficient for coefficient, exactly.  That equality is
the oracle for both.
"""

import random
from fractions import Fraction

import mpmath

from bringform import (BiPoly, Subsidiary, UniPoly, find_roots, match_roots,
                       polynomial_resultant, rat, shift_substitute,
                       sylvester_resultant_with_factor,
                       transform_by_power_sums)
from helpers import rand_monic, rand_scalar


def _random_subsidiary(rng, k):
    return Subsidiary(k, tuple(rand_scalar(rng) for _ in range(k)))


def test_routes_agree_exactly_on_rational_input():
    rng = random.Random(31)
    for trial in range(50):
        n = rng.randint(2, 5)
        k = rng.randint(1, min(3, n - 1)) if n > 1 else 1
        A = rand_monic(rng, n)
        sub = _random_subsidiary(rng, k)
        B = BiPoly(sub.z_coeffs_in_y())
        C_res, lead = sylvester_resultant_with_factor(A, B)
        C_pow = transform_by_power_sums(A, sub.t_coeffs())
        assert C_res.is_rational_tree() and C_pow.is_rational_tree()
        assert C_res == C_pow, "trial %d: routes disagree" % trial
        assert C_res.degree == n
        assert C_res.is_monic()


def test_linear_subsidiary_reduces_to_translation():
    rng = random.Random(32)
    for _ in range(20):
        A = rand_monic(rng, rng.randint(2, 5))
        a = rand_scalar(rng)
        sub = Subsidiary(1, (a,))
        C = transform_by_power_sums(A, sub.t_coeffs())
        # y = z + a, so C(y) = A(y - a)
        assert C == shift_substitute(A, a)


def test_transform_transports_roots():
    rng = random.Random(33)
    for _ in range(12):
        n = rng.randint(2, 4)
        k = rng.randint(1, min(3, n - 1)) if n > 1 else 1
        A = rand_monic(rng, n)
        sub = _random_subsidiary(rng, k)
        C = transform_by_power_sums(A, sub.t_coeffs())
        T = sub.map_in_z()
        zs = find_roots(A).roots
        images = [T.eval(z) for z in zs]
        ys = find_roots(C).roots
        ok, dist = match_roots(images, ys, tol="1e-40")
        assert ok, "transported roots missing from image polynomial: %s" % dist


def test_resultant_matches_image_multiset():
    A = UniPoly([rat(0), rat(-1), rat(0), rat(1)])  # z(z-1)(z+1)
    sub = Subsidiary(2, (rat(0), rat(0)))  # y = -z^2
    C, lead = sylvester_resultant_with_factor(A, BiPoly(sub.z_coeffs_in_y()))
    # images of the roots are 0, -1, -1, so C = y(y+1)^2
    assert C == UniPoly([rat(0), rat(1), rat(2), rat(1)], "y")
    assert lead == rat(1)


def test_polynomial_resultant_known_values():
    P = UniPoly([rat(-1), rat(0), rat(1)])  # z^2 - 1
    Q = UniPoly([rat(-4), rat(0), rat(1)])  # z^2 - 4
    # product of Q over the roots of P
    assert polynomial_resultant(P, Q) == rat(9)
    # swapping arguments flips by (-1)^(deg P * deg Q); even here
    assert polynomial_resultant(Q, P) == rat(9)
    L1 = UniPoly([rat(-3), rat(1)])
    L2 = UniPoly([rat(5), rat(2)])
    assert polynomial_resultant(L1, L2) == L2.eval(rat(3))


def test_resultant_detects_shared_root():
    P = UniPoly([rat(-6), rat(11), rat(-6), rat(1)])  # roots 1,2,3
    Q = UniPoly([rat(-2), rat(1)])  # root 2
    assert polynomial_resultant(P, Q).is_exact_zero()


def test_resultant_over_polynomial_coefficients():
    # entries from a nested ring: eliminate b from two b-polynomials whose
    # coefficients are themselves polynomials in c
    c = UniPoly([rat(0), rat(1)], "c")
    one = UniPoly([rat(1)], "c")
    E = UniPoly([c * c, one + one], "b")          # 2b + c^2
    F = UniPoly([c, one], "b")                    # b + c
    G = polynomial_resultant(E, F)
    # 2x2 Sylvester determinant: 2c - c^2
    assert G == UniPoly([rat(0), rat(2), rat(-1)], "c")


def test_routes_agree_in_complex_mode():
    rng = random.Random(34)
    from bringform import cx
    for _ in range(10):
        n = rng.randint(2, 4)
        lower = [rand_scalar(rng) + cx(0) for _ in range(n)]
        A = UniPoly(lower + [rat(1)])
        sub = _random_subsidiary(rng, rng.randint(1, min(3, n - 1)))
        B = BiPoly(sub.z_coeffs_in_y())
        C_res, _ = sylvester_resultant_with_factor(A, B)
        C_pow = transform_by_power_sums(A, sub.t_coeffs())
        scale = max(mpmath.mpf(1), C_res.max_mag())
        for k in range(max(C_res.degree, C_pow.degree) + 1):
            assert (C_res.coeff(k) - C_pow.coeff(k)).mag() <= mpmath.mpf("1e-70") * scale
