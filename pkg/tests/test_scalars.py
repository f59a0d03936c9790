"""Number tower: exactness of the rational layer, precision of the complex
layer, and the promotion rules between them.

The rational oracle is fractions.Fraction itself; the complex checks pin the
working precision to 256 bits and require residuals at the 1e-70 scale, far
below anything double arithmetic could produce.
"""

import random
from fractions import Fraction

import mpmath
import pytest

from bringform import DEFAULT_PRECISION_BITS, Scalar, cx, rat
from bringform.scalars import as_tol, negligible, sort_key, tie_break_key

TINY = mpmath.mpf("1e-70")


def test_rational_ops_match_fraction_oracle():
    rng = random.Random(101)
    for _ in range(300):
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        sa, sb = rat(a.numerator, a.denominator), rat(b.numerator, b.denominator)
        assert (sa + sb).fraction == a + b
        assert (sa - sb).fraction == a - b
        assert (sa * sb).fraction == a * b
        if b != 0:
            assert (sa / sb).fraction == a / b
        assert (-sa).fraction == -a
        assert (sa ** 3).fraction == a ** 3


def test_rational_layer_is_exact_not_float():
    # 1/3 in binary floats would drift; here the identity is exact
    x = rat(1, 3)
    acc = rat(0)
    for _ in range(99):
        acc = acc + x
    assert acc.fraction == Fraction(33)
    assert (rat(1, 10 ** 40) + rat(1)).fraction != Fraction(1)


def test_exact_roots_stay_rational():
    assert rat(49, 4).sqrt().fraction == Fraction(7, 2)
    assert rat(27, 8).cbrt().fraction == Fraction(3, 2)
    assert rat(-27).cbrt().fraction == Fraction(-3)
    assert rat(0).sqrt().fraction == 0
    assert rat(1024).nth_root(5).fraction == 4


def test_inexact_roots_promote_with_full_precision():
    s = rat(2).sqrt()
    assert not s.is_rational
    assert s.prec == DEFAULT_PRECISION_BITS
    assert (s * s - rat(2)).mag() < TINY
    c = rat(5).cbrt()
    assert (c * c * c - rat(5)).mag() < TINY


def test_negative_sqrt_is_imaginary():
    s = rat(-4).sqrt()
    assert abs(s.re()) == 0
    assert (s * s + rat(4)).mag() < TINY


def test_negation_conjugation_keep_precision():
    # regression: both paths once rounded through the ambient 53-bit context
    s = rat(2).sqrt()
    n = -s
    assert (n * n - rat(2)).mag() < TINY
    k = s.conjugate()
    assert (k * k - rat(2)).mag() < TINY
    z = cx("1.5", "0.25").sqrt()
    w = z.conjugate()
    assert (z * w - (z * w).conjugate()).mag() < TINY  # |z|^2 is real
    assert (z.conjugate().conjugate() - z).mag() == 0


def test_from_mpc_respects_requested_precision():
    with mpmath.workprec(300):
        v = mpmath.mpf(2).sqrt()
    s = Scalar.from_mpc(v, 256)
    assert (s * s - rat(2)).mag() < TINY


def test_promotion_rules():
    a = rat(1, 3)
    b = cx(2)
    c = a + b
    assert not c.is_rational and c.prec == b.prec
    d = rat(1, 2) * rat(4)  # stays rational
    assert d.is_rational and d.fraction == 2


def test_json_roundtrip_rational_exact():
    for f in (Fraction(0), Fraction(-7, 3), Fraction(10 ** 30, 7)):
        s = rat(f.numerator, f.denominator)
        t = Scalar.from_json(s.to_json())
        assert t.is_rational and t.fraction == f


def test_json_roundtrip_complex_precision():
    rng = random.Random(202)
    for _ in range(25):
        z = cx(rng.uniform(-5, 5), rng.uniform(-5, 5)).sqrt()
        back = Scalar.from_json(z.to_json(), z.prec)
        rel = (back - z).mag() / max(mpmath.mpf(1), z.mag())
        assert rel < mpmath.mpf(2) ** (-240)


def test_negligible_is_exact_for_rationals():
    assert negligible(rat(0), "1e-30")
    assert not negligible(rat(1, 10 ** 60), "1e-30")  # exact nonzero never passes
    assert negligible(cx("1e-40"), "1e-30")
    assert not negligible(cx("1e-20"), "1e-30")
    assert negligible(cx("1e-20"), "1e-30", scale=mpmath.mpf("1e15"))


def test_as_tol_accepts_common_forms():
    assert as_tol("1e-30") == mpmath.mpf("1e-30")
    assert as_tol(None) == mpmath.mpf("1e-30")
    assert as_tol(mpmath.mpf("1e-5")) == mpmath.mpf("1e-5")


def test_sort_key_orders_by_real_then_imaginary():
    xs = [cx(1, 1), cx(0, 2), cx(1, -1), cx(-3, 0)]
    ordered = sorted(xs, key=sort_key)
    assert [x.re() for x in ordered] == sorted(x.re() for x in xs)
    assert ordered[0] == cx(-3, 0)
    assert ordered[2] == cx(1, -1)  # same real part: imaginary breaks the tie


def test_tie_break_prefers_real_small_roots():
    xs = [cx(2, 1), cx(-1, 0), cx(3, 0)]
    best = min(xs, key=tie_break_key)
    assert best == cx(-1, 0)


def test_division_by_exact_zero_raises():
    with pytest.raises(ZeroDivisionError):
        rat(1) / rat(0)
