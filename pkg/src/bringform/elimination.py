"""Eliminating the old variable from a transformation pair.

Given A(z) = 0 and a subsidiary relation B(z, y) = 0 that is polynomial in
both variables, the transformed equation C(y) = 0 satisfied by the images of
A's roots is computed here by two independent routes:

* ``sylvester_resultant_in_z``: the determinant of the Sylvester matrix of A
  and B with respect to z, whose entries are polynomials in y.  In exact
  rational mode the determinant is evaluated by fraction-free (Bareiss)
  elimination; in complex mode by division-free cofactor expansion with
  memoized minors (matrices here are at most 9x9).
* ``transform_by_power_sums``: transport of Newton power sums through the
  map y = T(z), then reconstruction of C from its power sums.

The two routes are deliberately kept independent so tests can use each as an
oracle for the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError
from .polynomials import (UniPoly, _lift, _one_like, _zero_like, power_sums,
                          poly_from_power_sums)
from .scalars import Scalar, rat


@dataclass(frozen=True)
class BiPoly:
    """Polynomial in z whose coefficients are polynomials in y (ascending in z)."""

    z_coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "z_coeffs", tuple(self.z_coeffs))

    @property
    def degree_z(self) -> int:
        return len(self.z_coeffs) - 1

    def eval_z(self, z_value) -> UniPoly:
        """Collapse to a polynomial in y by substituting a value for z."""
        acc = None
        p = rat(1)
        for cy in self.z_coeffs:
            term = cy * p
            acc = term if acc is None else acc + term
            p = p * z_value
        return acc


def _exdiv(num, den):
    if isinstance(num, Scalar):
        return num / den
    return num.exact_div(den)


def _bareiss_det(M):
    """Fraction-free elimination; exact over rational polynomial entries."""
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if M[k][k].is_exact_zero():
            piv = next((i for i in range(k + 1, n) if not M[i][k].is_exact_zero()), None)
            if piv is None:
                return _zero_like(M[0][0])
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num if prev is None else _exdiv(num, prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def _minor_det(M):
    """Division-free cofactor expansion with memoized minors."""
    n = len(M)
    memo = {}

    def det(cols):
        if len(cols) == 1:
            return M[n - 1][cols[0]]
        got = memo.get(cols)
        if got is not None:
            return got
        r = n - len(cols)
        acc = None
        for idx, c in enumerate(cols):
            e = M[r][c]
            if e.is_exact_zero():
                continue
            term = e * det(cols[:idx] + cols[idx + 1:])
            if acc is None:
                acc = term if idx % 2 == 0 else -term
            elif idx % 2 == 0:
                acc = acc + term
            else:
                acc = acc - term
        if acc is None:
            acc = _zero_like(M[0][0])
        memo[cols] = acc
        return acc

    return det(tuple(range(n)))


def _entries_rational(M) -> bool:
    for row in M:
        for e in row:
            if isinstance(e, Scalar):
                if not e.is_rational:
                    return False
            elif not e.is_rational_tree():
                return False
    return True


def poly_matrix_det(M):
    """Determinant of a square matrix of ring elements (UniPoly or Scalar)."""
    if _entries_rational(M):
        return _bareiss_det(M)
    return _minor_det(M)


def _sylvester_matrix(p_desc, q_desc, zero):
    dp, dq = len(p_desc) - 1, len(q_desc) - 1
    size = dp + dq
    rows = []
    for i in range(dq):
        rows.append([zero] * i + list(p_desc) + [zero] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([zero] * i + list(q_desc) + [zero] * (size - dq - 1 - i))
    return rows


def polynomial_resultant(P: UniPoly, Q: UniPoly):
    """Resultant of two univariate polynomials over a shared coefficient ring.

    Returns an element of the coefficient ring (a Scalar, or a UniPoly when
    the coefficients are themselves polynomials).
    """
    if P.is_zero() or Q.is_zero():
        sample = (P.coeffs or Q.coeffs or (rat(0),))[0]
        return _zero_like(sample)
    dp, dq = P.degree, Q.degree
    if dp == 0:
        return P.coeffs[0] ** dq
    if dq == 0:
        return Q.coeffs[0] ** dp
    zero = _zero_like(P.coeffs[0])
    M = _sylvester_matrix(list(reversed(P.coeffs)), list(reversed(Q.coeffs)), zero)
    return poly_matrix_det(M)


def sylvester_resultant_with_factor(A: UniPoly, B: BiPoly):
    """Res_z(A, B) as a monic polynomial in y, plus the leading coefficient
    that was divided out."""
    n = A.degree
    k = B.degree_z
    if not A.is_monic():
        raise ValueError("A must be monic (normalize first)")
    if k < 1 or k >= n:
        raise ValueError("subsidiary degree must satisfy 1 <= k < deg A")
    zero = UniPoly((), "y")
    a_desc = [UniPoly((A.coeff(j),), "y") for j in range(n, -1, -1)]
    b_desc = [B.z_coeffs[j].with_var("y") for j in range(k, -1, -1)]
    M = _sylvester_matrix(a_desc, b_desc, zero)
    det = poly_matrix_det(M)
    if det.is_zero() or det.degree != n:
        raise ConsistencyError(
            "resultant degree %d, expected %d" % (det.degree, n))
    C, lead = det.monic()
    return C.with_var("y"), lead


def sylvester_resultant_in_z(A: UniPoly, B: BiPoly) -> UniPoly:
    """The transformed polynomial C(y), normalized monic."""
    return sylvester_resultant_with_factor(A, B)[0]


def transform_by_power_sums(A: UniPoly, t_coeffs) -> UniPoly:
    """Transport route: power sums of C from power sums of A through y = T(z).

    ``t_coeffs`` are the ascending coefficients of T; they may be Scalars or
    UniPoly values in a formal parameter, in which case C's coefficients come
    back as polynomials in that parameter.  Exact for rational inputs.
    """
    if not A.is_monic():
        raise ValueError("A must be monic (normalize first)")
    n = A.degree
    els = [_lift(c) for c in t_coeffs]
    pvar = next((e.var for e in els if isinstance(e, UniPoly)), None)
    if pvar is not None:
        els = [e if isinstance(e, UniPoly) else UniPoly((e,), pvar) for e in els]
    T = UniPoly(els, A.var)
    k = T.degree
    if k < 1 or k >= n:
        raise ValueError("map degree must satisfy 1 <= deg T < deg A")
    s = power_sums(A, n * k)
    one = _one_like(T.coeffs[0])
    P = UniPoly((one,), A.var)
    sums = []
    for _ in range(n):
        P = P * T
        acc = None
        for j, cj in enumerate(P.coeffs):
            term = cj * s.s(j)
            acc = term if acc is None else acc + term
        sums.append(acc)
    return poly_from_power_sums(sums, "y", one=one)
