"""Dense univariate polynomials and power-sum (Newton) conversions.

Coefficients are stored ascending: coeffs[j] multiplies var**j.  Coefficient
entries are Scalars, or (for the symbolic elimination stages) UniPoly values
themselves, so a polynomial in y whose coefficients are polynomials in a
formal parameter d is just UniPoly-in-y over UniPoly-in-d.  All values are
immutable; operations return new objects.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .errors import ConsistencyError
from .scalars import Scalar, as_tol, rat


def _lift(v):
    if isinstance(v, (Scalar, UniPoly)):
        return v
    if isinstance(v, (int, Fraction)):
        return Scalar.rational(v)
    raise TypeError("cannot use %r as a polynomial coefficient" % (v,))


def _zero_like(el):
    if isinstance(el, Scalar):
        return rat(0)
    return UniPoly((), el.var)


def _one_like(el):
    if isinstance(el, Scalar):
        return rat(1)
    inner = el.coeffs[0] if el.coeffs else rat(1)
    return UniPoly((_one_like(inner),), el.var)


class UniPoly:
    """Univariate polynomial with dense ascending coefficients.

    The variable name is presentational only; equality compares coefficient
    sequences.  The zero polynomial has an empty coefficient tuple and
    degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "z"):
        cs = [_lift(c) for c in coeffs]
        while cs and cs[-1].is_exact_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, value, var: str = "z") -> "UniPoly":
        return cls((value,), var)

    @classmethod
    def generator(cls, var: str) -> "UniPoly":
        return cls((rat(0), rat(1)), var)

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _zero_like(self.coeffs[0]) if self.coeffs else rat(0)

    def is_monic(self) -> bool:
        if not self.coeffs:
            return False
        lead = self.coeffs[-1]
        if isinstance(lead, Scalar):
            return lead == 1
        return False

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    def map_coeffs(self, fn, var=None) -> "UniPoly":
        return UniPoly(tuple(fn(c) for c in self.coeffs), var or self.var)

    def is_rational_tree(self) -> bool:
        """True when every scalar in (possibly nested) coefficients is rational."""
        for c in self.coeffs:
            if isinstance(c, Scalar):
                if not c.is_rational:
                    return False
            elif not c.is_rational_tree():
                return False
        return True

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return UniPoly((_lift(other),), self.var)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            s = _lift(other)
            return UniPoly(tuple(c * s for c in self.coeffs), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.coeffs):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        z = _zero_like(self.coeffs[0])
        return UniPoly(tuple(z if c is None else c for c in out), self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            s = _lift(other)
            return UniPoly(tuple(c / s for c in self.coeffs), self.var)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = UniPoly((_one_like(self.coeffs[0]) if self.coeffs else rat(1),), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # -- evaluation and calculus ----------------------------------------------

    def eval(self, x):
        """Horner evaluation; x may be a Scalar or another UniPoly."""
        if not self.coeffs:
            return _lift(0) if isinstance(x, Scalar) else _zero_like(x)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k > 0), self.var)

    def monic(self):
        """Return (self/lead, lead)."""
        lead = self.leading
        return UniPoly(tuple(c / lead for c in self.coeffs), self.var), lead

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        """Exact polynomial division; raises ConsistencyError on a nonzero remainder.

        Used by fraction-free elimination, where divisibility is guaranteed.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        rem = list(self.coeffs)
        dlead = other.leading
        dd = other.degree
        out = [None] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            q = rem[k] / dlead
            out[k - dd] = q
            if not q.is_exact_zero():
                for j, c in enumerate(other.coeffs):
                    rem[k - dd + j] = rem[k - dd + j] - q * c
        for c in rem[:dd]:
            if isinstance(c, Scalar):
                if c.is_rational and c.fraction != 0:
                    raise ConsistencyError("inexact polynomial division")
            elif not c.is_exact_zero():
                if c.is_rational_tree():
                    raise ConsistencyError("inexact polynomial division")
        return UniPoly(out, self.var)

    # -- numeric helpers --------------------------------------------------------

    def max_mag(self):
        """Largest coefficient magnitude (an mpf; 0 for the zero polynomial)."""
        m = mpmath.mpf(0)
        for c in self.coeffs:
            v = c.mag() if isinstance(c, Scalar) else c.max_mag()
            if v > m:
                m = v
        return m

    def effective_degree(self, tol, scale=None) -> int:
        """Degree after ignoring leading coefficients below tol*scale."""
        t = as_tol(tol) * (scale if scale is not None else max(mpmath.mpf(1), self.max_mag()))
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if isinstance(c, Scalar):
                if c.is_rational:
                    if c.fraction != 0:
                        return k
                elif c.mag() > t:
                    return k
            elif not c.is_exact_zero():
                return k
        return -1

    # -- serialization -----------------------------------------------------------

    @property
    def mode(self) -> str:
        return "rational" if self.is_rational_tree() else "complex"

    def to_json(self, prec=None):
        for c in self.coeffs:
            if not isinstance(c, Scalar):
                raise ValueError("only scalar-coefficient polynomials serialize to JSON")
        return {
            "var": self.var,
            "coeffs": [c.to_json() for c in self.coeffs],
            "mode": self.mode,
        }

    @classmethod
    def from_json(cls, obj, prec: int = None) -> "UniPoly":
        from .scalars import DEFAULT_PRECISION_BITS
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise ValueError("polynomial JSON must be an object with a coeffs list")
        p = prec or DEFAULT_PRECISION_BITS
        coeffs = [Scalar.from_json(v, p) for v in obj["coeffs"]]
        return cls(coeffs, obj.get("var", "z"))

    def __repr__(self):
        return "UniPoly(%s, %r)" % (list(self.coeffs), self.var)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_exact_zero():
                continue
            if isinstance(c, UniPoly):
                cs = "(" + str(c) + ")"
            else:
                cs = str(c)
            if k == 0:
                parts.append(cs)
            else:
                term = self.var if k == 1 else "%s^%d" % (self.var, k)
                parts.append(term if cs == "1" else ("-" + term if cs == "-1" else cs + "*" + term))
        return " + ".join(parts).replace("+ -", "- ")


def coeff_scale(*polys):
    """max(1, largest coefficient magnitude) across the given polynomials."""
    m = mpmath.mpf(1)
    for p in polys:
        v = p.max_mag()
        if v > m:
            m = v
    return m


def shift_substitute(poly: UniPoly, a) -> UniPoly:
    """Return C(y) = A(y - a), by iterated synthetic division at the point -a.

    shift_substitute(shift_substitute(p, a), -a) == p, exactly in rational mode.
    """
    a = _lift(a)
    if poly.is_zero():
        return UniPoly((), "y")
    point = -a
    d = list(reversed(poly.coeffs))  # descending
    n = len(d) - 1
    out = []
    for j in range(n + 1):
        for i in range(1, n + 1 - j):
            d[i] = d[i] + d[i - 1] * point
        out.append(d[n - j])
    return UniPoly(out, "y")


def deflate(poly: UniPoly, root) -> UniPoly:
    """Synthetic division of a monic polynomial by (var - root), remainder dropped."""
    root = _lift(root)
    d = list(reversed(poly.coeffs))  # descending
    out = [d[0]]
    for c in d[1:-1]:
        out.append(c + out[-1] * root)
    return UniPoly(list(reversed(out)), poly.var)


class PowerSums:
    """Power sums s_1..s_k of the roots of a monic polynomial (s_0 is the degree)."""

    __slots__ = ("values", "source_degree")

    def __init__(self, values, source_degree: int):
        self.values = tuple(values)
        self.source_degree = source_degree

    def s(self, k: int):
        if k == 0:
            return rat(self.source_degree)
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def power_sums(poly: UniPoly, k_max: int) -> PowerSums:
    """Newton's identities, coefficients to power sums, up to s_{k_max}.

    The polynomial is normalized monic first; degree 0 is rejected.
    """
    if poly.degree < 1:
        raise ValueError("power sums need degree at least 1")
    p = poly if poly.is_monic() else poly.monic()[0]
    n = p.degree
    # elementary symmetric functions: e_k = (-1)^k * c_{n-k}
    e = [rat(1)]
    for k in range(1, n + 1):
        c = p.coeff(n - k)
        e.append(-c if k % 2 == 1 else c)
    s = []
    for k in range(1, k_max + 1):
        acc = rat(0)
        for i in range(1, min(k - 1, n) + 1):
            t = e[i] * s[k - i - 1]
            acc = acc + t if i % 2 == 1 else acc - t
        if k <= n:
            t = e[k] * k
            acc = acc + t if k % 2 == 1 else acc - t
        s.append(acc)
    return PowerSums(s, n)


def poly_from_power_sums(sums, var: str = "y", one=None) -> UniPoly:
    """Newton's identities, power sums back to a monic polynomial.

    ``sums`` lists s_1..s_n; entries may be Scalars or UniPoly values (the
    construction only needs ring operations and division by integers).
    """
    sums = list(sums)
    n = len(sums)
    if n == 0:
        raise ValueError("need at least one power sum")
    if one is None:
        one = _one_like(sums[0])
    e = [one]
    for k in range(1, n + 1):
        acc = None
        for i in range(1, k + 1):
            t = e[k - i] * sums[i - 1]
            if acc is None:
                acc = t if i % 2 == 1 else -t
            else:
                acc = acc + t if i % 2 == 1 else acc - t
        e.append(acc * rat(1, k))
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    for k in range(1, n + 1):
        coeffs[n - k] = e[k] if k % 2 == 0 else -e[k]
    return UniPoly(coeffs, var)
