"""Numerical verification of transformation steps and whole traces.

Nothing in here feeds back into the algebra: the root finder, the matcher,
and the transports exist so that every claim a trace makes (each output is
the image of the input, the final trinomial really carries the original
roots) can be checked against independently computed root sets.

The root finder is a simultaneous Aberth-Ehrlich iteration with a seeded,
deterministically perturbed circle of starting points, so identical inputs
give bit-identical root sets.  Multiple roots converge to tight clusters
rather than single points; the matcher compares cluster centroids and sizes,
where the symmetric placement error of a cluster cancels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations

import mpmath
from mpmath import workprec

from .errors import ConsistencyError
from .pipeline import dual_eliminate, expected_step_input, reciprocal_transform
from .polynomials import UniPoly, coeff_scale
from .scalars import (DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE, Scalar,
                      as_tol, rat, sort_key)
from .solvers import assemble_preimages, solve_condition

DEFAULT_MATCH_TOLERANCE = "1e-25"


@dataclass(frozen=True)
class RootConfig:
    precision_bits: int = DEFAULT_PRECISION_BITS
    tol: str = DEFAULT_TOLERANCE
    seed: int = 0
    max_iterations: int = 400
    match_tol: str = DEFAULT_MATCH_TOLERANCE


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    residuals: tuple
    converged: bool
    iterations: int

    def max_residual(self):
        return max(self.residuals) if self.residuals else mpmath.mpf(0)


@dataclass(frozen=True)
class VerifyReport:
    max_forward_residual: object  # mpf
    matched: bool
    bring_residuals: tuple

    def to_json(self):
        return {
            "max_forward_residual": mpmath.nstr(self.max_forward_residual, 25),
            "matched": bool(self.matched),
            "bring_residuals": [mpmath.nstr(b, 25) for b in self.bring_residuals],
        }


def find_roots(poly: UniPoly, config: RootConfig = None) -> RootSet:
    """All complex roots of a polynomial with numeric coefficients.

    Exact zero roots are stripped first so the iteration never stalls at the
    origin.  Residuals are measured against a per-root noise floor
    2^(6-prec) * sum |c_j| |z|^j, the best any root of this polynomial can do
    in this precision.
    """
    cfg = config or RootConfig()
    if poly.degree < 1:
        raise ValueError("need degree >= 1 to have roots")
    monic = poly if poly.is_monic() else poly.monic()[0]
    coeffs = list(monic.coeffs)
    zeros = 0
    while len(coeffs) > 1 and coeffs[0].is_exact_zero():
        zeros += 1
        coeffs.pop(0)
    prec = cfg.precision_bits
    found = []
    iterations = 0
    converged = True
    n = len(coeffs) - 1
    if n >= 1:
        with workprec(prec):
            cs = [c.to_mpc(prec) for c in coeffs]
            eps = mpmath.mpf(2) ** (6 - prec)
            bound = 1 + max(abs(c) for c in cs[:-1])
            rng = random.Random(cfg.seed)
            zs = []
            for j in range(n):
                ang = 2 * mpmath.pi * (j + mpmath.mpf(rng.random()) / 4 + rat(1, 3).fraction) / n
                rad = bound * (mpmath.mpf(1) / 2 + mpmath.mpf(rng.random()) / 4)
                zs.append(rad * mpmath.exp(mpmath.mpc(0, 1) * ang))
            dcs = [cs[i] * i for i in range(1, n + 1)]

            def horner(csl, z):
                acc = csl[-1]
                for c in reversed(csl[:-1]):
                    acc = acc * z + c
                return acc

            def noise_floor(z):
                az = abs(z)
                t = mpmath.mpf(0)
                w = mpmath.mpf(1)
                for c in cs:
                    t += abs(c) * w
                    w *= az
                return eps * t

            for it in range(cfg.max_iterations):
                iterations = it + 1
                settled = True
                max_step = mpmath.mpf(0)
                nxt = list(zs)
                for i, z in enumerate(zs):
                    pv = horner(cs, z)
                    if abs(pv) <= 16 * noise_floor(z):
                        continue
                    settled = False
                    dv = horner(dcs, z)
                    if dv == 0:
                        nxt[i] = z + eps * (1 + abs(z))
                        continue
                    w = pv / dv
                    s = mpmath.mpc(0)
                    for j, zj in enumerate(zs):
                        if j != i:
                            s += 1 / (z - zj)
                    den = 1 - w * s
                    corr = w if den == 0 else w / den
                    nxt[i] = z - corr
                    rel = abs(corr) / max(1, abs(z))
                    if rel > max_step:
                        max_step = rel
                zs = nxt
                if settled or (it > 0 and max_step <= eps):
                    break
            zs = _polish_multiple(zs, cs, prec)
            converged = all(abs(horner(cs, z)) <= 64 * noise_floor(z) for z in zs)
        found = [Scalar.from_mpc(z, prec) for z in zs]
    roots = tuple(sorted([rat(0)] * zeros + found, key=sort_key))
    residuals = tuple(monic.eval(r).mag() for r in roots)
    return RootSet(roots, residuals, converged, iterations)


def _polish_multiple(zs, cs, prec):
    """Park every Aberth cluster on the exact multiple root it surrounds.

    A root of multiplicity m is a simple root of the (m-1)th derivative, so a
    few Newton steps from the cluster centroid recover it to full precision;
    all m members are replaced by that one value.  Must run inside workprec.
    """
    n = len(zs)
    if n < 2:
        return zs
    tau = (mpmath.mpf(2) ** (-prec)) ** (mpmath.mpf(1) / n) * 64
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(zs[i] - zs[j]) <= tau * max(1, abs(zs[i]), abs(zs[j])):
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = list(zs)
    eps = mpmath.mpf(2) ** (2 - prec)
    for members in groups.values():
        m = len(members)
        if m < 2:
            continue
        q = list(cs)
        for _ in range(m - 1):
            q = [q[i] * i for i in range(1, len(q))]
        dq = [q[i] * i for i in range(1, len(q))]
        x = sum(zs[i] for i in members) / m
        for _ in range(60):
            fx = x * 0
            for c in reversed(q):
                fx = fx * x + c
            dfx = x * 0
            for c in reversed(dq):
                dfx = dfx * x + c
            if dfx == 0:
                break
            step = fx / dfx
            x = x - step
            if abs(step) <= eps * max(1, abs(x)):
                break
        for i in members:
            out[i] = x
    return out


def _distance(x: Scalar, y: Scalar):
    return (x - y).mag()


def _best_pairing(xs, ys):
    """Smallest achievable max pairwise distance; exact for small sets."""
    n = len(xs)
    if n == 0:
        return mpmath.mpf(0)
    dist = [[_distance(x, y) for y in ys] for x in xs]
    if n <= 6:
        best = None
        for perm in permutations(range(n)):
            worst = max(dist[i][perm[i]] for i in range(n))
            if best is None or worst < best:
                best = worst
        return best
    # greedy nearest-neighbour for larger sets
    free = set(range(n))
    worst = mpmath.mpf(0)
    for i in range(n):
        j = min(free, key=lambda jj: dist[i][jj])
        free.remove(j)
        if dist[i][j] > worst:
            worst = dist[i][j]
    return worst


def _clusters(roots, prec):
    """Group roots closer than the multiple-root resolution limit."""
    n = len(roots)
    if n == 0:
        return []
    tau = (mpmath.mpf(2) ** (-prec)) ** (mpmath.mpf(1) / n) * 64
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            lim = tau * max(1, roots[i].mag(), roots[j].mag())
            if _distance(roots[i], roots[j]) <= lim:
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        acc = None
        for i in members:
            acc = roots[i] if acc is None else acc + roots[i]
        centroid = acc * rat(1, len(members))
        out.append((centroid, len(members)))
    return out


def match_roots(xs, ys, *, tol=DEFAULT_MATCH_TOLERANCE,
                prec=DEFAULT_PRECISION_BITS):
    """Do two root multisets agree within tol?  Returns (matched, distance).

    Plain optimal pairing first; if that misses, both sides are clustered and
    centroids compared, which forgives the symmetric scatter of a multiple
    root without forgiving a genuinely different root.
    """
    if len(xs) != len(ys):
        return False, mpmath.inf
    if not xs:
        return True, mpmath.mpf(0)
    scale = max([1] + [v.mag() for v in xs] + [v.mag() for v in ys])
    thr = as_tol(tol) * scale
    direct = _best_pairing(xs, ys)
    if direct <= thr:
        return True, direct
    cx = _clusters(xs, prec)
    cy = _clusters(ys, prec)
    if sorted(k for _, k in cx) != sorted(k for _, k in cy):
        return False, direct
    if len(cx) == len(xs):  # no clustering happened, the distance is real
        return False, direct
    # pair clusters of equal size by centroid distance
    worst = mpmath.mpf(0)
    free = list(range(len(cy)))
    for cen, size in cx:
        cands = [j for j in free if cy[j][1] == size]
        if not cands:
            return False, direct
        j = min(cands, key=lambda jj: _distance(cen, cy[jj][0]))
        free.remove(j)
        d = _distance(cen, cy[j][0])
        if d > worst:
            worst = d
    return worst <= thr, worst


def _transport_once(step, zs):
    """Image of each root under one step's map."""
    if step.kind == "reciprocal":
        return [rat(1) / z for z in zs]
    T = step.subsidiary.map_in_z()
    return [T.eval(z) for z in zs]


def _relative_residual(poly: UniPoly, value: Scalar):
    scale = coeff_scale(poly) * max(1, value.mag()) ** poly.degree
    return poly.eval(value).mag() / scale


def _polys_close(P: UniPoly, Q: UniPoly, tol) -> bool:
    if P.is_rational_tree() and Q.is_rational_tree():
        return P == Q
    if max(P.degree, Q.degree) < 0:
        return True
    t = as_tol(tol) * coeff_scale(P, Q)
    for k in range(max(P.degree, Q.degree) + 1):
        if (P.coeff(k) - Q.coeff(k)).mag() > t:
            return False
    return True


def verify_transform(step, config: RootConfig = None):
    """Check one step: transported input roots must sit on the output within
    the noise floor and agree with the output's own roots.  Returns
    (max relative forward residual, matched)."""
    cfg = config or RootConfig()
    if step.is_identity:
        return mpmath.mpf(0), True
    zs = find_roots(step.input, cfg).roots
    ys = _transport_once(step, zs)
    worst = mpmath.mpf(0)
    for y in ys:
        r = _relative_residual(step.output, y)
        if r > worst:
            worst = r
    direct = find_roots(step.output, cfg).roots
    ok, _ = match_roots(ys, direct, tol=cfg.match_tol, prec=cfg.precision_bits)
    return worst, ok


def bring_curve_residual(roots):
    """|s1|, |s2|, |s3| of a degree-5 root set; all three vanish exactly when
    the set solves some y^5 + P y + Q."""
    if len(roots) != 5:
        raise ValueError("expected the five roots of a quintic")
    out = []
    for k in (1, 2, 3):
        acc = None
        for r in roots:
            t = r ** k
            acc = t if acc is None else acc + t
        out.append(acc.mag())
    return tuple(out)


def verify_trace(trace, config: RootConfig = None) -> VerifyReport:
    """Re-run every elimination in a trace and transport the original roots
    through it, comparing against directly computed roots of the final form.

    matched goes false if any structural re-check or the final multiset
    comparison fails; nothing raises for a corrupted trace, it just reports.
    """
    cfg = config or RootConfig()
    ok = True
    prev = trace.original
    for step in trace.steps:
        expect_in = expected_step_input(prev.with_var("z"), step)
        if not _polys_close(expect_in, step.input, cfg.tol):
            ok = False
        if step.is_identity:
            if not _polys_close(step.input, step.output, cfg.tol):
                ok = False
        elif step.kind == "reciprocal":
            try:
                redo = reciprocal_transform(step.input, tol=cfg.tol)
                if not _polys_close(redo.output, step.output, cfg.tol):
                    ok = False
            except Exception:
                ok = False
        else:
            try:
                C, _ = dual_eliminate(step.input, step.subsidiary, cfg.tol)
                if not _polys_close(C, step.output, cfg.tol):
                    ok = False
            except ConsistencyError:
                ok = False
        prev = step.output
    zs = list(find_roots(trace.original.with_var("z"), cfg).roots)
    worst = mpmath.mpf(0)
    for step in trace.steps:
        if step.rescue_scaling is not None:
            zs = [z / step.rescue_scaling for z in zs]
        ys = _transport_once(step, zs)
        for y in ys:
            r = _relative_residual(step.output, y)
            if r > worst:
                worst = r
        zs = ys
    direct = find_roots(trace.final, cfg).roots
    m_ok, _ = match_roots(zs, direct, tol=cfg.match_tol, prec=cfg.precision_bits)
    ok = ok and m_ok
    bring = bring_curve_residual(zs) if trace.final.degree == 5 else ()
    return VerifyReport(worst, ok, bring)


def recover_roots(trace, config: RootConfig = None):
    """Roots of the original polynomial, recovered by walking the trace
    backward from the final trinomial through each subsidiary relation."""
    cfg = config or RootConfig()
    ys = list(find_roots(trace.final, cfg).roots)
    for step in reversed(trace.steps):
        if step.kind == "reciprocal":
            ys = [rat(1) / y for y in ys]
        else:
            ys = assemble_preimages(step.input, ys, step,
                                    prec=cfg.precision_bits, tol=cfg.tol)
        if step.rescue_scaling is not None:
            ys = [y * step.rescue_scaling for y in ys]
    return tuple(sorted(ys, key=sort_key))


def obstruction_consistency(report, config: RootConfig = None):
    """For each root c* of the obstruction polynomial, solving the y^2
    condition for b must also kill the y^1 condition; returns the worst
    relative slack |F(b*, c*)|."""
    cfg = config or RootConfig()
    G = report.obstruction
    if G.degree < 1:
        return mpmath.mpf(0)
    cstars = find_roots(G, cfg).roots
    worst = mpmath.mpf(0)
    for cstar in cstars:
        Eb = UniPoly([pc.eval(cstar) for pc in report.y2_condition.coeffs], "b")
        deg, bs = solve_condition(Eb, prec=cfg.precision_bits, tol=cfg.tol)
        if not bs:
            continue
        Fb = UniPoly([pc.eval(cstar) for pc in report.y1_condition.coeffs], "b")
        fscale = max(1, coeff_scale(Fb))
        best = None
        for b in bs:
            r = Fb.eval(b).mag() / (fscale * max(1, b.mag()) ** max(Fb.degree, 0))
            if best is None or r < best:
                best = r
        if best is not None and best > worst:
            worst = best
    return worst
