"""Exact rational point sets, orientation signs and verified realizations.

All predicates use exact integer arithmetic: coordinates are scaled to a
common denominator (which preserves every orientation) and determinants are
evaluated in ``int64`` when the magnitudes allow it, otherwise on Python ints.

:func:`realize_bowtie` follows the classical gluing construction: move each
proxy into an unbounded cell of the arrangement spanned by the other points
(with a projective map if needed), point the free direction of P's proxy to
+x and that of Q's proxy to -x, and slide Q to the right until the combined
chirotope is the bowtie.  Nothing is returned unless exact verification
succeeds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .bowtie import bowtie
from .chirotope import Chirotope, SignFunction, hull_cycle, is_extreme
from .errors import Collinear, ProxyNotExtreme, RealizationNotFound, TooSmall

_SMALL = 1 << 29
DEFAULT_BUDGET = 64
MAX_BITS = 4096


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(repr(v))
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return Fraction(int(v[0]), int(v[1]))
    return Fraction(v)


@dataclass(frozen=True)
class PointConfig:
    """Labeled exact rational points in general position."""

    points: Mapping[str, tuple]

    def __post_init__(self):
        pts = {str(k): (to_fraction(x), to_fraction(y)) for k, (x, y) in self.points.items()}
        object.__setattr__(self, "points", pts)
        if len(pts) < 3:
            raise TooSmall("a point configuration needs at least 3 points")
        _orientation_table(pts)  # raises Collinear

    @property
    def labels(self):
        return sorted(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, lab):
        return self.points[lab]

    def max_bits(self):
        return max(max(abs(c.numerator).bit_length(), c.denominator.bit_length())
                   for p in self.points.values() for c in p)


def _integer_coords(pts, labels):
    den = 1
    for lab in labels:
        for c in pts[lab]:
            den = math.lcm(den, c.denominator)
    xs = [int(pts[lab][0] * den) for lab in labels]
    ys = [int(pts[lab][1] * den) for lab in labels]
    return xs, ys


def _orientation_table(pts):
    labels = sorted(pts)
    xs, ys = _integer_coords(pts, labels)
    big = max(max(map(abs, xs)), max(map(abs, ys))) >= _SMALL
    dt = object if big else np.int64
    X = np.array(xs, dtype=dt)
    Y = np.array(ys, dtype=dt)
    dx = X[None, :, None] - X[:, None, None]   # x_j - x_i
    dy = Y[None, :, None] - Y[:, None, None]
    ex = X[None, None, :] - X[:, None, None]   # x_k - x_i
    ey = Y[None, None, :] - Y[:, None, None]
    D = dx * ey - dy * ex
    if big:
        S = np.vectorize(lambda v: (v > 0) - (v < 0), otypes=[np.int8])(D)
    else:
        S = np.sign(D).astype(np.int8)
    n = len(labels)
    i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    bad = (S == 0) & (i < j) & (j < k)
    if bad.any():
        a, b, c = np.argwhere(bad)[0]
        raise Collinear((labels[a], labels[b], labels[c]))
    return labels, S


def orientation(p, q, r) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def chirotope_of_points(P) -> Chirotope:
    """Chirotope of a point set: sign of the orientation determinant."""
    pts = P.points if isinstance(P, PointConfig) else \
        {str(k): (to_fraction(x), to_fraction(y)) for k, (x, y) in P.items()}
    labels, S = _orientation_table(pts)
    return Chirotope._trusted(SignFunction(labels, S))


# ---------------------------------------------------------------------------
# gluing construction


def _perp(v):
    return (-v[1], v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _free_direction(pts, q):
    """A direction v such that the ray from pts[q] along v meets no line
    spanned by two other points, and no such line is parallel to v.

    Returns ``None`` when the proxy sits in a bounded cell.
    """
    p0 = pts[q]
    others = [pts[lab] for lab in sorted(pts) if lab != q]
    normals = []
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            a, b = others[i], others[j]
            m = _perp((b[0] - a[0], b[1] - a[1]))
            if _dot(m, (a[0] - p0[0], a[1] - p0[1])) < 0:
                m = (-m[0], -m[1])
            normals.append(m)   # the ray along v hits the line iff m.v > 0

    def ok(v, strict=True):
        return all((_dot(m, v) < 0) if strict else (_dot(m, v) <= 0) for m in normals)

    for m in normals:
        v = (-m[0], -m[1])
        if ok(v):
            return v
    bounds = []
    for m in normals:
        for v in (_perp(m), (-_perp(m)[0], -_perp(m)[1])):
            if ok(v, strict=False) and not any(
                    _cross(v, u) == 0 and _dot(v, u) > 0 for u in bounds):
                bounds.append(v)
    for i in range(len(bounds)):
        for j in range(i + 1, len(bounds)):
            v = (bounds[i][0] + bounds[j][0], bounds[i][1] + bounds[j][1])
            if v != (0, 0) and ok(v):
                return v
    return None


def _supporting_normal(pts, q):
    """Outward direction strictly supporting the hull at ``q``."""
    chi = chirotope_of_points(pts)
    cyc = hull_cycle(chi)
    i = cyc.index(q)
    prev, nxt = pts[cyc[i - 1]], pts[cyc[(i + 1) % len(cyc)]]
    p0 = pts[q]
    e1 = (p0[0] - prev[0], p0[1] - prev[1])
    e2 = (nxt[0] - p0[0], nxt[1] - p0[1])
    # outward normals of counterclockwise edges
    n1 = (e1[1], -e1[0])
    n2 = (e2[1], -e2[0])
    return (n1[0] + n2[0], n1[1] + n2[1])


def _escape_eps(pts, q, n):
    """Half the distance parameter to the first spanned line met by q + t n."""
    p0 = pts[q]
    others = [pts[lab] for lab in sorted(pts) if lab != q]
    best = None
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            a, b = others[i], others[j]
            m = _perp((b[0] - a[0], b[1] - a[1]))
            den = _dot(m, n)
            if den == 0:
                continue
            t = _dot(m, (a[0] - p0[0], a[1] - p0[1])) / den
            if t > 0 and (best is None or t < best):
                best = t
    return Fraction(1) if best is None else best / 2


def _projective_unbound(pts, q, eps_scale):
    """Projective image of ``pts`` sending a line just beyond ``q`` to infinity.

    Orientation is preserved since every point gets a positive weight and
    the map has positive determinant.
    """
    n = _supporting_normal(pts, q)
    eps = _escape_eps(pts, q, n) * eps_scale
    p0 = pts[q]
    c = eps * _dot(n, n)   # n . r after moving q to the origin
    out = {}
    for lab, (x, y) in pts.items():
        x, y = x - p0[0], y - p0[1]
        w = c - (n[0] * x + n[1] * y)
        out[lab] = (x / w, y / w)
    return out


def _normalize(pts, q, v, sign):
    """Affine map: q to the origin, v to sign * (+x), positive determinant."""
    p0 = pts[q]
    vx, vy = v
    if sign < 0:
        vx, vy = -vx, -vy
    out = {}
    for lab, (x, y) in pts.items():
        x, y = x - p0[0], y - p0[1]
        out[lab] = (vx * x + vy * y, -vy * x + vx * y)
    return out


def _prepared(pts, q, sign, max_attempts):
    """Yield normalized copies of ``pts`` whose proxy escapes along sign*x."""
    v = _free_direction(pts, q)
    if v is not None:
        yield _normalize(pts, q, v, sign)
    scale = Fraction(1)
    chi = chirotope_of_points(pts)
    for _ in range(max_attempts):
        img = _snap(_projective_unbound(pts, q, scale), chi)
        v = _free_direction(img, q)
        if v is not None:
            yield _normalize(img, q, v, sign)
        scale /= 2


def _extent(pts):
    return max(max(abs(x), abs(y)) for x, y in pts.values())


def _snap(pts, target, min_bits=8):
    """Round onto a coarse integer grid that keeps the chirotope ``target``.

    Each axis is scaled to its own span (a positive diagonal map keeps
    orientations).  The grid size is found by doubling, then refined by
    bisection.  Keeps coordinate sizes from compounding across successive
    merges; returns ``pts`` unchanged when no grid up to its own size works.
    """
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    wx, wy = max(xs) - min(xs), max(ys) - min(ys)
    limit = max(max(c.numerator.bit_length(), c.denominator.bit_length())
                for p in pts.values() for c in p)

    def attempt(bits):
        sx, sy = Fraction(1 << bits) / wx, Fraction(1 << bits) / wy
        grid = {lab: (round(x * sx), round(y * sy)) for lab, (x, y) in pts.items()}
        try:
            return grid if chirotope_of_points(grid) == target else None
        except Collinear:
            return None

    lo, hi, best = min_bits // 2, min_bits, None
    while hi <= 2 * limit:
        best = attempt(hi)
        if best is not None:
            break
        lo, hi = hi, 2 * hi
    if best is None:
        return pts
    while hi - lo > 1:
        mid = (lo + hi) // 2
        grid = attempt(mid)
        if grid is None:
            lo = mid
        else:
            hi, best = mid, grid
    return {lab: (Fraction(x), Fraction(y)) for lab, (x, y) in best.items()}


def realize_bowtie(P, x_star, Q, y_star, budget=DEFAULT_BUDGET, target=None) -> PointConfig:
    """Points whose chirotope is bowtie(chi_P, x*, chi_Q, y*), verified exactly.

    Raises :class:`RealizationNotFound` after ``budget`` failed verifications.
    """
    P = P if isinstance(P, PointConfig) else PointConfig(P)
    Q = Q if isinstance(Q, PointConfig) else PointConfig(Q)
    chi = chirotope_of_points(P)
    xi = chirotope_of_points(Q)
    if not is_extreme(chi, x_star):
        raise ProxyNotExtreme(f"{x_star!r} is not extreme in its configuration")
    if not is_extreme(xi, y_star):
        raise ProxyNotExtreme(f"{y_star!r} is not extreme in its configuration")
    if target is None:
        target = bowtie(chi, x_star, xi, y_star)
    attempts = 0
    reason = "no free escape direction"
    preps_p = _prepared(P.points, x_star, +1, 8)
    preps_q = list(_prepared(Q.points, y_star, -1, 8))
    for pp in preps_p:
        for qq in preps_q:
            d = 2 * (_extent(pp) + _extent(qq)) + 1
            while attempts < budget:
                attempts += 1
                pts = {lab: c for lab, c in pp.items() if lab != x_star}
                pts.update({lab: (x + d, y) for lab, (x, y) in qq.items() if lab != y_star})
                cand = PointConfig.__new__(PointConfig)
                object.__setattr__(cand, "points", pts)
                if cand.max_bits() > MAX_BITS:
                    reason = "coordinate bit-length budget exceeded"
                    break
                try:
                    got = chirotope_of_points(pts)
                except Collinear:
                    got = None
                if got == target:
                    object.__setattr__(cand, "points", _snap(pts, target))
                    return cand
                reason = "verification failed"
                d *= 2
            if attempts >= budget:
                raise RealizationNotFound(attempts, reason=reason)
    raise RealizationNotFound(attempts, reason=reason)


def realize_tree(T, node_realizations, budget=DEFAULT_BUDGET) -> PointConfig:
    """Realize expand(T) by gluing node realizations leaf by leaf.

    ``node_realizations[v]`` must realize the decoration of node ``v``.
    """
    from .tree import expand

    configs = {}
    for v in T.nodes:
        P = node_realizations[v]
        P = P if isinstance(P, PointConfig) else PointConfig(P)
        if chirotope_of_points(P) != T.nodes[v]:
            raise ValueError(f"points given for node {v!r} do not realize its decoration")
        configs[v] = P
    adj = {v: {} for v in T.nodes}   # v -> {u: (proxy at v, proxy at u)}
    for (u, pu, v, pv) in T.edges:
        adj[u][v] = (pu, pv)
        adj[v][u] = (pv, pu)
    while len(configs) > 1:
        leaf = min(v for v in configs if len(adj[v]) == 1)
        (parent, (p_leaf, p_parent)), = adj[leaf].items()
        try:
            merged = realize_bowtie(configs[parent], p_parent, configs[leaf], p_leaf, budget)
        except RealizationNotFound as exc:
            raise RealizationNotFound(exc.attempts, node=leaf, reason=exc.reason) from None
        configs[parent] = merged
        del configs[leaf]
        del adj[parent][leaf]
        del adj[leaf]
    (result,) = configs.values()
    if chirotope_of_points(result) != expand(T):
        raise RealizationNotFound(0, reason="final verification failed")
    return result
