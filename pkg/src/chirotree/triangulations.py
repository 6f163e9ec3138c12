"""Triangulation counting: brute-force enumeration and the polynomial merge.

A triangulation is an inclusion-maximal set of pairwise non-crossing
segments.  Enumeration lists the maximal cliques of the segment
compatibility graph.  Counting on a chirotope tree computes, for each node,
the *full triangulation polynomial* (marking proxy degrees and proxy-proxy
edges) and folds leaves into their parents with the R_{a,b} kernels.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .bowtie import is_module
from .chirotope import Chirotope, is_extreme
from .errors import (
    DivisionRemainder,
    NotAModule,
    ProxyNotExtreme,
    SizeCapExceeded,
    UnknownLabel,
    VariableMismatch,
)
from .polynomial import Poly
from .realization import PointConfig, chirotope_of_points
from .tree import ChirotopeTree, Edge

ENUMERATION_CAP = 11


def binom(n, k):
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class Triangulation:
    edges: frozenset  # of sorted label pairs

    def __len__(self):
        return len(self.edges)

    def neighbors(self, x):
        return frozenset(b if a == x else a for a, b in self.edges if x in (a, b))

    def degree(self, x):
        return sum(1 for e in self.edges if x in e)

    def sorted_edges(self):
        return sorted(self.edges)


def _edge(a, b):
    return (a, b) if a < b else (b, a)


def _check_enum_cap(chi, cap):
    if cap is not None and chi.n > cap:
        raise SizeCapExceeded(f"enumeration limited to {cap} elements, got {chi.n}")


def _segments(chi):
    n = chi.n
    I, J = np.triu_indices(n, 1)
    return I, J


def enumerate_triangulations(chi: Chirotope, cap=ENUMERATION_CAP):
    """Every triangulation of ``chi``, sorted by edge list."""
    _check_enum_cap(chi, cap)
    I, J = _segments(chi)
    cross = _kernels.crossing_matrix(chi.table, I, J)
    adj = ~cross
    np.fill_diagonal(adj, False)
    L = chi.labels
    out = []
    for mask in _kernels.maximal_cliques(adj):
        edges = frozenset((L[I[s]], L[J[s]]) for s in range(len(I)) if mask >> s & 1)
        out.append(Triangulation(edges))
    out.sort(key=Triangulation.sorted_edges)
    return out


def count_triangulations_brute(chi: Chirotope, cap=ENUMERATION_CAP) -> int:
    return len(enumerate_triangulations(chi, cap))


def maximal_noncrossing_between(chi: Chirotope, A: Iterable, B: Iterable):
    """Maximal sets of pairwise non-crossing segments joining ``A`` to ``B``."""
    A, B = sorted(A), sorted(B)
    segs = [(a, b) for a in A for b in B]
    idx = chi.index
    I = np.array([idx[a] for a, _ in segs], np.int64)
    J = np.array([idx[b] for _, b in segs], np.int64)
    adj = ~_kernels.crossing_matrix(chi.table, I, J)
    np.fill_diagonal(adj, False)
    return [frozenset(_edge(*segs[s]) for s in range(len(segs)) if mask >> s & 1)
            for mask in _kernels.maximal_cliques(adj)]


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class FullTriangulationPolynomial:
    """Generating polynomial of triangulations of a node.

    Variables ``x:p`` carry the degree of each proxy ``p`` and ``y:p|q``
    (``p`` before ``q`` in ``proxies``) marks the presence of edge ``pq``.
    """

    proxies: tuple
    poly: Poly

    @staticmethod
    def x_var(p):
        return f"x:{p}"

    @staticmethod
    def y_var(p, q):
        return f"y:{p}|{q}"

    @classmethod
    def variables(cls, proxies):
        xs = [cls.x_var(p) for p in proxies]
        ys = [cls.y_var(p, q) for p, q in combinations(proxies, 2)]
        return tuple(xs + ys)

    def y_of(self, p, q):
        i, j = self.proxies.index(p), self.proxies.index(q)
        return self.y_var(p, q) if i < j else self.y_var(q, p)

    def value(self) -> int:
        return self.poly.evaluate()

    def univariate(self, name="s") -> Poly:
        """The degree polynomial of the single proxy, as a polynomial in ``name``."""
        if len(self.proxies) != 1:
            raise VariableMismatch("univariate() needs exactly one proxy")
        return self.poly.rename({self.x_var(self.proxies[0]): name})


def full_polynomial(xi: Chirotope, proxies: Sequence = (), cap=ENUMERATION_CAP):
    """Sum over all triangulations of the proxy-degree and proxy-edge monomial."""
    proxies = tuple(proxies)
    for p in proxies:
        if p not in xi.index:
            raise UnknownLabel(f"unknown proxy {p!r}")
        if not is_extreme(xi, p):
            raise ProxyNotExtreme(f"proxy {p!r} is not extreme")
    variables = FullTriangulationPolynomial.variables(proxies)
    pairs = list(combinations(proxies, 2))
    terms = {}
    for T in enumerate_triangulations(xi, cap):
        deg = {p: 0 for p in proxies}
        for a, b in T.edges:
            if a in deg:
                deg[a] += 1
            if b in deg:
                deg[b] += 1
        exp = tuple(deg[p] for p in proxies) + tuple(
            1 if _edge(p, q) in T.edges else 0 for p, q in pairs)
        terms[exp] = terms.get(exp, 0) + 1
    return FullTriangulationPolynomial(proxies, Poly(variables, terms))


def degree_polynomial(chi: Chirotope, proxy, var="s", cap=ENUMERATION_CAP) -> Poly:
    """P_{chi,proxy}(var): triangulations counted by the degree of ``proxy``."""
    return full_polynomial(chi, [proxy], cap).univariate(var)


def split_polynomials(xi: Chirotope, y_star, z_star, cap=ENUMERATION_CAP):
    """(Q_in, Q_notin) in (t, u): t marks deg y*, u marks deg z*, split on edge y*z*."""
    F = full_polynomial(xi, [y_star, z_star], cap)
    q_in, q_out = {}, {}
    for (dy, dz, e), c in F.poly.terms.items():
        (q_in if e else q_out)[(dy, dz)] = c
    return Poly(("t", "u"), q_in), Poly(("t", "u"), q_out)


@lru_cache(maxsize=None)
def _R_terms(a, b, r):
    if r == 0:
        return {(): binom(a + b - 2, b - 1)}
    if b < r:
        return {}
    out = {}
    for total in range(a):
        for cut in combinations(range(total + r - 1), r - 1):
            # stars and bars: exponents summing to ``total``
            prev, exp = -1, []
            for c in cut:
                exp.append(c - prev - 1)
                prev = c
            exp.append(total + r - 1 - prev - 1)
            exp = tuple(exp)
            if b == r:
                if total == a - 1:
                    out[exp] = 1
            else:
                c = binom(a + b - total - r - 2, b - r - 1)
                if c:
                    out[exp] = c
    return out


def R_poly(a: int, b: int, variables: Sequence[str] = ()) -> Poly:
    """The kernel R_{a,b} over the given set of variables (any order)."""
    variables = tuple(variables)
    if a < 2 or b < 2:
        raise ValueError("R_{a,b} is defined for a, b >= 2")
    return Poly(variables, _R_terms(a, b, len(variables)))


def _univariate_coeffs(P: Poly):
    if len(P.vars) != 1:
        raise VariableMismatch(f"expected a univariate polynomial, got variables {P.vars}")
    return {e[0]: c for e, c in P.terms.items()}


def count_bowtie(P_chi: Poly, P_xi: Poly) -> int:
    """Triangulations of a bowtie from the degree polynomials of its proxies."""
    p = _univariate_coeffs(P_chi)
    q = _univariate_coeffs(P_xi)
    return sum(binom(a + b - 2, a - 1) * ca * cb for a, ca in p.items() for b, cb in q.items())


def _t_slices(Q: Poly):
    """[t^b]Q as polynomials in u, keyed by b."""
    out = {}
    for (b, k), c in Q.terms.items():
        out.setdefault(b, {})[(k,)] = c
    return {b: Poly(("u",), t) for b, t in out.items()}


def merge_degree_polynomial(P_chi: Poly, Q_in: Poly, Q_notin: Poly) -> Poly:
    """Degree polynomial in u of the second proxy of the bowtie."""
    for Q in (Q_in, Q_notin):
        if Q.vars != ("t", "u"):
            raise VariableMismatch(f"expected variables ('t', 'u'), got {Q.vars}")
    p = _univariate_coeffs(P_chi)
    out = Poly.zero(("u",))
    for b, qu in _t_slices(Q_notin).items():
        c = sum(binom(a + b - 2, a - 1) * ca for a, ca in p.items())
        out = out + qu * c
    for b, qu in _t_slices(Q_in).items():
        R = Poly.zero(("u",))
        for a, ca in p.items():
            R = R + R_poly(a, b, ("u",)) * ca
        out = out + qu * R
    return out


def merge_leaf(Q_parent: FullTriangulationPolynomial, P_leaf: Poly, proxy) -> FullTriangulationPolynomial:
    """Fold a leaf with degree polynomial ``P_leaf`` into its parent.

    ``proxy`` is the parent's proxy matched with the leaf (a label, or a
    1-based index into ``Q_parent.proxies``).  The result is over the
    remaining proxies; their edge variables with ``proxy`` are eliminated.
    """
    if isinstance(proxy, int):
        if not 1 <= proxy <= len(Q_parent.proxies):
            raise VariableMismatch(f"proxy index {proxy} out of range")
        proxy = Q_parent.proxies[proxy - 1]
    if proxy not in Q_parent.proxies:
        raise VariableMismatch(f"{proxy!r} is not a proxy variable of the parent")
    p = _univariate_coeffs(P_leaf)
    rest = tuple(q for q in Q_parent.proxies if q != proxy)
    new_vars = FullTriangulationPolynomial.variables(rest)
    old = Q_parent.poly.vars
    kpos = old.index(Q_parent.x_var(proxy))
    ypos = {q: old.index(Q_parent.y_of(q, proxy)) for q in rest}
    keep = [old.index(v) for v in new_vars]
    groups = {}
    for exp, c in Q_parent.poly.terms.items():
        S = tuple(q for q in rest if exp[ypos[q]])
        key = (exp[kpos], S)
        sub = groups.setdefault(key, {})
        e2 = tuple(exp[i] for i in keep)
        sub[e2] = sub.get(e2, 0) + c
    out = Poly.zero(new_vars)
    for (b, S), terms in sorted(groups.items()):
        if len(S) > b:
            continue
        svars = [FullTriangulationPolynomial.x_var(q) for q in S]
        R = Poly.zero(tuple(svars))
        for a, ca in p.items():
            R = R + R_poly(a, b, svars) * ca
        if not R:
            continue
        out = out + Poly(new_vars, terms) * R.with_vars(new_vars)
    return FullTriangulationPolynomial(rest, out)


def count_tree(T: ChirotopeTree, leaf_order: Optional[random.Random] = None,
               cap=ENUMERATION_CAP) -> int:
    """Number of triangulations of expand(T), by leaf merging.

    ``leaf_order`` is an optional RNG choosing which ready leaf to merge;
    the default merges the leaf with the smallest node id.
    """
    polys = {}
    adj = {v: {} for v in T.nodes}
    for e in T.edges:
        adj[e.u][e.v] = (e.u_proxy, e.v_proxy)
        adj[e.v][e.u] = (e.v_proxy, e.u_proxy)
    for v, chi in T.nodes.items():
        polys[v] = full_polynomial(chi, sorted(adj[v][w][0] for w in adj[v]), cap)
    while len(polys) > 1:
        leaves = sorted(v for v in polys if len(adj[v]) == 1)
        leaf = leaf_order.choice(leaves) if leaf_order is not None else leaves[0]
        (parent, (_, p_parent)), = adj[leaf].items()
        polys[parent] = merge_leaf(polys[parent], polys[leaf].univariate("s"), p_parent)
        del polys[leaf]
        del adj[parent][leaf]
        del adj[leaf]
    (F,) = polys.values()
    return F.value()


def count_noncrossing_matchings(a: int, b: int, fixed_degrees: Sequence[int] = ()) -> int:
    """Maximal non-crossing edge sets between module sides of sizes a and b
    with the first ``len(fixed_degrees)`` elements of the b-side at the given degrees."""
    k = len(fixed_degrees)
    if a < 1 or b < 1 or k >= b or any(d < 1 for d in fixed_degrees):
        raise ValueError("need a, b >= 1, len(fixed_degrees) < b and fixed degrees >= 1")
    return binom(a + b - sum(fixed_degrees) - 2, b - (k + 1))


def project_triangulation(kappa: Chirotope, T: Triangulation, X, proxy) -> Triangulation:
    """Collapse every label outside the module ``X`` onto ``proxy``."""
    X = frozenset(X)
    if not is_module(kappa, X):
        raise NotAModule(f"{sorted(X)} is not a module")
    edges = set()
    for a, b in T.edges:
        a2 = a if a in X else proxy
        b2 = b if b in X else proxy
        if a2 != b2:
            edges.add(_edge(a2, b2))
    return Triangulation(frozenset(edges))


def crossing_part(T: Triangulation, X) -> frozenset:
    """Edges of ``T`` with exactly one endpoint in ``X``."""
    X = frozenset(X)
    return frozenset(e for e in T.edges if (e[0] in X) != (e[1] in X))


def compose_triangulation(T1: Triangulation, T2: Triangulation, H, x_star, y_star) -> Triangulation:
    """Inverse of the decomposition into (projection, projection, crossing part)."""
    edges = {e for e in T1.edges if x_star not in e}
    edges |= {e for e in T2.edges if y_star not in e}
    edges |= set(H)
    return Triangulation(frozenset(edges))


# ---------------------------------------------------------------------------
# chains

_C = Fraction(606, 1000)
_H = Fraction(35, 100)
_R = Fraction(7, 10)

CHAIN_BLOCKS = {
    "0": {"c": (0, 0), "z": (0, _R), "x*": (-_C, -_H), "y*": (_C, -_H)},
    "1": {"c": (0, 0), "z": (0, -_R), "x*": (-_C, _H), "y*": (_C, _H)},
}


def chain_block_points(bit, i):
    """Points of block ``bit`` with labels suffixed by ``i``."""
    pts = CHAIN_BLOCKS[str(bit)]
    return PointConfig({_chain_label(lab, i): xy for lab, xy in pts.items()})


def _chain_label(lab, i):
    return f"{lab[0]}{i}*" if lab.endswith("*") else f"{lab}{i}"


def chain_tree(sigma: str, with_points=False):
    """The path of blocks glued y_i* -- x_{i+1}*; node ids are 1..k."""
    sigma = str(sigma)
    if not sigma or set(sigma) - {"0", "1"}:
        raise ValueError(f"sigma must be a non-empty binary string, got {sigma!r}")
    pts = {i: chain_block_points(bit, i) for i, bit in enumerate(sigma, start=1)}
    nodes = {i: chirotope_of_points(P) for i, P in pts.items()}
    edges = [Edge(i, f"y{i}*", i + 1, f"x{i + 1}*") for i in range(1, len(sigma))]
    T = ChirotopeTree(nodes, edges)
    return (T, pts) if with_points else T


def chain_count(k: int) -> int:
    """Closed formula for the number of triangulations of a chain of length k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    num1 = 3 * (2 * k + 1) * comb(4 * k + 2, 2 * k + 1)
    den1 = (2 * k + 2) * (4 * k + 1)
    num2 = 4 ** k * comb(2 * k + 2, k + 1)
    den2 = 2 * k + 1
    if num1 % den1 or num2 % den2:
        raise DivisionRemainder(f"chain formula not integral at k={k}")
    return num1 // den1 - num2 // den2


def chain_degree_poly(k: int, var="s") -> Poly:
    """Degree polynomial of the last proxy of a chain of length k.

    P_1 = s^3 and P_{k+1} = [s^4 (P_k(s) - P_k(1)) + s^3 (1 - s) P_k'(1)] / (1 - s)^2.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    s = Poly.var(var)
    one_minus = Poly.const(1, (var,)) - s
    P = s ** 3
    for _ in range(k - 1):
        num = (s ** 4) * (P - P.evaluate()) + (s ** 3) * one_minus * P.derivative(var).evaluate()
        P = num.exact_div(one_minus * one_minus)
    return P
