"""Seeded random point sets, chirotopes and chirotope trees."""
from __future__ import annotations

import random
from collections import Counter

from .errors import Collinear, GenerationBudgetExceeded
from .realization import PointConfig, chirotope_of_points
from .tree import ChirotopeTree, Edge

DEFAULT_RANGE = 60


def random_points(labels, rng: random.Random, coord_range=DEFAULT_RANGE, budget=1000) -> PointConfig:
    """Integer points in general position, rejection sampled."""
    labels = list(labels)
    for _ in range(budget):
        pts = {lab: (rng.randint(-coord_range, coord_range), rng.randint(-coord_range, coord_range))
               for lab in labels}
        if len(set(pts.values())) < len(pts):
            continue
        try:
            return PointConfig(pts)
        except Collinear:
            continue
    raise GenerationBudgetExceeded(f"no general-position sample after {budget} tries")


def random_chirotope(n, rng: random.Random, min_extreme=3, labels=None, coord_range=DEFAULT_RANGE,
                     budget=1000):
    """Realizable chirotope of ``n`` random points with enough extreme elements.

    Returns ``(chirotope, points)``.
    """
    labels = labels or [chr(ord("a") + i) if n <= 26 else f"e{i}" for i in range(n)]
    for _ in range(budget):
        P = random_points(labels, rng, coord_range)
        chi = chirotope_of_points(P)
        if len(chi.extremes) >= min_extreme:
            return chi, P
    raise GenerationBudgetExceeded(f"no sample with {min_extreme} extreme points after {budget} tries")


def random_tree_shape(k, max_degree, rng: random.Random, budget=1000):
    """Edges of a uniform labeled tree on 0..k-1 with degrees <= max_degree."""
    if k == 1:
        return []
    if k == 2:
        return [(0, 1)]
    if max_degree < 2:
        raise GenerationBudgetExceeded("trees with 3 or more nodes need max_degree >= 2")
    for _ in range(budget):
        seq = [rng.randrange(k) for _ in range(k - 2)]
        deg = Counter(seq)
        if max(deg.values()) + 1 > max_degree:
            continue
        # standard Pruefer decoding
        degree = [1 + deg[v] for v in range(k)]
        edges = []
        for a in seq:
            leaf = min(v for v in range(k) if degree[v] == 1)
            edges.append((leaf, a))
            degree[leaf] -= 1
            degree[a] -= 1
        u, v = [w for w in range(k) if degree[w] == 1]
        edges.append((u, v))
        return edges
    raise GenerationBudgetExceeded(f"no tree shape with degree <= {max_degree} after {budget} tries")


def random_tree(nodes, node_size, max_degree=3, seed=0, coord_range=DEFAULT_RANGE, budget=1000):
    """Random chirotope tree with point-realized decorations.

    ``node_size`` is an int or an inclusive ``(lo, hi)`` range.  Returns
    ``(tree, points)`` with ``points[v]`` realizing node ``v``.
    """
    rng = random.Random(seed)
    if nodes < 1:
        raise ValueError("a tree needs at least one node")
    shape = random_tree_shape(nodes, max_degree, rng, budget)
    degree = Counter()
    for u, v in shape:
        degree[u] += 1
        degree[v] += 1
    lo, hi = (node_size, node_size) if isinstance(node_size, int) else node_size
    decor, points = {}, {}
    for v in range(nodes):
        size = max(rng.randint(lo, hi), 3, degree[v])
        labels = [f"{v}.{i}" for i in range(size)]
        chi, P = random_chirotope(size, rng, max(3, degree[v]), labels, coord_range, budget)
        decor[v], points[v] = chi, P
    free = {v: sorted(decor[v].extremes) for v in range(nodes)}
    for v in free:
        rng.shuffle(free[v])
    edges = [Edge(u, free[u].pop(), v, free[v].pop()) for u, v in shape]
    return ChirotopeTree(decor, edges), points


def random_factor_pair(rng: random.Random, sizes=(3, 6), proxy_extreme=True, coord_range=DEFAULT_RANGE):
    """Two random chirotopes on disjoint labels with a chosen proxy each.

    With ``proxy_extreme`` false the first proxy is a non-extreme element
    (the sampler retries until one exists).
    """
    out = []
    for side, prefix in enumerate("xy"):
        while True:
            n = rng.randint(*sizes)
            labels = [f"{prefix}{i}" for i in range(n)]
            chi, _ = random_chirotope(n, rng, 3, labels, coord_range)
            interior = sorted(chi.ground - chi.extremes)
            if side == 0 and not proxy_extreme:
                if not interior:
                    continue
                proxy = rng.choice(interior)
            else:
                proxy = rng.choice(sorted(chi.extremes))
            out.append((chi, proxy))
            break
    return out[0][0], out[0][1], out[1][0], out[1][1]


__all__ = ["random_points", "random_chirotope", "random_tree_shape", "random_tree",
           "random_factor_pair"]
