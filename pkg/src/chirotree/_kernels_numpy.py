"""Pure-numpy counterparts of :mod:`chirotree._kernels_numba`.

Same signatures, same results.  Vectorised where the shape allows it;
subset enumerations fall back to Python loops around vectorised checks.
Maximal cliques are delegated to :func:`networkx.find_cliques`.
"""
from itertools import combinations

import networkx as nx
import numpy as np


def interiority_subset(C):
    n = C.shape[0]
    out = np.full(4, -1, np.int64)
    if n < 4:
        return out
    # V[t, x, y, z]: chi(t,x,y) = chi(t,y,z) = chi(t,z,x) = -chi(x,y,z)
    a = C[:, :, :, None]                       # chi(t, x, y)
    b = C[:, None, :, :]                       # chi(t, y, z)
    c = np.transpose(C, (0, 2, 1))[:, :, None, :]   # chi(t, z, x)
    d = C[None, :, :, :]                       # chi(x, y, z)
    V = (a != 0) & (a == b) & (a == c) & (d == -a)
    hits = np.argwhere(V)
    if hits.size == 0:
        return out
    subs = np.sort(hits, axis=1)
    subs = np.unique(subs, axis=0)
    out[:] = subs[np.lexsort(subs.T[::-1])[0]]
    return out


def transitivity_subset(C):
    n = C.shape[0]
    out = np.full(5, -1, np.int64)
    if n < 5:
        return out
    best = None
    for t in range(n):
        M = C[:, :, t]                      # M[x, y] = chi(x, y, t)
        Pm = (M == 1)
        Nm = (M == -1)
        for s in range(n):
            if s == t:
                continue
            A = C[t, s, :] == 1
            if A.sum() < 3:
                continue
            AA = A[:, None] & A[None, :]
            P = (Pm & AA).astype(np.float64)
            V = ((P @ P) > 0) & Nm & AA
            if not V.any():
                continue
            for x, z in np.argwhere(V):
                ys = np.nonzero(P[x, :].astype(bool) & P[:, z].astype(bool))[0]
                for y in ys:
                    key = tuple(sorted((int(s), int(t), int(x), int(y), int(z))))
                    if best is None or key < best:
                        best = key
    if best is not None:
        out[:] = best
    return out


def crossing_matrix(C, I, J):
    m = I.shape[0]
    if m == 0:
        return np.zeros((0, 0), bool)
    Ic, Jc = I[:, None], J[:, None]
    Kr, Lr = I[None, :], J[None, :]
    s_ijk = C[Ic, Jc, Kr]
    s_ijl = C[Ic, Jc, Lr]
    s_kli = C[Kr, Lr, Ic]
    s_klj = C[Kr, Lr, Jc]
    disjoint = (Ic != Kr) & (Ic != Lr) & (Jc != Kr) & (Jc != Lr)
    return disjoint & (s_ijk == -s_ijl) & (s_kli == -s_klj)


def maximal_cliques(N, m):
    """Maximal cliques of the graph given by neighbourhood masks (Python ints)."""
    G = nx.Graph()
    G.add_nodes_from(range(m))
    for v in range(m):
        nb = int(N[v])
        u = 0
        while nb:
            if nb & 1 and u > v:
                G.add_edge(v, u)
            nb >>= 1
            u += 1
    out = []
    for clique in nx.find_cliques(G):
        mask = 0
        for v in clique:
            mask |= 1 << v
        out.append(mask)
    return out


def is_module(C, member):
    member = np.asarray(member, bool)
    xs = np.nonzero(member)[0]
    ys = np.nonzero(~member)[0]
    if len(xs) < 2 or len(ys) < 2:
        return True
    sub = C[np.ix_(xs, xs, ys)]
    if not (sub == sub[:, :, :1]).all():
        return False
    sub2 = C[np.ix_(xs, ys, ys)]
    return bool((sub2 == sub2[:1]).all())


def first_module(C):
    n = C.shape[0]
    member = np.zeros(n, bool)
    for k in range(2, n // 2 + 1):
        for combo in combinations(range(n), k):
            member[:] = False
            member[list(combo)] = True
            if is_module(C, member):
                return np.array(combo, np.int64)
    return np.empty(0, np.int64)


def all_modules(C):
    n = C.shape[0]
    member = np.zeros(n, bool)
    out = []
    for k in range(2, n - 1):
        for combo in combinations(range(n), k):
            member[:] = False
            member[list(combo)] = True
            if is_module(C, member):
                out.append(sum(1 << i for i in combo))
    return np.array(out, np.int64)


def is_quasi_module(C, member):
    member = np.asarray(member, bool)
    ws = np.nonzero(member)[0]
    os_ = np.nonzero(~member)[0]
    if len(ws) < 2 or len(os_) == 0:
        return False
    ref = C[ws[0], ws[1], os_]
    if not ((ref > 0).any() and (ref < 0).any()):
        return False
    a, b = np.triu_indices(len(ws), 1)
    rows = C[ws[a][:, None], ws[b][:, None], os_[None, :]]
    same = (rows == ref).all(axis=1) | (rows == -ref).all(axis=1)
    return bool(same.all())


def quasi_modules(C, min_size):
    n = C.shape[0]
    member = np.zeros(n, bool)
    out = []
    for k in range(max(min_size, 2), n - 1):
        for combo in combinations(range(n), k):
            member[:] = False
            member[list(combo)] = True
            if is_quasi_module(C, member):
                out.append(sum(1 << i for i in combo))
    return np.array(out, np.int64)
