"""Numba-compiled kernels over dense sign tables.

All kernels take ``C``, an ``int8`` array of shape ``(n, n, n)`` holding the
alternating sign table (zero on repeated indices).  Index order is the label
order of the owning chirotope, so "lexicographic" below means lexicographic
over label indices.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _next_combo(idx, n):
    k = idx.shape[0]
    i = k - 1
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, k):
        idx[j] = idx[j - 1] + 1
    return True


@njit(cache=True)
def interiority_subset(C):
    n = C.shape[0]
    out = np.full(4, -1, np.int64)
    if n < 4:
        return out
    idx = np.arange(4)
    while True:
        for p in range(4):
            t = idx[p]
            q0 = -1
            q1 = -1
            q2 = -1
            for r in range(4):
                if r != p:
                    if q0 < 0:
                        q0 = idx[r]
                    elif q1 < 0:
                        q1 = idx[r]
                    else:
                        q2 = idx[r]
            s1 = C[t, q0, q1]
            if s1 == C[t, q1, q2] and s1 == C[t, q2, q0] and C[q0, q1, q2] != s1:
                out[:] = idx
                return out
        if not _next_combo(idx, n):
            return out


@njit(cache=True)
def _cyclic(C, t, x, y, z):
    # chi(.,.,t) restricted to {x, y, z} is a cyclic tournament
    a = C[x, y, t]
    return a == C[y, z, t] and a == C[z, x, t]


@njit(cache=True)
def transitivity_subset(C):
    n = C.shape[0]
    out = np.full(5, -1, np.int64)
    if n < 5:
        return out
    idx = np.arange(5)
    rest = np.empty(3, np.int64)
    while True:
        found = False
        for p in range(5):
            for q in range(5):
                if p == q:
                    continue
                t = idx[p]
                s = idx[q]
                m = 0
                ok = True
                for r in range(5):
                    if r != p and r != q:
                        if C[t, s, idx[r]] != 1:
                            ok = False
                            break
                        rest[m] = idx[r]
                        m += 1
                if ok and _cyclic(C, t, rest[0], rest[1], rest[2]):
                    found = True
                    break
            if found:
                break
        if found:
            out[:] = idx
            return out
        if not _next_combo(idx, n):
            return out


@njit(cache=True)
def crossing_matrix(C, I, J):
    m = I.shape[0]
    out = np.zeros((m, m), np.bool_)
    for a in range(m):
        i = I[a]
        j = J[a]
        for b in range(a + 1, m):
            k = I[b]
            l = J[b]
            if k == i or k == j or l == i or l == j:
                continue
            if C[i, j, k] == -C[i, j, l] and C[k, l, i] == -C[k, l, j]:
                out[a, b] = True
                out[b, a] = True
    return out


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def _lowbit_index(x):
    i = 0
    one = np.uint64(1)
    while not (x >> np.uint64(i)) & one:
        i += 1
    return i


@njit(cache=True)
def maximal_cliques(N, m):
    """Bron-Kerbosch with Tomita pivoting on uint64 neighbourhood masks.

    ``N[v]`` is the neighbourhood mask of vertex ``v``; ``m <= 64``.
    """
    one = np.uint64(1)
    full = np.uint64(0)
    for v in range(m):
        full |= one << np.uint64(v)
    cap = 1024
    out = np.empty(cap, np.uint64)
    cnt = 0
    depth_cap = m + 2
    R = np.zeros(depth_cap, np.uint64)
    P = np.zeros(depth_cap, np.uint64)
    X = np.zeros(depth_cap, np.uint64)
    Cand = np.zeros(depth_cap, np.uint64)
    if m == 0:
        return out[:0]
    d = 0
    P[0] = full
    # pivot
    best = -1
    piv = 0
    ux = P[0] | X[0]
    for u in range(m):
        if (ux >> np.uint64(u)) & one:
            c = _popcount(P[0] & N[u])
            if c > best:
                best = c
                piv = u
    Cand[0] = P[0] & ~N[piv]
    while d >= 0:
        if Cand[d] == 0:
            d -= 1
            continue
        v = _lowbit_index(Cand[d])
        bit = one << np.uint64(v)
        Cand[d] &= ~bit
        nR = R[d] | bit
        nP = P[d] & N[v]
        nX = X[d] & N[v]
        P[d] &= ~bit
        X[d] |= bit
        if nP == 0:
            if nX == 0:
                if cnt == cap:
                    cap *= 2
                    tmp = np.empty(cap, np.uint64)
                    tmp[:cnt] = out[:cnt]
                    out = tmp
                out[cnt] = nR
                cnt += 1
            continue
        d += 1
        R[d] = nR
        P[d] = nP
        X[d] = nX
        best = -1
        piv = 0
        ux = nP | nX
        for u in range(m):
            if (ux >> np.uint64(u)) & one:
                c = _popcount(nP & N[u])
                if c > best:
                    best = c
                    piv = u
        Cand[d] = nP & ~N[piv]
    return out[:cnt]


@njit(cache=True)
def is_module(C, member):
    n = C.shape[0]
    for x in range(n):
        if not member[x]:
            continue
        for x2 in range(x + 1, n):
            if not member[x2]:
                continue
            ref = 0
            for y in range(n):
                if member[y]:
                    continue
                s = C[x, x2, y]
                if ref == 0:
                    ref = s
                elif s != ref:
                    return False
    for y in range(n):
        if member[y]:
            continue
        for y2 in range(y + 1, n):
            if member[y2]:
                continue
            ref = 0
            for x in range(n):
                if not member[x]:
                    continue
                s = C[x, y, y2]
                if ref == 0:
                    ref = s
                elif s != ref:
                    return False
    return True


@njit(cache=True)
def first_module(C):
    n = C.shape[0]
    member = np.zeros(n, np.bool_)
    for k in range(2, n // 2 + 1):
        idx = np.arange(k)
        while True:
            member[:] = False
            for i in range(k):
                member[idx[i]] = True
            if is_module(C, member):
                return idx.copy()
            if not _next_combo(idx, n):
                break
    return np.empty(0, np.int64)


@njit(cache=True)
def all_modules(C):
    """Bitmasks of every nontrivial module (sizes 2 .. n-2), n <= 62."""
    n = C.shape[0]
    member = np.zeros(n, np.bool_)
    cap = 64
    out = np.empty(cap, np.int64)
    cnt = 0
    for k in range(2, n - 1):
        idx = np.arange(k)
        while True:
            member[:] = False
            mask = 0
            for i in range(k):
                member[idx[i]] = True
                mask |= 1 << idx[i]
            if is_module(C, member):
                if cnt == cap:
                    cap *= 2
                    tmp = np.empty(cap, np.int64)
                    tmp[:cnt] = out[:cnt]
                    out = tmp
                out[cnt] = mask
                cnt += 1
            if not _next_combo(idx, n):
                break
    return out[:cnt]


@njit(cache=True)
def is_quasi_module(C, member):
    n = C.shape[0]
    w0 = -1
    w1 = -1
    for i in range(n):
        if member[i]:
            if w0 < 0:
                w0 = i
            elif w1 < 0:
                w1 = i
    if w1 < 0:
        return False
    pos = False
    neg = False
    for o in range(n):
        if not member[o]:
            if C[w0, w1, o] > 0:
                pos = True
            else:
                neg = True
    if not (pos and neg):
        return False
    for a in range(n):
        if not member[a]:
            continue
        for b in range(a + 1, n):
            if not member[b]:
                continue
            flip = 0
            for o in range(n):
                if member[o]:
                    continue
                s = C[a, b, o] * C[w0, w1, o]
                if flip == 0:
                    flip = s
                elif s != flip:
                    return False
    return True


@njit(cache=True)
def quasi_modules(C, min_size):
    n = C.shape[0]
    member = np.zeros(n, np.bool_)
    cap = 64
    out = np.empty(cap, np.int64)
    cnt = 0
    for k in range(max(min_size, 2), n - 1):
        idx = np.arange(k)
        while True:
            member[:] = False
            mask = 0
            for i in range(k):
                member[idx[i]] = True
                mask |= 1 << idx[i]
            if is_quasi_module(C, member):
                if cnt == cap:
                    cap *= 2
                    tmp = np.empty(cap, np.int64)
                    tmp[:cnt] = out[:cnt]
                    out = tmp
                out[cnt] = mask
                cnt += 1
            if not _next_combo(idx, n):
                break
    return out[:cnt]
