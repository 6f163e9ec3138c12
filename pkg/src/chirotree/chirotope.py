"""Sign functions and chirotopes on arbitrary label sets.

A sign function is stored as a dense alternating ``int8`` table of shape
``(n, n, n)`` indexed by the position of each label in the sorted ground set.
Entries with a repeated index are zero.  Everything here is immutable.
"""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .errors import (
    AxiomViolation,
    NotBijective,
    NotExtreme,
    RepeatedLabel,
    TooSmall,
    UnknownLabel,
)

MAX_GROUND = 64

_PERMS = tuple(permutations(range(3)))
_PARITY = (1, -1, -1, 1, 1, -1)  # matches _PERMS order


def _perm_parity(p):
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
    return -1 if inv % 2 else 1


assert tuple(_perm_parity(p) for p in _PERMS) == _PARITY


def _sorted_labels(labels):
    labels = [str(lab) for lab in labels]
    if any(not lab for lab in labels):
        raise ValueError("labels must be non-empty")
    ordered = tuple(sorted(labels))
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            raise RepeatedLabel(f"label {a!r} repeated in ground set")
    return ordered


def alternating_table(n, triples, values):
    """Dense alternating table from values on increasing index triples."""
    C = np.zeros((n, n, n), np.int8)
    if len(triples) == 0:
        return C
    T = np.asarray(triples, np.int64).reshape(-1, 3)
    v = np.asarray(values, np.int8)
    for perm, par in zip(_PERMS, _PARITY):
        C[T[:, perm[0]], T[:, perm[1]], T[:, perm[2]]] = v * par
    return C


class SignFunction:
    """Alternating map from ordered triples of distinct labels to +/-1."""

    __slots__ = ("labels", "index", "table")

    def __init__(self, labels: Iterable[str], table: np.ndarray):
        labels = _sorted_labels(labels)
        n = len(labels)
        if n < 3:
            raise TooSmall(f"ground set needs at least 3 labels, got {n}")
        if n > MAX_GROUND:
            raise TooSmall(f"ground set of size {n} exceeds the cap {MAX_GROUND}")
        table = np.asarray(table, np.int8)
        if table.shape != (n, n, n):
            raise ValueError(f"table shape {table.shape} != {(n, n, n)}")
        table = np.ascontiguousarray(table)
        table.flags.writeable = False
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.table = table

    # -- construction -----------------------------------------------------
    @classmethod
    def from_signs(cls, labels, signs: Mapping[tuple, int]):
        """Build from a map ``(a, b, c) -> +/-1`` on label triples.

        Any ordering of a triple is accepted; every unordered triple must be
        given exactly once.
        """
        labels = _sorted_labels(labels)
        idx = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        seen = {}
        for key, val in signs.items():
            a, b, c = key
            for lab in (a, b, c):
                if lab not in idx:
                    raise UnknownLabel(f"unknown label {lab!r}")
            if len({a, b, c}) < 3:
                raise RepeatedLabel(f"triple {key!r} repeats a label")
            if val not in (1, -1):
                raise ValueError(f"sign of {key!r} must be +1 or -1, got {val!r}")
            ii = (idx[a], idx[b], idx[c])
            order = tuple(sorted(range(3), key=lambda r: ii[r]))
            srt = tuple(ii[r] for r in order)
            if srt in seen:
                raise ValueError(f"triple {key!r} given twice")
            seen[srt] = val * _perm_parity(order)
        missing = n * (n - 1) * (n - 2) // 6 - len(seen)
        if missing:
            raise ValueError(f"{missing} triples have no sign")
        keys = sorted(seen)
        return cls(labels, alternating_table(n, keys, [seen[k] for k in keys]))

    @classmethod
    def from_function(cls, labels, f):
        """Build from ``f(a, b, c)`` evaluated on lexicographically sorted triples."""
        labels = _sorted_labels(labels)
        n = len(labels)
        keys = list(combinations(range(n), 3))
        vals = []
        for i, j, k in keys:
            v = f(labels[i], labels[j], labels[k])
            if v not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {v!r}")
            vals.append(v)
        return cls(labels, alternating_table(n, keys, vals))

    # -- access -------------------------------------------------------------
    @property
    def n(self):
        return len(self.labels)

    @property
    def ground(self):
        return frozenset(self.labels)

    def _idx(self, lab):
        try:
            return self.index[lab]
        except KeyError:
            raise UnknownLabel(f"unknown label {lab!r}") from None

    def sign(self, a, b, c) -> int:
        i, j, k = self._idx(a), self._idx(b), self._idx(c)
        if i == j or j == k or i == k:
            raise RepeatedLabel(f"repeated label in ({a!r}, {b!r}, {c!r})")
        return int(self.table[i, j, k])

    __call__ = sign

    def sorted_triples(self):
        """Yield ``((a, b, c), sign)`` over lexicographically sorted triples."""
        L = self.labels
        for i, j, k in combinations(range(self.n), 3):
            yield (L[i], L[j], L[k]), int(self.table[i, j, k])

    def sign_string(self):
        """Signs over sorted triples as a ``+``/``-`` string (canonical storage)."""
        n = self.n
        if n < 3:
            return ""
        i, j, k = np.array(list(combinations(range(n), 3))).T
        return "".join("+" if v > 0 else "-" for v in self.table[i, j, k])

    def __eq__(self, other):
        if not isinstance(other, SignFunction):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.labels, self.table.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.labels)!r}, {self.sign_string()!r})"


class Chirotope(SignFunction):
    """A sign function that satisfies the interiority and transitivity axioms.

    Obtain one through :func:`validate_axioms` (or the trusted constructors of
    the operations that provably preserve the axioms).
    """

    __slots__ = ("_extremes", "_hull")

    def __init__(self, labels, table):
        super().__init__(labels, table)
        self._extremes = None
        self._hull = None

    @classmethod
    def _trusted(cls, sf: SignFunction) -> "Chirotope":
        obj = cls.__new__(cls)
        obj.labels = sf.labels
        obj.index = sf.index
        obj.table = sf.table
        obj._extremes = None
        obj._hull = None
        return obj

    @property
    def extremes(self) -> frozenset:
        if self._extremes is None:
            self._extremes = frozenset(
                self.labels[i] for i in np.nonzero(_extreme_mask(self.table))[0]
            )
        return self._extremes


# ---------------------------------------------------------------------------
# operations


def sign(sf: SignFunction, a, b, c) -> int:
    return sf.sign(a, b, c)


def _scan_interiority(sf, subset):
    L = sf.labels
    for t in subset:
        rest = [q for q in subset if q != t]
        for x, y, z in permutations(rest):
            if (sf.table[t, y, z] == 1 and sf.table[x, t, z] == 1
                    and sf.table[x, y, t] == 1 and sf.table[x, y, z] != 1):
                return tuple(L[q] for q in (t, x, y, z))
    raise AssertionError("kernel reported a subset without violation")


def _scan_transitivity(sf, subset):
    L = sf.labels
    C = sf.table
    for s, t, x, y, z in permutations(subset):
        if (C[t, s, x] == 1 and C[t, s, y] == 1 and C[t, s, z] == 1
                and C[x, y, t] == 1 and C[y, z, t] == 1 and C[x, z, t] != 1):
            return tuple(L[q] for q in (s, t, x, y, z))
    raise AssertionError("kernel reported a subset without violation")


def find_axiom_violation(sf: SignFunction):
    """First violation as ``(axiom, labels)`` or ``None``.

    Interiority is checked before transitivity; within an axiom the first
    violating subset in lexicographic order is reported, and within that
    subset the first ordering in :func:`itertools.permutations` order.
    """
    sub = _kernels.interiority_subset(sf.table)
    if sub is not None:
        return "interiority", _scan_interiority(sf, sub)
    sub = _kernels.transitivity_subset(sf.table)
    if sub is not None:
        return "transitivity", _scan_transitivity(sf, sub)
    return None


def validate_axioms(sf: SignFunction) -> Chirotope:
    """Return ``sf`` as a :class:`Chirotope` or raise :class:`AxiomViolation`.

    Brute force: O(n^4) interiority plus O(n^5) transitivity checks.
    """
    if isinstance(sf, Chirotope):
        return sf
    bad = find_axiom_violation(sf)
    if bad is not None:
        raise AxiomViolation(*bad)
    return Chirotope._trusted(sf)


def is_chirotope(sf: SignFunction) -> bool:
    return find_axiom_violation(sf) is None


def _extreme_mask(C):
    n = C.shape[0]
    pos = (C == 1).sum(axis=2)
    return (pos == n - 2).any(axis=1)


def extreme_elements(chi: Chirotope) -> frozenset:
    return chi.extremes


def is_extreme(chi: SignFunction, x) -> bool:
    i = chi._idx(x)
    return bool(((chi.table[i] == 1).sum(axis=1) == chi.n - 2).any())


def caratheodory_witness(chi: Chirotope, t):
    """A triple ``(a, b, c)`` with chi(t,a,b) = chi(t,b,c) = chi(t,c,a) = 1.

    Returns ``None`` exactly when ``t`` is extreme.  The lexicographically
    smallest witness by label index is returned.
    """
    i = chi._idx(t)
    P = (chi.table[i] == 1)
    PP = P.astype(np.int64) @ P.astype(np.int64)  # PP[a, c] = #{b : a->b->c}
    closing = (PP > 0) & P.T                          # and c -> a
    hits = np.argwhere(closing)
    if hits.size == 0:
        return None
    best = None
    for a, c in hits:
        bs = np.nonzero(P[a] & P[:, c])[0]
        cand = (int(a), int(bs[0]), int(c))
        if best is None or cand < best:
            best = cand
    L = chi.labels
    return (L[best[0]], L[best[1]], L[best[2]])


def radial_order(chi: Chirotope, a) -> list:
    """Labels other than ``a`` sorted by p <_a q iff chi(a, p, q) = +1.

    The first element is the successor of ``a`` on the hull, the last its
    predecessor.
    """
    i = chi._idx(a)
    if not is_extreme(chi, a):
        raise NotExtreme(f"{a!r} is not extreme")
    rank = (chi.table[i] == 1).sum(axis=0)  # rank[p] = #{q : q <_a p}
    others = [j for j in range(chi.n) if j != i]
    order = sorted(others, key=lambda j: rank[j])
    if sorted(rank[j] for j in others) != list(range(chi.n - 1)):
        raise AssertionError("radial relation is not a strict total order")
    return [chi.labels[j] for j in order]


def hull_cycle(chi: Chirotope) -> list:
    """Counterclockwise cycle of extreme labels starting at the smallest one."""
    if isinstance(chi, Chirotope) and chi._hull is not None:
        return list(chi._hull)
    ext = extreme_elements(chi) if isinstance(chi, Chirotope) else frozenset(
        chi.labels[i] for i in np.nonzero(_extreme_mask(chi.table))[0])
    start = min(ext)
    cyc = [start] + [lab for lab in radial_order(chi, start) if lab in ext]
    if isinstance(chi, Chirotope):
        chi._hull = tuple(cyc)
    return cyc


def segments_cross(chi: SignFunction, x, y, z, t) -> bool:
    if len({x, y, z, t}) < 4:
        raise RepeatedLabel(f"segments {x!r}{y!r} and {z!r}{t!r} share a label")
    s = chi.sign
    return s(x, y, z) == -s(x, y, t) and s(z, t, x) == -s(z, t, y)


def is_convex(chi: Chirotope) -> bool:
    return len(extreme_elements(chi)) == chi.n


def restrict(chi: SignFunction, subset) -> SignFunction:
    """Restriction to ``subset``; a chirotope restricts to a chirotope."""
    subset = _sorted_labels(subset)
    if len(subset) < 3:
        raise TooSmall("restriction needs at least 3 labels")
    idx = np.array([chi._idx(lab) for lab in subset])
    table = chi.table[np.ix_(idx, idx, idx)]
    out = SignFunction(subset, table)
    return Chirotope._trusted(out) if isinstance(chi, Chirotope) else out


def relabel(chi: SignFunction, mapping: Mapping) -> SignFunction:
    """Rename labels through a bijection defined on the whole ground set."""
    if set(mapping) != set(chi.labels):
        raise NotBijective("relabeling must be defined exactly on the ground set")
    images = [str(mapping[lab]) for lab in chi.labels]
    if len(set(images)) != len(images):
        raise NotBijective("relabeling is not injective")
    new_labels = sorted(images)
    pos = {lab: i for i, lab in enumerate(new_labels)}
    perm = np.array([pos[img] for img in images])   # old index -> new index
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    table = chi.table[np.ix_(inv, inv, inv)]
    out = SignFunction(new_labels, table)
    return Chirotope._trusted(out) if isinstance(chi, Chirotope) else out


def rename(chi: SignFunction, renames: Mapping) -> SignFunction:
    """Relabel only the labels in ``renames``; others keep their names."""
    mapping = {lab: renames.get(lab, lab) for lab in chi.labels}
    return relabel(chi, mapping)
