"""Bowtie products, modules, factorization and quasi-modules."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count

import numpy as np

from . import _kernels
from .chirotope import Chirotope, SignFunction, is_extreme, relabel, restrict
from .errors import (
    GroundOverlap,
    LabelCollision,
    NotAModule,
    NotQuasiModule,
    ProxyNotExtreme,
    SizeCapExceeded,
    TooSmall,
    UnknownLabel,
)

MODULE_SEARCH_CAP = 16
PROXY_PREFIX = "p#"


@dataclass(frozen=True)
class ModularBipartition:
    part_x: frozenset
    part_y: frozenset

    @property
    def nontrivial(self):
        return len(self.part_x) >= 2 and len(self.part_y) >= 2


@dataclass(frozen=True)
class BowtieFactors:
    chi: Chirotope
    xi: Chirotope
    x_star: str
    y_star: str


def fresh_labels(used, k=1, prefix=PROXY_PREFIX):
    """The ``k`` smallest labels ``prefix + str(i)`` not in ``used``."""
    used = set(used)
    out = []
    for i in count():
        lab = f"{prefix}{i}"
        if lab not in used:
            out.append(lab)
            used.add(lab)
            if len(out) == k:
                return out


def _members(sf, labels):
    labels = set(labels)
    for lab in labels:
        if lab not in sf.index:
            raise UnknownLabel(f"unknown label {lab!r}")
    mask = np.zeros(sf.n, bool)
    mask[[sf.index[lab] for lab in labels]] = True
    return mask


def _mask_to_set(sf, mask):
    return frozenset(sf.labels[i] for i in range(sf.n) if mask >> i & 1)


def bowtie_sign_function(chi: SignFunction, x_star, xi: SignFunction, y_star) -> SignFunction:
    """The raw glued sign map, without checking that the proxies are extreme."""
    if x_star not in chi.index:
        raise UnknownLabel(f"proxy {x_star!r} not in the first factor")
    if y_star not in xi.index:
        raise UnknownLabel(f"proxy {y_star!r} not in the second factor")
    X = [lab for lab in chi.labels if lab != x_star]
    Y = [lab for lab in xi.labels if lab != y_star]
    if set(X) & set(Y):
        raise GroundOverlap(f"factors share labels {sorted(set(X) & set(Y))}")
    if len(X) < 2 or len(Y) < 2:
        raise TooSmall("each factor needs at least two non-proxy labels")
    ground = sorted(X + Y)
    xs = set(X)
    # A maps into chi (Y -> x*), B maps into xi (X -> y*).  With at least two
    # labels on one side the other table has a repeated index and reads zero.
    A = np.array([chi.index[lab] if lab in xs else chi.index[x_star] for lab in ground])
    B = np.array([xi.index[y_star] if lab in xs else xi.index[lab] for lab in ground])
    T = chi.table[np.ix_(A, A, A)].astype(np.int8) + xi.table[np.ix_(B, B, B)]
    return SignFunction(ground, T)


def bowtie(chi: Chirotope, x_star, xi: Chirotope, y_star) -> Chirotope:
    """Glue ``chi`` and ``xi`` along the proxies ``x_star`` and ``y_star``.

    Both proxies must be extreme; the result is then a chirotope on the union
    of the non-proxy labels.
    """
    sf = bowtie_sign_function(chi, x_star, xi, y_star)
    if not is_extreme(chi, x_star):
        raise ProxyNotExtreme(f"{x_star!r} is not extreme in the first factor")
    if not is_extreme(xi, y_star):
        raise ProxyNotExtreme(f"{y_star!r} is not extreme in the second factor")
    return Chirotope._trusted(sf)


def is_module(kappa: SignFunction, X) -> bool:
    return _kernels.is_module(kappa.table, _members(kappa, X))


def modular_bipartition(kappa: SignFunction, X) -> ModularBipartition:
    X = frozenset(X)
    if not is_module(kappa, X):
        raise NotAModule(f"{sorted(X)} is not a module")
    return ModularBipartition(X, kappa.ground - X)


def _check_cap(kappa, cap):
    if cap is not None and kappa.n > cap:
        raise SizeCapExceeded(f"ground of size {kappa.n} exceeds the search cap {cap}")


def find_nontrivial_module(kappa: SignFunction, cap=MODULE_SEARCH_CAP):
    """Smallest nontrivial module, ties broken by the sorted member list."""
    _check_cap(kappa, cap)
    if kappa.n < 4:
        return None
    hit = _kernels.first_module(kappa.table)
    if hit is None:
        return None
    return frozenset(kappa.labels[i] for i in hit)


def all_nontrivial_modules(kappa: SignFunction, cap=MODULE_SEARCH_CAP):
    _check_cap(kappa, cap)
    if kappa.n < 4:
        return []
    return [_mask_to_set(kappa, m) for m in _kernels.all_modules(kappa.table)]


def is_decomposable(kappa: SignFunction, cap=MODULE_SEARCH_CAP) -> bool:
    return find_nontrivial_module(kappa, cap) is not None


def factorize(kappa: Chirotope, X, x_star=None, y_star=None) -> BowtieFactors:
    """Split ``kappa`` along the module ``X`` so that bowtie(chi, x*, xi, y*) == kappa.

    ``chi`` lives on X plus ``x_star`` (standing for the complement) and
    ``xi`` on the complement plus ``y_star``.  Fresh proxy names are chosen
    when none are given.
    """
    X = frozenset(X)
    Y = kappa.ground - X
    if not X <= kappa.ground:
        raise UnknownLabel(f"labels {sorted(X - kappa.ground)} not in ground")
    if len(X) < 2 or len(Y) < 2 or not is_module(kappa, X):
        raise NotAModule(f"{sorted(X)} is not a nontrivial module")
    if x_star is None or y_star is None:
        a, b = fresh_labels(kappa.ground | {x_star, y_star} - {None}, 2)
        x_star = a if x_star is None else x_star
        y_star = b if y_star is None else y_star
    if x_star in kappa.ground or y_star in kappa.ground or x_star == y_star:
        raise LabelCollision(f"proxy labels {x_star!r}, {y_star!r} are not fresh")
    y0, x0 = min(Y), min(X)
    chi = relabel(restrict(kappa, X | {y0}), {**{v: v for v in X}, y0: x_star})
    xi = relabel(restrict(kappa, Y | {x0}), {**{v: v for v in Y}, x0: y_star})
    return BowtieFactors(chi, xi, x_star, y_star)


def is_quasi_module(kappa: SignFunction, W) -> bool:
    return _kernels.is_quasi_module(kappa.table, _members(kappa, W))


def quasi_modules(kappa: SignFunction, min_size=2, cap=MODULE_SEARCH_CAP):
    """All quasi-modules of size at least ``min_size``, by size then labels."""
    if min_size < 2:
        raise ValueError("min_size must be at least 2")
    _check_cap(kappa, cap)
    return [_mask_to_set(kappa, m) for m in _kernels.quasi_modules(kappa.table, min_size)]


def antipodal_elements(kappa: SignFunction, W):
    """The antipodal pair of a quasi-module, as a sorted tuple."""
    W = frozenset(W)
    if not is_quasi_module(kappa, W):
        raise NotQuasiModule(f"{sorted(W)} is not a quasi-module")
    b = kappa.index[min(kappa.ground - W)]
    ws = np.array(sorted(kappa.index[w] for w in W))
    sub = kappa.table[b][np.ix_(ws, ws)]
    rank = (sub == 1).sum(axis=0)  # number of w' with w' <_b w
    lo = kappa.labels[ws[int(np.argmin(rank))]]
    hi = kappa.labels[ws[int(np.argmax(rank))]]
    return tuple(sorted((lo, hi)))


def satisfies_antipodal(kappa: SignFunction, W, w1, w2) -> bool:
    """Direct check of the defining condition for a candidate pair."""
    s = kappa.sign
    rest = sorted(set(W) - {w1, w2})
    for a in sorted(kappa.ground - set(W)):
        vals = set()
        for w in rest:
            v1, v2 = s(a, w1, w), s(a, w, w2)
            if v1 != v2:
                return False
            vals.add(v1)
        if len(vals) > 1:
            return False
    return True
