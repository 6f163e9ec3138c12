"""Chirotope trees: evaluation, expansion, contraction, splitting, fingerprints."""
from __future__ import annotations

import json
from collections import deque
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .bowtie import bowtie, factorize, fresh_labels, is_module
from .chirotope import Chirotope, SignFunction, is_extreme, relabel, validate_axioms
from .errors import (
    NotAModule,
    RepeatedLabel,
    TreeViolation,
    UnknownEdge,
    UnknownLabel,
    UnknownNode,
)


class Edge(NamedTuple):
    u: int
    u_proxy: str
    v: int
    v_proxy: str

    def other(self, w):
        if w == self.u:
            return self.v, self.v_proxy, self.u_proxy
        if w == self.v:
            return self.u, self.u_proxy, self.v_proxy
        raise UnknownNode(f"node {w!r} not on edge {self}")


class ChirotopeTree:
    """Unrooted tree of chirotopes glued along proxy elements.

    ``nodes`` maps integer ids to decorations; ``edges`` lists
    ``(u, u_proxy, v, v_proxy)``.  Instances are treated as immutable.
    """

    def __init__(self, nodes: Mapping[int, SignFunction], edges: Iterable = (), validate=True):
        deco = {}
        for v, sf in nodes.items():
            deco[int(v)] = sf if isinstance(sf, Chirotope) else validate_axioms(sf)
        self.nodes = MappingProxyType(deco)
        self.edges = tuple(Edge(int(e[0]), str(e[1]), int(e[2]), str(e[3])) for e in edges)
        self._hop = None
        self._label_node = None
        if validate:
            validate_tree(self)

    @classmethod
    def single(cls, chi, node_id=0):
        return cls({node_id: chi}, ())

    # -- structure ------------------------------------------------------------
    def incident(self, v):
        if v not in self.nodes:
            raise UnknownNode(f"unknown node {v!r}")
        return [e for e in self.edges if v in (e.u, e.v)]

    def neighbors(self, v):
        return [e.other(v)[0] for e in self.incident(v)]

    def degree(self, v):
        return len(self.incident(v))

    def proxies(self, v):
        """Proxy labels of node ``v`` mapped to the neighbour they lead to."""
        out = {}
        for e in self.incident(v):
            w, _, mine = e.other(v)
            out[mine] = w
        return out

    def non_proxy(self, v):
        return frozenset(self.nodes[v].labels) - set(self.proxies(v))

    @property
    def label_node(self):
        if self._label_node is None:
            m = {}
            for v in self.nodes:
                for lab in self.non_proxy(v):
                    m[lab] = v
            self._label_node = m
        return self._label_node

    @property
    def labels(self):
        return sorted(self.label_node)

    def leaves(self):
        return sorted(v for v in self.nodes if self.degree(v) == 1)

    def _next_hop(self):
        """hop[v][w]: (neighbour of v toward w, proxy of v on that edge)."""
        if self._hop is None:
            adj = {v: [] for v in self.nodes}
            for e in self.edges:
                adj[e.u].append((e.v, e.u_proxy))
                adj[e.v].append((e.u, e.v_proxy))
            hop = {}
            for v in self.nodes:
                h = {}
                for first, proxy in adj[v]:
                    dq = deque([first])
                    seen = {v, first}
                    while dq:
                        w = dq.popleft()
                        h[w] = (first, proxy)
                        for z, _ in adj[w]:
                            if z not in seen:
                                seen.add(z)
                                dq.append(z)
                hop[v] = h
            self._hop = hop
        return self._hop

    def path(self, a, b):
        hop = self._next_hop()
        out = [a]
        while out[-1] != b:
            out.append(hop[out[-1]][b][0])
        return out

    def node_of(self, x):
        try:
            return self.label_node[x]
        except KeyError:
            raise UnknownLabel(f"{x!r} is not a non-proxy label of the tree") from None

    def __eq__(self, other):
        if not isinstance(other, ChirotopeTree):
            return NotImplemented
        return dict(self.nodes) == dict(other.nodes) and set(self.edges) == set(other.edges)

    def __repr__(self):
        return f"ChirotopeTree(nodes={len(self.nodes)}, edges={len(self.edges)})"


# ---------------------------------------------------------------------------


def validate_tree(T: ChirotopeTree):
    """Raise :class:`TreeViolation` unless ``T`` satisfies every tree invariant."""
    nodes = T.nodes
    if not nodes:
        raise TreeViolation("empty_tree", None)
    owner = {}
    for v, chi in nodes.items():
        if chi.n < 3:
            raise TreeViolation("node_too_small", v)
        for lab in chi.labels:
            if lab in owner:
                raise TreeViolation("shared_label", lab, f"nodes {owner[lab]} and {v}")
            owner[lab] = v
    used = set()
    for e in T.edges:
        for w, p in ((e.u, e.u_proxy), (e.v, e.v_proxy)):
            if w not in nodes:
                raise TreeViolation("unknown_node", e, f"node {w!r}")
            if p not in nodes[w].index:
                raise TreeViolation("proxy_not_in_node", e, f"{p!r} not in node {w}")
            if p in used:
                raise TreeViolation("proxy_reused", e, f"{p!r} selected twice")
            used.add(p)
            if not is_extreme(nodes[w], p):
                raise TreeViolation("proxy_not_extreme", e, f"{p!r} in node {w}")
        if e.u == e.v:
            raise TreeViolation("self_loop", e)
    if len(T.edges) != len(nodes) - 1:
        raise TreeViolation("not_a_tree", None, f"{len(nodes)} nodes, {len(T.edges)} edges")
    adj = {v: [] for v in nodes}
    for e in T.edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(nodes):
        raise TreeViolation("not_a_tree", None, "disconnected")
    return True


def representative(T: ChirotopeTree, x, v):
    if v not in T.nodes:
        raise UnknownNode(f"unknown node {v!r}")
    w = T.node_of(x)
    if w == v:
        return x
    return T._next_hop()[v][w][1]


def median_node(T: ChirotopeTree, x, y, z):
    a, b, c = T.node_of(x), T.node_of(y), T.node_of(z)
    if a == b or a == c:
        return a
    if b == c:
        return b
    common = set(T.path(a, b)) & set(T.path(b, c)) & set(T.path(a, c))
    (m,) = common
    return m


def eval_chi_T(T: ChirotopeTree, x, y, z) -> int:
    if len({x, y, z}) < 3:
        raise RepeatedLabel(f"repeated label in ({x!r}, {y!r}, {z!r})")
    v = median_node(T, x, y, z)
    r = [representative(T, lab, v) for lab in (x, y, z)]
    return T.nodes[v].sign(*r)


def expand(T: ChirotopeTree) -> Chirotope:
    """The chirotope on all non-proxy labels defined by the tree.

    For a triple, the representatives at a node are pairwise distinct exactly
    at the median node; elsewhere the dense table reads zero.  Summing the
    gathered tables over all nodes therefore evaluates every triple at its
    median in one pass.
    """
    labels = T.labels
    hop = T._next_hop()
    owner = T.label_node
    n = len(labels)
    table = np.zeros((n, n, n), np.int8)
    for v, chi in T.nodes.items():
        R = np.empty(n, np.int64)
        for i, lab in enumerate(labels):
            w = owner[lab]
            R[i] = chi.index[lab] if w == v else chi.index[hop[v][w][1]]
        table += chi.table[np.ix_(R, R, R)]
    return Chirotope._trusted(SignFunction(labels, table))


def _find_edge(T, e):
    if isinstance(e, int) and not isinstance(e, bool):
        if 0 <= e < len(T.edges):
            return T.edges[e]
        raise UnknownEdge(f"no edge with index {e}")
    e = tuple(e)
    if len(e) == 4:
        e = Edge(*e)
        if e in T.edges:
            return e
    elif len(e) == 2:
        for f in T.edges:
            if {f.u, f.v} == set(e):
                return f
    raise UnknownEdge(f"unknown edge {e!r}")


def _component(T, start, removed):
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for f in T.edges:
            if f == removed or v not in (f.u, f.v):
                continue
            w = f.other(v)[0]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def split_at_edge(T: ChirotopeTree, e):
    """Remove edge ``e``; returns ``(T1, T2, s1, s2)`` with s1, s2 its proxies."""
    e = _find_edge(T, e)
    parts = []
    for root in (e.u, e.v):
        comp = _component(T, root, e)
        parts.append(ChirotopeTree(
            {v: T.nodes[v] for v in comp},
            [f for f in T.edges if f != e and f.u in comp],
            validate=False))
    return parts[0], parts[1], e.u_proxy, e.v_proxy


def contract_edge(T: ChirotopeTree, e) -> ChirotopeTree:
    """Merge the endpoints of ``e`` into one node (keeping the id of ``e.u``)."""
    e = _find_edge(T, e)
    merged = bowtie(T.nodes[e.u], e.u_proxy, T.nodes[e.v], e.v_proxy)
    nodes = {w: chi for w, chi in T.nodes.items() if w != e.v}
    nodes[e.u] = merged
    edges = []
    for f in T.edges:
        if f == e:
            continue
        if f.u == e.v:
            f = f._replace(u=e.u)
        if f.v == e.v:
            f = f._replace(v=e.u)
        edges.append(f)
    return ChirotopeTree(nodes, edges, validate=False)


def split_node(T: ChirotopeTree, v, X, proxy_labels=None, new_id=None) -> ChirotopeTree:
    """Replace node ``v`` by two nodes along the module ``X`` of its decoration.

    The part containing ``X`` keeps the id ``v``; the other part gets
    ``new_id`` (default: one more than the largest id).
    """
    if v not in T.nodes:
        raise UnknownNode(f"unknown node {v!r}")
    chi = T.nodes[v]
    X = frozenset(X)
    Y = chi.ground - X
    if not X <= chi.ground or len(X) < 2 or len(Y) < 2 or not is_module(chi, X):
        raise NotAModule(f"{sorted(X)} is not a nontrivial module of node {v}")
    if proxy_labels is None:
        used = set()
        for c in T.nodes.values():
            used.update(c.labels)
        proxy_labels = fresh_labels(used, 2)
    x_star, y_star = proxy_labels
    f = factorize(chi, X, x_star, y_star)
    w = max(T.nodes) + 1 if new_id is None else new_id
    nodes = dict(T.nodes)
    nodes[v] = f.chi
    nodes[w] = f.xi
    edges = []
    for g in T.edges:
        if g.u == v and g.u_proxy in Y:
            g = g._replace(u=w)
        if g.v == v and g.v_proxy in Y:
            g = g._replace(v=w)
        edges.append(g)
    edges.append(Edge(v, x_star, w, y_star))
    return ChirotopeTree(nodes, edges, validate=False)


def collapse(T: ChirotopeTree, order=None) -> Chirotope:
    """Contract every edge, leaves first; ``order`` picks among ready leaves.

    ``order`` is an optional callable mapping the sorted list of current
    leaves to the one merged next.  Independent of :func:`expand`; used as
    its cross-check.
    """
    while len(T.nodes) > 1:
        leaves = T.leaves()
        leaf = order(leaves) if order else leaves[0]
        (e,) = T.incident(leaf)
        T = contract_edge(T, e)
    (chi,) = T.nodes.values()
    return chi


# ---------------------------------------------------------------------------
# fingerprints

_PARENT = "\x00^"


def _encode(T, v, parent):
    chi = T.nodes[v]
    kids = []
    parent_proxy = None
    for e in T.incident(v):
        w, _, mine = e.other(v)
        if w == parent:
            parent_proxy = mine
        else:
            kids.append((_encode(T, w, v), mine))
    kids.sort()
    ren = {lab: lab for lab in chi.labels}
    if parent_proxy is not None:
        ren[parent_proxy] = _PARENT
    for i, (_, mine) in enumerate(kids):
        ren[mine] = f"\x00{i}"
    rc = relabel(chi, ren)
    return json.dumps([list(rc.labels), rc.sign_string(), [k for k, _ in kids]],
                      separators=(",", ":"))


def centroids(T: ChirotopeTree):
    nodes = sorted(T.nodes)
    if len(nodes) == 1:
        return nodes
    best, out = None, []
    for v in nodes:
        worst = 0
        for e in T.incident(v):
            worst = max(worst, len(_component(T, e.other(v)[0], e)))
        if best is None or worst < best:
            best, out = worst, [v]
        elif worst == best:
            out.append(v)
    return out


def fingerprint(T: ChirotopeTree) -> str:
    """Encoding invariant under node ids and proxy names.

    Rooted at the centroid (the smaller encoding for a bicentroid).  Child
    encodings never tie because each subtree owns distinct non-proxy labels.
    """
    return min(_encode(T, c, None) for c in centroids(T))


def trees_isomorphic(T1: ChirotopeTree, T2: ChirotopeTree) -> bool:
    return fingerprint(T1) == fingerprint(T2)


def rename_proxies(T: ChirotopeTree, mapping: Mapping) -> ChirotopeTree:
    """Copy of ``T`` with proxy labels renamed via ``mapping``."""
    nodes = {}
    for v, chi in T.nodes.items():
        nodes[v] = relabel(chi, {lab: mapping.get(lab, lab) for lab in chi.labels})
    edges = [Edge(e.u, mapping.get(e.u_proxy, e.u_proxy), e.v, mapping.get(e.v_proxy, e.v_proxy))
             for e in T.edges]
    return ChirotopeTree(nodes, edges)
