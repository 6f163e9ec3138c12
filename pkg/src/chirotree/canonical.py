"""Rewriting chirotope trees to their canonical form.

Two rules: contract an edge joining two convex decorations, and split a
nonconvex decoration along a nontrivial module.  Every step lowers the
measure (multiset of nonconvex node sizes, number of convex nodes) and the
system is confluent, so the fixed point does not depend on the strategy.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .bowtie import MODULE_SEARCH_CAP, all_nontrivial_modules, find_nontrivial_module
from .chirotope import Chirotope, is_convex
from .tree import ChirotopeTree, contract_edge, split_node

CONTRACT = "contract_convex_edge"
SPLIT = "split_nonconvex_node"


@dataclass(frozen=True)
class RewriteStep:
    kind: str
    location: object          # an Edge for contractions, a node id for splits
    module: frozenset = frozenset()


def measure(T: ChirotopeTree):
    """Termination measure; compare results with ``<``.

    Descending-sorted lists compare lexicographically exactly as the
    multiset extension of the order on sizes.
    """
    nonconvex = sorted((chi.n for chi in T.nodes.values() if not is_convex(chi)), reverse=True)
    convex = sum(1 for chi in T.nodes.values() if is_convex(chi))
    return (nonconvex, convex)


def is_canonical(T: ChirotopeTree, cap=MODULE_SEARCH_CAP) -> bool:
    for e in T.edges:
        if is_convex(T.nodes[e.u]) and is_convex(T.nodes[e.v]):
            return False
    for chi in T.nodes.values():
        if not is_convex(chi) and find_nontrivial_module(chi, cap) is not None:
            return False
    return True


def applicable_steps(T: ChirotopeTree, all_modules=False, cap=MODULE_SEARCH_CAP):
    """Applicable rewrite steps: contractions in edge order, then splits by node id.

    With ``all_modules`` every nontrivial module yields a split step;
    otherwise only the smallest one (ties broken by sorted labels).
    """
    steps = [RewriteStep(CONTRACT, e) for e in T.edges
             if is_convex(T.nodes[e.u]) and is_convex(T.nodes[e.v])]
    for v in sorted(T.nodes):
        chi = T.nodes[v]
        if is_convex(chi):
            continue
        if all_modules:
            mods = all_nontrivial_modules(chi, cap)
        else:
            m = find_nontrivial_module(chi, cap)
            mods = [] if m is None else [m]
        steps.extend(RewriteStep(SPLIT, v, m) for m in mods)
    return steps


def apply_step(T: ChirotopeTree, step: RewriteStep) -> ChirotopeTree:
    if step.kind == CONTRACT:
        return contract_edge(T, step.location)
    return split_node(T, step.location, step.module)


def rewrite_once(T: ChirotopeTree, strategy="deterministic", rng: Optional[random.Random] = None,
                 cap=MODULE_SEARCH_CAP):
    """Apply one rule; ``None`` when ``T`` is canonical.

    ``strategy`` is ``"deterministic"`` (first applicable step) or
    ``"random"`` (uniform over every applicable step, any module).
    """
    if strategy == "deterministic":
        steps = applicable_steps(T, cap=cap)
        if not steps:
            return None
        step = steps[0]
    elif strategy == "random":
        steps = applicable_steps(T, all_modules=True, cap=cap)
        if not steps:
            return None
        step = (rng or random.Random()).choice(steps)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return apply_step(T, step), step


def canonicalize(T: ChirotopeTree, strategy="deterministic", seed=None, cap=MODULE_SEARCH_CAP,
                 on_step: Optional[Callable] = None) -> ChirotopeTree:
    """Rewrite to the fixed point.

    ``on_step(before, after, step)`` is called after every rewrite.  A hard
    ceiling of four rewrites per element guards against non-termination.
    """
    rng = random.Random(seed)
    if seed is not None and strategy == "deterministic":
        strategy = "random"
    total = sum(chi.n for chi in T.nodes.values())
    ceiling = 4 * total
    for _ in range(ceiling + 1):
        res = rewrite_once(T, strategy, rng, cap)
        if res is None:
            return T
        T2, step = res
        if on_step is not None:
            on_step(T, T2, step)
        T = T2
    raise RuntimeError(f"rewriting did not terminate within {ceiling} steps")


def canonical_tree(chi: Chirotope, strategy="deterministic", seed=None, cap=MODULE_SEARCH_CAP,
                   on_step=None) -> ChirotopeTree:
    return canonicalize(ChirotopeTree.single(chi), strategy, seed, cap, on_step)
