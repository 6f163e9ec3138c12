"""The numba and numpy backends must agree on every kernel."""
import itertools
import os
import random
import subprocess
import sys

import networkx as nx
import numpy as np
import pytest

from chirotree import _kernels
from chirotree.chirotope import SignFunction
from chirotree.generate import random_chirotope, random_tree
from chirotree.tree import expand


def both(fn, *args):
    out = {}
    for name in ("numba", "numpy"):
        prev = _kernels.use_backend(name)
        try:
            out[name] = fn(*args)
        finally:
            _kernels.use_backend(prev)
    return out["numba"], out["numpy"]


def _random_sign_tables(r, count, n=6):
    labels = [f"v{i}" for i in range(n)]
    triples = list(itertools.combinations(labels, 3))
    for _ in range(count):
        yield SignFunction.from_signs(labels, {t: r.choice((1, -1)) for t in triples}).table


def test_axiom_kernels_agree():
    r = random.Random(11)
    for C in _random_sign_tables(r, 200):
        a, b = both(_kernels.interiority_subset, C)
        assert a == b
        a, b = both(_kernels.transitivity_subset, C)
        assert a == b
    for _ in range(20):
        chi, _ = random_chirotope(r.randint(4, 12), r)
        assert both(_kernels.interiority_subset, chi.table) == (None, None)
        assert both(_kernels.transitivity_subset, chi.table) == (None, None)


def test_crossing_matrix_agrees():
    r = random.Random(5)
    chi, _ = random_chirotope(9, r)
    pairs = list(itertools.combinations(range(9), 2))
    I = np.array([p[0] for p in pairs])
    J = np.array([p[1] for p in pairs])
    a, b = both(_kernels.crossing_matrix, chi.table, I, J)
    assert np.array_equal(a, b)
    assert np.array_equal(a, a.T)
    assert not a.diagonal().any()


def test_maximal_cliques_agree_with_networkx():
    r = random.Random(9)
    for _ in range(30):
        m = r.randint(1, 14)
        adj = np.zeros((m, m), bool)
        for i, j in itertools.combinations(range(m), 2):
            if r.random() < 0.5:
                adj[i, j] = adj[j, i] = True
        a, b = both(_kernels.maximal_cliques, adj)
        G = nx.from_numpy_array(adj.astype(int))
        ref = sorted(sum(1 << v for v in c) for c in nx.find_cliques(G))
        assert sorted(a) == sorted(b) == ref


def test_module_kernels_agree():
    for seed in range(15):
        T, _ = random_tree(3, (3, 4), 3, seed=seed)
        C = expand(T).table
        a, b = both(_kernels.all_modules, C)
        assert sorted(a) == sorted(b) and a
        assert both(_kernels.first_module, C)[0] == both(_kernels.first_module, C)[1]
        n = C.shape[0]
        for mask in range(1, 1 << min(n, 8)):
            member = np.array([(mask >> i) & 1 for i in range(n)], bool)
            x, y = both(_kernels.is_module, C, member)
            assert x == y
            x, y = both(_kernels.is_quasi_module, C, member)
            assert x == y


def test_quasi_module_kernels_agree():
    r = random.Random(21)
    for _ in range(20):
        chi, _ = random_chirotope(r.randint(5, 9), r)
        a, b = both(_kernels.quasi_modules, chi.table, 2)
        assert sorted(a) == sorted(b)


def test_bad_backend_name():
    with pytest.raises(ValueError):
        _kernels.use_backend("fortran")


def test_env_var_selects_numpy():
    code = "from chirotree import _kernels; print(_kernels.backend())"
    env = dict(os.environ, CHIROTREE_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
    env["CHIROTREE_DISABLE_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numba"
