import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chirotree.chirotope import (
    Chirotope,
    SignFunction,
    caratheodory_witness,
    find_axiom_violation,
    hull_cycle,
    is_convex,
    is_extreme,
    radial_order,
    relabel,
    restrict,
    segments_cross,
    sign,
    validate_axioms,
)
from chirotree.errors import (
    AxiomViolation,
    NotBijective,
    NotExtreme,
    RepeatedLabel,
    TooSmall,
    UnknownLabel,
)
from chirotree.generate import random_chirotope

from conftest import SQUARE_CENTER, chi_of, orient, regular_ngon


def test_sign_parity():
    chi = chi_of({"a": (0, 0), "b": (1, 0), "c": (0, 1)})
    assert sign(chi, "a", "b", "c") == 1
    assert sign(chi, "b", "a", "c") == -1
    assert sign(chi, "b", "c", "a") == 1
    with pytest.raises(RepeatedLabel):
        sign(chi, "a", "a", "b")
    with pytest.raises(UnknownLabel):
        sign(chi, "a", "b", "zz")


def test_alternation_all_permutations(rng):
    chi, _ = random_chirotope(7, rng)
    for t in itertools.combinations(chi.labels, 3):
        base = chi.sign(*t)
        for perm in itertools.permutations(range(3)):
            inv = sum(perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3))
            assert chi.sign(*(t[i] for i in perm)) == base * (-1) ** inv


def test_from_signs_rejects_incomplete():
    with pytest.raises(ValueError):
        SignFunction.from_signs("abcd", {("a", "b", "c"): 1})


def test_too_small():
    with pytest.raises(TooSmall):
        SignFunction.from_signs("ab", {})


def _points_sf(pts):
    return SignFunction.from_function(pts, lambda a, b, c: orient(pts[a], pts[b], pts[c]))


def test_realizable_is_valid(rng):
    for _ in range(20):
        chi, P = random_chirotope(rng.randint(4, 9), rng)
        assert find_axiom_violation(SignFunction(chi.labels, chi.table)) is None


def test_interiority_violation_reported():
    signs = {("t", "a", "b"): 1, ("t", "b", "c"): 1, ("t", "c", "a"): 1, ("a", "b", "c"): -1}
    sf = SignFunction.from_signs("abct", signs)
    with pytest.raises(AxiomViolation) as exc:
        validate_axioms(sf)
    assert exc.value.axiom == "interiority"
    t, x, y, z = exc.value.tuple
    s = sf.sign
    assert s(t, y, z) == s(x, t, z) == s(x, y, t) == 1 and s(x, y, z) == -1


def _interiority_ok(s, labels):
    for t, x, y, z in itertools.permutations(labels, 4):
        if s(t, y, z) == s(x, t, z) == s(x, y, t) == 1 and s(x, y, z) != 1:
            return False
    return True


def _transitivity_ok(s, labels):
    for q, t, x, y, z in itertools.permutations(labels, 5):
        if (s(t, q, x) == s(t, q, y) == s(t, q, z) == 1 and s(x, y, t) == s(y, z, t) == 1
                and s(x, z, t) != 1):
            return False
    return True


def test_transitivity_only_violation_exhaustive():
    labels = "abcde"
    triples = list(itertools.combinations(labels, 3))
    found = None
    for bits in range(1 << 10):
        vals = {t: 1 if bits >> i & 1 else -1 for i, t in enumerate(triples)}
        sf = SignFunction.from_signs(labels, vals)
        if _interiority_ok(sf.sign, labels) and not _transitivity_ok(sf.sign, labels):
            found = sf
            break
    assert found is not None
    with pytest.raises(AxiomViolation) as exc:
        validate_axioms(found)
    assert exc.value.axiom == "transitivity"
    q, t, x, y, z = exc.value.tuple
    s = found.sign
    assert s(t, q, x) == s(t, q, y) == s(t, q, z) == 1
    assert s(x, y, t) == s(y, z, t) == 1 and s(x, z, t) == -1


def test_validation_matches_bruteforce_on_random_sign_functions():
    r = random.Random(7)
    labels = "abcde"
    triples = list(itertools.combinations(labels, 3))
    for _ in range(150):
        sf = SignFunction.from_signs(labels, {t: r.choice((1, -1)) for t in triples})
        expect = _interiority_ok(sf.sign, labels) and _transitivity_ok(sf.sign, labels)
        assert (find_axiom_violation(sf) is None) == expect


def test_extreme_square_center():
    chi = chi_of(SQUARE_CENTER)
    assert [is_extreme(chi, x) for x in "abcde"] == [True] * 4 + [False]
    assert not is_convex(chi)
    a, b, c = caratheodory_witness(chi, "e")
    assert chi.sign("e", a, b) == chi.sign("e", b, c) == chi.sign("e", c, a) == 1
    assert caratheodory_witness(chi, "a") is None
    with pytest.raises(NotExtreme):
        radial_order(chi, "e")


def test_convex_polygon():
    pts = regular_ngon(7)
    chi = chi_of(pts)
    assert is_convex(chi)
    labels = sorted(pts)
    assert radial_order(chi, labels[0]) == labels[1:]
    assert hull_cycle(chi) == labels


def test_triangle_radial_and_hull():
    chi = chi_of({"a": (0, 0), "b": (1, 0), "c": (0, 1)})
    assert radial_order(chi, "a") == ["b", "c"]
    assert hull_cycle(chi) == ["a", "b", "c"]


def test_extreme_agrees_with_caratheodory():
    r = random.Random(3)
    for _ in range(200):
        chi, _ = random_chirotope(r.randint(3, 9), r)
        for x in chi.labels:
            w = caratheodory_witness(chi, x)
            assert is_extreme(chi, x) == (w is None)
            if w is not None:
                a, b, c = w
                assert chi.sign(x, a, b) == chi.sign(x, b, c) == chi.sign(x, c, a) == 1


def test_radial_order_is_consistent_and_hull_seed_free(rng):
    for _ in range(30):
        chi, _ = random_chirotope(rng.randint(4, 9), rng)
        cyc = hull_cycle(chi)
        assert len(cyc) == len(set(cyc)) == len(chi.extremes) >= 3
        for a in chi.extremes:
            order = radial_order(chi, a)
            for i, p in enumerate(order):
                for q in order[i + 1:]:
                    assert chi.sign(a, p, q) == 1
            # the hull read from any seed is a rotation of the normalized cycle
            seeded = [a] + [x for x in order if x in chi.extremes]
            k = cyc.index(a)
            assert seeded == cyc[k:] + cyc[:k]
            assert order[0] == cyc[(k + 1) % len(cyc)] and order[-1] == cyc[k - 1]


def test_segments_cross_examples():
    chi = chi_of({"a": (0, 0), "b": (1, 1), "c": (0, 1), "d": (1, 0.1)})
    assert segments_cross(chi, "a", "b", "c", "d")
    chi = chi_of({"a": (0, 0), "b": (1, 0), "c": (0, 1), "d": (1, 1.1)})
    assert not segments_cross(chi, "a", "b", "c", "d")
    with pytest.raises(RepeatedLabel):
        segments_cross(chi, "a", "b", "a", "c")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_segments_cross_symmetries(seed):
    chi, _ = random_chirotope(6, random.Random(seed))
    for x, y, z, t in itertools.permutations(chi.labels[:5], 4):
        v = segments_cross(chi, x, y, z, t)
        for args in [(y, x, z, t), (x, y, t, z), (z, t, x, y), (t, z, y, x)]:
            assert segments_cross(chi, *args) == v


def test_restrict_and_relabel(rng):
    chi, _ = random_chirotope(8, rng)
    assert restrict(chi, chi.labels) == chi
    sub = restrict(chi, chi.labels[:5])
    assert isinstance(sub, Chirotope)
    assert find_axiom_violation(SignFunction(sub.labels, sub.table)) is None
    fwd = {lab: f"z{i}" for i, lab in enumerate(reversed(chi.labels))}
    back = {v: k for k, v in fwd.items()}
    moved = relabel(chi, fwd)
    for t in itertools.combinations(chi.labels, 3):
        assert moved.sign(*(fwd[v] for v in t)) == chi.sign(*t)
    assert relabel(moved, back) == chi
    with pytest.raises(TooSmall):
        restrict(chi, chi.labels[:2])
    with pytest.raises(NotBijective):
        relabel(chi, {lab: "same" for lab in chi.labels})


def test_sign_matches_determinant(rng):
    for _ in range(10):
        chi, P = random_chirotope(7, rng)
        for a, b, c in itertools.permutations(chi.labels, 3):
            assert chi.sign(a, b, c) == orient(P[a], P[b], P[c])


def test_table_is_read_only(rng):
    chi, _ = random_chirotope(5, rng)
    with pytest.raises(ValueError):
        chi.table[0, 1, 2] = 0
    assert np.array_equal(chi.table, -np.transpose(chi.table, (1, 0, 2)))
