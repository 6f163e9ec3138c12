import random
import sys
from fractions import Fraction

import pytest

from chirotree import _kernels
from chirotree.realization import chirotope_of_points


def orient(p, q, r):
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def chi_of(points):
    """Chirotope of a dict of (decimal-string or number) coordinates."""
    return chirotope_of_points({k: (Fraction(str(x)), Fraction(str(y))) for k, (x, y) in points.items()})


REMARK_POINTS = {
    "x": (0, 0.7), "y": (0, -0.7), "a": (-1.12, 0.15),
    "b": (-1, -0.15), "c": (1, 0.15), "d": (0.91, -0.25),
}

WEAKMOD_POINTS = {
    "a": (0, 0), "b": (0.2, 0.2), "c": (0.7, -0.2), "d": (0.4, -0.5),
    "q": (-0.7, -0.2), "p": (-1.5, 0), "r": (1.5, -0.1),
}

SQUARE_CENTER = {"a": (0, 0), "b": (2, 0), "c": (2, 2), "d": (0, 2), "e": (1, 1.1)}


def regular_ngon(n, prefix="p"):
    """Counterclockwise convex n-gon on integer points of a parabola."""
    return {f"{prefix}{i + 1:02d}": (i, i * i) for i in range(n)}


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    prev = _kernels.use_backend(request.param)
    yield request.param
    _kernels.use_backend(prev)


# figure configurations for the worked triangulation example
FOUR_TRI = {"n1": (0, 0.75), "n1b": (0.15, 0), "n2": (-0.15, 0), "n3": (-0.6, -0.6), "x*": (0.6, -0.6)}
LITTLE_FOUR = {"m1": (0, 0.3), "m1b": (0.5, 0.5), "z*": (-0.5, 0.5), "m3": (-0.5, -0.5), "y*": (0.5, -0.5)}


def facing_chains(a, b, delta=Fraction(1, 1000)):
    """Points on two nearly vertical convex chains of sizes a and b.

    Returns ``(kappa, A, B, factors)``: segments between the sides behave
    like segments between two parallel lines.  ``factors`` is a pair
    (chi, "x*", xi, "y*") whose bowtie is ``kappa`` when both sides have at
    least two points, else ``None``.
    """
    A = {f"a{i}": (-delta * i * i, Fraction(i)) for i in range(a)}
    B = {f"b{j}": (10 + delta * j * j, Fraction(j)) for j in range(b)}
    extra = {"w": (Fraction(5), Fraction(1000))} if a + b < 3 else {}  # a chirotope needs 3 points
    kappa = chirotope_of_points({**A, **B, **extra})
    factors = None
    if a >= 2 and b >= 2:
        chi = chirotope_of_points({**A, "x*": (Fraction(20), Fraction(a - 1, 2))})
        xi = chirotope_of_points({**B, "y*": (Fraction(-10), Fraction(b - 1, 2))})
        factors = (chi, "x*", xi, "y*")
    return kappa, sorted(A), sorted(B, key=lambda s: int(s[1:])), factors


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
