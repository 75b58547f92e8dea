import itertools
import random
from fractions import Fraction

import pytest

from polytropes.core import WeightMatrix, min_mean_cycle


def random_matrix(rng, n, lo=-6, hi=12, den=4):
    rows = [[Fraction(0) if i == j else Fraction(rng.randint(lo * den, hi * den), den)
             for j in range(n)] for i in range(n)]
    return WeightMatrix.from_rows(rows)


def random_in_Rn(rng, n, **kw):
    """Random matrix shifted so that its lightest cycle mean is >= 0."""
    c = random_matrix(rng, n, **kw)
    lam = min_mean_cycle(c)
    return c.shifted(lam) if lam < 0 else c


def simple_cycles(n):
    for k in range(2, n + 1):
        for cyc in itertools.permutations(range(n), k):
            if cyc[0] == min(cyc):
                yield cyc


def brute_min_mean(c):
    return min(Fraction(sum(c[cyc[t], cyc[(t + 1) % len(cyc)]] for t in range(len(cyc))),
                        len(cyc))
               for cyc in simple_cycles(c.n))


def brute_shortest(c, i, j):
    """Lightest simple path from i to j by listing them all."""
    n = c.n
    others = [v for v in range(n) if v not in (i, j)]
    best = c[i, j]
    for k in range(1, len(others) + 1):
        for mid in itertools.permutations(others, k):
            p = (i,) + mid + (j,)
            w = sum(c[a, b] for a, b in zip(p, p[1:]))
            best = min(best, w)
    return best


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def maximal4():
    from polytropes.fans import enumerate_maximal
    return enumerate_maximal(4)


@pytest.fixture(scope="session")
def all_cones4(maximal4):
    from polytropes.fans import enumerate_all_cones
    return enumerate_all_cones(4, maximal4)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
