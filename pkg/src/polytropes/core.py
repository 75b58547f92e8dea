"""Exact min-plus algebra on weight matrices.

A weight matrix c is an n x n matrix of rationals with zero diagonal. Its
off-diagonal entries are also read as a point of R^N, N = n*n - n, using the
edge order of ``edges(n)``: pairs (i, j), i != j, in lexicographic order.
Nodes are 0-based in the API; serialized edge labels are 1-based.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

Rational = Fraction

MAX_N = 8


class NegativeCycle(ValueError):
    """Raised when a directed cycle of negative weight exists."""


@lru_cache(maxsize=None)
def edges(n: int) -> tuple:
    return tuple((i, j) for i in range(n) for j in range(n) if i != j)


@lru_cache(maxsize=None)
def edge_index(n: int) -> dict:
    return {e: k for k, e in enumerate(edges(n))}


def parse_rational(s) -> Fraction:
    if isinstance(s, float):
        raise TypeError("floats are not accepted as exact weights: %r" % s)
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


@dataclass(frozen=True)
class WeightMatrix:
    n: int
    entries: tuple

    def __post_init__(self):
        n = self.n
        if not 2 <= n <= MAX_N:
            raise ValueError("n must lie in [2, %d], got %d" % (MAX_N, n))
        rows = tuple(tuple(parse_rational(x) for x in row) for row in self.entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("entries must be an %d x %d array" % (n, n))
        for i in range(n):
            if rows[i][i] != 0:
                raise ValueError("diagonal entry (%d,%d) must be 0" % (i + 1, i + 1))
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows) -> "WeightMatrix":
        return cls(len(rows), tuple(tuple(r) for r in rows))

    @classmethod
    def from_edge_vector(cls, n: int, vec: Sequence) -> "WeightMatrix":
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), x in zip(edges(n), vec):
            rows[i][j] = Fraction(x)
        return cls.from_rows(rows)

    @classmethod
    def constant(cls, n: int, value=1) -> "WeightMatrix":
        return cls.from_rows([[0 if i == j else value for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def edge_vector(self) -> tuple:
        return tuple(self.entries[i][j] for i, j in edges(self.n))

    def shifted(self, t) -> "WeightMatrix":
        """Subtract the scalar t from every off-diagonal entry."""
        t = Fraction(t)
        n = self.n
        return WeightMatrix.from_rows(
            [[0 if i == j else self.entries[i][j] - t for j in range(n)] for i in range(n)])

    def permuted(self, sigma: Sequence[int]) -> "WeightMatrix":
        """The matrix d with d[sigma(i)][sigma(j)] = c[i][j]."""
        n = self.n
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[sigma[i]][sigma[j]] = self.entries[i][j]
        return WeightMatrix.from_rows(rows)

    def to_json(self) -> dict:
        return {"n": self.n,
                "entries": [[format_rational(x) for x in row] for row in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "WeightMatrix":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
            raise ValueError('expected an object with keys "n" and "entries"')
        rows = obj["entries"]
        for row in rows:
            for x in row:
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise ValueError("entries must be rational strings like \"p/q\", got %r" % (x,))
        c = cls(int(obj["n"]), tuple(tuple(row) for row in rows))
        return c

    def __str__(self):
        cells = [[format_rational(x) for x in row] for row in self.entries]
        w = max(len(x) for row in cells for x in row)
        return "\n".join(" ".join(x.rjust(w) for x in row) for row in cells)


def _as_matrix(c) -> WeightMatrix:
    if isinstance(c, WeightMatrix):
        return c
    return WeightMatrix.from_rows(c)


def kleene_star(c) -> WeightMatrix:
    """All-pairs shortest path weights by Floyd-Warshall relaxation."""
    c = _as_matrix(c)
    n = c.n
    d = [list(row) for row in c.entries]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            di = d[i]
            for j in range(n):
                v = dik + dk[j]
                if v < di[j]:
                    di[j] = v
        if any(d[i][i] < 0 for i in range(n)):
            raise NegativeCycle("negative directed cycle through node %d" % (k + 1))
    return WeightMatrix.from_rows(d)


def min_mean_cycle(c) -> Fraction:
    """Minimum mean weight of a directed cycle (Karp's recurrence)."""
    c = _as_matrix(c)
    n = c.n
    w = c.entries
    # D[k][v]: lightest walk with exactly k edges ending at v, from anywhere
    D = [[Fraction(0)] * n]
    for k in range(1, n + 1):
        prev = D[-1]
        D.append([min(prev[u] + w[u][v] for u in range(n) if u != v) for v in range(n)])
    best = None
    for v in range(n):
        worst = max(Fraction(D[n][v] - D[k][v], n - k) for k in range(n))
        if best is None or worst < best:
            best = worst
    return best


class TriangleFunctional(NamedTuple):
    """The linear form c[i][k] + c[k][j] - c[i][j]."""
    i: int
    k: int
    j: int

    def evaluate(self, c) -> Fraction:
        return c[self.i, self.k] + c[self.k, self.j] - c[self.i, self.j]

    def normal(self, n: int) -> tuple:
        idx = edge_index(n)
        v = [0] * (n * n - n)
        v[idx[(self.i, self.k)]] += 1
        v[idx[(self.k, self.j)]] += 1
        v[idx[(self.i, self.j)]] -= 1
        return tuple(v)


@lru_cache(maxsize=None)
def triangle_functionals(n: int) -> tuple:
    """All n(n-1)(n-2) triangle forms, sorted by (source, sink, middle)."""
    return tuple(TriangleFunctional(i, k, j)
                 for i in range(n) for j in range(n) for k in range(n)
                 if len({i, j, k}) == 3)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def triangle_sign_vector(c) -> dict:
    c = _as_matrix(c)
    return {t: _sign(t.evaluate(c)) for t in triangle_functionals(c.n)}


@dataclass(frozen=True)
class RegionReport:
    in_Rn: bool
    in_Rn_interior: bool
    in_Pn: bool
    in_Pn_interior: bool


def membership(c) -> RegionReport:
    c = _as_matrix(c)
    lam = min_mean_cycle(c)
    in_r = lam >= 0
    in_p = in_r and kleene_star(c) == c
    in_p_int = in_p and all(t.evaluate(c) > 0 for t in triangle_functionals(c.n))
    return RegionReport(in_r, lam > 0, in_p, in_p_int)


@dataclass(frozen=True)
class TreeTuple:
    """parents[r][v] is the next node after v on the shortest path v -> r."""
    n: int
    parents: tuple

    def path(self, i: int, j: int) -> tuple:
        out = [i]
        while out[-1] != j:
            out.append(self.parents[j][out[-1]])
        return tuple(out)

    def subtree(self, root: int, j: int) -> set:
        """Nodes whose path to ``root`` passes through j (j included)."""
        return {v for v in range(self.n) if j in self.path(v, root)}

    def compatible(self) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                for v in self.subtree(i, j):
                    if v != j and self.parents[i][v] != self.parents[j][v]:
                        return False
        return True


@dataclass(frozen=True)
class AmbiguityReport:
    tied_pairs: tuple


def shortest_path_trees(c):
    """Shortest-path arborescences into every node, or the pairs with ties."""
    c = _as_matrix(c)
    n = c.n
    lam = min_mean_cycle(c)
    if lam < 0:
        raise NegativeCycle("lambda(c) = %s < 0" % lam)
    if lam == 0:
        raise ValueError("zero-weight cycle: shortest paths are not unique walks")
    s = kleene_star(c)
    tied = []
    parents = []
    for j in range(n):
        nxt = {}
        for i in range(n):
            if i != j:
                nxt[i] = [k for k in range(n) if k != i
                          and c[i, k] + s[k, j] == s[i, j]]
        count = {j: 1}

        # tight edges form a DAG towards j because every cycle is positive
        def paths(v):
            if v not in count:
                count[v] = sum(paths(k) for k in nxt[v])
            return count[v]
        par = [None] * n
        for i in range(n):
            if i == j:
                continue
            if paths(i) > 1:
                tied.append((i, j))
            par[i] = nxt[i][0]
        parents.append(tuple(par))
    if tied:
        return AmbiguityReport(tuple(sorted(tied)))
    trees = TreeTuple(n, tuple(parents))
    assert trees.compatible()
    return trees
