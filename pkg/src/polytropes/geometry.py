"""The polytope of a weight matrix and its ordinary and tropical vertices.

Pol(c) = {y : y_i - y_j <= c_ij} lives in R^n modulo the all-ones line; we
work in the chart y_{n-1} = 0 (0-based), so points have n - 1 coordinates.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from . import linalg
from .binomials import enumerate_monomials
from .core import (AmbiguityReport, WeightMatrix, edges, kleene_star, min_mean_cycle,
                   shortest_path_trees)


class Unbounded(ValueError):
    pass


class NotOpenCone(ValueError):
    pass


@dataclass(frozen=True)
class HPolytope:
    """{y in Q^dim : a.y <= b for (a, b) in rows}; ``labels[k]`` is the edge (i, j)."""
    dim: int
    rows: tuple
    labels: tuple

    def contains(self, y) -> bool:
        return all(linalg.dot(a, y) <= b for a, b in self.rows)


def _chart_row(n, i, j):
    a = [0] * (n - 1)
    if i < n - 1:
        a[i] += 1
    if j < n - 1:
        a[j] -= 1
    return tuple(a)


def hpolytope(c: WeightMatrix) -> HPolytope:
    n = c.n
    rows, labels = [], []
    for i, j in edges(n):
        rows.append((_chart_row(n, i, j), c[i, j]))
        labels.append((i, j))
    return HPolytope(n - 1, tuple(rows), tuple(labels))


def _defining_matrix(c: WeightMatrix):
    lam = min_mean_cycle(c)
    if lam < 0:
        c = c.shifted(lam)
    return lam, kleene_star(c)


def polytrope_of(c: WeightMatrix):
    """(lambda(c), Pol) where Pol is cut out by the closure of c.

    A matrix with a negative cycle is first raised by -lambda(c) on every
    edge, which makes the lightest cycle weight exactly zero; matrices with
    lambda >= 0 are used as given. Replacing c by its Kleene star does not
    change the polytope but makes every inequality tight somewhere.
    """
    lam, s = _defining_matrix(c)
    return lam, hpolytope(s)


def vertices(P: HPolytope) -> list:
    """All vertices, exact and sorted, by double description of the cone
    {(y, t) : t*b - a.y >= 0, t >= 0}."""
    A = [[-x for x in a] + [b] for a, b in P.rows]
    A.append([0] * P.dim + [1])
    den = 1
    for row in A:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    A = [[int(Fraction(x) * den) for x in row] for row in A]
    try:
        rays = linalg.cone_rays(A)
    except ValueError:
        raise Unbounded("the polytope contains a line")
    out = set()
    for r in rays:
        t = r[-1]
        if t == 0:
            raise Unbounded("recession direction %r" % (tuple(r[:-1]),))
        out.add(tuple(Fraction(x, t) for x in r[:-1]))
    return sorted(out)


def vertices_brute_force(P: HPolytope) -> list:
    """Solve every dim-subset of constraints and keep the feasible points."""
    out = set()
    d = P.dim
    for sub in itertools.combinations(range(len(P.rows)), d):
        M = [list(P.rows[k][0]) + [P.rows[k][1]] for k in sub]
        R, piv = linalg.rref(M, d + 1)
        if len(piv) < d or d in piv:
            continue
        y = [Fraction(0)] * d
        for row, p in zip(R, piv):
            y[p] = row[-1]
        if P.contains(y):
            out.add(tuple(y))
    return sorted(out)


@dataclass(frozen=True)
class PolytropeShape:
    tropical_vertices: tuple
    ordinary_vertices: tuple
    vertex_count: int
    is_maximal: bool


def shape_of(c: WeightMatrix) -> PolytropeShape:
    n = c.n
    _, s = _defining_matrix(c)
    P = hpolytope(s)
    vs = vertices(P)
    # column j of the closure, moved into the chart
    trop = tuple(tuple(s[i, j] - s[n - 1, j] for i in range(n - 1)) for j in range(n))
    return PolytropeShape(trop, tuple(vs), len(vs), len(vs) == comb(2 * n - 2, n - 1))


def classify(records) -> dict:
    """Histogram vertex count -> number of records."""
    hist = Counter(len(vertices(polytrope_of(r.witness)[1])) for r in records)
    return dict(sorted(hist.items()))


def type_key(c: WeightMatrix) -> tuple:
    """Vertex-constraint incidence, least over relabellings of the nodes.

    Equal keys mean isomorphic incidence structures; used to compare
    different witnesses of one cone."""
    n = c.n
    _, s = _defining_matrix(c)
    P = hpolytope(s)
    vs = vertices(P)
    tight = {lab: frozenset(v for v, y in enumerate(vs) if linalg.dot(a, y) == b)
             for (a, b), lab in zip(P.rows, P.labels)}
    # vertices are unlabeled, so compare the matrix of pairwise intersection
    # sizes between constraints
    best = None
    for p in itertools.permutations(range(n)):
        img = {(p[i], p[j]): tight[(i, j)] for i, j in edges(n)}
        order = sorted(img)
        key = tuple(tuple(len(img[e] & img[f]) for f in order) for e in order)
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True)
class StandardMonomials:
    """``paths[(i, j)]`` is the tree path from i to j; ``graphs`` pairs each
    least monomial with its edge multiset after path substitution."""
    paths: dict
    graphs: tuple


def standard_monomials(record) -> StandardMonomials:
    c = record.witness
    n = c.n
    if record.dim != n * n - n:
        raise NotOpenCone("cone has dimension %d < %d" % (record.dim, n * n - n))
    trees = shortest_path_trees(c)
    if isinstance(trees, AmbiguityReport):
        raise NotOpenCone("witness has tied shortest paths %r" % (trees.tied_pairs,))
    paths = {(i, j): trees.path(i, j) for i, j in edges(n)}
    graphs = []
    for m in range(2, n // 2 + 1):
        monos = enumerate_monomials(n, m)
        for K, L in sorted({(u.K, u.L) for u in monos}):
            cands = [u for u in monos if u.K == K and u.L == L]
            vals = [u.evaluate(c) for u in cands]
            best = min(vals)
            if vals.count(best) > 1:
                raise NotOpenCone("tie between monomials on blocks %r, %r" % (K, L))
            u = cands[vals.index(best)]
            g = Counter()
            for i, j in u.edges:
                p = paths[(i, j)]
                for a, b in zip(p, p[1:]):
                    g[(a, b)] += 1
            graphs.append((u, tuple(sorted(g.elements()))))
    return StandardMonomials(paths, tuple(graphs))
