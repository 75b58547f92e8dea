"""Bipartite monomials and binomials, and the linear relations among them.

A monomial (K, r, L) is the perfect matching k_t -> l_{(t+r) mod m} between
sorted source and sink blocks. A binomial is the difference of two such
matchings on the same blocks; its integer vector in Z^N is a hyperplane normal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import linalg
from .core import edge_index, edges


class BadBlockSize(ValueError):
    pass


def _check(n, m):
    if not 2 <= m <= n // 2:
        raise BadBlockSize("block size m=%d outside [2, %d] for n=%d" % (m, n // 2, n))


@dataclass(frozen=True)
class BipartiteMonomial:
    m: int
    K: tuple
    L: tuple
    r: int

    @property
    def edges(self) -> tuple:
        return tuple((self.K[t], self.L[(t + self.r) % self.m]) for t in range(self.m))

    def incidence(self, n: int) -> tuple:
        idx = edge_index(n)
        v = [0] * (n * n - n)
        for e in self.edges:
            v[idx[e]] += 1
        return tuple(v)

    def evaluate(self, c):
        return sum(c[e] for e in self.edges)


@dataclass(frozen=True)
class BipartiteBinomial:
    """plus - minus, where plus and minus are monomials on the same blocks."""
    n: int
    K: tuple
    L: tuple
    r_plus: int
    r_minus: int
    normal: tuple = field(repr=False)
    flipped: bool = False

    @property
    def m(self):
        return len(self.K)

    @property
    def plus(self):
        return BipartiteMonomial(self.m, self.K, self.L, self.r_plus)

    @property
    def minus(self):
        return BipartiteMonomial(self.m, self.K, self.L, self.r_minus)

    def evaluate(self, c):
        return self.plus.evaluate(c) - self.minus.evaluate(c)

    def sparse(self) -> list:
        """JSON-friendly list of nonzero coordinates with 1-based edge labels."""
        E = edges(self.n)
        return [{"edge": "%d,%d" % (E[k][0] + 1, E[k][1] + 1), "coef": int(x)}
                for k, x in enumerate(self.normal) if x]


def canonical_orientation(v):
    """Return (w, flipped) where w = +-v has a positive first nonzero entry."""
    for x in v:
        if x:
            if x > 0:
                return tuple(v), False
            return tuple(-y for y in v), True
    return tuple(v), False


def blocks(n: int, m: int):
    for K in itertools.combinations(range(n), m):
        rest = [x for x in range(n) if x not in K]
        for L in itertools.combinations(rest, m):
            yield K, L


def enumerate_monomials(n: int, m: int) -> list:
    _check(n, m)
    return [BipartiteMonomial(m, K, L, r) for K, L in blocks(n, m) for r in range(m)]


@lru_cache(maxsize=None)
def _binomials(n, m):
    out = []
    for K, L in blocks(n, m):
        inc = [BipartiteMonomial(m, K, L, r).incidence(n) for r in range(m)]
        for a, b in itertools.combinations(range(m), 2):
            v, flip = canonical_orientation([x - y for x, y in zip(inc[a], inc[b])])
            rp, rm = (b, a) if flip else (a, b)
            out.append(BipartiteBinomial(n, K, L, rp, rm, v, flip))
    return tuple(out)


def enumerate_binomials(n: int, m: int) -> list:
    _check(n, m)
    return list(_binomials(n, m))


def all_binomials(n: int) -> list:
    """Every bipartite binomial for m = 2 .. n//2, in order of m."""
    return [b for m in range(2, n // 2 + 1) for b in _binomials(n, m)]


def monomial_count(n, m):
    return comb(n, m) * comb(n - m, m) * m


def binomial_count(n, m):
    return comb(n, m) * comb(n - m, m) * comb(m, 2)


def normal_matrix(n: int, m=None) -> np.ndarray:
    bs = all_binomials(n) if m is None else enumerate_binomials(n, m)
    if not bs:
        return np.zeros((0, n * n - n), dtype=np.int64)
    return np.array([b.normal for b in bs], dtype=np.int64)


FAMILIES = ("rotations", "matchings")


def block_members(K, L, family="rotations") -> list:
    """Sink tuples of the matchings used for one (K, L) block.

    Member r sends K[t] to the t-th entry of its tuple. "rotations" gives the
    m cyclic shifts of the sorted sinks; "matchings" gives all m! perfect
    matchings in lexicographic order (rotation 0 is the first of both).
    """
    m = len(K)
    if family == "rotations":
        return [tuple(L[(t + r) % m] for t in range(m)) for r in range(m)]
    if family == "matchings":
        return list(itertools.permutations(L))
    raise ValueError("unknown block family %r" % (family,))


@lru_cache(maxsize=None)
def winner_blocks(n: int) -> tuple:
    """(K, L) pairs with m >= 3, the blocks whose chambers carry a winner label."""
    return tuple((K, L) for m in range(3, n // 2 + 1) for K, L in blocks(n, m))


def member_incidence(n, K, sinks) -> tuple:
    idx = edge_index(n)
    v = [0] * (n * n - n)
    for k, l in zip(K, sinks):
        v[idx[(k, l)]] += 1
    return tuple(v)


def flow(v, n):
    """Net outflow per node of an edge vector (the operator A applied to v)."""
    out = [0] * n
    for (i, j), x in zip(edges(n), v):
        out[i] += x
        out[j] -= x
    return out


def kernel_dimension(n: int) -> int:
    """Dimension of the space of linear relations among all binomial normals."""
    rows = [b.normal for b in all_binomials(n)]
    return len(rows) - linalg.rank(rows)


@dataclass(frozen=True)
class RelationCircuit:
    """An integer relation sum coef * normal = 0 with minimal support.

    ``terms`` holds (binomial index, coefficient) pairs sorted by index.
    """
    n: int
    terms: tuple

    @property
    def support(self):
        return tuple(i for i, _ in self.terms)

    def vector(self, size: int) -> tuple:
        v = [0] * size
        for i, a in self.terms:
            v[i] = a
        return tuple(v)

    def combination(self) -> tuple:
        """sum coef * normal, which is the zero vector."""
        bs = all_binomials(self.n)
        out = [0] * (self.n * self.n - self.n)
        for i, a in self.terms:
            for k, x in enumerate(bs[i].normal):
                out[k] += a * x
        return tuple(out)


def _supports_through(B: np.ndarray, e0: int):
    """Supports of all circuits of the rows of B that contain row e0.

    Every coordinate touched by a circuit is touched at least twice, so while
    some coordinate is covered once, one of the rows meeting it must be added.
    Independence is tracked with an incremental Gram-Schmidt basis; rows are
    small integer vectors, so a nonzero residual is far above the tolerance.
    """
    nrows, N = B.shape
    Bf = B.astype(float)
    absB = np.abs(B)
    by_col = [np.nonzero(B[:, k])[0].tolist() for k in range(N)]
    found = set()
    seen = set()

    def residual(Q, v):
        for q in Q:
            v = v - (q @ v) * q
        return v

    def rec(S, Q, cover):
        key = frozenset(S)
        if key in seen:
            return
        seen.add(key)
        exposed = np.nonzero(cover == 1)[0]
        if len(exposed) == 0:
            cands = [x for x in range(nrows) if x not in key]
        else:
            best = min(exposed, key=lambda k: len(by_col[k]))
            cands = [x for x in by_col[best] if x not in key]
        for x in cands:
            v = residual(Q, Bf[x])
            nv = np.linalg.norm(v)
            if nv > 1e-7:
                rec(S + [x], Q + [v / nv], cover + absB[x])
            else:
                T = frozenset(S + [x])
                if T not in seen:
                    seen.add(T)
                    # dependent: a circuit iff the unique relation has full support
                    M = Bf[sorted(T)]
                    _, sv, vt = np.linalg.svd(M.T)
                    if np.all(np.abs(vt[-1]) > 1e-9):
                        found.add(T)

    v0 = Bf[e0]
    rec([e0], [v0 / np.linalg.norm(v0)], absB[e0].copy())
    return found


def _exact_relation(rows, support):
    ker = linalg.nullspace([[rows[i][k] for i in support] for k in range(len(rows[0]))],
                           len(support))
    if len(ker) != 1:
        raise ArithmeticError("support %r is not a circuit" % (support,))
    c = ker[0]
    if c[0] < 0:
        c = tuple(-x for x in c)
    if any(x == 0 for x in c):
        raise ArithmeticError("support %r is not minimal" % (support,))
    return c


def relation_circuits(n: int) -> list:
    """All circuits among the binomial normals, grouped into S_n classes.

    Returns a list of classes; each class is a list of RelationCircuit (one per
    support, normalized so the first coefficient is positive), classes and
    members sorted. Only n <= 5 is searched; n = 6 is out of reach.
    """
    if n > 5:
        raise ValueError("circuit enumeration is only supported for n <= 5; "
                         "use kernel_dimension for n = 6")
    return [list(c) for c in _relation_circuits(n)]


@lru_cache(maxsize=None)
def _relation_circuits(n):
    from .symmetry import SymmetryTables

    bs = all_binomials(n)
    if not bs:
        return []
    rows = [b.normal for b in bs]
    B = np.array(rows, dtype=np.int64)
    tab = SymmetryTables.get(n)
    # every orbit of supports meets the supports through binomial 0
    through0 = _supports_through(B, 0)
    classes = {}
    for S in through0:
        key = min(tuple(sorted(int(tab.bin_perm[p][i]) for i in S))
                  for p in range(len(tab.perms)))
        classes.setdefault(key, None)
    out = []
    for key in sorted(classes):
        coef = _exact_relation(rows, key)
        members = {}
        for p in range(len(tab.perms)):
            img = [(int(tab.bin_perm[p][i]), int(tab.bin_sign[p][i]) * a)
                   for i, a in zip(key, coef)]
            img.sort()
            if img[0][1] < 0:
                img = [(i, -a) for i, a in img]
            members[tuple(img)] = None
        out.append(tuple(RelationCircuit(n, t) for t in sorted(members)))
    return tuple(out)
