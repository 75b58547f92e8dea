"""Relabelling nodes: the S_n action on edges, functionals and sign vectors.

A permutation sigma acts on weight matrices by (sigma.c)[sigma(i)][sigma(j)]
= c[i][j]. The induced action on sign data is chosen so that
act(sigma, sign(c)) == sign(sigma.c).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .binomials import all_binomials, block_members, winner_blocks
from .core import edge_index, edges, triangle_functionals


class NonInvariantFamily(ValueError):
    """The chosen m>=3 matching family is not closed under the permutation."""


@dataclass(frozen=True)
class NodePermutation:
    image: tuple

    def __post_init__(self):
        img = tuple(int(x) for x in self.image)
        if sorted(img) != list(range(len(img))):
            raise ValueError("not a permutation: %r" % (img,))
        object.__setattr__(self, "image", img)

    def __call__(self, i):
        return self.image[i]

    def __len__(self):
        return len(self.image)

    def compose(self, other: "NodePermutation") -> "NodePermutation":
        """self after other."""
        return NodePermutation(tuple(self.image[other.image[i]] for i in range(len(self))))

    def inverse(self) -> "NodePermutation":
        inv = [0] * len(self)
        for i, j in enumerate(self.image):
            inv[j] = i
        return NodePermutation(tuple(inv))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))


@dataclass(frozen=True)
class SignVector:
    """Sign data of a cone.

    ``triangle`` and ``binomial`` hold -1/0/+1 per triangle functional and per
    m=2 binomial (canonical orders). ``winners`` holds, per m>=3 block, the
    bitmask of members attaining the extreme value: one bit for a chamber,
    several for a lower cone.
    """
    n: int
    triangle: tuple
    binomial: tuple
    winners: tuple = ()

    def key(self) -> tuple:
        return self.triangle + self.binomial + self.winners

    def __lt__(self, other):
        return self.key() < other.key()

    def to_json(self) -> dict:
        sym = {-1: "-", 0: "0", 1: "+"}
        out = {"triangle": "".join(sym[x] for x in self.triangle),
               "binomial": "".join(sym[x] for x in self.binomial)}
        if self.winners:
            out["winners"] = [[r for r in range(w.bit_length()) if w >> r & 1]
                              for w in self.winners]
        return out

    @classmethod
    def from_json(cls, n, obj) -> "SignVector":
        val = {"-": -1, "0": 0, "+": 1}
        w = tuple(sum(1 << r for r in rs) for rs in obj.get("winners", []))
        return cls(n, tuple(val[ch] for ch in obj["triangle"]),
                   tuple(val[ch] for ch in obj["binomial"]), w)


@dataclass(frozen=True)
class InducedAction:
    """Index maps of one node permutation.

    Entry k of each map is where item k goes: triangle t becomes triangle
    tri[t]; binomial b becomes bin_sign[b] * binomial bin[b]; block q becomes
    block block[q] with member r sent to member member[q][r] (-1 when the
    image matching lies outside the family).
    """
    sigma: NodePermutation
    edge: tuple
    tri: tuple
    bin: tuple
    bin_sign: tuple
    block: tuple
    member: tuple


def _m2_binomials(n):
    return [b for b in all_binomials(n) if b.m == 2]


@lru_cache(maxsize=None)
def _catalog(n, family):
    tris = triangle_functionals(n)
    tri_index = {t: k for k, t in enumerate(tris)}
    bins = _m2_binomials(n)
    bin_index = {b.normal: k for k, b in enumerate(bins)}
    blks = winner_blocks(n)
    blk_index = {kl: q for q, kl in enumerate(blks)}
    members = [block_members(K, L, family) for K, L in blks]
    member_index = [{s: r for r, s in enumerate(ms)} for ms in members]
    return tris, tri_index, bins, bin_index, blks, blk_index, members, member_index


def induced_action(sigma, n=None, family="rotations") -> InducedAction:
    if not isinstance(sigma, NodePermutation):
        sigma = NodePermutation(tuple(sigma))
    n = len(sigma) if n is None else n
    p = sigma.image
    tris, tri_index, bins, bin_index, blks, blk_index, members, member_index = _catalog(n, family)
    eidx = edge_index(n)
    edge = tuple(eidx[(p[i], p[j])] for i, j in edges(n))
    tri = tuple(tri_index[type(t)(p[t.i], p[t.k], p[t.j])] for t in tris)
    bmap, bsign = [], []
    for b in bins:
        v = [0] * len(edge)
        for k, x in enumerate(b.normal):
            v[edge[k]] = x
        v = tuple(v)
        if v in bin_index:
            bmap.append(bin_index[v])
            bsign.append(1)
        else:
            bmap.append(bin_index[tuple(-x for x in v)])
            bsign.append(-1)
    bq, mem = [], []
    for q, (K, L) in enumerate(blks):
        K2 = tuple(sorted(p[k] for k in K))
        L2 = tuple(sorted(p[l] for l in L))
        q2 = blk_index[(K2, L2)]
        bq.append(q2)
        row = []
        for sinks in members[q]:
            img = dict((p[k], p[l]) for k, l in zip(K, sinks))
            row.append(member_index[q2].get(tuple(img[k] for k in K2), -1))
        mem.append(tuple(row))
    return InducedAction(sigma, edge, tri, tuple(bmap), tuple(bsign), tuple(bq), tuple(mem))


def act(sigma, s: SignVector, family="rotations") -> SignVector:
    a = induced_action(sigma, s.n, family)
    tri = [0] * len(s.triangle)
    for t, x in enumerate(s.triangle):
        tri[a.tri[t]] = x
    bn = [0] * len(s.binomial)
    for b, x in enumerate(s.binomial):
        bn[a.bin[b]] = a.bin_sign[b] * x
    win = [0] * len(s.winners)
    for q, w in enumerate(s.winners):
        out = 0
        for r in range(w.bit_length()):
            if w >> r & 1:
                r2 = a.member[q][r]
                if r2 < 0:
                    raise NonInvariantFamily(
                        "permutation %r moves a %s member of block %d outside the family"
                        % (a.sigma.image, family, q))
                out |= 1 << r2
        win[a.block[q]] = out
    return SignVector(s.n, tuple(tri), tuple(bn), tuple(win))


class SymmetryTables:
    """All induced actions for one n, stacked into arrays for fast scans."""

    _cache = {}

    def __init__(self, n, family="rotations"):
        self.n = n
        self.family = family
        self.perms = list(itertools.permutations(range(n)))
        acts = [induced_action(NodePermutation(p), n, family) for p in self.perms]
        self.edge_perm = np.array([a.edge for a in acts], dtype=np.int64)
        self.tri_perm = np.array([a.tri for a in acts], dtype=np.int64).reshape(len(acts), -1)
        self.bin_perm = np.array([a.bin for a in acts], dtype=np.int64).reshape(len(acts), -1)
        self.bin_sign = np.array([a.bin_sign for a in acts], dtype=np.int64).reshape(len(acts), -1)
        self.block_perm = np.array([a.block for a in acts], dtype=np.int64).reshape(len(acts), -1)
        self.invariant = all(r >= 0 for a in acts for row in a.member for r in row)
        nblk = self.block_perm.shape[1]
        self.mask_map = None
        if nblk:
            width = max(len(row) for row in acts[0].member)
            # image of every member bitmask, per permutation and block
            mm = np.full((len(acts), nblk, 1 << width), -1, dtype=np.int64)
            for p, a in enumerate(acts):
                for q, row in enumerate(a.member):
                    for mask in range(1 << len(row)):
                        out = 0
                        for r, r2 in enumerate(row):
                            if mask >> r & 1:
                                if r2 < 0:
                                    out = -1
                                    break
                                out |= 1 << r2
                        mm[p, q, mask] = out
            self.mask_map = mm
        self._rows = np.arange(len(self.perms))[:, None]

    @classmethod
    def get(cls, n, family="rotations") -> "SymmetryTables":
        key = (n, family)
        if key not in cls._cache:
            cls._cache[key] = cls(n, family)
        return cls._cache[key]

    def images(self, tri, bins, wins=None) -> np.ndarray:
        """One row per permutation: the concatenated image sign data."""
        P = len(self.perms)
        T = np.empty((P, len(tri)), dtype=np.int64)
        T[self._rows, self.tri_perm] = np.asarray(tri, dtype=np.int64)[None, :]
        Bn = np.empty((P, len(bins)), dtype=np.int64)
        Bn[self._rows, self.bin_perm] = np.asarray(bins, dtype=np.int64)[None, :] * self.bin_sign
        parts = [T, Bn]
        if wins is not None and len(wins):
            w = np.asarray(wins, dtype=np.int64)
            W = np.empty((P, len(w)), dtype=np.int64)
            q = np.arange(len(w))
            W[self._rows, self.block_perm] = self.mask_map[:, q, w]
            if (W < 0).any():
                raise NonInvariantFamily(
                    "the %s family is not closed under S_%d" % (self.family, self.n))
            parts.append(W)
        return np.concatenate(parts, axis=1)


def _lexmin_rows(M: np.ndarray):
    order = np.lexsort(M.T[::-1])
    best = M[order[0]]
    count = int((M == best).all(axis=1).sum())
    return best, count


def canonical_form(s: SignVector, family="rotations"):
    """Lexicographically least image of s under S_n, and the orbit size."""
    tab = SymmetryTables.get(s.n, family)
    M = tab.images(s.triangle, s.binomial, s.winners)
    best, stab = _lexmin_rows(M)
    T, B = len(s.triangle), len(s.binomial)
    best = [int(x) for x in best]
    c = SignVector(s.n, tuple(best[:T]), tuple(best[T:T + B]), tuple(best[T + B:]))
    return c, factorial(s.n) // stab


def orbit(s: SignVector, family="rotations") -> set:
    tab = SymmetryTables.get(s.n, family)
    M = tab.images(s.triangle, s.binomial, s.winners)
    T, B = len(s.triangle), len(s.binomial)
    return {SignVector(s.n, tuple(int(x) for x in r[:T]), tuple(int(x) for x in r[T:T + B]),
                       tuple(int(x) for x in r[T + B:])) for r in M}
