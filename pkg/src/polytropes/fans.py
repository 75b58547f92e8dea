"""Chambers and cones of the bipartite binomial fan on the polytrope region.

Two enumerations live here:

* ``enumerate_maximal(n)``: breadth-first search over open chambers, one
  canonical representative per S_n orbit. For n <= 5 the walls of a chamber
  are read off from the circuits of the binomial normals (exact, no LP); for
  n = 6 they come from warm-started LPs whose answers are certified exactly.
* ``enumerate_all_cones(4)``: every cone of the refinement of the triangle
  and binomial hyperplanes inside P_4, from the face lattices of the closed
  chambers (exact double description).

Chamber labels: ``z`` holds +-1 per m=2 binomial; ``w`` holds one member
index per m>=3 block (the strict minimizer, or maximizer with winner="max").
"""
from __future__ import annotations

import hashlib
import json
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm

import numpy as np

from . import linalg
from .binomials import (all_binomials, block_members, canonical_orientation,
                        member_incidence, relation_circuits, winner_blocks)
from .core import WeightMatrix, edges, min_mean_cycle, triangle_functionals
from .exactlp import ConeSystem, feasible
from .symmetry import SignVector, SymmetryTables, canonical_form, orbit

CHECKPOINT_EVERY = 10 ** 4


class SeedFailure(RuntimeError):
    pass


class CorruptCheckpoint(RuntimeError):
    pass


def _integral(c):
    """Positive multiple of the edge vector of c with integer entries."""
    if isinstance(c, WeightMatrix):
        v = c.edge_vector()
    else:
        v = [Fraction(x) for x in c]
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in v]


def _dot_rows(M, x):
    """Exact M @ x for an int64 matrix and a list of Python ints."""
    if not len(x):
        return [0] * len(M)
    if max(abs(v) for v in x) < 2 ** 40:
        return (M @ np.asarray(x, dtype=np.int64)).tolist()
    return [sum(int(a) * b for a, b in zip(row, x) if a) for row in M]


class Catalog:
    """Triangle forms, binomial normals and block hyperplanes for one n."""

    def __init__(self, n, winner="min", family="matchings"):
        if winner not in ("min", "max"):
            raise ValueError("winner must be 'min' or 'max'")
        self.n = n
        self.N = n * n - n
        self.winner = winner
        self.family = family
        self.T = np.array([t.normal(n) for t in triangle_functionals(n)],
                          dtype=np.int64).reshape(-1, self.N)
        self.B = np.array([b.normal for b in all_binomials(n) if b.m == 2],
                          dtype=np.int64).reshape(-1, self.N)
        self.nb = len(self.B)
        H = [tuple(r) for r in self.B.tolist()]
        hid = {h: k for k, h in enumerate(H)}
        if len(hid) != len(H):
            raise AssertionError("binomial normals must be pairwise distinct")
        self.blocks = list(winner_blocks(n))
        self.members = []
        self.pairs = []          # per block: (a, b, hyperplane id, s) with mem_a - mem_b = s * H
        self.by_h = {}           # hyperplane id -> [(block, a, b)]
        for q, (K, L) in enumerate(self.blocks):
            mem = np.array([member_incidence(n, K, s) for s in block_members(K, L, family)],
                           dtype=np.int64)
            self.members.append(mem)
            prs = []
            for a in range(len(mem)):
                for b in range(a + 1, len(mem)):
                    v, flip = canonical_orientation((mem[a] - mem[b]).tolist())
                    if v not in hid:
                        hid[v] = len(H)
                        H.append(v)
                    h = hid[v]
                    prs.append((a, b, h, -1 if flip else 1))
                    self.by_h.setdefault(h, []).append((q, a, b))
            self.pairs.append(prs)
        self.H = np.array(H, dtype=np.int64).reshape(-1, self.N)
        self.nh = len(H)
        self.width = max((len(m) for m in self.members), default=0)

    # labels -----------------------------------------------------------
    def signature(self, z, w) -> np.ndarray:
        """Required sign per hyperplane (0 = unconstrained) for a chamber."""
        sig = np.zeros(self.nh, dtype=np.int64)
        sig[:self.nb] = z
        pref = 1 if self.winner == "max" else -1
        for q, prs in enumerate(self.pairs):
            wq = int(w[q])
            for a, b, h, s in prs:
                # mem_a - mem_b = s * H[h]; winner side decides the sign
                if a == wq:
                    need = pref * s
                elif b == wq:
                    need = -pref * s
                else:
                    continue
                if sig[h] and sig[h] != need:
                    raise ValueError("inconsistent chamber label at hyperplane %d" % h)
                sig[h] = need
        return sig

    def cross(self, z, w, h):
        """Label of the chamber across hyperplane h."""
        z2 = np.array(z, dtype=np.int8, copy=True)
        w2 = np.array(w, dtype=np.int64, copy=True)
        if h < self.nb:
            z2[h] = -z2[h]
        for q, a, b in self.by_h.get(h, ()):
            if w2[q] == a:
                w2[q] = b
            elif w2[q] == b:
                w2[q] = a
        return z2, w2

    def values(self, x):
        """Exact functional values at an integer edge vector."""
        tri = _dot_rows(self.T, x)
        bins = _dot_rows(self.B, x)
        blk = [_dot_rows(m, x) for m in self.members]
        return tri, bins, blk

    def label_of(self, x):
        """(z, w) of an integer point, or None if it lies on a wall."""
        _, bins, blk = self.values(x)
        if any(v == 0 for v in bins):
            return None
        w = []
        for vals in blk:
            best = max(vals) if self.winner == "max" else min(vals)
            if vals.count(best) != 1:
                return None
            w.append(vals.index(best))
        return (np.array([1 if v > 0 else -1 for v in bins], dtype=np.int8),
                np.array(w, dtype=np.int64))

    def sign_vector(self, c) -> SignVector:
        x = _integral(c)
        tri, bins, blk = self.values(x)
        sg = lambda v: (v > 0) - (v < 0)
        masks = []
        for vals in blk:
            best = max(vals) if self.winner == "max" else min(vals)
            masks.append(sum(1 << r for r, v in enumerate(vals) if v == best))
        return SignVector(self.n, tuple(sg(v) for v in tri), tuple(sg(v) for v in bins),
                          tuple(masks))

    def chamber_sign(self, z, w) -> SignVector:
        return SignVector(self.n, (1,) * len(self.T), tuple(int(v) for v in z),
                          tuple(1 << int(r) for r in w))

    def system(self, s: SignVector) -> ConeSystem:
        """Cone of points whose sign data equals s."""
        sysm = ConeSystem(self.N)
        rel = {1: ">", 0: "=", -1: "<"}
        for row, v in zip(self.T, s.triangle):
            sysm.add(row.tolist(), rel[v])
        for row, v in zip(self.B, s.binomial):
            sysm.add(row.tolist(), rel[v])
        for mem, mask in zip(self.members, s.winners):
            win = [r for r in range(len(mem)) if mask >> r & 1]
            r0 = win[0]
            for r in range(len(mem)):
                if r == r0:
                    continue
                d = (mem[r] - mem[r0]).tolist()
                if r in win:
                    sysm.add(d, "=")
                else:
                    sysm.add(d, ">" if self.winner == "min" else "<")
        return sysm


# -- canonical forms of chambers --------------------------------------

class ChamberKeys:
    """Byte keys of chamber labels; the least image under S_n is canonical.

    The key order agrees with ``symmetry.canonical_form`` on chamber sign
    vectors (packed bits keep the lexicographic order of +-1 entries).
    """

    def __init__(self, cat: Catalog):
        self.cat = cat
        self.tab = SymmetryTables.get(cat.n, cat.family)
        self.P = len(self.tab.perms)
        self.rows = np.arange(self.P)[:, None]
        self.nbytes = (cat.nb + 7) // 8
        self.nfact = factorial(cat.n)

    def images(self, z, w):
        tab = self.tab
        Z = np.empty((self.P, self.cat.nb), dtype=np.int8)
        if self.cat.nb:
            Z[self.rows, tab.bin_perm] = np.asarray(z, dtype=np.int8)[None, :] * tab.bin_sign
        parts = [np.packbits(Z > 0, axis=1)]
        if len(self.cat.blocks):
            q = np.arange(len(w))
            masks = tab.mask_map[:, q, 1 << np.asarray(w, dtype=np.int64)]
            if (masks < 0).any():
                from .symmetry import NonInvariantFamily
                raise NonInvariantFamily(
                    "the %r family of m>=3 matchings is not closed under S_%d; "
                    "use family='matchings'" % (self.cat.family, self.cat.n))
            W = np.empty((self.P, len(w)), dtype=np.uint8)
            W[self.rows, tab.block_perm] = masks
            parts.append(W)
        return np.concatenate(parts, axis=1)

    def canonical(self, z, w):
        M = self.images(z, w)
        order = np.lexsort(M.T[::-1])
        best = M[order[0]]
        stab = int((M == best).all(axis=1).sum())
        return best.tobytes(), self.nfact // stab

    def decode(self, key: bytes):
        a = np.frombuffer(key, dtype=np.uint8)
        bits = np.unpackbits(a[:self.nbytes])[:self.cat.nb]
        z = np.where(bits > 0, 1, -1).astype(np.int8)
        w = np.array([int(m).bit_length() - 1 for m in a[self.nbytes:]], dtype=np.int64)
        return z, w


# -- wall oracles ------------------------------------------------------

class CircuitOracle:
    """Walls of a chamber from the circuits of the binomial normals.

    A sign vector is a chamber iff no circuit agrees with it (up to global
    sign) on its whole support, and a constraint is redundant iff some
    circuit agrees with it everywhere except at that constraint. Exact, no
    LP; only for arrangements without m>=3 blocks (n <= 5).
    """

    def __init__(self, cat: Catalog):
        if cat.blocks:
            raise ValueError("the circuit oracle handles only m = 2 binomials")
        self.cat = cat
        rows = [c.vector(cat.nb) for cls in (relation_circuits(cat.n) if cat.nb else [])
                for c in cls]
        self.S = np.sign(np.array(rows, dtype=np.int64)).reshape(-1, cat.nb)
        self.size = np.abs(self.S).sum(axis=1)

    def is_chamber(self, z, w=None) -> bool:
        t = self.S @ np.asarray(z, dtype=np.int64)
        return not np.any(np.abs(t) == self.size)

    def walls(self, z, w=None):
        z = np.asarray(z, dtype=np.int64)
        t = self.S @ z
        if np.any(np.abs(t) == self.size):
            raise ValueError("not a chamber")
        red = np.zeros(self.cat.nb, dtype=bool)
        for sgn in (1, -1):
            for r in np.nonzero(t == sgn * (self.size - 2))[0]:
                prod = self.S[r] * z
                red[np.nonzero(prod == -sgn)[0][0]] = True
        return [int(h) for h in np.nonzero(~red)[0]]


class LPOracle:
    """Walls of a chamber from warm-started floating-point LPs.

    Every answer is certified with integer arithmetic: a wall by an exact
    point across it, a redundant constraint by an exact Farkas combination.
    Anything that fails certification is re-decided by ``exactlp.feasible``.
    """

    def __init__(self, cat: Catalog):
        import highspy
        self.hs = highspy
        self.cat = cat
        self.inf = highspy.kHighsInf
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.setOptionValue("presolve", "off")
        N = cat.N
        h.addVars(N, np.full(N, -self.inf), np.full(N, self.inf))
        Hf = cat.H.astype(float)
        for r in range(cat.nh):
            nz = np.nonzero(Hf[r])[0]
            h.addRow(-self.inf, self.inf, len(nz), nz.astype(np.int32), Hf[r][nz])
        self.h = h
        self.stats = Counter()

    def _bounds(self, k, s):
        if s > 0:
            self.h.changeRowBounds(k, 1.0, self.inf)
        elif s < 0:
            self.h.changeRowBounds(k, -self.inf, -1.0)
        else:
            self.h.changeRowBounds(k, -self.inf, self.inf)

    def _solve(self):
        self.h.run()
        return self.h.getModelStatus() == self.hs.HighsModelStatus.kOptimal

    def _point(self, sig):
        x = np.asarray(self.h.getSolution().col_value, dtype=float)
        for scale in (8.0, 64.0, 1024.0):
            xi = np.rint(x * scale).astype(np.int64)
            v = self.cat.H @ xi
            if np.all(v[sig > 0] >= 1) and np.all(v[sig < 0] <= -1):
                return xi
        return None

    def _farkas(self, sig):
        """Integer y >= 0 with sum y_k sig_k H_k = 0 on the LP's dual ray."""
        ray = np.asarray(self.h.getDualRay()[-1], dtype=float)
        S = np.nonzero((np.abs(ray) > 1e-9) & (sig != 0))[0]
        if len(S) == 0:
            return None
        G = self.cat.H[S] * sig[S][:, None]
        y = np.abs(ray[S])
        y = y / y.min()
        fr = [Fraction(v).limit_denominator(240) for v in y]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        yi = np.array([int(f * den) for f in fr], dtype=np.int64)
        if np.all(yi > 0) and not np.any(yi @ G):
            return S, yi
        # exact kernel on the support
        ker = linalg.nullspace(G.T.tolist(), len(S))
        for v in ker:
            v = np.array(v, dtype=np.int64)
            if np.all(v >= 0) and v.any() and not np.any(v @ G):
                return S, v
            if np.all(v <= 0) and v.any() and not np.any(v @ G):
                return S, -v
        return None

    def _exact_check(self, sig):
        sysm = ConeSystem(self.cat.N)
        for k in np.nonzero(sig)[0]:
            sysm.add(self.cat.H[k].tolist(), ">" if sig[k] > 0 else "<")
        got = feasible(sysm)
        if got:
            den = 1
            for v in got.point:
                den = lcm(den, v.denominator)
            return np.array([int(v * den) for v in got.point], dtype=np.int64)
        return None

    def load(self, sig):
        for k in range(self.cat.nh):
            self._bounds(k, sig[k])

    def point(self, z, w):
        sig = self.cat.signature(z, w)
        self.load(sig)
        if self._solve():
            x = self._point(sig)
            if x is not None:
                return x
        self.stats["exact_fallback"] += 1
        return self._exact_check(sig)

    def is_chamber(self, z, w) -> bool:
        return self.point(z, w) is not None

    def walls(self, z, w):
        sig = self.cat.signature(z, w)
        self.load(sig)
        out = []
        for k in np.nonzero(sig)[0]:
            k = int(k)
            s = sig[k]
            flipped = sig.copy()
            flipped[k] = -s
            self._bounds(k, -s)
            ok = self._solve()
            decided = None
            if ok:
                if self._point(flipped) is not None:
                    decided = True
            else:
                cert = self._farkas(flipped)
                if cert is not None and k in cert[0]:
                    decided = False
            if decided is None:
                self.stats["exact_fallback"] += 1
                decided = self._exact_check(flipped) is not None
            self.stats["lp"] += 1
            if decided:
                out.append(k)
            self._bounds(k, s)
        return out


class ExactOracle:
    """Walls by testing every flipped system with ``exactlp.feasible``."""

    def __init__(self, cat: Catalog):
        self.cat = cat

    def _sys(self, sig):
        sysm = ConeSystem(self.cat.N)
        for row in self.cat.T:
            sysm.add(row.tolist(), ">")
        for k in np.nonzero(sig)[0]:
            sysm.add(self.cat.H[k].tolist(), ">" if sig[k] > 0 else "<")
        return sysm

    def is_chamber(self, z, w) -> bool:
        return bool(feasible(self._sys(self.cat.signature(z, w))))

    def walls(self, z, w):
        sig = self.cat.signature(z, w)
        out = []
        for k in np.nonzero(sig)[0]:
            f = sig.copy()
            f[k] = -f[k]
            if feasible(self._sys(f)):
                out.append(int(k))
        return out


def make_oracle(cat: Catalog, oracle="auto"):
    if oracle == "auto":
        oracle = "circuits" if not cat.blocks and cat.n <= 5 else "lp"
    if oracle == "circuits":
        return CircuitOracle(cat)
    if oracle == "lp":
        return LPOracle(cat)
    if oracle == "exact":
        return ExactOracle(cat)
    raise ValueError("unknown oracle %r" % (oracle,))


# -- records -----------------------------------------------------------

@dataclass(frozen=True)
class ConeRecord:
    sign: SignVector
    witness: WeightMatrix
    dim: int
    orbit_size: int
    boundary_Rn: bool

    @property
    def id(self) -> str:
        blob = json.dumps(self.sign.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_json(self) -> dict:
        return {"id": self.id, "n": self.sign.n, "sign": self.sign.to_json(),
                "witness": self.witness.to_json()["entries"], "dim": self.dim,
                "orbit_size": self.orbit_size, "boundary_Rn": self.boundary_Rn}

    @classmethod
    def from_json(cls, obj) -> "ConeRecord":
        n = obj["n"]
        return cls(SignVector.from_json(n, obj["sign"]),
                   WeightMatrix.from_json({"n": n, "entries": obj["witness"]}),
                   obj["dim"], obj["orbit_size"], obj["boundary_Rn"])


def _record(cat: Catalog, s: SignVector, x, orbit_size, dim=None) -> ConeRecord:
    c = WeightMatrix.from_edge_vector(cat.n, x)
    got = cat.sign_vector(c)
    if got != s:
        raise AssertionError("witness does not reproduce its sign vector")
    if dim is None:
        dim = cat.N
    return ConeRecord(s, c, dim, orbit_size, min_mean_cycle(c) == 0)


def _lift_to_interior(cat: Catalog, x):
    """Add a multiple of the all-ones matrix so every triangle slack is >= 1.

    Bipartite binomials are unchanged because both monomials have the same
    number of edges."""
    x = [int(v) for v in x]
    tri = _dot_rows(cat.T, x)
    t = max(0, 1 - min(tri)) if tri else 0
    return [v + t for v in x]


# -- breadth-first search ----------------------------------------------

def random_generic_point(cat: Catalog, rng, attempts=100):
    """Integer point 10^4 * (1 + eps) with generic binomial signs."""
    for _ in range(attempts):
        eps = rng.integers(-999, 1000, size=cat.N)
        x = [10 ** 4 + int(e) for e in eps]
        lab = cat.label_of(x)
        if lab is not None:
            return x, lab
    raise SeedFailure("no generic seed after %d attempts" % attempts)


@dataclass
class EnumerationRun:
    """State of a chamber search: canonical visited keys and the frontier."""
    n: int
    winner: str = "min"
    family: str = "matchings"
    seed: int = 0
    oracle: str = "auto"
    visited: dict = field(default_factory=dict)
    frontier: deque = field(default_factory=deque)
    expanded: int = 0
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 3 <= self.n <= 6:
            raise ValueError("maximal enumeration supports 3 <= n <= 6")
        self.cat = Catalog(self.n, self.winner, self.family)
        self.keys = ChamberKeys(self.cat)
        self._oracle = None

    @property
    def wall_oracle(self):
        if self._oracle is None:
            self._oracle = make_oracle(self.cat, self.oracle)
        return self._oracle

    @property
    def done(self):
        return bool(self.visited) and not self.frontier

    def start(self, start_label=None):
        if self.visited:
            return
        if start_label is None:
            rng = np.random.default_rng(self.seed)
            _, start_label = random_generic_point(self.cat, rng)
        z, w = start_label
        k, o = self.keys.canonical(z, w)
        self.visited[k] = o
        self.frontier.append(k)

    def step(self):
        k = self.frontier.popleft()
        z, w = self.keys.decode(k)
        for h in self.wall_oracle.walls(z, w):
            z2, w2 = self.cat.cross(z, w, h)
            k2, o2 = self.keys.canonical(z2, w2)
            if k2 not in self.visited:
                self.visited[k2] = o2
                self.frontier.append(k2)
        self.expanded += 1

    def run(self, max_nodes=None, checkpoint=None, every=CHECKPOINT_EVERY, progress=None):
        """Expand nodes until done or max_nodes expansions in this call."""
        self.start()
        count = 0
        while self.frontier and (max_nodes is None or count < max_nodes):
            self.step()
            count += 1
            if checkpoint and self.expanded % every == 0:
                self.save(checkpoint)
            if progress and self.expanded % 1000 == 0:
                progress(self)
        if checkpoint:
            self.save(checkpoint)
        return self

    # persistence
    def state(self) -> dict:
        return {"n": self.n, "winner": self.winner, "family": self.family,
                "seed": self.seed, "oracle": self.oracle, "expanded": self.expanded,
                "visited": [[k.hex(), o] for k, o in self.visited.items()],
                "frontier": [k.hex() for k in self.frontier]}

    def save(self, path):
        blob = json.dumps(self.state(), separators=(",", ":")).encode()
        digest = hashlib.sha256(blob).hexdigest()
        tmp = path + ".tmp"
        with open(tmp, "wb") as f:
            f.write(blob)
        os.replace(tmp, path)
        with open(path + ".sha256", "w") as f:
            f.write(digest + "\n")
        return digest

    @classmethod
    def load(cls, path) -> "EnumerationRun":
        with open(path, "rb") as f:
            blob = f.read()
        try:
            with open(path + ".sha256") as f:
                want = f.read().strip()
        except OSError:
            raise CorruptCheckpoint("missing hash file for %s" % path)
        if hashlib.sha256(blob).hexdigest() != want:
            raise CorruptCheckpoint("checkpoint %s does not match its hash" % path)
        try:
            st = json.loads(blob)
            run = cls(st["n"], st["winner"], st["family"], st["seed"], st["oracle"])
            run.visited = {bytes.fromhex(k): o for k, o in st["visited"]}
            run.frontier = deque(bytes.fromhex(k) for k in st["frontier"])
            run.expanded = st["expanded"]
        except (KeyError, ValueError, TypeError) as e:
            raise CorruptCheckpoint("unreadable checkpoint %s: %s" % (path, e))
        return run

    def records(self) -> list:
        """One ConeRecord per visited class, sorted canonically."""
        lp = None
        out = []
        for k in sorted(self.visited):
            z, w = self.keys.decode(k)
            if lp is None:
                lp = LPOracle(self.cat)
            x = lp.point(z, w)
            x = _lift_to_interior(self.cat, x.tolist())
            out.append(_record(self.cat, self.cat.chamber_sign(z, w), x, self.visited[k]))
        return out


def enumerate_maximal(n, winner="min", family="matchings", seed=0, oracle="auto",
                      max_nodes=None, checkpoint=None, start_label=None, records=True):
    """Canonical classes of open chambers of the bipartite binomial fan.

    Returns the list of ConeRecords (or the EnumerationRun itself when
    ``records`` is False). ``max_nodes`` bounds the number of expansions,
    leaving a resumable partial run.
    """
    run = EnumerationRun(n, winner, family, seed, oracle)
    run.start(start_label)
    run.run(max_nodes=max_nodes, checkpoint=checkpoint)
    return run.records() if records else run


def brute_force_chambers(n=4) -> set:
    """All realizable sign vectors of the m=2 binomials with strict triangles."""
    import itertools

    cat = Catalog(n)
    if cat.blocks:
        raise ValueError("brute force is only for arrangements without m>=3 blocks")
    out = set()
    for z in itertools.product((1, -1), repeat=cat.nb):
        s = SignVector(n, (1,) * len(cat.T), tuple(z))
        if feasible(cat.system(s)):
            out.add(s)
    return out


# -- all cones for n = 4 -----------------------------------------------

def _faces(A, rays):
    """Faces of the cone as ray bitmasks, closed under constraint incidence."""
    inc = [sum(1 << r for r, ray in enumerate(rays) if linalg.dot(a, ray) == 0) for a in A]
    full = (1 << len(rays)) - 1
    seen = {full}
    stack = [full]
    while stack:
        F = stack.pop()
        for m in inc:
            G = F & m
            if G != F and G not in seen:
                seen.add(G)
                stack.append(G)
    return seen


def enumerate_all_cones(n=4, maximal=None) -> list:
    """Every cone of the refined fan on P_n, one record per S_n class.

    Works in the gauge c[i][n-1] = 0, which removes the common lineality of
    all functionals; the relative interior point of a face is the sum of its
    extreme rays."""
    cat = Catalog(n)
    if cat.blocks:
        raise ValueError("all-cone enumeration is only supported for n <= 5")
    if maximal is None:
        maximal = enumerate_maximal(n)
    E = edges(n)
    gauge = [k for k, (i, j) in enumerate(E) if j != n - 1]
    G = np.vstack([cat.T, cat.B])
    found = {}
    for rec in maximal:
        z = np.array(rec.sign.binomial, dtype=np.int64)
        A = np.vstack([cat.T, cat.B * z[:, None]])[:, gauge].tolist()
        rays = linalg.cone_rays(A)
        for F in _faces(A, rays):
            pt = [0] * len(gauge)
            for r, ray in enumerate(rays):
                if F >> r & 1:
                    pt = [u + v for u, v in zip(pt, ray)]
            x = [0] * cat.N
            for kk, g in enumerate(gauge):
                x[g] = pt[kk]
            s = cat.sign_vector(x)
            cs, o = canonical_form(s)
            if cs not in found:
                found[cs] = (s, o, x)
    out = []
    for cs in sorted(found):
        s, o, x = found[cs]
        zero = [G[k].tolist() for k, v in enumerate(s.triangle + s.binomial) if v == 0]
        dim = cat.N - linalg.rank(zero) if zero else cat.N
        # move the witness to the canonical representative
        x2 = _permute_to(cat, s, cs, x)
        out.append(_record(cat, cs, x2, o, dim))
    return out


def _permute_to(cat, s, target, x):
    tab = SymmetryTables.get(cat.n, cat.family)
    M = tab.images(s.triangle, s.binomial, s.winners)
    want = np.array(target.key(), dtype=np.int64)
    p = int(np.nonzero((M == want).all(axis=1))[0][0])
    y = [0] * cat.N
    for k, v in enumerate(x):
        y[tab.edge_perm[p][k]] = v
    return y


def filter_boundary(records, undirected=False):
    """Split records into (kept, removed) by a zero-weight cycle at the witness.

    The default tests directed cycles (lambda = 0). ``undirected=True``
    instead looks for a simple cycle of length >= 3 in the underlying
    undirected graph which has weight zero in one of its two orientations.
    """
    kept, removed = [], []
    for r in records:
        zero = _undirected_zero_cycle(r.witness) if undirected else min_mean_cycle(r.witness) == 0
        (removed if zero else kept).append(r)
    return kept, removed


def _undirected_zero_cycle(c: WeightMatrix) -> bool:
    import itertools

    n = c.n
    for k in range(3, n + 1):
        for cyc in itertools.permutations(range(n), k):
            if cyc[0] != min(cyc) or cyc[1] > cyc[-1]:
                continue
            fw = sum(c[cyc[t], cyc[(t + 1) % k]] for t in range(k))
            bw = sum(c[cyc[(t + 1) % k], cyc[t]] for t in range(k))
            if fw == 0 or bw == 0:
                return True
    return False


def group_by_linearity(records):
    """Group records by the S_n class of their triangle zero pattern.

    Returns (groups, histogram): groups maps the canonical pattern to its
    records; histogram maps group size to the number of groups."""
    groups = {}
    for r in records:
        s = r.sign
        pat = SignVector(s.n, tuple(int(v == 0) for v in s.triangle), (0,) * len(s.binomial))
        key, _ = canonical_form(pat)
        groups.setdefault(key.triangle, []).append(r)
    hist = Counter(len(v) for v in groups.values())
    return groups, dict(sorted(hist.items()))


def expand_orbits(records) -> set:
    """All sign vectors in the orbits of the given records."""
    out = set()
    for r in records:
        out |= orbit(r.sign)
    return out
