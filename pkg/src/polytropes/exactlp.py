"""Exact feasibility, relative-interior points and dimensions of cones.

A cone is given by homogeneous constraints a.x (=, >=, >, <=, <) 0. Strict
constraints are handled as a.x >= 1, which is exact for cones. The trusted
path is a dense rational simplex with Bland's rule; a floating-point LP may be
used first, but whatever it suggests is checked with exact arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg

RELATIONS = ("=", ">=", ">", "<=", "<")


class InfeasibleSystem(ValueError):
    pass


@dataclass
class ConeSystem:
    dim: int
    constraints: list = field(default_factory=list)

    def add(self, normal, rel=">"):
        if rel not in RELATIONS:
            raise ValueError("unknown relation %r" % (rel,))
        normal = tuple(Fraction(x) for x in normal)
        if len(normal) != self.dim:
            raise ValueError("normal has length %d, expected %d" % (len(normal), self.dim))
        self.constraints.append((normal, rel))
        return self

    def split(self):
        """Equalities, then inequalities as (index, normal, strict) with >= form."""
        eqs, ineqs = [], []
        for k, (a, rel) in enumerate(self.constraints):
            if rel == "=":
                eqs.append(a)
            elif rel in (">=", ">"):
                ineqs.append((k, a, rel == ">"))
            else:
                ineqs.append((k, tuple(-x for x in a), rel == "<"))
        return eqs, ineqs

    def check(self, x) -> bool:
        for a, rel in self.constraints:
            v = linalg.dot(a, x)
            ok = {"=": v == 0, ">=": v >= 0, ">": v > 0, "<=": v <= 0, "<": v < 0}[rel]
            if not ok:
                return False
        return True


@dataclass(frozen=True)
class Witness:
    point: tuple
    slacks: tuple

    @classmethod
    def of(cls, sys: ConeSystem, x) -> "Witness":
        x = tuple(Fraction(v) for v in x)
        return cls(x, tuple(linalg.dot(a, x) for a, _ in sys.constraints))


@dataclass(frozen=True)
class Infeasible:
    """Nonnegative multipliers y (one per constraint, in >= form) such that
    sum y_k a_k lies in the span of the equalities while y is positive on
    some strict constraint."""
    certificate: tuple

    def __bool__(self):
        return False


def simplex_max(A, b, c):
    """Maximize c.v subject to A v <= b, v >= 0, for b >= 0.

    Dense rational tableau with Bland's rule. Returns (value, v, y) with y
    the optimal dual multipliers of the rows, or None if unbounded.
    """
    m = len(A)
    nv = len(c)
    width = nv + m
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]] + [Fraction(0)] * m + [Fraction(b[i])]
        row[nv + i] = Fraction(1)
        T.append(row)
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = [nv + i for i in range(m)]
    while True:
        j = next((k for k in range(width) if obj[k] < 0), None)
        if j is None:
            break
        best = None
        for i in range(m):
            if T[i][j] > 0:
                ratio = T[i][-1] / T[i][j]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return None
        p = best[1]
        piv = T[p][j]
        if piv != 1:
            T[p] = [x / piv for x in T[p]]
        nz = [k for k, x in enumerate(T[p]) if x]
        prow = T[p]
        for i in range(m):
            f = T[i][j]
            if i != p and f:
                row = T[i]
                for k in nz:
                    row[k] -= f * prow[k]
        f = obj[j]
        for k in nz:
            obj[k] -= f * prow[k]
        basis[p] = j
    v = [Fraction(0)] * nv
    for i, bv in enumerate(basis):
        if bv < nv:
            v[bv] = T[i][-1]
    y = obj[nv:nv + m]
    return obj[-1], v, y


class _Reduced:
    """The system rewritten in coordinates x = K z of the equality subspace."""

    def __init__(self, dim, eqs):
        self.dim = dim
        self.K = linalg.nullspace([list(e) for e in eqs], dim) if eqs else \
            [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        self.d = len(self.K)

    def row(self, a):
        return [linalg.dot(a, k) for k in self.K]

    def lift(self, z):
        x = [Fraction(0)] * self.dim
        for zk, k in zip(z, self.K):
            if zk:
                for t, v in enumerate(k):
                    if v:
                        x[t] += zk * v
        return x


def _max_margin(red: _Reduced, rows, tracked):
    """max e s.t. row_k.z >= e (k tracked), row_k.z >= 0 (others), e <= 1.

    Returns (e, z, y) where y are the row multipliers at the optimum.
    """
    d = red.d
    A, b = [], []
    for k, r in enumerate(rows):
        t = 1 if k in tracked else 0
        A.append([-x for x in r] + [x for x in r] + [t])
        b.append(0)
    A.append([0] * (2 * d) + [1])
    b.append(1)
    c = [0] * (2 * d) + [1]
    val, v, y = simplex_max(A, b, c)
    z = [v[i] - v[d + i] for i in range(d)]
    return val, z, y[:len(rows)]


def _float_margin(red: _Reduced, rows, tracked):
    """Floating-point version of _max_margin; returns (e, z, y) or None."""
    from scipy.optimize import linprog

    d = red.d
    if not rows:
        return None
    R = np.array([[float(x) for x in r] for r in rows]).reshape(len(rows), d)
    t = np.array([1.0 if k in tracked else 0.0 for k in range(len(rows))])
    A = np.hstack([-R, t[:, None]])
    cost = np.zeros(d + 1)
    cost[-1] = -1.0
    bounds = [(None, None)] * d + [(0, 1)]
    res = linprog(cost, A_ub=A, b_ub=np.zeros(len(rows)), bounds=bounds, method="highs")
    if res.status != 0:
        return None
    return -res.fun, res.x[:d], -res.ineqlin.marginals


def _round_point(z, scale):
    return [Fraction(round(v * scale)) for v in z]


def _exact_certificate(red, rows, tracked, support):
    """Solve for y >= 0 on the support with sum y_k row_k = 0, sum_tracked y = 1."""
    support = sorted(support)
    if not support or not any(k in tracked for k in support):
        return None
    d = red.d
    eqs = [[rows[k][i] for k in support] + [0] for i in range(d)]
    eqs.append([1 if k in tracked else 0 for k in support] + [1])
    R, piv = linalg.rref(eqs, len(support) + 1)
    if len(support) in piv:
        return None
    # free variables are set to zero
    y = [Fraction(0)] * len(support)
    for row, p in zip(R, piv):
        y[p] = row[-1]
    if any(v < 0 for v in y):
        return None
    return dict(zip(support, y))


def _verify_certificate(red, rows, tracked, cert):
    if not cert or not any(cert.get(k, 0) > 0 for k in tracked):
        return False
    if any(v < 0 for v in cert.values()):
        return False
    tot = [Fraction(0)] * red.d
    for k, y in cert.items():
        for i, x in enumerate(rows[k]):
            tot[i] += y * x
    return all(v == 0 for v in tot)


def _solve(sys: ConeSystem, strict_only: bool):
    eqs, ineqs = sys.split()
    red = _Reduced(sys.dim, eqs)
    rows = [red.row(a) for _, a, _ in ineqs]
    if strict_only:
        tracked = {k for k, (_, _, s) in enumerate(ineqs) if s}
    else:
        tracked = set(range(len(ineqs)))
    return red, ineqs, rows, tracked


def _certificate_vector(sys, ineqs, cert):
    y = [Fraction(0)] * len(sys.constraints)
    for k, v in cert.items():
        y[ineqs[k][0]] = v
    return tuple(y)


def feasible(sys: ConeSystem, prefilter: bool = True):
    """An exact witness with every strict slack >= 1, or Infeasible."""
    red, ineqs, rows, tracked = _solve(sys, True)
    if tracked and red.d == 0:
        # every row vanishes on the equality subspace
        return Infeasible(_certificate_vector(sys, ineqs, {min(tracked): Fraction(1)}))
    if not tracked:
        return Witness.of(sys, [Fraction(0)] * sys.dim)
    if prefilter:
        got = _float_margin(red, rows, tracked)
        if got is not None:
            e, zf, yf = got
            if e > 1e-9:
                for scale in (4.0 / e, 64.0 / e, 1024.0 / e):
                    z = _round_point(zf, scale)
                    if all(linalg.dot(r, z) >= (1 if k in tracked else 0) for k, r in enumerate(rows)):
                        return Witness.of(sys, red.lift(z))
            else:
                support = [k for k in range(len(rows)) if yf[k] > 1e-9]
                cert = _exact_certificate(red, rows, tracked, support)
                if cert is not None and _verify_certificate(red, rows, tracked, cert):
                    return Infeasible(_certificate_vector(sys, ineqs, cert))
    e, z, y = _max_margin(red, rows, tracked)
    if e > 0:
        z = [v / e for v in z]
        return Witness.of(sys, red.lift(z))
    cert = {k: v for k, v in enumerate(y) if v}
    assert _verify_certificate(red, rows, tracked, cert)
    return Infeasible(_certificate_vector(sys, ineqs, cert))


def _relint(sys: ConeSystem):
    """Implicit equalities and a relative-interior point (exact)."""
    eqs, ineqs = sys.split()
    implicit = set()
    while True:
        red = _Reduced(sys.dim, eqs + [ineqs[k][1] for k in sorted(implicit)])
        live = [k for k in range(len(ineqs)) if k not in implicit]
        if red.d == 0 or not live:
            if any(ineqs[k][2] for k in implicit):
                raise InfeasibleSystem("a strict constraint is forced to equality")
            return implicit, red, [Fraction(0)] * sys.dim
        rows = [red.row(ineqs[k][1]) for k in live]
        e, z, y = _max_margin(red, rows, set(range(len(live))))
        if e > 0:
            return implicit, red, red.lift([v / e for v in z])
        new = {live[t] for t, v in enumerate(y) if v > 0}
        if any(ineqs[k][2] for k in new):
            raise InfeasibleSystem("a strict constraint is forced to equality")
        implicit |= new


def interior_witness(sys: ConeSystem) -> Witness:
    """A point in the relative interior; non-implied slacks are >= 1."""
    _, _, x = _relint(sys)
    return Witness.of(sys, x)


def cone_dimension(sys: ConeSystem) -> int:
    implicit, red, _ = _relint(sys)
    return red.d
