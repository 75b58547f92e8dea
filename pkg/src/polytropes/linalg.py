"""Small exact linear algebra over the rationals.

Everything here works on lists of ints or Fractions and never touches floats.
"""
from fractions import Fraction
from math import gcd


def primitive(v):
    """Scale an integer vector so its entries have gcd 1."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def to_integer(v):
    """Clear denominators of a rational vector and make it primitive."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        if pv != 1:
            M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of {x : rows @ x = 0} as integer primitive vectors."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(to_integer(x))
    return basis


def inverse_columns(A):
    """Columns of adj-like integer matrix: column k solves A x = t_k e_k, t_k > 0."""
    d = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)]
         for i, row in enumerate(A)]
    for c in range(d):
        p = next(r for r in range(c, d) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(d):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [to_integer([M[i][d + k] for i in range(d)]) for k in range(d)]


def cone_rays(A):
    """Extreme rays of the pointed cone {x : A x >= 0} by double description.

    A is a list of integer rows of full column rank. Exact integer arithmetic;
    the adjacency test is combinatorial (zero-set containment)."""
    d = len(A[0])
    basis = []
    for i, row in enumerate(A):
        if rank([A[j] for j in basis] + [row]) > len(basis):
            basis.append(i)
        if len(basis) == d:
            break
    if len(basis) < d:
        raise ValueError("cone is not pointed")
    cols = inverse_columns([A[i] for i in basis])
    rays = []
    for k, col in enumerate(cols):
        zero = 0
        for t, i in enumerate(basis):
            if t != k:
                zero |= 1 << i
        rays.append((col, zero))
    for i in (i for i in range(len(A)) if i not in basis):
        a = A[i]
        vals = [dot(a, r) for r, _ in rays]
        new = [rays[k] for k, v in enumerate(vals) if v > 0]
        new += [(rays[k][0], rays[k][1] | 1 << i) for k, v in enumerate(vals) if v == 0]
        zs = [z for _, z in rays]
        for p, vp in enumerate(vals):
            if vp <= 0:
                continue
            for q, vq in enumerate(vals):
                if vq >= 0:
                    continue
                common = rays[p][1] & rays[q][1]
                if bin(common).count("1") < d - 2:
                    continue
                if any(k != p and k != q and zk & common == common for k, zk in enumerate(zs)):
                    continue
                r = primitive([-vq * x + vp * y for x, y in zip(rays[p][0], rays[q][0])])
                new.append((r, common | 1 << i))
        rays = new
    return [r for r, _ in rays]
