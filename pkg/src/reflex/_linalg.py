"""Exact linear algebra over the rationals and the integers.

Everything in this package runs on ``fractions.Fraction`` / ``int``;
no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Q = Fraction


def qmat(rows):
    """Deep-copy a matrix into Fraction entries."""
    return [[Q(x) for x in row] for row in rows]


def identity(n):
    return [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[Q(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                oi = out[i]
                for j in range(m):
                    oi[j] += x * bt[j]
    return out


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def vec_mat(v, a):
    m = len(a[0])
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(m)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def gram_dot(gram, u, v):
    """Bilinear form u^T * gram * v."""
    total = Q(0)
    for i, ui in enumerate(u):
        if ui:
            gi = gram[i]
            total += ui * sum(gi[j] * vj for j, vj in enumerate(v) if vj)
    return total


def mat_inverse(a):
    """Exact inverse by Gauss-Jordan; raises ValueError if singular."""
    n = len(a)
    m = [row[:] + ident_row for row, ident_row in zip(qmat(a), identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = Q(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def det(a):
    """Exact determinant by fraction-free-ish elimination."""
    n = len(a)
    m = qmat(a)
    sign = 1
    result = Q(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Q(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        result *= m[col][col]
        inv = Q(1) / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return sign * result


def rank(a):
    if not a:
        return 0
    m = qmat(a)
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Q(1) / m[r][col]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def solve(a, b):
    """Solve a*x = b exactly. Returns None if inconsistent.

    For underdetermined systems returns one particular solution with
    free variables set to zero.
    """
    rows, cols = len(a), len(a[0])
    m = [row[:] + [bv] for row, bv in zip(qmat(a), [Q(x) for x in b])]
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Q(1) / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Q(0)] * cols
    for i, col in enumerate(pivots):
        x[col] = m[i][cols]
    return x


def kernel_basis(a):
    """Rational basis of the right kernel of a."""
    rows, cols = len(a), len(a[0]) if a else 0
    m = qmat(a)
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Q(1) / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Q(0)] * cols
        v[fc] = Q(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector (and return it)."""
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, Q(x).denominator)
    ints = [int(Q(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def hnf(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the list of nonzero HNF rows (a basis of the row lattice).
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return []
    cols = len(m[0])
    r = 0
    for col in range(cols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        # eliminate below by gcd steps
        for i in range(r + 1, len(m)):
            while m[i][col]:
                q = m[r][col] // m[i][col]
                m[r] = [a - q * b for a, b in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][col] < 0:
            m[r] = [-x for x in m[r]]
        # reduce above
        for i in range(r):
            q = m[i][col] // m[r][col]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]]


def snf(a):
    """Smith normal form of an integer matrix.

    Returns (d, u, v) with u*a*v having the diagonal d (divisibility chain),
    u and v unimodular.
    """
    m = [list(map(int, row)) for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    u = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)]
    v = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        m[dst] = [a0 + c * b0 for a0, b0 in zip(m[dst], m[src])]
        u[dst] = [a0 + c * b0 for a0, b0 in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in m:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    while t < min(n_rows, n_cols):
        # find pivot
        piv = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                if m[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, n_rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n_cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
        # enforce divisibility of the remaining block
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        bad = None
        for i in range(t + 1, n_rows):
            for j in range(t + 1, n_cols):
                if m[i][j] % m[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1
    return [m[i][i] for i in range(min(n_rows, n_cols))], u, v


def symmetric_signature(gram):
    """Exact signature (p, q) of a symmetric rational matrix.

    Uses congruent diagonalization (no floating point).
    """
    n = len(gram)
    m = qmat(gram)
    p = q = 0
    used = [False] * n
    for _ in range(n):
        # pick a nonzero diagonal pivot, fixing one up if needed
        piv = next((i for i in range(n) if not used[i] and m[i][i] != 0), None)
        if piv is None:
            pair = None
            for i in range(n):
                if used[i]:
                    continue
                for j in range(n):
                    if not used[j] and i != j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # row/col operation: add row j to row i to create a diagonal entry
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        used[piv] = True
        d = m[piv][piv]
        if d > 0:
            p += 1
        else:
            q += 1
        for i in range(n):
            if i != piv and not used[i] and m[i][piv]:
                f = m[i][piv] / d
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][i] -= f * m[k][piv]
    return p, q
