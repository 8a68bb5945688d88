"""Exact integral/rational lattice arithmetic.

A `Lattice` is a nondegenerate symmetric bilinear form given by an exact
rational Gram matrix in a fixed basis.  Vectors are tuples of Fractions in
that basis.  Construction goes through a small descriptor language, e.g.

    U + 2*A1
    U(4) + D4
    <-24> + A2 | glue 1/3,-1/3,1/3
    gram[[0,-3],[-3,2]] + A2

All arithmetic is exact; nothing here touches floating point.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd, lcm, isqrt

from . import _linalg as la

Q = Fraction


class LatticeError(ValueError):
    pass


class Lattice:
    """Immutable lattice: rational Gram matrix + basis labels."""

    __slots__ = ("gram", "rank", "basis_labels", "integral", "name",
                 "ambient_basis", "_gram_int", "_gram_scale", "_dual_gram")

    def __init__(self, gram, basis_labels=None, name="", ambient_basis=None):
        gram = la.qmat(gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("gram matrix must be symmetric")
        if la.det(gram) == 0:
            raise LatticeError("degenerate gram matrix")
        self.gram = tuple(tuple(row) for row in gram)
        self.rank = n
        self.basis_labels = tuple(basis_labels or [f"b{i+1}" for i in range(n)])
        integral = all(x.denominator == 1 for row in gram for x in row)
        self.integral = integral and all(gram[i][i] % 2 == 0 for i in range(n))
        self.name = name
        # rows of the current basis expressed in an ambient coordinate
        # system (used by glued lattices so paper data in ambient
        # coordinates can be converted)
        self.ambient_basis = (tuple(tuple(r) for r in ambient_basis)
                              if ambient_basis is not None else None)
        scale = 1
        for row in gram:
            for x in row:
                scale = lcm(scale, x.denominator)
        self._gram_scale = scale
        self._gram_int = [[int(x * scale) for x in row] for row in gram]
        self._dual_gram = None

    # -- basics ---------------------------------------------------------

    def __repr__(self):
        return f"Lattice({self.name or self.rank})"

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def ip(self, u, v):
        """Bilinear form (u, v)."""
        total = 0
        gi = self._gram_int
        for i, ui in enumerate(u):
            if ui:
                row = gi[i]
                total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
        return Q(total, self._gram_scale)

    def norm(self, v):
        return self.ip(v, v)

    def det(self):
        return la.det(self.gram)

    def signature(self):
        return la.symmetric_signature(self.gram)

    def is_positive_definite(self):
        p, q = self.signature()
        return q == 0

    def is_hyperbolic(self):
        p, q = self.signature()
        return q == 1

    def dual(self):
        """Dual lattice: Gram matrix is the inverse Gram."""
        if self._dual_gram is None:
            self._dual_gram = la.mat_inverse([list(r) for r in self.gram])
        return Lattice(self._dual_gram,
                       [lb + "*" for lb in self.basis_labels],
                       name=(self.name + "*") if self.name else "")

    def ambient_to_basis(self, coords):
        """Convert ambient (pre-glue) coordinates to coordinates in this basis."""
        if self.ambient_basis is None:
            return tuple(Q(x) for x in coords)
        bt = la.transpose([list(r) for r in self.ambient_basis])
        sol = la.solve(bt, [Q(x) for x in coords])
        if sol is None:
            raise LatticeError("vector not in the span of the basis")
        return tuple(sol)

    # -- roots and reflections ------------------------------------------

    def is_root(self, alpha):
        a2 = self.norm(alpha)
        if a2 <= 0:
            return False
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            if (2 * self.ip(alpha, e)) % a2 != 0:
                return False
        return True

    def reflect(self, alpha, x):
        """Reflection of x in the mirror of alpha: x - (2(x,a)/a^2) a."""
        a2 = self.norm(alpha)
        if a2 <= 0:
            raise LatticeError("cannot reflect in an isotropic or negative vector")
        f = 2 * self.ip(x, alpha) / a2
        return tuple(Q(xi) - f * Q(ai) for xi, ai in zip(x, alpha))

    # -- enumeration -----------------------------------------------------

    def _cholesky(self):
        """Rational LDL data for positive definite gram: q[i][j] coefficients.

        Returns q with (x+s) form value  sum_i q[i][i]*(x_i + sum_{j>i} q[i][j] x_j)^2.
        """
        n = self.rank
        q = [[Q(x) for x in row] for row in self.gram]
        for i in range(n):
            if q[i][i] <= 0:
                raise LatticeError("lattice not positive definite")
            for j in range(i + 1, n):
                q[j][i] = q[i][j]
                q[i][j] = q[i][j] / q[i][i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    q[k][l] -= q[k][i] * q[i][l]
        return q

    def shell_vectors(self, norm_value, center=None):
        """All integer x with (x + center, x + center) == norm_value.

        `center` is a rational vector (default 0).  Deterministic
        lexicographic order.  Requires positive definite gram.
        """
        return self._enumerate(norm_value, center, exact=True)

    def short_vectors(self, max_norm, coset=None, half=False):
        """Vectors v in coset+L with 0 < (v,v) <= max_norm.

        With half=True, one representative of each {v, -v} pair is kept
        (only valid for coset None or 2*coset in L).  Deterministic order.
        """
        out = []
        num = Q(max_norm)
        # enumerate all norms in the possible value set
        vecs = self._enumerate(num, coset, exact=False)
        for v, n in vecs:
            if n == 0:
                continue
            out.append((v, n))
        if half:
            seen = set()
            kept = []
            for v, n in out:
                neg = tuple(-x for x in v) if coset is None else None
                if coset is None:
                    if neg in seen:
                        continue
                    seen.add(v)
                kept.append((v, n))
            out = kept
        return out

    def _enumerate(self, bound, center=None, exact=False):
        """Fincke–Pohst style enumeration with exact rational arithmetic.

        exact=True: return list of x (integer tuples) with value == bound,
        where value = (x+center)^T G (x+center).
        exact=False: return list of (vec, value) with value <= bound (vec
        includes the center shift, i.e. the actual lattice-coset vector).
        """
        n = self.rank
        if center is None:
            center = [Q(0)] * n
        else:
            center = [Q(x) for x in center]
        q = self._cholesky()
        results = []
        x = [0] * n

        def recurse(i, remaining, shift_cache):
            # remaining: budget for levels 0..i
            # shift_cache[i]: s_i = center_i + sum_{j>i} q[i][j]*(x_j+center_j)
            if i < 0:
                if exact:
                    if remaining == 0:
                        results.append(tuple(x))
                else:
                    val = bound - remaining
                    vec = tuple(Q(xj) + cj for xj, cj in zip(x, center))
                    results.append((vec, val))
                return
            qi = q[i][i]
            s = center[i] + sum(q[i][j] * (x[j] + center[j])
                                for j in range(i + 1, n))
            # need qi*(x_i + s)^2 <= remaining
            limit = remaining / qi
            # x_i in [-s - sqrt(limit), -s + sqrt(limit)]
            lo = _ceil_minus_sqrt(-s, limit)
            hi = _floor_plus_sqrt(-s, limit)
            for xi in range(lo, hi + 1):
                x[i] = xi
                used = qi * (xi + s) ** 2
                if used <= remaining:
                    recurse(i - 1, remaining - used, None)
            x[i] = 0

        recurse(n - 1, Q(bound), None)
        results.sort(key=lambda r: (r if exact else r[0]))
        return results

    # -- export ----------------------------------------------------------

    def to_json(self):
        return {
            "name": self.name,
            "rank": self.rank,
            "basis": list(self.basis_labels),
            "gram": [[qstr(x) for x in row] for row in self.gram],
            "det": qstr(self.det()),
        }


def qstr(x):
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _ceil_minus_sqrt(c, limit):
    """Smallest integer n with n >= c - sqrt(limit), exactly (limit >= 0)."""
    c = Q(c)
    if limit < 0:
        return 1
    num, den = Q(limit).numerator, Q(limit).denominator
    s = isqrt(num * den)  # sqrt(limit) in [s/den, (s+1)/den)
    n = (c - Q(s + 1, den)).__floor__()

    def ok(k):
        return k >= c or (c - k) ** 2 <= limit

    while not ok(n):
        n += 1
    return n


def _floor_plus_sqrt(c, limit):
    """Largest integer n with n <= c + sqrt(limit), exactly (limit >= 0)."""
    c = Q(c)
    if limit < 0:
        return 0
    num, den = Q(limit).numerator, Q(limit).denominator
    s = isqrt(num * den)
    n = (c + Q(s + 1, den)).__ceil__()

    def ok(k):
        return k <= c or (k - c) ** 2 <= limit

    while not ok(n):
        n -= 1
    return n


# ---------------------------------------------------------------------------
# standard gram matrices


def _gram_a(n):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -1
    return g


def _gram_d(n):
    # D_1 = <4> (degenerate constructor), D_2 = 2A_1, D_3 = A_3.
    # For D_4 the basis follows the convention with the branch node last,
    # so that e_1 + e_2 + e_3 + 2 e_4 is the maximal root; for n >= 5 the
    # basis is e_i - e_{i+1} (i < n) plus e_{n-1} + e_n.
    if n == 1:
        return [[4]]
    if n == 2:
        return [[2, 0], [0, 2]]
    if n == 4:
        return [[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -1], [-1, -1, -1, 2]]
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i in range(n - 2):
        g[i][i + 1] = g[i + 1][i] = -1
    g[n - 3][n - 1] = g[n - 1][n - 3] = -1
    return g


def _gram_e(n):
    # E_n as A_{n-1} plus a node attached to the third vertex
    if n not in (6, 7, 8):
        raise LatticeError("E_n only for n in 6,7,8")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i in range(n - 2):
        g[i][i + 1] = g[i + 1][i] = -1
    g[2][n - 1] = g[n - 1][2] = -1
    return g


GRAM_U = [[0, -1], [-1, 0]]


# ---------------------------------------------------------------------------
# descriptor language


_TOKEN = re.compile(r"""
    \s*(?:
        (?P<gram>gram)
      | (?P<glue>glue)
      | (?P<num>-?\d+(?:/\d+)?)
      | (?P<name>[ADE]\d+|U)
      | (?P<langle><)
      | (?P<rangle>>)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<lbrack>\[)
      | (?P<rbrack>\])
      | (?P<comma>,)
      | (?P<plus>\+)
      | (?P<star>\*)
      | (?P<pipe>\|)
    )""", re.VERBOSE)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise LatticeError(f"cannot parse descriptor near {text[pos:]!r}")
            break
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group().strip()))
    return tokens


def _ade_gram(sym):
    letter, num = sym[0], sym[1:]
    if letter == "U":
        return la.qmat(GRAM_U), ["c1", "c2"]
    n = int(num)
    if letter == "A":
        if n < 1:
            raise LatticeError("A_n needs n >= 1")
        return la.qmat(_gram_a(n)), [f"e{i+1}" for i in range(n)]
    if letter == "D":
        if n < 1:
            raise LatticeError("D_n needs n >= 1")
        return la.qmat(_gram_d(n)), [f"e{i+1}" for i in range(n)]
    if letter == "E":
        return la.qmat(_gram_e(n)), [f"e{i+1}" for i in range(n)]
    raise LatticeError(f"unknown symbol {sym}")


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None):
        tok = self.peek()
        if kind and tok[0] != kind:
            raise LatticeError(f"expected {kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        gram, labels = self.parse_sum()
        glue_rows = []
        while self.peek()[0] == "pipe":
            self.take()
            self.take("glue")
            glue_rows.append(self.parse_row(len(gram)))
        if self.i != len(self.tokens):
            raise LatticeError("trailing tokens in descriptor")
        return gram, labels, glue_rows

    def parse_row(self, n):
        row = []
        while True:
            tok = self.take("num")
            row.append(Q(tok[1]))
            if self.peek()[0] == "comma":
                self.take()
            else:
                break
        if len(row) != n:
            raise LatticeError(f"glue row needs {n} entries, got {len(row)}")
        return row

    def parse_sum(self):
        gram, labels = self.parse_term()
        while self.peek()[0] == "plus":
            self.take()
            g2, l2 = self.parse_term()
            gram, labels = _direct_sum(gram, labels, g2, l2)
        return gram, labels

    def parse_term(self):
        kind, val = self.peek()
        if kind == "num":
            # multiplicity: k*X
            self.take()
            mult = int(val)
            self.take("star")
            g, l = self.parse_atom()
            gram, labels = g, l
            for _ in range(mult - 1):
                gram, labels = _direct_sum(gram, labels, g, l)
            return gram, labels
        return self.parse_atom()

    def parse_atom(self):
        kind, val = self.peek()
        if kind == "name":
            self.take()
            gram, labels = _ade_gram(val)
        elif kind == "langle":
            self.take()
            tok = self.take("num")
            self.take("rangle")
            k = Q(tok[1])
            gram, labels = [[k]], ["h"]
        elif kind == "gram":
            self.take()
            gram = self.parse_matrix()
            labels = [f"g{i+1}" for i in range(len(gram))]
        elif kind == "lparen":
            self.take()
            gram, labels = self.parse_sum()
            self.take("rparen")
        else:
            raise LatticeError(f"unexpected token {val!r}")
        # optional rescale M(n)
        if self.peek()[0] == "lparen":
            self.take()
            tok = self.take("num")
            self.take("rparen")
            m = Q(tok[1])
            gram = [[x * m for x in row] for row in gram]
        return gram, labels

    def parse_matrix(self):
        self.take("lbrack")
        rows = []
        while True:
            self.take("lbrack")
            row = []
            while True:
                row.append(Q(self.take("num")[1]))
                if self.peek()[0] == "comma":
                    self.take()
                else:
                    break
            self.take("rbrack")
            rows.append(row)
            if self.peek()[0] == "comma":
                self.take()
            else:
                break
        self.take("rbrack")
        return la.qmat(rows)


def _direct_sum(g1, l1, g2, l2):
    n1, n2 = len(g1), len(g2)
    g = [[Q(0)] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            g[i][j] = g1[i][j]
    for i in range(n2):
        for j in range(n2):
            g[n1 + i][n1 + j] = g2[i][j]
    return g, _relabel(list(l1) + list(l2))


def _relabel(labels):
    counts = {}
    total = {}
    for lb in labels:
        total[lb] = total.get(lb, 0) + 1
    out = []
    for lb in labels:
        if total[lb] == 1:
            out.append(lb)
        else:
            counts[lb] = counts.get(lb, 0) + 1
            out.append(f"{lb}.{counts[lb]}")
    return out


def glue_lattice(base, rows, name=""):
    """Extend `base` by rational glue rows; returns an even integral lattice.

    The new lattice is re-based: its basis rows (in base coordinates) are the
    Hermite basis of the group generated by the base lattice and the glue
    vectors, and the Gram matrix is recomputed.
    """
    n = base.rank
    all_rows = [[Q(int(i == j)) for j in range(n)] for i in range(n)]
    for r in rows:
        all_rows.append([Q(x) for x in r])
    den = 1
    for r in all_rows:
        for x in r:
            den = lcm(den, x.denominator)
    int_rows = [[int(x * den) for x in r] for r in all_rows]
    basis = la.hnf(int_rows)
    if len(basis) != n:
        raise LatticeError("glue rows do not preserve rank")
    basis_q = [[Q(x, den) for x in row] for row in basis]
    gram = [[base.ip(basis_q[i], basis_q[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if gram[i][j].denominator != 1:
                raise LatticeError("glue rows give a non-integral lattice")
        if gram[i][i] % 2:
            raise LatticeError("glue rows give an odd lattice")
    lab = [f"v{i+1}" for i in range(n)]
    return Lattice(gram, lab, name=name, ambient_basis=basis_q)


def build(descriptor):
    """Build a lattice from a descriptor expression."""
    parser = _Parser(descriptor)
    gram, labels, glue_rows = parser.parse()
    base = Lattice(gram, labels, name=descriptor.strip())
    if not glue_rows:
        return base
    return glue_lattice(base, glue_rows, name=descriptor.strip())


# ---------------------------------------------------------------------------
# discriminant groups


class DiscriminantGroup:
    """Finite quadratic form K*/K with Smith-normal-form generators."""

    def __init__(self, lattice):
        self.lattice = lattice
        g_int = [list(map(int, row)) for row in lattice.gram]
        if any(x.denominator != 1 for row in lattice.gram for x in row):
            raise LatticeError("discriminant group needs an integral lattice")
        d, u, v = la.snf(g_int)
        # K*/K = Z^n / G Z^n, generator i is G^{-1} u^{-1} e_i of order d_i
        uinv = la.mat_inverse(la.qmat(u))
        ginv = la.mat_inverse(la.qmat(g_int))
        gens = []
        orders = []
        n = lattice.rank
        for i in range(n):
            if d[i] == 1:
                continue
            col = [uinv[r][i] for r in range(n)]
            gen = la.mat_vec(ginv, col)
            gens.append(tuple(gen))
            orders.append(abs(d[i]))
        self.generators = gens
        self.orders = orders

    def order(self):
        total = 1
        for o in self.orders:
            total *= o
        return total

    def elements(self):
        """All classes as representative vectors (coefficient combinations)."""
        reps = [tuple([Q(0)] * self.lattice.rank)]
        for gen, order in zip(self.generators, self.orders):
            new = []
            for rep in reps:
                for k in range(order):
                    new.append(tuple(r + k * g for r, g in zip(rep, gen)))
            reps = new
        return reps

    def qvalue(self, rep):
        """Quadratic form value of the class of rep, in Q/2Z (reduced rep)."""
        return _mod2(self.lattice.norm(rep))

    def to_json(self):
        return {
            "orders": self.orders,
            "generators": [[qstr(x) for x in g] for g in self.generators],
            "qvalues": [qstr(self.qvalue(g)) for g in self.generators],
        }


def _mod2(x):
    x = Q(x)
    f = x - 2 * (x / 2).__floor__()
    return f


def discriminant_group(lattice):
    return DiscriminantGroup(lattice)


def norm2_condition(k_lattice):
    """(Norm_2): every class with q != 0 mod 2Z has a vector of norm in (0,2)."""
    if not k_lattice.is_positive_definite():
        raise LatticeError("norm2_condition needs a positive definite lattice")
    disc = DiscriminantGroup(k_lattice)
    for rep in disc.elements():
        if all(x == 0 for x in rep):
            continue
        if _mod2(k_lattice.norm(rep)) == 0:
            continue
        # shortest vectors in the coset rep + K, want 0 < h^2 < 2
        found = False
        for x in k_lattice._enumerate(Q(2), center=list(rep), exact=False):
            vec, val = x
            if 0 < val < 2:
                found = True
                break
        if not found:
            return False
    return True
