"""Vinberg's algorithm and fundamental-chamber machinery for hyperbolic lattices.

Computes the simple roots P of the 2-reflection group W(2)(S) of a lattice of
signature (n,1), the generalized Cartan matrix, lattice Weyl vectors, and the
finite-volume test via exact extreme-ray enumeration.
"""

from __future__ import annotations

from fractions import Fraction

from . import _linalg as la
from . import polyhedra
from .lattice import Lattice, LatticeError, qstr

Q = Fraction

COMPLETE = "complete-elliptic"
PARABOLIC = "parabolic-candidate"
TRUNCATED = "truncated"


class SimpleRootSet:
    """Ordered simple roots of a chamber plus the controlling vector."""

    def __init__(self, lattice, roots, controlling, status):
        self.lattice = lattice
        self.roots = [tuple(Q(x) for x in r) for r in roots]
        self.controlling = tuple(Q(x) for x in controlling)
        self.status = status

    def __len__(self):
        return len(self.roots)

    def gram_matrix(self):
        L = self.lattice
        return [[L.ip(a, b) for b in self.roots] for a in self.roots]

    def to_json(self):
        return {
            "lattice": self.lattice.to_json(),
            "status": self.status,
            "controlling": [qstr(x) for x in self.controlling],
            "roots": [[qstr(x) for x in r] for r in self.roots],
        }


class WeylVectorResult:
    def __init__(self, exists, rho=None, rho_norm=None, certificate=None):
        self.exists = exists
        self.rho = rho
        self.rho_norm = rho_norm
        # certificate: (root, value) with (rho0, root) = value != -root^2/2
        self.certificate = certificate

    def to_json(self):
        out = {"exists": self.exists}
        if self.rho is not None:
            out["rho"] = [qstr(x) for x in self.rho]
            out["rho_norm"] = qstr(self.rho_norm)
        if self.certificate is not None:
            root, value = self.certificate
            out["certificate"] = {"root": [qstr(x) for x in root],
                                  "value": qstr(value)}
        return out


class CartanGraph:
    """Gram matrix of the simple roots with classified edges."""

    def __init__(self, matrix, edges):
        self.matrix = matrix
        self.edges = edges  # (i, j, kind, weight)

    def to_json(self):
        return {
            "matrix": [[qstr(x) for x in row] for row in self.matrix],
            "edges": [{"i": i, "j": j, "kind": k, "weight": qstr(w)}
                      for (i, j, k, w) in self.edges],
        }

    def to_dot(self, name="chamber"):
        lines = [f"graph {name} {{"]
        n = len(self.matrix)
        for i in range(n):
            lines.append(f'  n{i} [label="{i}"];')
        for (i, j, kind, w) in self.edges:
            if kind == "thin":
                style = "solid"
                extra = ""
            elif kind == "thick":
                style = "bold"
                extra = ""
            else:
                style = "dashed"
                extra = f', label="{qstr(w)}"'
            lines.append(f'  n{i} -- n{j} [style={style}{extra}];')
        lines.append("}")
        return "\n".join(lines)


def positive_functional(rank):
    """The fixed generic functional (1, 1/2, 1/4, ...) used for orderings."""
    return [Q(1, 2 ** i) for i in range(rank)]


def is_positive_vector(coords):
    """Sign of a vector under the generic functional, ties broken by lex."""
    f = positive_functional(len(coords))
    val = sum(c * w for c, w in zip(coords, f))
    if val > 0:
        return True
    if val < 0:
        return False
    for c in coords:
        if c > 0:
            return True
        if c < 0:
            return False
    return False


def _find_controlling(lattice):
    """Small integral vector of negative norm, deterministic search.

    Tries vectors of small support first, then falls back to the negative
    direction of a congruent diagonalization.
    """
    from itertools import combinations, product

    n = lattice.rank
    best = None
    for support_size in (1, 2, 3):
        for support in combinations(range(n), support_size):
            for vals in product(range(-4, 5), repeat=support_size):
                if all(v == 0 for v in vals):
                    continue
                coords = [Q(0)] * n
                for pos, v in zip(support, vals):
                    coords[pos] = Q(v)
                norm = lattice.norm(coords)
                if norm < 0:
                    key = (-norm, tuple(coords))
                    if best is None or key < best[0]:
                        best = (key, tuple(coords))
        if best is not None:
            return best[1]
    # fall back: diagonalize x^T G x and take the negative direction
    m = la.qmat([list(r) for r in lattice.gram])
    basis = la.identity(n)
    for i in range(n):
        if m[i][i] == 0:
            j = next((j for j in range(n) if m[i][j] != 0), None)
            if j is None:
                continue
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            basis[i] = [a + b for a, b in zip(basis[i], basis[j])]
        if m[i][i] == 0:
            continue
        for r in range(n):
            if r != i and m[r][i]:
                f = m[r][i] / m[i][i]
                for k in range(n):
                    m[r][k] -= f * m[i][k]
                for k in range(n):
                    m[k][r] -= f * m[k][i]
                basis[r] = [a - f * b for a, b in zip(basis[r], basis[i])]
    for i in range(n):
        if m[i][i] < 0:
            return tuple(Q(x) for x in la.clear_denominators(basis[i]))
    raise LatticeError("no controlling vector found")


def _orthogonal_sublattice(lattice, c):
    """Integer basis (rows, in lattice coords) of {x in S : (x,c) = 0}."""
    pair_row = [lattice.ip([int(i == j) for j in range(lattice.rank)], c)
                for i in range(lattice.rank)]
    ints = la.clear_denominators(pair_row)
    # integer kernel via HNF of the sublattice {x : ints.x = 0}
    ker = la.kernel_basis([ints])
    int_rows = []
    from math import lcm
    den = 1
    for v in ker:
        for x in v:
            den = lcm(den, Q(x).denominator)
    for v in ker:
        int_rows.append([int(Q(x) * den) for x in v])
    basis = la.hnf(int_rows)
    # saturate: divide rows by content
    out = []
    for row in basis:
        out.append(polyhedra._primitive(tuple(row)))
    return out


def _roots_with_pairing(lattice, c, k, norm=Q(2)):
    """All alpha in S with alpha^2 = norm and (alpha, c) = -k (k rational)."""
    n = lattice.rank
    grow = [lattice.ip([int(i == j) for j in range(n)], c) for i in range(n)]
    ints = la.clear_denominators(grow)
    scale = None
    for a, b in zip(ints, grow):
        if b:
            scale = Q(a) / b
            break
    target = -Q(k) * scale  # ints . alpha = target
    if target.denominator != 1:
        return []
    target = int(target)
    from math import gcd as _g
    g = 0
    for x in ints:
        g = _g(g, x)
    if g and target % g:
        return []
    # particular integer solution of ints . x = target
    part = _solve_linear_diophantine(ints, target)
    if part is None:
        return []
    basis = _orthogonal_sublattice(lattice, c)
    if not basis:
        return []
    # alpha = part + y * basis ; norm condition in the positive definite
    # sublattice: (alpha, alpha) = norm
    sub_gram = [[lattice.ip(bi, bj) for bj in basis] for bi in basis]
    sub = Lattice(sub_gram) if _is_posdef(sub_gram) else None
    if sub is None:
        raise LatticeError("orthogonal complement of controlling vector "
                           "is not positive definite")
    # center: solve (part + y.basis) minimizing...: want (x + center)^T G (x+center)
    # with x integer coords in `basis`. center solves the projection of part.
    # (part + y.B)^2 = norm  ->  in sub coords: (y + s)^T Gsub (y + s) = t
    # where s = Gsub^{-1} * (B G part) and t = norm - part^2 + s^T Gsub s.
    bg_part = [lattice.ip(bi, part) for bi in basis]
    s = la.mat_vec(la.mat_inverse(sub_gram), bg_part)
    t = Q(norm) - lattice.norm(part) + la.gram_dot(sub_gram, s, s)
    if t < 0:
        return []
    sols = sub.shell_vectors(t, center=s)
    out = []
    for y in sols:
        alpha = list(Q(x) for x in part)
        for yi, bi in zip(y, basis):
            for j in range(n):
                alpha[j] += yi * bi[j]
        out.append(tuple(alpha))
    out.sort()
    return out


def _is_posdef(gram):
    p, q = la.symmetric_signature(gram)
    return q == 0 and p == len(gram)


def _solve_linear_diophantine(coeffs, target):
    """One integer solution x of coeffs.x = target, or None."""
    n = len(coeffs)
    from math import gcd as _g
    # extended gcd over the list
    g = 0
    combo = [0] * n
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if g == 0:
            g = abs(c)
            combo = [0] * n
            combo[i] = 1 if c > 0 else -1
        else:
            a, b = g, c
            old_r, r = a, b
            old_s, s = 1, 0
            while r:
                qq = old_r // r
                old_r, r = r, old_r - qq * r
                old_s, s = s, old_s - qq * s
            # old_r = gcd, old_s*a + t*b = old_r
            t = (old_r - old_s * a) // b
            combo = [old_s * x for x in combo]
            combo[i] += t
            g = old_r
            if g < 0:
                g = -g
                combo = [-x for x in combo]
    if g == 0:
        return None
    if target % g:
        return None
    f = target // g
    return [Q(f * x) for x in combo]


def height_zero_seed(lattice, c):
    """Simple roots of the finite 2-reflection system orthogonal to c."""
    basis = _orthogonal_sublattice(lattice, c)
    if not basis:
        return []
    sub_gram = [[lattice.ip(bi, bj) for bj in basis] for bi in basis]
    if not _is_posdef(sub_gram):
        raise LatticeError("controlling vector is not negative")
    sub = Lattice(sub_gram)
    roots = [v for v, norm in sub.short_vectors(2) if norm == 2]
    # keep the positive half, then greedy chamber walk
    pos = [r for r in roots if is_positive_vector(r)]
    pos.sort(key=lambda r: (_func_value(r), r))
    accepted = []
    for r in pos:
        if all(la.gram_dot(sub_gram, r, a) <= 0 for a in accepted):
            accepted.append(r)
    out = []
    for r in accepted:
        alpha = [Q(0)] * lattice.rank
        for ri, bi in zip(r, basis):
            for j in range(lattice.rank):
                alpha[j] += ri * bi[j]
        out.append(tuple(alpha))
    out.sort()
    return out


def _func_value(coords):
    f = positive_functional(len(coords))
    return sum(c * w for c, w in zip(coords, f))


def vinberg(lattice, controlling=None, height_cap=Q(10 ** 4), max_roots=1000):
    """Vinberg's algorithm for the 2-reflection group of a hyperbolic lattice.

    Roots are emitted in nondecreasing height (alpha,c)^2/alpha^2 and accepted
    when they pair nonpositively with all previously accepted roots.  Stops
    when the chamber has finite volume (status complete-elliptic) or a cap is
    hit (status parabolic-candidate / truncated).
    """
    p, q = lattice.signature()
    if q != 1:
        raise LatticeError(f"vinberg needs signature (n,1), got ({p},{q})")
    if controlling is None:
        c = _find_controlling(lattice)
    else:
        c = tuple(Q(x) for x in controlling)
        if lattice.norm(c) >= 0:
            raise LatticeError("controlling vector must have negative norm")

    accepted = list(height_zero_seed(lattice, c))

    # pairing values (alpha, c) are multiples of 1/den for some fixed den
    den = 1
    from math import lcm
    for i in range(lattice.rank):
        e = [int(i == j) for j in range(lattice.rank)]
        den = lcm(den, Q(lattice.ip(e, c)).denominator)

    status = TRUNCATED
    k_step = Q(1, den)
    k = Q(0)
    dirty = True  # chamber changed since the last finite-volume check
    while True:
        if dirty and _finite_volume_roots(lattice, accepted):
            status = COMPLETE
            break
        dirty = False
        k += k_step
        if (k * k) / 2 > height_cap or len(accepted) > max_roots:
            status = TRUNCATED
            break
        for alpha in _roots_with_pairing(lattice, c, k):
            if all(lattice.ip(alpha, b) <= 0 for b in accepted):
                accepted.append(alpha)
                dirty = True
        if len(accepted) > max_roots:
            status = TRUNCATED
            break
    srs = SimpleRootSet(lattice, accepted, c, status)
    if status == TRUNCATED and accepted:
        wv = weyl_vector(srs)
        if wv.exists and wv.rho_norm == 0:
            srs.status = PARABOLIC
    return srs


def _pairing_row(lattice, r):
    """Row of the linear functional x -> (r, x) in basis coordinates."""
    return [sum(lattice.gram[i][j] * r[i] for i in range(lattice.rank))
            for j in range(lattice.rank)]


def _finite_volume_roots(lattice, roots):
    if not roots:
        return False
    rows = [_pairing_row(lattice, r) for r in roots]
    if la.rank(rows) < lattice.rank:
        return False
    rays = polyhedra.extreme_rays(rows, dim=lattice.rank)
    for ray in rays:
        if lattice.norm([Q(x) for x in ray]) > 0:
            return False
    return True


def finite_volume(srs):
    """True iff the chamber cut out by the roots lies in the closed light cone."""
    return _finite_volume_roots(srs.lattice, srs.roots)


def extreme_ray_norms(srs):
    lattice = srs.lattice
    rows = [_pairing_row(lattice, r) for r in srs.roots]
    rays = polyhedra.extreme_rays(rows, dim=lattice.rank)
    return [(ray, lattice.norm([Q(x) for x in ray])) for ray in rays]


def weyl_vector(srs_or_roots, lattice=None):
    """Solve (rho, delta) = -delta^2/2 for all simple roots delta, exactly."""
    if isinstance(srs_or_roots, SimpleRootSet):
        roots = srs_or_roots.roots
        lattice = srs_or_roots.lattice
    else:
        roots = [tuple(Q(x) for x in r) for r in srs_or_roots]
    n = lattice.rank
    if not roots:
        raise LatticeError("no roots to solve against")
    rows = []
    rhs = []
    for r in roots:
        rows.append(_pairing_row(lattice, r))
        rhs.append(-lattice.norm(r) / 2)
    if la.rank(rows) < n:
        raise LatticeError("roots do not span; Weyl vector underdetermined")
    # solve on a maximal independent prefix, then check the rest
    chosen = []
    chosen_rhs = []
    for row, b in zip(rows, rhs):
        if la.rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            chosen_rhs.append(b)
        if len(chosen) == n:
            break
    rho = la.solve(chosen, chosen_rhs)
    for r, row, b in zip(roots, rows, rhs):
        val = sum(x * y for x, y in zip(row, rho))
        if val != b:
            return WeylVectorResult(False, certificate=(r, val))
    norm = lattice.norm(rho)
    return WeylVectorResult(True, rho=tuple(rho), rho_norm=norm)


def cartan_graph(srs):
    """Generalized Cartan matrix ((a_i, a_j)) with classified edges."""
    gram = srs.gram_matrix()
    edges = []
    n = len(gram)
    for i in range(n):
        for j in range(i + 1, n):
            v = gram[i][j]
            if v == 0:
                continue
            if v == -1:
                kind = "thin"
            elif v == -2:
                kind = "thick"
            else:
                kind = "broken"
            edges.append((i, j, kind, -v))
    return CartanGraph(gram, edges)


def star_chamber(lattice, components):
    """Chamber of U + K for K a sum of ADE root lattices: the Star.

    `components` lists (letter, rank, offset) blocks of K inside the standard
    basis (c1, c2, K...).  Roots: -c1+c2, the bases of the K_i, and c1 - w_i
    for w_i the highest root of K_i.
    """
    from .rootsys import highest_root_in_basis

    n = lattice.rank
    roots = []
    e = [Q(0)] * n
    e[0], e[1] = Q(-1), Q(1)
    roots.append(tuple(e))
    for (letter, rank, offset) in components:
        for i in range(rank):
            v = [Q(0)] * n
            v[2 + offset + i] = Q(1)
            roots.append(tuple(v))
        coeffs = highest_root_in_basis(letter, rank)
        v = [Q(0)] * n
        v[0] = Q(1)
        for i, ci in enumerate(coeffs):
            v[2 + offset + i] = -Q(ci)
        roots.append(tuple(v))
    c = [Q(0)] * n
    c[0] = c[1] = Q(1)
    srs = SimpleRootSet(lattice, roots, c, COMPLETE)
    return srs


def delpezzo_roots(n):
    """Chamber of <-2> + n A1 from the anticanonical Weyl vector."""
    from .lattice import build

    if not 1 <= n <= 8:
        raise LatticeError("delpezzo_roots needs 1 <= n <= 8")
    lattice = build("<-2> + " + (f"{n}*A1" if n > 1 else "A1"))
    rho = [Q(3, 2)] + [Q(-1, 2)] * n
    # {delta : delta^2 = 2, (delta, rho) = -1}
    roots = _roots_with_pairing_generic(lattice, rho, Q(-1), Q(2))
    srs = SimpleRootSet(lattice, roots, rho, COMPLETE)
    return srs


def _roots_with_pairing_generic(lattice, w, pairing, norm):
    """All alpha with alpha^2 = norm and (alpha, w) = pairing (w rational)."""
    out = _roots_with_pairing(lattice, w, -Q(pairing), norm=norm)
    return out
