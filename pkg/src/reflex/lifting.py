"""Additive Jacobi lifting and the catalog of lifted forms: the D_k towers,
the 4A1 and 3A2 towers, half-integral-index closed formulas, reflected
variants and products.

Orthogonal expansions are stored as maps (n, kappa, m) -> integer for
monomials q^n zeta^kappa s^m; q and s exponents share a grid (integral or
half-integral), keys follow the same z-model conventions as JacobiFourier.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm, isqrt

from . import _linalg as la
from .qseries import (JacobiFourier, QSeries, eta, eta_power,
                      kronecker_minus4, sigma1, theta_block, theta_jacobi)

Q = Fraction


def identity_gz(n, scale=1):
    return [[scale if i == j else 0 for j in range(n)] for i in range(n)]


A2_GZ = [[2, -1], [-1, 2]]


def block_gz(block, copies):
    n = len(block)
    out = [[0] * (n * copies) for _ in range(n * copies)]
    for c in range(copies):
        for i in range(n):
            for j in range(n):
                out[c * n + i][c * n + j] = block[i][j]
    return out


class OrthogonalFourier:
    """Truncated Fourier expansion on 2U + K at the zero-dimensional cusp.

    coeffs: {(n_scaled, key, m_scaled): int}; complete for n <= n_cap and
    m <= m_cap.
    """

    __slots__ = ("gz", "gzinv", "nden", "kden", "coeffs", "weight",
                 "n_cap", "m_cap")

    def __init__(self, gz, coeffs, n_cap, m_cap, weight=None, nden=1, kden=1,
                 gzinv=None):
        self.gz = tuple(tuple(Q(x) for x in row) for row in gz)
        self.gzinv = gzinv or la.mat_inverse([list(r) for r in self.gz])
        self.nden = nden
        self.kden = kden
        self.coeffs = coeffs
        self.weight = None if weight is None else Q(weight)
        self.n_cap = Q(n_cap)
        self.m_cap = Q(m_cap)

    @property
    def nvars(self):
        return len(self.gz)

    def key_norm(self, key):
        kap = [Q(x, self.kden) for x in key]
        return la.gram_dot(self.gzinv, kap, kap)

    def coefficient(self, n, kappa, m):
        ns = Q(n) * self.nden
        ms = Q(m) * self.nden
        key = tuple(Q(x) * self.kden for x in kappa)
        if ns.denominator != 1 or ms.denominator != 1 or \
                any(x.denominator != 1 for x in key):
            return 0
        return self.coeffs.get((int(ns), tuple(int(x) for x in key), int(ms)),
                               0)

    def rescale_grid(self, nden=None, kden=None):
        nden = nden or self.nden
        kden = kden or self.kden
        nf, kf = nden // self.nden, kden // self.kden
        if nf == 1 and kf == 1:
            return self
        out = {}
        for (ns, key, ms), c in self.coeffs.items():
            out[(ns * nf, tuple(x * kf for x in key), ms * nf)] = c
        return OrthogonalFourier(self.gz, out, self.n_cap, self.m_cap,
                                 self.weight, nden, kden, self.gzinv)

    def _join(self, other):
        if self.gz != other.gz:
            raise ValueError("z-models differ")
        nden = lcm(self.nden, other.nden)
        kden = lcm(self.kden, other.kden)
        return self.rescale_grid(nden, kden), other.rescale_grid(nden, kden)

    def __add__(self, other):
        a, b = self._join(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out.get(k, 0) + c
            if not out[k]:
                del out[k]
        return OrthogonalFourier(a.gz, out, min(a.n_cap, b.n_cap),
                                 min(a.m_cap, b.m_cap), None, a.nden, a.kden,
                                 a.gzinv)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return OrthogonalFourier(self.gz,
                                 {k: c * v for k, v in self.coeffs.items()},
                                 self.n_cap, self.m_cap, self.weight,
                                 self.nden, self.kden, self.gzinv)

    def __mul__(self, other):
        a, b = self._join(other)
        lead_na = min((k[0] for k in a.coeffs), default=0)
        lead_ma = min((k[2] for k in a.coeffs), default=0)
        lead_nb = min((k[0] for k in b.coeffs), default=0)
        lead_mb = min((k[2] for k in b.coeffs), default=0)
        n_cap = min(a.n_cap + Q(lead_nb, a.nden), b.n_cap + Q(lead_na, a.nden))
        m_cap = min(a.m_cap + Q(lead_mb, a.nden), b.m_cap + Q(lead_ma, a.nden))
        ncs = n_cap * a.nden
        mcs = m_cap * a.nden
        if len(b.coeffs) < len(a.coeffs):
            a, b = b, a
        out = {}
        for (n1, k1, m1), c1 in a.coeffs.items():
            for (n2, k2, m2), c2 in b.coeffs.items():
                n = n1 + n2
                m = m1 + m2
                if n > ncs or m > mcs:
                    continue
                kk = (n, tuple(x + y for x, y in zip(k1, k2)), m)
                out[kk] = out.get(kk, 0) + c1 * c2
        out = {k: c for k, c in out.items() if c}
        w = None if (a.weight is None or b.weight is None) \
            else a.weight + b.weight
        return OrthogonalFourier(a.gz, out, n_cap, m_cap, w, a.nden, a.kden,
                                 a.gzinv)

    def apply_key_matrix(self, mat):
        m = la.qmat(mat)
        out = {}
        for (ns, key, ms), c in self.coeffs.items():
            newkey = tuple(sum(m[i][j] * key[j] for j in range(len(key)))
                           for i in range(len(key)))
            if any(x.denominator != 1 for x in newkey):
                raise ValueError("key matrix does not preserve the key grid")
            out[(ns, tuple(int(x) for x in newkey), ms)] = c
        return OrthogonalFourier(self.gz, out, self.n_cap, self.m_cap,
                                 self.weight, self.nden, self.kden,
                                 self.gzinv)

    def pullback(self, zmap, new_gz=None):
        m = la.qmat(zmap)
        rows, cols = len(m), len(m[0])
        if rows != self.nvars:
            raise ValueError("zmap rows must match the old z-dimension")
        if new_gz is None:
            mt = la.transpose(m)
            new_gz = la.mat_mul(mt, la.mat_mul([list(r) for r in self.gz], m))
        scale = 1
        for row in m:
            for x in row:
                scale = lcm(scale, Q(x).denominator)
        new_kden = self.kden * scale
        out = {}
        for (ns, key, ms), c in self.coeffs.items():
            newkey = tuple(int(sum(Q(m[i][j]) * key[i] for i in range(rows))
                               * scale)
                           for j in range(cols))
            kk = (ns, newkey, ms)
            out[kk] = out.get(kk, 0) + c
        out = {k: c for k, c in out.items() if c}
        return OrthogonalFourier(new_gz, out, self.n_cap, self.m_cap,
                                 self.weight, self.nden, new_kden)

    def rescale_variable(self, t):
        """(n, kappa, m) -> (t n, t kappa, t m): the substitution Z -> tZ."""
        t = Q(t)
        nden = self.nden * t.denominator
        kden = self.kden * t.denominator
        out = {}
        for (ns, key, ms), c in self.coeffs.items():
            out[(ns * t.numerator, tuple(x * t.numerator for x in key),
                 ms * t.numerator)] = c
        return OrthogonalFourier(self.gz, out, self.n_cap * t, self.m_cap * t,
                                 self.weight, nden, kden, self.gzinv)

    def fourier_jacobi_slice(self, m):
        """The coefficient of s^m as a JacobiFourier expansion in (tau, z)."""
        ms = Q(m) * self.nden
        if ms.denominator != 1:
            return JacobiFourier(self.gz, {}, self.n_cap, nden=self.nden,
                                 kden=self.kden, gzinv=self.gzinv)
        ms = int(ms)
        out = {}
        for (ns, key, m2), c in self.coeffs.items():
            if m2 == ms:
                out[(ns, key)] = c
        return JacobiFourier(self.gz, out, self.n_cap, nden=self.nden,
                             kden=self.kden, gzinv=self.gzinv)

    def support_indices(self):
        for (ns, key, ms), c in self.coeffs.items():
            yield (Q(ns, self.nden), tuple(Q(x, self.kden) for x in key),
                   Q(ms, self.nden), c)

    def hyperbolic_norms(self):
        """2 n m - (ell, ell) over the support (the index norms)."""
        for n, kap, m, c in self.support_indices():
            norm = 2 * n * m - la.gram_dot(self.gzinv, kap, kap)
            yield norm, c

    def dump(self):
        from .lattice import qstr

        lines = []
        for (ns, key, ms), c in sorted(self.coeffs.items()):
            kap = ",".join(qstr(Q(x, self.kden)) for x in key)
            lines.append(f"n={qstr(Q(ns, self.nden))} l=({kap}) "
                         f"m={qstr(Q(ms, self.nden))} c={c}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# the additive lift


def jacobi_lift(phi, n_max, m_max):
    """Lift of a holomorphic Jacobi form with f(0,0) = 0.

    Coefficient at (n, ell, m): sum over d | (n, ell, m) of
    d^{k-1} f(n m / (m0 d^2), ell / d) where m0 is the index of phi
    (1 for the integral towers, 1/2 for the theta-block towers).
    """
    if phi.weight is None or phi.weight.denominator != 1:
        raise ValueError("lift needs integral weight metadata")
    k = int(phi.weight)
    m0 = phi.index
    if m0 not in (Q(1), Q(1, 2)):
        raise ValueError("lift implemented for index 1 and 1/2")
    if phi.coefficient(0, (0,) * phi.nvars) != 0:
        raise ValueError("lift needs f(0,0) = 0")
    theta = phi.support_residue()
    if theta not in (Q(0), Q(1, 2)):
        raise ValueError("unexpected exponent residue")
    den_g = theta.denominator  # 1 for integer grid, 2 for half grid
    n_max, m_max = Q(n_max), Q(m_max)
    if phi.order <= n_max * m_max / m0:
        raise ValueError(
            f"lift to ({n_max},{m_max}) needs the input complete to level "
            f"{n_max * m_max / m0}, got {phi.order}")
    levels = phi.nlevels()
    out = {}
    ncap_s = int(n_max * den_g)
    mcap_s = int(m_max * den_g)
    for ns, level in levels.items():
        j = Q(ns, phi.nden)
        if j <= 0:
            continue
        d = 1
        while True:
            # n m = j * m0 * d^2; scaled by den_g: u v = j m0 d^2 den^2
            target = j * m0 * d * d * den_g * den_g
            if target.denominator != 1:
                d += 1
                if j * m0 * d * d > n_max * m_max:
                    break
                continue
            target = int(target)
            if Q(target) > ncap_s * mcap_s:
                break
            factor = d ** (k - 1)
            for u in _divisors(target):
                v = target // u
                if u > ncap_s or v > mcap_s:
                    continue
                if den_g == 2 and (u % 2 == 0 or v % 2 == 0):
                    continue
                if u % d or v % d:
                    continue
                if den_g == 2 and ((u // d) % 2 == 0 or (v // d) % 2 == 0):
                    continue
                # output exponents u/den, v/den on the nden grid
                n_sc = Q(u, den_g) * phi.nden
                m_sc = Q(v, den_g) * phi.nden
                for key, c in level.items():
                    kk = (int(n_sc), tuple(x * d for x in key), int(m_sc))
                    out[kk] = out.get(kk, 0) + factor * c
            d += 1
            if j * m0 * d * d > n_max * m_max:
                break
    out = {kk: c for kk, c in out.items() if c}
    return OrthogonalFourier(phi.gz, out, n_max, m_max, phi.weight,
                             phi.nden, phi.kden, phi.gzinv)


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# tower catalog: theta blocks and their weak Jacobi forms of weight 0


def psi_tower_Dk(k, order):
    """psi_{12-k, D_k} = eta^{24-3k} theta(z_1) ... theta(z_k); for k = 1 the
    degenerate D_1 = <4> block eta^21 theta(2z)."""
    if k == 1:
        return theta_block([(2,)], 21, order, [[4]])
    forms = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    return theta_block(forms, 24 - 3 * k, order, identity_gz(k))


def sigma_A2(order):
    """theta((l1,z)) theta((l2,z)) theta((l1-l2,z)) / eta on the standard
    A2 basis model (l_i the fundamental weights)."""
    return theta_block([(1, 0), (0, 1), (1, -1)], -1, order, A2_GZ)


def sigma_kA2(copies, order):
    """eta^{8(3-copies)} * sigma_{A2}(z_1) ... sigma_{A2}(z_copies), the
    theta-block input of the 3A2-tower liftings."""
    gz = block_gz(A2_GZ, copies)
    forms = []
    for c in range(copies):
        for f in [(1, 0), (0, 1), (1, -1)]:
            row = [0] * (2 * copies)
            row[2 * c], row[2 * c + 1] = f
            forms.append(tuple(row))
    return theta_block(forms, 8 * (3 - copies) - copies, order, gz)


def psi_tower_kA1(k, order):
    """eta^{3(4-k)} theta(z_1)...theta(z_k) as an index-1/2 form for kA1."""
    forms = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    return theta_block(forms, 3 * (4 - k), order, identity_gz(k, 2))


def theta_D8(order):
    """theta(z_1)...theta(z_8), the singular-weight Jacobi form for D_8."""
    return psi_tower_Dk(8, order)


def _embed_rank1(phi, dim, pos, gz, kden):
    """Embed a 1-variable Jacobi series as the `pos`-th coordinate factor."""
    out = {}
    f = kden // phi.kden
    for (ns, key), c in phi.coeffs.items():
        newkey = [0] * dim
        newkey[pos] = key[0] * f
        out[(ns, tuple(newkey))] = c
    return JacobiFourier(gz, out, phi.order, phi.weight, None, phi.char,
                         phi.nden, kden)


def _theta_ratio(tau_mult, z_mult, order):
    """theta(t tau, u z) / theta(tau, z) as a 1-variable series."""
    t = Q(tau_mult)
    th = theta_jacobi(order + 2)
    num = theta_jacobi((order + 2) / t + 1).substitute(t, z_mult)
    return num.div(th)


def phi0_tower_Dk(k, order):
    """The weak weight-0 form with B_{phi0} = Delta_{12-k, D_k}:
    2^{-1} (psi | T_-(2)) / psi computed through coordinate-wise ratios."""
    order = Q(order)
    p = 24 - 3 * k
    gz = identity_gz(k)
    # part A: 2^{12-k-1} psi(2 tau, 2 z)/psi = 2^{11-k} (eta ratio)^p prod
    eta_r2 = eta_power(p, order + 3).substitute_exponent(2).div(
        eta_power(p, 2 * order + 6)).truncate(order + 1)
    r2 = _theta_ratio(2, 2, order + 1)
    part_a = None
    for i in range(k):
        f = _embed_rank1(r2, k, i, gz, r2.kden)
        part_a = f if part_a is None else part_a * f
    part_a = part_a.mul_qseries(eta_r2)
    # part B: integer-exponent part of psi(tau/2, z)/psi
    eta_rh = eta_power(p, 2 * order + 6).substitute_exponent(Q(1, 2)).div(
        eta_power(p, order + 3)).truncate(order + 1)
    rh = _theta_ratio(Q(1, 2), 1, order + 1)
    part_b = None
    for i in range(k):
        f = _embed_rank1(rh, k, i, gz, rh.kden)
        part_b = f if part_b is None else part_b * f
    part_b = part_b.mul_qseries(eta_rh).residue_part(0)
    phi0 = part_a.scale(2 ** (11 - k)) + part_b
    # normalize the overall sign to the convention with positive constant
    # term 24 - 2k (the naive Hecke quotient comes out globally negated)
    phi0 = _sign_normalize(phi0)
    out = JacobiFourier(phi0.gz, phi0.coeffs, min(phi0.order, order),
                        Q(0), Q(1), "weak", phi0.nden, phi0.kden)
    return _normalize_grid(out)


def _sigma_ratio(tau_mult, z_mult, order):
    t = Q(tau_mult)
    s = sigma_A2(order + 2)
    num = sigma_A2((order + 2) / t + 1).substitute(t, z_mult)
    return num.div(s)


def phi0_tower_3A2(order):
    """2^{-1}(sigma_{3A2} | T_-(2)) / sigma_{3A2} via blockwise ratios."""
    order = Q(order)
    gz = block_gz(A2_GZ, 3)
    r2 = _sigma_ratio(2, 2, order + 1)
    rh = _sigma_ratio(Q(1, 2), 1, order + 1)
    part_a = part_b = None
    for c in range(3):
        fa = _embed_block(r2, 3, c, gz)
        fb = _embed_block(rh, 3, c, gz)
        part_a = fa if part_a is None else part_a * fa
        part_b = fb if part_b is None else part_b * fb
    phi0 = _sign_normalize(part_a.scale(4) + part_b.residue_part(0))
    out = JacobiFourier(phi0.gz, phi0.coeffs, min(phi0.order, order),
                        Q(0), Q(1), "weak", phi0.nden, phi0.kden)
    return _normalize_grid(out)


def _embed_block(phi, copies, pos, gz):
    dim = 2 * copies
    out = {}
    for (ns, key), c in phi.coeffs.items():
        newkey = [0] * dim
        newkey[2 * pos], newkey[2 * pos + 1] = key
        out[(ns, tuple(newkey))] = c
    return JacobiFourier(gz, out, phi.order, phi.weight, None, phi.char,
                         phi.nden, phi.kden)


def _sign_normalize(phi):
    """Fix the overall sign so the weight-0 layer has positive total mass."""
    total = sum(c for (ns, _k), c in phi.coeffs.items() if ns == 0)
    return phi.scale(-1) if total < 0 else phi


def _normalize_grid(phi):
    """Reduce nden/kden to the actual content of the support."""
    if not phi.coeffs:
        return phi
    gn = 0
    for (ns, _k) in phi.coeffs:
        gn = gcd(gn, ns)
        if gn == 1:
            break
    gk = 0
    for (_ns, key) in phi.coeffs:
        for x in key:
            gk = gcd(gk, x)
        if gk == 1:
            break
    gn = gcd(gn, phi.nden) or phi.nden
    gk = gcd(gk, phi.kden) or phi.kden
    if gn <= 1 and gk <= 1:
        return phi
    out = {}
    for (ns, key), c in phi.coeffs.items():
        out[(ns // gn, tuple(x // gk for x in key))] = c
    return JacobiFourier(phi.gz, out, phi.order, phi.weight, phi.index,
                         phi.char, phi.nden // gn, phi.kden // gk)


def phi0_tower_kA1(k, order):
    """3^{-1}(psi | T_-(3)) / psi for the 4A1 tower (k = 4), or the
    coordinate pullback of the 4A1 form for k < 4."""
    from .qseries import hecke_Tminus

    order = Q(order)
    if k < 4:
        full = phi0_tower_kA1(4, order)
        zmap = [[1 if (i < k and i == j) else 0 for j in range(k)]
                for i in range(4)]
        return full.pullback(zmap, new_gz=identity_gz(k, 2))
    psi = psi_tower_kA1(4, order * 3 + 3)
    num = hecke_Tminus(psi, 3)
    phi0 = _sign_normalize(num.div(psi).scale(Q(1, 3)))
    coeffs = {}
    for kk, c in phi0.coeffs.items():
        c = Q(c)
        if c.denominator != 1:
            raise ValueError("phi0 for 4A1 is not integral")
        if c:
            coeffs[kk] = int(c)
    out = JacobiFourier(phi0.gz, coeffs, min(phi0.order, order), Q(0), Q(1),
                        "weak", phi0.nden, phi0.kden)
    return _normalize_grid(out)


# ---------------------------------------------------------------------------
# closed-form expansions (independent oracles)


def delta5_D7_closed(n_max, m_max):
    """Fourier expansion of Delta_{5, D7} from the closed formula:
    over 8 n m - (2 ell, 2 ell) = N^2,
    coefficient N * sum_{d | (n, ell, m)} d^3 (-4/(N/d)) (-4/(2 ell / d)).
    """
    n_max, m_max = int(n_max), int(m_max)
    out = {}
    cap = 8 * n_max * m_max
    # 2 ell runs over 2 D_7^*: the all-odd vectors and the all-even ones
    shells = dict(_odd_shells(7, cap))
    for t, vecs in _even_shells(7, cap).items():
        shells.setdefault(t, []).extend(vecs)
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            budget = 8 * n * m
            for t, vecs in shells.items():
                if t > budget:
                    continue
                nsq = budget - t
                nn = isqrt(nsq)
                if nn * nn != nsq or nn == 0:
                    continue
                for odd in vecs:
                    g = gcd(gcd(n, m), _vec_gcd(odd))
                    total = 0
                    for d in _divisors(g):
                        if nn % d:
                            continue
                        kron = kronecker_minus4(nn // d)
                        if not kron:
                            continue
                        prod = 1
                        for x in odd:
                            prod *= kronecker_minus4(x // d)
                        total += d ** 3 * kron * prod
                    if total:
                        key = tuple(odd)  # 2*ell, i.e. kden = 2
                        kk = (n, key, m)
                        out[kk] = out.get(kk, 0) + nn * total
    return OrthogonalFourier(identity_gz(7), out, n_max, m_max, Q(5),
                             nden=1, kden=2)


def _vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


_ODD_SHELL_CACHE = {}


def _odd_shells(dim, cap):
    """All odd integer vectors grouped by norm <= cap, cached."""
    keyc = (dim, cap)
    if keyc in _ODD_SHELL_CACHE:
        return _ODD_SHELL_CACHE[keyc]
    shells = {}
    vec = [0] * dim

    def rec(i, remaining):
        if i == dim:
            shells.setdefault(cap - remaining, []).append(tuple(vec))
            return
        m = 1
        while m * m <= remaining - (dim - 1 - i):
            for s in (m, -m):
                vec[i] = s
                rec(i + 1, remaining - m * m)
            m += 2
        vec[i] = 0

    # remaining budget accounts at least 1 per remaining coordinate
    def rec2(i, used):
        if i == dim:
            shells.setdefault(used, []).append(tuple(vec))
            return
        m = 1
        while used + m * m + (dim - 1 - i) <= cap:
            for s in (m, -m):
                vec[i] = s
                rec2(i + 1, used + m * m)
            m += 2

    rec2(0, 0)
    _ODD_SHELL_CACHE[keyc] = shells
    return shells


def _even_shells(dim, cap):
    """Nonzero even integer vectors grouped by norm <= cap."""
    shells = {}
    vec = [0] * dim

    def rec(i, used):
        if i == dim:
            if used:
                shells.setdefault(used, []).append(tuple(vec))
            return
        m = 0
        while used + m * m <= cap:
            if m == 0:
                vec[i] = 0
                rec(i + 1, used)
            else:
                for s in (m, -m):
                    vec[i] = s
                    rec(i + 1, used + m * m)
            m += 2
        vec[i] = 0

    rec(0, 0)
    return shells


def delta_halfint_catalog(name, n_max, m_max):
    """Explicit Fourier expansions of the half-integral-index catalog.

    Supported names: Delta_2,4A1; Delta_3,3A1; Delta_4,2A1; Delta_5,A1.
    Exponents live on the half-odd grid (denominator 2).
    """
    name = name.replace(" ", "")
    if name in ("Delta_2,4A1", "Delta_{2,4A1}"):
        return _delta2_4a1(n_max, m_max)
    if name in ("Delta_3,3A1", "Delta_{3,3A1}"):
        return _delta3_3a1(n_max, m_max)
    if name in ("Delta_4,2A1", "Delta_{4,2A1}"):
        return _delta_tower_kA1(2, n_max, m_max)
    if name in ("Delta_5,A1", "Delta_{5,A1}"):
        return _delta_tower_kA1(1, n_max, m_max)
    raise ValueError(f"unknown catalog form {name}")


def _halfgrid_range(cap):
    """Scaled (by 2) odd values u with u/2 <= cap."""
    u = 1
    out = []
    while Q(u, 2) <= cap:
        out.append(u)
        u += 2
    return out


def _delta2_4a1(n_max, m_max):
    """Singular-weight form: support 4 n_p m_p = l_1^2+..+l_4^2 (paper units
    n_p = 2n); coefficient sigma_1(gcd) * (-4 / l1 l2 l3 l4)."""
    n_max, m_max = Q(n_max), Q(m_max)
    out = {}
    for u in _halfgrid_range(n_max):      # u = 2n odd
        for v in _halfgrid_range(m_max):  # v = 2m odd
            t = 4 * u * v                 # = l^2 budget, exact
            shells = _odd_shells(4, t)
            for odd in shells.get(t, []):
                g = gcd(gcd(u, v), _vec_gcd(odd))
                prod = 1
                for x in odd:
                    prod *= kronecker_minus4(x)
                c = sigma1(g) * prod
                if c:
                    out[(u, tuple(odd), v)] = c
    return OrthogonalFourier(identity_gz(4, 2), out, n_max, m_max, Q(2),
                             nden=2, kden=2)


def _delta3_3a1(n_max, m_max):
    """4 n_p m_p - l1^2 - l2^2 - l3^2 = N^2, coefficient
    N (-4/(N l1 l2 l3)) sigma_1(gcd)."""
    n_max, m_max = Q(n_max), Q(m_max)
    out = {}
    for u in _halfgrid_range(n_max):
        for v in _halfgrid_range(m_max):
            budget = 4 * u * v
            shells = _odd_shells(3, budget)
            for t, vecs in shells.items():
                nsq = budget - t
                nn = isqrt(nsq)
                if nn * nn != nsq or nn == 0:
                    continue
                for odd in vecs:
                    prod = kronecker_minus4(nn)
                    for x in odd:
                        prod *= kronecker_minus4(x)
                    if not prod:
                        continue
                    g = gcd(gcd(u, v), _vec_gcd(odd))
                    c = nn * prod * sigma1(g)
                    if c:
                        kk = (u, tuple(odd), v)
                        out[kk] = out.get(kk, 0) + c
    return OrthogonalFourier(identity_gz(3, 2), out, n_max, m_max, Q(3),
                             nden=2, kden=2)


def _delta_tower_kA1(k, n_max, m_max):
    """Delta_{6-k, kA1} = Lift(eta^{3(4-k)} theta^k) on the half-odd grid."""
    cap = Q(n_max) * Q(m_max) * 2 + 1
    psi = psi_tower_kA1(k, cap)
    return jacobi_lift(psi, n_max, m_max)


# ---------------------------------------------------------------------------
# reflections and products


def reflection_key_matrix(gz, v_coords):
    """Key-space matrix of the reflection in a model vector v (coords in the
    z-model); validates that v is non-isotropic."""
    g = la.qmat([list(r) for r in gz])
    v = [Q(x) for x in v_coords]
    vnorm = la.gram_dot(g, v, v)
    if vnorm == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    # on coordinates: x -> x - 2 (x,v)/(v,v) v ; keys transform by
    # kappa -> kappa - 2 (kappa . v)/(v,v) * (G v)
    gv = la.mat_vec(g, v)
    n = len(v)
    mat = [[Q(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            mat[i][j] -= 2 * gv[i] * v[j] / vnorm
    return mat


def check_isometry(gz, coord_matrix):
    u = la.qmat(coord_matrix)
    g = la.qmat([list(r) for r in gz])
    ut = la.transpose(u)
    return la.mat_mul(ut, la.mat_mul(g, u)) == g


def apply_orthogonal(form, coord_matrix):
    """Apply an isometry of the z-model (given on coordinates) to a form."""
    if not check_isometry(form.gz, coord_matrix):
        raise ValueError("matrix is not an isometry of the z-model")
    g = la.qmat([list(r) for r in form.gz])
    u = la.qmat(coord_matrix)
    uinv = la.mat_inverse(u)
    # coefficient at kappa of the result = coefficient at g^{-1}-action:
    # keys transform contravariantly: kappa -> G u G^{-1} kappa
    key_mat = la.mat_mul(g, la.mat_mul(uinv, la.mat_inverse(g)))
    key_mat = la.transpose(key_mat)
    return form.apply_key_matrix(key_mat)


def d4_sigma_reflections():
    """The two 1-vector reflections used for the D4 products, on euclidean
    coordinates of the D4 model."""
    s1 = _euclid_reflection([Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(1, 2)])
    s2 = _euclid_reflection([Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2)])
    return s1, s2


def _euclid_reflection(v):
    n = len(v)
    vnorm = sum(x * x for x in v)
    mat = [[Q(int(i == j)) - 2 * v[i] * v[j] / vnorm for j in range(n)]
           for i in range(n)]
    return mat


def a1_sigma_reflections():
    """Reflections sigma_{(a1+a2+a3-a4)/4}, sigma_{(a1+a2+a3+a4)/4} on the
    4A1 model (coordinates of the a_i basis)."""
    g = identity_gz(4, 2)
    v1 = [Q(1, 4), Q(1, 4), Q(1, 4), Q(-1, 4)]
    v2 = [Q(1, 4), Q(1, 4), Q(1, 4), Q(1, 4)]

    def refl_coords(v):
        gq = la.qmat(g)
        vnorm = la.gram_dot(gq, v, v)
        gv = la.mat_vec(gq, v)
        return [[Q(int(i == j)) - 2 * v[i] * gv[j] / vnorm
                 for j in range(4)] for i in range(4)]

    return refl_coords(v1), refl_coords(v2)


def product_forms(name, n_max, m_max):
    """The product constructions F_24 (U(2)+D4) and F_6 (U(4)+D4)."""
    name = name.replace(" ", "")
    if name in ("F24", "F_24", "F24_U2D4"):
        base_cap_n = Q(n_max)
        psi = psi_tower_Dk(4, Q(n_max) * Q(m_max) + 2)
        d8d4 = jacobi_lift(psi, n_max, m_max)
        s1, s2 = d4_sigma_reflections()
        f1 = apply_orthogonal(d8d4, s1)
        f2 = apply_orthogonal(d8d4, s2)
        return d8d4 * f1 * f2
    if name in ("F6", "F_6", "F6_U4D4"):
        d24 = _delta2_4a1(n_max, m_max)
        s1, s2 = a1_sigma_reflections()
        f1 = apply_orthogonal(d24, s1)
        f2 = apply_orthogonal(d24, s2)
        return d24 * f1 * f2
    raise ValueError(f"unknown product form {name}")
