"""Exact truncated Fourier series: univariate q-series with fractional
exponents and Jacobi-form expansions over a lattice dual.

Conventions.  A Jacobi series is stored as a map
    (n, kappa) -> integer
representing  sum f(n,kappa) q^n zeta^kappa  with
    q^n = e^{2 pi i n tau},   zeta^kappa = e^{2 pi i (ell, z)},
where kappa lists the pairings of ell against the chosen z-coordinates.
The z-model carries a Gram matrix gz; norms of keys are computed with its
inverse: (ell, ell) = kappa^T gz^{-1} kappa.  Exponents n are stored as
integers scaled by a per-series denominator, keys scaled by `kden`.

Every series records the q-order below which it is guaranteed complete;
binary operations propagate the minimum.  All coefficients are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from . import _linalg as la

Q = Fraction


def kronecker_minus4(m):
    """Kronecker symbol (-4/m): 0 for even m, +1 for m = 1 (4), -1 for m = 3 (4)."""
    m = int(m)
    if m % 2 == 0:
        return 0
    return 1 if m % 4 in (1, -3) else -1


def sigma1(n):
    n = int(n)
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d != n // d:
                total += n // d
        d += 1
    return total


# ---------------------------------------------------------------------------
# univariate q-series


class QSeries:
    """Sparse exact q-series; exponents are integers / den, complete < order."""

    __slots__ = ("den", "coeffs", "order")

    def __init__(self, den, coeffs, order):
        self.den = den
        self.coeffs = coeffs
        self.order = Q(order)

    @classmethod
    def one(cls, order):
        return cls(1, {0: 1}, order)

    @classmethod
    def monomial(cls, exponent, coeff, order):
        e = Q(exponent)
        return cls(e.denominator, {e.numerator: coeff}, order)

    def copy(self):
        return QSeries(self.den, dict(self.coeffs), self.order)

    def exponents(self):
        return sorted(Q(e, self.den) for e in self.coeffs)

    def coefficient(self, exponent):
        e = Q(exponent) * self.den
        if e.denominator != 1:
            return 0
        return self.coeffs.get(int(e), 0)

    def rescaled(self, new_den):
        if new_den == self.den:
            return self
        assert new_den % self.den == 0
        f = new_den // self.den
        return QSeries(new_den, {e * f: c for e, c in self.coeffs.items()},
                       self.order)

    def _join(self, other):
        d = lcm(self.den, other.den)
        return self.rescaled(d), other.rescaled(d)

    def __add__(self, other):
        a, b = self._join(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, 0) + c
            if not out[e]:
                del out[e]
        return QSeries(a.den, out, min(a.order, b.order))

    def __neg__(self):
        return QSeries(self.den, {e: -c for e, c in self.coeffs.items()},
                       self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return QSeries(self.den, {}, self.order)
        return QSeries(self.den, {e: c * v for e, v in self.coeffs.items()},
                       self.order)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b = self._join(other)
        lead_a = min(a.coeffs) if a.coeffs else 0
        lead_b = min(b.coeffs) if b.coeffs else 0
        cap = min(a.order + Q(lead_b, a.den), b.order + Q(lead_a, b.den))
        cap_scaled = cap * a.den
        out = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = e1 + e2
                if e >= cap_scaled:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: c for e, c in out.items() if c}
        return QSeries(a.den, out, cap)

    def __pow__(self, k):
        if k < 0:
            return QSeries.one(self.order).div(self) ** (-k)
        result = QSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def div(self, other):
        """Exact division; the divisor's lowest term must be a monomial unit."""
        a, b = self._join(other)
        if not b.coeffs:
            raise ZeroDivisionError("division by zero series")
        lead = min(b.coeffs)
        lead_c = b.coeffs[lead]
        if lead_c not in (1, -1):
            # allow rational leading coefficients too
            lead_c = Q(lead_c)
        cap = min(a.order, b.order) - Q(lead, b.den)
        cap_scaled = cap * a.den
        rem = dict(a.coeffs)
        out = {}
        b_rest = sorted((e, c) for e, c in b.coeffs.items() if e != lead)
        while rem:
            e0 = min(rem)
            c0 = rem.pop(e0)
            e = e0 - lead
            if e >= cap_scaled:
                continue
            c = c0 / lead_c if isinstance(lead_c, Q) else c0 * lead_c
            if isinstance(c, Q) and c.denominator == 1:
                c = c.numerator
            out[e] = c
            for eb, cb in b_rest:
                et = e + eb
                if et - lead >= cap_scaled + 0:
                    pass
                rem[et] = rem.get(et, 0) - c * cb
                if not rem[et]:
                    del rem[et]
        out = {e: c for e, c in out.items() if c}
        return QSeries(a.den, out, cap)

    def substitute_exponent(self, t):
        """q -> q^t for a positive rational t (t = 2 gives f(2 tau))."""
        t = Q(t)
        den = self.den * t.denominator
        out = {}
        for e, c in self.coeffs.items():
            out[e * t.numerator] = c
        return QSeries(den, out, self.order * t)

    def residue_part(self, residue):
        """Keep terms with exponent congruent to `residue` mod 1."""
        r = Q(residue)
        out = {}
        for e, c in self.coeffs.items():
            if (Q(e, self.den) - r).denominator == 1:
                out[e] = c
        return QSeries(self.den, out, self.order)

    def truncate(self, order):
        order = Q(order)
        cap = order * self.den
        return QSeries(self.den,
                       {e: c for e, c in self.coeffs.items() if e < cap},
                       min(order, self.order))

    def dump(self):
        from .lattice import qstr

        return "\n".join(f"n={qstr(Q(e, self.den))} c={c}"
                         for e, c in sorted(self.coeffs.items()))


def eta(order):
    """Dedekind eta = q^{1/24} prod (1 - q^n), exact to the given order."""
    order = Q(order)
    # product via Euler's pentagonal number theorem
    coeffs = {}
    n = 0
    # prod(1-q^n) = sum_k (-1)^k q^{k(3k-1)/2}
    k = 0
    while True:
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if Q(e) + Q(1, 24) < order:
                coeffs[24 * e + 1] = coeffs.get(24 * e + 1, 0) + (-1) ** abs(kk)
        if Q(k * (3 * k - 1), 2) >= order and Q(k * (3 * k + 1), 2) >= order:
            break
        k += 1
    return QSeries(24, coeffs, order)


def eta_power(p, order):
    """eta^p computed to the given order (p any integer)."""
    base = eta(order + 2)
    if p >= 0:
        out = base ** p
    else:
        out = QSeries.one(order + 2).div(base) ** (-p)
    return out.truncate(order)


def delta(order):
    """Ramanujan Delta = eta^24."""
    return eta_power(24, order)


# ---------------------------------------------------------------------------
# Jacobi Fourier expansions


class JacobiFourier:
    """Truncated Fourier expansion of a Jacobi form over a z-model.

    coeffs: {(n_scaled, key_tuple_scaled): int}, exponents n = n_scaled/nden,
    keys kappa = key/kden.  Complete for n < order.
    """

    __slots__ = ("gz", "gzinv", "nden", "kden", "coeffs", "weight", "index",
                 "char", "order")

    def __init__(self, gz, coeffs, order, weight=None, index=None, char="",
                 nden=1, kden=1, gzinv=None):
        self.gz = tuple(tuple(Q(x) for x in row) for row in gz)
        self.gzinv = gzinv or la.mat_inverse([list(r) for r in self.gz])
        self.nden = nden
        self.kden = kden
        self.coeffs = coeffs
        self.weight = None if weight is None else Q(weight)
        self.index = None if index is None else Q(index)
        self.char = char
        self.order = Q(order)

    @property
    def nvars(self):
        return len(self.gz)

    def copy(self):
        return JacobiFourier(self.gz, dict(self.coeffs), self.order,
                             self.weight, self.index, self.char,
                             self.nden, self.kden, self.gzinv)

    def key_norm(self, key):
        """(ell, ell) for a scaled key tuple."""
        kap = [Q(x, self.kden) for x in key]
        return la.gram_dot(self.gzinv, kap, kap)

    def coefficient(self, n, kappa):
        ns = Q(n) * self.nden
        if ns.denominator != 1:
            return 0
        key = tuple(Q(x) * self.kden for x in kappa)
        if any(x.denominator != 1 for x in key):
            return 0
        return self.coeffs.get((int(ns), tuple(int(x) for x in key)), 0)

    def nlevels(self):
        levels = {}
        for (ns, key), c in self.coeffs.items():
            levels.setdefault(ns, {})[key] = c
        return dict(sorted(levels.items()))

    def support_residue(self):
        """The common residue of all exponents mod 1; raises if mixed."""
        res = {ns % self.nden for (ns, _k) in self.coeffs}
        if len(res) > 1:
            raise ValueError("mixed exponent residues")
        return Q(res.pop() if res else 0, self.nden)

    def rescale_grid(self, nden=None, kden=None):
        nden = nden or self.nden
        kden = kden or self.kden
        assert nden % self.nden == 0 and kden % self.kden == 0
        nf = nden // self.nden
        kf = kden // self.kden
        if nf == 1 and kf == 1:
            return self
        out = {}
        for (ns, key), c in self.coeffs.items():
            out[(ns * nf, tuple(x * kf for x in key))] = c
        return JacobiFourier(self.gz, out, self.order, self.weight,
                             self.index, self.char, nden, kden, self.gzinv)

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
        w = a.weight if a.weight == b.weight else None
        ix = a.index if a.index == b.index else None
        return JacobiFourier(a.gz, out, min(a.order, b.order), w, ix,
                             a.char or b.char, a.nden, a.kden, a.gzinv)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return JacobiFourier(self.gz, {}, self.order, self.weight,
                                 self.index, self.char, self.nden, self.kden,
                                 self.gzinv)
        return JacobiFourier(self.gz,
                             {k: c * v for k, v in self.coeffs.items()},
                             self.order, self.weight, self.index, self.char,
                             self.nden, self.kden, self.gzinv)

    def __mul__(self, other):
        if not isinstance(other, JacobiFourier):
            return self.scale(other)
        a, b = self._join(other)
        lead_a = min((ns for ns, _ in a.coeffs), default=0)
        lead_b = min((ns for ns, _ in b.coeffs), default=0)
        cap = min(a.order + Q(lead_b, a.nden), b.order + Q(lead_a, a.nden))
        cap_scaled = cap * a.nden
        if len(b.coeffs) < len(a.coeffs):
            a, b = b, a
        out = {}
        bitems = sorted(b.coeffs.items())
        for (n1, k1), c1 in a.coeffs.items():
            for (n2, k2), c2 in bitems:
                n = n1 + n2
                if n >= cap_scaled:
                    break
                key = (n, tuple(x + y for x, y in zip(k1, k2)))
                out[key] = out.get(key, 0) + c1 * c2
        out = {k: c for k, c in out.items() if c}
        w = None if (a.weight is None or b.weight is None) else a.weight + b.weight
        ix = None if (a.index is None or b.index is None) else a.index + b.index
        return JacobiFourier(a.gz, out, cap, w, ix, a.char or b.char,
                             a.nden, a.kden, a.gzinv)

    def mul_qseries(self, qs):
        out = {}
        nden = lcm(self.nden, qs.den)
        a = self.rescale_grid(nden=nden)
        f = nden // qs.den
        lead_q = min(qs.coeffs, default=0)
        cap = min(a.order + 0, qs.order + min((Q(ns, nden) for ns, _ in a.coeffs),
                                              default=Q(0)))
        cap_scaled = cap * nden
        for (n1, k1), c1 in a.coeffs.items():
            for e2, c2 in qs.coeffs.items():
                n = n1 + e2 * f
                if n >= cap_scaled:
                    continue
                key = (n, k1)
                out[key] = out.get(key, 0) + c1 * c2
        out = {k: c for k, c in out.items() if c}
        return JacobiFourier(a.gz, out, cap, None, a.index, a.char,
                             nden, a.kden, a.gzinv)

    def substitute(self, tau_mult, z_mult):
        """phi(t tau, u z): exponents n -> t n, keys -> u kappa."""
        t, u = Q(tau_mult), Q(z_mult)
        nden = self.nden * t.denominator
        kden = self.kden * u.denominator
        out = {}
        for (ns, key), c in self.coeffs.items():
            n2 = ns * t.numerator
            k2 = tuple(x * u.numerator for x in key)
            out[(n2, k2)] = c
        return JacobiFourier(self.gz, out, self.order * t, self.weight,
                             None if self.index is None else self.index * t,
                             self.char, nden, kden, self.gzinv)

    def residue_part(self, residue):
        """Keep terms whose exponent is congruent to residue mod 1."""
        r = Q(residue)
        out = {}
        for (ns, key), c in self.coeffs.items():
            if (Q(ns, self.nden) - r).denominator == 1:
                out[(ns, key)] = c
        return JacobiFourier(self.gz, out, self.order, self.weight,
                             self.index, self.char, self.nden, self.kden,
                             self.gzinv)

    def pullback(self, zmap, new_gz=None):
        """Restrict to a subspace: z_old = M z_new (M has old-dim rows).

        Keys transform by kappa -> M^T kappa; coefficients with equal image
        are summed.
        """
        m = la.qmat(zmap)
        rows = len(m)
        cols = len(m[0]) if m else 0
        if rows != self.nvars:
            raise ValueError("zmap row count must match the old z-dimension")
        if new_gz is None:
            mt = la.transpose(m)
            new_gz = la.mat_mul(mt, la.mat_mul([list(r) for r in self.gz], m))
        kden = self.kden
        scale = 1
        for row in m:
            for x in row:
                scale = lcm(scale, Q(x).denominator)
        new_kden = kden * scale
        out = {}
        for (ns, key), c in self.coeffs.items():
            newkey = tuple(int(sum(Q(m[i][j]) * key[i] for i in range(rows))
                               * scale)
                           for j in range(cols))
            k = (ns, newkey)
            out[k] = out.get(k, 0) + c
        out = {k: c for k, c in out.items() if c}
        return JacobiFourier(new_gz, out, self.order, self.weight,
                             self.index, self.char, self.nden, new_kden)

    def apply_key_matrix(self, mat):
        """Relabel keys by an exact linear map kappa -> mat . kappa."""
        m = la.qmat(mat)
        out = {}
        for (ns, key), c in self.coeffs.items():
            newkey = tuple(sum(m[i][j] * key[j] for j in range(len(key)))
                           for i in range(len(key)))
            if any(x.denominator != 1 for x in newkey):
                raise ValueError("key matrix does not preserve the key lattice")
            out[(ns, tuple(int(x) for x in newkey))] = c
        return JacobiFourier(self.gz, out, self.order, self.weight,
                             self.index, self.char, self.nden, self.kden,
                             self.gzinv)

    def div(self, other):
        """Exact division level by level (Laurent-polynomial long division)."""
        a, b = self._join(other)
        alev = a.nlevels()
        blev = b.nlevels()
        if not blev:
            raise ZeroDivisionError("division by zero series")
        b0n = min(blev)
        b0 = blev[b0n]
        cap = min(a.order, b.order) - Q(b0n, b.nden)
        cap_scaled = cap * a.nden
        bn_rest = sorted(blev.items())[1:]
        pending = {n: dict(level) for n, level in alev.items()}
        result = {}
        while pending:
            n0 = min(pending)
            level = pending.pop(n0)
            if not level:
                continue
            cn = n0 - b0n
            if cn >= cap_scaled:
                continue
            cq = _laurent_div_exact(level, b0)
            if cq is None:
                raise ZeroDivisionError("series not divisible at level "
                                        f"{Q(n0, a.nden)}")
            for key, c in cq.items():
                result[(cn, key)] = c
            for bn, blevel in bn_rest:
                tn = cn + bn
                tgt = pending.setdefault(tn, {})
                for k1, c1 in cq.items():
                    for k2, c2 in blevel.items():
                        kk = tuple(x + y for x, y in zip(k1, k2))
                        tgt[kk] = tgt.get(kk, 0) - c1 * c2
                        if not tgt[kk]:
                            del tgt[kk]
        result = {k: c for k, c in result.items() if c}
        return JacobiFourier(a.gz, result, cap,
                             None if (a.weight is None or b.weight is None)
                             else a.weight - b.weight,
                             None if (a.index is None or b.index is None)
                             else a.index - b.index,
                             "", a.nden, a.kden, a.gzinv)

    def dump(self):
        from .lattice import qstr

        lines = []
        for (ns, key), c in sorted(self.coeffs.items()):
            kap = ",".join(qstr(Q(x, self.kden)) for x in key)
            lines.append(f"n={qstr(Q(ns, self.nden))} l=({kap}) c={c}")
        return "\n".join(lines)


def _laurent_div_exact(p, d):
    """Exact division of Laurent polynomials given as {key: coeff} dicts.

    Uses lexicographic term order; the divisor's leading coefficient must be
    a unit (+-1).  Returns the quotient or None if not divisible.
    """
    if not d:
        raise ZeroDivisionError
    dlead = max(d)
    dc = d[dlead]
    if dc not in (1, -1):
        raise ZeroDivisionError("divisor leading coefficient is not a unit")
    p = dict(p)
    out = {}
    guard = 0
    limit = 200000 + 100 * (len(p) + 1) * (len(d) + 1)
    while p:
        guard += 1
        if guard > limit:
            return None
        plead = max(p)
        c = p[plead] * dc
        key = tuple(x - y for x, y in zip(plead, dlead))
        out[key] = out.get(key, 0) + c
        for dk, dv in d.items():
            kk = tuple(x + y for x, y in zip(key, dk))
            p[kk] = p.get(kk, 0) - c * dv
            if not p[kk]:
                del p[kk]
    return out


# ---------------------------------------------------------------------------
# standard Jacobi forms


def theta_jacobi(order, gz=((2,),), form=None):
    """The odd Jacobi theta-series as a weight-1/2, index-1/2 form.

    theta(tau, z) = sum_m (-4/m) q^{m^2/8} zeta^{m/2}; by default on the A1
    z-model (gz = [[2]]) with keys m/2.
    """
    order = Q(order)
    if form is None:
        form = tuple(1 if i == 0 else 0 for i in range(len(gz)))
    form = tuple(Q(f) for f in form)
    fden = 1
    for f in form:
        fden = lcm(fden, f.denominator)
    kden = 2 * fden
    coeffs = {}
    m = 1
    while Q(m * m, 8) < order:
        for mm in (m, -m):
            c = kronecker_minus4(mm)
            # actual key is (mm/2) * form, stored scaled by kden
            key = tuple(int(mm * f * fden) for f in form)
            coeffs[(mm * mm, key)] = c
        m += 2
    return JacobiFourier(gz, coeffs, order, weight=Q(1, 2), index=Q(1, 2),
                         char="v_eta^3 x v_H", nden=8, kden=kden)


def theta_block(forms, eta_exponent, order, gz):
    """eta^p * prod_i theta(tau, f_i . z) expanded exactly.

    `forms` are integer key rows (the z-dual increments of each theta).
    The index is the scalar m with sum f_i f_i^T = m * gz; raises if the
    quadratic form is not proportional to gz.
    """
    order = Q(order)
    n = len(gz)
    s = [[0] * n for _ in range(n)]
    for f in forms:
        for i in range(n):
            for j in range(n):
                s[i][j] += f[i] * f[j]
    ratio = None
    for i in range(n):
        for j in range(n):
            g = Q(gz[i][j])
            if g == 0:
                if s[i][j] != 0:
                    raise ValueError("theta block index not proportional to gz")
                continue
            r = Q(s[i][j]) / g
            if ratio is None:
                ratio = r
            elif ratio != r:
                raise ValueError("theta block index not proportional to gz")
    index = ratio
    weight = Q(eta_exponent, 2) + Q(len(forms), 2)
    out = None
    for f in forms:
        factor = theta_jacobi(order + 1, gz=gz, form=tuple(f))
        out = factor if out is None else out * factor
    etaq = eta_power(eta_exponent, order + 1)
    result = out.mul_qseries(etaq) if out is not None else None
    if result is None:
        raise ValueError("need at least one theta factor")
    result = JacobiFourier(result.gz, result.coeffs,
                           min(result.order, order), weight, index,
                           f"eta^{eta_exponent} theta-block",
                           result.nden, result.kden, result.gzinv)
    return result


def lattice_theta(lattice, order):
    """Theta series of an even positive definite lattice as a Jacobi form.

    Keys are gram * (basis coords); z-model gram = the lattice gram.
    """
    order = Q(order)
    if not lattice.is_positive_definite():
        raise ValueError("lattice_theta needs a positive definite lattice")
    gz = [list(r) for r in lattice.gram]
    coeffs = {(0, (0,) * lattice.rank): 1}
    for v, norm in lattice.short_vectors(2 * order):
        ns = Q(norm, 2)
        if ns >= order or ns.denominator != 1:
            continue
        key = tuple(int(sum(lattice.gram[i][j] * v[j]
                            for j in range(lattice.rank)))
                    for i in range(lattice.rank))
        k = (int(ns), key)
        coeffs[k] = coeffs.get(k, 0) + 1
    return JacobiFourier(gz, coeffs, order, weight=Q(lattice.rank, 2),
                         index=Q(1), char="trivial", nden=1, kden=1)


def hecke_Tminus(phi, m):
    """The Hecke operator T_-(m) at the coefficient level.

    Output coefficient at (N, L):  sum over a d = m of  a^k d f(N d / a, L / a)
    restricted to n0 = N d / a in the support grid with n0 / d in the same
    residue class, and L / a in the key grid.
    """
    if phi.weight is None:
        raise ValueError("T_-(m) needs weight metadata")
    k = phi.weight
    if k.denominator != 1:
        raise ValueError("T_-(m) implemented for integral weight")
    k = int(k)
    theta = phi.support_residue()
    out = {}
    pairs = [(a, m // a) for a in range(1, m + 1) if m % a == 0]
    order = min(phi.order * a / d for a, d in pairs)
    for (ns, key), c in phi.coeffs.items():
        n = Q(ns, phi.nden)
        for a, d in pairs:
            # n0 = n must satisfy n / d in theta + Z; output N = n a / d
            if ((n / d) - theta).denominator != 1:
                continue
            bign = n * a / d
            if bign >= order:
                continue
            bns = bign * phi.nden
            if bns.denominator != 1:
                continue
            newkey = tuple(x * a for x in key)
            kk = (int(bns), newkey)
            out[kk] = out.get(kk, 0) + a ** k * d * c
    out = {kk: c for kk, c in out.items() if c}
    return JacobiFourier(phi.gz, out, order, phi.weight,
                         None if phi.index is None else phi.index * m,
                         phi.char, phi.nden, phi.kden, phi.gzinv)
