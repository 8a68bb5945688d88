"""Weight-0 input forms, Borcherds product expansion, Weyl triples,
quasi-pull-back weight arithmetic, denominator-identity checks and
Kac--Moody grading data.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from . import _linalg as la
from .lattice import build, qstr
from .lifting import OrthogonalFourier, identity_gz, A2_GZ, block_gz
from .qseries import JacobiFourier, QSeries, delta, eta_power
from .vinberg import is_positive_vector

Q = Fraction


# ---------------------------------------------------------------------------
# component class machinery for Niemeier hosts


def _a1_classes():
    return ["0", "1"]


def _class_add(letter, a, b):
    if letter == "A1":
        return str((int(a) + int(b)) % 2)
    if letter == "A2":
        return str((int(a) + int(b)) % 3)
    if letter == "D":
        table = {"0": 0, "v": 1, "s": 2, "c": 3}
        inv = {v: k for k, v in table.items()}
        return inv[table[a] ^ table[b]]
    if letter == "E":
        return "0"
    raise ValueError(letter)


def _component_tag(letter, rank):
    if letter == "A" and rank == 1:
        return "A1"
    if letter == "A" and rank == 2:
        return "A2"
    if letter == "D":
        return "D"
    if letter == "E":
        return "E"
    raise ValueError((letter, rank))


_GLUE_WORDS_CACHE = {}


def _glue_group_words(host):
    """All glue words of a Niemeier host as class-label tuples."""
    from . import rootsys as rs

    if host.name in _GLUE_WORDS_CACHE:
        return _GLUE_WORDS_CACHE[host.name]
    comps = host.components
    tags = [_component_tag(letter, rank) for (letter, rank, _off) in comps]
    if host.name == "3E8":
        return [("0", "0", "0")], tags
    gens = []
    if host.name == "24A1":
        raw = rs._load_words("golay24.txt")
        for w in raw:
            gens.append(tuple(str(int(x) % 2) for x in w))
    elif host.name == "12A2":
        raw = rs._load_words("golay12_ternary.txt")
        for w in raw:
            gens.append(tuple(str(int(x) % 3) for x in w))
    elif host.name == "3D8":
        for lab in rs._load_labels("d8_glue.txt"):
            gens.append(tuple(lab))
    elif host.name == "6D4":
        for lab in rs._load_labels("hexacode_d4.txt"):
            gens.append(tuple(lab))
    else:
        raise ValueError(f"unsupported host {host.name}")
    zero = tuple("0" for _ in comps)
    seen = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for base in frontier:
            for g in gens:
                w = tuple(_class_add(t, a, b)
                          for t, a, b in zip(tags, base, g))
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    result = (sorted(seen), tags)
    _GLUE_WORDS_CACHE[host.name] = result
    return result


# coset theta series of the component lattices -------------------------------

_COSET_CACHE = {}


def _component_coset_theta(tag, rank, label, order):
    """Scalar theta of a class coset of an ADE component, to q^order."""
    cache_key = (tag, rank, label, order)
    if cache_key in _COSET_CACHE:
        return _COSET_CACHE[cache_key]
    if tag == "A1":
        # vectors (x + label/2) a with a^2 = 2: exponent (x + d)^2
        d = Q(int(label), 2)
        coeffs = {}
        den = 4
        x = 0
        while True:
            added = False
            for s in ({x, -x} if x else {0}):
                e = (Q(s) + d) ** 2
                if e < order:
                    coeffs[int(e * den)] = coeffs.get(int(e * den), 0) + 1
                    added = True
            if not added and x > order + 2:
                break
            x += 1
        series = QSeries(den, coeffs, Q(order))
    else:
        lat, class_vec = _component_model(tag, rank, label)
        coeffs = {}
        den = 4
        # enumerate coset vectors of norm < 2*order
        if all(x == 0 for x in class_vec):
            vecs = [((0,) * lat.rank, Q(0))] + \
                lat.short_vectors(2 * order)
        else:
            vecs = lat._enumerate(2 * order, center=list(class_vec),
                                  exact=False)
        for _v, norm in vecs:
            e = norm / 2
            if e < order:
                coeffs[int(e * den)] = coeffs.get(int(e * den), 0) + 1
        series = QSeries(den, coeffs, Q(order))
    _COSET_CACHE[cache_key] = series
    return series


def _component_model(tag, rank, label):
    """Component lattice and the class representative in basis coords."""
    from . import rootsys as rs

    if tag == "A2":
        lat = build("A2")
        vec = rs._a2_class_in_basis(label)
    elif tag == "D":
        lat = build(f"D{rank}")
        vec = rs._dn_class_in_basis(rank, label)
    elif tag == "E":
        lat = build(f"E{rank}")
        vec = [Q(0)] * rank
    elif tag == "A1":
        lat = build("A1")
        vec = rs._a1_class_in_basis(label)
    else:
        raise ValueError(tag)
    return lat, vec


# key maps: component coset vectors -> z-model keys --------------------------


def _a1_key(coords):
    # model gz = 2 I: key = 2 x
    return (2 * Q(coords[0]),)


def _a2_key(coords):
    # standard-basis model: key = gram . coords
    x, y = Q(coords[0]), Q(coords[1])
    return (2 * x - y, -x + 2 * y)


def _dn_key(rank, coords):
    # euclidean model: key = euclidean coordinates
    from . import rootsys as rs

    basis = rs._dn_basis_matrix(rank)
    out = [Q(0)] * rank
    for c, row in zip(coords, basis):
        for j in range(rank):
            out[j] += Q(c) * row[j]
    return tuple(out)


def _e8_key(lat, coords):
    # basis-coordinate model with gz = gram: key = gram . coords
    return tuple(sum(lat.gram[i][j] * Q(coords[j]) for j in range(8))
                 for i in range(8))


def host_k_models(host, k_indices):
    """z-model data for the selected components: (gz, key_fn per component)."""
    blocks = []
    for ci in k_indices:
        letter, rank, _off = host.components[ci]
        tag = _component_tag(letter, rank)
        if tag == "A1":
            blocks.append(([[2]], _a1_key, 1))
        elif tag == "A2":
            blocks.append((A2_GZ, _a2_key, 2))
        elif tag == "D":
            blocks.append((identity_gz(rank),
                           lambda c, r=rank: _dn_key(r, c), rank))
        elif tag == "E":
            lat = build(f"E{rank}")
            blocks.append(([list(r) for r in lat.gram],
                           lambda c, l=lat: _e8_key(l, c), rank))
    gz = []
    total = sum(b[2] for b in blocks)
    offset = 0
    gz = [[Q(0)] * total for _ in range(total)]
    for bgz, _fn, r in blocks:
        for i in range(r):
            for j in range(r):
                gz[offset + i][offset + j] = Q(bgz[i][j])
        offset += r
    return gz, blocks


class BorcherdsInput:
    """A weight-0 nearly holomorphic Jacobi form with integral coefficients."""

    def __init__(self, phi, name=""):
        self.phi = phi
        self.name = name
        for (ns, key), c in phi.coeffs.items():
            if not isinstance(c, int):
                raise ValueError("Borcherds input needs integer coefficients")

    def negative_norm_support(self):
        out = []
        for (ns, key), c in self.phi.coeffs.items():
            n = Q(ns, self.phi.nden)
            if 2 * n - self.phi.key_norm(key) < 0:
                out.append((n, key, c))
        return out


def phi0_from_niemeier(host_name, k_indices, order, n8=False):
    """The pullback of theta_N / Delta to a component selection K of N(R).

    For n8=True the selection must be the support of a Golay octad inside
    N(24A1) and K is Nikulin's lattice N8.
    """
    from . import rootsys as rs

    host = rs.niemeier(host_name)
    order = Q(order)
    words, tags = _glue_group_words(host)
    if n8:
        if host.name != "24A1":
            raise ValueError("N8 lives inside N(24A1)")
        octad = _find_octad(words)
        k_indices = sorted(octad)
    k_set = set(k_indices)
    for ci in k_set:
        if ci >= len(host.components):
            raise ValueError("component index out of range")
    perp = [i for i in range(len(host.components)) if i not in k_set]
    theta_order = order + 2
    # group the glue words by their K-pattern; accumulate complement series
    s_by_pattern = {}
    perp_products = {}
    for w in words:
        pat = tuple(w[i] for i in sorted(k_set))
        rest = tuple(sorted(w[i] for i in perp))
        if rest not in perp_products:
            total = QSeries.one(theta_order)
            for i in perp:
                letter, rank, _off = host.components[i]
                th = _component_coset_theta(tags[i], rank, w[i], theta_order)
                total = total * th
            perp_products[rest] = total
        total = perp_products[rest]
        if pat in s_by_pattern:
            s_by_pattern[pat] = s_by_pattern[pat] + total
        else:
            s_by_pattern[pat] = total
    # K-part: enumerate coset vectors per pattern and assemble
    gz, blocks = host_k_models(host, sorted(k_set))
    dim = len(gz)
    nden = 1
    kden = 1
    raw = {}
    for pat, s_series in s_by_pattern.items():
        combos = [((), Q(0))]
        for (ci, lab), (bgz, key_fn, r) in zip(
                zip(sorted(k_set), pat), blocks):
            letter, rank, _off = host.components[ci]
            tag = _component_tag(letter, rank)
            lat, class_vec = _component_model(tag, rank, lab)
            if all(x == 0 for x in class_vec):
                vecs = [((0,) * lat.rank, Q(0))] + \
                    lat.short_vectors(2 * theta_order)
            else:
                vecs = lat._enumerate(2 * theta_order, center=list(class_vec),
                                      exact=False)
            new = []
            for prefix, pnorm in combos:
                for v, norm in vecs:
                    if pnorm + norm >= 2 * theta_order:
                        continue
                    key_part = key_fn(v)
                    new.append((prefix + tuple(key_part), pnorm + norm))
            combos = new
        for key, norm in combos:
            # q-exponent of the K-part: norm/2; convolve with s_series
            base = norm / 2
            for es, cs in s_series.coeffs.items():
                n = base + Q(es, s_series.den)
                if n >= theta_order:
                    continue
                raw_key = (n, key)
                raw[raw_key] = raw.get(raw_key, 0) + cs
    # normalize grids
    for n, key in raw:
        nden = lcm(nden, Q(n).denominator)
        for x in key:
            kden = lcm(kden, Q(x).denominator)
    coeffs = {}
    for (n, key), c in raw.items():
        coeffs[(int(n * nden), tuple(int(x * kden) for x in key))] = c
    theta_k = JacobiFourier(gz, coeffs, theta_order, weight=Q(12), index=Q(1),
                            char="theta_N|K", nden=nden, kden=kden)
    inv_delta = QSeries.one(order + 2).div(delta(order + 2))
    phi = theta_k.mul_qseries(inv_delta)
    phi = JacobiFourier(phi.gz, phi.coeffs, order, Q(0), Q(1),
                        "nearly holomorphic", phi.nden, phi.kden)
    return BorcherdsInput(phi, name=f"phi0({host_name}|{sorted(k_set)})")


def _find_octad(words):
    for w in words:
        support = [i for i, x in enumerate(w) if x != "0"]
        if len(support) == 8:
            return support
    raise ValueError("no octad found in the glue code")


# ---------------------------------------------------------------------------
# Weyl triples and the product expansion


class WeylTriple:
    def __init__(self, A, B, C, kden):
        self.A = Q(A)
        self.B = tuple(Q(x) for x in B)  # key-space coordinates
        self.C = Q(C)
        self.kden = kden

    def to_json(self):
        return {"A": qstr(self.A), "B": [qstr(x) for x in self.B],
                "C": qstr(self.C)}


def weyl_triple(f):
    """(A, B, C) of a Borcherds input from its q^0 layer."""
    phi = f.phi if isinstance(f, BorcherdsInput) else f
    layer = phi.nlevels().get(0, {})
    rank = phi.nvars
    total = sum(layer.values())
    A = Q(total, 24)
    B = [Q(0)] * rank
    C = Q(0)
    for key, c in layer.items():
        kap = [Q(x, phi.kden) for x in key]
        lam = la.mat_vec([list(r) for r in phi.gzinv], kap)
        if is_positive_vector(lam):
            for i in range(rank):
                B[i] -= Q(c) * kap[i] / 2
        C += c * la.gram_dot(phi.gzinv, kap, kap)
    C = C / (2 * rank)
    return WeylTriple(A, B, C, phi.kden)


def transport_weyl_vector(host_name, k_indices, f):
    """(A, B, C) as a vector of U + K in standard basis coordinates:
    A c1 + C c2 + B, with B converted from the z-model to the K basis."""
    from . import rootsys as rs

    host = rs.niemeier(host_name)
    wt = weyl_triple(f)
    phi = f.phi if isinstance(f, BorcherdsInput) else f
    lam_model = la.mat_vec([list(r) for r in phi.gzinv],
                           [Q(x) for x in wt.B])
    coords = []
    offset = 0
    for ci in sorted(k_indices):
        letter, rank, _off = host.components[ci]
        block = lam_model[offset:offset + rank]
        if letter == "D":
            basis = rs._dn_basis_matrix(rank)
            bt = la.transpose(basis)
            block = la.solve(bt, block)
        coords.extend(block)
        offset += rank
    return tuple([wt.A, wt.C] + [Q(x) for x in coords])


def borcherds_product(f, n_max, m_max):
    """Expansion of q^A zeta^B s^C prod (1 - q^n zeta^l s^m)^{f(nm, l)}.

    The product is over (n, l, m) > 0 (m > 0, or m = 0 and n > 0, or
    m = n = 0 and l > 0).  Computed slice by slice in s with exact
    arithmetic; the result box is n <= n_max, m <= m_max (absolute).
    """
    phi = f.phi if isinstance(f, BorcherdsInput) else f
    wt = weyl_triple(phi)
    A, B, C = wt.A, wt.B, wt.C
    n_budget = int(Q(n_max) - A)
    m_budget = int(Q(m_max) - C)
    if n_budget < 0 or m_budget < 0:
        raise ValueError("orders below the leading exponent")
    levels = phi.nlevels()
    rank = phi.nvars
    kden = phi.kden
    if phi.support_residue() != 0:
        raise ValueError("Borcherds input must have integral q-exponents")
    if phi.order <= n_budget * max(m_budget, 1):
        raise ValueError(
            f"need f(nm, l) to level {n_budget * max(m_budget, 1)} but the "
            f"input is only complete below {phi.order}")
    nden = phi.nden

    def flevel(j):
        js = Q(j) * nden
        if js.denominator != 1:
            return {}
        return levels.get(int(js), {})

    zero_key = (0,) * rank

    # packed integer keys: (n, kappa) in bit fields, additive under packing
    packer = _Packer(rank, n_budget, m_budget, kden, levels, phi.nden)
    pzero = packer.pack(0, zero_key)

    # --- zeta-only factors: prod_{l > 0} (1 - zeta^l)^{f(0, l)}
    p0 = {pzero: 1}
    for key, c in flevel(0).items():
        kap = [Q(x, kden) for x in key]
        lam = la.mat_vec([list(r) for r in phi.gzinv], kap)
        if not is_positive_vector(lam):
            continue
        if c < 0:
            raise ValueError("negative exponent on a zeta-only factor")
        factor = {pzero: 1, packer.pack(0, key): -1}
        for _ in range(c):
            p0 = packer.mul(p0, factor)

    # --- log of the q-carrying factors, by s-slice, scaled by L0^j factors
    # g[M] = -sum_{j*m = M} (1/j) sum_{n} f(n*m, l) q^{jn} zeta^{jl}
    from math import lcm as _lcm

    L0 = 1
    for j in range(1, max(n_budget, m_budget, 1) + 1):
        L0 = _lcm(L0, j)
    g = {M: {} for M in range(0, m_budget + 1)}
    neg_levels = [Q(ns, nden) for ns in levels if ns < 0]
    n_floor = int(min(neg_levels)) if neg_levels else 0
    for M in range(0, m_budget + 1):
        acc = g[M]  # scaled by L0
        for j in range(1, (m_budget if M else n_budget) + 1):
            if M and (M % j):
                continue
            if M and j > M:
                break
            m = M // j if M else 0
            lo = 1 if m == 0 else n_floor
            for n in range(lo, n_budget // j + 1):
                if n == 0 and m == 0:
                    continue
                lvl = flevel(n * m) if m else flevel(0)
                if not lvl:
                    continue
                scale = L0 // j
                for key, c in lvl.items():
                    if j * n > n_budget:
                        continue
                    kk = packer.pack(j * n, tuple(j * x for x in key))
                    acc[kk] = acc.get(kk, 0) - scale * c
        g[M] = {k: v for k, v in acc.items() if v}

    # --- exponentiate with integer scalings:
    # E0 = exp(g0) * L0^J J!   (J = n_budget)
    feJ = _factorial(n_budget)
    e0 = {pzero: L0 ** n_budget * feJ}
    term = {pzero: 1}
    for j in range(1, n_budget + 1):
        term = packer.mul(term, g[0])  # scaled by L0^j
        if not term:
            break
        f = L0 ** (n_budget - j) * (feJ // _factorial(j))
        for k, v in term.items():
            e0[k] = e0.get(k, 0) + f * v
    e0 = {k: v for k, v in e0.items() if v}
    d0 = L0 ** n_budget * feJ

    # W[M] = work[M] * L0^M M!:
    # W[M] = sum_j j L0^{j-1} (M-1)!/(M-j)! G_j W[M-j]
    slices = {0: e0}
    den_slice = {0: d0}
    work_scaled = {0: {pzero: 1}}
    for M in range(1, m_budget + 1):
        acc = {}
        for j in range(1, M + 1):
            gj = g.get(j)
            if not gj:
                continue
            prev = work_scaled.get(M - j)
            if not prev:
                continue
            f = j * L0 ** (j - 1) * (_factorial(M - 1) // _factorial(M - j))
            contrib = packer.mul(prev, gj)
            for k, v in contrib.items():
                acc[k] = acc.get(k, 0) + f * v
        work_scaled[M] = {k: v for k, v in acc.items() if v}
        slices[M] = packer.mul(work_scaled[M], e0)
        den_slice[M] = L0 ** M * _factorial(M) * d0

    # --- multiply by the zeta-only polynomial and shift by (A, B, C)
    out = {}
    b_scaled = [Q(x) * kden for x in B]
    bden = 1
    for x in b_scaled:
        bden = lcm(bden, x.denominator)
    out_kden = kden * bden
    out_nden = lcm(A.denominator, C.denominator)
    bshift = [int((Q(b)) * out_kden) for b in B]
    for M, sl in slices.items():
        sl = packer.mul(sl, p0)
        den = den_slice[M]
        mm = int((C + M) * out_nden)
        for pk, c in sl.items():
            if c == 0:
                continue
            if c % den:
                raise ValueError("non-integral Borcherds product coefficient")
            c //= den
            n, key = packer.unpack(pk)
            nn = int((A + n) * out_nden)
            kk = tuple(x * (out_kden // kden) + b
                       for x, b in zip(key, bshift))
            out[(nn, kk, mm)] = c
    return OrthogonalFourier(phi.gz, out, Q(n_max), Q(m_max), None,
                             out_nden, out_kden, phi.gzinv)


class _Packer:
    """Bit-packs (n, key) pairs into single integers; addition of packed
    values corresponds to componentwise addition."""

    BITS = 16

    def __init__(self, rank, n_budget, m_budget, kden, levels, nden):
        self.rank = rank
        self.n_budget = n_budget
        # bound the coordinate magnitudes that can appear
        kmax = 0
        for level in levels.values():
            for key in level:
                for x in key:
                    kmax = max(kmax, abs(x))
        reach = (kmax + 1) * (max(n_budget, m_budget, 1) + 1) * 4
        bits = self.BITS
        while reach >= (1 << (bits - 2)):
            bits += 8
        self.bits = bits
        self.offset = 1 << (bits - 1)
        self.mask = (1 << bits) - 1
        base = 0
        for i in range(rank + 1):
            base |= self.offset << (bits * i)
        self.base = base

    def pack(self, n, key):
        bits = self.bits
        v = (n + self.offset)
        for i, x in enumerate(key):
            v |= (x + self.offset) << (bits * (i + 1))
        return v

    def unpack(self, packed):
        bits = self.bits
        vals = []
        for i in range(self.rank + 1):
            vals.append(((packed >> (bits * i)) & self.mask) - self.offset)
        return vals[0], tuple(vals[1:])

    def mul(self, a, b):
        if len(b) < len(a):
            a, b = b, a
        base = self.base
        nb = self.n_budget
        mask = self.mask
        offset = self.offset
        out = {}
        get = out.get
        for ka, va in a.items():
            na = (ka & mask) - offset
            for kb, vb in b.items():
                n = na + (kb & mask) - offset
                if n > nb:
                    continue
                kk = ka + kb - base
                prev = get(kk)
                if prev is None:
                    out[kk] = va * vb
                else:
                    c = prev + va * vb
                    if c:
                        out[kk] = c
                    else:
                        del out[kk]
        return out


_FACT = [1]


def _factorial(n):
    while len(_FACT) <= n:
        _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


# ---------------------------------------------------------------------------
# quasi-pull-back weights


def quasi_pullback_weight(k_name):
    """Weight 12 + h(K)(24 - rk K)/2 of the quasi pull-back for K in the
    supported table; Coxeter numbers computed from root enumeration."""
    from . import rootsys as rs

    name = k_name.replace(" ", "")
    if name == "N8":
        lat = rs.nikulin_n8()
        rd = rs.root_datum(lat, allow_sublattice=True)
        h = rd.coxeter_number
        rk = lat.rank
    else:
        lat = build(_k_descriptor(name))
        rd = rs.root_datum(lat)
        h = rd.coxeter_number
        rk = lat.rank
    val = Q(12) + Q(h * (24 - rk), 2)
    if val.denominator != 1:
        raise ValueError("weight is not integral")
    return int(val)


def _k_descriptor(name):
    import re

    m = re.fullmatch(r"(\d*)([ADE])(\d+)", name)
    if not m:
        raise ValueError(f"cannot parse lattice name {name}")
    mult, letter, rank = m.groups()
    desc = f"{letter}{rank}"
    if mult and int(mult) > 1:
        desc = f"{mult}*{desc}"
    return desc


# ---------------------------------------------------------------------------
# denominator identity checks and grading data


def denominator_verify(lift_form, f, n_max, m_max, reflections=None,
                       fj_reference=None):
    """Checks of the denominator identity at the requested orders:
    (a) Borcherds product of f equals the lift coefficientwise,
    (b) the lift is (anti)symmetric under the declared reflections,
    (c) the leading Fourier-Jacobi coefficient matches the eta/theta block.

    Returns a report dict; mismatches are reported, not raised.
    """
    report = {"checks": [], "status": "pass"}

    def check(label, ok, detail=""):
        report["checks"].append({"check": label, "ok": bool(ok),
                                 "detail": detail})
        if not ok:
            report["status"] = "fail"

    product = borcherds_product(f, n_max, m_max)
    ok, detail = expansions_equal(product, lift_form, n_max, m_max,
                                  up_to_sign=True)
    check("product equals lift", ok, detail)
    if reflections:
        for i, (mat, sign) in enumerate(reflections):
            ok, detail = symmetry_check(lift_form, mat, sign)
            check(f"reflection {i} sign {sign:+d}", ok, detail)
    if fj_reference is not None:
        wt = weyl_triple(f)
        sl = product.fourier_jacobi_slice(wt.C)
        ok, detail = jacobi_equal(sl, fj_reference, up_to_sign=True)
        check("leading Fourier-Jacobi block", ok, detail)
    return report


def expansions_equal(a, b, n_max, m_max, up_to_sign=False):
    """Exact coefficientwise equality on the common box.

    With up_to_sign=True a single global unit is allowed between the two
    expansions (both sides of the denominator identities are canonical only
    up to sign); the sign is detected at the smallest support index and then
    equality is demanded exactly everywhere.
    """
    a2, b2 = a._join(b)
    n_cap = min(Q(n_max), a2.n_cap, b2.n_cap) * a2.nden
    m_cap = min(Q(m_max), a2.m_cap, b2.m_cap) * a2.nden
    keys = set()
    for (ns, key, ms) in a2.coeffs:
        if ns <= n_cap and ms <= m_cap:
            keys.add((ns, key, ms))
    for (ns, key, ms) in b2.coeffs:
        if ns <= n_cap and ms <= m_cap:
            keys.add((ns, key, ms))
    sign = 1
    if up_to_sign and keys:
        lead = min(keys, key=lambda k: (k[2], k[0], k[1]))
        ca, cb = a2.coeffs.get(lead, 0), b2.coeffs.get(lead, 0)
        if ca and cb and abs(ca) == abs(cb):
            sign = 1 if ca == cb else -1
    for k in sorted(keys):
        if a2.coeffs.get(k, 0) != sign * b2.coeffs.get(k, 0):
            ns, key, ms = k
            return False, (f"first mismatch at n={Q(ns, a2.nden)} "
                           f"m={Q(ms, a2.nden)}: "
                           f"{a2.coeffs.get(k, 0)} != {b2.coeffs.get(k, 0)}")
    tag = f" (global sign {sign:+d})" if sign != 1 else ""
    return True, f"{len(keys)} indices agree{tag}"


def jacobi_equal(a, b, up_to_sign=False):
    a2, b2 = a._join(b)
    cap = min(a2.order, b2.order) * a2.nden
    keys = {k for k in a2.coeffs if k[0] < cap} | \
           {k for k in b2.coeffs if k[0] < cap}
    sign = 1
    if up_to_sign and keys:
        lead = min(keys)
        ca, cb = a2.coeffs.get(lead, 0), b2.coeffs.get(lead, 0)
        if ca and cb and abs(ca) == abs(cb):
            sign = 1 if ca == cb else -1
    for k in sorted(keys):
        if a2.coeffs.get(k, 0) != sign * b2.coeffs.get(k, 0):
            return False, f"mismatch at {k}"
    tag = f" (global sign {sign:+d})" if sign != 1 else ""
    return True, f"{len(keys)} coefficients agree{tag}"


def symmetry_check(form, coord_matrix, sign):
    """F(sigma .) == sign * F on the computed support (box-restricted)."""
    from .lifting import apply_orthogonal

    moved = apply_orthogonal(form, coord_matrix)
    n_cap = form.n_cap * form.nden
    m_cap = form.m_cap * form.nden
    keys = {k for k in form.coeffs} | {k for k in moved.coeffs}
    for k in keys:
        ns, key, ms = k
        if ns > n_cap or ms > m_cap:
            continue
        if moved.coeffs.get(k, 0) != sign * form.coeffs.get(k, 0):
            return False, f"mismatch at {k}"
    return True, "symmetry holds"


def fourier_jacobi_reference(f, order):
    """eta^{f(0,0)} prod_{l>0} (theta(tau,(l,z))/eta)^{f(0,l)} as a Jacobi
    table: the predicted leading Fourier-Jacobi coefficient of B_f."""
    from .qseries import theta_jacobi

    phi = f.phi if isinstance(f, BorcherdsInput) else f
    layer = phi.nlevels().get(0, {})
    rank = phi.nvars
    const = layer.get((0,) * rank, 0)
    eta_net = const
    factors = []
    for key, c in layer.items():
        kap = [Q(x, phi.kden) for x in key]
        lam = la.mat_vec([list(r) for r in phi.gzinv], kap)
        if any(kap) and is_positive_vector(lam):
            factors.append((key, c))
            eta_net -= c
    out = None
    for key, c in factors:
        raw = theta_jacobi(order + 2, gz=phi.gz, form=tuple(key))
        # raw stores keys m*key; the actual increment is (m/2)(key/kden),
        # so the stored grid denominator is 2*kden
        th = JacobiFourier(phi.gz, raw.coeffs, raw.order, raw.weight, None,
                           raw.char, raw.nden, 2 * phi.kden)
        for _ in range(c):
            out = th if out is None else out * th
    series = eta_power(eta_net, order + 2)
    if out is None:
        out = JacobiFourier(phi.gz, {(0, (0,) * rank): 1}, order + 2,
                            nden=1, kden=phi.kden)
    out = out.mul_qseries(series)
    return JacobiFourier(out.gz, out.coeffs, order, nden=out.nden,
                         kden=out.kden)


class DenominatorData:
    def __init__(self, m_values, tau_values, multiplicities, imag_even,
                 imag_odd):
        self.m_values = m_values
        self.tau_values = tau_values
        self.multiplicities = multiplicities
        self.imag_even = imag_even
        self.imag_odd = imag_odd


def grading_data(product, chamber, rho, f, a_max=4):
    """Grading data of the Borcherds superalgebra from the denominator form.

    m(a) is read at the Fourier index rho + a for lattice points a in the
    positive span of the chamber; tau(na) for primitive isotropic a by
    formal inversion of 1 - sum m(ka) t^k; multiplicities are the product
    exponents f(nm, l).
    """
    lattice = chamber.lattice
    phi = f.phi if isinstance(f, BorcherdsInput) else f
    wt = weyl_triple(f)
    rho_idx = _vector_to_index(lattice, rho)
    lead = (wt.A, tuple(wt.B), wt.C)
    if rho_idx != lead:
        raise ValueError(f"leading index mismatch: {rho_idx} != {lead}")
    # enumerate lattice points a in the chamber cone with bounded depth
    m_values = {}
    rank = lattice.rank
    points = _cone_points(lattice, chamber, a_max)
    for a in points:
        n, key, m = _vector_to_index(lattice, [x + y for x, y in
                                               zip(rho, a)])
        val = -product.coefficient(n, key, m)
        if val:
            m_values[a] = val
    tau_values = {}
    for a in points:
        if lattice.norm(a) != 0:
            continue
        if _content([Q(x) for x in a]) != 1:
            continue
        series = {0: 1}
        k = 1
        caps = []
        while True:
            ka = tuple(k * Q(x) for x in a)
            if ka not in m_values and k > 1:
                break
            caps.append(m_values.get(ka, 0))
            k += 1
            if k > a_max:
                break
        taus = _tau_invert(caps)
        for i, t in enumerate(taus, start=1):
            if t:
                tau_values[(a, i)] = t
    multiplicities = {}
    for (ns, key), c in phi.coeffs.items():
        multiplicities[(Q(ns, phi.nden),
                        tuple(Q(x, phi.kden) for x in key))] = c
    imag_even = {}
    imag_odd = {}
    for a, mv in m_values.items():
        norm = lattice.norm(a)
        if norm < 0:
            if mv > 0:
                imag_even[a] = mv
            elif mv < 0:
                imag_odd[a] = -mv
    for (a, n), tv in tau_values.items():
        if tv > 0:
            imag_even[tuple(n * Q(x) for x in a)] = \
                imag_even.get(tuple(n * Q(x) for x in a), 0) + tv
        elif tv < 0:
            key = tuple(n * Q(x) for x in a)
            imag_odd[key] = imag_odd.get(key, 0) - tv
    return DenominatorData(m_values, tau_values, multiplicities, imag_even,
                           imag_odd)


def _content(v):
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    g = 0
    for x in v:
        g = gcd(g, int(x * den))
    return Q(g, den)


def _tau_invert(m_list):
    """tau(na) from 1 - sum m_k t^k = prod (1 - t^n)^{tau(n a)}."""
    # P(t) coefficients
    depth = len(m_list)
    p = [1] + [-m for m in m_list]
    taus = []
    # iteratively divide by (1 - t^n)^{tau_n}
    cur = p[:]
    for n in range(1, depth + 1):
        c = cur[n] if n < len(cur) else 0
        tau_n = -c
        taus.append(tau_n)
        if tau_n:
            # divide cur by (1 - t^n)^{tau_n}: multiply by (1-t^n)^{-tau_n}
            cur = _poly_mul_binom(cur, n, -tau_n, depth)
    return taus


def _poly_mul_binom(coeffs, n, power, depth):
    """coeffs * (1 - t^n)^{power} truncated past t^depth."""
    from math import comb

    out = [0] * (depth + 1)
    # (1 - x)^{power} = sum_j C(power, j) (-x)^j  (generalized binomial)
    j = 0
    while n * j <= depth:
        b = 1
        for t in range(j):
            b = b * (power - t) // (t + 1)
        for i, c in enumerate(coeffs[:depth + 1]):
            if i + n * j <= depth and c:
                out[i + n * j] += c * b * ((-1) ** j)
        j += 1
    return out


def _vector_to_index(lattice, v):
    """Map a vector of U + K (basis c1, c2, K) to an (n, key, m) index.

    v = n c1 + m c2 + lambda;  key = pairings of lambda against the K basis
    (integer for lambda in K*).  The orientation is fixed by the leading
    monomial q^A zeta^B s^C corresponding to the Weyl vector A c1 + C c2 + B.
    """
    n = Q(v[0])
    m = Q(v[1])
    lam = [Q(x) for x in v[2:]]
    k = lattice.rank - 2
    key = tuple(sum(lattice.gram[2 + i][2 + j] * lam[j] for j in range(k))
                for i in range(k))
    return (n, key, m)


def _cone_points(lattice, chamber, a_max):
    """Lattice points in the closed chamber cone with small height."""
    # a in S with (a, delta) <= 0 for all simple roots, a^2 <= 0, a != 0,
    # on the chamber side of the controlling vector; bounded search box
    rank = lattice.rank
    pts = []
    from itertools import product as iproduct

    for coords in iproduct(range(-a_max, a_max + 1), repeat=rank):
        if not any(coords):
            continue
        a = tuple(Q(x) for x in coords)
        if lattice.norm(a) > 0:
            continue
        if any(lattice.ip(a, d) > 0 for d in chamber.roots):
            continue
        if lattice.ip(a, chamber.controlling) > 0:
            continue
        pts.append(a)
    return pts
