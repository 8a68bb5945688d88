"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s`.  Criterion 6 is implemented
exactly as stated and is an expected failure (strict xfail): the two phi_0
constructions it equates are different Jacobi forms; see the analysis in the
repository notes.
"""

import time
from fractions import Fraction as Q

import pytest

from reflex import borcherds as bo
from reflex import classify as cls
from reflex import lifting as lf
from reflex import qseries as qs
from reflex import rootsys as rs
from reflex import vinberg as vb
from reflex import catalog_data as data
from reflex.lattice import build


def _line(num, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"criterion {num:>2}: {tag}  {detail}")
    return ok


# --------------------------------------------------------------------------
# shared expensive objects

_CACHE = {}


def dk_pair(k):
    """(product, lift) for the D_k tower at absolute orders (4, 4)."""
    key = ("dk", k)
    if key not in _CACHE:
        phi0 = lf.phi0_tower_Dk(k, 10)
        f = bo.BorcherdsInput(phi0)
        prod = bo.borcherds_product(f, 4, 4)
        psi = lf.psi_tower_Dk(k, 17)
        lift = lf.jacobi_lift(psi, 4, 4)
        _CACHE[key] = (f, prod, lift)
    return _CACHE[key]


def a2_tower_pair(copies):
    """(product, lift) for the 3A2 tower at absolute orders (3, 3)."""
    key = ("a2", copies)
    if key not in _CACHE:
        phi0 = lf.phi0_tower_3A2(10)
        if copies < 3:
            zmap = [[1 if (i < 2 * copies and i == j) else 0
                     for j in range(2 * copies)] for i in range(6)]
            phi0 = phi0.pullback(zmap, new_gz=lf.block_gz(lf.A2_GZ, copies))
        f = bo.BorcherdsInput(phi0)
        prod = bo.borcherds_product(f, 3, 3)
        sig = lf.sigma_kA2(copies, 10)
        lift = lf.jacobi_lift(sig, 3, 3)
        _CACHE[key] = (f, prod, lift)
    return _CACHE[key]


SUPPORTED_PHI0 = {
    # name: (host, component indices, h, rank)
    "A1": ("24A1", [0], 2, 1),
    "2A1": ("24A1", [0, 1], 2, 2),
    "3A1": ("24A1", [0, 1, 2], 2, 3),
    "4A1": ("24A1", [0, 1, 2, 3], 2, 4),
    "A2": ("12A2", [0], 3, 2),
    "2A2": ("12A2", [0, 1], 3, 4),
    "3A2": ("12A2", [0, 1, 2], 3, 6),
    "D4": ("6D4", [0], 6, 4),
    "2D4": ("6D4", [0, 1], 6, 8),
    "D8": ("3D8", [0], 14, 8),
    "E8": ("3E8", [0], 30, 8),
    "2E8": ("3E8", [0, 1], 30, 16),
}


def niemeier_phi0(name, order):
    key = ("phi0", name, order)
    if key not in _CACHE:
        host, idx, _h, _rk = SUPPORTED_PHI0[name]
        _CACHE[key] = bo.phi0_from_niemeier(host, idx, order)
    return _CACHE[key]


# --------------------------------------------------------------------------


def test_criterion_1_classification_suite():
    t0 = time.time()
    reports = cls.run_catalog()
    elapsed = time.time() - t0
    failed = [r for r in reports if r["status"] != "pass"]
    positive = [r for r in reports
                if any(e["name"] == r["name"] and e["weyl_exists"]
                       for e in data.ENTRIES)]
    negative = [r for r in reports if r["name"].startswith("neg:")]
    ok = not failed and len(positive) == 59 and len(negative) == 14
    assert _line(1, ok, f"59 lattices + {len(negative)} negative cases, "
                        f"{elapsed:.0f}s"), failed
    assert elapsed < 300, f"runtime target 5 min exceeded: {elapsed:.0f}s"


def test_criterion_2_chamber_gram_matrices():
    named = ["A_{1,0}", "A_{2,0}", "A_{3,0}", "A_{1,I}", "A_{2,I}",
             "A_{3,I}", "A_{1,II}", "A_{2,II}", "A_{3,II}", "A_{2,III}",
             "B_1", "B_2", "B_3", "B_4",
             "gram4,64,a", "gram4,64,b", "gram6,64,b"]
    covered = {}
    for entry in data.ENTRIES:
        if entry["cartan"] in named:
            report = cls.check_entry(entry)
            checks = {c["check"]: c["ok"] for c in report["checks"]}
            covered[entry["cartan"]] = checks.get(
                "computed Cartan matrix matches up to permutation", False)
    subs = {s["cartan"]: cls.check_subchamber(s)["status"] == "pass"
            for s in data.SUBCHAMBERS}
    ok = all(covered.get(n, False) for n in named if not n.endswith("III")) \
        and subs.get("A_{1,III}") and subs.get("A_{3,III}")
    assert _line(2, ok, f"{len(covered)} chamber matrices + "
                        f"{len(subs)} subchambers"), (covered, subs)


def test_criterion_3_delpezzo_counts():
    want = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
    got = {n: len(vb.delpezzo_roots(n).roots) for n in range(1, 9)}
    assert _line(3, got == want, str(got))


def test_criterion_4_weight_table():
    t0 = time.time()
    table = {
        "A1": 35, "2A1": 34, "3A1": 33, "4A1": 32, "N8": 28,
        "A2": 45, "2A2": 42, "3A2": 39, "A3": 54, "2A3": 48,
        "A4": 62, "A5": 69, "A6": 75, "A7": 80,
        "D4": 72, "2D4": 60, "D5": 88, "D6": 102, "D7": 114, "D8": 124,
        "E6": 120, "E7": 165, "E8": 252, "2E8": 132,
    }
    got = {name: bo.quasi_pullback_weight(name) for name in table}
    elapsed = time.time() - t0
    assert _line(4, got == table, f"24 weights, {elapsed:.1f}s")
    assert elapsed < 60


def test_criterion_5_phi0_layers():
    # (a) Hecke-route phi0_D8 layer: r_1 + r_1^{-1} + ... + r_8^{-1} + 8
    phi8 = lf.phi0_tower_Dk(8, 2)
    layer = phi8.nlevels()[0]
    zero8 = (0,) * 8
    ok_a = (layer[zero8] == 8
            and sorted(layer[k] for k in layer if k != zero8) == [1] * 16
            and {phi8.key_norm(k) for k in layer if k != zero8} == {1})
    # (b) phi0_3A2 layer: 6 + the 18 exponential terms
    phi32 = lf.phi0_tower_3A2(2)
    layer = phi32.nlevels()[0]
    zero6 = (0,) * 6
    others = {k: v for k, v in layer.items() if k != zero6}
    ok_b = (layer[zero6] == 6 and len(others) == 18
            and set(others.values()) == {1}
            and {phi32.key_norm(k) for k in others} == {Q(2, 3)})
    # (c) Niemeier-route constants 24 + h (24 - rk) for every supported K
    ok_c = True
    for name, (host, idx, h, rk) in SUPPORTED_PHI0.items():
        f = niemeier_phi0(name, 1)
        lv = f.phi.nlevels()
        zero = (0,) * f.phi.nvars
        const = lv[0][zero]
        if const != 24 + h * (24 - rk):
            ok_c = False
        if min(lv) >= 0 or lv[min(lv)] != {zero: 1}:
            ok_c = False
    assert _line(5, ok_a and ok_b and ok_c,
                 f"D8 layer {ok_a}, 3A2 layer {ok_b}, constants {ok_c}")


@pytest.mark.xfail(
    strict=True,
    reason="The two constructions are different Jacobi forms: the Niemeier "
           "pullback has q^-1 + (24 + h(24-rk)) + 2-root terms, while the "
           "Hecke-route form is weak with constant 24 - 2k and 1-vector "
           "terms; see notes/decisions.md.")
def test_criterion_6_dual_route_equality():
    f = niemeier_phi0("D8", 5)
    hecke = lf.phi0_tower_Dk(8, 5)
    ok, detail = bo.jacobi_equal(f.phi, hecke, up_to_sign=True)
    assert _line(6, ok, detail)


def test_criterion_7_denominator_identities():
    t0 = time.time()
    results = []
    for k in range(2, 8):
        f, prod, lift = dk_pair(k)
        ok, detail = bo.expansions_equal(prod, lift, 4, 4, up_to_sign=True)
        results.append((f"D{k}", ok))
        if k == 7:
            closed = lf.delta5_D7_closed(4, 4)
            ok2, _ = bo.expansions_equal(prod, closed, 4, 4, up_to_sign=True)
            results.append(("D7-closed-form", ok2))
    for copies in (3, 2, 1):
        f, prod, lift = a2_tower_pair(copies)
        ok, detail = bo.expansions_equal(prod, lift, 3, 3, up_to_sign=True)
        results.append((f"{copies}A2", ok))
    elapsed = time.time() - t0
    ok = all(r[1] for r in results)
    assert _line(7, ok, f"{results}, {elapsed:.0f}s"), results
    assert elapsed < 1800, f"runtime target 30 min exceeded: {elapsed:.0f}s"


def test_criterion_8_weyl_triples():
    ok = True
    details = []
    star_map = {
        "A1": ("U + A1", [("A", 1, 0)]),
        "2A1": ("U + 2*A1", [("A", 1, 0), ("A", 1, 1)]),
        "3A1": ("U + 3*A1", [("A", 1, 0), ("A", 1, 1), ("A", 1, 2)]),
        "4A1": ("U + 4*A1", [("A", 1, i) for i in range(4)]),
        "A2": ("U + A2", [("A", 2, 0)]),
        "2A2": ("U + 2*A2", [("A", 2, 0), ("A", 2, 2)]),
        "3A2": ("U + 3*A2", [("A", 2, 0), ("A", 2, 2), ("A", 2, 4)]),
        "D4": ("U + D4", [("D", 4, 0)]),
        "2D4": ("U + 2*D4", [("D", 4, 0), ("D", 4, 4)]),
        "D8": ("U + D8", [("D", 8, 0)]),
        "E8": ("U + E8", [("E", 8, 0)]),
        "2E8": ("U + 2*E8", [("E", 8, 0), ("E", 8, 8)]),
    }
    for name, (host, idx, h, rk) in SUPPORTED_PHI0.items():
        f = niemeier_phi0(name, 1)
        wt = bo.weyl_triple(f)
        if (wt.A, wt.C) != (1 + h, h):
            ok = False
            details.append(f"{name}: (A,C) = ({wt.A},{wt.C})")
        desc, comps = star_map[name]
        L = build(desc)
        star = vb.star_chamber(L, comps)
        rho = bo.transport_weyl_vector(host, idx, f)
        if any(L.ip(rho, r) != -1 for r in star.roots):
            ok = False
            details.append(f"{name}: transport pairing")
    assert _line(8, ok, details or f"{len(SUPPORTED_PHI0)} lattices")


def test_criterion_9_leading_fourier_jacobi():
    results = []
    # towers: the s^1 slice of B_{phi0, D_k} equals the eta/theta block
    for k in range(2, 8):
        f, prod, _lift = dk_pair(k)
        sl = prod.fourier_jacobi_slice(1)
        ref = bo.fourier_jacobi_reference(f, 4)
        ok, _ = bo.jacobi_equal(sl, ref, up_to_sign=True)
        results.append((f"D{k}", ok))
    # Phi_{k,K} for the low-Coxeter supported K: slice s^{h}
    for name in ("A1", "2A1", "3A1", "4A1", "A2", "2A2"):
        f = niemeier_phi0(name, 10)
        wt = bo.weyl_triple(f)
        prod = bo.borcherds_product(f, 4, wt.C)
        sl = prod.fourier_jacobi_slice(wt.C)
        ref = bo.fourier_jacobi_reference(f, 4 - wt.A + 1)
        ok, detail = bo.jacobi_equal(sl, ref, up_to_sign=True)
        results.append((name, ok))
    ok = all(r[1] for r in results)
    assert _line(9, ok, str(results)), results


def test_criterion_10_half_integral_catalog():
    from math import gcd

    d = lf.delta_halfint_catalog("Delta_2,4A1", Q(5, 2), Q(5, 2))
    ok_units = True
    for (ns, key, ms), c in d.coeffs.items():
        g = gcd(gcd(ns, ms), _key_gcd(key))
        if g == 1 and c not in (-1, 0, 1):
            ok_units = False
    ok_cone = all(norm == 0 for norm, _c in d.hyperbolic_norms())
    assert _line(10, ok_units and ok_cone,
                 f"primitive units {ok_units}, singular cone {ok_cone}")


def _key_gcd(key):
    from math import gcd

    g = 0
    for x in key:
        g = gcd(g, x)
    return g


def test_criterion_11_reflection_symmetry():
    results = []
    # D_k towers: coordinate sign flip is odd, coordinate swap is even
    for k in (2, 4):
        _f, _prod, lift = dk_pair(k)
        flip = _flip_matrix(k, 0)
        swap = _swap_matrix(k, 0, 1)
        results.append((f"D{k} flip", bo.symmetry_check(lift, flip, -1)[0]))
        results.append((f"D{k} swap", bo.symmetry_check(lift, swap, 1)[0]))
    # Delta_4,D8 (singular weight)
    psi = lf.theta_D8(5)
    d48 = lf.jacobi_lift(psi, 2, 2)
    results.append(("D8 flip", bo.symmetry_check(d48, _flip_matrix(8, 0),
                                                 -1)[0]))
    results.append(("D8 swap", bo.symmetry_check(d48, _swap_matrix(8, 0, 1),
                                                 1)[0]))
    # Delta_2,4A1: reflections in the a_i (odd), permutations (even)
    d24 = lf.delta_halfint_catalog("Delta_2,4A1", Q(5, 2), Q(5, 2))
    results.append(("4A1 flip", bo.symmetry_check(d24, _flip_matrix(4, 0),
                                                  -1)[0]))
    results.append(("4A1 swap", bo.symmetry_check(d24, _swap_matrix(4, 0, 1),
                                                  1)[0]))
    # Delta_3,3A2: anti-invariant under the 6-reflections, invariant under
    # block swap
    _f, _prod, lift32 = a2_tower_pair(3)
    refl6 = _a2_six_reflection()
    results.append(("3A2 sixfold", bo.symmetry_check(lift32, refl6, -1)[0]))
    results.append(("3A2 block swap",
                    bo.symmetry_check(lift32, _a2_block_swap(), 1)[0]))
    # products F24, F6: odd under the coordinate flips
    f24 = lf.product_forms("F24", 3, 3)
    results.append(("F24 flip", bo.symmetry_check(f24, _flip_matrix(4, 0),
                                                  -1)[0]))
    f6 = lf.product_forms("F6", Q(5, 2), Q(5, 2))
    results.append(("F6 flip", bo.symmetry_check(f6, _flip_matrix(4, 0),
                                                 -1)[0]))
    ok = all(r[1] for r in results)
    assert _line(11, ok, str(results)), results


def _flip_matrix(dim, pos):
    return [[(-1 if i == j == pos else int(i == j)) for j in range(dim)]
            for i in range(dim)]


def _swap_matrix(dim, a, b):
    perm = list(range(dim))
    perm[a], perm[b] = perm[b], perm[a]
    return [[int(perm[i] == j) for j in range(dim)] for i in range(dim)]


def _a2_six_reflection():
    # reflection in the fundamental weight l1 = (2/3, 1/3) of the first A2
    from reflex import _linalg as la

    g = lf.block_gz(lf.A2_GZ, 3)
    v = [Q(2, 3), Q(1, 3), 0, 0, 0, 0]
    gq = la.qmat(g)
    vnorm = la.gram_dot(gq, v, v)
    gv = la.mat_vec(gq, v)
    return [[Q(int(i == j)) - 2 * v[i] * gv[j] / vnorm for j in range(6)]
            for i in range(6)]


def _a2_block_swap():
    mat = [[0] * 6 for _ in range(6)]
    for i in range(2):
        mat[i][2 + i] = 1
        mat[2 + i][i] = 1
    for i in range(4, 6):
        mat[i][i] = 1
    return mat


def test_criterion_12_phi_3a1_identity():
    t0 = time.time()
    # (Delta_3,3A1)^2 * Phi_33,3A1 = Phi_39,3A2 | 3A1, to relative (2, 2)
    f33 = niemeier_phi0("3A1", 13)
    phi33 = bo.borcherds_product(f33, 5, 4)
    d3 = lf.delta_halfint_catalog("Delta_3,3A1", Q(7, 2), Q(7, 2))
    lhs = d3 * d3 * phi33
    f39 = niemeier_phi0("3A2", 7)
    phi39 = bo.borcherds_product(f39, 6, 5)
    zmap = [[0] * 3 for _ in range(6)]
    for b in range(3):
        zmap[2 * b][b] = 1
    rhs = phi39.pullback(zmap, new_gz=lf.identity_gz(3, 2))
    ok, detail = bo.expansions_equal(lhs, rhs, 6, 5, up_to_sign=True)
    assert _line(12, ok, f"{detail}, {time.time()-t0:.0f}s"), detail


def test_criterion_13_vanishing_on_walls():
    ok = True
    details = []
    f24 = lf.product_forms("F24", 3, 3)
    for i in range(4):
        if not _vanishes_on_wall(f24, i):
            ok = False
            details.append(f"F24 z_{i}")
    f6 = lf.product_forms("F6", Q(5, 2), Q(5, 2))
    for i in range(4):
        if not _vanishes_on_wall(f6, i):
            ok = False
            details.append(f"F6 z_{i}")
    assert _line(13, ok, details or "all 8 fibers vanish"), details


def _vanishes_on_wall(form, pos):
    """Summing coefficients over the z_pos fiber must give zero."""
    sums = {}
    for (ns, key, ms), c in form.coeffs.items():
        reduced = tuple(x for i, x in enumerate(key) if i != pos)
        kk = (ns, reduced, ms)
        sums[kk] = sums.get(kk, 0) + c
    return all(v == 0 for v in sums.values())
