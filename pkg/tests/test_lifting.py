from fractions import Fraction as Q

import pytest

from reflex import borcherds as bo
from reflex import lifting as lf
from reflex import qseries as qs


def test_phi0_d8_layer():
    phi = lf.phi0_tower_Dk(8, 2)
    layer = phi.nlevels()[0]
    assert layer[(0,) * 8] == 8
    keys = [k for k in layer if k != (0,) * 8]
    assert len(keys) == 16
    assert all(layer[k] == 1 for k in keys)
    # keys are the +-e_i of the dual (norm 1)
    assert all(phi.key_norm(k) == 1 for k in keys)
    # no q^{-1} term: the tower forms are weak
    assert min(phi.nlevels()) == 0


def test_phi0_dk_constants():
    for k in (2, 5):
        phi = lf.phi0_tower_Dk(k, 2)
        layer = phi.nlevels()[0]
        assert layer[(0,) * k] == 24 - 2 * k
        assert sum(1 for kk in layer if kk != (0,) * k) == 2 * k


def test_phi0_dk_equals_pullback_of_d8():
    k = 6
    phi8 = lf.phi0_tower_Dk(8, 3)
    zmap = [[1 if (i < k and i == j) else 0 for j in range(k)]
            for i in range(8)]
    pb = phi8.pullback(zmap, new_gz=lf.identity_gz(k))
    phik = lf.phi0_tower_Dk(k, 3)
    a, b = pb._join(phik)
    cap = min(a.order, b.order) * a.nden
    for kk in set(a.coeffs) | set(b.coeffs):
        if kk[0] < cap:
            assert a.coeffs.get(kk, 0) == b.coeffs.get(kk, 0)


def test_phi0_3a2_layer():
    phi = lf.phi0_tower_3A2(2)
    layer = phi.nlevels()[0]
    zero = (0,) * 6
    assert layer[zero] == 6
    others = {k: v for k, v in layer.items() if k != zero}
    assert len(others) == 18
    assert set(others.values()) == {1}
    assert {phi.key_norm(k) for k in others} == {Q(2, 3)}


def test_phi0_4a1_layer():
    phi = lf.phi0_tower_kA1(4, 2)
    layer = phi.nlevels()[0]
    zero = (0,) * 4
    assert layer[zero] == 4
    others = [k for k in layer if k != zero]
    assert len(others) == 8
    assert {phi.key_norm(k) for k in others} == {Q(1, 2)}


def test_hecke_route_matches_direct_quotient():
    # the optimized coordinate-wise builder equals the table-level
    # Hecke quotient (two independent code paths)
    k = 2
    psi = lf.psi_tower_Dk(k, 6)
    direct = qs.hecke_Tminus(psi, 2).div(psi).scale(Q(1, 2))
    fast = lf.phi0_tower_Dk(k, 3)
    a, b = fast._join(direct)
    cap = min(Q(3), a.order, b.order) * a.nden
    sign = None
    for kk in sorted(set(a.coeffs) | set(b.coeffs)):
        if kk[0] >= cap:
            continue
        va, vb = a.coeffs.get(kk, 0), Q(b.coeffs.get(kk, 0))
        if sign is None and va:
            sign = -1 if va == -vb else 1
        assert Q(va) == sign * vb


def test_jacobi_lift_multiplicativity():
    # at primitive indices the lift coefficient equals f(nm, l)
    psi = lf.psi_tower_Dk(2, 13)
    lift = lf.jacobi_lift(psi, 3, 4)
    for (ns, key, ms), c in lift.coeffs.items():
        n, m = Q(ns, lift.nden), Q(ms, lift.nden)
        from math import gcd

        g = gcd(int(n), int(m))
        kg = 0
        for x in key:
            kg = gcd(kg, x)
        if gcd(g, kg) == 1:
            assert c == psi.coefficient(n * m, tuple(Q(x, lift.kden)
                                                     for x in key))


def test_lift_rejects_nonzero_constant():
    phi = lf.phi0_tower_Dk(2, 3)  # f(0,0) = 20 != 0
    with pytest.raises(ValueError):
        lf.jacobi_lift(phi, 2, 2)


def test_delta5_d7_closed_support():
    form = lf.delta5_D7_closed(2, 2)
    for norm, c in form.hyperbolic_norms():
        # 8 n m - (2l, 2l) = N^2: nonnegative
        assert norm >= 0
    # antisymmetry under l_1 -> -l_1
    mat = [[-1 if i == j == 0 else int(i == j) for j in range(7)]
           for i in range(7)]
    ok, detail = bo.symmetry_check(form, mat, -1)
    assert ok, detail


def test_delta5_d7_closed_equals_lift_small():
    closed = lf.delta5_D7_closed(2, 2)
    psi = lf.psi_tower_Dk(7, 5)
    lift = lf.jacobi_lift(psi, 2, 2)
    ok, detail = bo.expansions_equal(closed, lift, 2, 2, up_to_sign=True)
    assert ok, detail


def test_delta2_4a1_primitive_units():
    from math import gcd

    d = lf.delta_halfint_catalog("Delta_2,4A1", 2, 2)
    assert len(d.coeffs) > 0
    for (ns, key, ms), c in d.coeffs.items():
        g = gcd(gcd(ns, ms), _tuple_gcd(key))
        if g == 1:
            assert c in (-1, 0, 1)
        # singular support: 2nm = (l, l)
    for norm, c in d.hyperbolic_norms():
        assert norm == 0


def _tuple_gcd(key):
    from math import gcd

    g = 0
    for x in key:
        g = gcd(g, x)
    return g


def test_delta3_3a1_equals_lift():
    closed = lf.delta_halfint_catalog("Delta_3,3A1", Q(5, 2), Q(5, 2))
    psi = lf.psi_tower_kA1(3, 14)
    lift = lf.jacobi_lift(psi, Q(5, 2), Q(5, 2))
    ok, detail = bo.expansions_equal(closed, lift, Q(5, 2), Q(5, 2))
    assert ok, detail


def test_delta2_4a1_equals_lift():
    closed = lf.delta_halfint_catalog("Delta_2,4A1", Q(5, 2), Q(5, 2))
    psi = lf.psi_tower_kA1(4, 14)
    lift = lf.jacobi_lift(psi, Q(5, 2), Q(5, 2))
    ok, detail = bo.expansions_equal(closed, lift, Q(5, 2), Q(5, 2))
    assert ok, detail


def test_delta4_d8_singular_support():
    psi = lf.theta_D8(5)
    d4 = lf.jacobi_lift(psi, 2, 2)
    assert len(d4.coeffs) > 0
    for norm, c in d4.hyperbolic_norms():
        assert norm == 0
    # symmetric under coordinate swap, antisymmetric under sign flip
    swap = [[int((i, j) in ((0, 1), (1, 0)) or (i == j and i > 1))
             for j in range(8)] for i in range(8)]
    flip = [[-1 if i == j == 0 else int(i == j) for j in range(8)]
            for i in range(8)]
    assert bo.symmetry_check(d4, swap, 1)[0]
    assert bo.symmetry_check(d4, flip, -1)[0]


def test_delta_12k_dk_cusp_support():
    # weight above singular: all norms > 0 strictly
    psi = lf.psi_tower_Dk(3, 7)
    d = lf.jacobi_lift(psi, 2, 3)
    norms = [norm for norm, _c in d.hyperbolic_norms()]
    assert norms and all(n > 0 for n in norms)


def test_apply_orthogonal_identity_and_involution():
    psi = lf.psi_tower_Dk(4, 5)
    d = lf.jacobi_lift(psi, 2, 2)
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert bo.symmetry_check(d, ident, 1)[0]
    s1, s2 = lf.d4_sigma_reflections()
    moved = lf.apply_orthogonal(lf.apply_orthogonal(d, s1), s1)
    assert moved.coeffs == d.coeffs


def test_apply_orthogonal_rejects_non_isometry():
    psi = lf.psi_tower_Dk(2, 4)
    d = lf.jacobi_lift(psi, 1, 1)
    with pytest.raises(ValueError):
        lf.apply_orthogonal(d, [[2, 0], [0, 1]])


def test_d4_sigma_reflected_lifts_are_theta_block_lifts():
    """The sigma-reflected D4 lifts are again theta-block lifts, with the
    half-argument blocks.  (The mirror labels pair up the other way round
    from the source text, whose two stated vectors span the same mirror.)"""
    psi = lf.psi_tower_Dk(4, 7)
    d = lf.jacobi_lift(psi, 2, 3)
    s1, s2 = lf.d4_sigma_reflections()
    blocks = {
        "phi1": [(-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)],
        "phi2": [(1, 1, 1, 1), (1, 1, -1, -1), (1, -1, -1, 1), (1, -1, 1, -1)],
    }
    lifts = {}
    for name, halfargs in blocks.items():
        forms = [tuple(Q(x, 2) for x in f) for f in halfargs]
        blk = qs.theta_block(forms, 12, 7, lf.identity_gz(4))
        lifts[name] = lf.jacobi_lift(blk, 2, 3)
    ok, detail = bo.expansions_equal(
        lf.apply_orthogonal(d, s2), lifts["phi1"], 2, 3, up_to_sign=True)
    assert ok, detail
    ok, detail = bo.expansions_equal(
        lf.apply_orthogonal(d, s1), lifts["phi2"], 2, 3, up_to_sign=True)
    assert ok, detail
