from fractions import Fraction as Q

import pytest

from reflex import qseries as qs
from reflex.lattice import build


def naive_product_delta(order):
    """Oracle: q prod (1-q^n)^24 by direct polynomial multiplication."""
    coeffs = {0: 1}
    for n in range(1, order + 1):
        for _ in range(24):
            new = dict(coeffs)
            for e, c in coeffs.items():
                if e + n <= order:
                    new[e + n] = new.get(e + n, 0) - c
            coeffs = {k: v for k, v in new.items() if v}
    return {e + 1: c for e, c in coeffs.items() if e + 1 <= order}


def test_delta_expansion():
    d = qs.delta(5)
    oracle = naive_product_delta(4)
    for e, c in oracle.items():
        assert d.coefficient(e) == c
    assert d.coefficient(1) == 1
    assert d.coefficient(2) == -24
    assert d.coefficient(3) == 252
    assert d.coefficient(4) == -1472


def test_eta_power_identity():
    # eta^24 == Delta coefficientwise
    e24 = qs.eta_power(24, 5)
    d = qs.delta(5)
    assert (e24 - d).coeffs == {}


def test_eta_leading():
    e = qs.eta(2)
    assert e.coefficient(Q(1, 24)) == 1


def test_qseries_mul_div_roundtrip():
    a = qs.eta_power(3, 6)
    b = qs.eta_power(5, 6)
    prod = a * b
    back = prod.div(b)
    diff = back - a.truncate(back.order)
    assert all(c == 0 for e, c in diff.coeffs.items()
               if Q(e, diff.den) < back.order)


def test_theta_coefficients():
    th = qs.theta_jacobi(3)
    assert th.coefficient(Q(1, 8), (Q(1, 2),)) == 1
    assert th.coefficient(Q(1, 8), (Q(-1, 2),)) == -1
    assert th.coefficient(Q(9, 8), (Q(3, 2),)) == -1
    assert th.coefficient(Q(9, 8), (Q(-3, 2),)) == 1


def test_theta_product_form_matches_sum_form():
    """Jacobi triple product: compare against the explicit product."""
    order = 5
    th = qs.theta_jacobi(order)
    # product form: q^{1/8}(z^{1/2}-z^{-1/2}) prod (1-q^n z)(1-q^n z^-1)(1-q^n)
    gz = ((2,),)
    prod = qs.JacobiFourier(gz, {(1, (1,)): 1, (1, (-1,)): -1}, Q(order) + 1,
                            nden=8, kden=2)
    n = 1
    while n <= order + 1:
        for key in (1, -1, 0):
            factor = qs.JacobiFourier(
                gz, {(0, (0,)): 1, (8 * n, (2 * key,)): -1}, Q(order) + 1,
                nden=8, kden=2)
            prod = prod * factor
        n += 1
    diff_keys = set(th.coeffs) | {k for k in prod.coeffs
                                  if Q(k[0], prod.nden) < order}
    for k in diff_keys:
        ns = k[0]
        if Q(ns, 8) < order:
            assert th.coeffs.get(k, 0) == prod.coeffs.get(k, 0)


def test_lattice_theta_a1():
    lt = qs.lattice_theta(build("A1"), 3)
    assert lt.coefficient(0, (0,)) == 1
    assert lt.coefficient(1, (2,)) == 1
    assert lt.coefficient(1, (-2,)) == 1
    assert lt.weight == Q(1, 2)


def test_lattice_theta_matches_short_vectors():
    for desc in ["A2", "D4"]:
        L = build(desc)
        lt = qs.lattice_theta(L, 3)
        for n in (1, 2):
            layer = sum(c for (ns, _k), c in lt.coeffs.items() if ns == n)
            count = sum(1 for _v, norm in L.short_vectors(2 * n)
                        if norm == 2 * n)
            assert layer == count


def test_theta_block_sigma_a2():
    sig = qs.theta_block([(1, 0), (0, 1), (1, 1)], -1, 4, [[2, 1], [1, 2]])
    assert sig.weight == 1
    assert sig.index == 1
    # holomorphic support despite the eta division
    for (ns, key), c in sig.coeffs.items():
        n = Q(ns, sig.nden)
        assert 2 * n - sig.key_norm(key) >= 0
    # leading coefficients are units
    lead = min(ns for ns, _ in sig.coeffs)
    assert {abs(c) for (ns, _), c in sig.coeffs.items() if ns == lead} == {1}


def test_theta_block_psi11_d1():
    psi = qs.theta_block([(2,)], 21, 3, [[4]])
    assert psi.weight == 11
    assert psi.index == 1


def test_theta_block_integral_exponents():
    # eta^{24-3k} theta^k has integral q-exponents with leading q^1
    for k in (2, 5, 8):
        forms = [tuple(int(i == j) for i in range(k)) for j in range(k)]
        blk = qs.theta_block(forms, 24 - 3 * k, 3,
                             [[2 * int(i == j) for j in range(k)]
                              for i in range(k)] if False else
                             [[int(i == j) for j in range(k)]
                              for i in range(k)])
        assert blk.support_residue() == 0
        assert min(Q(ns, blk.nden) for ns, _ in blk.coeffs) == 1


def test_theta_block_index_mismatch_raises():
    with pytest.raises(ValueError):
        qs.theta_block([(1, 0)], 0, 3, [[2, 1], [1, 2]])


def test_hecke_identity_t1():
    th = qs.theta_block([(1,), (1,)][:1] and [(1,)], 3, 3, [[2]])
    t1 = qs.hecke_Tminus(th, 1)
    for k, c in th.coeffs.items():
        if Q(k[0], th.nden) < t1.order:
            assert t1.coeffs.get(k, 0) == c


def test_mul_commutative_associative():
    a = qs.theta_jacobi(3)
    b = qs.theta_jacobi(3).substitute(1, 2)
    ab = a * b
    ba = b * a
    assert ab.coeffs == ba.coeffs
    c = qs.theta_jacobi(2)
    assert ((a * b) * c).coeffs == (a * (b * c)).coeffs


def test_jacobi_div_roundtrip():
    a = qs.theta_block([(1, 0), (0, 1)], 18, 5, [[1, 0], [0, 1]])
    b = qs.theta_block([(1, 0), (0, 1), (1, 1)][0:2], 6, 5,
                       [[1, 0], [0, 1]])
    prod = a * b
    back = prod.div(b)
    cap = back.order * back.nden
    for k in set(a.coeffs) | set(back.coeffs):
        if k[0] < cap:
            assert a.coeffs.get(k, 0) == back.coeffs.get(k, 0)


def test_pullback_sums_fibers():
    # pull back theta(z1)theta(z2) to z2 = 0: theta(z1) * theta(0-slice)
    blk = qs.theta_block([(1, 0), (0, 1)], 0, 3, [[1, 0], [0, 1]])
    pb = blk.pullback([[1], [0]])
    # theta(tau, 0) = 0, so everything cancels
    assert pb.coeffs == {}


def test_rescale_variable():
    th = qs.theta_jacobi(2)
    r = th.substitute(2, 2)
    assert r.coefficient(Q(1, 4), (1,)) == 1
