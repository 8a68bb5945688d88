from fractions import Fraction as Q
from itertools import combinations

import pytest

from reflex import polyhedra
from reflex import vinberg as vb
from reflex import _linalg as la
from reflex.lattice import build


def brute_force_extreme_rays(rows, dim):
    """Oracle: try all (dim-1)-subsets, solve for a ray, keep feasible ones."""
    rays = set()
    for subset in combinations(range(len(rows)), dim - 1):
        mat = [rows[i] for i in subset]
        ker = la.kernel_basis(mat)
        if len(ker) != 1:
            continue
        for sign in (1, -1):
            ray = [sign * x for x in ker[0]]
            vals = [sum(r * x for r, x in zip(row, ray)) for row in rows]
            if all(v <= 0 for v in vals):
                rays.add(tuple(polyhedra._primitive(
                    tuple(la.clear_denominators(ray)))))
    return sorted(rays)


@pytest.mark.parametrize("rows,dim", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, 1]], 3),
    ([[1, 1], [-1, 1]], 2),
    ([[2, 0, -1], [0, 2, -2], [-1, -2, 2]], 3),
    ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
      [-1, -1, -1, -1], [1, -1, 1, -1]], 4),
])
def test_extreme_rays_match_brute_force(rows, dim):
    got = sorted(polyhedra.extreme_rays(rows, dim=dim))
    want = brute_force_extreme_rays(rows, dim)
    assert got == want


def test_extreme_rays_not_pointed():
    with pytest.raises(ValueError):
        polyhedra.extreme_rays([[1, 0, 0], [0, 1, 0]], dim=3)


def test_vinberg_u_a1():
    srs = vb.vinberg(build("U + A1"), controlling=(3, 2, 0))
    assert srs.status == vb.COMPLETE
    assert sorted(srs.roots) == sorted([
        (Q(-1), Q(1), Q(0)), (Q(0), Q(0), Q(1)), (Q(1), Q(0), Q(-1))])
    wv = vb.weyl_vector(srs)
    assert wv.exists
    assert wv.rho == (3, 2, Q(-1, 2))
    assert wv.rho_norm == Q(-23, 2)


def test_vinberg_u2_a2():
    srs = vb.vinberg(build("U(2) + A2"))
    assert srs.status == vb.COMPLETE
    assert len(srs.roots) == 4


def test_vinberg_rejects_bad_signature():
    with pytest.raises(Exception):
        vb.vinberg(build("A2"))


def test_finite_volume_needs_span():
    L = build("U + A1")
    srs = vb.SimpleRootSet(L, [(0, 0, 1)], (1, 1, 0), vb.TRUNCATED)
    assert not vb.finite_volume(srs)


DELPEZZO_COUNTS = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


@pytest.mark.parametrize("n,count", sorted(DELPEZZO_COUNTS.items()))
def test_delpezzo_counts(n, count):
    assert len(vb.delpezzo_roots(n).roots) == count


def test_delpezzo_weyl_vector_recovered():
    for n in range(2, 7):
        dp = vb.delpezzo_roots(n)
        wv = vb.weyl_vector(dp)
        assert wv.exists
        # the anticanonical vector (3h - sum e_i)/2
        assert wv.rho == tuple([Q(3, 2)] + [Q(-1, 2)] * n)


def test_star_chamber_matches_vinberg():
    cases = [
        ("U + A1", [("A", 1, 0)]),
        ("U + A2", [("A", 2, 0)]),
        ("U + 2*A2", [("A", 2, 0), ("A", 2, 2)]),
        ("U + D4", [("D", 4, 0)]),
        ("U + E6", [("E", 6, 0)]),
    ]
    for desc, comps in cases:
        L = build(desc)
        star = vb.star_chamber(L, comps)
        wv = vb.weyl_vector(star)
        assert wv.exists and wv.rho_norm < 0
        c = la.clear_denominators(wv.rho)
        srs = vb.vinberg(L, controlling=c)
        assert srs.status == vb.COMPLETE
        assert sorted(srs.roots) == sorted(star.roots)


def test_vinberg_accepted_pairwise_nonpositive():
    for desc in ["U + A1", "U(2) + A2", "U(3) + A1", "<-8> + 2*A1"]:
        L = build(desc)
        srs = vb.vinberg(L)
        for i, a in enumerate(srs.roots):
            for b in srs.roots[i + 1:]:
                assert L.ip(a, b) <= 0


def test_vinberg_independent_of_max_roots_once_complete():
    L = build("U(2) + A2")
    s1 = vb.vinberg(L, max_roots=1000)
    s2 = vb.vinberg(L, max_roots=50)
    assert sorted(s1.roots) == sorted(s2.roots)


def test_weyl_negative_certificate():
    # U(3) + 2A1: solving on the first six paper roots leaves rho.f7 = -3
    L = build("U(3) + 2*A1")
    srs = vb.vinberg(L)
    assert srs.status == vb.COMPLETE
    wv = vb.weyl_vector(srs)
    assert not wv.exists
    assert wv.certificate is not None


def test_cartan_graph_edges():
    srs = vb.vinberg(build("U + A1"), controlling=(3, 2, 0))
    graph = vb.cartan_graph(srs)
    kinds = sorted(kind for (_i, _j, kind, _w) in graph.edges)
    assert kinds == ["thick", "thin"]
    dot = graph.to_dot()
    assert "style=bold" in dot and "style=solid" in dot


def test_parabolic_candidate_status():
    # U(4) + 4A1 is parabolically 2-reflective: rho exists with rho^2 = 0
    L = build("U(4) + 4*A1")
    srs = vb.vinberg(L, height_cap=Q(40), max_roots=120)
    assert srs.status == vb.PARABOLIC
    wv = vb.weyl_vector(srs)
    assert wv.exists and wv.rho_norm == 0
