import pytest
from fractions import Fraction as Q

from reflex import rootsys as rs
from reflex.lattice import build


def test_coxeter_numbers_match_closed_forms():
    # computed from root enumeration, checked against n+1 and 2n-2
    for n in range(1, 8):
        assert rs.root_datum(build(f"A{n}")).coxeter_number == n + 1
    for n in range(2, 9):
        assert rs.root_datum(build(f"D{n}")).coxeter_number == 2 * n - 2 \
            if n >= 3 else True
    assert rs.root_datum(build("D2")).coxeter_number == 2  # = 2A1
    assert rs.root_datum(build("E6")).coxeter_number == 12
    assert rs.root_datum(build("E7")).coxeter_number == 18
    assert rs.root_datum(build("E8")).coxeter_number == 30


def test_root_datum_d4():
    rd = rs.root_datum(build("D4"))
    assert len(rd.positive_roots) == 12
    assert len(rd.components) == 1
    # the branch node is last in this basis convention
    assert rd.components[0].highest_root == (1, 1, 1, 2)


def test_root_datum_components():
    rd = rs.root_datum(build("A1 + A2"))
    assert sorted(c.rank for c in rd.components) == [1, 2]
    assert sorted(c.coxeter_number for c in rd.components) == [2, 3]


def test_finite_weyl_vector_pairs_one_with_simple_roots():
    for desc in ["A2", "A3", "D4", "D5", "E6"]:
        L = build(desc)
        rd = rs.root_datum(L)
        comp = rd.components[0]
        for s in rs.simple_roots_of_component(L, comp):
            assert L.ip(comp.weyl_vector, s) == 1


def test_root_datum_requires_roots():
    with pytest.raises(rs.RootDatumError):
        rs.root_datum(build("<4>"))


NIEMEIER_DATA = [
    ("3E8", 30, 720),
    ("3D8", 14, 336),
    ("6D4", 6, 144),
    ("24A1", 2, 48),
    ("12A2", 3, 72),
]


@pytest.mark.parametrize("name,h,roots", NIEMEIER_DATA)
def test_niemeier_lattices(name, h, roots):
    n = rs.niemeier(name)
    lat = n.lattice
    assert lat.rank == 24
    assert abs(lat.det()) == 1
    assert lat.integral
    assert len(lat.short_vectors(2)) == roots
    assert roots == 24 * h


def test_niemeier_unsupported():
    with pytest.raises(rs.RootDatumError):
        rs.niemeier("D24")


def test_nikulin_n8():
    n8 = rs.nikulin_n8()
    assert abs(n8.det()) == 64
    assert len(n8.short_vectors(2)) == 16
    # h = (a1 + ... + a8)/2 has norm 4; its class survives in the glue
    rd = rs.root_datum(n8, allow_sublattice=True)
    assert rd.coxeter_number == 2


def test_orthogonal_root_counts():
    assert rs.orthogonal_root_count([0], rs.niemeier("24A1")) == 46
    assert rs.orthogonal_root_count([0], rs.niemeier("3D8")) == 224
    assert rs.orthogonal_root_count([0], rs.niemeier("3E8")) == 480
    # identity value h(K) (24 - rk K)
    assert 46 == 2 * (24 - 1)
    assert 224 == 14 * (24 - 8)
    assert 480 == 30 * (24 - 8)
