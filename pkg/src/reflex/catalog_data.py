"""Embedded catalog: the 59 hyperbolic lattices with lattice Weyl vectors,
the negative cases, chamber Gram matrices, and subchamber reference data.

Coordinates are in the *ambient* basis of each descriptor (the pre-glue
standard basis); glued entries are converted at load time.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


def _neg(rows):
    return [[-x for x in row] for row in rows]


# Chamber Gram matrices, keyed by the usual names.  Matrices that the source
# prints negated (diagonal -2 inside an overall minus) are stored negated
# back to diagonal +2.
CARTAN_MATRICES = {
    "A_{1,0}": [[2, 0, -1], [0, 2, -2], [-1, -2, 2]],
    "A_{2,0}": [[2, -2, -2], [-2, 2, 0], [-2, 0, 2]],
    "A_{3,0}": [[2, -2, -2], [-2, 2, -1], [-2, -1, 2]],
    "A_{1,I}": [[2, -2, -1], [-2, 2, -1], [-1, -1, 2]],
    "A_{2,I}": [[2, -2, -4, 0], [-2, 2, 0, -4], [-4, 0, 2, -2], [0, -4, -2, 2]],
    "A_{3,I}": [[2, -2, -5, -1], [-2, 2, -1, -5], [-5, -1, 2, -2], [-1, -5, -2, 2]],
    "A_{1,II}": [[2, -2, -2], [-2, 2, -2], [-2, -2, 2]],
    "A_{2,II}": [[2, -2, -6, -2], [-2, 2, -2, -6], [-6, -2, 2, -2], [-2, -6, -2, 2]],
    "A_{3,II}": [
        [2, -2, -10, -14, -10, -2],
        [-2, 2, -2, -10, -14, -10],
        [-10, -2, 2, -2, -10, -14],
        [-14, -10, -2, 2, -2, -10],
        [-10, -14, -10, -2, 2, -2],
        [-2, -10, -14, -10, -2, 2],
    ],
    "A_{2,III}": [
        [2, -2, -8, -16, -18, -14, -8, 0],
        [-2, 2, 0, -8, -14, -18, -16, -8],
        [-8, 0, 2, -2, -8, -16, -18, -14],
        [-16, -8, -2, 2, 0, -8, -14, -18],
        [-18, -14, -8, 0, 2, -2, -8, -16],
        [-14, -18, -16, -8, -2, 2, 0, -8],
        [-8, -16, -18, -14, -8, 0, 2, -2],
        [0, -8, -14, -18, -16, -8, -2, 2],
    ],
    "B_1": [[2, 0, -3, -1], [0, 2, -1, -3], [-3, -1, 2, 0], [-1, -3, 0, 2]],
    "B_2": [[2, -1, -4, -1], [-1, 2, -1, -4], [-4, -1, 2, -1], [-1, -4, -1, 2]],
    "B_3": [
        [2, 0, -4, -6, -4, 0],
        [0, 2, 0, -4, -6, -4],
        [-4, 0, 2, 0, -4, -6],
        [-6, -4, 0, 2, 0, -4],
        [-4, -6, -4, 0, 2, 0],
        [0, -4, -6, -4, 0, 2],
    ],
    "B_4": [
        [2, -1, -7, -10, -7, -1],
        [-1, 2, -1, -7, -10, -7],
        [-7, -1, 2, -1, -7, -10],
        [-10, -7, -1, 2, -1, -7],
        [-7, -10, -7, -1, 2, -1],
        [-1, -7, -10, -7, -1, 2],
    ],
    "gram4,64,a": _neg([
        [-2, 0, 2, 0, 2, 0, 4, 2],
        [0, -2, 0, 2, 0, 2, 2, 4],
        [2, 0, -2, 0, 2, 4, 0, 2],
        [0, 2, 0, -2, 4, 2, 2, 0],
        [2, 0, 2, 4, -2, 0, 0, 2],
        [0, 2, 4, 2, 0, -2, 2, 0],
        [4, 2, 0, 2, 0, 2, -2, 0],
        [2, 4, 2, 0, 2, 0, 0, -2],
    ]),
    "gram4,64,b": _neg([
        [-2, 0, 0, 2, 2, 4, 0, 4, 0, 6, 4, 4],
        [0, -2, 0, 4, 0, 2, 2, 0, 4, 4, 6, 4],
        [0, 0, -2, 0, 4, 0, 4, 2, 2, 4, 4, 6],
        [2, 4, 0, -2, 6, 0, 4, 4, 0, 2, 0, 4],
        [2, 0, 4, 6, -2, 4, 0, 0, 4, 2, 4, 0],
        [4, 2, 0, 0, 4, -2, 6, 0, 4, 0, 2, 4],
        [0, 2, 4, 4, 0, 6, -2, 4, 0, 4, 2, 0],
        [4, 0, 2, 4, 0, 0, 4, -2, 6, 0, 4, 2],
        [0, 4, 2, 0, 4, 4, 0, 6, -2, 4, 0, 2],
        [6, 4, 4, 2, 2, 0, 4, 0, 4, -2, 0, 0],
        [4, 6, 4, 0, 4, 2, 2, 4, 0, 0, -2, 0],
        [4, 4, 6, 4, 0, 4, 0, 2, 2, 0, 0, -2],
    ]),
    "gram6,64,b": _neg([
        [-2, 1, 0, 0, 1, 0, 1, 0, 3, 0, 1, 1],
        [1, -2, 0, 0, 1, 0, 1, 0, 0, 3, 1, 1],
        [0, 0, -2, 1, 0, 1, 0, 1, 1, 1, 3, 0],
        [0, 0, 1, -2, 0, 1, 0, 1, 1, 1, 0, 3],
        [1, 1, 0, 0, -2, 0, 1, 3, 0, 0, 1, 1],
        [0, 0, 1, 1, 0, -2, 3, 1, 1, 1, 0, 0],
        [1, 1, 0, 0, 1, 3, -2, 0, 0, 0, 1, 1],
        [0, 0, 1, 1, 3, 1, 0, -2, 1, 1, 0, 0],
        [3, 0, 1, 1, 0, 1, 0, 1, -2, 1, 0, 0],
        [0, 3, 1, 1, 0, 1, 0, 1, 1, -2, 0, 0],
        [1, 1, 3, 0, 1, 0, 1, 0, 0, 0, -2, 1],
        [1, 1, 0, 3, 1, 0, 1, 0, 0, 0, 1, -2],
    ]),
    "A_{1,III}": [
        [2, -2, -6, -6, -2],
        [-2, 2, 0, -6, -7],
        [-6, 0, 2, -2, -6],
        [-6, -6, -2, 2, 0],
        [-2, -7, -6, 0, 2],
    ],
    "A_{3,III}": _neg([
        [-2, 2, 11, 25, 37, 47, 50, 46, 37, 23, 11, 1],
        [2, -2, 1, 11, 23, 37, 46, 50, 47, 37, 25, 11],
        [11, 1, -2, 2, 11, 25, 37, 47, 50, 46, 37, 23],
        [25, 11, 2, -2, 1, 11, 23, 37, 46, 50, 47, 37],
        [37, 23, 11, 1, -2, 2, 11, 25, 37, 47, 50, 46],
        [47, 37, 25, 11, 2, -2, 1, 11, 23, 37, 46, 50],
        [50, 46, 37, 23, 11, 1, -2, 2, 11, 25, 37, 47],
        [46, 50, 47, 37, 25, 11, 2, -2, 1, 11, 23, 37],
        [37, 47, 50, 46, 37, 23, 11, 1, -2, 2, 11, 25],
        [23, 37, 46, 50, 47, 37, 25, 11, 2, -2, 1, 11],
        [11, 25, 37, 47, 50, 46, 37, 23, 11, 1, -2, 2],
        [1, 11, 23, 37, 46, 50, 47, 37, 25, 11, 2, -2],
    ]),
}


def _m_gram(k, l, m):
    """Gram of the sublattice [k a, l b, m c] of U+A1 in the basis a, b, c."""
    base = CARTAN_MATRICES["A_{1,0}"]
    d = [k, l, m]
    return [[d[i] * base[i][j] * d[j] for j in range(3)] for i in range(3)]


def _m_desc(k, l, m):
    g = _m_gram(k, l, m)
    rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in g)
    return f"gram[{rows}]"


def _mvec(k, l, m, a, b, c):
    """Coordinates of a*A + b*B + c*C in the basis (k a, l b, m c)."""
    return (Q(a, k), Q(b, l), Q(c, m))


# Each entry: name, descriptor, expected data.  'rho' is in ambient
# coordinates of the descriptor.  'star' marks U+K star-chamber entries
# (components as (letter, rank, offset-in-K)).
ENTRIES = []


def _e(name, descriptor, rank, *, exists=True, rho=None, rho_norm=None,
       paper_P=None, cartan=None, star=None, anisotropic=False,
       certificate=None, note=""):
    ENTRIES.append({
        "name": name,
        "descriptor": descriptor,
        "rank": rank,
        "weyl_exists": exists,
        "rho": rho,
        "rho_norm": None if rho_norm is None else Q(rho_norm),
        "paper_P": paper_P,
        "cartan": cartan,
        "star": star,
        "anisotropic": anisotropic,
        # certificate: (prefix_len, root_index, value) for negative cases
        "certificate": certificate,
        "note": note,
    })


H = Q(1, 2)
T = Q(1, 3)

# --- rank 3 ---------------------------------------------------------------

_e("S_3,2", "U + A1", 3,
   rho=(3, 2, -H), rho_norm="-23/2", cartan="A_{1,0}",
   paper_P=[(-1, 1, 0), (0, 0, 1), (1, 0, -1)], star=[("A", 1, 0)])
_e("S_3,8,a", "<-2> + 2*A1", 3,
   rho=(Q(3, 2), -H, -H), rho_norm="-7/2", cartan="A_{2,0}",
   paper_P=[(1, -1, -1), (0, 1, 0), (0, 0, 1)],
   note="del Pezzo presentation; isomorphic to U(2)+A1")
_e("S_3,8,b", "<-24> + A2 | glue 1/3,-1/3,1/3", 3,
   rho=(H, -1, -1), rho_norm=-4, cartan="A_{1,I}",
   paper_P=[(0, 0, 1), (T, Q(-4, 3), Q(-5, 3)), (0, 1, 0)])
_e("S_3,18", "U(3) + A1", 3,
   rho=(Q(2, 3), Q(2, 3), -H), rho_norm="-13/6", cartan="A_{3,0}",
   paper_P=[(0, 0, 1), (1, 0, -1), (0, 1, -1)])
_e("S_3,32,a", "U(4) + A1", 3,
   rho=(H, H, -H), rho_norm="-3/2", cartan="A_{1,II}",
   paper_P=[(0, 0, 1), (1, 0, -1), (0, 1, -1)])
_e("S_3,32,b", "<-8> + 2*A1", 3,
   rho=(H, -H, -H), rho_norm=-1, cartan="A_{2,I}",
   paper_P=[(0, 1, 0), (1, -1, -2), (1, -2, -1), (0, 0, 1)])
_e("S_3,32,c", "U(8) + A1 | glue 1/2,1/2,0", 3,
   rho=(Q(1, 4), Q(1, 4), -H), rho_norm="-1/2", cartan="A_{2,II}",
   paper_P=[(0, 0, 1), (1, 0, -1), (1, 1, -3), (0, 1, -1)],
   note="not generated by its 2-roots; same P as S_3,128,a")
_e("S_3,72", "<-24> + A2", 3,
   rho=(T, -1, -1), rho_norm="-2/3", cartan="A_{3,I}",
   paper_P=[(0, 1, 0), (1, -3, -4), (1, -4, -3), (0, 0, 1)])
_e("S_3,128,a", "U(8) + A1", 3,
   rho=(Q(1, 4), Q(1, 4), -H), rho_norm="-1/2", cartan="A_{2,II}",
   paper_P=[(0, 0, 1), (1, 0, -1), (1, 1, -3), (0, 1, -1)])
_e("S_3,128,b", "<-32> + 2*A1", 3,
   rho=(Q(3, 16), -H, -H), rho_norm="-1/8", cartan="A_{2,III}",
   paper_P=[(0, 1, 0), (1, -1, -4), (2, -4, -7), (3, -8, -9),
            (3, -9, -8), (2, -7, -4), (1, -4, -1), (0, 0, 1)])
_e("S_3,288", "U(12) + A1", 3,
   rho=(Q(1, 6), Q(1, 6), -H), rho_norm="-1/6", cartan="A_{3,II}",
   paper_P=[(0, 0, 1), (0, 1, -1), (1, 2, -5), (2, 2, -7),
            (2, 1, -5), (1, 0, -1)])
_e("S_3,12", "<-4> + A2", 3,
   rho=(1, -1, -1), rho_norm=-2, cartan="B_1", anisotropic=True,
   paper_P=[(0, 0, 1), (1, -2, -1), (1, -1, -2), (0, 1, 0)])
_e("S_3,24", "<-6> + 2*A1", 3,
   rho=(H, -H, -H), rho_norm="-1/2", cartan="B_3", anisotropic=True,
   paper_P=[(0, 1, 0), (0, 0, 1), (1, -2, 0), (2, -3, -2),
            (2, -2, -3), (1, 0, -2)])
_e("S_3,36", "<-12> + A2", 3,
   rho=(H, -1, -1), rho_norm=-1, cartan="B_2", anisotropic=True,
   paper_P=[(0, 1, 0), (0, 0, 1), (1, -3, -2), (1, -2, -3)])
_e("S_3,108", "<-36> + A2", 3,
   rho=(Q(1, 4), -1, -1), rho_norm="-1/4", cartan="B_4", anisotropic=True,
   paper_P=[(0, 1, 0), (0, 0, 1), (1, -5, -3), (2, -9, -8),
            (2, -8, -9), (1, -3, -5)])

# --- rank 4 ---------------------------------------------------------------

_e("S_4,3", "U + A2", 4, star=[("A", 2, 0)])
_e("S_4,4", "U + 2*A1", 4, star=[("A", 1, 0), ("A", 1, 1)])
_e("S_4,12", "U(2) + A2", 4,
   rho=(Q(3, 2), Q(3, 2), -1, -1),
   paper_P=[(0, 0, 1, 0), (0, 0, 0, 1), (1, 0, -1, -1), (0, 1, -1, -1)])
_e("S_4,16,a", "<-2> + 3*A1", 4,
   rho=(Q(3, 2), -H, -H, -H), rho_norm=-3,
   note="del Pezzo n=3, 6 roots")
_e("S_4,16,b", "<-4> + A3", 4,
   rho=(Q(3, 2), Q(-3, 2), -2, Q(-3, 2)),
   paper_P=[(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, -2, -2, -1), (1, -1, -2, -2)])
_e("S_4,27,a", "U(3) + A2", 4,
   rho=(1, 1, -1, -1),
   paper_P=[(0, 0, 1, 0), (0, 0, 0, 1), (1, 0, -1, -1), (0, 1, -1, -1)])
_e("S_4,27,b", "gram[[0,-3],[-3,2]] + A2", 4,
   rho=(1, 1, -1, -1),
   paper_P=[(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, 0, -1, -1), (1, 1, -1, -2), (1, 1, -2, -1)])
_e("S_4,64,a", "U(4) + 2*A1", 4,
   rho=(H, H, -H, -H), cartan="gram4,64,a",
   paper_P=[(0, 0, 1, 0), (0, 0, 0, 1), (1, 0, -1, 0), (1, 0, 0, -1),
            (0, 1, -1, 0), (0, 1, 0, -1), (1, 1, -2, -1), (1, 1, -1, -2)])
_e("S_4,64,b", "<-8> + 3*A1", 4,
   rho=(H, -H, -H, -H), cartan="gram4,64,b",
   paper_P=[(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, -1, -2, 0), (1, -1, 0, -2), (1, -2, -1, 0),
            (1, 0, -1, -2), (1, -2, 0, -1), (1, 0, -2, -1),
            (2, -3, -2, -2), (2, -2, -3, -2), (2, -2, -2, -3)])
_e("S_4,108", "U(6) + A2", 4,
   rho=(H, H, -1, -1),
   paper_P=[(0, 0, 1, 0), (0, 0, 0, 1), (1, 0, -1, -1), (0, 1, -1, -1),
            (1, 1, -2, -3), (1, 1, -3, -2)])
_e("S_4,28", "gram[[-2,-1,-1,-1],[-1,2,0,0],[-1,0,2,0],[-1,0,0,2]]", 4,
   rho=(1, 0, 0, 0), rho_norm=-2, anisotropic=True,
   paper_P=[(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1)])

# --- rank 5 ---------------------------------------------------------------

_e("S_5,4", "U + A3", 5, star=[("A", 3, 0)])
_e("S_5,8", "U + 3*A1", 5, star=[("A", 1, 0), ("A", 1, 1), ("A", 1, 2)])
_e("S_5,16", "<-4> + D4", 5,
   rho=(Q(5, 2), -3, -3, -3, -5),
   paper_P=[(0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0),
            (0, 0, 0, 0, 1), (1, -2, -2, -2, -3)])
_e("S_5,32,a", "<-2> + 4*A1", 5,
   rho=(Q(3, 2), -H, -H, -H, -H), rho_norm="-5/2",
   note="del Pezzo n=4, 10 roots")
_e("S_5,32,b", "<-8> + D4", 5,
   rho=(Q(3, 2), -3, -3, -3, -5),
   paper_P=[(0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0),
            (0, 0, 0, 0, 1), (1, -3, -2, -2, -4), (1, -2, -3, -2, -4),
            (1, -2, -2, -3, -4)])
_e("S_5,64", "<-16> + D4", 5,
   rho=(1, -3, -3, -3, -5),
   paper_P=[(0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0),
            (0, 0, 0, 0, 1), (1, -4, -3, -3, -5), (1, -3, -4, -3, -5),
            (1, -3, -3, -4, -5), (1, -3, -3, -3, -6)])
_e("S_5,128", "U(4) + 3*A1", 5,
   rho=(H, H, -H, -H, -H),
   paper_P=[(0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1),
            (1, 0, -1, 0, 0), (1, 0, 0, -1, 0), (1, 0, 0, 0, -1),
            (0, 1, -1, 0, 0), (0, 1, 0, -1, 0), (0, 1, 0, 0, -1),
            (1, 1, -2, -1, 0), (1, 1, -2, 0, -1), (1, 1, -1, -2, 0),
            (1, 1, 0, -2, -1), (1, 1, -1, 0, -2), (1, 1, 0, -1, -2),
            (2, 1, -1, -2, -2), (2, 1, -2, -1, -2), (2, 1, -2, -2, -1),
            (1, 2, -1, -2, -2), (1, 2, -2, -1, -2), (1, 2, -2, -2, -1),
            (2, 2, -3, -2, -2), (2, 2, -2, -3, -2), (2, 2, -2, -2, -3)])

# --- rank 6 ---------------------------------------------------------------

_e("S_6,4", "U + D4", 6, star=[("D", 4, 0)])
_e("S_6,5", "U + A4", 6, star=[("A", 4, 0)])
_e("S_6,9", "U + 2*A2", 6, star=[("A", 2, 0), ("A", 2, 2)])
_e("S_6,16,a", "U(2) + D4", 6,
   rho=(3, 3, -3, -3, -3, -5),
   paper_P=[(0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0),
            (0, 0, 0, 0, 0, 1), (1, 0, -1, -1, -1, -2),
            (0, 1, -1, -1, -1, -2)])
_e("S_6,16,b", "U + 4*A1", 6,
   star=[("A", 1, 0), ("A", 1, 1), ("A", 1, 2), ("A", 1, 3)])
_e("S_6,64,a", "<-2> + 5*A1", 6,
   rho=(Q(3, 2), -H, -H, -H, -H, -H), rho_norm=-2,
   note="del Pezzo n=5, 16 roots")
_e("S_6,64,b", "U(4) + D4", 6,
   rho=(Q(3, 2), Q(3, 2), -3, -3, -3, -5),
   paper_P=[(0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0),
            (0, 0, 0, 0, 0, 1), (1, 0, -1, -1, -1, -2),
            (0, 1, -1, -1, -1, -2), (1, 1, -3, -2, -2, -4),
            (1, 1, -2, -3, -2, -4), (1, 1, -2, -2, -3, -4)])
_e("S_6,81", "U(3) + 2*A2", 6,
   rho=(1, 1, -1, -1, -1, -1), cartan="gram6,64,b",
   paper_P=[(0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0),
            (0, 0, 0, 0, 0, 1),
            (1, 0, -1, -1, 0, 0), (1, 0, 0, 0, -1, -1),
            (0, 1, -1, -1, 0, 0), (0, 1, 0, 0, -1, -1),
            (1, 1, -2, -1, -1, -1), (1, 1, -1, -2, -1, -1),
            (1, 1, -1, -1, -2, -1), (1, 1, -1, -1, -1, -2)])

# --- rank 7 ---------------------------------------------------------------

_e("S_7,4", "U + D5", 7, star=[("D", 5, 0)])
_e("S_7,6", "U + A5", 7, star=[("A", 5, 0)])
_e("S_7,128", "<-2> + 6*A1", 7,
   rho=(Q(3, 2),) + (-H,) * 6, rho_norm="-3/2",
   note="del Pezzo n=6, 27 roots")

# --- rank 8 ---------------------------------------------------------------

_e("S_8,3", "U + E6", 8, star=[("E", 6, 0)])
_e("S_8,4", "U + D6", 8, star=[("D", 6, 0)])
_e("S_8,7", "U + A6", 8, star=[("A", 6, 0)])
_e("S_8,16", "U + 2*A3", 8, star=[("A", 3, 0), ("A", 3, 3)])
_e("S_8,27", "U + 3*A2", 8, star=[("A", 2, 0), ("A", 2, 2), ("A", 2, 4)])
_e("S_8,256", "<-2> + 7*A1", 8,
   rho=(Q(3, 2),) + (-H,) * 7, rho_norm=-1,
   note="del Pezzo n=7, 56 roots")

# --- rank 9 ---------------------------------------------------------------

_e("S_9,2", "U + E7", 9, star=[("E", 7, 0)])
_e("S_9,4", "U + D7", 9, star=[("D", 7, 0)])
_e("S_9,8", "U + A7", 9, star=[("A", 7, 0)])
_e("S_9,512", "<-2> + 8*A1", 9,
   rho=(Q(3, 2),) + (-H,) * 8, rho_norm="-1/2",
   note="del Pezzo n=8, 240 roots")

# --- rank 10 --------------------------------------------------------------

_e("S_10,1", "U + E8", 10, star=[("E", 8, 0)])
_e("S_10,4", "U + D8", 10, star=[("D", 8, 0)])
_e("S_10,16", "U + 2*D4", 10, star=[("D", 4, 0), ("D", 4, 4)])
_e("S_10,64", "U + 8*A1 | glue 0,0,1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2", 10,
   rho=(3, 2) + (-H,) * 8,
   paper_P=([tuple(int(i == 2 + j) for i in range(10)) for j in range(8)]
            + [tuple([1, 0] + [-int(i == j) for i in range(8)])
               for j in range(8)]
            + [(-1, 1, 0, 0, 0, 0, 0, 0, 0, 0),
               (1, 1) + (-H,) * 8]),
   note="U(2) + 2D4 presented as U + 8A1 [1/2^8]")

# --- rank 18 --------------------------------------------------------------

_e("S_18,1", "U + 2*E8", 18, star=[("E", 8, 0), ("E", 8, 8)])

# --- negative cases (elliptically 2-reflective, no lattice Weyl vector) ----

_e("neg:M_1,1,3", _m_desc(1, 1, 3), 3, exists=False,
   paper_P=[_mvec(1, 1, 3, 1, 0, 0), _mvec(1, 1, 3, 0, 1, 0),
            _mvec(1, 1, 3, 0, 2, 3), _mvec(1, 1, 3, 2, 3, 6)])
_e("neg:M_1,1,6", _m_desc(1, 1, 6), 3, exists=False,
   paper_P=[_mvec(1, 1, 6, 1, 0, 0), _mvec(1, 1, 6, 0, 1, 0),
            _mvec(1, 1, 6, 0, 5, 6), _mvec(1, 1, 6, 3, 16, 24),
            _mvec(1, 1, 6, 4, 15, 24), _mvec(1, 1, 6, 2, 3, 6)])
_e("neg:M_1,4,1", _m_desc(1, 4, 1), 3, exists=False,
   paper_P=[_mvec(1, 4, 1, 0, 0, 1), _mvec(1, 4, 1, 1, 0, 0),
            _mvec(1, 4, 1, 3, 12, 8), _mvec(1, 4, 1, 0, 4, 3)])
_e("neg:M_1,5,1", _m_desc(1, 5, 1), 3, exists=False,
   paper_P=[_mvec(1, 5, 1, 0, -5, -4), _mvec(1, 5, 1, 5, 40, 29),
            _mvec(1, 5, 1, 16, 150, 111), _mvec(1, 5, 1, 4, 45, 34),
            _mvec(1, 5, 1, 1, 20, 16), _mvec(1, 5, 1, 0, 10, 9)])
_e("neg:M_1,9,1", _m_desc(1, 9, 1), 3, exists=False,
   paper_P=[_mvec(1, 9, 1, 0, 0, 1), _mvec(1, 9, 1, 1, 0, 0),
            _mvec(1, 9, 1, 2, 9, 6), _mvec(1, 9, 1, 7, 54, 39),
            _mvec(1, 9, 1, 8, 72, 53), _mvec(1, 9, 1, 4, 45, 34),
            _mvec(1, 9, 1, 5, 72, 56), _mvec(1, 9, 1, 3, 54, 43),
            _mvec(1, 9, 1, 0, 9, 8)])
_e("neg:M_5,1,1", _m_desc(5, 1, 1), 3, exists=False,
   paper_P=[_mvec(5, 1, 1, 0, 1, 0), _mvec(5, 1, 1, 0, 0, 1),
            _mvec(5, 1, 1, 20, 15, 24), _mvec(5, 1, 1, 5, 4, 5)])
_e("neg:M_6,1,1", _m_desc(6, 1, 1), 3, exists=False,
   paper_P=[_mvec(6, 1, 1, 0, 1, 0), _mvec(6, 1, 1, 0, 0, 1),
            _mvec(6, 1, 1, 12, 9, 14), _mvec(6, 1, 1, 6, 5, 6)],
   note="isomorphic to M'_6,1,2 = [3a+c, b, 2c]")
_e("neg:M_10,1,1", _m_desc(10, 1, 1), 3, exists=False,
   paper_P=[_mvec(10, 1, 1, 0, 1, 0), _mvec(10, 1, 1, 0, 0, 1),
            _mvec(10, 1, 1, 20, 15, 24), _mvec(10, 1, 1, 30, 23, 34),
            _mvec(10, 1, 1, 60, 47, 66), _mvec(10, 1, 1, 40, 32, 43),
            _mvec(10, 1, 1, 40, 33, 42), _mvec(10, 1, 1, 10, 9, 10)])
_e("neg:S4-aniso", "<-60> + A2 | glue 1/3,-1/3,1/3", 3, exists=False,
   paper_P=[(0, 1, 0), (0, 0, 1), (T, Q(-7, 3), Q(-5, 3)),
            (Q(2, 3), Q(-8, 3), Q(-13, 3))], anisotropic=True)
_e("neg:S6-aniso", "<-132> + A2 | glue 1/3,-1/3,1/3", 3, exists=False,
   paper_P=[(0, 1, 0), (0, 0, 1), (T, Q(-10, 3), Q(-5, 3)),
            (Q(2, 3), Q(-17, 3), Q(-16, 3)), (1, -7, -9),
            (Q(2, 3), Q(-11, 3), Q(-19, 3))], anisotropic=True)
_e("neg:U(3)+2A1", "U(3) + 2*A1", 4, exists=False,
   paper_P=[(0, 0, 1, 0), (0, 0, 0, 1), (1, 0, -1, 0), (1, 0, 0, -1),
            (0, 1, -1, 0), (0, 1, 0, -1), (2, 2, -3, -2), (2, 2, -2, -3)],
   certificate=(6, 6, -3))
_e("neg:<-4>+<4>+A2", "<-4> + <4> + A2", 4, exists=False,
   paper_P=[(0, 0, 1, 0), (0, 0, 0, 1), (1, -1, -1, -1), (1, 1, -1, -1),
            (1, 0, -1, -2), (1, 0, -2, -1)],
   certificate=(4, 4, 0))
_e("neg:rank4-aniso", "gram[[-12,-2,0,0],[-2,2,-1,0],[0,-1,2,-1],[0,0,-1,2]]",
   4, exists=False, anisotropic=True,
   paper_P=[(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, -2, -2, -1),
            (1, 0, -2, -3), (1, -1, -3, -2), (2, -2, -4, -5),
            (2, -3, -4, -4)],
   certificate=(4, 5, 0))
_e("neg:<-6>+2A2", "<-6> + 2*A2", 5, exists=False,
   note="listed as <6>+2A2; the hyperbolic form is <-6>+2A2")

# M'_6,1,2 = [3a+c, b, 2c]: recorded presentation, same chamber as M_6,1,1.
MPRIME_612 = {
    "descriptor": None,  # built from basis rows below
    "basis_rows": [(3, 0, 1), (0, 1, 0), (0, 0, 2)],  # in (a, b, c)
    "paper_P": [(0, 1, 0), (0, 1, 1), (2, 5, 4), (4, 9, 6), (1, 1, 1)],
}

# Subchambers of reflection subgroups (concluding-remark data): stored with
# explicit root lists and verified by direct Gram computation.
SUBCHAMBERS = [
    {
        "name": "A_{1,III}",
        "lattice_desc": _m_desc(1, 1, 3),
        "P": [_mvec(1, 1, 3, 2, 3, 6), _mvec(1, 1, 3, 1, 6, 9),
              _mvec(1, 1, 3, 0, 5, 6), _mvec(1, 1, 3, 0, 1, 0),
              _mvec(1, 1, 3, 1, 0, 0)],
        "rho": (Q(1, 3), Q(7, 6), Q(5, 9)),
        "rho_norm": Q(-7, 18),
        "cartan": "A_{1,III}",
    },
    {
        "name": "A_{3,III}",
        "lattice_desc": _m_desc(1, 6, 1),
        "P": [_mvec(1, 6, 1, 1, 0, 0), _mvec(1, 6, 1, 3, 12, 8),
              _mvec(1, 6, 1, 5, 30, 21), _mvec(1, 6, 1, 7, 54, 39),
              _mvec(1, 6, 1, 8, 72, 53), _mvec(1, 6, 1, 8, 84, 63),
              _mvec(1, 6, 1, 7, 84, 64), _mvec(1, 6, 1, 5, 72, 56),
              _mvec(1, 6, 1, 3, 54, 43), _mvec(1, 6, 1, 1, 30, 25),
              _mvec(1, 6, 1, 0, 12, 11), _mvec(1, 6, 1, 0, 0, 1)],
        "rho": (Q(1, 6), Q(7, 24), Q(4, 3)),
        "rho_norm": Q(-1, 24),
        "cartan": "A_{3,III}",
    },
]

RANK_HISTOGRAM = {3: 15, 4: 11, 5: 7, 6: 8, 7: 3, 8: 6, 9: 4, 10: 4, 18: 1}

ANISOTROPIC_POSITIVE = ["S_3,12", "S_3,24", "S_3,36", "S_3,108", "S_4,28"]
