"""Exact double-description method for pointed polyhedral cones.

`extreme_rays(rows)` enumerates the extreme rays of {x : a.x <= 0 for a in rows}
over the rationals, entirely in integer arithmetic.  Rays are returned as
primitive integer vectors, deterministically ordered.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import _linalg as la

Q = Fraction


def _primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g > 1:
        vec = tuple(x // g for x in vec)
    return tuple(vec)


def _int_rows(rows):
    out = []
    for r in rows:
        ints = la.clear_denominators([Q(x) for x in r])
        out.append(tuple(ints))
    return out


def extreme_rays(rows, dim=None):
    """Extreme rays of the cone {x : a.x <= 0 for each row a}.

    The cone must be pointed (the rows must span the dual space); raises
    ValueError otherwise.  Output rays r satisfy a.r <= 0 for all rows.
    """
    rows = _int_rows(rows)
    if not rows:
        raise ValueError("no constraints")
    d = dim or len(rows[0])
    if la.rank([list(r) for r in rows]) < d:
        raise ValueError("cone is not pointed (constraints do not span)")

    # choose d independent rows for the initial simplicial cone
    chosen = []
    chosen_idx = []
    for i, r in enumerate(rows):
        if la.rank([list(x) for x in chosen] + [list(r)]) > len(chosen):
            chosen.append(r)
            chosen_idx.append(i)
            if len(chosen) == d:
                break
    a_inv = la.mat_inverse([list(r) for r in chosen])
    # ray j: a_i . r_j = -delta_ij  ->  r_j = -(A^-1) e_j (column j)
    rays = []
    zsets = []
    for j in range(d):
        col = [-a_inv[i][j] for i in range(d)]
        ray = _primitive(tuple(la.clear_denominators(col)))
        rays.append(ray)
        mask = 0
        for t, idx in enumerate(chosen_idx):
            if t != j:
                mask |= 1 << idx
        zsets.append(mask)

    processed = 0
    for idx in chosen_idx:
        processed |= 1 << idx

    remaining = [i for i in range(len(rows)) if i not in chosen_idx]
    for c in remaining:
        a = rows[c]
        vals = [sum(ai * ri for ai, ri in zip(a, ray)) for ray in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not pos:
            # constraint redundant; still update tightness bits
            for i in zer:
                zsets[i] |= 1 << c
            processed |= 1 << c
            continue
        new_rays = []
        new_zsets = []
        for i in zer:
            new_rays.append(rays[i])
            new_zsets.append(zsets[i] | (1 << c))
        for i in neg:
            new_rays.append(rays[i])
            new_zsets.append(zsets[i])
        # combine adjacent (pos, neg) pairs
        nrays = len(rays)
        for ip in pos:
            zp = zsets[ip]
            vp = vals[ip]
            for im in neg:
                zm = zsets[im]
                common = zp & zm
                # quick filter: adjacency needs at least d-2 common tight rows
                if common.bit_count() < d - 2:
                    continue
                adjacent = True
                for k in range(nrays):
                    if k != ip and k != im and (zsets[k] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vm = vals[im]
                new = tuple(vp * rm - vm * rp
                            for rp, rm in zip(rays[ip], rays[im]))
                new_rays.append(_primitive(new))
                new_zsets.append(common | (1 << c))
        rays = new_rays
        zsets = new_zsets
        processed |= 1 << c
    order = sorted(range(len(rays)), key=lambda i: rays[i])
    uniq = []
    seen = set()
    for i in order:
        if rays[i] not in seen:
            seen.add(rays[i])
            uniq.append(rays[i])
    return uniq
