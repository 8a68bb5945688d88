"""Finite root lattices (positive roots, Coxeter numbers, Weyl vectors)
and Niemeier lattices built from embedded glue codes.

Glue codes are reference data validated at load time (evenness,
unimodularity, root count) rather than trusted.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

from . import _linalg as la
from .lattice import Lattice, LatticeError, build, glue_lattice
from .vinberg import is_positive_vector

Q = Fraction

DATA_DIR_ENV = "REFLEX_DATA_DIR"


class RootDatumError(LatticeError):
    pass


class Component:
    """One irreducible component of a 2-root system."""

    def __init__(self, indices, positive_roots, coxeter_number, highest_root,
                 weyl_vector):
        self.indices = indices            # basis positions spanned
        self.positive_roots = positive_roots
        self.coxeter_number = coxeter_number
        self.highest_root = highest_root  # coords in the full lattice basis
        self.weyl_vector = weyl_vector    # (1/2) sum of positive roots

    @property
    def rank(self):
        return len(self.indices)


class RootDatum:
    """2-root data of a positive definite lattice."""

    def __init__(self, lattice, positive_roots, components):
        self.lattice = lattice
        self.positive_roots = positive_roots
        self.components = components

    @property
    def coxeter_number(self):
        hs = {c.coxeter_number for c in self.components}
        if len(hs) != 1:
            raise RootDatumError("components have different Coxeter numbers")
        return hs.pop()

    @property
    def finite_weyl_vector(self):
        n = self.lattice.rank
        w = [Q(0)] * n
        for r in self.positive_roots:
            for i in range(n):
                w[i] += Q(r[i], 2)
        return tuple(w)


def root_datum(lattice, allow_sublattice=False):
    """Positive roots, per-component Coxeter numbers and highest roots.

    Components are split by root orthogonality (basis independent).  Unless
    allow_sublattice is set, the 2-roots must span the lattice rationally.
    """
    if not lattice.is_positive_definite():
        raise RootDatumError("root_datum needs a positive definite lattice")
    roots = [v for v, norm in lattice.short_vectors(2) if norm == 2]
    if not roots:
        raise RootDatumError("lattice has no 2-roots")
    positive = sorted(r for r in roots if is_positive_vector(r))
    n = lattice.rank
    if not allow_sublattice and la.rank([list(r) for r in positive]) < n:
        raise RootDatumError("lattice is not generated by its 2-roots")
    m = len(positive)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(m):
        for j in range(i + 1, m):
            if lattice.ip(positive[i], positive[j]) != 0:
                union(i, j)
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    components = []
    for idx in sorted(groups.values(), key=lambda g: positive[g[0]]):
        comp_roots = [positive[i] for i in idx]
        rank = la.rank([list(r) for r in comp_roots])
        h = Q(2 * len(comp_roots), rank)
        if h.denominator != 1:
            raise RootDatumError("root count not divisible by rank")
        highest = _highest_root(lattice, comp_roots)
        w = [Q(0)] * n
        for r in comp_roots:
            for i in range(n):
                w[i] += Q(r[i], 2)
        components.append(Component(list(range(rank)), comp_roots, int(h),
                                    highest, tuple(w)))
    return RootDatum(lattice, positive, components)


def _highest_root(lattice, comp_roots):
    """The dominant root: nonnegative pairing with every positive root."""
    for r in comp_roots:
        if all(lattice.ip(r, s) >= 0 for s in comp_roots):
            return r
    raise RootDatumError("no dominant root found")


def simple_roots_of_component(lattice, component):
    """Simple roots: positive roots not expressible as sums of two positives."""
    pos = set(component.positive_roots)
    simple = []
    for r in component.positive_roots:
        is_sum = False
        for s in component.positive_roots:
            if s == r:
                continue
            diff = tuple(a - b for a, b in zip(r, s))
            if diff in pos:
                is_sum = True
                break
        if not is_sum:
            simple.append(r)
    return sorted(simple)


# ---------------------------------------------------------------------------
# glue codes and Niemeier lattices


def _data_path(name):
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        path = os.path.join(override, name)
        if os.path.exists(path):
            return path
    return os.path.join(os.path.dirname(__file__), "data", name)


def _load_words(name):
    words = []
    with open(_data_path(name)) as fh:
        for line in fh:
            line = line.split("#")[0].strip()
            if not line:
                continue
            words.append([Q(tok) for tok in line.replace(",", " ").split()])
    return words


def _span_mod(words, modulus):
    """All distinct words in the span of generator rows mod `modulus`."""
    seen = {tuple(0 for _ in words[0])}
    frontier = [tuple(0 for _ in words[0])]
    gens = [tuple(int(x) % modulus for x in w) for w in words]
    while frontier:
        new_frontier = []
        for base in frontier:
            for g in gens:
                cand = tuple((a + b) % modulus for a, b in zip(base, g))
                if cand not in seen:
                    seen.add(cand)
                    new_frontier.append(cand)
        frontier = new_frontier
    return sorted(seen)


class NiemeierLattice:
    def __init__(self, name, components, lattice, glue_words):
        self.name = name
        self.components = components  # list of (letter, rank, offset)
        self.lattice = lattice
        self.glue_words = glue_words  # rational rows in root-basis coords

    @property
    def root_system_name(self):
        return self.name


_NIEMEIER_CACHE = {}

def _dn_class_in_basis(rank, label):
    """Class representative of D_n*/D_n in the simple-root basis."""
    # euclidean representatives
    if label == "0":
        eucl = [Q(0)] * rank
    elif label == "v":
        eucl = [Q(0)] * (rank - 1) + [Q(1)]
    elif label == "s":
        eucl = [Q(1, 2)] * rank
    elif label == "c":
        eucl = [Q(1, 2)] * (rank - 1) + [Q(-1, 2)]
    else:
        raise RootDatumError(f"unknown D_n class {label}")
    return _dn_euclid_to_basis(rank, eucl)


def _dn_basis_matrix(rank):
    """Rows: simple roots of D_n in euclidean coordinates (matches _gram_d)."""
    if rank == 4:
        # branch node last: e1, e2, e3 pairwise orthogonal, each meets e4
        return [[Q(x) for x in r] for r in
                [[1, -1, 0, 0], [0, 0, 1, -1], [0, 0, 1, 1], [0, 1, -1, 0]]]
    rows = []
    for i in range(rank - 1):
        row = [0] * rank
        row[i], row[i + 1] = 1, -1
        rows.append(row)
    row = [0] * rank
    row[rank - 2], row[rank - 1] = 1, 1
    rows.append(row)
    return [[Q(x) for x in r] for r in rows]


def _dn_euclid_to_basis(rank, eucl):
    basis = _dn_basis_matrix(rank)
    bt = la.transpose(basis)
    sol = la.solve(bt, eucl)
    if sol is None:
        raise RootDatumError("vector not in span of D_n basis")
    return sol


def _a2_class_in_basis(label):
    """Classes of A_2*/A_2 in the simple-root basis: 0, e1*, -e1*."""
    if label == "0":
        return [Q(0), Q(0)]
    if label == "1":
        return [Q(2, 3), Q(1, 3)]
    if label == "2":
        return [Q(-2, 3), Q(-1, 3)]
    raise RootDatumError(f"unknown A_2 class {label}")


def _a1_class_in_basis(label):
    if label == "0":
        return [Q(0)]
    if label == "1":
        return [Q(1, 2)]
    raise RootDatumError(f"unknown A_1 class {label}")


def niemeier(root_system_name):
    """Niemeier lattice N(R) for a supported root system R.

    Supported: 3E8, 3D8, 6D4, 24A1, 12A2.  Validated at construction:
    even, determinant 1, root count 24*h(R).
    """
    name = root_system_name.replace(" ", "")
    if name in _NIEMEIER_CACHE:
        return _NIEMEIER_CACHE[name]
    if name == "3E8":
        comps = [("E", 8, 0), ("E", 8, 8), ("E", 8, 16)]
        base = build("3*E8")
        words = []
    elif name == "3D8":
        comps = [("D", 8, 0), ("D", 8, 8), ("D", 8, 16)]
        base = build("3*D8")
        labels = _load_labels("d8_glue.txt")
        words = [_word_from_labels(comps, lab, _dn_class_in_basis)
                 for lab in labels]
    elif name == "6D4":
        comps = [("D", 4, 4 * i) for i in range(6)]
        base = build("6*D4")
        labels = _load_labels("hexacode_d4.txt")
        words = [_word_from_labels(comps, lab, _dn_class_in_basis)
                 for lab in labels]
    elif name == "24A1":
        comps = [("A", 1, i) for i in range(24)]
        base = build("24*A1")
        gens = _load_words("golay24.txt")
        words = [[Q(int(x), 2) for x in w] for w in gens]
    elif name == "12A2":
        comps = [("A", 2, 2 * i) for i in range(12)]
        base = build("12*A2")
        gens = _load_words("golay12_ternary.txt")
        words = []
        for w in gens:
            row = []
            for digit in w:
                row.extend(_a2_class_in_basis(str(int(digit) % 3)))
            words.append(row)
    else:
        raise RootDatumError(f"unsupported Niemeier root system {root_system_name}")
    lattice = glue_lattice(base, words, name=f"N({name})") if words else base
    n = NiemeierLattice(name, comps, lattice, words)
    _validate_niemeier(n)
    _NIEMEIER_CACHE[name] = n
    return n


def _load_labels(fname):
    rows = []
    with open(_data_path(fname)) as fh:
        for line in fh:
            line = line.split("#")[0].strip()
            if not line:
                continue
            rows.append(line.split())
    return rows


def _word_from_labels(comps, labels, class_fn):
    if len(labels) != len(comps):
        raise RootDatumError("glue word length mismatch")
    row = []
    for (letter, rank, offset), lab in zip(comps, labels):
        row.extend(class_fn(rank, lab) if letter == "D" else
                   _a2_class_in_basis(lab))
    return row


def _validate_niemeier(n):
    lat = n.lattice
    if lat.rank != 24:
        raise RootDatumError("Niemeier lattice must have rank 24")
    if not lat.integral:
        raise RootDatumError("Niemeier lattice must be even")
    if abs(lat.det()) != 1:
        raise RootDatumError("Niemeier lattice must be unimodular")
    # root count = 24 h(R), h from the first component
    comp_lat = build(f"{n.components[0][0]}{n.components[0][1]}")
    h = root_datum(comp_lat).coxeter_number
    roots = lat.short_vectors(2)
    if len(roots) != 24 * h:
        raise RootDatumError(
            f"N({n.name}): expected {24*h} roots, found {len(roots)}")


def nikulin_n8():
    """Nikulin's lattice: <8A1, (a1+...+a8)/2>, determinant 2^6."""
    base = build("8*A1")
    lat = glue_lattice(base, [[Q(1, 2)] * 8], name="N8")
    if abs(lat.det()) != 64:
        raise RootDatumError("N8 must have determinant 2^6")
    return lat


def orthogonal_root_count(k_rank_indices, host):
    """Number of 2-roots of the orthogonal complement of a component
    selection inside a Niemeier lattice.

    `k_rank_indices`: list of component indices of the host root system that
    form K (the embedding is the selection of these components), or a list of
    explicit basis positions when K = N8 inside N(24A1).
    """
    lat = host.lattice
    span_positions = set()
    for ci in k_rank_indices:
        letter, rank, offset = host.components[ci]
        span_positions.update(range(offset, offset + rank))
    # enumerate roots of N, count those orthogonal to the selected block
    count = 0
    for v, norm in lat.short_vectors(2):
        amb = _to_ambient(lat, v)
        if all(_pairs_zero(lat, amb, pos) for pos in span_positions):
            count += 1
    return count


def _to_ambient(lat, v):
    """Coordinates of v in the pre-glue (root-basis) coordinate system."""
    if lat.ambient_basis is None:
        return list(v)
    out = [Q(0)] * lat.rank
    for coef, row in zip(v, lat.ambient_basis):
        for j in range(lat.rank):
            out[j] += coef * row[j]
    return out


def _pairs_zero(lat, ambient_coords, pos):
    # ambient basis vectors are orthogonal across components, so a vector is
    # orthogonal to a component block iff its block coordinates pair to zero
    # against the block gram; blocks are root lattices (nondegenerate), so
    # this reduces to the block coordinates being zero.
    return ambient_coords[pos] == 0


def highest_root_in_basis(letter, rank):
    """Highest-root coefficients of an ADE lattice in its standard basis."""
    lat = build(f"{letter}{rank}")
    rd = root_datum(lat)
    if len(rd.components) != 1:
        raise RootDatumError("not irreducible")
    return rd.components[0].highest_root
