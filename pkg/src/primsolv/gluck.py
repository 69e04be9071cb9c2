"""Power-set actions of permutation groups.

Subsets of ``{0, ..., m-1}`` are bitmasks.  The whole power set is orbited at
once with numpy: each generator becomes an image array over all ``2^m``
masks and the orbits are the weak components of the resulting graph.
"""

from __future__ import annotations

import io
from itertools import chain

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import perm
from .perm import PermGroup

MAX_DEGREE = 22


def mask_images(g, masks):
    """Image of every mask in ``masks`` under the permutation tuple ``g``."""
    out = np.zeros_like(masks)
    for i, x in enumerate(g):
        out |= ((masks >> i) & 1) << x
    return out


def _check(S, max_degree):
    if S.degree > max_degree:
        raise ValueError(f"degree {S.degree} exceeds power-set bound {max_degree}")


class SubsetOrbitTable:
    """Orbits of ``S`` on all ``2^m`` subsets, numbered by least member."""

    def __init__(self, S, max_degree=MAX_DEGREE):
        _check(S, max_degree)
        m = S.degree
        n = 1 << m
        self.group = S
        self.degree = m
        self.group_order = S.order()
        masks = np.arange(n, dtype=np.int64)
        gens = [g.images for g in S.generators if not g.is_identity()]
        if gens:
            src = np.concatenate([masks] * len(gens))
            dst = np.concatenate([mask_images(g, masks) for g in gens])
            graph = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
            k, labels = connected_components(graph, directed=True, connection="weak")
        else:
            k, labels = n, masks
        least = np.full(k, n, dtype=np.int64)
        np.minimum.at(least, labels, masks)
        order = np.argsort(least, kind="stable")
        rank = np.empty(k, dtype=np.int64)
        rank[order] = np.arange(k)
        self.orbit_of = rank[labels]
        self.reps = least[order]
        self.sizes = np.bincount(self.orbit_of, minlength=k)
        full = n - 1
        self.complement_orbit = self.orbit_of[full ^ self.reps]

    def __len__(self):
        return len(self.reps)

    def stabilizer_order(self, orbit_id):
        return self.group_order // int(self.sizes[orbit_id])

    def regular_ids(self):
        return np.flatnonzero(self.sizes == self.group_order)

    def rows(self):
        """``(mask, size, stabilizer order, regular, complement orbit)`` per orbit."""
        for i, mask in enumerate(self.reps):
            size = int(self.sizes[i])
            yield (int(mask), size, self.group_order // size,
                   size == self.group_order, int(self.complement_orbit[i]))

    def to_csv(self):
        buf = io.StringIO()
        buf.write("bitmask,size,stabilizer_order,regular,complement_orbit\n")
        for mask, size, stab, reg, comp in self.rows():
            buf.write(f"{mask},{size},{stab},{int(reg)},{comp}\n")
        return buf.getvalue()


def regular_powerset_orbits(S, max_degree=MAX_DEGREE, table=None):
    """Least masks of all orbits on which ``S`` acts regularly."""
    _check(S, max_degree)
    if not perm.is_transitive(S):
        raise ValueError("group must be transitive")
    table = table or SubsetOrbitTable(S, max_degree)
    return [int(table.reps[i]) for i in table.regular_ids()]


def regular_orbit_noncomplement(S, max_degree=MAX_DEGREE, table=None):
    """Return ``(witness mask or None, number of regular orbits)``.

    The witness is the least regular representative whose complement lies in
    another orbit.
    """
    _check(S, max_degree)
    if not perm.is_primitive(S):
        raise ValueError("group must be primitive")
    table = table or SubsetOrbitTable(S, max_degree)
    ids = table.regular_ids()
    witness = None
    for i in ids:
        if table.complement_orbit[i] != i:
            witness = int(table.reps[i])
            break
    return witness, len(ids)


def _mask_to_points(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _submasks(mask):
    """Nonempty proper submasks of ``mask``, increasing."""
    pts = _mask_to_points(mask)
    out = np.zeros(1, dtype=np.int64)
    for x in pts:
        out = np.concatenate([out, out | (1 << x)])
    out.sort()
    return out[1:-1]


def _fixed(elems, cand):
    """Boolean array: is ``cand[j]`` fixed by some element of ``elems``."""
    hit = np.zeros(len(cand), dtype=bool)
    for t in elems:
        hit |= mask_images(t, cand) == cand
    return hit


def trivializing_partition(S, max_degree=MAX_DEGREE, max_parts=4):
    """Partition of the points into at most four parts whose setwise
    stabilizers meet trivially.

    Search order: increasing number of parts; the first part runs over
    power-set orbit representatives by increasing mask, later parts over
    submasks of what is left by increasing mask.  The last part is the
    remainder.  Failing for every ``k <= max_parts`` raises RuntimeError.
    """
    _check(S, max_degree)
    if not perm.is_primitive(S):
        raise ValueError("group must be primitive")
    m = S.degree
    full = (1 << m) - 1
    if S.order() == 1:
        return [list(range(m))]
    table = SubsetOrbitTable(S, max_degree)
    ident = tuple(range(m))

    def stab_elems(mask, within):
        out = []
        for t in within:
            if perm._mask_image(t, mask) == mask:
                out.append(t)
        return out

    all_elems = [e for e in S.chain.elements() if e != ident]
    for k in range(2, max_parts + 1):
        for i, rep in enumerate(table.reps):
            rep = int(rep)
            if rep == 0 or rep == full:
                continue
            if k == 2 and table.sizes[i] != table.group_order:
                continue
            found = _extend_partition([rep], full ^ rep, stab_elems(rep, all_elems), k)
            if found:
                return [_mask_to_points(x) for x in found]
    raise RuntimeError(f"no trivializing partition with at most {max_parts} parts")


def _extend_partition(parts, rest, stab, k):
    if len(parts) == k - 1:
        return parts + [rest] if not stab else None
    cand = _submasks(rest)
    if len(cand) == 0:
        return None
    if len(parts) == k - 2:
        ok = ~_fixed(stab, cand) if stab else np.ones(len(cand), dtype=bool)
        hits = np.flatnonzero(ok)
        if len(hits) == 0:
            return None
        x = int(cand[hits[0]])
        return parts + [x, rest ^ x]
    for x in cand:
        x = int(x)
        sub = [t for t in stab if perm._mask_image(t, x) == x]
        found = _extend_partition(parts + [x], rest ^ x, sub, k)
        if found:
            return found
    return None


def partition_is_trivializing(S, parts):
    """Independent check: no nonidentity element fixes every part."""
    masks = [perm.subset_to_mask(p) for p in parts]
    if sorted(chain.from_iterable(parts)) != list(range(S.degree)):
        return False
    ident = tuple(range(S.degree))
    for e in S.chain.elements():
        if e != ident and all(perm._mask_image(e, x) == x for x in masks):
            return False
    return True
