"""Matrix groups over F_p acting on row vectors, ``v -> v A``.

A vector ``(c0, ..., c_{n-1})`` is addressed by the integer ``sum c_i p^i``,
so the zero vector is point 0 of every permutation representation.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import perm
from .ffield import is_prime
from .perm import Permutation, PermGroup

MAX_VECTORS = 4096


# ---------------------------------------------------------------------------
# small dense linear algebra mod p

def identity_matrix(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a, b, p):
    n, k = len(a), len(b[0])
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) % p for j in range(k))
                 for i in range(n))


def mat_pow(a, e, p):
    result = identity_matrix(len(a))
    while e:
        if e & 1:
            result = mat_mul(result, a, p)
        a = mat_mul(a, a, p)
        e >>= 1
    return result


def determinant(a, p):
    m = [list(r) for r in a]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
    return det % p


def mat_inv(a, p):
    n = len(a)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], -1, p)
        m[col] = [x * inv % p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
    return tuple(tuple(r[n:]) for r in m)


def vec_mat(v, a, p):
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) % p for j in range(len(a[0])))


def index_of(v, p):
    """VectorIndex of ``v``: ``sum v_i p^i``."""
    return sum(int(c) * p**i for i, c in enumerate(v))


def vector_of(k, p, n):
    out = []
    for _ in range(n):
        k, r = divmod(k, p)
        out.append(r)
    return tuple(out)


def block_diagonal(blocks):
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - len(r)))
        off += len(b)
    return tuple(rows)


def _normalize_matrix(a, p, n):
    a = list(a)
    if a and not isinstance(a[0], (list, tuple)):
        flat = [int(x) for x in a]
        if len(flat) != n * n:
            raise ValueError(f"flat matrix needs {n * n} entries, got {len(flat)}")
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
    else:
        rows = [list(r) for r in a]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"matrix is not {n}x{n}")
    return tuple(tuple(int(x) % p for x in r) for r in rows)


# ---------------------------------------------------------------------------

class MatrixGroup:
    """Subgroup of GL_n(p) given by invertible generators."""

    def __init__(self, p, n, generators):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("dimension must be positive")
        gens = [_normalize_matrix(g, p, n) for g in generators]
        for g in gens:
            if determinant(g, p) == 0:
                raise ValueError(f"singular generator {g}")
        if not gens:
            gens = [identity_matrix(n)]
        self.p = p
        self.n = n
        self.generators = tuple(gens)

    def __repr__(self):
        return f"MatrixGroup(p={self.p}, n={self.n}, ngens={len(self.generators)})"

    @property
    def size_of_space(self):
        return self.p**self.n

    @cached_property
    def perm_group(self):
        return to_permutation_rep(self)

    def order(self):
        return self.perm_group.order()

    def index(self, v):
        return index_of(v, self.p)

    def vector(self, k):
        return vector_of(k, self.p, self.n)


def all_vectors(p, n):
    """Array of all vectors, row ``k`` holding the vector with index ``k``."""
    k = np.arange(p**n, dtype=np.int64)
    return np.stack([(k // p**i) % p for i in range(n)], axis=1)


def matrix_permutation(a, p, n, vecs=None):
    if vecs is None:
        vecs = all_vectors(p, n)
    powers = p ** np.arange(n, dtype=np.int64)
    images = ((vecs @ np.array(a, dtype=np.int64)) % p) @ powers
    return Permutation._raw(tuple(images.tolist()))


def to_permutation_rep(M, bound=MAX_VECTORS):
    """Permutation group on the ``p^n`` vectors induced by ``v -> v A``."""
    size = M.p**M.n
    if size > bound:
        raise ValueError(f"{M.p}^{M.n} = {size} vectors exceeds bound {bound}")
    vecs = all_vectors(M.p, M.n)
    return PermGroup([matrix_permutation(a, M.p, M.n, vecs) for a in M.generators], size)


def vector_orbits(M):
    """``(least index, size)`` for every orbit on V, sorted by index."""
    return [(orb[0], len(orb)) for orb in perm.orbits(M.perm_group)]


def centralizer_of_vector(M, v):
    """``C_G(v)`` as a permutation group on the vectors."""
    if not isinstance(v, int):
        v = M.index(v)
    return perm.pointwise_stabilizer(M.perm_group, [v])


def _reduce(rows, pivots, v, p):
    v = list(v)
    for r, c in zip(rows, pivots):
        if v[c]:
            f = v[c]
            v = [(x - f * y) % p for x, y in zip(v, r)]
    return v


def _insert(rows, pivots, v, p):
    c = next(i for i, x in enumerate(v) if x)
    inv = pow(v[c], -1, p)
    v = [x * inv % p for x in v]
    for k, r in enumerate(rows):
        if r[c]:
            f = r[c]
            rows[k] = [(x - f * y) % p for x, y in zip(r, v)]
    rows.append(v)
    pivots.append(c)


def spin(M, v):
    """Reduced echelon basis of the smallest invariant subspace containing ``v``."""
    if isinstance(v, int):
        v = M.vector(v)
    v = tuple(int(x) % M.p for x in v)
    if not any(v):
        raise ValueError("spin of the zero vector")
    p = M.p
    rows, pivots = [], []
    _insert(rows, pivots, v, p)
    queue = [tuple(v)]
    i = 0
    while i < len(queue) and len(rows) < M.n:
        w = queue[i]
        i += 1
        for a in M.generators:
            img = vec_mat(w, a, p)
            res = _reduce(rows, pivots, img, p)
            if any(res):
                _insert(rows, pivots, res, p)
                queue.append(img)
    order = sorted(range(len(rows)), key=lambda k: pivots[k])
    return [tuple(rows[k]) for k in order]


def is_irreducible(M):
    """True iff every nonzero orbit representative spins up to all of V."""
    return all(len(spin(M, rep)) == M.n for rep, _ in vector_orbits(M) if rep != 0)
