"""Constructors for the group families studied here, plus the catalog.

Matrices for F_{p^m} are written in the power basis ``1, x, ..., x^{m-1}`` of
``F_p[x]/(f)`` with ``f`` the lex-least irreducible (see :mod:`.ffield`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from pathlib import Path

import jsonschema
import numpy as np

from . import matgroup, perm
from .ffield import ExtField, divisors, is_prime
from .matgroup import MatrixGroup, identity_matrix, index_of
from .perm import Permutation, PermGroup

MAX_FIELD_SIZE = 4096


# ---------------------------------------------------------------------------
# semilinear groups

@lru_cache(maxsize=None)
def _field(p, m):
    return ExtField(p, m)


def semilinear_matrix(p, m, j, k):
    """Matrix of ``a -> a^(p^j) * w^k`` with ``w`` the primitive element."""
    F = _field(p, m)
    w = F.pow(F.primitive_element, k)
    rows = []
    for i in range(m):
        xi = F.element([0] * i + [1])
        rows.append(F.mul(F.pow(xi, p**j), w))
    return tuple(rows)


def _check_size(p, m):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p**m > MAX_FIELD_SIZE:
        raise ValueError(f"{p}^{m} exceeds {MAX_FIELD_SIZE}")


def gamma0(p, m):
    """Multiplications by nonzero field elements: a Singer cycle of order p^m - 1."""
    _check_size(p, m)
    return MatrixGroup(p, m, [semilinear_matrix(p, m, 0, 1)])


def frobenius_matrix(p, m):
    return semilinear_matrix(p, m, 1, 0)


def semilinear_group(p, m):
    """Gamma(p^m): Gamma_0 extended by the Frobenius, order m (p^m - 1)."""
    _check_size(p, m)
    return MatrixGroup(p, m, [semilinear_matrix(p, m, 0, 1), frobenius_matrix(p, m)])


def semilinear_subgroup(p, m, d, e, c):
    """``<w^d, phi^e w^c>`` inside Gamma(p^m); ``d | p^m - 1`` and ``e | m``."""
    _check_size(p, m)
    q1 = p**m - 1
    if d < 1 or q1 % d or e < 1 or m % e or not 0 <= c < q1:
        raise ValueError(f"bad parameters d={d}, e={e}, c={c} for {p}^{m}")
    return MatrixGroup(p, m, [semilinear_matrix(p, m, 0, d), semilinear_matrix(p, m, e, c)])


def _gamma_closure(p, m, gens):
    """Element set of a subgroup of Gamma(p^m), elements as pairs (j, k)
    meaning ``a -> a^(p^j) w^k``."""
    q1 = p**m - 1
    seen = {(0, 0)}
    queue = [(0, 0)]
    for j1, k1 in queue:
        for j2, k2 in gens:
            x = ((j1 + j2) % m, (k1 * p**j2 + k2) % q1)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return frozenset(seen)


def semilinear_parameters(p, m):
    """Distinct subgroups ``<w^d, phi^e w^c>`` as (d, e, c, order) tuples.

    ``c`` is swept only below ``d``: since ``w^d`` lies in the group,
    ``c`` and ``c + d`` give the same subgroup.  The first triple in
    (d, e, c) order names each element set.
    """
    _check_size(p, m)
    q1 = p**m - 1
    found = {}
    for d in divisors(q1):
        for e in divisors(m):
            for c in range(min(d, q1)):
                key = _gamma_closure(p, m, [(0, d % q1), (e % m, c)])
                if key not in found:
                    found[key] = (d, e, c, len(key))
    return sorted(found.values())


def enumerate_semilinear_subgroups(p, m, irreducible_only=False):
    out = []
    for d, e, c, _ in semilinear_parameters(p, m):
        M = semilinear_subgroup(p, m, d, e, c)
        if irreducible_only and not matgroup.is_irreducible(M):
            continue
        out.append(M)
    return out


# ---------------------------------------------------------------------------
# wreath products

def transitive_solvable_groups(degree):
    """Transitive solvable groups of degree 2..5, as (name, group)."""
    P = Permutation.from_cycles
    n = degree
    table = {
        2: [("C2", [[[0, 1]]])],
        3: [("C3", [[[0, 1, 2]]]), ("S3", [[[0, 1, 2]], [[0, 1]]])],
        4: [("C4", [[[0, 1, 2, 3]]]),
            ("V4", [[[0, 1], [2, 3]], [[0, 2], [1, 3]]]),
            ("D4", [[[0, 1, 2, 3]], [[0, 2]]]),
            ("A4", [[[0, 1, 2]], [[0, 1], [2, 3]]]),
            ("S4", [[[0, 1, 2, 3]], [[0, 1]]])],
        5: [("C5", [[[0, 1, 2, 3, 4]]]),
            ("D5", [[[0, 1, 2, 3, 4]], [[1, 4], [2, 3]]]),
            ("F20", [[[0, 1, 2, 3, 4]], [[1, 2, 4, 3]]])],
    }
    if n not in table:
        raise ValueError(f"no table for degree {n}")
    return [(name, PermGroup([P(c, n) for c in gens])) for name, gens in table[n]]


def wreath_linear(H, S, max_dim=None):
    """``H wr S`` in dimension ``a*m``: H in the first block plus block permutations."""
    a, m, p = H.n, S.degree, H.p
    if max_dim is not None and a * m > max_dim:
        raise ValueError(f"dimension {a * m} exceeds {max_dim}")
    if p ** (a * m) > matgroup.MAX_VECTORS:
        raise ValueError(f"{p}^{a * m} exceeds {matgroup.MAX_VECTORS} vectors")
    gens = []
    for h in H.generators:
        gens.append(matgroup.block_diagonal([h] + [identity_matrix(a)] * (m - 1)))
    for s in S.generators:
        rows = [[0] * (a * m) for _ in range(a * m)]
        for i in range(m):
            j = s(i)
            for t in range(a):
                rows[i * a + t][j * a + t] = 1
        gens.append(rows)
    return MatrixGroup(p, a * m, gens)


def direct_sum(M1, M2, diagonal=False):
    """Block-diagonal join on V1 + V2; ``diagonal`` pairs the generators up."""
    if M1.p != M2.p:
        raise ValueError("direct sum needs a common characteristic")
    I1, I2 = identity_matrix(M1.n), identity_matrix(M2.n)
    if diagonal:
        k = max(len(M1.generators), len(M2.generators))
        g1 = list(M1.generators) + [I1] * (k - len(M1.generators))
        g2 = list(M2.generators) + [I2] * (k - len(M2.generators))
        gens = [matgroup.block_diagonal([a, b]) for a, b in zip(g1, g2)]
    else:
        gens = ([matgroup.block_diagonal([a, I2]) for a in M1.generators]
                + [matgroup.block_diagonal([I1, b]) for b in M2.generators])
    return MatrixGroup(M1.p, M1.n + M2.n, gens)


# ---------------------------------------------------------------------------
# affine groups

def affine_group(M):
    """``V : G`` acting on the ``p^n`` vectors: linear part plus translations."""
    p, n = M.p, M.n
    size = p**n
    if size > matgroup.MAX_VECTORS:
        raise ValueError(f"{size} points exceeds {matgroup.MAX_VECTORS}")
    vecs = matgroup.all_vectors(p, n)
    powers = p ** np.arange(n, dtype=np.int64)
    gens = list(M.perm_group.generators)
    for i in range(n):
        shifted = vecs.copy()
        shifted[:, i] = (shifted[:, i] + 1) % p
        gens.append(Permutation._raw(tuple((shifted @ powers).tolist())))
    return PermGroup(gens, size)


def two_point_stabilizer(A, x, y):
    return perm.pointwise_stabilizer(A, [x, y])


# ---------------------------------------------------------------------------
# named groups

def general_linear(n, p):
    if p**n > matgroup.MAX_VECTORS:
        raise ValueError(f"GL({n},{p}) acts on too many vectors")
    F = _field(p, 1)
    w = F.primitive_element[0]
    diag = [list(r) for r in identity_matrix(n)]
    diag[0][0] = w
    gens = [diag]
    for i in range(n):
        for j in range(n):
            if i != j:
                t = [list(r) for r in identity_matrix(n)]
                t[i][j] = 1
                gens.append(t)
    if p == 2 and n == 1:
        gens = [identity_matrix(1)]
    return MatrixGroup(p, n, gens)


NAMED = ("GL(n,p)", "SL(2,3)", "Q8", "C31:C3")


def named_group(name):
    """``GL(n,p)``, ``SL(2,3)``, ``Q8`` (in GL(2,3)) or ``C31:C3`` (in GL(3,5))."""
    key = name.replace(" ", "")
    if key.startswith("GL(") and key.endswith(")"):
        try:
            n, p = (int(t) for t in key[3:-1].split(","))
        except ValueError:
            raise ValueError(f"unknown group name {name!r}") from None
        if not is_prime(p):
            raise ValueError(f"GL({n},{p}): {p} is not prime")
        return general_linear(n, p)
    if key == "SL(2,3)":
        return MatrixGroup(3, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    if key in ("Q8", "Q8-in-GL(2,3)"):
        return MatrixGroup(3, 2, [[[0, 2], [1, 0]], [[1, 1], [1, 2]]])
    if key in ("C31:C3", "C31:C3-in-GL(3,5)"):
        return semilinear_subgroup(5, 3, 4, 1, 0)
    raise ValueError(f"unknown group name {name!r}")


# ---------------------------------------------------------------------------
# catalog

PROVENANCES = ("semilinear", "wreath", "named", "imported")


@dataclass
class CatalogEntry:
    """A labelled group with flags recomputed from the group itself."""

    label: str
    group: object
    provenance: str
    irreducible: bool | None = None
    odd_order: bool = False
    primitive_affine: bool = False
    params: dict = field(default_factory=dict)
    parts: tuple = ()

    @property
    def is_matrix(self):
        return isinstance(self.group, MatrixGroup)

    @property
    def perm_group(self):
        return self.group.perm_group if self.is_matrix else self.group

    @property
    def degree(self):
        return self.perm_group.degree

    def order(self):
        return self.group.order()


def make_entry(label, group, provenance, params=None, parts=()):
    if provenance not in PROVENANCES:
        raise ValueError(f"unknown provenance {provenance!r}")
    entry = CatalogEntry(label, group, provenance, params=dict(params or {}), parts=parts)
    entry.odd_order = group.order() % 2 == 1
    if isinstance(group, MatrixGroup):
        entry.irreducible = matgroup.is_irreducible(group)
        entry.primitive_affine = entry.irreducible
    return entry


IMPORT_SCHEMA = {
    "type": "object",
    "required": ["generators"],
    "properties": {
        "label": {"type": "string"},
        "degree": {"type": "integer", "minimum": 1},
        "dimension": {"type": "integer", "minimum": 1},
        "characteristic": {"type": "integer", "minimum": 2},
        "generators": {
            "type": "array",
            "minItems": 1,
            "items": {"anyOf": [{"type": "string"}, {"type": "array"}]},
        },
    },
    "oneOf": [
        {"required": ["degree"], "not": {"required": ["dimension"]}},
        {"required": ["dimension", "characteristic"], "not": {"required": ["degree"]}},
    ],
}


class ImportError_(ValueError):
    """Malformed group file."""


def parse_group(data, label=None):
    """Build a MatrixGroup or PermGroup from the JSON group format."""
    try:
        jsonschema.validate(data, IMPORT_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ImportError_(f"group file does not match schema: {exc.message}") from None
    gens = data["generators"]
    if "degree" in data:
        n = data["degree"]
        out = []
        for g in gens:
            try:
                if isinstance(g, str):
                    p = Permutation.parse(g, n)
                else:
                    p = Permutation(g)
            except ValueError as exc:
                raise ImportError_(f"bad permutation {g!r}: {exc}") from None
            if p.degree != n:
                raise ImportError_(f"permutation of degree {p.degree}, expected {n}")
            out.append(p)
        return PermGroup(out, n)
    p, n = data["characteristic"], data["dimension"]
    if not is_prime(p):
        raise ImportError_(f"characteristic {p} is not prime")
    mats = []
    for g in gens:
        if isinstance(g, str):
            raise ImportError_("matrices must be integer lists")
        try:
            a = matgroup._normalize_matrix(g, p, n)
        except (ValueError, TypeError) as exc:
            raise ImportError_(str(exc)) from None
        if matgroup.determinant(a, p) == 0:
            raise ImportError_(f"non-invertible matrix {g!r}")
        mats.append(a)
    return MatrixGroup(p, n, mats)


def import_group(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ImportError_(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ImportError_(f"{path}: expected a JSON object")
    group = parse_group(data)
    label = data.get("label") or path.stem
    return make_entry(label, group, "imported", params={"path": str(path)})


def export_group(group, label):
    """Inverse of :func:`parse_group`."""
    if isinstance(group, MatrixGroup):
        return {"label": label, "dimension": group.n, "characteristic": group.p,
                "generators": [[list(r) for r in g] for g in group.generators]}
    return {"label": label, "degree": group.degree,
            "generators": [list(g.images) for g in group.generators]}


@dataclass(frozen=True)
class CatalogLimits:
    max_field: int = 243
    max_dim: int = 6
    max_degree: int = 243
    wreath: bool = True
    named: bool = True
    transitive: bool = True
    imports: tuple = ()


def semilinear_label(p, m, d, e, c):
    return f"Gamma({p}^{m};d={d},e={e},c={c})"


def prime_powers(limit):
    out = []
    for p in range(2, limit + 1):
        if is_prime(p):
            m = 1
            while p**m <= limit:
                out.append((p, m))
                m += 1
    return sorted(out, key=lambda t: (t[0] ** t[1], t[0]))


def semilinear_entries(limits):
    out = []
    for p, m in prime_powers(min(limits.max_field, limits.max_degree)):
        for d, e, c, _ in semilinear_parameters(p, m):
            M = semilinear_subgroup(p, m, d, e, c)
            if not matgroup.is_irreducible(M):
                continue
            out.append(make_entry(semilinear_label(p, m, d, e, c), M, "semilinear",
                                  params={"p": p, "m": m, "d": d, "e": e, "c": c}))
    return out


def wreath_entries(limits, semilinear):
    out = []
    tops = {k: transitive_solvable_groups(k) for k in (2, 3, 4, 5)}
    for H in semilinear:
        a, p = H.group.n, H.group.p
        for k in (2, 3, 4, 5):
            if a * k > limits.max_dim or p ** (a * k) > limits.max_degree:
                continue
            for sname, S in tops[k]:
                M = wreath_linear(H.group, S)
                out.append(make_entry(f"{H.label} wr {sname}", M, "wreath",
                                      params={"H": H.label, "S": sname},
                                      parts=(H.group, S)))
    return out


def named_entries(limits):
    out = []
    for name in ("GL(2,2)", "GL(2,3)", "SL(2,3)", "Q8", "C31:C3"):
        M = named_group(name)
        if M.p**M.n <= limits.max_degree:
            out.append(make_entry(name, M, "named"))
    return out


def transitive_entries():
    out = []
    for k in (2, 3, 4, 5):
        for name, S in transitive_solvable_groups(k):
            out.append(make_entry(f"T{k}:{name}", S, "named"))
    return out


def catalog(limits=CatalogLimits()):
    """Deterministic list of catalog entries; labels are unique."""
    semi = semilinear_entries(limits)
    entries = list(semi)
    if limits.wreath:
        entries += wreath_entries(limits, semi)
    if limits.named:
        entries += named_entries(limits)
    if limits.transitive:
        entries += transitive_entries()
    for path in limits.imports:
        entries.append(import_group(path))
    seen = set()
    for e in entries:
        if e.label in seen:
            raise ValueError(f"duplicate catalog label {e.label!r}")
        seen.add(e.label)
    return entries
