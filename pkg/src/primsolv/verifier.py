"""Theorem-level checks over matrix groups and their affine extensions.

Every check returns a :class:`Verdict` whose status is one of ``pass``,
``fail``, ``n/a`` (hypotheses not met) or ``untested``.  A ``fail`` inside a
claim's hypotheses contradicts a published statement and should be treated
as a bug report.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import gluck, matgroup, perm
from .constructions import CatalogEntry, affine_group
from .perm import NotSolvableError

SCHEMA_VERSION = "1.0"
DEFAULT_THRESHOLD = 9

# Order bound for primitive solvable groups of degree n: 24^(-1/3) n^PW_EXPONENT.
# The exponent is the three-decimal truncation of the published constant.
PW_EXPONENT_NUM = 3243
PW_EXPONENT_DEN = 1000
PW_CITATION = "Palfy (1982), Wolf (1982): |G| roughly 24^(-1/3) n^3.24"

GLUCK_MAX_DEGREE = 16

CLAIMS = ("thm-main", "thm-mod-ii", "lem-oddqp", "lem-evenqp", "lem-r", "thm-even",
          "wreath-dl", "seress-4", "palfy-wolf", "gluck-i", "gluck-ii", "gluck-iii")


_COUNTS = {"type": "object", "required": ["pass", "fail", "n/a"],
           "properties": {k: {"type": "integer", "minimum": 0} for k in ("pass", "fail", "n/a")}}

# JSON schema of the ``verify`` report, version SCHEMA_VERSION.
REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "threshold", "entries", "summary"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "threshold": {"type": "integer", "minimum": 0},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "provenance", "order", "degree", "flags", "verdicts"],
                "properties": {
                    "label": {"type": "string"},
                    "provenance": {"enum": ["semilinear", "wreath", "named", "imported"]},
                    "order": {"type": "integer", "minimum": 1},
                    "degree": {"type": "integer", "minimum": 1},
                    "r": {"type": "integer", "minimum": 1},
                    "good_count": {"type": "integer", "minimum": 0},
                    "dl": {"type": "integer", "minimum": 0},
                    "min_two_point_dl": {"type": "integer", "minimum": 0},
                    "centralizer_orders": {"type": "array", "items": {"type": "integer"}},
                    "flags": {"type": "object"},
                    "verdicts": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["claim", "status", "witness"],
                            "properties": {
                                "claim": {"enum": list(CLAIMS)},
                                "status": {"enum": ["pass", "fail", "n/a"]},
                                "witness": {"type": "object"},
                            },
                        },
                    },
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["claims", "failures", "untested_at_desk_scale",
                         "max_min_two_point_dl"],
            "properties": {
                "claims": {"type": "object", "additionalProperties": _COUNTS},
                "failures": {"type": "array"},
                "untested_at_desk_scale": {"type": "array", "items": {"enum": list(CLAIMS)}},
                "max_min_two_point_dl": {"type": ["integer", "null"]},
            },
        },
    },
}

@dataclass
class Verdict:
    claim: str
    status: str
    witness: dict = field(default_factory=dict)

    def to_dict(self):
        return {"claim": self.claim, "status": self.status, "witness": self.witness}


@dataclass
class OrbitRow:
    representative: int
    vector: tuple
    size: int
    centralizer_order: int
    derived_length: int
    abelian: bool
    cyclic: bool | None


@dataclass
class GoodOrbitReport:
    label: str
    p: int
    n: int
    group_order: int
    group_derived_length: int
    threshold: int
    rows: list

    @property
    def r(self):
        return len(self.rows)

    @property
    def good_count(self):
        return sum(1 for row in self.rows if row.derived_length <= self.threshold)

    @property
    def regular_count(self):
        return sum(1 for row in self.rows if row.centralizer_order == 1)

    def min_nonzero_dl(self):
        dls = [row.derived_length for row in self.rows if row.representative != 0]
        return min(dls) if dls else None

    def to_dict(self):
        return {
            "label": self.label, "p": self.p, "n": self.n,
            "group_order": self.group_order,
            "group_derived_length": self.group_derived_length,
            "threshold": self.threshold, "r": self.r, "good_count": self.good_count,
            "rows": [{**asdict(row), "vector": list(row.vector)} for row in self.rows],
        }


def _cyclic_flag(C):
    try:
        return perm.is_cyclic(C)
    except ValueError:
        return None


def analyze(M, threshold=DEFAULT_THRESHOLD, label=""):
    """Per-orbit structure of ``C_G(v)`` for one representative of each orbit."""
    G = M.perm_group
    try:
        dl_G = perm.derived_length(G)
    except NotSolvableError:
        raise ValueError(f"{label or M!r} is not solvable") from None
    rows = []
    for rep, size in matgroup.vector_orbits(M):
        C = G if rep == 0 else matgroup.centralizer_of_vector(M, rep)
        dl = dl_G if rep == 0 else perm.derived_length(C)
        rows.append(OrbitRow(rep, M.vector(rep), size, C.order(), dl, dl <= 1,
                             _cyclic_flag(C)))
    return GoodOrbitReport(label, M.p, M.n, G.order(), dl_G, threshold, rows)


# ---------------------------------------------------------------------------
# claims about modules

def check_thm_even(report, irreducible=True):
    """At least two good orbits; fewer than five forces dl(G) <= 6."""
    if not irreducible:
        return Verdict("thm-even", "n/a", {"reason": "module not irreducible"})
    good = report.good_count
    ok = good >= 2 and (good >= 5 or report.group_derived_length <= 6)
    return Verdict("thm-even", "pass" if ok else "fail",
                   {"good_count": good, "dl_G": report.group_derived_length})


def check_lem_r(report, irreducible=True):
    if not irreducible:
        return Verdict("lem-r", "n/a", {"reason": "module not irreducible"})
    r, dl = report.r, report.group_derived_length
    ok = (r > 2 or dl <= 4) and (r > 4 or dl <= 6)
    return Verdict("lem-r", "pass" if ok else "fail", {"r": r, "dl_G": dl})


def check_thm_mod_ii(report, applicable):
    """Some ``C_G(v)`` is abelian when ``|V| |G|`` is odd."""
    if not applicable:
        return Verdict("thm-mod-ii", "n/a", {"reason": "|V||G| even or not completely reducible"})
    for row in report.rows:
        if row.abelian:
            return Verdict("thm-mod-ii", "pass", {"vector": row.representative,
                                                  "centralizer_order": row.centralizer_order})
    return Verdict("thm-mod-ii", "fail", {})


def check_lem_oddqp(report, applicable):
    """Some ``C_G(v)`` is cyclic for odd-order semilinear groups on odd V."""
    if not applicable:
        return Verdict("lem-oddqp", "n/a", {"reason": "not an odd semilinear module"})
    for row in report.rows:
        if row.cyclic:
            return Verdict("lem-oddqp", "pass", {"vector": row.representative,
                                                 "centralizer_order": row.centralizer_order})
    return Verdict("lem-oddqp", "fail", {})


def check_lem_evenqp(report, quasiprimitive):
    """Five regular orbits once dl(G) >= 10 on a quasiprimitive module."""
    if not quasiprimitive or report.group_derived_length < 10:
        return Verdict("lem-evenqp", "n/a", {"dl_G": report.group_derived_length})
    regular = report.regular_count
    return Verdict("lem-evenqp", "pass" if regular >= 5 else "fail",
                   {"regular_orbits": regular})


def check_wreath_dl(dl_G, dl_H, dl_S):
    ok = dl_G <= dl_H + dl_S
    return Verdict("wreath-dl", "pass" if ok else "fail",
                   {"dl_G": dl_G, "dl_H": dl_H, "dl_S": dl_S})


def check_lemma_gt(A, J, K, ell, parent=None, limit=perm.INTERSECTION_LIMIT):
    """Intersection of the ``J_i`` has derived length at most ``ell``.

    Hypotheses (``J_i <= A``, ``J_i^(ell) <= K_i``, ``(cap K_i) cap A = 1``)
    are validated first; when they fail, or an intersection would exceed
    ``limit``, the verdict is ``n/a``.
    """
    if len(J) != len(K) or not J:
        raise ValueError("need equally many J_i and K_i, at least one")
    groups = [A, *J, *K]
    degree = A.degree
    if any(X.degree != degree for X in groups):
        raise ValueError("subgroups act on different domains")
    if parent is not None and not all(perm.is_subgroup(X, parent) for X in groups):
        raise ValueError("subgroups do not share the given parent")
    for Ji, Ki in zip(J, K):
        if not perm.is_subgroup(Ji, A):
            return Verdict("lem-gt", "n/a", {"reason": "J_i not in A"})
        series = perm.derived_series(Ji)
        top = series[ell] if ell < len(series) else series[-1]
        if not perm.is_subgroup(top, Ki):
            return Verdict("lem-gt", "n/a", {"reason": "J_i^(l) not in K_i"})
    try:
        meet = A
        for Ki in K:
            meet = perm.intersection(meet, Ki, limit)
        if meet.order() != 1:
            return Verdict("lem-gt", "n/a", {"reason": "(cap K_i) cap A nontrivial"})
        inter = J[0]
        for Ji in J[1:]:
            inter = perm.intersection(inter, Ji, limit)
    except ValueError:
        return Verdict("lem-gt", "n/a", {"reason": f"order above {limit}"})
    try:
        dl = perm.derived_length(inter)
    except NotSolvableError:
        return Verdict("lem-gt", "fail", {"ell": ell, "dl": None, "order": inter.order()})
    return Verdict("lem-gt", "pass" if dl <= ell else "fail",
                   {"ell": ell, "dl": dl, "order": inter.order()})


# ---------------------------------------------------------------------------
# claims about primitive affine groups

def min_two_point_dl(A):
    """Least derived length of ``A_{0,y}``, one ``y`` per orbit of ``A_0``.

    Returns ``(x, y, dl)`` with ``x = 0``.
    """
    G0 = perm.pointwise_stabilizer(A, [0])
    best = None
    for orb in perm.orbits(G0):
        y = orb[0]
        if y == 0:
            continue
        dl = perm.derived_length(perm.pointwise_stabilizer(G0, [y]))
        if best is None or dl < best[2]:
            best = (0, y, dl)
    return best


def _greedy_base(A, k):
    H = A
    pts = []
    while H.order() > 1 and len(pts) < k:
        orbs = [o for o in perm.orbits(H) if len(o) > 1]
        x = max(orbs, key=lambda o: (len(o), -o[0]))[0]
        pts.append(x)
        H = perm.pointwise_stabilizer(H, [x])
    return pts if H.order() == 1 else None


def _exhaustive_base(H, k, pts=()):
    if H.order() == 1:
        return list(pts)
    if k == 0:
        return None
    orbs = [o for o in perm.orbits(H) if len(o) > 1]
    if max(len(o) for o in orbs) ** k < H.order():
        return None
    for o in orbs:
        found = _exhaustive_base(perm.pointwise_stabilizer(H, [o[0]]), k - 1, (*pts, o[0]))
        if found is not None:
            return found
    return None


RANDOM_BASE_TRIES = 64


def _random_base(A, k, rng):
    """Random ``k``-tuples, each re-verified by a deterministic chain rebuild."""
    m = A.degree
    for _ in range(RANDOM_BASE_TRIES):
        pts = rng.sample(range(m), min(k, m))
        if perm.pointwise_stabilizer(A, pts).order() == 1:
            return sorted(pts)
    return None


def find_base(A, k, rng=None):
    """Points with trivial pointwise stabilizer, at most ``k`` of them, or None.

    Greedy largest-orbit descent first, then an exhaustive search over orbit
    representatives of successive stabilizers (complete, since any base can
    be conjugated onto such representatives level by level).  With ``rng``,
    random tuples are tried before the greedy step.
    """
    if rng is not None:
        found = _random_base(A, k, rng)
        if found is not None:
            return found
    return _greedy_base(A, k) or _exhaustive_base(A, k)


def check_seress(A, odd=None, seed=None):
    if odd is None:
        odd = A.order() % 2 == 1
    k = 3 if odd else 4
    rng = None if seed is None else random.Random(seed)
    base = find_base(A, k, rng)
    status = "pass" if base is not None else "fail"
    return Verdict("seress-4", status, {"bound": k, "base": base})


def palfy_wolf_holds(order, n):
    """``order <= 24^(-1/3) n^3.243``, exactly: ``order^3000 * 24^1000 <= n^9729``."""
    den = PW_EXPONENT_DEN
    if n.bit_length() * 3 * PW_EXPONENT_NUM < 10**7:
        return order ** (3 * den) * 24**den <= n ** (3 * PW_EXPONENT_NUM)
    bound = palfy_wolf_bound(n)
    return order <= bound * (1 + 1e-6)


def palfy_wolf_bound(n):
    return 24 ** (-1 / 3) * n ** (PW_EXPONENT_NUM / PW_EXPONENT_DEN)


def check_palfy_wolf(A, stabilizer_order=None):
    n = A.degree
    if stabilizer_order is None:
        stabilizer_order = perm.pointwise_stabilizer(A, [0]).order()
    ok = palfy_wolf_holds(stabilizer_order, n)
    return Verdict("palfy-wolf", "pass" if ok else "fail",
                   {"degree": n, "stabilizer_order": stabilizer_order,
                    "bound": round(palfy_wolf_bound(n), 3), "source": PW_CITATION})


def check_thm_main(A, report=None):
    """Two-point stabilizer of derived length at most 9, with the affine path
    cross-checked against the centralizer path when a report is given."""
    x, y, dl = min_two_point_dl(A)
    witness = {"x": x, "y": y, "dl": dl}
    status = "pass" if dl <= 9 else "fail"
    if report is not None:
        other = report.min_nonzero_dl()
        witness["centralizer_path_dl"] = other
        if other != dl:
            status = "fail"
            witness["reason"] = "affine and centralizer paths disagree"
    return Verdict("thm-main", status, witness)


# ---------------------------------------------------------------------------
# power-set claims

def gluck_checks(S, max_degree=GLUCK_MAX_DEGREE):
    """Verdicts for the three parts of Gluck's permutation lemma on ``S``."""
    m = S.degree
    transitive = perm.is_transitive(S)
    primitive = transitive and perm.is_primitive(S)
    odd = S.order() % 2 == 1
    out = []
    if m > max_degree or not transitive:
        reason = {"reason": "degree above sweep bound" if m > max_degree else "intransitive"}
        return [Verdict(c, "n/a", reason) for c in ("gluck-i", "gluck-ii", "gluck-iii")]
    table = gluck.SubsetOrbitTable(S)
    if odd and m <= 15:
        regs = gluck.regular_powerset_orbits(S, table=table)
        out.append(Verdict("gluck-i", "pass" if regs else "fail",
                           {"regular_orbits": len(regs), "first": regs[0] if regs else None}))
    else:
        out.append(Verdict("gluck-i", "n/a", {"reason": "even order or degree > 15"}))
    if primitive and m >= 10:
        witness, count = gluck.regular_orbit_noncomplement(S, table=table)
        ok = count >= 8 and witness is not None
        out.append(Verdict("gluck-ii", "pass" if ok else "fail",
                           {"regular_orbits": count, "witness": witness}))
    else:
        out.append(Verdict("gluck-ii", "n/a", {"reason": "not primitive of degree >= 10"}))
    if primitive:
        try:
            parts = gluck.trivializing_partition(S)
            ok = len(parts) <= 4 and gluck.partition_is_trivializing(S, parts)
            out.append(Verdict("gluck-iii", "pass" if ok else "fail", {"parts": parts}))
        except RuntimeError:
            out.append(Verdict("gluck-iii", "fail", {"parts": None}))
    else:
        out.append(Verdict("gluck-iii", "n/a", {"reason": "not primitive"}))
    return out


# ---------------------------------------------------------------------------
# catalog sweeps

def verify_entry(entry: CatalogEntry, threshold=DEFAULT_THRESHOLD,
                 gluck_max_degree=GLUCK_MAX_DEGREE, seed=None):
    """All applicable verdicts for one catalog entry, as a JSON-ready dict.

    ``seed`` switches on randomized base search; the per-entry generator is
    seeded from ``(seed, label)`` so results do not depend on scheduling.
    """
    out = {"label": entry.label, "provenance": entry.provenance,
           "order": entry.order(), "degree": entry.degree,
           "flags": {"irreducible": entry.irreducible, "odd_order": entry.odd_order,
                     "primitive_affine": entry.primitive_affine}}
    verdicts = []
    if entry.is_matrix:
        M = entry.group
        report = analyze(M, threshold, entry.label)
        out.update(r=report.r, good_count=report.good_count,
                   dl=report.group_derived_length,
                   centralizer_orders=[row.centralizer_order for row in report.rows])
        irr = bool(entry.irreducible)
        odd_module = M.p % 2 == 1 and entry.odd_order
        completely_reducible = irr or entry.order() % M.p != 0
        verdicts.append(check_thm_mod_ii(report, odd_module and completely_reducible))
        verdicts.append(check_lem_oddqp(report, odd_module and irr
                                        and entry.provenance == "semilinear"))
        verdicts.append(check_lem_evenqp(report, irr and entry.provenance == "semilinear"))
        verdicts.append(check_lem_r(report, irr))
        verdicts.append(check_thm_even(report, irr))
        if entry.provenance == "wreath" and entry.parts:
            H, S = entry.parts
            verdicts.append(check_wreath_dl(report.group_derived_length,
                                         perm.derived_length(H.perm_group),
                                         perm.derived_length(S)))
        if entry.primitive_affine:
            A = affine_group(M)
            main = check_thm_main(A, report)
            out["min_two_point_dl"] = main.witness["dl"]
            verdicts.append(main)
            entry_seed = None if seed is None else f"{seed}:{entry.label}"
            verdicts.append(check_seress(A, odd=(A.order() % 2 == 1), seed=entry_seed))
            verdicts.append(check_palfy_wolf(A, stabilizer_order=report.group_order))
            if A.degree <= gluck_max_degree:
                verdicts.extend(gluck_checks(A, gluck_max_degree))
    else:
        verdicts.extend(gluck_checks(entry.group, gluck_max_degree))
    out["verdicts"] = [v.to_dict() for v in verdicts]
    return out


def _verify_star(args):
    return verify_entry(*args)


def summarize(results):
    counts = {c: {"pass": 0, "fail": 0, "n/a": 0} for c in CLAIMS}
    failures = []
    for res in results:
        for v in res["verdicts"]:
            counts[v["claim"]][v["status"]] += 1
            if v["status"] == "fail":
                failures.append({"label": res["label"], **v})
    untested = [c for c, k in counts.items() if k["pass"] + k["fail"] == 0]
    dls = [res["min_two_point_dl"] for res in results if "min_two_point_dl" in res]
    return {
        "claims": counts,
        "failures": failures,
        "untested_at_desk_scale": untested,
        "max_min_two_point_dl": max(dls) if dls else None,
    }


def verify_catalog(entries, threshold=DEFAULT_THRESHOLD, jobs=1,
                   gluck_max_degree=GLUCK_MAX_DEGREE, seed=None):
    """Full sweep; identical output for any ``jobs``."""
    args = [(e, threshold, gluck_max_degree, seed) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_star, args, chunksize=4))
    else:
        results = [_verify_star(a) for a in args]
    return {"schema_version": SCHEMA_VERSION, "threshold": threshold,
            "entries": results, "summary": summarize(results)}


def report_failed(report):
    return bool(report["summary"]["failures"])

