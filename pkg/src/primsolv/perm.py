"""Permutations, permutation groups and stabilizer chains.

Points are ``0 .. n-1``.  Products act left to right: ``a * b`` (equivalently
``compose(a, b)``) sends ``x`` to ``b(a(x))``.  Conjugation ``a ** b`` is
``b^-1 * a * b``.

The hot loops work on plain tuples of images; :class:`Permutation` is the
thin public wrapper around one such tuple.
"""

from __future__ import annotations

import re
import threading
from collections import deque
from math import lcm, prod

CYCLIC_SEARCH_LIMIT = 10**4
INTERSECTION_LIMIT = 10**4
SETWISE_DEGREE_LIMIT = 24


class NotSolvableError(ValueError):
    """Raised when a derived length is asked of a non-solvable group."""


# ---------------------------------------------------------------------------
# raw tuple helpers

def _mul(a, b):
    return tuple(map(b.__getitem__, a))


def _inv(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _first_moved(a):
    for i, x in enumerate(a):
        if i != x:
            return i
    return None


def _cycle_lengths(a):
    seen = bytearray(len(a))
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            k += 1
        lengths.append(k)
    return lengths


def _element_order(a):
    return lcm(*_cycle_lengths(a)) if a else 1


# ---------------------------------------------------------------------------

class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image table."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        if not images:
            raise ValueError("permutation degree must be positive")
        self.images = images

    @classmethod
    def _raw(cls, images):
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, degree):
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree):
        images = list(range(degree))
        for cycle in cycles:
            cycle = [int(c) for c in cycle]
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle}")
            for i, x in enumerate(cycle):
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} outside degree {degree}")
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def parse(cls, text, degree=None):
        """Parse ``"[1, 0, 2]"`` (image list) or ``"(0,1)(2,3)"`` (cycles).

        Cycle notation needs ``degree``; an empty product ``"()"`` is the
        identity.
        """
        text = text.strip()
        if text.startswith("["):
            body = text[1:-1].strip()
            images = [int(t) for t in re.split(r"[,\s]+", body) if t]
            p = cls(images)
            if degree is not None and p.degree != degree:
                raise ValueError(f"expected degree {degree}, got {p.degree}")
            return p
        if degree is None:
            raise ValueError("cycle notation needs an explicit degree")
        if not re.fullmatch(r"(\(\s*(\d+(\s*[,\s]\s*\d+)*)?\s*\)\s*)+", text):
            raise ValueError(f"could not parse permutation {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
            if pts:
                cycles.append(pts)
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, other):
        if isinstance(other, Permutation):
            return compose(compose(other.inverse(), self), other)
        if other < 0:
            return self.inverse() ** (-other)
        result = tuple(range(self.degree))
        base = self.images
        while other:
            if other & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            other >>= 1
        return Permutation._raw(result)

    def inverse(self):
        return Permutation._raw(_inv(self.images))

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def order(self):
        return _element_order(self.images)

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def cycle_string(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return self.cycle_string()


def compose(a, b):
    """Return the permutation ``x -> b(a(x))``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    return Permutation._raw(_mul(a.images, b.images))


def inverse(a):
    return a.inverse()


# ---------------------------------------------------------------------------
# stabilizer chains

class _Level:
    __slots__ = ("point", "gens", "orbit", "u", "uinv", "done")

    def __init__(self, point, identity):
        self.point = point
        self.gens = []
        self.orbit = [point]
        # u[y] maps point -> y; inverses are filled in on demand
        self.u = {point: identity}
        self.uinv = {point: identity}
        self.done = set()

    def _visit(self, x, s):
        y = s[x]
        if y not in self.u:
            self.u[y] = _mul(self.u[x], s)
            self.orbit.append(y)

    def inv(self, y):
        ui = self.uinv.get(y)
        if ui is None:
            ui = self.uinv[y] = _inv(self.u[y])
        return ui

    def add_generator(self, g):
        self.gens.append(g)
        old = len(self.orbit)
        for x in self.orbit[:old]:
            self._visit(x, g)
        i = old
        while i < len(self.orbit):
            x = self.orbit[i]
            i += 1
            for s in self.gens:
                self._visit(x, s)


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    ``base`` may prescribe an initial segment of base points; further points
    are the smallest point moved by the generator that forces a new level.
    When the group order is known in advance, passing it as ``order`` stops
    the Schreier generator checks as soon as the chain reaches that size.
    """

    def __init__(self, degree, generators=(), base=(), order=None):
        self.degree = degree
        self.identity = tuple(range(degree))
        if len(set(base)) != len(base):
            raise ValueError("base points must be distinct")
        self.levels = [_Level(b, self.identity) for b in base]
        self._target = order
        start = None
        for g in generators:
            g = tuple(g.images) if isinstance(g, Permutation) else tuple(g)
            h, j = self.sift(g)
            if h != self.identity:
                self._add(h, 0, j)
                start = j if start is None else max(start, j)
        if start is not None:
            self._complete(len(self.levels) - 1)

    @classmethod
    def _from_levels(cls, degree, levels):
        chain = object.__new__(cls)
        chain.degree = degree
        chain.identity = tuple(range(degree))
        chain.levels = levels
        chain._target = None
        return chain

    @property
    def base(self):
        return [L.point for L in self.levels]

    def order(self):
        return prod(len(L.orbit) for L in self.levels)

    def strong_generators(self):
        seen = set()
        out = []
        for L in self.levels:
            for g in L.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def basic_orbits(self):
        return [list(L.orbit) for L in self.levels]

    def sift(self, g, start=0):
        """Strip ``g`` through the chain; return (residue, level reached)."""
        levels = self.levels
        for i in range(start, len(levels)):
            L = levels[i]
            x = g[L.point]
            if x != L.point:
                ui = L.uinv.get(x)
                if ui is None:
                    if x not in L.u:
                        return g, i
                    ui = L.inv(x)
                g = tuple(map(ui.__getitem__, g))
        return g, len(levels)

    def contains(self, g):
        h, _ = self.sift(g)
        return h == self.identity

    def _add(self, h, lo, j):
        if j == len(self.levels):
            self.levels.append(_Level(_first_moved(h), self.identity))
        for l in range(lo, j + 1):
            self.levels[l].add_generator(h)

    def _done(self):
        return self._target is not None and self.order() == self._target

    def _complete(self, i):
        while i >= 0:
            if self._done():
                return
            L = self.levels[i]
            hit = None
            for k, s in enumerate(L.gens):
                for x in L.orbit:
                    if (x, k) in L.done:
                        continue
                    L.done.add((x, k))
                    y = s[x]
                    t = _mul(L.u[x], s)
                    uy = L.u[y]
                    if t == uy:
                        continue
                    h, j = self.sift(_mul(t, L.inv(y)), i + 1)
                    if h != self.identity:
                        hit = (h, j)
                        break
                if hit:
                    break
            if hit:
                h, j = hit
                self._add(h, i + 1, j)
                i = j
            else:
                i -= 1

    def extend(self, g):
        """Add ``g`` to the group; return True if the group grew."""
        g = tuple(g.images) if isinstance(g, Permutation) else tuple(g)
        h, j = self.sift(g)
        if h == self.identity:
            return False
        self._target = None
        self._add(h, 0, j)
        self._complete(len(self.levels) - 1)
        return True

    def tail(self, k):
        """Chain of the pointwise stabilizer of the first ``k`` base points."""
        return StabilizerChain._from_levels(self.degree, self.levels[k:])

    def elements(self):
        elems = [self.identity]
        for L in reversed(self.levels):
            if len(L.orbit) == 1:
                continue
            us = [L.u[x] for x in L.orbit]
            elems = [_mul(e, u) for e in elems for u in us]
        return elems


# ---------------------------------------------------------------------------

class PermGroup:
    """A permutation group given by generators; its chain is built lazily."""

    def __init__(self, generators, degree=None, *, _chain=None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            if degree is None:
                raise ValueError("need generators or a degree")
            gens = [Permutation.identity(degree)]
        if degree is None:
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.generators = tuple(gens)
        self._chain = _chain
        self._lock = threading.Lock()

    @classmethod
    def _from_raw(cls, gens, degree, chain=None):
        return cls([Permutation._raw(g) for g in gens], degree, _chain=chain)

    @classmethod
    def trivial(cls, degree):
        return cls([], degree)

    @classmethod
    def symmetric(cls, degree):
        if degree < 3:
            return cls([Permutation.from_cycles([list(range(degree))], degree)], degree)
        return cls([Permutation.from_cycles([[0, 1]], degree),
                    Permutation.from_cycles([list(range(degree))], degree)])

    def __getstate__(self):
        return {"degree": self.degree, "generators": self.generators, "_chain": self._chain}

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    @property
    def chain(self):
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.degree, self._raw_gens())
        return self._chain

    def _raw_gens(self):
        return [g.images for g in self.generators]

    def order(self):
        return self.chain.order()

    def __contains__(self, p):
        return membership(self, p)

    def __iter__(self):
        return (Permutation._raw(e) for e in self.chain.elements())

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def build_chain(G):
    return G.chain


def order(G):
    return G.order()


def membership(G, p):
    if p.degree != G.degree:
        return False
    return G.chain.contains(p.images)


def elements(G):
    return list(G)


def group_from_elements(elems, degree):
    """Subgroup generated by ``elems``, keeping only generators that enlarge it."""
    chain = StabilizerChain(degree)
    gens = []
    for e in elems:
        e = e.images if isinstance(e, Permutation) else tuple(e)
        if chain.extend(e):
            gens.append(e)
    return PermGroup._from_raw(gens, degree, chain)


def is_trivial(G):
    return all(g.is_identity() for g in G.generators)


# ---------------------------------------------------------------------------
# orbits

def orbit(G, x):
    """Points reachable from ``x``, in breadth-first discovery order."""
    if not 0 <= x < G.degree:
        raise ValueError(f"point {x} outside degree {G.degree}")
    gens = G._raw_gens()
    seen = {x}
    out = [x]
    i = 0
    while i < len(out):
        y = out[i]
        i += 1
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                out.append(z)
    return out


def orbits(G):
    """All orbits, each sorted, listed by smallest point."""
    gens = G._raw_gens()
    n = G.degree
    label = [-1] * n
    out = []
    for x in range(n):
        if label[x] >= 0:
            continue
        k = len(out)
        label[x] = k
        orb = [x]
        i = 0
        while i < len(orb):
            y = orb[i]
            i += 1
            for g in gens:
                z = g[y]
                if label[z] < 0:
                    label[z] = k
                    orb.append(z)
        out.append(sorted(orb))
    return out


def number_of_orbits(G):
    return len(orbits(G))


def is_transitive(G):
    return len(orbit(G, 0)) == G.degree


# ---------------------------------------------------------------------------
# stabilizers

def pointwise_stabilizer(G, pts):
    """Subgroup fixing every point of ``pts``."""
    pts = [int(x) for x in pts]
    if not pts:
        return G
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    for x in pts:
        if not 0 <= x < G.degree:
            raise ValueError(f"point {x} outside degree {G.degree}")
    chain = StabilizerChain(G.degree, G.chain.strong_generators(), base=pts,
                            order=G.order())
    k = len(pts)
    sub = chain.tail(k)
    gens = chain.levels[k].gens if k < len(chain.levels) else []
    return PermGroup._from_raw(gens, G.degree, sub)


def _mask_image(g, mask):
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << g[i]
        mask >>= 1
        i += 1
    return out


def subset_to_mask(subset):
    mask = 0
    for x in subset:
        mask |= 1 << x
    return mask


def setwise_stabilizer(G, subset, max_degree=SETWISE_DEGREE_LIMIT):
    """Subgroup mapping ``subset`` (bitmask or iterable of points) to itself.

    Orbits the subset's bitmask, then keeps the Schreier generators of its
    stabilizer that enlarge the group built so far.
    """
    if G.degree > max_degree:
        raise ValueError(f"degree {G.degree} exceeds setwise bound {max_degree}")
    mask = subset if isinstance(subset, int) else subset_to_mask(subset)
    gens = G._raw_gens()
    trans = {mask: tuple(range(G.degree))}
    queue = [mask]
    i = 0
    while i < len(queue):
        m = queue[i]
        i += 1
        for g in gens:
            m2 = _mask_image(g, m)
            if m2 not in trans:
                trans[m2] = _mul(trans[m], g)
                queue.append(m2)
    target = G.order() // len(trans)
    chain = StabilizerChain(G.degree)
    stab = []
    for m in queue:
        if chain.order() == target:
            break
        for g in gens:
            t = _mul(trans[m], g)
            sg = _mul(t, _inv(trans[_mask_image(g, m)]))
            if chain.extend(sg):
                stab.append(sg)
    return PermGroup._from_raw(stab, G.degree, chain)


def intersection(G, H, limit=INTERSECTION_LIMIT):
    """Intersection by filtering the elements of the smaller group."""
    if G.degree != H.degree:
        raise ValueError("groups act on different degrees")
    small, big = (G, H) if G.order() <= H.order() else (H, G)
    if small.order() > limit:
        raise ValueError(f"intersection needs order <= {limit}")
    chain = big.chain
    return group_from_elements((e for e in small.chain.elements() if chain.contains(e)),
                               G.degree)


def is_subgroup(H, G):
    return H.degree == G.degree and all(membership(G, h) for h in H.generators)


# ---------------------------------------------------------------------------
# derived series

def commutator(a, b):
    """``a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def normal_closure(G, elems):
    """Smallest subgroup normalised by ``G`` containing ``elems``."""
    chain = StabilizerChain(G.degree)
    gens = []
    for e in elems:
        e = e.images if isinstance(e, Permutation) else e
        if chain.extend(e):
            gens.append(e)
    conj = [(g, _inv(g)) for g in G._raw_gens()]
    i = 0
    while i < len(gens):
        n = gens[i]
        i += 1
        for g, gi in conj:
            c = _mul(_mul(gi, n), g)
            if chain.extend(c):
                gens.append(c)
    return PermGroup._from_raw(gens, G.degree, chain)


def derived_subgroup(G):
    gens = [g.images for g in G.generators if not g.is_identity()]
    comms = []
    for i in range(len(gens)):
        a = gens[i]
        ai = _inv(a)
        for j in range(i + 1, len(gens)):
            b = gens[j]
            comms.append(_mul(_mul(_mul(ai, _inv(b)), a), b))
    return normal_closure(G, comms)


def derived_series(G):
    """``[G, G', G'', ...]`` up to the first repeated term."""
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)


def is_solvable(G):
    return derived_series(G)[-1].order() == 1


def derived_length(G):
    series = derived_series(G)
    if series[-1].order() != 1:
        raise NotSolvableError("group is not solvable")
    return len(series) - 1


def is_abelian(G):
    gens = [g.images for g in G.generators]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if _mul(gens[i], gens[j]) != _mul(gens[j], gens[i]):
                return False
    return True


def is_cyclic(G, limit=CYCLIC_SEARCH_LIMIT):
    """Decide cyclicity by looking for an element of order ``|G|``.

    Non-abelian groups are rejected at once; abelian groups above ``limit``
    raise instead of guessing.
    """
    n = G.order()
    if n == 1:
        return True
    if not is_abelian(G):
        return False
    if n > limit:
        raise ValueError(f"cyclicity search refused above order {limit}")
    return any(_element_order(e) == n for e in G.chain.elements())


# ---------------------------------------------------------------------------
# blocks

def _finest_block_system(gens, n, a, b):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        x, y = find(x), find(y)
        if x == y:
            return False
        if x > y:
            x, y = y, x
        parent[y] = x
        return True

    union(a, b)
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if union(u, v):
                queue.append((u, v))
    blocks = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(x)
    return sorted(blocks.values())


def minimal_blocks(G):
    """A nontrivial minimal block system, or ``None`` if ``G`` is primitive.

    The finest system joining 0 with ``x`` is computed by union-find for one
    ``x`` per orbit of the stabilizer of 0; the system with the smallest
    blocks wins (ties broken by ``x``).
    """
    if not is_transitive(G):
        raise ValueError("block systems need a transitive group")
    n = G.degree
    if n <= 2:
        return None
    gens = G._raw_gens()
    best = None
    for orb in orbits(pointwise_stabilizer(G, [0])):
        x = orb[0]
        if x == 0:
            continue
        blocks = _finest_block_system(gens, n, 0, x)
        if len(blocks) > 1 and (best is None or len(blocks[0]) < len(best[0])):
            best = blocks
    return best


def is_primitive(G):
    return is_transitive(G) and minimal_blocks(G) is None
