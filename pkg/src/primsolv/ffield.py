"""Prime fields and their extensions F_{p^m} = F_p[x]/(f).

Elements are coefficient tuples ``(c0, c1, ..., c_{m-1})`` meaning
``c0 + c1 x + ... + c_{m-1} x^{m-1}``.  "Lexicographic" always compares
these tuples from the constant term upward, for both moduli and elements.
The modulus is the lex-least monic irreducible of degree ``m`` (not a
Conway polynomial), so data imported from other systems may need re-basing.
"""

from __future__ import annotations

import re
from functools import cached_property
from itertools import product

MAX_FIELD_SIZE = 4096


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


# polynomials over F_p, constant term first, no trailing zeros except [0]

def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, f, p):
    """Remainder of ``a`` modulo the monic-or-not polynomial ``f``."""
    a = _trim(a)
    f = _trim(f)
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df and any(a):
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
        if len(a) - 1 < df:
            break
    return a


def is_irreducible(f, p):
    """Trial division of the monic ``f`` by every monic of degree <= deg/2."""
    f = _trim(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if _trim(poly_mod(f, list(low) + [1], p)) == [0]:
                return False
    return True


def find_irreducible(p, m):
    """Lex-least monic irreducible polynomial of degree ``m`` over F_p.

    Returned as the full coefficient tuple, constant term first, ending in 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be at least 1")
    for low in product(range(p), repeat=m):
        f = tuple(low) + (1,)
        if m == 1 or (low[0] != 0 and is_irreducible(f, p)):
            return f
    raise AssertionError("no irreducible polynomial found")


class ExtField:
    """The field F_{p^m}, immutable once built."""

    def __init__(self, p, m=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p**m > MAX_FIELD_SIZE:
            raise ValueError(f"field size {p}^{m} exceeds {MAX_FIELD_SIZE}")
        if modulus is None:
            modulus = find_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.size = p**m

    def __repr__(self):
        return f"ExtField({self.p}, {self.m}, modulus={self.format_poly(self.modulus)})"

    # -- elements

    def element(self, coeffs):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.m:
            c = poly_mod(c, self.modulus, self.p)
        return tuple(c) + (0,) * (self.m - len(c))

    @property
    def zero(self):
        return (0,) * self.m

    @property
    def one(self):
        return (1,) + (0,) * (self.m - 1)

    @property
    def gen(self):
        """The class of ``x``."""
        return self.element((0, 1))

    def to_int(self, a):
        return sum(c * self.p**i for i, c in enumerate(a))

    def from_int(self, k):
        out = []
        for _ in range(self.m):
            k, r = divmod(k, self.p)
            out.append(r)
        return tuple(out)

    def elements(self):
        """All elements in lexicographic order."""
        return [tuple(t) for t in product(range(self.p), repeat=self.m)]

    # -- arithmetic

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        p, m = self.p, self.m
        prod_ = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod_[i + j] += x * y
        f = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod_[k] % p
            if c:
                for i in range(m + 1):
                    prod_[k - m + i] -= c * f[i]
        return tuple(c % p for c in prod_[:m])

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.size - 2)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def order_of(self, a):
        """Multiplicative order of a nonzero element."""
        if not any(a):
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.size - 1
        for q in prime_factors(n):
            while n % q == 0 and self.pow(a, n // q) == self.one:
                n //= q
        return n

    @cached_property
    def primitive_element(self):
        """Lex-least generator of the multiplicative group."""
        for a in self.elements():
            if any(a) and self.order_of(a) == self.size - 1:
                return a
        raise AssertionError("no primitive element")

    @cached_property
    def _log_tables(self):
        w = self.primitive_element
        exp = [self.one]
        for _ in range(self.size - 2):
            exp.append(self.mul(exp[-1], w))
        return exp, {a: k for k, a in enumerate(exp)}

    def log(self, a):
        """Discrete log to the base :attr:`primitive_element`."""
        return self._log_tables[1][a]

    def exp(self, k):
        return self._log_tables[0][k % (self.size - 1)]

    # -- text

    @staticmethod
    def format_poly(coeffs, var="x"):
        terms = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = var if i == 1 else f"{var}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def format(self, a):
        return self.format_poly(a)

    def parse(self, text):
        """Inverse of :meth:`format`; also accepts a coefficient list ``[c0, c1]``."""
        text = text.replace(" ", "")
        if text.startswith("["):
            return self.element([int(t) for t in text[1:-1].split(",") if t])
        coeffs = [0] * self.m
        for term in text.split("+"):
            mt = re.fullmatch(r"(?:(\d+)\*?)?x(?:\^(\d+))?|(\d+)", term)
            if not mt:
                raise ValueError(f"cannot parse field element {text!r}")
            if mt.group(3) is not None:
                deg, c = 0, int(mt.group(3))
            else:
                c = int(mt.group(1)) if mt.group(1) else 1
                deg = int(mt.group(2)) if mt.group(2) else 1
            if deg >= self.m:
                full = [0] * (deg + 1)
                full[deg] = c
                red = self.element(full)
                coeffs = [x + y for x, y in zip(coeffs, red)]
            else:
                coeffs[deg] += c
        return self.element(coeffs)


def fadd(field, a, b):
    return field.add(a, b)


def fmul(field, a, b):
    return field.mul(a, b)


def finv(field, a):
    return field.inv(a)


def frobenius(field, a):
    return field.frobenius(a)


def primitive_element(field):
    return field.primitive_element
