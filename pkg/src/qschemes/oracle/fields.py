"""Small finite fields F_{p^k} as lookup tables.

Element ``c0 + c1*p + c2*p^2 + ...`` encodes the polynomial
``c0 + c1*x + c2*x^2 + ...`` modulo a fixed monic irreducible of degree k.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from qschemes.errors import UnsupportedField

MAX_ORDER = 64


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    # m is monic, coefficients low to high
    a = a[:]
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] % p
        if c:
            for t in range(dm + 1):
                a[top - dm + t] = (a[top - dm + t] - c * m[t]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    for deg in range(1, k // 2 + 1):
        for low in product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not any(_polymod(m, divisor, p)):
                return False
    return True


def _find_modulus(p: int, k: int) -> list[int]:
    if k == 1:
        return [0, 1]
    for low in product(range(p), repeat=k):
        cand = list(reversed(low)) + [1]
        if cand[0] and _is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


class FiniteField:
    """``F_q`` with full addition and multiplication tables."""

    def __init__(self, q: int):
        pk = _prime_power(q)
        if pk is None or q > MAX_ORDER:
            raise UnsupportedField(f"q={q} is not a prime power <= {MAX_ORDER}")
        self.q = q
        self.p, self.k = pk
        self.modulus = _find_modulus(self.p, self.k)
        p, k = self.p, self.k
        digits = [[(x // p**t) % p for t in range(k)] for x in range(q)]

        def encode(coeffs: list[int]) -> int:
            return sum((c % p) * p**t for t, c in enumerate(coeffs))

        self.add = [[encode([a + b for a, b in zip(digits[x], digits[y])]) for y in range(q)] for x in range(q)]
        self.neg = [encode([-a for a in digits[x]]) for x in range(q)]
        self.sub = [[self.add[x][self.neg[y]] for y in range(q)] for x in range(q)]
        self.mul = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(q):
                prod = [0] * (2 * k - 1)
                for s, a in enumerate(digits[x]):
                    for t, b in enumerate(digits[y]):
                        prod[s + t] += a * b
                self.mul[x][y] = encode(_polymod(prod, self.modulus, p))
        self.inv = [0] * q
        for x in range(1, q):
            self.inv[x] = next(y for y in range(1, q) if self.mul[x][y] == 1)

    def __repr__(self) -> str:
        return f"FiniteField({self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def power(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul[r][x]
        return r

    def frobenius(self, s: int) -> list[int]:
        """Table of ``x -> x^s``."""
        return [self.power(x, s) for x in range(self.q)]

    def subfield(self, order: int) -> list[int]:
        """Elements fixed by ``x -> x^order``: the subfield of that order."""
        table = self.frobenius(order)
        return [x for x in range(self.q) if table[x] == x]

    def rank(self, rows: list[list[int]]) -> int:
        """Rank of a matrix over this field by Gaussian elimination."""
        m = [list(r) for r in rows]
        if not m:
            return 0
        ncols = len(m[0])
        mul, sub, inv = self.mul, self.sub, self.inv
        r = 0
        for c in range(ncols):
            piv = next((k for k in range(r, len(m)) if m[k][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            scale = inv[m[r][c]]
            pivot_row = [mul[scale][x] for x in m[r]]
            m[r] = pivot_row
            for k in range(r + 1, len(m)):
                f = m[k][c]
                if f:
                    row = m[k]
                    m[k] = [sub[row[t]][mul[f][pivot_row[t]]] for t in range(ncols)]
            r += 1
            if r == len(m):
                break
        return r


@lru_cache(maxsize=None)
def get_field(q: int) -> FiniteField:
    return FiniteField(q)


class ConjugateField:
    """``F_{q^2}`` together with the involution ``x -> x^q`` fixing ``F_q``."""

    def __init__(self, q: int):
        self.base_order = q
        self.field = get_field(q * q)
        self.conj = self.field.frobenius(q)
        self.fixed = self.field.subfield(q)


@lru_cache(maxsize=None)
def get_conjugate_field(q: int) -> ConjugateField:
    return ConjugateField(q)
