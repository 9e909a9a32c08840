"""Gaussian binomial coefficients at positive and negative base.

All values are plain Python ints, so every computation is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from qschemes.errors import ParameterError


def _check_base(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise ParameterError("q", q, "integer q >= 2")


@lru_cache(maxsize=None)
def _gauss_base(n: int, k: int, base: int) -> int:
    # Prefix t of the product is [n-k+t choose t]_base, so each step divides exactly.
    if k < 0 or k > n:
        return 0
    if k > n - k and base > 0:
        k = n - k
    value = 1
    for i in range(1, k + 1):
        num = value * (base ** (n - i + 1) - 1)
        value, rem = divmod(num, base**i - 1)
        if rem:
            raise ArithmeticError(f"inexact division in [{n} {k}]_{base} at step {i}")
    return value


def gauss(n: int, k: int, q: int) -> int:
    """Gaussian binomial ``[n choose k]_q`` for ``q >= 2``; zero when ``k > n``."""
    _check_base(q)
    if n < 0 or k < 0:
        raise ParameterError("n,k", (n, k), "nonnegative integers")
    return _gauss_base(n, k, q)


def gauss_signed(m: int, l: int, b: int) -> int:
    """Gaussian binomial at negative base ``b = -q``.

    ``prod_{i=1..l} (b^(m-i+1) - 1) / (b^i - 1)``; its sign is
    ``(-1)^((m+1) l)`` whenever ``l <= m``.
    """
    if not isinstance(b, int) or b > -2:
        raise ParameterError("b", b, "integer b <= -2")
    if m < 0 or l < 0:
        raise ParameterError("m,l", (m, l), "nonnegative integers")
    return _gauss_base(m, l, b)


def signed_base_sign(m: int, l: int) -> int:
    """Predicted sign of ``gauss_signed(m, l, -q)`` (0 when it vanishes)."""
    if l > m:
        return 0
    return -1 if ((m + 1) * l) % 2 else 1


def clear_cache() -> None:
    _gauss_base.cache_clear()


@dataclass(frozen=True)
class BoundCheck:
    part: str
    statement: str
    applies: bool
    holds: bool | None
    lhs: int | None = None
    rhs: int | None = None


@dataclass(frozen=True)
class BoundVerdict:
    n: int
    k: int
    q: int
    value: int
    checks: tuple[BoundCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks if c.applies)

    def part(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.part == name:
                return c
        raise KeyError(name)


def check_gauss_bounds(n: int, k: int, q: int) -> BoundVerdict:
    """Check the four standard size estimates for ``[n choose k]_q``.

    (i)   G >= q^(k(n-k))                       for 0 <= k <= n
    (ii)  G >= (1 + 1/q) q^(k(n-k))             for 0 < k < n
    (iii) G <  2 q^(k(n-k))                     for q >= 3
    (iv)  G <  q/(q-1) q^(k(n-k))               for k in {0, 1, n-1, n}

    Fractional constants are cleared by cross-multiplication; ``lhs`` and
    ``rhs`` are the integers actually compared.
    """
    value = gauss(n, k, q)
    in_range = 0 <= k <= n
    p = q ** (k * (n - k)) if in_range else 0
    checks = [
        BoundCheck("i", "G >= q^(k(n-k))", in_range, value >= p if in_range else None, value, p),
    ]
    applies = 0 < k < n
    checks.append(
        BoundCheck(
            "ii",
            "q*G >= (q+1)*q^(k(n-k))",
            applies,
            q * value >= (q + 1) * p if applies else None,
            q * value,
            (q + 1) * p,
        )
    )
    applies = in_range and q >= 3
    checks.append(
        BoundCheck("iii", "G < 2*q^(k(n-k))", applies, value < 2 * p if applies else None, value, 2 * p)
    )
    applies = in_range and k in {0, 1, n - 1, n}
    checks.append(
        BoundCheck(
            "iv",
            "(q-1)*G < q*q^(k(n-k))",
            applies,
            (q - 1) * value < q * p if applies else None,
            (q - 1) * value,
            q * p,
        )
    )
    return BoundVerdict(n, k, q, value, tuple(checks))
