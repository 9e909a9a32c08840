"""Closed-form eigenvalues of the Grassmann, bilinear-forms, Hermitian-forms
and Hamming association schemes.

Row index ``i`` of an eigenmatrix is always the formula argument; rows are
never reordered by magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

from qschemes.errors import ParameterError
from qschemes.qcalc import gauss, gauss_signed


class Family(str, Enum):
    GRASSMANN = "grassmann"
    BILINEAR = "bilinear"
    HERMITIAN = "hermitian"
    HAMMING = "hamming"


class GrassmannForm(str, Enum):
    # sum over h <= j
    J_SUM = "j-sum"
    # sum over h <= i, truncated to [max(0, i-j), min(i, d-j)]
    I_SUM = "i-sum"


@dataclass(frozen=True)
class SchemeParams:
    family: Family
    d: int
    q: int
    n: int | None = None
    e: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.q, int) or self.q < 2:
            raise ParameterError("q", self.q, "integer q >= 2")
        if not isinstance(self.d, int) or self.d < 1:
            raise ParameterError("d", self.d, "integer d >= 1")
        if self.family is Family.GRASSMANN:
            if self.n is None or self.n < 2 * self.d:
                raise ParameterError("n", self.n, f"integer n >= 2d = {2 * self.d}")
        elif self.n is not None:
            raise ParameterError("n", self.n, "only used by the grassmann family")
        if self.family is Family.BILINEAR:
            if self.e is None or self.e < self.d:
                raise ParameterError("e", self.e, f"integer e >= d = {self.d}")
        elif self.e is not None:
            raise ParameterError("e", self.e, "only used by the bilinear family")

    @classmethod
    def grassmann(cls, n: int, d: int, q: int) -> SchemeParams:
        return cls(Family.GRASSMANN, d, q, n=n)

    @classmethod
    def bilinear(cls, d: int, e: int, q: int) -> SchemeParams:
        return cls(Family.BILINEAR, d, q, e=e)

    @classmethod
    def hermitian(cls, d: int, q: int) -> SchemeParams:
        return cls(Family.HERMITIAN, d, q)

    @classmethod
    def hamming(cls, d: int, q: int) -> SchemeParams:
        return cls(Family.HAMMING, d, q)

    @property
    def num_vertices(self) -> int:
        if self.family is Family.GRASSMANN:
            return gauss(self.n, self.d, self.q)
        if self.family is Family.BILINEAR:
            return self.q ** (self.d * self.e)
        if self.family is Family.HERMITIAN:
            return self.q ** (self.d * self.d)
        return self.q**self.d

    def as_dict(self) -> dict[str, object]:
        out: dict[str, object] = {"family": self.family.value}
        if self.n is not None:
            out["n"] = self.n
        out["d"] = self.d
        if self.e is not None:
            out["e"] = self.e
        out["q"] = self.q
        return out

    def label(self) -> str:
        args = ",".join(str(v) for k, v in self.as_dict().items() if k != "family")
        return f"{self.family.value}({args})"

    def cli_args(self) -> str:
        return " ".join(f"--{k} {v}" for k, v in self.as_dict().items() if k != "family")


def _check_index(name: str, value: int, d: int) -> None:
    if not isinstance(value, int) or not 0 <= value <= d:
        raise ParameterError(name, value, f"integer 0 <= {name} <= d = {d}")


def _grassmann_jsum(n: int, d: int, q: int, j: int, i: int) -> int:
    total = 0
    for h in range(j + 1):
        a = gauss(d - i, h, q)
        if not a:
            continue
        c = gauss(n - d - i + h, h, q)
        if not c:
            continue
        term = q ** (h * i + comb(j - h, 2)) * a * gauss(d - h, j - h, q) * c
        total += -term if (j - h) % 2 else term
    return total


def grassmann_bounds(d: int, i: int, j: int) -> tuple[int, int]:
    """Index range ``(h_min, h_max)`` of the nonzero terms of the i-sum form."""
    return max(0, i - j), min(i, d - j)


def grassmann_term(n: int, d: int, q: int, j: int, i: int, h: int) -> int:
    """Term ``h`` of the i-sum form; zero outside :func:`grassmann_bounds`."""
    lo, hi = grassmann_bounds(d, i, j)
    if h < lo or h > hi:
        return 0
    term = (
        q ** (j * (j - i + h) + comb(i - h, 2))
        * gauss(i, h, q)
        * gauss(d - h, j, q)
        * gauss(n - d - i + h, n - d - j, q)
    )
    return -term if (i - h) % 2 else term


def _grassmann_isum(n: int, d: int, q: int, j: int, i: int) -> int:
    lo, hi = grassmann_bounds(d, i, j)
    return sum(grassmann_term(n, d, q, j, i, h) for h in range(lo, hi + 1))


def grassmann_eigenvalue(
    n: int, d: int, q: int, j: int, i: int, form: GrassmannForm | str = GrassmannForm.I_SUM
) -> int:
    """Eigenvalue ``G_j(i)`` of the distance-j Grassmann graph on d-subspaces of F_q^n."""
    SchemeParams.grassmann(n, d, q)
    _check_index("i", i, d)
    _check_index("j", j, d)
    if GrassmannForm(form) is GrassmannForm.J_SUM:
        return _grassmann_jsum(n, d, q, j, i)
    return _grassmann_isum(n, d, q, j, i)


def bilinear_term(d: int, e: int, q: int, j: int, i: int, h: int) -> int:
    if h < 0 or h > min(j, d - i):
        return 0
    term = q ** (e * h + comb(j - h, 2)) * gauss(d - h, d - j, q) * gauss(d - i, h, q)
    return -term if (j - h) % 2 else term


def bilinear_eigenvalue(d: int, e: int, q: int, j: int, i: int) -> int:
    """Eigenvalue ``B_j(i)`` of the rank-distance-j graph on d x e matrices."""
    SchemeParams.bilinear(d, e, q)
    _check_index("i", i, d)
    _check_index("j", j, d)
    return sum(bilinear_term(d, e, q, j, i, h) for h in range(min(j, d - i) + 1))


def hermitian_term(d: int, q: int, j: int, i: int, h: int) -> int:
    """Term ``h`` of ``Q_j(i)``, including the overall ``(-1)^j`` factor."""
    if h < 0 or h > min(j, d - i):
        return 0
    b = -q
    term = b ** (comb(j - h, 2) + h * d) * gauss_signed(d - h, d - j, b) * gauss_signed(d - i, h, b)
    return -term if j % 2 else term


def hermitian_eigenvalue(d: int, q: int, j: int, i: int) -> int:
    """Eigenvalue ``Q_j(i)`` of the rank-distance-j graph on d x d Hermitian matrices over F_{q^2}."""
    SchemeParams.hermitian(d, q)
    _check_index("i", i, d)
    _check_index("j", j, d)
    return sum(hermitian_term(d, q, j, i, h) for h in range(min(j, d - i) + 1))


def hamming_eigenvalue(d: int, q: int, j: int, i: int) -> int:
    """Krawtchouk value ``K_j(i)``."""
    SchemeParams.hamming(d, q)
    _check_index("i", i, d)
    _check_index("j", j, d)
    return sum(
        (-1) ** h * (q - 1) ** (j - h) * comb(i, h) * comb(d - i, j - h) for h in range(j + 1)
    )


def eigenvalue(params: SchemeParams, j: int, i: int) -> int:
    f = params.family
    if f is Family.GRASSMANN:
        return grassmann_eigenvalue(params.n, params.d, params.q, j, i)
    if f is Family.BILINEAR:
        return bilinear_eigenvalue(params.d, params.e, params.q, j, i)
    if f is Family.HERMITIAN:
        return hermitian_eigenvalue(params.d, params.q, j, i)
    return hamming_eigenvalue(params.d, params.q, j, i)


def eigen_column(params: SchemeParams, j: int) -> list[int]:
    """``[P_0j, ..., P_dj]``: all eigenvalues of the distance-j graph, by row index."""
    return [eigenvalue(params, j, i) for i in range(params.d + 1)]


@dataclass(frozen=True)
class Eigenmatrix:
    params: SchemeParams
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    @property
    def valencies(self) -> tuple[int, ...]:
        return self.entries[0]

    def perturbed(self, i: int, j: int, delta: int = 1) -> Eigenmatrix:
        rows = [list(r) for r in self.entries]
        rows[i][j] += delta
        return Eigenmatrix(self.params, tuple(tuple(r) for r in rows))


def eigenmatrix(params: SchemeParams) -> Eigenmatrix:
    """Full ``(d+1) x (d+1)`` table with entry ``(i, j) = P_ij``."""
    size = params.d + 1
    cols = [eigen_column(params, j) for j in range(size)]
    return Eigenmatrix(params, tuple(tuple(cols[j][i] for j in range(size)) for i in range(size)))
