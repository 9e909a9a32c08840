"""Intersection numbers, spectra and the eigenvector test of a formula eigenmatrix."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import flint

from qschemes.errors import CapExceeded, InconsistentCounts, ResidualSpectrum
from qschemes.oracle.schemes import SchemeInstance
from qschemes.spectra import Eigenmatrix, eigenmatrix
from qschemes.verdict import Status, Verdict

SPECTRUM_CAP = 5_000


@dataclass(frozen=True)
class IntersectionMatrixSet:
    """``matrices[j][k][i] = p^k_{ji}``: the number of w with (u, w) in class j
    and (w, v) in class i, for any fixed (u, v) in class k."""

    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def valencies(self) -> tuple[int, ...]:
        return tuple(sum(L[0]) for L in self.matrices)

    @property
    def num_vertices(self) -> int:
        return sum(self.valencies)

    def __getitem__(self, j: int) -> tuple[tuple[int, ...], ...]:
        return self.matrices[j]

    def __len__(self) -> int:
        return len(self.matrices)


def _counts_from(scheme: SchemeInstance, u: int) -> list[list[list[int]]]:
    size = scheme.num_classes
    row_u = scheme.relation_row(u)
    mats = [[[0] * size for _ in range(size)] for _ in range(size)]
    for k in range(size):
        v = row_u.index(k)
        row_v = scheme.relation_row(v)
        for ru, rv in zip(row_u, row_v):
            mats[ru][k][rv] += 1
    return mats


def intersection_matrices(scheme: SchemeInstance, samples: int = 3, seed: int = 0) -> IntersectionMatrixSet:
    """Count intersection numbers from vertex 0 and confirm them from
    ``samples`` further base vertices drawn with a seeded RNG."""
    base = _counts_from(scheme, 0)
    rng = random.Random(seed)
    nv = scheme.num_vertices
    others = rng.sample(range(1, nv), min(samples, nv - 1)) if nv > 1 else []
    for u in others:
        if _counts_from(scheme, u) != base:
            raise InconsistentCounts(f"intersection numbers differ between vertex 0 and vertex {u}")
    return IntersectionMatrixSet(tuple(tuple(tuple(r) for r in L) for L in base))


def validate_eigenmatrix(P: Eigenmatrix, L: IntersectionMatrixSet) -> Verdict:
    """PASS iff every row of P is a common left eigenvector of the intersection
    matrices, ``row_i(P) L_j = P_ij row_i(P)``, and the implied multiplicities
    ``v / sum_j P_ij^2 / k_j`` are positive integers summing to v."""
    check = "eigenvector"
    size = P.size
    if len(L) != size:
        return Verdict(Status.FAIL, check, "dimension mismatch", {"P": size, "L": len(L)})
    for i in range(size):
        row = P.row(i)
        for j in range(size):
            Lj = L[j]
            lhs = [sum(row[k] * Lj[k][c] for k in range(size)) for c in range(size)]
            rhs = [P[i, j] * x for x in row]
            if lhs != rhs:
                return Verdict(
                    Status.FAIL, check, f"row {i}, class {j}", {"i": i, "j": j, "row_times_L": lhs, "eigenvalue_times_row": rhs}
                )
    k = L.valencies
    v = L.num_vertices
    mults = []
    for i in range(size):
        norm = sum(Fraction(P[i, j] ** 2, k[j]) for j in range(size))
        m = v / norm
        if m.denominator != 1 or m <= 0:
            return Verdict(Status.FAIL, check, f"multiplicity of row {i} is {m}", {"i": i})
        mults.append(int(m))
    if sum(mults) != v:
        return Verdict(Status.FAIL, check, "multiplicities do not sum to v", {"multiplicities": mults, "v": v})
    return Verdict(Status.PASS, check, "", {"multiplicities": mults, "v": v})


def adjacency(scheme: SchemeInstance, j: int) -> list[list[int]]:
    return [[1 if r == j else 0 for r in row] for row in scheme.relation_table()]


def spectrum_multiset(
    scheme: SchemeInstance, j: int, candidates: list[int] | None = None, cap: int = SPECTRUM_CAP
) -> list[tuple[int, int]]:
    """``(eigenvalue, multiplicity)`` pairs of the distance-j graph.

    Each candidate (default: column j of the formula eigenmatrix) gets
    multiplicity ``v - rank(A_j - lambda I)`` with the rank taken exactly over
    the integers. Raises ResidualSpectrum unless the multiplicities sum to v.
    """
    nv = scheme.num_vertices
    if nv > cap:
        raise CapExceeded(f"{nv} vertices exceeds the dense spectrum cap {cap}")
    if candidates is None:
        candidates = list(eigenmatrix(scheme.params).column(j))
    values = sorted(set(candidates), reverse=True)
    table = scheme.relation_table()
    out = []
    for lam in values:
        flat = []
        for a, row in enumerate(table):
            for b, r in enumerate(row):
                flat.append((1 if r == j else 0) - (lam if a == b else 0))
        mult = nv - flint.fmpz_mat(nv, nv, flat).rank()
        if mult:
            out.append((lam, mult))
    if sum(m for _, m in out) != nv:
        raise ResidualSpectrum(f"multiplicities {out} of class {j} do not sum to {nv}")
    return out


def connectivity(scheme: SchemeInstance, j: int) -> tuple[bool, int]:
    """Union-find over the class-j edges; returns (connected, component count)."""
    nv = scheme.num_vertices
    parent = list(range(nv))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = nv
    for a in range(nv):
        ra = find(a)
        for b in scheme.neighbors(a, j):
            rb = find(b)
            if ra != rb:
                parent[rb] = ra
                components -= 1
    return components == 1, components


@dataclass(frozen=True)
class OracleReport:
    params: dict
    num_vertices: int
    class_sizes: list[int]
    valencies: list[int]
    eigenvector: Verdict
    spectra: dict[int, list[tuple[int, int]]]
    status: Status


def oracle_check(params, cap: int | None = None, spectrum_cap: int = SPECTRUM_CAP, with_spectra: bool = True) -> OracleReport:
    """Build the scheme, compare class sizes with valencies, run the eigenvector
    test and (up to ``spectrum_cap`` vertices) the exact rank spectra."""
    from qschemes.oracle.schemes import build_scheme

    scheme = build_scheme(params, cap=cap)
    P = eigenmatrix(params)
    sizes = scheme.class_sizes(0)
    L = intersection_matrices(scheme)
    verdict = validate_eigenmatrix(P, L)
    ok = verdict.passed and list(P.valencies) == sizes == list(L.valencies)
    spectra: dict[int, list[tuple[int, int]]] = {}
    if with_spectra and scheme.num_vertices <= spectrum_cap:
        for j in range(P.size):
            try:
                spectra[j] = spectrum_multiset(scheme, j, list(P.column(j)), cap=spectrum_cap)
            except ResidualSpectrum:
                ok = False
                spectra[j] = []
    return OracleReport(
        params.as_dict(),
        scheme.num_vertices,
        sizes,
        list(P.valencies),
        verdict,
        spectra,
        Status.PASS if ok else Status.FAIL,
    )
